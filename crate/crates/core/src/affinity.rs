//! Affinity propagation over dense word-pair similarity matrices.
//!
//! Two similarity modes are supported: dice over combined bigram+trigram
//! profiles (`coefficient`) and the negated median offset distance (`median`).
//! Every point starts as a potential exemplar; responsibilities and
//! availabilities are exchanged with damping until the exemplar set is stable.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cluster::Cluster;
use crate::error::{Error, Result};
use crate::ngram::{
    combined_profile, dice_unchecked, median, median_offset_distance, NGramProfile,
};
use crate::preprocess::Lexicon;

pub const COEFFICIENT_BACKEND: &str = "ap-coeff";
pub const MEDIAN_BACKEND: &str = "ap-median";

/// Resolves a backend name to its canonical static form.
pub fn backend_name(name: &str) -> Option<&'static str> {
    match name {
        COEFFICIENT_BACKEND => Some(COEFFICIENT_BACKEND),
        MEDIAN_BACKEND => Some(MEDIAN_BACKEND),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SimilarityMode {
    Coefficient,
    Median,
}

impl SimilarityMode {
    pub fn backend_name(self) -> &'static str {
        match self {
            SimilarityMode::Coefficient => COEFFICIENT_BACKEND,
            SimilarityMode::Median => MEDIAN_BACKEND,
        }
    }
}

impl fmt::Display for SimilarityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SimilarityMode::Coefficient => "coefficient",
            SimilarityMode::Median => "median",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Preference {
    /// Median of the off-diagonal similarities.
    Median,
    Fixed(f64),
}

impl FromStr for Preference {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "median" {
            return Ok(Preference::Median);
        }
        match s.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Preference::Fixed(v)),
            _ => Err(Error::Config(format!(
                "preference must be \"median\" or a finite number, got {s:?}"
            ))),
        }
    }
}

impl fmt::Display for Preference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preference::Median => f.write_str("median"),
            Preference::Fixed(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApConfig {
    pub damping: f64,
    pub preference: Preference,
    pub max_iterations: usize,
    /// Iterations the exemplar set must stay unchanged to count as converged.
    pub convergence_window: usize,
    /// Largest lexicon accepted for dense matrix construction.
    pub max_points: usize,
}

impl Default for ApConfig {
    fn default() -> Self {
        ApConfig {
            damping: 0.5,
            preference: Preference::Median,
            max_iterations: 200,
            convergence_window: 15,
            max_points: 20_000,
        }
    }
}

impl ApConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.5..1.0).contains(&self.damping) {
            return Err(Error::Config(format!(
                "damping must lie in [0.5, 1), got {}",
                self.damping
            )));
        }
        if self.max_iterations == 0 || self.convergence_window == 0 {
            return Err(Error::Config(
                "max iterations and convergence window must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Bytes held by one run: similarity, working similarity, responsibility
/// and availability matrices.
pub fn dense_bytes(points: usize) -> usize {
    4 * points * points * std::mem::size_of::<f64>()
}

/// Dense symmetric `n × n` similarity matrix with preferences on the diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    n: usize,
    values: Vec<f64>,
    mode: SimilarityMode,
    words: Vec<String>,
}

impl SimilarityMatrix {
    /// Wraps precomputed values. Off-diagonal entries must be symmetric and
    /// finite; the diagonal is then filled from `preference`.
    pub fn from_rows(
        rows: Vec<Vec<f64>>,
        mode: SimilarityMode,
        words: Vec<String>,
        preference: Preference,
    ) -> Result<Self> {
        let n = rows.len();
        if words.len() != n {
            return Err(Error::Config(format!(
                "{} words for a {n}x{n} matrix",
                words.len()
            )));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Config("similarity matrix is not square".into()));
        }
        #[allow(clippy::needless_range_loop)]
        for i in 0..n {
            for j in 0..i {
                let (a, b) = (rows[i][j], rows[j][i]);
                if !a.is_finite() || a != b {
                    return Err(Error::Config(format!(
                        "similarity ({i},{j}) is not finite and symmetric"
                    )));
                }
            }
        }
        let mut matrix = SimilarityMatrix {
            n,
            values: rows.into_iter().flatten().collect(),
            mode,
            words,
        };
        matrix.set_preference(preference);
        Ok(matrix)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn mode(&self) -> SimilarityMode {
        self.mode
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn get(&self, i: usize, k: usize) -> f64 {
        self.values[i * self.n + k]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n..(i + 1) * self.n]
    }

    /// Median of off-diagonal entries. Each unordered pair appears twice in
    /// the full matrix, which leaves the median unchanged, so only the upper
    /// triangle is scanned.
    pub fn median_similarity(&self) -> Option<f64> {
        let mut upper = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for i in 0..self.n {
            upper.extend_from_slice(&self.row(i)[i + 1..]);
        }
        median(&mut upper)
    }

    pub fn set_preference(&mut self, preference: Preference) {
        let value = match preference {
            Preference::Fixed(v) => v,
            Preference::Median => self.median_similarity().unwrap_or(0.0),
        };
        for k in 0..self.n {
            self.values[k * self.n + k] = value;
        }
    }
}

pub fn build_similarity_matrix(
    lexicon: &Lexicon,
    mode: SimilarityMode,
    config: &ApConfig,
) -> Result<SimilarityMatrix> {
    let n = lexicon.len();
    if n > config.max_points {
        return Err(Error::Capacity {
            points: n,
            max_points: config.max_points,
        });
    }
    if n < 2 {
        return Err(Error::Config(format!(
            "affinity propagation needs at least two words, got {n}"
        )));
    }
    let words = lexicon.words();
    let mut values = vec![0.0; n * n];
    match mode {
        SimilarityMode::Coefficient => {
            let profiles: Vec<NGramProfile> = words.iter().map(|w| combined_profile(w)).collect();
            fill_symmetric(&mut values, n, |i, j| {
                dice_unchecked(&profiles[i], &profiles[j])
            });
        }
        SimilarityMode::Median => {
            fill_symmetric(&mut values, n, |i, j| {
                median_offset_distance(&words[i], &words[j])
            });
        }
    }
    let mut matrix = SimilarityMatrix {
        n,
        values,
        mode,
        words: words.to_vec(),
    };
    matrix.set_preference(config.preference);
    Ok(matrix)
}

fn fill_symmetric(values: &mut [f64], n: usize, mut f: impl FnMut(usize, usize) -> f64) {
    for i in 0..n {
        for j in i + 1..n {
            let v = f(i, j);
            values[i * n + j] = v;
            values[j * n + i] = v;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApOutcome {
    pub clusters: Vec<Cluster>,
    /// Exemplar indices, ascending.
    pub exemplars: Vec<usize>,
    /// Exemplar index for every point.
    pub assignments: Vec<usize>,
    pub converged: bool,
    pub iterations: usize,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn unit_interval(bits: u64) -> f64 {
    // 53 random bits, shifted into (0, 1].
    ((bits >> 11) as f64 + 1.0) / (1u64 << 53) as f64
}

/// Fixed index-keyed standard-normal perturbation at machine-epsilon scale.
/// Exactly tied similarities (a symmetric pair, or a preference equal to an
/// off-diagonal entry) otherwise leave the messages on a symmetric fixed point
/// with no exemplar. The noise must be zero-mean and reach past half an ulp,
/// or rounding swallows it.
fn jitter(i: usize, k: usize, n: usize, s: f64) -> f64 {
    let key = ((i * n + k) as u64) << 1;
    let u1 = unit_interval(splitmix64(key));
    let u2 = unit_interval(splitmix64(key | 1));
    let gaussian = (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos();
    (f64::EPSILON * s + f64::MIN_POSITIVE * 100.0) * gaussian
}

/// Message-passing state of one affinity propagation run.
pub struct ApState {
    n: usize,
    damping: f64,
    /// Similarities plus tie-breaking noise.
    s: Vec<f64>,
    r: Vec<f64>,
    a: Vec<f64>,
    column_sums: Vec<f64>,
    exemplars: Vec<bool>,
    iteration: usize,
    stable_for: usize,
}

impl ApState {
    pub fn new(matrix: &SimilarityMatrix, damping: f64) -> Self {
        let n = matrix.n;
        let s = matrix
            .values
            .iter()
            .enumerate()
            .map(|(idx, &v)| v + jitter(idx / n, idx % n, n, v))
            .collect();
        ApState {
            n,
            damping,
            s,
            r: vec![0.0; n * n],
            a: vec![0.0; n * n],
            column_sums: vec![0.0; n],
            exemplars: vec![false; n],
            iteration: 0,
            stable_for: 0,
        }
    }

    /// One damped responsibility update followed by one availability update.
    pub fn step(&mut self) {
        let n = self.n;
        let damping = self.damping;
        let keep = 1.0 - damping;
        let (s, r, a) = (&self.s, &mut self.r, &mut self.a);

        for i in 0..n {
            let row = i * n;
            let (mut best, mut best_k, mut second) = (f64::NEG_INFINITY, 0, f64::NEG_INFINITY);
            for k in 0..n {
                let v = a[row + k] + s[row + k];
                if v > best {
                    second = best;
                    best = v;
                    best_k = k;
                } else if v > second {
                    second = v;
                }
            }
            for k in 0..n {
                let competitor = if k == best_k { second } else { best };
                let fresh = s[row + k] - competitor;
                r[row + k] = damping * r[row + k] + keep * fresh;
            }
        }

        // Column sums of positive responsibilities, self-responsibility as is.
        let sums = &mut self.column_sums;
        sums.iter_mut().for_each(|c| *c = 0.0);
        for i in 0..n {
            let row = &r[i * n..(i + 1) * n];
            for (k, (&v, sum)) in row.iter().zip(sums.iter_mut()).enumerate() {
                *sum += if k == i { v } else { v.max(0.0) };
            }
        }
        for i in 0..n {
            let row = i * n;
            for k in 0..n {
                let rik = r[row + k];
                let fresh = if i == k {
                    sums[k] - rik
                } else {
                    (sums[k] - rik.max(0.0)).min(0.0)
                };
                a[row + k] = damping * a[row + k] + keep * fresh;
            }
        }

        let mut changed = false;
        for k in 0..n {
            let is_exemplar = r[k * n + k] + a[k * n + k] > 0.0;
            changed |= is_exemplar != self.exemplars[k];
            self.exemplars[k] = is_exemplar;
        }
        self.iteration += 1;
        self.stable_for = if changed { 1 } else { self.stable_for + 1 };
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    /// Consecutive iterations, including the latest, with the same exemplar set.
    pub fn stable_for(&self) -> usize {
        self.stable_for
    }

    /// Points whose self-responsibility plus self-availability is positive.
    pub fn exemplars(&self) -> Vec<usize> {
        (0..self.n).filter(|&k| self.exemplars[k]).collect()
    }

    pub fn has_exemplar(&self) -> bool {
        self.exemplars.iter().any(|&e| e)
    }

    /// Row-major `n × n` responsibilities.
    pub fn responsibilities(&self) -> &[f64] {
        &self.r
    }

    /// Row-major `n × n` availabilities.
    pub fn availabilities(&self) -> &[f64] {
        &self.a
    }
}

/// Runs affinity propagation on `matrix`, whose diagonal holds the preferences.
pub fn run_ap(matrix: &SimilarityMatrix, config: &ApConfig) -> Result<ApOutcome> {
    config.validate()?;
    let n = matrix.n;
    if n == 0 {
        return Ok(ApOutcome {
            clusters: Vec::new(),
            exemplars: Vec::new(),
            assignments: Vec::new(),
            converged: true,
            iterations: 0,
        });
    }

    let mut state = ApState::new(matrix, config.damping);
    let mut converged = false;
    while state.iteration() < config.max_iterations {
        state.step();
        if state.has_exemplar() && state.stable_for() >= config.convergence_window {
            converged = true;
            break;
        }
    }

    let iterations = state.iteration();
    let exemplars = state.exemplars();
    drop(state);
    if exemplars.is_empty() {
        return Err(Error::Degenerate { iterations });
    }
    let assignments = assign_to_exemplars(matrix, &exemplars);
    let clusters = exemplars
        .iter()
        .map(|&k| {
            let members: Vec<String> = (0..n)
                .filter(|&i| assignments[i] == k)
                .map(|i| matrix.words[i].clone())
                .collect();
            Cluster::from_members(members).with_exemplar(matrix.words[k].clone())
        })
        .collect();

    Ok(ApOutcome {
        clusters,
        exemplars,
        assignments,
        converged,
        iterations,
    })
}

/// Exemplars keep themselves; every other point goes to the exemplar with
/// the highest similarity, lowest index on ties.
pub fn assign_to_exemplars(matrix: &SimilarityMatrix, exemplars: &[usize]) -> Vec<usize> {
    (0..matrix.n)
        .map(|i| {
            if exemplars.binary_search(&i).is_ok() {
                return i;
            }
            let mut best = exemplars[0];
            for &k in &exemplars[1..] {
                if matrix.get(i, k) > matrix.get(i, best) {
                    best = k;
                }
            }
            best
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApStats {
    pub total_clusters: usize,
    pub sizes: Vec<usize>,
}

pub fn ap_stats(clusters: &[Cluster]) -> ApStats {
    ApStats {
        total_clusters: clusters.len(),
        sizes: clusters.iter().map(Cluster::len).collect(),
    }
}
