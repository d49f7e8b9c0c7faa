//! Character n-gram profiles and the two word-pair measures used for clustering:
//! the dice coefficient over distinct n-grams, and the median first-occurrence
//! offset distance.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distance assigned to word pairs that share no code point, or whose median
/// offset exceeds the shorter word's length.
pub const SEPARATION_DISTANCE: f64 = 200.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GramOrder {
    #[serde(rename = "2")]
    Bigram,
    #[serde(rename = "3")]
    Trigram,
    #[serde(rename = "2+3")]
    Mixed,
}

impl GramOrder {
    fn sizes(self) -> &'static [usize] {
        match self {
            GramOrder::Bigram => &[2],
            GramOrder::Trigram => &[3],
            GramOrder::Mixed => &[2, 3],
        }
    }
}

impl fmt::Display for GramOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GramOrder::Bigram => "2",
            GramOrder::Trigram => "3",
            GramOrder::Mixed => "2+3",
        })
    }
}

impl FromStr for GramOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2" => Ok(GramOrder::Bigram),
            "3" => Ok(GramOrder::Trigram),
            "2+3" | "3+2" => Ok(GramOrder::Mixed),
            other => Err(Error::Config(format!(
                "n-gram order must be 2, 3 or 2+3, got {other:?}"
            ))),
        }
    }
}

const CHAR_BITS: u32 = 21;
const CHAR_MASK: u64 = (1 << CHAR_BITS) - 1;
const TRIGRAM_FLAG: u64 = 1 << 63;

/// A bigram or trigram packed into one integer: 21 bits per code point,
/// with the top bit marking trigrams so the two sizes never collide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gram(u64);

impl Gram {
    fn pack(chars: &[char]) -> Gram {
        debug_assert!(chars.len() == 2 || chars.len() == 3);
        let packed = chars
            .iter()
            .fold(0u64, |acc, &c| (acc << CHAR_BITS) | u64::from(c));
        if chars.len() == 3 {
            Gram(packed | TRIGRAM_FLAG)
        } else {
            Gram(packed)
        }
    }

    /// Number of code points, 2 or 3.
    pub fn size(self) -> usize {
        if self.0 & TRIGRAM_FLAG != 0 {
            3
        } else {
            2
        }
    }

    pub fn chars(self) -> impl Iterator<Item = char> {
        let len = self.size() as u32;
        (0..len).rev().map(move |slot| {
            let code = (self.0 >> (slot * CHAR_BITS)) & CHAR_MASK;
            char::from_u32(code as u32).expect("packed from a char")
        })
    }
}

impl fmt::Display for Gram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.chars().try_for_each(|c| fmt::Write::write_char(f, c))
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 2 || n == 3 {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "n-gram size must be 2 or 3, got {n}"
        )))
    }
}

fn push_grams(chars: &[char], n: usize, out: &mut Vec<Gram>) {
    if chars.len() >= n {
        out.extend(chars.windows(n).map(Gram::pack));
    }
}

/// Distinct contiguous `n`-code-point substrings of `word`; empty when the
/// word is shorter than `n`.
pub fn extract_ngrams(word: &str, n: usize) -> Result<BTreeSet<String>> {
    check_size(n)?;
    let chars: Vec<char> = word.chars().collect();
    if chars.len() < n {
        return Ok(BTreeSet::new());
    }
    Ok(chars.windows(n).map(|w| w.iter().collect()).collect())
}

/// A word together with its set of distinct n-grams, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NGramProfile {
    word: String,
    order: GramOrder,
    grams: Vec<Gram>,
}

impl NGramProfile {
    pub fn new(word: &str, order: GramOrder) -> Self {
        let chars: Vec<char> = word.chars().collect();
        let mut grams = Vec::with_capacity(chars.len() * order.sizes().len());
        for &n in order.sizes() {
            push_grams(&chars, n, &mut grams);
        }
        grams.sort_unstable();
        grams.dedup();
        NGramProfile {
            word: word.to_string(),
            order,
            grams,
        }
    }

    pub fn word(&self) -> &str {
        &self.word
    }

    pub fn order(&self) -> GramOrder {
        self.order
    }

    pub fn grams(&self) -> &[Gram] {
        &self.grams
    }

    pub fn gram_strings(&self) -> BTreeSet<String> {
        self.grams.iter().map(Gram::to_string).collect()
    }

    pub fn len(&self) -> usize {
        self.grams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grams.is_empty()
    }
}

/// Bigram ∪ trigram profile.
pub fn combined_profile(word: &str) -> NGramProfile {
    NGramProfile::new(word, GramOrder::Mixed)
}

/// Dice coefficient as an exact ratio `2·common / total`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiceRatio {
    pub common: usize,
    /// `|A| + |B|`.
    pub total: usize,
}

impl DiceRatio {
    pub fn value(self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            (2 * self.common) as f64 / self.total as f64
        }
    }
}

fn sorted_intersection_len(a: &[Gram], b: &[Gram]) -> usize {
    let (mut i, mut j, mut common) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    common
}

pub fn dice_ratio(p1: &NGramProfile, p2: &NGramProfile) -> Result<DiceRatio> {
    if p1.order != p2.order {
        return Err(Error::Config(format!(
            "cannot compare a {} profile with a {} profile",
            p1.order, p2.order
        )));
    }
    Ok(DiceRatio {
        common: sorted_intersection_len(&p1.grams, &p2.grams),
        total: p1.grams.len() + p2.grams.len(),
    })
}

/// `2C / (A + B)` over distinct n-grams; 0 when both profiles are empty.
pub fn dice(p1: &NGramProfile, p2: &NGramProfile) -> Result<f64> {
    dice_ratio(p1, p2).map(DiceRatio::value)
}

/// Dice between two profiles already known to share an order.
pub(crate) fn dice_unchecked(p1: &NGramProfile, p2: &NGramProfile) -> f64 {
    debug_assert_eq!(p1.order, p2.order);
    DiceRatio {
        common: sorted_intersection_len(&p1.grams, &p2.grams),
        total: p1.grams.len() + p2.grams.len(),
    }
    .value()
}

/// Median of `values`; the mean of the two middle values for even lengths.
/// Reorders the slice. Returns `None` for an empty slice.
pub fn median(values: &mut [f64]) -> Option<f64> {
    let n = values.len();
    if n == 0 {
        return None;
    }
    let mid = n / 2;
    let (lower, upper, _) = values.select_nth_unstable_by(mid, f64::total_cmp);
    let upper = *upper;
    if n % 2 == 1 {
        Some(upper)
    } else {
        let lower_max = lower
            .iter()
            .copied()
            .max_by(f64::total_cmp)
            .expect("even n >= 2 leaves a non-empty lower half");
        Some((lower_max + upper) / 2.0)
    }
}

/// Negated median of `|first(c, w1) − first(c, w2)|` over code points `c`
/// present in both words. Pairs with nothing shared, or with a median above
/// the shorter word's length, get `−SEPARATION_DISTANCE`.
pub fn median_offset_distance(w1: &str, w2: &str) -> f64 {
    let a: Vec<char> = w1.chars().collect();
    let b: Vec<char> = w2.chars().collect();
    let mut offsets = Vec::new();
    for (i, &c) in a.iter().enumerate() {
        if a[..i].contains(&c) {
            continue;
        }
        if let Some(j) = b.iter().position(|&d| d == c) {
            offsets.push(i.abs_diff(j) as f64);
        }
    }
    let shorter = a.len().min(b.len()) as f64;
    let distance = match median(&mut offsets) {
        Some(d) if d <= shorter => d,
        _ => SEPARATION_DISTANCE,
    };
    -distance
}
