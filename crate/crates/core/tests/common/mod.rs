#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::HashSet;
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const CONSONANTS: &[char] = &[
    'ক', 'খ', 'গ', 'ঘ', 'চ', 'ছ', 'জ', 'ঝ', 'ট', 'ঠ', 'ড', 'ঢ', 'ণ', 'ত', 'থ', 'দ', 'ধ', 'ন', 'প',
    'ফ', 'ব', 'ভ', 'ম', 'য', 'র', 'ল', 'শ', 'ষ', 'স', 'হ',
];
pub const VOWEL_SIGNS: &[char] = &['া', 'ি', 'ী', 'ু', 'ূ', 'ে', 'ৈ', 'ো', 'ৌ'];
pub const VOWELS: &[char] = &['অ', 'আ', 'ই', 'উ', 'এ', 'ও'];
pub const MODIFIERS: &[char] = &['ং', 'ঃ', 'ঁ', '্'];

/// Random Bangla-alphabet word of `min_len..=max_len` code points built from
/// consonant + vowel-sign syllables, drawing consonants from `consonants`.
pub fn random_word(
    rng: &mut ChaCha8Rng,
    consonants: &[char],
    min_len: usize,
    max_len: usize,
) -> String {
    let target = rng.gen_range(min_len..=max_len);
    let mut word: Vec<char> = Vec::with_capacity(target);
    if rng.gen_bool(0.15) {
        word.push(*VOWELS.choose(rng).unwrap());
    }
    while word.len() < target {
        word.push(*consonants.choose(rng).unwrap());
        if word.len() < target && rng.gen_bool(0.6) {
            word.push(*VOWEL_SIGNS.choose(rng).unwrap());
        }
        if word.len() < target && rng.gen_bool(0.08) {
            word.push(*MODIFIERS.choose(rng).unwrap());
        }
    }
    word.truncate(target);
    word.into_iter().collect()
}

pub fn bangla_word(rng: &mut ChaCha8Rng) -> String {
    random_word(rng, CONSONANTS, 2, 10)
}

/// `count` distinct random words.
pub fn unique_words(rng: &mut ChaCha8Rng, count: usize) -> Vec<String> {
    let mut seen = HashSet::with_capacity(count);
    let mut words = Vec::with_capacity(count);
    while words.len() < count {
        let w = bangla_word(rng);
        if seen.insert(w.clone()) {
            words.push(w);
        }
    }
    words
}

pub fn demo_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/demo")
        .join(name)
}

/// Distinct n-grams by naive window enumeration and linear-scan dedup.
pub fn naive_grams(word: &str, sizes: &[usize]) -> Vec<String> {
    let chars: Vec<char> = word.chars().collect();
    let mut grams: Vec<String> = Vec::new();
    for &n in sizes {
        if chars.len() < n {
            continue;
        }
        for start in 0..=chars.len() - n {
            let g: String = chars[start..start + n].iter().collect();
            if !grams.contains(&g) {
                grams.push(g);
            }
        }
    }
    grams
}

/// Dice as an exact (2C, A+B) pair by pairwise comparison of every gram.
pub fn naive_dice(a: &str, b: &str, sizes: &[usize]) -> (usize, usize) {
    let ga = naive_grams(a, sizes);
    let gb = naive_grams(b, sizes);
    let mut common = 0;
    for x in &ga {
        for y in &gb {
            if x == y {
                common += 1;
            }
        }
    }
    (2 * common, ga.len() + gb.len())
}

pub fn naive_dice_value(a: &str, b: &str, sizes: &[usize]) -> f64 {
    let (num, den) = naive_dice(a, b, sizes);
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Net similarity of an exemplar set: preferences of the exemplars plus each
/// other point's best similarity to any exemplar.
pub fn net_similarity(s: &[Vec<f64>], exemplars: &[usize]) -> f64 {
    let mut total = 0.0;
    for i in 0..s.len() {
        if exemplars.contains(&i) {
            total += s[i][i];
        } else {
            total += exemplars
                .iter()
                .map(|&k| s[i][k])
                .fold(f64::NEG_INFINITY, f64::max);
        }
    }
    total
}

/// Best net similarity over every non-empty exemplar subset.
pub fn exhaustive_optimum(s: &[Vec<f64>]) -> (f64, Vec<usize>) {
    let n = s.len();
    let mut best = (f64::NEG_INFINITY, Vec::new());
    for mask in 1u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&k| mask & (1 << k) != 0).collect();
        let score = net_similarity(s, &set);
        if score > best.0 {
            best = (score, set);
        }
    }
    best
}

/// Prints one acceptance line directly to stderr, bypassing test capture.
pub fn verdict(id: u32, name: &str, passed: bool, detail: &str) {
    use std::io::Write;
    let tag = if passed { "PASS" } else { "FAIL" };
    let _ = writeln!(
        std::io::stderr(),
        "[{tag}] criterion {id}: {name} ({detail})"
    );
}
