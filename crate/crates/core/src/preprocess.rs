//! Corpus preprocessing: raw text to a deduplicated lexicon of Bangla word forms.
//!
//! The pipeline is `clean_text` → `tokenize` → `build_lexicon`. A "character"
//! is a Unicode code point throughout.

use std::cmp::Ordering;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZWNJ: char = '\u{200C}';
const ZWJ: char = '\u{200D}';

/// A loaded text document. Construction from bytes rejects invalid UTF-8.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDocument {
    content: String,
}

impl RawDocument {
    pub fn from_bytes(bytes: Vec<u8>) -> Result<Self> {
        String::from_utf8(bytes)
            .map(|content| RawDocument { content })
            .map_err(|e| Error::Encoding {
                offset: e.utf8_error().valid_up_to(),
            })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        Self::from_bytes(bytes)
    }

    pub fn content(&self) -> &str {
        &self.content
    }
}

impl From<String> for RawDocument {
    fn from(content: String) -> Self {
        RawDocument { content }
    }
}

impl From<&str> for RawDocument {
    fn from(content: &str) -> Self {
        RawDocument {
            content: content.to_string(),
        }
    }
}

/// Bengali block (U+0980–U+09FF) minus the Bengali digits U+09E6–U+09EF.
pub fn is_bangla_letter(c: char) -> bool {
    matches!(c, '\u{0980}'..='\u{09FF}') && !is_bangla_digit(c)
}

pub fn is_bangla_digit(c: char) -> bool {
    matches!(c, '\u{09E6}'..='\u{09EF}')
}

/// Keeps Bangla letters and replaces every maximal run of anything else
/// (whitespace, digits, punctuation, other scripts, emoji) with one space.
/// ZWJ and ZWNJ are deleted outright so they never split a word.
pub fn clean_text(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut in_gap = false;
    for c in text.chars() {
        if c == ZWJ || c == ZWNJ {
            continue;
        }
        if is_bangla_letter(c) {
            out.push(c);
            in_gap = false;
        } else if !in_gap {
            out.push(' ');
            in_gap = true;
        }
    }
    out
}

/// Splits cleaned text on whitespace runs, keeping order.
pub fn tokenize(text: &str) -> Vec<&str> {
    text.split_whitespace().collect()
}

/// Orders words by code-point length, then by code-point sequence.
pub fn lexicon_order(a: &str, b: &str) -> Ordering {
    a.chars()
        .count()
        .cmp(&b.chars().count())
        .then_with(|| a.cmp(b))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceStats {
    pub total_tokens: usize,
    pub unique_tokens: usize,
}

/// Unique word forms in lexicon order. This is the clustering input.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    words: Vec<String>,
    stats: SourceStats,
}

impl Lexicon {
    /// Builds a lexicon from arbitrary words: trims, deduplicates and sorts,
    /// but does not drop short words. Stats report `total == unique`.
    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let words = sorted_unique(
            words
                .into_iter()
                .map(|w| w.as_ref().trim().to_string())
                .filter(|w| !w.is_empty())
                .collect(),
        );
        let n = words.len();
        Lexicon {
            words,
            stats: SourceStats {
                total_tokens: n,
                unique_tokens: n,
            },
        }
    }

    /// Same as [`Lexicon::from_words`] but keeps the caller's total-token count.
    pub fn with_total_tokens(mut self, total_tokens: usize) -> Self {
        self.stats.total_tokens = total_tokens.max(self.words.len());
        self
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn stats(&self) -> SourceStats {
        self.stats
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

fn sorted_unique(mut words: Vec<String>) -> Vec<String> {
    words.sort_by(|a, b| lexicon_order(a, b));
    words.dedup();
    words
}

/// Drops one-code-point tokens, deduplicates and sorts into lexicon order.
/// `total_tokens` counts every non-empty candidate, including dropped ones.
pub fn build_lexicon<I, S>(tokens: I) -> Lexicon
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut total_tokens = 0;
    let mut kept = Vec::new();
    for token in tokens {
        let token = token.as_ref().trim();
        if token.is_empty() {
            continue;
        }
        total_tokens += 1;
        if token.chars().nth(1).is_some() {
            kept.push(token.to_string());
        }
    }
    let words = sorted_unique(kept);
    Lexicon {
        stats: SourceStats {
            total_tokens,
            unique_tokens: words.len(),
        },
        words,
    }
}

/// Runs the whole preprocessing pipeline over several documents.
pub fn preprocess<'a, I>(docs: I) -> Lexicon
where
    I: IntoIterator<Item = &'a RawDocument>,
{
    let cleaned: Vec<String> = docs.into_iter().map(|d| clean_text(d.content())).collect();
    build_lexicon(cleaned.iter().flat_map(|text| tokenize(text)))
}
