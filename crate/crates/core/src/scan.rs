//! Linear-time occurrence scanning (Knuth–Morris–Pratt).
//!
//! The failure table holds, for every prefix `pattern[..=q]`, the length of
//! its longest proper border. Scanning a text of length `n` costs at most
//! `2n` symbol comparisons after an `O(m)` table build.

use crate::error::{Error, Result};
use crate::words::{FiniteWord, Symbol};

/// A compiled pattern.
#[derive(Debug, Clone)]
pub struct Matcher<'a> {
    pattern: &'a [Symbol],
    border: Vec<usize>,
}

impl<'a> Matcher<'a> {
    pub fn new(pattern: &'a [Symbol]) -> Result<Self> {
        if pattern.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let mut border = vec![0; pattern.len()];
        let mut q = 0;
        for i in 1..pattern.len() {
            while q > 0 && pattern[q] != pattern[i] {
                q = border[q - 1];
            }
            if pattern[q] == pattern[i] {
                q += 1;
            }
            border[i] = q;
        }
        Ok(Matcher { pattern, border })
    }

    pub fn pattern_len(&self) -> usize {
        self.pattern.len()
    }

    /// Calls `on_match` with each start position, overlapping matches included.
    /// Returns the number of symbol comparisons performed.
    pub fn scan(&self, text: &[Symbol], mut on_match: impl FnMut(usize)) -> usize {
        let m = self.pattern.len();
        let mut comparisons = 0;
        let mut q = 0;
        for (i, &c) in text.iter().enumerate() {
            loop {
                comparisons += 1;
                if self.pattern[q] == c {
                    q += 1;
                    break;
                }
                if q == 0 {
                    break;
                }
                q = self.border[q - 1];
            }
            if q == m {
                on_match(i + 1 - m);
                q = self.border[m - 1];
            }
        }
        comparisons
    }

    pub fn find_all(&self, text: &[Symbol]) -> Vec<usize> {
        let mut out = Vec::new();
        self.scan(text, |p| out.push(p));
        out
    }
}

/// All start positions of `pattern` in `text`, in increasing order.
pub fn occurrences(pattern: &FiniteWord, text: &FiniteWord) -> Result<Vec<usize>> {
    pattern.alphabet().require_same(text.alphabet())?;
    Ok(Matcher::new(pattern.symbols())?.find_all(text.symbols()))
}
