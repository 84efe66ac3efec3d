//! Lazily materialized infinite words.
//!
//! A [`WordSource`] owns a deterministic [`Expansion`] and the prefix it has
//! produced so far. Materialization takes `&mut self`, so the borrow checker
//! enforces the sharing contract: a source is confined to one owner while it
//! grows, and after a call to [`WordSource::materialize_to`] any number of
//! threads may read the prefix through `&WordSource`.
//!
//! Every request that forces materialization is checked against a prefix
//! length budget. Expansions that can compute a symbol directly from its
//! index (periodic words, the counterexample family) answer
//! [`WordSource::symbol_at`] without materializing, so indices up to and
//! beyond `2^40` remain addressable.

use std::fmt;

use crate::error::{Error, Result};
use crate::words::{Alphabet, FiniteWord, Segment, Symbol};

/// Default cap on materialized prefix length (in symbols).
pub const DEFAULT_BUDGET: u64 = 1 << 28;

/// Deterministic generator behind a [`WordSource`].
pub trait Expansion: Send + Sync {
    /// Appends symbols to `out` until `out.len() >= len`. `out` always holds
    /// exactly what this expansion produced earlier; overshooting is allowed.
    fn expand(&mut self, out: &mut Vec<Symbol>, len: usize) -> Result<()>;

    /// Direct access to the symbol at `index`, when the expansion supports it.
    fn symbol_at(&self, _index: u64) -> Option<Result<Symbol>> {
        None
    }
}

pub struct WordSource {
    alphabet: Alphabet,
    expansion: Box<dyn Expansion>,
    prefix: Vec<Symbol>,
    budget: u64,
}

impl WordSource {
    pub fn new(alphabet: Alphabet, expansion: impl Expansion + 'static) -> Self {
        WordSource {
            alphabet,
            expansion: Box::new(expansion),
            prefix: Vec::new(),
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Symbols materialized so far.
    pub fn materialized(&self) -> &[Symbol] {
        &self.prefix
    }

    /// Ensures at least `len` symbols are materialized.
    pub fn materialize_to(&mut self, len: u64) -> Result<()> {
        if len > self.budget {
            return Err(Error::Budget {
                what: "prefix materialization",
                requested: len,
                limit: self.budget,
            });
        }
        let len = len as usize;
        if self.prefix.len() < len {
            self.prefix.reserve(len - self.prefix.len());
            self.expansion.expand(&mut self.prefix, len)?;
            debug_assert!(self.prefix.len() >= len);
        }
        Ok(())
    }

    /// The first `len` symbols.
    pub fn prefix(&mut self, len: u64) -> Result<FiniteWord> {
        self.materialize_to(len)?;
        Ok(FiniteWord::from_trusted(
            self.alphabet.clone(),
            self.prefix[..len as usize].to_vec(),
        ))
    }

    /// `ω[start..=end]`; materializes through `end`.
    pub fn segment(&mut self, segment: Segment) -> Result<FiniteWord> {
        let end = segment.end().checked_add(1).ok_or(Error::Budget {
            what: "prefix materialization",
            requested: u64::MAX,
            limit: self.budget,
        })?;
        self.materialize_to(end)?;
        Ok(FiniteWord::from_trusted(
            self.alphabet.clone(),
            self.prefix[segment.start() as usize..end as usize].to_vec(),
        ))
    }

    /// Symbol at `index`, computed directly when possible and otherwise
    /// read from the materialized prefix.
    pub fn symbol_at(&mut self, index: u64) -> Result<Symbol> {
        if let Some(&s) = self.prefix.get(index as usize) {
            return Ok(s);
        }
        if let Some(direct) = self.expansion.symbol_at(index) {
            return direct;
        }
        self.materialize_to(index + 1)?;
        Ok(self.prefix[index as usize])
    }

    /// True when [`symbol_at`](Self::symbol_at) never needs to materialize.
    pub fn has_random_access(&self) -> bool {
        self.expansion.symbol_at(0).is_some()
    }

    /// Symbols `[start, start + len)` without memoizing them, for expansions
    /// with random access. Falls back to materialization otherwise.
    pub fn chunk(&mut self, start: u64, len: usize) -> Result<Vec<Symbol>> {
        if self.has_random_access() && (self.prefix.len() as u64) < start + len as u64 {
            (start..start + len as u64)
                .map(|i| self.expansion.symbol_at(i).expect("random access"))
                .collect()
        } else {
            self.materialize_to(start + len as u64)?;
            Ok(self.prefix[start as usize..start as usize + len].to_vec())
        }
    }
}

impl fmt::Debug for WordSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WordSource")
            .field("alphabet", &self.alphabet)
            .field("materialized", &self.prefix.len())
            .field("budget", &self.budget)
            .finish()
    }
}

/// `p p p ...`
#[derive(Debug, Clone)]
pub(crate) struct Periodic {
    period: Vec<Symbol>,
}

impl Periodic {
    pub(crate) fn new(period: Vec<Symbol>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(Periodic { period })
    }
}

impl Expansion for Periodic {
    fn expand(&mut self, out: &mut Vec<Symbol>, len: usize) -> Result<()> {
        let p = self.period.len();
        while out.len() < len {
            let offset = out.len() % p;
            let take = (p - offset).min(len - out.len());
            out.extend_from_slice(&self.period[offset..offset + take]);
        }
        Ok(())
    }

    fn symbol_at(&self, index: u64) -> Option<Result<Symbol>> {
        Some(Ok(self.period[(index % self.period.len() as u64) as usize]))
    }
}
