//! Infinite words: the counterexample family `ω_τ`, periodic words and
//! fixed points of morphisms.
//!
//! The family is built from binary blocks
//!
//! ```text
//! a_0 = 1,   a_{n+1} = a_n ā_n ā_n a_n a_n,   c_n = a_n repeated τ(n) times,
//! ω_τ = c_0 c_1 c_2 ...
//! ```
//!
//! where `ā` swaps 0 and 1 and `τ(n) ∈ {9, 10}` (10 everywhere by default).
//! Block `c_n` starts at `l_n = Σ_{k<n} τ(k)·5^k`.
//!
//! Reading `a_n` as a tree of five-way choices gives a direct formula: the
//! symbol of `a_n` at position `p` is `1` flipped once for every base-5
//! digit of `p` equal to 1 or 2. Prefixes of `ω_τ` are generated from a
//! cached low level `a_j` by copying it (or its complement) chunk by chunk,
//! so long prefixes never require building a full high level `a_n`.

use std::fmt;
use std::sync::{Arc, RwLock};

use crate::automata::Homomorphism;
use crate::error::{Error, Result};
use crate::source::{Expansion, Periodic, WordSource, DEFAULT_BUDGET};
use crate::words::{Alphabet, FiniteWord, Symbol};

/// Per-symbol images used to seed a morphic fixed point.
pub type MorphismRules = Homomorphism;

/// Highest level `n` for which `a_n` may be built explicitly.
pub const MAX_LEVEL: u32 = 16;

/// Level kept in memory for chunked prefix generation (`5^8 = 390625` symbols).
const CHUNK_LEVEL: u32 = 8;

const DEFAULT_REPEAT: u64 = 10;

fn pow5(n: u32) -> Option<u64> {
    5u64.checked_pow(n)
}

/// Number of base-5 digits of `p` equal to 1 or 2, modulo 2.
fn flip_parity(mut p: u64) -> u8 {
    let mut parity = 0;
    while p > 0 {
        let d = p % 5;
        if d == 1 || d == 2 {
            parity ^= 1;
        }
        p /= 5;
    }
    parity
}

fn check_repeat(count: u64) -> Result<u64> {
    match count {
        9 | 10 => Ok(count),
        other => Err(Error::InvalidTau(other)),
    }
}

/// Repetition counts `τ: ℕ → {9, 10}`.
///
/// An explicit table covers the first blocks; a rule covers the rest.
#[derive(Clone)]
pub struct Tau {
    table: Vec<u64>,
    rule: Arc<dyn Fn(u64) -> u64 + Send + Sync>,
}

impl Tau {
    pub fn constant(count: u64) -> Result<Self> {
        check_repeat(count)?;
        Ok(Tau {
            table: Vec::new(),
            rule: Arc::new(move |_| count),
        })
    }

    /// Explicit counts for the first blocks; later blocks repeat 10 times.
    pub fn table(counts: Vec<u64>) -> Result<Self> {
        for &c in &counts {
            check_repeat(c)?;
        }
        Ok(Tau {
            table: counts,
            rule: Arc::new(|_| DEFAULT_REPEAT),
        })
    }

    /// Counts given by `rule`; checked when looked up.
    pub fn from_fn(rule: impl Fn(u64) -> u64 + Send + Sync + 'static) -> Self {
        Tau {
            table: Vec::new(),
            rule: Arc::new(rule),
        }
    }

    pub fn get(&self, n: u64) -> Result<u64> {
        match self.table.get(n as usize) {
            Some(&c) => Ok(c),
            None => check_repeat((self.rule)(n)),
        }
    }
}

impl Default for Tau {
    fn default() -> Self {
        Tau::constant(DEFAULT_REPEAT).expect("10 is a valid count")
    }
}

impl fmt::Debug for Tau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<_> = (0..8).map(|n| self.get(n).ok()).collect();
        f.debug_struct("Tau").field("head", &head).finish()
    }
}

struct Family {
    alphabet: Alphabet,
    tau: Tau,
    budget: u64,
    /// `levels[n] = a_n`; grows monotonically.
    levels: RwLock<Vec<Arc<[Symbol]>>>,
}

/// The words `a_n`, `c_n^(τ)`, offsets `l_n` and the sequence `ω_τ`.
///
/// Cloning shares the level cache, which is safe to use from several
/// threads at once.
#[derive(Clone)]
pub struct CounterexampleFamily {
    inner: Arc<Family>,
}

impl CounterexampleFamily {
    /// `ω_τ` over `{0, 1}`.
    pub fn new(tau: Tau) -> Self {
        Self::over(Alphabet::binary(), tau).expect("binary alphabet")
    }

    /// The construction over any two-symbol alphabet; `a_0` is its second symbol.
    pub fn over(alphabet: Alphabet, tau: Tau) -> Result<Self> {
        alphabet.require_arity(2)?;
        Ok(CounterexampleFamily {
            inner: Arc::new(Family {
                alphabet,
                tau,
                budget: DEFAULT_BUDGET,
                levels: RwLock::new(vec![Arc::from(vec![1 as Symbol])]),
            }),
        })
    }

    /// Replaces the materialization budget (in symbols). Starts a fresh cache.
    pub fn with_budget(self, budget: u64) -> Self {
        let levels = self.inner.levels.read().expect("level cache").clone();
        CounterexampleFamily {
            inner: Arc::new(Family {
                alphabet: self.inner.alphabet.clone(),
                tau: self.inner.tau.clone(),
                budget,
                levels: RwLock::new(levels),
            }),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.inner.alphabet
    }

    pub fn budget(&self) -> u64 {
        self.inner.budget
    }

    pub fn tau(&self, n: u64) -> Result<u64> {
        self.inner.tau.get(n)
    }

    fn level_len(&self, n: u32) -> Result<u64> {
        if n > MAX_LEVEL {
            return Err(Error::Budget {
                what: "block level",
                requested: n as u64,
                limit: MAX_LEVEL as u64,
            });
        }
        let len = pow5(n).expect("5^16 fits in u64");
        if len > self.inner.budget {
            return Err(Error::Budget {
                what: "block length",
                requested: len,
                limit: self.inner.budget,
            });
        }
        Ok(len)
    }

    fn level(&self, n: u32) -> Result<Arc<[Symbol]>> {
        self.level_len(n)?;
        if let Some(level) = self
            .inner
            .levels
            .read()
            .expect("level cache")
            .get(n as usize)
        {
            return Ok(level.clone());
        }
        let mut levels = self.inner.levels.write().expect("level cache");
        while levels.len() <= n as usize {
            let a = levels.last().expect("a_0 is always cached");
            let bar: Vec<Symbol> = a.iter().map(|&s| s ^ 1).collect();
            let mut next = Vec::with_capacity(a.len() * 5);
            for part in [&a[..], &bar, &bar, &a[..], &a[..]] {
                next.extend_from_slice(part);
            }
            levels.push(Arc::from(next));
        }
        Ok(levels[n as usize].clone())
    }

    /// `a_n`, of length `5^n`.
    pub fn build_a(&self, n: u32) -> Result<FiniteWord> {
        let level = self.level(n)?;
        Ok(FiniteWord::from_trusted(
            self.alphabet().clone(),
            level.to_vec(),
        ))
    }

    /// `ā_n`.
    pub fn build_a_bar(&self, n: u32) -> Result<FiniteWord> {
        let level = self.level(n)?;
        Ok(FiniteWord::from_trusted(
            self.alphabet().clone(),
            level.iter().map(|&s| s ^ 1).collect(),
        ))
    }

    /// `c_n^(τ)`: `a_n` repeated `τ(n)` times.
    pub fn build_c(&self, n: u32) -> Result<FiniteWord> {
        let repeat = self.tau(n as u64)?;
        let unit = self.level_len(n)?;
        let len = unit * repeat;
        if len > self.inner.budget {
            return Err(Error::Budget {
                what: "block length",
                requested: len,
                limit: self.inner.budget,
            });
        }
        let level = self.level(n)?;
        Ok(FiniteWord::from_trusted(
            self.alphabet().clone(),
            level.repeat(repeat as usize),
        ))
    }

    /// `|c_n|`.
    pub fn c_len(&self, n: u32) -> Result<u64> {
        let unit = pow5(n).ok_or(Error::Budget {
            what: "index arithmetic",
            requested: n as u64,
            limit: 27,
        })?;
        unit.checked_mul(self.tau(n as u64)?).ok_or(Error::Budget {
            what: "index arithmetic",
            requested: n as u64,
            limit: 27,
        })
    }

    /// `l_n = |c_0 c_1 ... c_{n-1}|`, the start of block `c_n`.
    pub fn l_index(&self, n: u32) -> Result<u64> {
        let mut total: u64 = 0;
        for k in 0..n {
            total = total.checked_add(self.c_len(k)?).ok_or(Error::Budget {
                what: "index arithmetic",
                requested: n as u64,
                limit: k as u64,
            })?;
        }
        Ok(total)
    }

    /// Block containing `index`: `(n, l_n)`.
    fn block_of(&self, index: u64) -> Result<(u32, u64)> {
        let mut start = 0u64;
        let mut n = 0u32;
        loop {
            let len = self.c_len(n)?;
            match start.checked_add(len) {
                Some(end) if index < end => return Ok((n, start)),
                Some(end) => start = end,
                None => return Ok((n, start)),
            }
            n += 1;
        }
    }

    /// Symbol of `a_n` at position `p < 5^n`, from the base-5 digits of `p`.
    pub fn a_symbol(&self, p: u64) -> Symbol {
        1 ^ flip_parity(p)
    }

    /// `ω_τ(index)` without materializing anything.
    pub fn omega_symbol(&self, index: u64) -> Result<Symbol> {
        let (n, start) = self.block_of(index)?;
        let unit = pow5(n).expect("block level below 28");
        Ok(self.a_symbol((index - start) % unit))
    }

    /// Appends `a_n[start .. start + count]` to `out` (`start + count <= 5^n`).
    fn fill_a(&self, n: u32, start: u64, count: u64, out: &mut Vec<Symbol>) -> Result<()> {
        let j = n.min(CHUNK_LEVEL);
        let base = self.level(j)?;
        let unit = base.len() as u64;
        let mut p = start;
        let end = start + count;
        while p < end {
            let r = (p % unit) as usize;
            let take = ((unit - r as u64).min(end - p)) as usize;
            let chunk = &base[r..r + take];
            if flip_parity(p / unit) == 0 {
                out.extend_from_slice(chunk);
            } else {
                out.extend(chunk.iter().map(|&s| s ^ 1));
            }
            p += take as u64;
        }
        Ok(())
    }

    /// `ω_τ = c_0 c_1 c_2 ...` as a lazily materialized source.
    pub fn omega_source(&self) -> WordSource {
        WordSource::new(
            self.alphabet().clone(),
            OmegaExpansion {
                family: self.clone(),
                block: 0,
                block_start: 0,
            },
        )
        .with_budget(self.inner.budget)
    }
}

impl fmt::Debug for CounterexampleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CounterexampleFamily")
            .field("alphabet", &self.inner.alphabet)
            .field("tau", &self.inner.tau)
            .field("budget", &self.inner.budget)
            .finish()
    }
}

impl Default for CounterexampleFamily {
    fn default() -> Self {
        CounterexampleFamily::new(Tau::default())
    }
}

struct OmegaExpansion {
    family: CounterexampleFamily,
    block: u32,
    block_start: u64,
}

impl Expansion for OmegaExpansion {
    fn expand(&mut self, out: &mut Vec<Symbol>, len: usize) -> Result<()> {
        let len = len as u64;
        while (out.len() as u64) < len {
            let pos = out.len() as u64;
            let block_len = self.family.c_len(self.block)?;
            if pos >= self.block_start + block_len {
                self.block_start += block_len;
                self.block += 1;
                continue;
            }
            let unit = pow5(self.block).expect("block level below 28");
            let offset = (pos - self.block_start) % unit;
            let count = (unit - offset)
                .min(len - pos)
                .min(self.block_start + block_len - pos);
            self.family.fill_a(self.block, offset, count, out)?;
        }
        Ok(())
    }

    fn symbol_at(&self, index: u64) -> Option<Result<Symbol>> {
        Some(self.family.omega_symbol(index))
    }
}

/// `p p p ...` for a non-empty word `p`.
pub fn periodic_source(period: &FiniteWord) -> Result<WordSource> {
    let expansion = Periodic::new(period.symbols().to_vec())?;
    Ok(WordSource::new(period.alphabet().clone(), expansion))
}

struct Morphic {
    images: Vec<Vec<Symbol>>,
    seed: Symbol,
    next: usize,
}

impl Expansion for Morphic {
    fn expand(&mut self, out: &mut Vec<Symbol>, len: usize) -> Result<()> {
        if out.is_empty() {
            out.extend_from_slice(&self.images[self.seed as usize]);
            self.next = 1;
        }
        while out.len() < len {
            let s = out[self.next];
            out.extend_from_slice(&self.images[s as usize]);
            self.next += 1;
        }
        Ok(())
    }
}

/// Fixed point of `rules` obtained by iterating from a prolongable `seed`.
pub fn morphic_source(rules: &MorphismRules, seed: Symbol) -> Result<WordSource> {
    rules.source().require_same(rules.target())?;
    let alphabet = rules.source().clone();
    if !alphabet.contains(seed) {
        return Err(Error::UnknownSymbol {
            symbol: format!("#{seed}"),
            position: 0,
        });
    }
    for s in 0..alphabet.len() {
        if rules.image(s as Symbol).is_empty() {
            return Err(Error::EmptyImage(alphabet.label(s as Symbol).to_string()));
        }
    }
    let seed_image = rules.image(seed);
    if seed_image.len() < 2 || seed_image[0] != seed {
        return Err(Error::NotProlongable(alphabet.label(seed).to_string()));
    }
    let images = (0..alphabet.len())
        .map(|s| rules.image(s as Symbol).to_vec())
        .collect();
    Ok(WordSource::new(
        alphabet,
        Morphic {
            images,
            seed,
            next: 0,
        },
    ))
}

/// The Thue–Morse word `0110100110010110...` over `{0, 1}`.
pub fn thue_morse() -> WordSource {
    let rules = Homomorphism::new(
        Alphabet::binary(),
        Alphabet::binary(),
        vec![vec![0, 1], vec![1, 0]],
    )
    .expect("static rules");
    morphic_source(&rules, 0).expect("0 -> 01 is prolongable")
}
