//! Alphabets, finite words and segments.
//!
//! Symbols are stored as small integer indices into an [`Alphabet`]; textual
//! labels only appear when a word is parsed or printed.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a symbol inside its alphabet.
pub type Symbol = u8;

/// Largest number of symbols an alphabet may declare.
pub const MAX_ALPHABET: usize = 256;

/// An ordered set of distinct symbol labels.
///
/// Cloning is cheap; the label table is shared.
#[derive(Clone)]
pub struct Alphabet {
    labels: Arc<[String]>,
}

impl Alphabet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidAlphabet("no symbols declared".into()));
        }
        if labels.len() > MAX_ALPHABET {
            return Err(Error::InvalidAlphabet(format!(
                "{} symbols declared, at most {MAX_ALPHABET} supported",
                labels.len()
            )));
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() || label.chars().any(char::is_whitespace) {
                return Err(Error::InvalidAlphabet(format!("bad label {label:?}")));
            }
            if labels[..i].contains(label) {
                return Err(Error::InvalidAlphabet(format!("duplicate label `{label}`")));
            }
        }
        Ok(Alphabet {
            labels: labels.into(),
        })
    }

    /// The alphabet `{0, 1}` in that order.
    pub fn binary() -> Self {
        Alphabet::new(["0", "1"]).expect("static alphabet")
    }

    /// One symbol per distinct character, in order of first appearance.
    pub fn from_chars(text: &str) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        for c in text.chars().filter(|c| !c.is_whitespace()) {
            let s = c.to_string();
            if !labels.contains(&s) {
                labels.push(s);
            }
        }
        Alphabet::new(labels)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, symbol: Symbol) -> &str {
        &self.labels[symbol as usize]
    }

    pub fn index_of(&self, label: &str) -> Option<Symbol> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i as Symbol)
    }

    pub fn contains(&self, symbol: Symbol) -> bool {
        (symbol as usize) < self.labels.len()
    }

    /// True when every label is a single character, so words print without separators.
    pub fn is_single_char(&self) -> bool {
        self.labels.iter().all(|l| l.chars().count() == 1)
    }

    pub(crate) fn require_arity(&self, expected: usize) -> Result<()> {
        if self.len() == expected {
            Ok(())
        } else {
            Err(Error::AlphabetArity {
                expected,
                found: self.len(),
            })
        }
    }

    pub(crate) fn require_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.labels.join(" "),
                right: other.labels.join(" "),
            })
        }
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels.iter()).finish()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.labels.join(" "))
    }
}

/// The closed index range `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    start: u64,
    end: u64,
}

impl Segment {
    pub fn new(start: u64, end: u64) -> Result<Self> {
        if start > end {
            return Err(Error::InvalidSegment { start, end });
        }
        Ok(Segment { start, end })
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn end(&self) -> u64 {
        self.end
    }

    pub fn len(&self) -> u64 {
        self.end - self.start + 1
    }

    /// Segments always hold at least one index.
    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A finite word over a declared alphabet.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteWord {
    alphabet: Alphabet,
    symbols: Vec<Symbol>,
}

impl FiniteWord {
    pub fn new(alphabet: Alphabet, symbols: Vec<Symbol>) -> Result<Self> {
        if let Some(position) = symbols.iter().position(|&s| !alphabet.contains(s)) {
            return Err(Error::UnknownSymbol {
                symbol: format!("#{}", symbols[position]),
                position,
            });
        }
        Ok(FiniteWord { alphabet, symbols })
    }

    /// Callers guarantee every symbol is valid for `alphabet`.
    pub(crate) fn from_trusted(alphabet: Alphabet, symbols: Vec<Symbol>) -> Self {
        debug_assert!(symbols.iter().all(|&s| alphabet.contains(s)));
        FiniteWord { alphabet, symbols }
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        FiniteWord {
            alphabet,
            symbols: Vec::new(),
        }
    }

    /// Parses `text` against `alphabet`.
    ///
    /// With single-character labels the text is read character by character
    /// (whitespace ignored); otherwise it is split on whitespace.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let mut symbols = Vec::with_capacity(text.len());
        let mut push = |token: &str, position: usize| match alphabet.index_of(token) {
            Some(s) => {
                symbols.push(s);
                Ok(())
            }
            None => Err(Error::UnknownSymbol {
                symbol: token.to_string(),
                position,
            }),
        };
        if alphabet.is_single_char() {
            let mut buf = [0u8; 4];
            for (position, c) in text.chars().filter(|c| !c.is_whitespace()).enumerate() {
                push(c.encode_utf8(&mut buf), position)?;
            }
        } else {
            for (position, token) in text.split_whitespace().enumerate() {
                push(token, position)?;
            }
        }
        Ok(FiniteWord {
            alphabet: alphabet.clone(),
            symbols,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Swaps the two symbols of a binary alphabet at every position.
    pub fn bar(&self) -> Result<Self> {
        self.alphabet.require_arity(2)?;
        Ok(FiniteWord {
            alphabet: self.alphabet.clone(),
            symbols: self.symbols.iter().map(|&s| s ^ 1).collect(),
        })
    }

    pub fn concat(&self, other: &FiniteWord) -> Result<Self> {
        self.alphabet.require_same(&other.alphabet)?;
        let mut symbols = Vec::with_capacity(self.len() + other.len());
        symbols.extend_from_slice(&self.symbols);
        symbols.extend_from_slice(&other.symbols);
        Ok(FiniteWord {
            alphabet: self.alphabet.clone(),
            symbols,
        })
    }

    /// `self[start..=end]`.
    pub fn segment(&self, segment: Segment) -> Result<Self> {
        let len = self.len() as u64;
        if segment.end() >= len {
            return Err(Error::OutOfBounds {
                end: segment.end(),
                len,
            });
        }
        let range = segment.start() as usize..=segment.end() as usize;
        Ok(FiniteWord {
            alphabet: self.alphabet.clone(),
            symbols: self.symbols[range].to_vec(),
        })
    }

    /// Suffix starting at `start` (empty when `start >= len`).
    pub fn suffix(&self, start: usize) -> Self {
        let start = start.min(self.len());
        FiniteWord {
            alphabet: self.alphabet.clone(),
            symbols: self.symbols[start..].to_vec(),
        }
    }

    pub fn prefix(&self, len: usize) -> Self {
        let len = len.min(self.len());
        FiniteWord {
            alphabet: self.alphabet.clone(),
            symbols: self.symbols[..len].to_vec(),
        }
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> + '_ {
        self.symbols.iter().map(move |&s| self.alphabet.label(s))
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.alphabet.is_single_char() {
            ""
        } else {
            " "
        };
        for (i, label) in self.labels().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            f.write_str(label)?;
        }
        Ok(())
    }
}

impl fmt::Debug for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteWord({:?})", self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bin(text: &str) -> FiniteWord {
        FiniteWord::parse(&Alphabet::binary(), text).unwrap()
    }

    #[test]
    fn alphabet_rejects_bad_declarations() {
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(["a b"]).is_err());
        assert!(Alphabet::new((0..257).map(|i| i.to_string())).is_err());
        let ab = Alphabet::new(["x", "y"]).unwrap();
        assert_eq!(ab.index_of("y"), Some(1));
        assert_eq!(ab.label(0), "x");
    }

    #[test]
    fn bar_examples() {
        assert!(bin("").bar().unwrap().is_empty());
        assert_eq!(bin("10011").bar().unwrap(), bin("01100"));
        let a2 = bin("1001101100011001001110011");
        assert_eq!(a2.bar().unwrap().bar().unwrap(), a2);
    }

    #[test]
    fn bar_rejects_non_binary() {
        let abc = Alphabet::new(["a", "b", "c"]).unwrap();
        let w = FiniteWord::parse(&abc, "abc").unwrap();
        assert_eq!(
            w.bar(),
            Err(Error::AlphabetArity {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn concat_examples() {
        assert_eq!(bin("").concat(&bin("1")).unwrap(), bin("1"));
        assert_eq!(
            bin("10011").concat(&bin("01100")).unwrap(),
            bin("1001101100")
        );
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let a = FiniteWord::parse(&ab, "a").unwrap();
        let b = FiniteWord::parse(&ab, "b").unwrap();
        assert_eq!(a.concat(&b).unwrap().to_string(), "ab");
        assert!(matches!(
            a.concat(&bin("1")),
            Err(Error::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn segment_examples() {
        let abc = Alphabet::new(["a", "b", "c"]).unwrap();
        let w = FiniteWord::parse(&abc, "abc").unwrap();
        assert_eq!(
            w.segment(Segment::new(1, 2).unwrap()).unwrap().to_string(),
            "bc"
        );
        assert_eq!(
            w.segment(Segment::new(1, 3).unwrap()),
            Err(Error::OutOfBounds { end: 3, len: 3 })
        );
        assert!(Segment::new(3, 2).is_err());
    }

    #[test]
    fn parse_reports_unknown_symbol_position() {
        let err = FiniteWord::parse(&Alphabet::binary(), "0120").unwrap_err();
        assert_eq!(
            err,
            Error::UnknownSymbol {
                symbol: "2".into(),
                position: 2
            }
        );
        let multi = Alphabet::new(["q0", "q1"]).unwrap();
        let w = FiniteWord::parse(&multi, "q0 q1  q1").unwrap();
        assert_eq!(w.symbols(), &[0, 1, 1]);
        assert_eq!(w.to_string(), "q0 q1 q1");
    }

    fn binary_word(max: usize) -> impl Strategy<Value = FiniteWord> {
        proptest::collection::vec(0u8..2, 0..max)
            .prop_map(|s| FiniteWord::new(Alphabet::binary(), s).unwrap())
    }

    proptest! {
        #[test]
        fn bar_is_a_length_preserving_involution(w in binary_word(100_000)) {
            let b = w.bar().unwrap();
            prop_assert_eq!(b.len(), w.len());
            prop_assert!(b.symbols().iter().zip(w.symbols()).all(|(x, y)| x != y));
            prop_assert_eq!(b.bar().unwrap(), w);
        }

        #[test]
        fn segments_split_and_concatenate(
            w in binary_word(200),
            cuts in (0usize..200, 0usize..200, 0usize..200),
        ) {
            prop_assume!(!w.is_empty());
            let mut idx = [cuts.0 % w.len(), cuts.1 % w.len(), cuts.2 % w.len()];
            idx.sort_unstable();
            let [i, j, k] = idx.map(|x| x as u64);
            prop_assume!(j < k);
            let whole = w.segment(Segment::new(i, k).unwrap()).unwrap();
            prop_assert_eq!(whole.len() as u64, k - i + 1);
            let left = w.segment(Segment::new(i, j).unwrap()).unwrap();
            let right = w.segment(Segment::new(j + 1, k).unwrap()).unwrap();
            prop_assert_eq!(left.concat(&right).unwrap(), whole);
        }
    }
}
