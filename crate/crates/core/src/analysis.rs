//! Empirical almost-periodicity on finite prefixes.
//!
//! The regulator of a factor `x` in a finite word `w` is the smallest `l`
//! such that every window `w[i .. i+l)` with `0 <= i <= |w| - l` contains a
//! full occurrence of `x`. Over occurrence starts `p_0 < ... < p_m` it is
//!
//! ```text
//! max(p_0 + |x|,  max_k (p_{k+1} - p_k) + |x| - 1,  |w| - p_m)
//! ```
//!
//! Every predicate here speaks about the prefix it was given: results are
//! evidence qualified by the prefix length, never claims about the whole
//! infinite sequence.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::generators::CounterexampleFamily;
use crate::scan::Matcher;
use crate::words::{FiniteWord, Segment, Symbol};

/// Longest factor length enumerated by [`recurrence_stability`].
pub const MAX_FACTOR_LEN: usize = 12;

/// Regulator from sorted occurrence starts; `None` when there are none.
fn window_from_occurrences(occ: &[usize], pattern_len: usize, text_len: usize) -> Option<usize> {
    let (&first, &last) = (occ.first()?, occ.last()?);
    let gap = occ
        .windows(2)
        .map(|p| p[1] - p[0] + pattern_len - 1)
        .max()
        .unwrap_or(0);
    Some(
        (first + pattern_len)
            .max(gap)
            .max(text_len - last)
            .max(pattern_len),
    )
}

/// Incremental regulator statistics for one factor.
#[derive(Debug, Clone, Copy)]
struct GapStats {
    first: usize,
    last: usize,
    max_gap: usize,
    count: usize,
}

impl GapStats {
    fn new(p: usize) -> Self {
        GapStats {
            first: p,
            last: p,
            max_gap: 0,
            count: 1,
        }
    }

    fn push(&mut self, p: usize) {
        self.max_gap = self.max_gap.max(p - self.last);
        self.last = p;
        self.count += 1;
    }

    fn window(&self, pattern_len: usize, text_len: usize) -> usize {
        let gap = if self.count > 1 {
            self.max_gap + pattern_len - 1
        } else {
            0
        };
        (self.first + pattern_len)
            .max(gap)
            .max(text_len - self.last)
            .max(pattern_len)
    }
}

/// Regulator of `x` in `w`, or `None` if `x` does not occur.
pub fn min_window(x: &FiniteWord, w: &FiniteWord) -> Result<Option<usize>> {
    Ok(regulator(x, w)?.min_window)
}

/// Occurrence statistics and regulator of `pattern` over a prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegulatorReport {
    pub pattern: FiniteWord,
    pub prefix_length: usize,
    pub occurrence_count: usize,
    pub min_window: Option<usize>,
    pub rightmost_start: Option<usize>,
}

pub fn regulator(x: &FiniteWord, w: &FiniteWord) -> Result<RegulatorReport> {
    x.alphabet().require_same(w.alphabet())?;
    let occ = Matcher::new(x.symbols())?.find_all(w.symbols());
    Ok(RegulatorReport {
        pattern: x.clone(),
        prefix_length: w.len(),
        occurrence_count: occ.len(),
        min_window: window_from_occurrences(&occ, x.len(), w.len()),
        rightmost_start: occ.last().copied(),
    })
}

/// Outcome of [`check_window`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowCheck {
    Pass,
    /// Start of the first window of the requested length that lacks the pattern.
    Violation(usize),
}

impl WindowCheck {
    pub fn passed(&self) -> bool {
        matches!(self, WindowCheck::Pass)
    }
}

/// Checks that every window of length `l` in `w` contains `x`.
pub fn check_window(x: &FiniteWord, w: &FiniteWord, l: usize) -> Result<WindowCheck> {
    x.alphabet().require_same(w.alphabet())?;
    let matcher = Matcher::new(x.symbols())?;
    if l > w.len() {
        return Err(Error::InsufficientData {
            needed: l as u64,
            available: w.len() as u64,
        });
    }
    if l < x.len() {
        return Ok(WindowCheck::Violation(0));
    }
    let last_window = w.len() - l;
    // window i is covered by an occurrence p with i <= p <= i + l - |x|
    let reach = l - x.len();
    let mut next_uncovered = 0usize;
    let mut violation = None;
    matcher.scan(w.symbols(), |p| {
        if violation.is_none() && next_uncovered <= last_window {
            if p > next_uncovered + reach {
                violation = Some(next_uncovered);
            } else {
                next_uncovered = p + 1;
            }
        }
    });
    if let Some(i) = violation {
        return Ok(WindowCheck::Violation(i));
    }
    Ok(if next_uncovered > last_window {
        WindowCheck::Pass
    } else {
        WindowCheck::Violation(next_uncovered)
    })
}

pub fn rightmost_occurrence(x: &FiniteWord, w: &FiniteWord) -> Result<Option<usize>> {
    Ok(regulator(x, w)?.rightmost_start)
}

/// Witness positions of `a a`, `a ā`, `ā a`, `ā ā` inside `a_{n+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairContainment {
    /// In the order `a a`, `a ā`, `ā a`, `ā ā`.
    pub witnesses: [Option<usize>; 4],
}

impl PairContainment {
    pub fn holds(&self) -> bool {
        self.witnesses.iter().all(Option::is_some)
    }
}

fn pairs(a: &FiniteWord, b: &FiniteWord) -> Result<[FiniteWord; 4]> {
    Ok([a.concat(a)?, a.concat(b)?, b.concat(a)?, b.concat(b)?])
}

/// Checks that `a_{n+1}` contains each two-letter combination of `a_n`, `ā_n`.
pub fn verify_pair_containment(fam: &CounterexampleFamily, n: u32) -> Result<PairContainment> {
    let a = fam.build_a(n)?;
    let next = fam.build_a(n + 1)?;
    let mut witnesses = [None; 4];
    for (slot, pair) in witnesses.iter_mut().zip(pairs(&a, &a.bar()?)?) {
        *slot = Matcher::new(pair.symbols())?
            .find_all(next.symbols())
            .first()
            .copied();
    }
    Ok(PairContainment { witnesses })
}

/// Checks that `a_m` occurs in each of `a_m a_m`, `a_m ā_m`, `ā_m a_m`,
/// `ā_m ā_m` only at positions `0` and `|a_m|`.
pub fn verify_alignment_lemma(fam: &CounterexampleFamily, m: u32) -> Result<bool> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "alignment lemma needs m >= 1".into(),
        ));
    }
    let a = fam.build_a(m)?;
    let matcher = Matcher::new(a.symbols())?;
    for pair in pairs(&a, &a.bar()?)? {
        let mut aligned = true;
        matcher.scan(pair.symbols(), |p| aligned &= p == 0 || p == a.len());
        if !aligned {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest horizon accepted by [`verify_cn_absent`] for level `n`.
pub fn cn_absent_horizon(fam: &CounterexampleFamily, n: u32) -> Result<u64> {
    Ok(fam.l_index(n + 1)? + 2 * fam.c_len(n)?)
}

/// First occurrence of `c_n` starting at or after `l_{n+1}` in the
/// `horizon`-prefix of `ω`, if any.
pub fn late_cn_occurrence(
    prefix: &FiniteWord,
    fam: &CounterexampleFamily,
    n: u32,
) -> Result<Option<usize>> {
    let needed = cn_absent_horizon(fam, n)?;
    if (prefix.len() as u64) < needed {
        return Err(Error::InsufficientData {
            needed,
            available: prefix.len() as u64,
        });
    }
    let from = fam.l_index(n + 1)? as usize;
    let c = fam.build_c(n)?;
    let mut late = None;
    Matcher::new(c.symbols())?.scan(&prefix.symbols()[from..], |p| {
        late.get_or_insert(from + p);
    });
    Ok(late)
}

/// True iff `c_n` has no occurrence starting at or after `l_{n+1}` in the
/// first `horizon` symbols of `ω`.
pub fn verify_cn_absent(fam: &CounterexampleFamily, n: u32, horizon: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidArgument("block absence needs n >= 1".into()));
    }
    let needed = cn_absent_horizon(fam, n)?;
    if horizon < needed {
        return Err(Error::InsufficientData {
            needed,
            available: horizon,
        });
    }
    let prefix = fam.omega_source().prefix(horizon)?;
    Ok(late_cn_occurrence(&prefix, fam, n)?.is_none())
}

/// Window length within which every factor shorter than `5^n` recurs:
/// `l_{n+1} + 2·5^{n+1}`, i.e. `(5/2)(5^{n+1} - 1) + 2·5^{n+1}` for `τ ≡ 10`.
pub fn ap_window_bound(fam: &CounterexampleFamily, n: u32) -> Result<u64> {
    let unit = 5u64.checked_pow(n + 1).ok_or(Error::Budget {
        what: "index arithmetic",
        requested: n as u64,
        limit: 26,
    })?;
    Ok(fam.l_index(n + 1)? + 2 * unit)
}

/// Checks that `ω[l_n .. l_{n+1})` equals `c_n` for every block inside `prefix`.
pub fn verify_block_layout(
    prefix: &FiniteWord,
    fam: &CounterexampleFamily,
) -> Result<Vec<(u32, bool)>> {
    let mut out = Vec::new();
    let mut n = 0u32;
    loop {
        let start = fam.l_index(n)?;
        let end = fam.l_index(n + 1)?;
        if end > prefix.len() as u64 {
            return Ok(out);
        }
        let block = prefix.segment(Segment::new(start, end - 1)?)?;
        out.push((n, block == fam.build_c(n)?));
        n += 1;
    }
}

/// One factor's regulator over the first half of a word and over all of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityEntry {
    pub factor: FiniteWord,
    /// Occurrences in the whole word.
    pub count: usize,
    pub min_window_half: Option<usize>,
    pub min_window_full: Option<usize>,
}

impl StabilityEntry {
    pub fn stable(&self) -> bool {
        self.min_window_half.is_some() && self.min_window_half == self.min_window_full
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub factor_length_bound: usize,
    pub entries: Vec<StabilityEntry>,
}

impl StabilityReport {
    pub fn all_stable(&self) -> bool {
        self.entries.iter().all(StabilityEntry::stable)
    }

    pub fn unstable(&self) -> impl Iterator<Item = &StabilityEntry> {
        self.entries.iter().filter(|e| !e.stable())
    }
}

/// Regulators of every factor of length `<= k` occurring in the first half
/// of `w`, over the first half and over the whole word.
pub fn recurrence_stability(w: &FiniteWord, k: usize) -> Result<StabilityReport> {
    recurrence_stability_with_probes(w, k, &[])
}

/// As [`recurrence_stability`], additionally reporting each probe factor
/// (of any length) that occurs in the first half of `w`.
pub fn recurrence_stability_with_probes(
    w: &FiniteWord,
    k: usize,
    probes: &[FiniteWord],
) -> Result<StabilityReport> {
    if w.len() < 2 {
        return Err(Error::InvalidArgument(
            "stability needs a word of length >= 2".into(),
        ));
    }
    if k == 0 || k > MAX_FACTOR_LEN {
        return Err(Error::InvalidArgument(format!(
            "factor length bound must lie in 1..={MAX_FACTOR_LEN}, got {k}"
        )));
    }
    let text = w.symbols();
    let half = text.len() / 2;
    let mut entries = Vec::new();
    for len in 1..=k.min(half) {
        let mut table: HashMap<&[Symbol], (GapStats, Option<GapStats>)> = HashMap::new();
        for p in 0..=text.len() - len {
            let factor = &text[p..p + len];
            let in_half = p + len <= half;
            match table.get_mut(factor) {
                Some((full, half_stats)) => {
                    full.push(p);
                    if in_half {
                        match half_stats {
                            Some(h) => h.push(p),
                            None => *half_stats = Some(GapStats::new(p)),
                        }
                    }
                }
                None => {
                    table.insert(
                        factor,
                        (GapStats::new(p), in_half.then(|| GapStats::new(p))),
                    );
                }
            }
        }
        let mut found: Vec<_> = table
            .into_iter()
            .filter_map(|(factor, (full, half_stats))| {
                half_stats.map(|h| StabilityEntry {
                    factor: FiniteWord::from_trusted(w.alphabet().clone(), factor.to_vec()),
                    count: full.count,
                    min_window_half: Some(h.window(len, half)),
                    min_window_full: Some(full.window(len, text.len())),
                })
            })
            .collect();
        found.sort_by(|a, b| a.factor.symbols().cmp(b.factor.symbols()));
        entries.extend(found);
    }
    for probe in probes {
        probe.alphabet().require_same(w.alphabet())?;
        if probe.len() <= k && probe.len() <= half {
            // already enumerated
            continue;
        }
        let occ = Matcher::new(probe.symbols())?.find_all(text);
        let in_half: Vec<usize> = occ
            .iter()
            .copied()
            .take_while(|&p| p + probe.len() <= half)
            .collect();
        if in_half.is_empty() {
            continue;
        }
        entries.push(StabilityEntry {
            factor: probe.clone(),
            count: occ.len(),
            min_window_half: window_from_occurrences(&in_half, probe.len(), half),
            min_window_full: window_from_occurrences(&occ, probe.len(), text.len()),
        });
    }
    Ok(StabilityReport {
        factor_length_bound: k,
        entries,
    })
}

/// Smallest cut `c` such that `w[c..]` is fully stable, or `None`.
///
/// A hit is evidence that the sequence is strongly almost periodic after
/// deleting `c` symbols; `None` is evidence, not proof, against.
pub fn eap_cut_search(
    w: &FiniteWord,
    k: usize,
    cuts: &[usize],
    probes: &[FiniteWord],
) -> Result<Option<usize>> {
    if cuts.windows(2).any(|c| c[0] > c[1]) {
        return Err(Error::InvalidArgument("cuts must be sorted".into()));
    }
    if let Some(&bad) = cuts.iter().find(|&&c| c >= w.len() / 2) {
        return Err(Error::InvalidArgument(format!(
            "cut {bad} must be below half the word length {}",
            w.len() / 2
        )));
    }
    for &cut in cuts {
        if recurrence_stability_with_probes(&w.suffix(cut), k, probes)?.all_stable() {
            return Ok(Some(cut));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{thue_morse, Tau};
    use crate::words::Alphabet;

    fn bin(text: &str) -> FiniteWord {
        FiniteWord::parse(&Alphabet::binary(), text).unwrap()
    }

    fn word(alphabet: &Alphabet, text: &str) -> FiniteWord {
        FiniteWord::parse(alphabet, text).unwrap()
    }

    /// Smallest `l` for which every window of length `l` holds `x`, by trying them all.
    fn brute_min_window(x: &[Symbol], w: &[Symbol]) -> Option<usize> {
        (1..=w.len())
            .find(|&l| (0..=w.len() - l).all(|i| w[i..i + l].windows(x.len()).any(|win| win == x)))
    }

    #[test]
    fn min_window_examples() {
        assert_eq!(min_window(&bin("1"), &bin("1111")).unwrap(), Some(1));
        assert_eq!(min_window(&bin("1"), &bin("10011")).unwrap(), Some(3));
        let abz = Alphabet::new(["a", "b", "z"]).unwrap();
        assert_eq!(
            min_window(&word(&abz, "ab"), &word(&abz, "zzz")).unwrap(),
            None
        );
        assert_eq!(min_window(&bin(""), &bin("1")), Err(Error::EmptyPattern));
    }

    #[test]
    fn min_window_matches_brute_force_on_small_words() {
        for n in 1..=10usize {
            for bits in 0u32..(1 << n) {
                let w: Vec<Symbol> = (0..n).map(|i| (bits >> i & 1) as Symbol).collect();
                let text = FiniteWord::new(Alphabet::binary(), w.clone()).unwrap();
                for m in 1..=3usize {
                    for pbits in 0u32..(1 << m) {
                        let x: Vec<Symbol> = (0..m).map(|i| (pbits >> i & 1) as Symbol).collect();
                        let pat = FiniteWord::new(Alphabet::binary(), x.clone()).unwrap();
                        let got = min_window(&pat, &text).unwrap();
                        assert_eq!(got, brute_min_window(&x, &w));
                        for l in 1..=n {
                            let pass = check_window(&pat, &text, l).unwrap().passed();
                            assert_eq!(pass, got.is_some_and(|g| l >= g));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn check_window_examples() {
        assert_eq!(
            check_window(&bin("1"), &bin("10011"), 2).unwrap(),
            WindowCheck::Violation(1)
        );
        assert_eq!(
            check_window(&bin("1"), &bin("10011"), 3).unwrap(),
            WindowCheck::Pass
        );
        assert_eq!(
            check_window(&bin("1"), &bin("10011"), 6).unwrap_err(),
            Error::InsufficientData {
                needed: 6,
                available: 5
            }
        );
        assert_eq!(
            check_window(&bin("11"), &bin("10011"), 1).unwrap(),
            WindowCheck::Violation(0)
        );
        assert_eq!(
            check_window(&bin("11"), &bin("00000"), 5).unwrap(),
            WindowCheck::Violation(0)
        );
    }

    #[test]
    fn check_window_reports_first_uncovered_window() {
        // occurrences of "1" at 0, 5, 6: windows of length 4 starting at 1 miss it
        let w = bin("1000011000");
        assert_eq!(
            check_window(&bin("1"), &w, 4).unwrap(),
            WindowCheck::Violation(1)
        );
        assert_eq!(check_window(&bin("1"), &w, 5).unwrap(), WindowCheck::Pass);
        // only the tail window [6, 10) misses it
        assert_eq!(
            check_window(&bin("1"), &bin("1000110000"), 4).unwrap(),
            WindowCheck::Violation(6)
        );
    }

    #[test]
    fn rightmost_examples() {
        assert_eq!(
            rightmost_occurrence(&bin("10011"), &bin("1001110011")).unwrap(),
            Some(5)
        );
        let abcz = Alphabet::new(["a", "b", "c", "z"]).unwrap();
        assert_eq!(
            rightmost_occurrence(&word(&abcz, "z"), &word(&abcz, "abc")).unwrap(),
            None
        );
        assert_eq!(
            rightmost_occurrence(&word(&abcz, "aa"), &word(&abcz, "aaaa")).unwrap(),
            Some(2)
        );
    }

    #[test]
    fn regulator_report_invariants() {
        let r = regulator(&bin("01"), &bin("0101100")).unwrap();
        assert_eq!(r.occurrence_count, 2);
        assert_eq!(r.rightmost_start, Some(2));
        assert!(r.min_window.unwrap() >= 2);
        assert!(r.rightmost_start.unwrap() + 2 <= r.prefix_length);
        let none = regulator(&bin("111"), &bin("0101100")).unwrap();
        assert_eq!(
            (none.occurrence_count, none.min_window, none.rightmost_start),
            (0, None, None)
        );
    }

    #[test]
    fn pair_containment_levels() {
        let fam = CounterexampleFamily::default();
        let level0 = verify_pair_containment(&fam, 0).unwrap();
        assert!(level0.holds());
        // a_1 = 10011: "11" at 3, "10" at 0, "01" at 2, "00" at 1
        assert_eq!(level0.witnesses, [Some(3), Some(0), Some(2), Some(1)]);
        for n in 1..=5 {
            assert!(
                verify_pair_containment(&fam, n).unwrap().holds(),
                "level {n}"
            );
        }
    }

    #[test]
    fn alignment_lemma_levels() {
        let fam = CounterexampleFamily::default();
        for m in 1..=5 {
            assert!(verify_alignment_lemma(&fam, m).unwrap(), "level {m}");
        }
        assert!(verify_alignment_lemma(&fam, 0).is_err());
    }

    #[test]
    fn cn_absent_levels() {
        let fam = CounterexampleFamily::default();
        assert!(verify_cn_absent(&fam, 1, 100_000).unwrap());
        assert!(verify_cn_absent(&fam, 2, 100_000).unwrap());
        let prefix = fam.omega_source().prefix(100_000).unwrap();
        let c1 = fam.build_c(1).unwrap();
        // c_2 opens with a_1, so c_1 reappears one period later and never again
        assert_eq!(
            Matcher::new(c1.symbols())
                .unwrap()
                .find_all(prefix.symbols()),
            vec![10, 15]
        );
        assert_eq!(
            verify_cn_absent(&fam, 2, 100).unwrap_err(),
            Error::InsufficientData {
                needed: 310 + 500,
                available: 100
            }
        );
    }

    #[test]
    fn cn_absent_holds_for_nine_repeat_family() {
        let fam = CounterexampleFamily::new(Tau::table(vec![9, 10, 9, 9]).unwrap());
        for n in 1..=3 {
            let horizon = fam.l_index(n + 2).unwrap().max(100_000);
            assert!(verify_cn_absent(&fam, n, horizon).unwrap());
        }
    }

    #[test]
    fn ap_bound_matches_closed_form() {
        let fam = CounterexampleFamily::default();
        assert_eq!(ap_window_bound(&fam, 1).unwrap(), 110);
        assert_eq!(ap_window_bound(&fam, 2).unwrap(), 560);
        for n in 0..10u32 {
            let p = 5u64.pow(n + 1);
            assert_eq!(ap_window_bound(&fam, n).unwrap() * 2, 5 * (p - 1) + 4 * p);
        }
    }

    #[test]
    fn block_layout_detects_tampering() {
        let fam = CounterexampleFamily::default();
        let prefix = fam.omega_source().prefix(2000).unwrap();
        let layout = verify_block_layout(&prefix, &fam).unwrap();
        assert_eq!(layout.len(), 4);
        assert!(layout.iter().all(|&(_, ok)| ok));
        let mut symbols = prefix.into_symbols();
        symbols[100] ^= 1;
        let tampered = FiniteWord::new(Alphabet::binary(), symbols).unwrap();
        let layout = verify_block_layout(&tampered, &fam).unwrap();
        assert_eq!(layout.iter().filter(|&&(_, ok)| !ok).count(), 1);
    }

    #[test]
    fn stability_examples() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let report = recurrence_stability(&word(&ab, "abababab"), 2).unwrap();
        let factors: Vec<String> = report
            .entries
            .iter()
            .map(|e| e.factor.to_string())
            .collect();
        assert_eq!(factors, ["a", "b", "ab", "ba"]);
        assert!(report.all_stable());

        let report = recurrence_stability(&word(&ab, "aaab"), 1).unwrap();
        assert_eq!(report.entries.len(), 1);
        let a = &report.entries[0];
        assert_eq!((a.min_window_half, a.min_window_full), (Some(1), Some(2)));
        assert!(!a.stable());

        let tm = thue_morse().prefix(1 << 16).unwrap();
        assert!(recurrence_stability(&tm, 6).unwrap().all_stable());
    }

    #[test]
    fn stability_windows_match_regulator() {
        let tm = thue_morse().prefix(4096).unwrap();
        let half = tm.prefix(2048);
        for e in recurrence_stability(&tm, 4).unwrap().entries {
            assert_eq!(e.min_window_full, min_window(&e.factor, &tm).unwrap());
            assert_eq!(e.min_window_half, min_window(&e.factor, &half).unwrap());
        }
    }

    #[test]
    fn stability_preconditions() {
        assert!(recurrence_stability(&bin("1"), 1).is_err());
        assert!(recurrence_stability(&bin("10"), 0).is_err());
        assert!(recurrence_stability(&bin("10"), 13).is_err());
    }

    #[test]
    fn cut_search_examples() {
        let abz = Alphabet::new(["a", "b", "z"]).unwrap();
        let w = word(&abz, &format!("z{}", "ab".repeat(50)));
        assert_eq!(eap_cut_search(&w, 2, &[0, 1], &[]).unwrap(), Some(1));

        let tm = thue_morse().prefix(1 << 14).unwrap();
        assert_eq!(eap_cut_search(&tm, 4, &[0], &[]).unwrap(), Some(0));

        assert!(eap_cut_search(&w, 2, &[1, 0], &[]).is_err());
        assert!(eap_cut_search(&w, 2, &[60], &[]).is_err());
    }

    #[test]
    fn probes_longer_than_k_are_reported() {
        let fam = CounterexampleFamily::default();
        let prefix = fam.omega_source().prefix(10_000).unwrap();
        let c1 = fam.build_c(1).unwrap();
        let report =
            recurrence_stability_with_probes(&prefix, 2, std::slice::from_ref(&c1)).unwrap();
        let entry = report.entries.iter().find(|e| e.factor == c1).unwrap();
        assert_eq!(entry.count, 2);
        assert_eq!(entry.min_window_half, Some(5000 - 15));
        assert_eq!(entry.min_window_full, Some(10_000 - 15));
        assert!(!entry.stable());
    }
}
