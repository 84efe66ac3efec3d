//! Line-based text formats: words, morphism rules, τ tables, machines,
//! homomorphisms and stability reports.
//!
//! `#` starts a comment in rule, table, machine and homomorphism files.
//! Words are written as one line of labels, concatenated when every label is
//! a single character and space-separated otherwise, optionally preceded by
//! an `alphabet: <label> ...` header.

use std::fmt::Write as _;

use crate::analysis::StabilityReport;
use crate::automata::{Emission, Homomorphism, Machine, MealyMachine, Transducer, Transition};
use crate::error::{Error, Result};
use crate::generators::{MorphismRules, Tau};
use crate::words::{Alphabet, FiniteWord, Symbol};

/// Non-empty lines with comments removed, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn header<'a>(line: (usize, &'a str), key: &str) -> Result<Vec<&'a str>> {
    let (number, text) = line;
    let rest = text
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix(':'))
        .ok_or_else(|| Error::parse(number, format!("expected `{key}:` header")))?;
    Ok(rest.split_whitespace().collect())
}

fn alphabet_at(line: usize, labels: Vec<&str>) -> Result<Alphabet> {
    Alphabet::new(labels).map_err(|e| Error::parse(line, e.to_string()))
}

/// Splits `token` into symbols of `alphabet`, longest label first.
fn tokenize(alphabet: &Alphabet, token: &str, line: usize) -> Result<Vec<Symbol>> {
    if token == "-" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = token;
    while !rest.is_empty() {
        let best = alphabet
            .labels()
            .iter()
            .enumerate()
            .filter(|(_, l)| rest.starts_with(l.as_str()))
            .max_by_key(|(_, l)| l.len())
            .ok_or_else(|| {
                Error::parse(
                    line,
                    format!("`{rest}` does not start with a declared symbol"),
                )
            })?;
        out.push(best.0 as Symbol);
        rest = &rest[best.1.len()..];
    }
    Ok(out)
}

fn emission_text(alphabet: &Alphabet, symbols: &[Symbol]) -> String {
    if symbols.is_empty() {
        "-".to_string()
    } else {
        symbols.iter().map(|&s| alphabet.label(s)).collect()
    }
}

/// Reads a word. Without an `alphabet:` header the word is parsed against
/// `default`, or against the alphabet of its distinct characters.
pub fn parse_word(text: &str, default: Option<&Alphabet>) -> Result<FiniteWord> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .peekable();
    let alphabet = match lines.peek() {
        Some(first) if first.starts_with("alphabet:") => {
            let labels = header((1, first), "alphabet")?;
            lines.next();
            alphabet_at(1, labels)?
        }
        _ => match default {
            Some(a) => a.clone(),
            None => {
                let body: String = text.split_whitespace().collect();
                if body.is_empty() {
                    return Err(Error::parse(
                        1,
                        "cannot infer an alphabet from an empty word",
                    ));
                }
                Alphabet::from_chars(&body)?
            }
        },
    };
    let body: Vec<&str> = lines.collect();
    FiniteWord::parse(&alphabet, &body.join(" "))
}

pub fn write_word(word: &FiniteWord, with_header: bool) -> String {
    if with_header {
        format!("alphabet: {}\n{word}\n", word.alphabet())
    } else {
        format!("{word}\n")
    }
}

/// Reads `<symbol> -> <image>` rules. The alphabet is the rule symbols in
/// order of appearance; every symbol used in an image needs its own rule.
pub fn parse_morphism(text: &str) -> Result<MorphismRules> {
    let mut rules: Vec<(usize, &str, &str)> = Vec::new();
    for (line, content) in content_lines(text) {
        let (lhs, rhs) = content
            .split_once("->")
            .ok_or_else(|| Error::parse(line, "expected `<symbol> -> <image>`"))?;
        let lhs = lhs.trim();
        if lhs.is_empty() || lhs.contains(char::is_whitespace) {
            return Err(Error::parse(line, "rule must name exactly one symbol"));
        }
        if rules.iter().any(|(_, s, _)| *s == lhs) {
            return Err(Error::parse(line, format!("second rule for `{lhs}`")));
        }
        rules.push((line, lhs, rhs.trim()));
    }
    if rules.is_empty() {
        return Err(Error::parse(1, "no rules"));
    }
    let alphabet = Alphabet::new(rules.iter().map(|(_, s, _)| *s))?;
    let mut images = Vec::with_capacity(rules.len());
    for (line, _, rhs) in &rules {
        let image = if rhs.contains(char::is_whitespace) {
            rhs.split_whitespace()
                .map(|t| {
                    alphabet
                        .index_of(t)
                        .ok_or_else(|| Error::parse(*line, format!("no rule for symbol `{t}`")))
                })
                .collect::<Result<Vec<_>>>()?
        } else if rhs.is_empty() {
            Vec::new()
        } else {
            tokenize(&alphabet, rhs, *line)?
        };
        images.push(image);
    }
    Homomorphism::new(alphabet.clone(), alphabet, images)
}

/// One repetition count per line; missing blocks default to 10.
pub fn parse_tau(text: &str) -> Result<Tau> {
    let counts = content_lines(text)
        .map(|(line, content)| {
            content
                .parse::<u64>()
                .map_err(|_| Error::parse(line, format!("`{content}` is not a repetition count")))
        })
        .collect::<Result<Vec<_>>>()?;
    Tau::table(counts)
}

/// Reads a machine file. Emissions are `-` (empty) or a run of output labels.
pub fn parse_transducer(text: &str) -> Result<Transducer> {
    let mut lines = content_lines(text);
    let mut next_header = |key: &str| {
        let line = lines
            .next()
            .ok_or_else(|| Error::parse(0, format!("missing `{key}:` header")))?;
        Ok::<_, Error>((line.0, header(line, key)?))
    };
    let (l, labels) = next_header("input")?;
    let input = alphabet_at(l, labels)?;
    let (l, labels) = next_header("output")?;
    let output = alphabet_at(l, labels)?;
    let (_, states) = next_header("states")?;
    let states: Vec<String> = states.into_iter().map(String::from).collect();
    let (l, initial) = next_header("initial")?;
    let [initial] = initial[..] else {
        return Err(Error::parse(l, "expected exactly one initial state"));
    };
    let state = |line: usize, label: &str| {
        states
            .iter()
            .position(|s| s == label)
            .ok_or_else(|| Error::parse(line, format!("undeclared state `{label}`")))
    };
    let initial = state(l, initial)?;
    let mut transitions = Vec::new();
    let mut seen = Vec::new();
    for (line, content) in lines {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let [from, symbol, "->", to, emission] = tokens[..] else {
            return Err(Error::parse(
                line,
                "expected `<state> <input-sym> -> <next-state> <emission>`",
            ));
        };
        let from = state(line, from)?;
        let to = state(line, to)?;
        let symbol = input
            .index_of(symbol)
            .ok_or_else(|| Error::parse(line, format!("undeclared input symbol `{symbol}`")))?;
        if seen.contains(&(from, symbol)) {
            return Err(Error::parse(line, "duplicate transition"));
        }
        seen.push((from, symbol));
        transitions.push(Transition {
            from,
            input: symbol,
            to,
            emit: tokenize(&output, emission, line)?,
        });
    }
    Machine::new(input, output, states, initial, transitions)
}

/// Reads a machine file whose every emission is exactly one symbol.
pub fn parse_mealy(text: &str) -> Result<MealyMachine> {
    parse_transducer(text)?
        .to_mealy()
        .ok_or_else(|| Error::InvalidMachine("some emission is not exactly one symbol".into()))
}

pub fn write_machine<E: Emission>(machine: &Machine<E>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "input: {}", machine.input());
    let _ = writeln!(out, "output: {}", machine.output());
    let _ = writeln!(out, "states: {}", machine.states().join(" "));
    let _ = writeln!(out, "initial: {}", machine.state_label(machine.initial()));
    for t in machine.transitions() {
        let _ = writeln!(
            out,
            "{} {} -> {} {}",
            machine.state_label(t.from),
            machine.input().label(t.input),
            machine.state_label(t.to),
            emission_text(machine.output(), t.emit.symbols())
        );
    }
    out
}

pub fn parse_homomorphism(text: &str) -> Result<Homomorphism> {
    let mut lines = content_lines(text);
    let first = lines
        .next()
        .ok_or_else(|| Error::parse(0, "missing `source:` header"))?;
    let source = alphabet_at(first.0, header(first, "source")?)?;
    let second = lines
        .next()
        .ok_or_else(|| Error::parse(0, "missing `target:` header"))?;
    let target = alphabet_at(second.0, header(second, "target")?)?;
    let mut images: Vec<Option<Vec<Symbol>>> = vec![None; source.len()];
    for (line, content) in lines {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let [symbol, "->", image] = tokens[..] else {
            return Err(Error::parse(line, "expected `<sym> -> <word-or-dash>`"));
        };
        let s = source
            .index_of(symbol)
            .ok_or_else(|| Error::parse(line, format!("undeclared source symbol `{symbol}`")))?;
        if images[s as usize].is_some() {
            return Err(Error::parse(line, format!("second image for `{symbol}`")));
        }
        images[s as usize] = Some(tokenize(&target, image, line)?);
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(s, image)| {
            image.ok_or_else(|| {
                Error::parse(0, format!("no image for `{}`", source.label(s as Symbol)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Homomorphism::new(source, target, images)
}

pub fn write_homomorphism(h: &Homomorphism) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "source: {}", h.source());
    let _ = writeln!(out, "target: {}", h.target());
    for s in 0..h.source().len() as Symbol {
        let _ = writeln!(
            out,
            "{} -> {}",
            h.source().label(s),
            emission_text(h.target(), h.image(s))
        );
    }
    out
}

/// Tab-separated rows: factor, count, min_window_half, min_window_full, stable.
/// Absent windows print as `-`.
pub fn write_stability_report(report: &StabilityReport) -> String {
    let window = |w: Option<usize>| w.map_or_else(|| "-".to_string(), |w| w.to_string());
    let mut out = String::from("# factor\tcount\tmin_window_half\tmin_window_full\tstable\n");
    for e in &report.entries {
        let factor = if e.factor.alphabet().is_single_char() {
            e.factor.to_string()
        } else {
            e.factor.labels().collect::<Vec<_>>().join(",")
        };
        let _ = writeln!(
            out,
            "{factor}\t{}\t{}\t{}\t{}",
            e.count,
            window(e.min_window_half),
            window(e.min_window_full),
            e.stable()
        );
    }
    out
}
