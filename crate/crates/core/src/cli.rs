//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 budget exceeded or insufficient data, 4 data mismatch.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{
    self, ap_window_bound, cn_absent_horizon, late_cn_occurrence, recurrence_stability_with_probes,
    verify_alignment_lemma, verify_block_layout, verify_pair_containment, WindowCheck,
};
use crate::automata::{decompose_transducer, delay_prepend_automaton, Emission, Machine};
use crate::error::Error;
use crate::format;
use crate::generators::{self, CounterexampleFamily, Tau};
use crate::scan::Matcher;
use crate::source::WordSource;
use crate::words::{Alphabet, FiniteWord, Symbol};

/// Largest `--max-n` accepted by `verify-thm1`.
pub const VERIFY_MAX_LEVEL: u32 = 4;

const CHUNK: usize = 1 << 16;

#[derive(Debug, Parser)]
#[command(
    name = "apwords",
    version,
    about = "Generate and analyze almost periodic infinite words"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a prefix of an infinite word.
    Gen {
        #[command(flatten)]
        source: SourceArgs,
        /// Precede the word with an `alphabet:` header line.
        #[arg(long)]
        with_header: bool,
    },
    /// Start positions of a pattern (overlapping occurrences included).
    Occ {
        #[arg(long)]
        pattern: String,
        #[command(flatten)]
        text: TextArgs,
    },
    /// Smallest window length in which every window holds the pattern.
    Minwindow {
        #[arg(long)]
        pattern: String,
        #[command(flatten)]
        text: TextArgs,
    },
    /// Check that every window of length L holds the pattern.
    Window {
        #[arg(long)]
        pattern: String,
        #[arg(long = "l")]
        window: usize,
        #[command(flatten)]
        text: TextArgs,
    },
    /// Run a Mealy machine or transducer over an input word.
    Run {
        /// Machine definition file.
        #[arg(
            long,
            conflicts_with = "delay_prepend",
            required_unless_present = "delay_prepend"
        )]
        machine: Option<PathBuf>,
        /// Use the delay machine that prepends this word to its input.
        #[arg(long)]
        delay_prepend: Option<String>,
        /// Write `@<state>` before each step's output.
        #[arg(long)]
        emit_states: bool,
        #[command(flatten)]
        text: TextArgs,
    },
    /// Split a transducer into a Mealy machine and a homomorphism.
    Decompose {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long)]
        mealy_out: Option<PathBuf>,
        #[arg(long)]
        hom_out: Option<PathBuf>,
    },
    /// Regulators of short factors over the first half and the whole word.
    Stability {
        #[arg(long)]
        k: usize,
        /// Extra factor to report regardless of length (repeatable).
        #[arg(long = "probe")]
        probes: Vec<String>,
        #[command(flatten)]
        text: TextArgs,
    },
    /// Check the block lemmas and window bound for the counterexample family.
    #[command(name = "verify-thm1")]
    VerifyThm1 {
        #[arg(long, default_value_t = 2)]
        max_n: u32,
        #[arg(long, default_value_t = 100_000)]
        horizon: u64,
        #[arg(long)]
        tau_file: Option<PathBuf>,
        /// Flip the prefix symbol at this index before checking (test hook).
        #[arg(long, hide = true)]
        tamper: Option<u64>,
    },
    /// Smallest cut after which the word looks strongly almost periodic.
    CutSearch {
        #[arg(long)]
        k: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        cuts: Vec<usize>,
        #[arg(long = "probe")]
        probes: Vec<String>,
        #[command(flatten)]
        text: TextArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Paper,
    Periodic,
    Morphic,
    ThueMorse,
}

#[derive(Debug, Clone, Args)]
struct FamilyArgs {
    /// Tau table: one repetition count (9 or 10) per line.
    #[arg(long)]
    tau_file: Option<PathBuf>,
    /// Period for `--family periodic`.
    #[arg(long)]
    word: Option<String>,
    /// Morphism rules file for `--family morphic`.
    #[arg(long)]
    rules: Option<PathBuf>,
    /// Seed symbol for `--family morphic`.
    #[arg(long)]
    seed: Option<String>,
}

#[derive(Debug, Clone, Args)]
struct SourceArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    length: u64,
    #[command(flatten)]
    params: FamilyArgs,
}

/// Where a finite input word comes from: a literal, a file, a generated
/// prefix, or standard input.
#[derive(Debug, Clone, Args)]
struct TextArgs {
    /// Literal word.
    #[arg(long, conflicts_with_all = ["input", "family"])]
    text: Option<String>,
    /// Word file (optionally with an `alphabet:` header).
    #[arg(long, conflicts_with = "family")]
    input: Option<PathBuf>,
    /// Generate the input instead.
    #[arg(long, value_enum, alias = "gen", requires = "length")]
    family: Option<Family>,
    #[arg(long)]
    length: Option<u64>,
    #[command(flatten)]
    params: FamilyArgs,
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(PathBuf, io::Error),
    Usage(String),
    /// Already reported; carries the exit code.
    Exit(i32),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Usage(m) => f.write_str(m),
            CliError::Exit(code) => write!(f, "exit {code}"),
        }
    }
}

fn witness_list(witnesses: &[Option<usize>]) -> String {
    let shown: Vec<String> = witnesses
        .iter()
        .map(|w| w.map_or_else(|| "missing".to_string(), |p| p.to_string()))
        .collect();
    shown.join(",")
}

/// Exit code for a library error.
pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Budget { .. } | Error::InsufficientData { .. } => 3,
        Error::UnknownSymbol { .. }
        | Error::AlphabetMismatch { .. }
        | Error::OutOfBounds { .. } => 4,
        _ => 2,
    }
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Core(e) => exit_code(e),
            CliError::Io(..) | CliError::Usage(_) => 2,
            CliError::Exit(code) => *code,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn family_source(family: Family, params: &FamilyArgs) -> CliResult<WordSource> {
    match family {
        Family::Paper => Ok(paper_family(params.tau_file.as_deref())?.omega_source()),
        Family::Periodic => {
            let word = params
                .word
                .as_deref()
                .ok_or_else(|| CliError::Usage("--family periodic needs --word".into()))?;
            let period = format::parse_word(word, None)?;
            Ok(generators::periodic_source(&period)?)
        }
        Family::Morphic => {
            let rules = params
                .rules
                .as_deref()
                .ok_or_else(|| CliError::Usage("--family morphic needs --rules".into()))?;
            let rules = format::parse_morphism(&read_file(rules)?)?;
            let seed = params
                .seed
                .as_deref()
                .ok_or_else(|| CliError::Usage("--family morphic needs --seed".into()))?;
            let seed = rules
                .source()
                .index_of(seed)
                .ok_or_else(|| Error::UnknownSymbol {
                    symbol: seed.to_string(),
                    position: 0,
                })?;
            Ok(generators::morphic_source(&rules, seed)?)
        }
        Family::ThueMorse => Ok(generators::thue_morse()),
    }
}

fn paper_family(tau_file: Option<&Path>) -> CliResult<CounterexampleFamily> {
    let tau = match tau_file {
        Some(path) => format::parse_tau(&read_file(path)?)?,
        None => Tau::default(),
    };
    Ok(CounterexampleFamily::new(tau))
}

/// Loads the input word. Literal and header-less words are parsed against
/// `alphabet` when given, else against the characters of the word and `extra`.
fn load_text(
    args: &TextArgs,
    stdin: &mut dyn Read,
    alphabet: Option<&Alphabet>,
    extra: &str,
) -> CliResult<FiniteWord> {
    let literal = |text: &str| -> CliResult<FiniteWord> {
        if text.trim_start().starts_with("alphabet:") {
            return Ok(format::parse_word(text, None)?);
        }
        match alphabet {
            Some(a) => Ok(format::parse_word(text, Some(a))?),
            None => {
                let inferred = Alphabet::from_chars(&format!("{text}{extra}"))?;
                Ok(format::parse_word(text, Some(&inferred))?)
            }
        }
    };
    if let Some(family) = args.family {
        let length = args.length.expect("clap enforces --length");
        return Ok(family_source(family, &args.params)?.prefix(length)?);
    }
    if let Some(text) = &args.text {
        return literal(text);
    }
    let text = match &args.input {
        Some(path) => read_file(path)?,
        None => {
            let mut buf = String::new();
            stdin
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Io(PathBuf::from("<stdin>"), e))?;
            buf
        }
    };
    literal(&text)
}

fn parse_pattern(pattern: &str, alphabet: &Alphabet) -> CliResult<FiniteWord> {
    Ok(FiniteWord::parse(alphabet, pattern)?)
}

fn write_symbols(
    out: &mut dyn Write,
    alphabet: &Alphabet,
    symbols: &[Symbol],
    first: &mut bool,
) -> io::Result<()> {
    let single = alphabet.is_single_char();
    for &s in symbols {
        if !single && !*first {
            out.write_all(b" ")?;
        }
        out.write_all(alphabet.label(s).as_bytes())?;
        *first = false;
    }
    Ok(())
}

fn io_err(e: io::Error) -> CliError {
    CliError::Io(PathBuf::from("<stdout>"), e)
}

fn cmd_gen(args: &SourceArgs, with_header: bool, out: &mut dyn Write) -> CliResult<()> {
    if args.length == 0 {
        return Err(CliError::Usage("--length must be at least 1".into()));
    }
    let mut source = family_source(args.family, &args.params)?;
    if args.length > source.budget() {
        return Err(Error::Budget {
            what: "generated prefix",
            requested: args.length,
            limit: source.budget(),
        }
        .into());
    }
    if !source.has_random_access() {
        source.materialize_to(args.length)?;
    }
    let alphabet = source.alphabet().clone();
    if with_header {
        writeln!(out, "alphabet: {alphabet}").map_err(io_err)?;
    }
    let mut first = true;
    let mut start = 0u64;
    while start < args.length {
        let len = (args.length - start).min(CHUNK as u64) as usize;
        let chunk = source.chunk(start, len)?;
        write_symbols(out, &alphabet, &chunk, &mut first).map_err(io_err)?;
        start += len as u64;
    }
    writeln!(out).map_err(io_err)
}

fn cmd_run(
    machine: Option<&Path>,
    delay_prepend: Option<&str>,
    emit_states: bool,
    text: &TextArgs,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
) -> CliResult<()> {
    match (machine, delay_prepend) {
        (Some(path), _) => {
            let transducer = format::parse_transducer(&read_file(path)?)?;
            let input = load_text(text, stdin, Some(transducer.input()), "")?;
            match transducer.to_mealy() {
                Some(mealy) => run_and_print(&mealy, &input, emit_states, out),
                None => run_and_print(&transducer, &input, emit_states, out),
            }
        }
        (None, Some(word)) => {
            let input = widen(load_text(text, stdin, None, word)?, word)?;
            let a = FiniteWord::parse(input.alphabet(), word)?;
            let machine = delay_prepend_automaton(&a)?;
            run_and_print(&machine, &input, emit_states, out)
        }
        (None, None) => Err(CliError::Usage(
            "run needs --machine or --delay-prepend".into(),
        )),
    }
}

/// Re-expresses `input` over its alphabet extended by the labels of `word`,
/// so a generated input can be delayed by symbols it never uses.
fn widen(input: FiniteWord, word: &str) -> CliResult<FiniteWord> {
    let alphabet = input.alphabet();
    let extra: Vec<String> = if alphabet.is_single_char() {
        word.chars().map(String::from).collect()
    } else {
        word.split_whitespace().map(String::from).collect()
    };
    let mut labels = alphabet.labels().to_vec();
    for label in extra {
        if !labels.contains(&label) {
            labels.push(label);
        }
    }
    if labels.len() == alphabet.len() {
        return Ok(input);
    }
    // existing labels keep their indices, so the symbols carry over unchanged
    let wider = Alphabet::new(labels)?;
    Ok(FiniteWord::new(wider, input.into_symbols())?)
}

fn run_and_print<E: Emission>(
    machine: &Machine<E>,
    input: &FiniteWord,
    emit_states: bool,
    out: &mut dyn Write,
) -> CliResult<()> {
    // validates every input symbol against the machine before printing anything
    let trace = machine.run(input)?;
    if !emit_states {
        return writeln!(out, "{}", trace.output).map_err(io_err);
    }
    let symbols = machine.input_symbols(input)?;
    let mut tokens = Vec::with_capacity(2 * symbols.len());
    let mut q = machine.initial();
    for &a in &symbols {
        tokens.push(format!("@{}", machine.state_label(q)));
        let (next, emit) = machine.step(q, a);
        tokens.extend(
            emit.symbols()
                .iter()
                .map(|&b| machine.output().label(b).to_string()),
        );
        q = next;
    }
    writeln!(out, "{}", tokens.join(" ")).map_err(io_err)
}

fn cmd_decompose(
    machine: &Path,
    mealy_out: Option<&Path>,
    hom_out: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult<()> {
    let transducer = format::parse_transducer(&read_file(machine)?)?;
    let (mealy, h) = decompose_transducer(&transducer)?;
    let mealy_text = format::write_machine(&mealy);
    let hom_text = format::write_homomorphism(&h);
    let write = |path: &Path, text: &str| {
        fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e))
    };
    match mealy_out {
        Some(path) => write(path, &mealy_text)?,
        None => write!(out, "# mealy machine\n{mealy_text}").map_err(io_err)?,
    }
    match hom_out {
        Some(path) => write(path, &hom_text)?,
        None => write!(out, "# homomorphism\n{hom_text}").map_err(io_err)?,
    }
    Ok(())
}

fn parse_probes(probes: &[String], alphabet: &Alphabet) -> CliResult<Vec<FiniteWord>> {
    probes.iter().map(|p| parse_pattern(p, alphabet)).collect()
}

struct Verdicts<'a> {
    out: &'a mut dyn Write,
    failed: bool,
}

impl Verdicts<'_> {
    fn report(&mut self, pass: bool, line: fmt::Arguments<'_>) -> CliResult<()> {
        self.failed |= !pass;
        let tag = if pass { "PASS" } else { "FAIL" };
        writeln!(self.out, "{tag} {line}").map_err(io_err)
    }
}

fn cmd_verify_thm1(
    max_n: u32,
    horizon: u64,
    tau_file: Option<&Path>,
    tamper: Option<u64>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<bool> {
    if max_n == 0 {
        return Err(CliError::Usage("--max-n must be at least 1".into()));
    }
    if max_n > VERIFY_MAX_LEVEL {
        return Err(Error::Budget {
            what: "verification level",
            requested: max_n as u64,
            limit: VERIFY_MAX_LEVEL as u64,
        }
        .into());
    }
    let fam = paper_family(tau_file)?;
    let mut needed = 0;
    for n in 1..=max_n {
        needed = needed
            .max(cn_absent_horizon(&fam, n)?)
            .max(ap_window_bound(&fam, n + 1)?);
    }
    if horizon < needed {
        writeln!(
            err,
            "error: horizon {horizon} is too small; minimal sufficient horizon is {needed}"
        )
        .map_err(io_err)?;
        return Err(CliError::Exit(3));
    }
    if let Some(i) = tamper {
        if i >= horizon {
            return Err(CliError::Usage(format!(
                "--tamper {i} lies beyond the horizon"
            )));
        }
    }

    let mut v = Verdicts { out, failed: false };
    for n in 0..=max_n {
        let pc = verify_pair_containment(&fam, n)?;
        v.report(
            pc.holds(),
            format_args!(
                "pair-containment n={n} witnesses={}",
                witness_list(&pc.witnesses)
            ),
        )?;
    }
    for m in 1..=max_n {
        v.report(
            verify_alignment_lemma(&fam, m)?,
            format_args!("alignment m={m}"),
        )?;
    }

    let mut prefix = fam.omega_source().prefix(horizon)?.into_symbols();
    if let Some(i) = tamper {
        prefix[i as usize] ^= 1;
    }
    let prefix = FiniteWord::new(fam.alphabet().clone(), prefix)?;

    for (n, ok) in verify_block_layout(&prefix, &fam)? {
        v.report(
            ok,
            format_args!("block-layout n={n} start={}", fam.l_index(n)?),
        )?;
    }
    for n in 1..=max_n {
        match late_cn_occurrence(&prefix, &fam, n)? {
            None => v.report(true, format_args!("cn-absent n={n} horizon={horizon}"))?,
            Some(p) => v.report(
                false,
                format_args!("cn-absent n={n} horizon={horizon} found-at={p}"),
            )?,
        }
    }
    for n in 1..=max_n {
        let bound = ap_window_bound(&fam, n + 1)?;
        for (name, x) in [("a", fam.build_a(n)?), ("abar", fam.build_a_bar(n)?)] {
            let check = analysis::check_window(&x, &prefix, bound as usize)?;
            match check {
                WindowCheck::Pass => {
                    v.report(true, format_args!("ap-window n={n} x={name} l={bound}"))?
                }
                WindowCheck::Violation(i) => v.report(
                    false,
                    format_args!("ap-window n={n} x={name} l={bound} violation-at={i}"),
                )?,
            }
        }
    }
    Ok(!v.failed)
}

fn dispatch(
    cli: Cli,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<i32> {
    match cli.command {
        Command::Gen {
            source,
            with_header,
        } => cmd_gen(&source, with_header, out).map(|_| 0),
        Command::Occ { pattern, text } => {
            let w = load_text(&text, stdin, None, &pattern)?;
            let x = parse_pattern(&pattern, w.alphabet())?;
            let positions = Matcher::new(x.symbols())?.find_all(w.symbols());
            let line: Vec<String> = positions.iter().map(ToString::to_string).collect();
            writeln!(out, "{}", line.join(" ")).map_err(io_err)?;
            Ok(0)
        }
        Command::Minwindow { pattern, text } => {
            let w = load_text(&text, stdin, None, &pattern)?;
            let x = parse_pattern(&pattern, w.alphabet())?;
            match analysis::min_window(&x, &w)? {
                Some(l) => writeln!(out, "{l}"),
                None => writeln!(out, "absent"),
            }
            .map_err(io_err)?;
            Ok(0)
        }
        Command::Window {
            pattern,
            window,
            text,
        } => {
            let w = load_text(&text, stdin, None, &pattern)?;
            let x = parse_pattern(&pattern, w.alphabet())?;
            match analysis::check_window(&x, &w, window)? {
                WindowCheck::Pass => {
                    writeln!(out, "PASS").map_err(io_err)?;
                    Ok(0)
                }
                WindowCheck::Violation(i) => {
                    writeln!(out, "FAIL {i}").map_err(io_err)?;
                    Ok(1)
                }
            }
        }
        Command::Run {
            machine,
            delay_prepend,
            emit_states,
            text,
        } => cmd_run(
            machine.as_deref(),
            delay_prepend.as_deref(),
            emit_states,
            &text,
            stdin,
            out,
        )
        .map(|_| 0),
        Command::Decompose {
            machine,
            mealy_out,
            hom_out,
        } => cmd_decompose(&machine, mealy_out.as_deref(), hom_out.as_deref(), out).map(|_| 0),
        Command::Stability { k, probes, text } => {
            let w = load_text(&text, stdin, None, &probes.concat())?;
            let probes = parse_probes(&probes, w.alphabet())?;
            let report = recurrence_stability_with_probes(&w, k, &probes)?;
            out.write_all(format::write_stability_report(&report).as_bytes())
                .map_err(io_err)?;
            Ok(0)
        }
        Command::VerifyThm1 {
            max_n,
            horizon,
            tau_file,
            tamper,
        } => cmd_verify_thm1(max_n, horizon, tau_file.as_deref(), tamper, out, err)
            .map(|all_pass| if all_pass { 0 } else { 1 }),
        Command::CutSearch {
            k,
            cuts,
            probes,
            text,
        } => {
            let w = load_text(&text, stdin, None, &probes.concat())?;
            let probes = parse_probes(&probes, w.alphabet())?;
            match analysis::eap_cut_search(&w, k, &cuts, &probes)? {
                Some(cut) => writeln!(out, "{cut}"),
                None => writeln!(out, "absent"),
            }
            .map_err(io_err)?;
            Ok(0)
        }
    }
}

/// Runs the CLI with explicit streams; returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli, stdin, out, err) {
        Ok(code) => code,
        Err(CliError::Exit(code)) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}
