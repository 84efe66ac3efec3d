//! Mealy machines, finite transducers and homomorphisms.
//!
//! A machine `⟨A, B, Q, q̃, f⟩` reads one input symbol per step. A Mealy
//! machine emits exactly one output symbol per step; a transducer emits a
//! possibly empty word. Both share [`Machine`], parameterized by the
//! emission type.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::source::{Expansion, WordSource};
use crate::words::{Alphabet, FiniteWord, Symbol, MAX_ALPHABET};

/// What a machine writes on a single transition.
pub trait Emission: Clone + fmt::Debug + Send + Sync + 'static {
    fn symbols(&self) -> &[Symbol];
}

impl Emission for Symbol {
    fn symbols(&self) -> &[Symbol] {
        std::slice::from_ref(self)
    }
}

impl Emission for Vec<Symbol> {
    fn symbols(&self) -> &[Symbol] {
        self
    }
}

/// One row of a transition table, by state and symbol index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition<E> {
    pub from: usize,
    pub input: Symbol,
    pub to: usize,
    pub emit: E,
}

/// A deterministic machine with a total transition table.
#[derive(Clone, PartialEq, Eq)]
pub struct Machine<E> {
    input: Alphabet,
    output: Alphabet,
    states: Vec<String>,
    initial: usize,
    /// Indexed by `state * |A| + input`.
    table: Vec<(usize, E)>,
}

pub type MealyMachine = Machine<Symbol>;
pub type Transducer = Machine<Vec<Symbol>>;

impl<E: Emission> Machine<E> {
    /// Validates and builds a machine. The table must define exactly one
    /// transition for every (state, input symbol) pair.
    pub fn new(
        input: Alphabet,
        output: Alphabet,
        states: Vec<String>,
        initial: usize,
        transitions: Vec<Transition<E>>,
    ) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::InvalidMachine("no states declared".into()));
        }
        for (i, s) in states.iter().enumerate() {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(Error::InvalidMachine(format!("bad state label {s:?}")));
            }
            if states[..i].contains(s) {
                return Err(Error::InvalidMachine(format!("duplicate state `{s}`")));
            }
        }
        if initial >= states.len() {
            return Err(Error::InvalidMachine(format!(
                "initial state #{initial} is undeclared"
            )));
        }
        let width = input.len();
        let mut table: Vec<Option<(usize, E)>> = vec![None; states.len() * width];
        for t in transitions {
            if t.from >= states.len() || t.to >= states.len() {
                return Err(Error::InvalidMachine(format!(
                    "transition references undeclared state #{}",
                    t.from.max(t.to)
                )));
            }
            if !input.contains(t.input) {
                return Err(Error::InvalidMachine(format!(
                    "transition on undeclared input symbol #{}",
                    t.input
                )));
            }
            if let Some(&bad) = t.emit.symbols().iter().find(|&&s| !output.contains(s)) {
                return Err(Error::InvalidMachine(format!(
                    "transition emits undeclared output symbol #{bad}"
                )));
            }
            let cell = &mut table[t.from * width + t.input as usize];
            if cell.is_some() {
                return Err(Error::InvalidMachine(format!(
                    "duplicate transition for ({}, {})",
                    states[t.from],
                    input.label(t.input)
                )));
            }
            *cell = Some((t.to, t.emit));
        }
        let mut complete = Vec::with_capacity(table.len());
        for (i, cell) in table.into_iter().enumerate() {
            match cell {
                Some(entry) => complete.push(entry),
                None => {
                    return Err(Error::InvalidMachine(format!(
                        "missing transition for ({}, {})",
                        states[i / width],
                        input.label((i % width) as Symbol)
                    )))
                }
            }
        }
        Ok(Machine {
            input,
            output,
            states,
            initial,
            table: complete,
        })
    }

    pub fn input(&self) -> &Alphabet {
        &self.input
    }

    pub fn output(&self) -> &Alphabet {
        &self.output
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_label(&self, state: usize) -> &str {
        &self.states[state]
    }

    pub fn state_index(&self, label: &str) -> Option<usize> {
        self.states.iter().position(|s| s == label)
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    /// `f(state, input)`.
    pub fn step(&self, state: usize, input: Symbol) -> (usize, &E) {
        let (next, emit) = &self.table[state * self.input.len() + input as usize];
        (*next, emit)
    }

    pub fn transitions(&self) -> impl Iterator<Item = Transition<&E>> + '_ {
        let width = self.input.len();
        self.table
            .iter()
            .enumerate()
            .map(move |(i, (to, emit))| Transition {
                from: i / width,
                input: (i % width) as Symbol,
                to: *to,
                emit,
            })
    }

    /// States reachable from the initial state, in declaration order.
    pub fn reachable_states(&self) -> Vec<usize> {
        let mut seen = vec![false; self.states.len()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            for a in 0..self.input.len() {
                let (next, _) = self.step(q, a as Symbol);
                if !seen[next] {
                    seen[next] = true;
                    queue.push_back(next);
                }
            }
        }
        (0..self.states.len()).filter(|&q| seen[q]).collect()
    }

    /// Symbols of `input` as indices into the input alphabet, matched by label.
    pub fn input_symbols(&self, input: &FiniteWord) -> Result<Vec<Symbol>> {
        relabel(input, &self.input)
    }

    /// Runs the machine over a finite input. Input symbols are matched to
    /// the input alphabet by label.
    pub fn run(&self, input: &FiniteWord) -> Result<RunTrace> {
        let symbols = relabel(input, &self.input)?;
        let mut states = Vec::with_capacity(symbols.len() + 1);
        let mut output = Vec::with_capacity(symbols.len());
        let mut q = self.initial;
        states.push(q);
        for &a in &symbols {
            let (next, emit) = self.step(q, a);
            output.extend_from_slice(emit.symbols());
            q = next;
            states.push(q);
        }
        Ok(RunTrace {
            states,
            output: FiniteWord::from_trusted(self.output.clone(), output),
            consumed: symbols.len(),
        })
    }
}

impl MealyMachine {
    /// One state; copies its input.
    pub fn identity(alphabet: Alphabet) -> Self {
        let transitions = (0..alphabet.len())
            .map(|a| Transition {
                from: 0,
                input: a as Symbol,
                to: 0,
                emit: a as Symbol,
            })
            .collect();
        Machine::new(alphabet.clone(), alphabet, vec!["q".into()], 0, transitions)
            .expect("identity table is total")
    }

    pub fn to_transducer(&self) -> Transducer {
        Machine {
            input: self.input.clone(),
            output: self.output.clone(),
            states: self.states.clone(),
            initial: self.initial,
            table: self.table.iter().map(|&(q, b)| (q, vec![b])).collect(),
        }
    }
}

impl Transducer {
    /// The same machine as a Mealy machine, if every emission is one symbol.
    pub fn to_mealy(&self) -> Option<MealyMachine> {
        let table = self
            .table
            .iter()
            .map(|(q, w)| (w.len() == 1).then(|| (*q, w[0])))
            .collect::<Option<Vec<_>>>()?;
        Some(Machine {
            input: self.input.clone(),
            output: self.output.clone(),
            states: self.states.clone(),
            initial: self.initial,
            table,
        })
    }
}

impl<E: Emission> fmt::Debug for Machine<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Machine")
            .field("input", &self.input)
            .field("output", &self.output)
            .field("states", &self.states)
            .field("initial", &self.states[self.initial])
            .finish_non_exhaustive()
    }
}

/// Maps `word` onto `alphabet` by label.
fn relabel(word: &FiniteWord, alphabet: &Alphabet) -> Result<Vec<Symbol>> {
    if word.alphabet() == alphabet {
        return Ok(word.symbols().to_vec());
    }
    let map = label_map(word.alphabet(), alphabet);
    word.symbols()
        .iter()
        .enumerate()
        .map(|(position, &s)| {
            map[s as usize].ok_or_else(|| Error::UnknownSymbol {
                symbol: word.alphabet().label(s).to_string(),
                position,
            })
        })
        .collect()
}

fn label_map(from: &Alphabet, to: &Alphabet) -> Vec<Option<Symbol>> {
    from.labels().iter().map(|l| to.index_of(l)).collect()
}

/// States visited and output produced by a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunTrace {
    /// `p_0 = q̃, p_1, ..., p_consumed`.
    pub states: Vec<usize>,
    pub output: FiniteWord,
    pub consumed: usize,
}

pub fn run_mealy(machine: &MealyMachine, input: &FiniteWord) -> Result<RunTrace> {
    machine.run(input)
}

pub fn run_transducer(transducer: &Transducer, input: &FiniteWord) -> Result<RunTrace> {
    transducer.run(input)
}

struct MealyStream {
    machine: MealyMachine,
    input: WordSource,
    map: Vec<Option<Symbol>>,
    state: usize,
}

impl Expansion for MealyStream {
    fn expand(&mut self, out: &mut Vec<Symbol>, len: usize) -> Result<()> {
        self.input.materialize_to(len as u64)?;
        let from = out.len();
        for (offset, &s) in self.input.materialized()[from..len].iter().enumerate() {
            let a = self.map[s as usize].ok_or_else(|| Error::UnknownSymbol {
                symbol: self.input.alphabet().label(s).to_string(),
                position: from + offset,
            })?;
            let (next, &b) = self.machine.step(self.state, a);
            out.push(b);
            self.state = next;
        }
        Ok(())
    }
}

/// `F(ω)`, produced lazily as the output prefix is requested.
pub fn run_mealy_stream(machine: &MealyMachine, input: WordSource) -> WordSource {
    let budget = input.budget();
    let map = label_map(input.alphabet(), machine.input());
    WordSource::new(
        machine.output().clone(),
        MealyStream {
            machine: machine.clone(),
            state: machine.initial(),
            input,
            map,
        },
    )
    .with_budget(budget)
}

fn word_label(alphabet: &Alphabet, word: &[Symbol]) -> String {
    let sep = if alphabet.is_single_char() { "" } else { "." };
    word.iter()
        .map(|&s| alphabet.label(s))
        .collect::<Vec<_>>()
        .join(sep)
}

/// The machine that outputs `a·ω` on input `ω`.
///
/// Its state is the last `|a|` symbols not yet written (initially `a`);
/// on input `s` in state `u` it writes `u[0]` and moves to `u[1..]·s`.
pub fn delay_prepend_automaton(a: &FiniteWord) -> Result<MealyMachine> {
    if a.is_empty() {
        return Err(Error::InvalidArgument(
            "delay word must be non-empty".into(),
        ));
    }
    let alphabet = a.alphabet().clone();
    let mut index: HashMap<Vec<Symbol>, usize> = HashMap::new();
    let mut words: Vec<Vec<Symbol>> = vec![a.symbols().to_vec()];
    index.insert(words[0].clone(), 0);
    let mut transitions = Vec::new();
    let mut next_unvisited = 0;
    while next_unvisited < words.len() {
        let from = next_unvisited;
        next_unvisited += 1;
        for s in 0..alphabet.len() as Symbol {
            let u = &words[from];
            let mut shifted = u[1..].to_vec();
            shifted.push(s);
            let emit = u[0];
            let to = match index.get(&shifted) {
                Some(&i) => i,
                None => {
                    index.insert(shifted.clone(), words.len());
                    words.push(shifted);
                    words.len() - 1
                }
            };
            transitions.push(Transition {
                from,
                input: s,
                to,
                emit,
            });
        }
    }
    let states = words.iter().map(|w| word_label(&alphabet, w)).collect();
    Machine::new(alphabet.clone(), alphabet, states, 0, transitions)
}

/// A map on words fixed by its images of single symbols.
#[derive(Clone, PartialEq, Eq)]
pub struct Homomorphism {
    source: Alphabet,
    target: Alphabet,
    images: Vec<Vec<Symbol>>,
}

impl Homomorphism {
    pub fn new(source: Alphabet, target: Alphabet, images: Vec<Vec<Symbol>>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::InvalidArgument(format!(
                "{} images for {} source symbols",
                images.len(),
                source.len()
            )));
        }
        for (s, image) in images.iter().enumerate() {
            if let Some(position) = image.iter().position(|&t| !target.contains(t)) {
                return Err(Error::UnknownSymbol {
                    symbol: format!(
                        "#{} in image of `{}`",
                        image[position],
                        source.label(s as Symbol)
                    ),
                    position,
                });
            }
        }
        Ok(Homomorphism {
            source,
            target,
            images,
        })
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn image(&self, symbol: Symbol) -> &[Symbol] {
        &self.images[symbol as usize]
    }

    /// `h(w(0)) h(w(1)) ...`; symbols of `w` are matched to the source alphabet by label.
    pub fn apply(&self, word: &FiniteWord) -> Result<FiniteWord> {
        let symbols = relabel(word, &self.source)?;
        let mut out = Vec::new();
        for s in symbols {
            out.extend_from_slice(&self.images[s as usize]);
        }
        Ok(FiniteWord::from_trusted(self.target.clone(), out))
    }
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (s, image) in self.images.iter().enumerate() {
            map.entry(
                &self.source.label(s as Symbol),
                &word_label(&self.target, image),
            );
        }
        map.finish()
    }
}

pub fn apply_homomorphism(h: &Homomorphism, word: &FiniteWord) -> Result<FiniteWord> {
    h.apply(word)
}

/// Splits a transducer into a Mealy machine over the intermediate alphabet
/// of reachable (state, input) pairs, labeled `q,a`, and a homomorphism
/// sending each pair to the word the transducer writes on that transition.
pub fn decompose_transducer(transducer: &Transducer) -> Result<(MealyMachine, Homomorphism)> {
    let reachable = transducer.reachable_states();
    let width = transducer.input().len();
    if reachable.len() * width > MAX_ALPHABET {
        return Err(Error::InvalidMachine(format!(
            "{} reachable (state, input) pairs exceed the {MAX_ALPHABET}-symbol alphabet limit",
            reachable.len() * width
        )));
    }
    let mut position = vec![usize::MAX; transducer.state_count()];
    for (i, &q) in reachable.iter().enumerate() {
        position[q] = i;
    }
    let mut pair_labels = Vec::with_capacity(reachable.len() * width);
    let mut images = Vec::with_capacity(reachable.len() * width);
    let mut transitions = Vec::with_capacity(reachable.len() * width);
    for (i, &q) in reachable.iter().enumerate() {
        for a in 0..width as Symbol {
            let (next, emit) = transducer.step(q, a);
            let pair = (i * width + a as usize) as Symbol;
            pair_labels.push(format!(
                "{},{}",
                transducer.state_label(q),
                transducer.input().label(a)
            ));
            images.push(emit.clone());
            transitions.push(Transition {
                from: i,
                input: a,
                to: position[next],
                emit: pair,
            });
        }
    }
    let pairs = Alphabet::new(pair_labels)?;
    let states = reachable
        .iter()
        .map(|&q| transducer.state_label(q).to_string())
        .collect();
    let mealy = Machine::new(
        transducer.input().clone(),
        pairs.clone(),
        states,
        position[transducer.initial()],
        transitions,
    )?;
    let h = Homomorphism::new(pairs, transducer.output().clone(), images)?;
    Ok((mealy, h))
}

/// Evidence about whether `h(ω)` is infinite, judged from a finite prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfiniteOutput {
    /// Every symbol has a non-empty image, or an emitting symbol recurs in
    /// the second half of the scanned prefix.
    InfiniteEvident,
    /// No emitting symbol occurs in the second half of the scanned prefix.
    FiniteSoFar,
    Unknown,
}

pub fn output_infinite_check(
    h: &Homomorphism,
    source: &mut WordSource,
    budget: u64,
) -> Result<InfiniteOutput> {
    if budget == 0 {
        return Err(Error::InvalidArgument("budget must be at least 1".into()));
    }
    h.source().require_same(source.alphabet())?;
    if (0..h.source().len()).all(|s| !h.image(s as Symbol).is_empty()) {
        return Ok(InfiniteOutput::InfiniteEvident);
    }
    source.materialize_to(budget)?;
    let prefix = &source.materialized()[..budget as usize];
    let half = (budget / 2) as usize;
    let mut seen = vec![0usize; h.source().len()];
    let mut late_emitter = false;
    for (i, &s) in prefix.iter().enumerate() {
        if h.image(s).is_empty() {
            continue;
        }
        seen[s as usize] += 1;
        if i >= half {
            late_emitter = true;
            if seen[s as usize] >= 2 {
                return Ok(InfiniteOutput::InfiniteEvident);
            }
        }
    }
    Ok(if late_emitter {
        InfiniteOutput::Unknown
    } else {
        InfiniteOutput::FiniteSoFar
    })
}
