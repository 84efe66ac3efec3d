//! Infinite symbolic sequences and the machines that transform them.
//!
//! The crate covers three areas:
//!
//! * [`words`], [`scan`] and [`source`]: alphabets, finite words, linear-time
//!   occurrence scanning and lazily materialized infinite words.
//! * [`generators`] and [`analysis`]: an explicit family of binary sequences
//!   that are almost periodic but not eventually strongly almost periodic,
//!   plus the empirical regulator and stability machinery used to check
//!   those properties on finite prefixes.
//! * [`automata`]: Mealy machines, finite transducers and homomorphisms,
//!   including the delay-prepend machine and the decomposition of a
//!   transducer into a Mealy machine followed by a homomorphism.
//!
//! File formats live in [`format`]; the command-line front end is [`cli`].

pub mod analysis;
pub mod automata;
pub mod cli;
pub mod error;
pub mod format;
pub mod generators;
pub mod scan;
pub mod source;
pub mod words;

pub use analysis::{
    check_window, eap_cut_search, min_window, recurrence_stability, regulator,
    rightmost_occurrence, RegulatorReport, StabilityEntry, StabilityReport, WindowCheck,
};
pub use automata::{
    decompose_transducer, delay_prepend_automaton, run_mealy, run_mealy_stream, run_transducer,
    Homomorphism, InfiniteOutput, MealyMachine, RunTrace, Transducer,
};
pub use error::{Error, Result};
pub use generators::{CounterexampleFamily, MorphismRules, Tau};
pub use scan::{occurrences, Matcher};
pub use source::{Expansion, WordSource, DEFAULT_BUDGET};
pub use words::{Alphabet, FiniteWord, Segment, Symbol};
