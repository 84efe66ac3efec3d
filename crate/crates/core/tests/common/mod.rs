#![allow(dead_code)]

use apwords::automata::Transition;
use apwords::{Alphabet, FiniteWord, MealyMachine, Symbol, Transducer};
use rand::Rng;

/// Emits the parity of the ones read so far, before reading the current symbol.
pub fn parity() -> MealyMachine {
    let mut transitions = Vec::new();
    for q in 0..2usize {
        for a in 0..2u8 {
            transitions.push(Transition {
                from: q,
                input: a,
                to: q ^ a as usize,
                emit: q as Symbol,
            });
        }
    }
    MealyMachine::new(
        Alphabet::binary(),
        Alphabet::binary(),
        vec!["even".into(), "odd".into()],
        0,
        transitions,
    )
    .unwrap()
}

pub fn alphabet(size: usize) -> Alphabet {
    Alphabet::new((0..size).map(|i| char::from(b'a' + i as u8).to_string())).unwrap()
}

/// Total transducer with the given bounds on states, input symbols and
/// emission length; the output alphabet has three symbols.
pub fn random_transducer(
    rng: &mut impl Rng,
    max_states: usize,
    max_inputs: usize,
    max_emit: usize,
) -> Transducer {
    let states = rng.gen_range(1..=max_states);
    let inputs = rng.gen_range(1..=max_inputs);
    let output = Alphabet::new(["x", "y", "z"]).unwrap();
    let mut transitions = Vec::new();
    for from in 0..states {
        for input in 0..inputs as Symbol {
            let len = rng.gen_range(0..=max_emit);
            transitions.push(Transition {
                from,
                input,
                to: rng.gen_range(0..states),
                emit: (0..len).map(|_| rng.gen_range(0..3)).collect(),
            });
        }
    }
    Transducer::new(
        alphabet(inputs),
        output,
        (0..states).map(|q| format!("q{q}")).collect(),
        rng.gen_range(0..states),
        transitions,
    )
    .unwrap()
}

pub fn random_word(rng: &mut impl Rng, alphabet: &Alphabet, len: usize) -> FiniteWord {
    let symbols = (0..len)
        .map(|_| rng.gen_range(0..alphabet.len()) as Symbol)
        .collect();
    FiniteWord::new(alphabet.clone(), symbols).unwrap()
}
