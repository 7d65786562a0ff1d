use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{Pda, StackSymbol, StateId, Transition};

/// Upper bounds for generated automata. All must be positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomBounds {
    pub max_states: usize,
    pub max_stack_syms: usize,
    pub max_moves: usize,
    pub max_push_len: usize,
}

impl RandomBounds {
    pub const fn new(
        max_states: usize,
        max_stack_syms: usize,
        max_moves: usize,
        max_push_len: usize,
    ) -> Self {
        Self {
            max_states,
            max_stack_syms,
            max_moves,
            max_push_len,
        }
    }
}

const STACK_NAMES: [&str; 8] = ["Z", "A", "B", "C", "D", "E", "F", "G"];

/// A valid automaton over `{a,b}`, a pure function of `seed` and `bounds`.
/// About half of the moves pop, so that languages are often nonempty.
pub fn random_pda(seed: u64, bounds: RandomBounds) -> Pda {
    assert!(
        bounds.max_states > 0
            && bounds.max_stack_syms > 0
            && bounds.max_moves > 0
            && bounds.max_push_len > 0,
        "bounds must be positive"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_states = rng.gen_range(1..=bounds.max_states);
    let n_syms = rng.gen_range(1..=bounds.max_stack_syms);
    let n_moves = rng.gen_range(1..=bounds.max_moves);

    let states: Vec<StateId> = (0..n_states)
        .map(|i| StateId::new(format!("q{i}")).expect("valid name"))
        .collect();
    let symbols: Vec<StackSymbol> = (0..n_syms)
        .map(|i| {
            let name = STACK_NAMES
                .get(i)
                .map_or_else(|| format!("X{i}"), |s| s.to_string());
            StackSymbol::new(name).expect("valid name")
        })
        .collect();

    let mut transitions = BTreeSet::new();
    for _ in 0..n_moves {
        let from = states[rng.gen_range(0..n_states)].clone();
        let to = states[rng.gen_range(0..n_states)].clone();
        let input = match rng.gen_range(0..3) {
            0 => None,
            1 => Some('a'),
            _ => Some('b'),
        };
        let pop = symbols[rng.gen_range(0..n_syms)].clone();
        let push_len = if rng.gen_bool(0.5) {
            0
        } else {
            rng.gen_range(1..=bounds.max_push_len)
        };
        let push = (0..push_len)
            .map(|_| symbols[rng.gen_range(0..n_syms)].clone())
            .collect();
        transitions.insert(Transition::new(from, input, pop, to, push));
    }

    Pda {
        states: states.iter().cloned().collect(),
        input_alphabet: ['a', 'b'].into(),
        stack_alphabet: symbols.iter().cloned().collect(),
        transitions,
        start_state: states[0].clone(),
        start_stack: symbols[0].clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BOUNDS: RandomBounds = RandomBounds::new(3, 3, 6, 3);

    #[test]
    fn deterministic_in_seed() {
        assert_eq!(random_pda(42, BOUNDS), random_pda(42, BOUNDS));
    }

    #[test]
    fn generated_automata_are_valid_and_bounded() {
        for seed in 1..=100 {
            let p = random_pda(seed, BOUNDS);
            assert!(p.violations().is_empty(), "seed {seed}");
            assert!(p.states.len() <= 3 && p.stack_alphabet.len() <= 3);
            assert!(!p.transitions.is_empty() && p.transitions.len() <= 6);
            assert!(p.transitions.iter().all(|t| t.push.len() <= 3));
        }
    }
}
