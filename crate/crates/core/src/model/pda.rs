use std::collections::BTreeSet;
use std::fmt;

use super::symbol::{check_input_symbol, StackSymbol, StateId, EPSILON};

/// One move of the transition relation: in `from` with `pop` on top, reading
/// `input` (or nothing when `None`), go to `to` and replace the top with
/// `push`. `push[0]` becomes the new top of the stack.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub from: StateId,
    pub input: Option<char>,
    pub pop: StackSymbol,
    pub to: StateId,
    pub push: Vec<StackSymbol>,
}

impl Transition {
    pub fn new(
        from: StateId,
        input: Option<char>,
        pop: StackSymbol,
        to: StateId,
        push: Vec<StackSymbol>,
    ) -> Self {
        Self {
            from,
            input,
            pop,
            to,
            push,
        }
    }

    pub fn is_pop(&self) -> bool {
        self.push.is_empty()
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ", self.from)?;
        match self.input {
            Some(c) => write!(f, "{c}")?,
            None => f.write_str(EPSILON)?,
        }
        write!(f, " {} -> {}", self.pop, self.to)?;
        if self.push.is_empty() {
            write!(f, " {EPSILON}")
        } else {
            self.push.iter().try_for_each(|s| write!(f, " {s}"))
        }
    }
}

/// A nondeterministic pushdown automaton accepting by empty stack.
///
/// Fields are public so that malformed automata can be built and inspected
/// with [`Pda::violations`]; every conversion validates its input first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pda {
    pub states: BTreeSet<StateId>,
    pub input_alphabet: BTreeSet<char>,
    pub stack_alphabet: BTreeSet<StackSymbol>,
    pub transitions: BTreeSet<Transition>,
    pub start_state: StateId,
    pub start_stack: StackSymbol,
}

impl Pda {
    /// Every invariant violation, one human-readable line each.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.states.is_empty() {
            out.push("state set is empty".to_string());
        }
        if !self.states.contains(&self.start_state) {
            out.push(format!(
                "start state `{}` is not a declared state",
                self.start_state
            ));
        }
        if !self.stack_alphabet.contains(&self.start_stack) {
            out.push(format!(
                "start stack symbol `{}` is not a declared stack symbol",
                self.start_stack
            ));
        }
        for &c in &self.input_alphabet {
            if let Err(e) = check_input_symbol(c) {
                out.push(e);
            }
        }
        for t in &self.transitions {
            for s in [&t.from, &t.to] {
                if !self.states.contains(s) {
                    out.push(format!(
                        "transition `{t}` references undeclared state `{s}`"
                    ));
                }
            }
            if let Some(c) = t.input {
                if !self.input_alphabet.contains(&c) {
                    out.push(format!(
                        "transition `{t}` reads undeclared input symbol `{c}`"
                    ));
                }
            }
            if !self.stack_alphabet.contains(&t.pop) {
                out.push(format!(
                    "transition `{t}` pops undeclared stack symbol `{}`",
                    t.pop
                ));
            }
            for s in &t.push {
                if !self.stack_alphabet.contains(s) {
                    out.push(format!(
                        "transition `{t}` pushes undeclared stack symbol `{s}`"
                    ));
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }
}

/// Free-function form of [`Pda::violations`].
pub fn validate_pda(pda: &Pda) -> Vec<String> {
    pda.violations()
}
