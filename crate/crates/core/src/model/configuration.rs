use super::symbol::{StackSymbol, StateId};

/// An instantaneous description: current state, how much of the query string
/// has been read, and the stack with its top at index 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration<S, X> {
    pub state: S,
    pub input_pos: usize,
    pub stack: Vec<X>,
}

/// Configuration of a multistate automaton.
pub type PdaConfiguration = Configuration<StateId, StackSymbol>;

impl<S, X> Configuration<S, X> {
    pub fn new(state: S, input_pos: usize, stack: Vec<X>) -> Self {
        Self {
            state,
            input_pos,
            stack,
        }
    }

    pub fn top(&self) -> Option<&X> {
        self.stack.first()
    }
}
