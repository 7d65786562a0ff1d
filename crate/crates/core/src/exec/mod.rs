//! Membership: the bounded automaton simulator, the Earley recognizer and
//! bounded enumeration over either.

pub mod earley;
pub mod enumerate;
pub mod machine;

use thiserror::Error;

pub use earley::{cfg_member, Recognizer};
pub use enumerate::{
    enumerate, enumerate_over, strings_up_to, Decider, Decision, Enumeration, LanguageRef, Outcome,
};
pub use machine::{
    accepts, render_witness, replay, step, LimitHit, Limits, Machine, Move, ReplayError, Simulator,
    Verdict,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExecError {
    #[error("character {0:?} is not in the alphabet")]
    OutsideAlphabet(char),
    #[error("limits must be strictly positive")]
    ZeroLimit,
}
