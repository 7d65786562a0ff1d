//! Pushdown automata to context-free grammars through a single-state
//! intermediate automaton.
//!
//! The pipeline is [`to_single_state`] followed by [`sspda_to_cfg`]
//! ([`pda_to_cfg`] composes both). [`classical_pda_to_cfg`] builds the same
//! grammar in one step and serves as an independent check; the
//! [`harness`] compares all routes string by string against the bounded
//! simulator in [`exec`].

pub mod cli;
pub mod exec;
pub mod grammar;
pub mod harness;
pub mod model;
pub mod triple;

pub use exec::{accepts, cfg_member, enumerate, step, Limits, Verdict};
pub use grammar::{classical_pda_to_cfg, pda_to_cfg, prune_useless, sspda_to_cfg};
pub use model::text::{parse_cfg, parse_pda, parse_sspda, render_cfg, render_pda, render_sspda};
pub use model::{validate_pda, Cfg, Pda, SingleStatePda};
pub use triple::{expand_push, make_triple, size_stats, to_single_state, SizeStats};
