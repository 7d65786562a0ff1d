//! Shared data model: automata, grammars, symbols and their text formats.

pub mod cfg;
pub mod configuration;
pub mod error;
pub mod pda;
pub mod sspda;
pub mod symbol;
pub mod text;

pub use cfg::{Cfg, GSym, Production, Variable};
pub use configuration::{Configuration, PdaConfiguration};
pub use error::{InvalidInput, ParseError};
pub use pda::{validate_pda, Pda, Transition};
pub use sspda::{Provenance, SingleStatePda, SsTransition};
pub use symbol::{SsSymbol, StackSymbol, StateId, TripleSymbol};
