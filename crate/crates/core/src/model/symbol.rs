use std::fmt;

/// Characters that can never appear inside a state or stack-symbol token.
const RESERVED_CHARS: &[char] = &['[', ']', ',', '#', '|', ':'];

/// Words with a fixed meaning in the text formats.
const RESERVED_WORDS: &[&str] = &["eps", "->", "Zs"];

/// Rendering of the single-state automaton's fresh start stack symbol.
pub const START_MARKER: &str = "Zs";

/// Rendering of the single-state automaton's only state.
pub const SOLE_STATE: &str = "qm";

/// Spelling of the empty string / empty push sequence in every text format.
pub const EPSILON: &str = "eps";

/// Checks that `s` is usable as a state or stack-symbol name.
pub fn check_token(s: &str) -> Result<(), String> {
    if s.is_empty() {
        return Err("empty name".into());
    }
    if RESERVED_WORDS.contains(&s) || s.contains("->") {
        return Err(format!("`{s}` is reserved"));
    }
    if let Some(c) = s
        .chars()
        .find(|c| c.is_whitespace() || c.is_control() || RESERVED_CHARS.contains(c))
    {
        return Err(format!("`{s}` contains forbidden character {c:?}"));
    }
    Ok(())
}

/// Checks that `c` is usable as an input (terminal) symbol.
pub fn check_input_symbol(c: char) -> Result<(), String> {
    if c.is_whitespace() || c.is_control() || RESERVED_CHARS.contains(&c) {
        Err(format!("{c:?} cannot be an input symbol"))
    } else {
        Ok(())
    }
}

macro_rules! name_newtype {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(String);

        impl $name {
            /// Wraps a name after checking the token rules.
            pub fn new(name: impl Into<String>) -> Result<Self, String> {
                let name = name.into();
                check_token(&name)?;
                Ok(Self(name))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }
    };
}

name_newtype!(
    /// Name of a PDA state.
    StateId
);
name_newtype!(
    /// Name of a PDA stack symbol.
    StackSymbol
);

/// Shorthand used all over the tests and the corpus builders.
pub fn state(name: &str) -> StateId {
    StateId::new(name).unwrap_or_else(|e| panic!("bad state name: {e}"))
}

pub fn sym(name: &str) -> StackSymbol {
    StackSymbol::new(name).unwrap_or_else(|e| panic!("bad stack symbol: {e}"))
}

/// A composite stack symbol `[p,X,q]`: starting in `from` with `base` on
/// top, `base` can be popped off ending in `to`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TripleSymbol {
    pub from: StateId,
    pub base: StackSymbol,
    pub to: StateId,
}

impl TripleSymbol {
    pub fn new(from: StateId, base: StackSymbol, to: StateId) -> Self {
        Self { from, base, to }
    }

    /// Parses the canonical `[p,X,q]` form.
    pub fn parse(token: &str) -> Result<Self, String> {
        let inner = token
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| format!("`{token}` is not a bracketed triple"))?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 3 {
            return Err(format!("`{token}` must have exactly three components"));
        }
        let wrap = |e: String| format!("in triple `{token}`: {e}");
        Ok(Self {
            from: StateId::new(parts[0]).map_err(wrap)?,
            base: StackSymbol::new(parts[1]).map_err(wrap)?,
            to: StateId::new(parts[2]).map_err(wrap)?,
        })
    }
}

impl fmt::Display for TripleSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.from, self.base, self.to)
    }
}

/// Stack symbol of the single-state automaton.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SsSymbol {
    /// The fresh bottom symbol, rendered `Zs`.
    Start,
    Triple(TripleSymbol),
}

impl SsSymbol {
    pub fn parse(token: &str) -> Result<Self, String> {
        if token == START_MARKER {
            Ok(SsSymbol::Start)
        } else {
            TripleSymbol::parse(token).map(SsSymbol::Triple)
        }
    }
}

impl From<TripleSymbol> for SsSymbol {
    fn from(t: TripleSymbol) -> Self {
        SsSymbol::Triple(t)
    }
}

impl fmt::Display for SsSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SsSymbol::Start => f.write_str(START_MARKER),
            SsSymbol::Triple(t) => t.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn token_rules() {
        assert!(StateId::new("q0").is_ok());
        assert!(StateId::new("").is_err());
        assert!(StateId::new("a b").is_err());
        assert!(StateId::new("q,1").is_err());
        assert!(StackSymbol::new("[Z]").is_err());
        assert!(StackSymbol::new("eps").is_err());
        assert!(StackSymbol::new("Zs").is_err());
        assert!(check_input_symbol('(').is_ok());
        assert!(check_input_symbol('|').is_err());
        assert!(check_input_symbol(' ').is_err());
    }

    #[test]
    fn triple_rendering_round_trips() {
        let t = TripleSymbol::new(state("q0"), sym("Z"), state("q1"));
        assert_eq!(t.to_string(), "[q0,Z,q1]");
        assert_eq!(TripleSymbol::parse("[q0,Z,q1]").unwrap(), t);
        assert!(TripleSymbol::parse("[q0,Z]").is_err());
        assert!(TripleSymbol::parse("q0,Z,q1").is_err());
        assert!(TripleSymbol::parse("[q0, Z,q1]").is_err());
        assert_eq!(SsSymbol::parse("Zs").unwrap(), SsSymbol::Start);
    }
}
