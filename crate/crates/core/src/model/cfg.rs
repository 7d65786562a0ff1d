use std::collections::BTreeSet;
use std::fmt;

use super::symbol::{
    check_input_symbol, check_token, SsSymbol, TripleSymbol, EPSILON, START_MARKER,
};

/// A grammar variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variable {
    /// The start marker of a single-state automaton, rendered `Zs`.
    Start,
    Triple(TripleSymbol),
    /// Any other named variable, e.g. `S` in a hand-written grammar.
    Named(String),
}

impl Variable {
    pub fn named(name: &str) -> Result<Self, String> {
        check_token(name)?;
        Ok(Variable::Named(name.to_string()))
    }

    /// Classifies a variable token: `Zs`, a bracketed triple, or a name.
    pub fn parse(token: &str) -> Result<Self, String> {
        if token == START_MARKER {
            Ok(Variable::Start)
        } else if token.starts_with('[') {
            TripleSymbol::parse(token).map(Variable::Triple)
        } else {
            Variable::named(token)
        }
    }
}

impl From<SsSymbol> for Variable {
    fn from(s: SsSymbol) -> Self {
        match s {
            SsSymbol::Start => Variable::Start,
            SsSymbol::Triple(t) => Variable::Triple(t),
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Start => f.write_str(START_MARKER),
            Variable::Triple(t) => t.fmt(f),
            Variable::Named(n) => f.write_str(n),
        }
    }
}

/// One element of a production body.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GSym {
    T(char),
    V(Variable),
}

impl fmt::Display for GSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GSym::T(c) => write!(f, "{c}"),
            GSym::V(v) => v.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Production {
    pub head: Variable,
    /// Empty for an epsilon-production.
    pub body: Vec<GSym>,
}

impl Production {
    pub fn new(head: Variable, body: Vec<GSym>) -> Self {
        Self { head, body }
    }

    pub fn body_string(&self) -> String {
        if self.body.is_empty() {
            EPSILON.to_string()
        } else {
            self.body
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

impl fmt::Display for Production {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.head, self.body_string())
    }
}

/// A context-free grammar `(V, T, P, S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cfg {
    pub variables: BTreeSet<Variable>,
    pub terminals: BTreeSet<char>,
    pub productions: BTreeSet<Production>,
    pub start: Variable,
}

impl Cfg {
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.variables.contains(&self.start) {
            out.push(format!("start variable `{}` is not declared", self.start));
        }
        for &c in &self.terminals {
            if let Err(e) = check_input_symbol(c) {
                out.push(e);
            }
            let as_var = Variable::Named(c.to_string());
            if self.variables.contains(&as_var) {
                out.push(format!(
                    "`{c}` is declared both as a terminal and a variable"
                ));
            }
        }
        for v in &self.variables {
            if let Variable::Named(n) = v {
                if let Err(e) = check_token(n) {
                    out.push(e);
                }
            }
        }
        for p in &self.productions {
            if !self.variables.contains(&p.head) {
                out.push(format!("production `{p}` has undeclared head"));
            }
            for s in &p.body {
                match s {
                    GSym::T(c) if !self.terminals.contains(c) => {
                        out.push(format!("production `{p}` uses undeclared terminal `{c}`"))
                    }
                    GSym::V(v) if !self.variables.contains(v) => {
                        out.push(format!("production `{p}` uses undeclared variable `{v}`"))
                    }
                    _ => {}
                }
            }
        }
        out
    }

    pub fn productions_of<'a>(
        &'a self,
        head: &'a Variable,
    ) -> impl Iterator<Item = &'a Production> {
        self.productions.iter().filter(move |p| &p.head == head)
    }
}
