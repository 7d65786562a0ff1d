use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::pda::Transition;
use super::symbol::{SsSymbol, StateId, TripleSymbol, EPSILON, SOLE_STATE};

/// A move of the single-state automaton. The state is implicit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SsTransition {
    pub input: Option<char>,
    pub pop: SsSymbol,
    pub push: Vec<SsSymbol>,
}

impl fmt::Display for SsTransition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{SOLE_STATE} ")?;
        match self.input {
            Some(c) => write!(f, "{c}")?,
            None => f.write_str(EPSILON)?,
        }
        write!(f, " {} -> {SOLE_STATE}", self.pop)?;
        if self.push.is_empty() {
            write!(f, " {EPSILON}")
        } else {
            self.push.iter().try_for_each(|s| write!(f, " {s}"))
        }
    }
}

/// Which construction rule produced a single-state move, and from what.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    /// A popping source move `(p,a,X) -> (q,eps)`.
    Pop { source: Transition },
    /// A pushing source move, the chosen outer state and the intermediate
    /// linking states `s_1 .. s_{l-1}`.
    Push {
        source: Transition,
        outer: StateId,
        intermediates: Vec<StateId>,
    },
    /// The start move `Zs -> [q0,Z0,target]`.
    Start {
        start_state: StateId,
        start_stack: super::symbol::StackSymbol,
        target: StateId,
    },
}

impl Provenance {
    pub fn rule_number(&self) -> u8 {
        match self {
            Provenance::Pop { .. } => 1,
            Provenance::Push { .. } => 2,
            Provenance::Start { .. } => 3,
        }
    }

    /// Rebuilds the single-state move this record describes.
    pub fn replay(&self) -> SsTransition {
        match self {
            Provenance::Pop { source } => SsTransition {
                input: source.input,
                pop: TripleSymbol::new(source.from.clone(), source.pop.clone(), source.to.clone())
                    .into(),
                push: Vec::new(),
            },
            Provenance::Push {
                source,
                outer,
                intermediates,
            } => {
                let links: Vec<&StateId> = std::iter::once(&source.to)
                    .chain(intermediates.iter())
                    .chain(std::iter::once(outer))
                    .collect();
                let push = source
                    .push
                    .iter()
                    .zip(links.windows(2))
                    .map(|(b, w)| TripleSymbol::new(w[0].clone(), b.clone(), w[1].clone()).into())
                    .collect();
                SsTransition {
                    input: source.input,
                    pop: TripleSymbol::new(source.from.clone(), source.pop.clone(), outer.clone())
                        .into(),
                    push,
                }
            }
            Provenance::Start {
                start_state,
                start_stack,
                target,
            } => SsTransition {
                input: None,
                pop: SsSymbol::Start,
                push: vec![TripleSymbol::new(
                    start_state.clone(),
                    start_stack.clone(),
                    target.clone(),
                )
                .into()],
            },
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Pop { source } => write!(f, "rule1 {source}"),
            Provenance::Push {
                source,
                outer,
                intermediates,
            } => {
                write!(f, "rule2 {source} @")?;
                if !intermediates.is_empty() {
                    f.write_str(" s=")?;
                    let names: Vec<&str> = intermediates.iter().map(StateId::as_str).collect();
                    f.write_str(&names.join(","))?;
                }
                write!(f, " q={outer}")
            }
            Provenance::Start { target, .. } => write!(f, "rule3 s={target}"),
        }
    }
}

/// A pushdown automaton with exactly one (implicit) state.
///
/// Each move maps to the provenance records of every construction step that
/// produced it; parsed automata have no provenance.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SingleStatePda {
    pub input_alphabet: BTreeSet<char>,
    pub stack_alphabet: BTreeSet<SsSymbol>,
    pub transitions: BTreeMap<SsTransition, Vec<Provenance>>,
}

impl SingleStatePda {
    pub fn moves(&self) -> impl Iterator<Item = &SsTransition> {
        self.transitions.keys()
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.stack_alphabet.contains(&SsSymbol::Start) {
            out.push("stack alphabet lacks the start marker".to_string());
        }
        for t in self.transitions.keys() {
            if let Some(c) = t.input {
                if !self.input_alphabet.contains(&c) {
                    out.push(format!(
                        "transition `{t}` reads undeclared input symbol `{c}`"
                    ));
                }
            }
            if !self.stack_alphabet.contains(&t.pop) {
                out.push(format!(
                    "transition `{t}` pops undeclared symbol `{}`",
                    t.pop
                ));
            }
            for s in &t.push {
                if !self.stack_alphabet.contains(s) {
                    out.push(format!("transition `{t}` pushes undeclared symbol `{s}`"));
                }
                if *s == SsSymbol::Start {
                    out.push(format!("transition `{t}` pushes the start marker"));
                }
            }
        }
        out
    }

    /// Distinct stack symbols that occur in at least one move.
    pub fn referenced_symbols(&self) -> BTreeSet<&SsSymbol> {
        self.transitions
            .keys()
            .flat_map(|t| std::iter::once(&t.pop).chain(t.push.iter()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::symbol::{state, sym};

    #[test]
    fn push_replay_links_states() {
        let source = Transition::new(
            state("p"),
            Some('a'),
            sym("X"),
            state("t"),
            vec![sym("A"), sym("B"), sym("C")],
        );
        let prov = Provenance::Push {
            source,
            outer: state("q"),
            intermediates: vec![state("s1"), state("s2")],
        };
        assert_eq!(
            prov.replay().to_string(),
            "qm a [p,X,q] -> qm [t,A,s1] [s1,B,s2] [s2,C,q]"
        );
        assert_eq!(prov.to_string(), "rule2 p a X -> t A B C @ s=s1,s2 q=q");
    }

    #[test]
    fn pushing_start_marker_is_a_violation() {
        let mut m = SingleStatePda::default();
        m.stack_alphabet.insert(SsSymbol::Start);
        m.transitions.insert(
            SsTransition {
                input: None,
                pop: SsSymbol::Start,
                push: vec![SsSymbol::Start],
            },
            vec![],
        );
        assert_eq!(m.violations().len(), 1);
    }
}
