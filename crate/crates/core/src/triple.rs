//! Multistate PDA to single-state PDA.
//!
//! Every stack symbol of the result is a triple `[p,X,q]` (or the fresh
//! bottom marker `Zs`), and the result's moves come from three rules:
//!
//! 1. a popping move `(p,a,X) -> (q,eps)` gives `(a, [p,X,q]) -> eps`;
//! 2. a pushing move `(p,a,X) -> (t, B1..Bl)` gives, for every outer state
//!    `q` and every choice of linking states `s1..s(l-1)`,
//!    `(a, [p,X,q]) -> [t,B1,s1][s1,B2,s2]..[s(l-1),Bl,q]`;
//! 3. `(eps, Zs) -> [q0,Z0,s]` for every state `s`.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::model::{
    InvalidInput, Pda, Provenance, SingleStatePda, SsSymbol, SsTransition, StackSymbol, StateId,
    TripleSymbol,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("`{0}` is not a state of the automaton")]
    UndeclaredState(StateId),
    #[error("`{0}` is not a stack symbol of the automaton")]
    UndeclaredSymbol(StackSymbol),
    #[error("cannot expand an empty push sequence; popping moves use rule 1")]
    EmptyPush,
    #[error(transparent)]
    Invalid(#[from] InvalidInput),
}

/// Builds `[p,base,q]` after checking its components against `pda`.
pub fn make_triple(
    pda: &Pda,
    p: &StateId,
    base: &StackSymbol,
    q: &StateId,
) -> Result<TripleSymbol, ConstructionError> {
    for s in [p, q] {
        if !pda.states.contains(s) {
            return Err(ConstructionError::UndeclaredState(s.clone()));
        }
    }
    if !pda.stack_alphabet.contains(base) {
        return Err(ConstructionError::UndeclaredSymbol(base.clone()));
    }
    Ok(TripleSymbol::new(p.clone(), base.clone(), q.clone()))
}

/// Every sequence of `len` states, in lexicographic order of `states`.
fn state_sequences(states: &[&StateId], len: usize) -> Vec<Vec<StateId>> {
    let mut out = vec![Vec::with_capacity(len)];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                states.iter().map(move |s| {
                    let mut next = prefix.clone();
                    next.push((*s).clone());
                    next
                })
            })
            .collect();
    }
    out
}

fn chain(
    landing: &StateId,
    push: &[StackSymbol],
    intermediates: &[StateId],
    outer: &StateId,
) -> Vec<TripleSymbol> {
    let links: Vec<&StateId> = std::iter::once(landing)
        .chain(intermediates)
        .chain(std::iter::once(outer))
        .collect();
    push.iter()
        .zip(links.windows(2))
        .map(|(b, w)| TripleSymbol::new(w[0].clone(), b.clone(), w[1].clone()))
        .collect()
}

/// All triple chains for pushing `push` after landing in `landing`, ending
/// in `outer`: `|states|^(l-1)` chains of length `l`.
pub fn expand_push(
    landing: &StateId,
    push: &[StackSymbol],
    outer: &StateId,
    states: &BTreeSet<StateId>,
) -> Result<Vec<Vec<TripleSymbol>>, ConstructionError> {
    if push.is_empty() {
        return Err(ConstructionError::EmptyPush);
    }
    for s in [landing, outer] {
        if !states.contains(s) {
            return Err(ConstructionError::UndeclaredState(s.clone()));
        }
    }
    let ordered: Vec<&StateId> = states.iter().collect();
    Ok(state_sequences(&ordered, push.len() - 1)
        .iter()
        .map(|mid| chain(landing, push, mid, outer))
        .collect())
}

/// Builds the single-state automaton, recording provenance for every move.
pub fn to_single_state(pda: &Pda) -> Result<SingleStatePda, ConstructionError> {
    Ok(construct(pda)?.0)
}

/// The construction plus the number of moves generated before deduplication.
fn construct(pda: &Pda) -> Result<(SingleStatePda, usize), ConstructionError> {
    InvalidInput::check("pushdown automaton", pda.violations())?;

    let ordered: Vec<&StateId> = pda.states.iter().collect();
    let mut generated: Vec<(SsTransition, Provenance)> = Vec::new();
    for t in &pda.transitions {
        if t.push.is_empty() {
            let pop = TripleSymbol::new(t.from.clone(), t.pop.clone(), t.to.clone());
            generated.push((
                SsTransition {
                    input: t.input,
                    pop: pop.into(),
                    push: Vec::new(),
                },
                Provenance::Pop { source: t.clone() },
            ));
            continue;
        }
        for outer in &ordered {
            let pop: SsSymbol =
                TripleSymbol::new(t.from.clone(), t.pop.clone(), (*outer).clone()).into();
            for c in expand_push(&t.to, &t.push, outer, &pda.states)? {
                let intermediates = c[..c.len() - 1].iter().map(|x| x.to.clone()).collect();
                generated.push((
                    SsTransition {
                        input: t.input,
                        pop: pop.clone(),
                        push: c.into_iter().map(SsSymbol::from).collect(),
                    },
                    Provenance::Push {
                        source: t.clone(),
                        outer: (*outer).clone(),
                        intermediates,
                    },
                ));
            }
        }
    }
    for s in &ordered {
        let first = TripleSymbol::new(
            pda.start_state.clone(),
            pda.start_stack.clone(),
            (*s).clone(),
        );
        generated.push((
            SsTransition {
                input: None,
                pop: SsSymbol::Start,
                push: vec![first.into()],
            },
            Provenance::Start {
                start_state: pda.start_state.clone(),
                start_stack: pda.start_stack.clone(),
                target: (*s).clone(),
            },
        ));
    }

    let raw = generated.len();
    let mut transitions: BTreeMap<SsTransition, Vec<Provenance>> = BTreeMap::new();
    for (t, prov) in generated {
        transitions.entry(t).or_default().push(prov);
    }

    let mut stack_alphabet: BTreeSet<SsSymbol> = BTreeSet::new();
    stack_alphabet.insert(SsSymbol::Start);
    for p in &ordered {
        for x in &pda.stack_alphabet {
            for q in &ordered {
                stack_alphabet
                    .insert(TripleSymbol::new((*p).clone(), x.clone(), (*q).clone()).into());
            }
        }
    }

    Ok((
        SingleStatePda {
            input_alphabet: pda.input_alphabet.clone(),
            stack_alphabet,
            transitions,
        },
        raw,
    ))
}

/// Size accounting for the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeStats {
    pub q_count: usize,
    pub gamma_count: usize,
    pub source_transition_count: usize,
    /// `|Q|^2 * |Gamma|`.
    pub triple_count: usize,
    /// Triples plus the start marker.
    pub ss_symbol_count: usize,
    /// Symbols of the result that occur in at least one move.
    pub referenced_ss_symbols: usize,
    /// One per popping move, `|Q|^l` per pushing move, plus `|Q|`.
    pub predicted_ss_transitions: usize,
    /// Moves generated by the construction before deduplication.
    pub raw_ss_transitions: usize,
    /// Distinct moves of the result.
    pub actual_ss_transitions: usize,
}

impl SizeStats {
    /// Generated moves that coincided with an earlier one.
    pub fn collisions(&self) -> usize {
        self.raw_ss_transitions - self.actual_ss_transitions
    }

    pub fn render(&self) -> String {
        format!(
            "states={}\nstack_symbols={}\nsource_transitions={}\ntriples={}\nss_symbols={}\n\
             referenced_ss_symbols={}\npredicted_ss_transitions={}\nraw_ss_transitions={}\n\
             ss_transitions={}\ncollisions={}\n",
            self.q_count,
            self.gamma_count,
            self.source_transition_count,
            self.triple_count,
            self.ss_symbol_count,
            self.referenced_ss_symbols,
            self.predicted_ss_transitions,
            self.raw_ss_transitions,
            self.actual_ss_transitions,
            self.collisions()
        )
    }
}

/// The closed-form count, independent of the construction itself.
pub fn predicted_transitions(pda: &Pda) -> usize {
    let q = pda.states.len();
    let per_move: usize = pda
        .transitions
        .iter()
        .map(|t| {
            if t.push.is_empty() {
                1
            } else {
                q.pow(t.push.len() as u32)
            }
        })
        .sum();
    per_move + q
}

pub fn size_stats(pda: &Pda) -> Result<SizeStats, ConstructionError> {
    let (ss, raw) = construct(pda)?;
    let q = pda.states.len();
    let triple_count = q * q * pda.stack_alphabet.len();
    Ok(SizeStats {
        q_count: q,
        gamma_count: pda.stack_alphabet.len(),
        source_transition_count: pda.transitions.len(),
        triple_count,
        ss_symbol_count: triple_count + 1,
        referenced_ss_symbols: ss.referenced_symbols().len(),
        predicted_ss_transitions: predicted_transitions(pda),
        raw_ss_transitions: raw,
        actual_ss_transitions: ss.transitions.len(),
    })
}
