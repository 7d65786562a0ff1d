//! Grammars from automata, and useless-symbol pruning.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::model::{
    Cfg, GSym, InvalidInput, Pda, Production, SingleStatePda, SsTransition, StateId, Transition,
    TripleSymbol, Variable,
};
use crate::triple::{to_single_state, ConstructionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error(transparent)]
    Invalid(#[from] InvalidInput),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// The production a single-state move stands for: the popped symbol derives
/// the read character (if any) followed by the pushed symbols.
pub fn production_for(t: &SsTransition) -> Production {
    let body = t
        .input
        .map(GSym::T)
        .into_iter()
        .chain(t.push.iter().cloned().map(|s| GSym::V(s.into())))
        .collect();
    Production::new(t.pop.clone().into(), body)
}

/// Grammar of a single-state automaton, plus the move each production came
/// from.
pub fn sspda_to_cfg_traced(
    m: &SingleStatePda,
) -> Result<(Cfg, BTreeMap<Production, SsTransition>), GrammarError> {
    InvalidInput::check("single-state automaton", m.violations())?;
    let origin: BTreeMap<Production, SsTransition> =
        m.moves().map(|t| (production_for(t), t.clone())).collect();
    let cfg = Cfg {
        variables: m
            .stack_alphabet
            .iter()
            .cloned()
            .map(Variable::from)
            .collect(),
        terminals: m.input_alphabet.clone(),
        productions: origin.keys().cloned().collect(),
        start: Variable::Start,
    };
    Ok((cfg, origin))
}

pub fn sspda_to_cfg(m: &SingleStatePda) -> Result<Cfg, GrammarError> {
    Ok(sspda_to_cfg_traced(m)?.0)
}

/// Both stages composed: PDA to single-state PDA to grammar.
pub fn pda_to_cfg(pda: &Pda) -> Result<Cfg, GrammarError> {
    sspda_to_cfg(&to_single_state(pda)?)
}

/// Name of the classical construction's start variable.
pub const CLASSICAL_START: &str = "S";

fn triple_var(p: &StateId, t: &Transition, q: &StateId) -> Variable {
    Variable::Triple(TripleSymbol::new(p.clone(), t.pop.clone(), q.clone()))
}

/// Appends `[from,B_i,s_i]` for `rest` and every choice of intermediate
/// states, ending each chain in `last`, to `prefix`; collects full bodies.
fn classical_bodies(
    states: &[StateId],
    from: &StateId,
    rest: &[crate::model::StackSymbol],
    last: &StateId,
    prefix: &mut Vec<GSym>,
    out: &mut Vec<Vec<GSym>>,
) {
    match rest {
        [] => out.push(prefix.clone()),
        [only] => {
            prefix.push(GSym::V(Variable::Triple(TripleSymbol::new(
                from.clone(),
                only.clone(),
                last.clone(),
            ))));
            out.push(prefix.clone());
            prefix.pop();
        }
        [head, tail @ ..] => {
            for mid in states {
                prefix.push(GSym::V(Variable::Triple(TripleSymbol::new(
                    from.clone(),
                    head.clone(),
                    mid.clone(),
                ))));
                classical_bodies(states, mid, tail, last, prefix, out);
                prefix.pop();
            }
        }
    }
}

/// The textbook one-step construction, used as an independent check on
/// [`pda_to_cfg`]. Its start variable is a fresh `S`.
pub fn classical_pda_to_cfg_traced(
    pda: &Pda,
) -> Result<(Cfg, BTreeMap<Production, String>), GrammarError> {
    InvalidInput::check("pushdown automaton", pda.violations())?;
    let states: Vec<StateId> = pda.states.iter().cloned().collect();
    let start = Variable::Named(CLASSICAL_START.to_string());
    let mut origin = BTreeMap::new();

    for s in &states {
        let body = vec![GSym::V(Variable::Triple(TripleSymbol::new(
            pda.start_state.clone(),
            pda.start_stack.clone(),
            s.clone(),
        )))];
        origin.insert(Production::new(start.clone(), body), "start".to_string());
    }
    for t in &pda.transitions {
        let lead: Vec<GSym> = t.input.map(GSym::T).into_iter().collect();
        if t.push.is_empty() {
            origin.insert(
                Production::new(triple_var(&t.from, t, &t.to), lead),
                t.to_string(),
            );
            continue;
        }
        for q in &states {
            let mut bodies = Vec::new();
            let mut prefix = lead.clone();
            classical_bodies(&states, &t.to, &t.push, q, &mut prefix, &mut bodies);
            for body in bodies {
                origin.insert(
                    Production::new(triple_var(&t.from, t, q), body),
                    t.to_string(),
                );
            }
        }
    }

    let mut variables: BTreeSet<Variable> = BTreeSet::new();
    variables.insert(start.clone());
    for p in &states {
        for x in &pda.stack_alphabet {
            for q in &states {
                variables.insert(Variable::Triple(TripleSymbol::new(
                    p.clone(),
                    x.clone(),
                    q.clone(),
                )));
            }
        }
    }
    let cfg = Cfg {
        variables,
        terminals: pda.input_alphabet.clone(),
        productions: origin.keys().cloned().collect(),
        start,
    };
    Ok((cfg, origin))
}

pub fn classical_pda_to_cfg(pda: &Pda) -> Result<Cfg, GrammarError> {
    Ok(classical_pda_to_cfg_traced(pda)?.0)
}

/// Variables that derive at least one terminal string (least fixpoint).
pub fn generating_variables(cfg: &Cfg) -> BTreeSet<Variable> {
    let mut gen: BTreeSet<Variable> = BTreeSet::new();
    loop {
        let before = gen.len();
        for p in &cfg.productions {
            if !gen.contains(&p.head)
                && p.body.iter().all(|s| match s {
                    GSym::T(_) => true,
                    GSym::V(v) => gen.contains(v),
                })
            {
                gen.insert(p.head.clone());
            }
        }
        if gen.len() == before {
            return gen;
        }
    }
}

/// Variables occurring in some sentential form derived from the start.
pub fn reachable_variables(cfg: &Cfg) -> BTreeSet<Variable> {
    let mut seen: BTreeSet<Variable> = BTreeSet::new();
    let mut work = vec![cfg.start.clone()];
    while let Some(v) = work.pop() {
        if !seen.insert(v.clone()) {
            continue;
        }
        for p in cfg.productions_of(&v) {
            for s in &p.body {
                if let GSym::V(w) = s {
                    if !seen.contains(w) {
                        work.push(w.clone());
                    }
                }
            }
        }
    }
    seen
}

/// Removes non-generating variables, then unreachable ones, with their
/// productions. The start variable always survives; the terminal set is
/// kept as declared.
pub fn prune_useless(cfg: &Cfg) -> Result<Cfg, GrammarError> {
    InvalidInput::check("grammar", cfg.violations())?;
    let gen = generating_variables(cfg);
    let uses_only_generating = |p: &Production| {
        gen.contains(&p.head)
            && p.body.iter().all(|s| match s {
                GSym::T(_) => true,
                GSym::V(v) => gen.contains(v),
            })
    };
    let productive = Cfg {
        variables: cfg
            .variables
            .iter()
            .filter(|v| gen.contains(*v) || **v == cfg.start)
            .cloned()
            .collect(),
        terminals: cfg.terminals.clone(),
        productions: cfg
            .productions
            .iter()
            .filter(|p| uses_only_generating(p))
            .cloned()
            .collect(),
        start: cfg.start.clone(),
    };
    let reach = reachable_variables(&productive);
    Ok(Cfg {
        variables: productive
            .variables
            .iter()
            .filter(|v| reach.contains(*v))
            .cloned()
            .collect(),
        terminals: productive.terminals,
        productions: productive
            .productions
            .into_iter()
            .filter(|p| reach.contains(&p.head))
            .collect(),
        start: productive.start,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::text::{parse_cfg, parse_pda, render_cfg};
    use crate::model::SsSymbol;

    fn corpus(name: &str) -> Pda {
        let text = match name {
            "p0" => include_str!("../corpus/p0.pda"),
            "p1" => include_str!("../corpus/p1.pda"),
            "p4" => include_str!("../corpus/p4.pda"),
            _ => unreachable!(),
        };
        parse_pda(text).unwrap()
    }

    fn lines(cfg: &Cfg) -> BTreeSet<String> {
        cfg.productions.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn pop_move_becomes_terminal_production() {
        let t = SsTransition {
            input: Some('a'),
            pop: SsSymbol::parse("[p,Z,p]").unwrap(),
            push: vec![],
        };
        assert_eq!(production_for(&t).to_string(), "[p,Z,p] -> a");
    }

    #[test]
    fn start_move_becomes_unit_production() {
        let t = SsTransition {
            input: None,
            pop: SsSymbol::Start,
            push: vec![SsSymbol::parse("[q0,Z,q1]").unwrap()],
        };
        assert_eq!(production_for(&t).to_string(), "Zs -> [q0,Z,q1]");
    }

    #[test]
    fn p0_grammar() {
        let g = pda_to_cfg(&corpus("p0")).unwrap();
        assert_eq!(
            lines(&g),
            ["Zs -> [p,Z,p]", "[p,Z,p] -> a"].map(String::from).into()
        );
        assert_eq!(g.start, Variable::Start);
        let c = classical_pda_to_cfg(&corpus("p0")).unwrap();
        assert_eq!(
            lines(&c),
            ["S -> [p,Z,p]", "[p,Z,p] -> a"].map(String::from).into()
        );
    }

    #[test]
    fn p1_grammar_has_fourteen_productions() {
        let g = pda_to_cfg(&corpus("p1")).unwrap();
        assert_eq!(g.productions.len(), 14);
        assert_eq!(g.start, Variable::Start);
        assert_eq!(
            classical_pda_to_cfg(&corpus("p1"))
                .unwrap()
                .productions
                .len(),
            14
        );
    }

    #[test]
    fn classical_matches_new_route_up_to_start_name() {
        let pda = corpus("p1");
        let rename = |s: String| s.replacen("Zs ->", "S ->", 1);
        let new: BTreeSet<String> = lines(&pda_to_cfg(&pda).unwrap())
            .into_iter()
            .map(rename)
            .collect();
        assert_eq!(new, lines(&classical_pda_to_cfg(&pda).unwrap()));
    }

    #[test]
    fn empty_automaton_gives_two_unit_productions() {
        let g = pda_to_cfg(&corpus("p4")).unwrap();
        assert_eq!(g.productions.len(), 2);
        assert!(generating_variables(&g).is_empty());
    }

    #[test]
    fn prune_drops_unreachable() {
        let g = parse_cfg("S -> a\nA -> b\n").unwrap();
        let p = prune_useless(&g).unwrap();
        assert_eq!(render_cfg(&p).lines().last(), Some("S -> a"));
        assert_eq!(p.productions.len(), 1);
        assert_eq!(p.variables.len(), 1);
    }

    #[test]
    fn prune_keeps_start_of_empty_language() {
        let g = parse_cfg("S -> A\nA -> A\n").unwrap();
        let p = prune_useless(&g).unwrap();
        assert!(p.productions.is_empty());
        assert_eq!(p.variables, [Variable::Named("S".into())].into());
        assert_eq!(p.start, Variable::Named("S".into()));
    }

    #[test]
    fn pruned_p1_has_only_useful_variables() {
        let p = prune_useless(&pda_to_cfg(&corpus("p1")).unwrap()).unwrap();
        let gen = generating_variables(&p);
        let reach = reachable_variables(&p);
        for v in &p.variables {
            assert!(gen.contains(v) && reach.contains(v), "{v}");
        }
    }
}
