//! Earley recognition with native epsilon-productions.
//!
//! Nullable variables are precomputed so that predicting one also advances
//! past it (Aycock and Horspool), which makes completion of empty items in
//! the same set unnecessary. Left recursion and unit cycles need no special
//! handling: items are deduplicated per set.

use std::collections::{HashMap, HashSet};

use crate::model::{Cfg, GSym, Variable};

use super::ExecError;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Sym {
    T(char),
    N(usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Item {
    rule: usize,
    dot: usize,
    origin: usize,
}

/// A grammar compiled for repeated membership queries.
pub struct Recognizer<'g> {
    cfg: &'g Cfg,
    rules: Vec<(usize, Vec<Sym>)>,
    by_head: Vec<Vec<usize>>,
    nullable: Vec<bool>,
    start: usize,
}

impl<'g> Recognizer<'g> {
    pub fn new(cfg: &'g Cfg) -> Self {
        let mut ids: HashMap<&Variable, usize> = HashMap::new();
        let mut id_of = |v: &'g Variable| {
            let next = ids.len();
            *ids.entry(v).or_insert(next)
        };
        let start = id_of(&cfg.start);
        let rules: Vec<(usize, Vec<Sym>)> = cfg
            .productions
            .iter()
            .map(|p| {
                let head = id_of(&p.head);
                let body = p
                    .body
                    .iter()
                    .map(|s| match s {
                        GSym::T(c) => Sym::T(*c),
                        GSym::V(v) => Sym::N(id_of(v)),
                    })
                    .collect();
                (head, body)
            })
            .collect();
        let n_vars = ids.len();
        let mut by_head = vec![Vec::new(); n_vars];
        for (i, (head, _)) in rules.iter().enumerate() {
            by_head[*head].push(i);
        }

        let mut nullable = vec![false; n_vars];
        let mut changed = true;
        while changed {
            changed = false;
            for (head, body) in &rules {
                if !nullable[*head] && body.iter().all(|s| matches!(s, Sym::N(v) if nullable[*v])) {
                    nullable[*head] = true;
                    changed = true;
                }
            }
        }

        Self {
            cfg,
            rules,
            by_head,
            nullable,
            start,
        }
    }

    /// Whether the start variable derives `w`.
    pub fn recognize(&self, w: &str) -> Result<bool, ExecError> {
        let input: Vec<char> = w.chars().collect();
        if let Some(&c) = input.iter().find(|c| !self.cfg.terminals.contains(c)) {
            return Err(ExecError::OutsideAlphabet(c));
        }
        let n = input.len();
        let mut sets: Vec<Vec<Item>> = vec![Vec::new(); n + 1];
        let mut seen: Vec<HashSet<Item>> = vec![HashSet::new(); n + 1];

        let add =
            |sets: &mut Vec<Vec<Item>>, seen: &mut Vec<HashSet<Item>>, k: usize, item: Item| {
                if seen[k].insert(item) {
                    sets[k].push(item);
                }
            };

        for &r in &self.by_head[self.start] {
            add(
                &mut sets,
                &mut seen,
                0,
                Item {
                    rule: r,
                    dot: 0,
                    origin: 0,
                },
            );
        }

        for k in 0..=n {
            let mut i = 0;
            while i < sets[k].len() {
                let item = sets[k][i];
                i += 1;
                let (head, body) = &self.rules[item.rule];
                match body.get(item.dot) {
                    Some(Sym::N(b)) => {
                        for &r in &self.by_head[*b] {
                            add(
                                &mut sets,
                                &mut seen,
                                k,
                                Item {
                                    rule: r,
                                    dot: 0,
                                    origin: k,
                                },
                            );
                        }
                        if self.nullable[*b] {
                            add(
                                &mut sets,
                                &mut seen,
                                k,
                                Item {
                                    dot: item.dot + 1,
                                    ..item
                                },
                            );
                        }
                    }
                    Some(Sym::T(c)) => {
                        if k < n && input[k] == *c {
                            add(
                                &mut sets,
                                &mut seen,
                                k + 1,
                                Item {
                                    dot: item.dot + 1,
                                    ..item
                                },
                            );
                        }
                    }
                    None => {
                        let mut j = 0;
                        while j < sets[item.origin].len() {
                            let waiting = sets[item.origin][j];
                            j += 1;
                            if self.rules[waiting.rule].1.get(waiting.dot) == Some(&Sym::N(*head)) {
                                add(
                                    &mut sets,
                                    &mut seen,
                                    k,
                                    Item {
                                        dot: waiting.dot + 1,
                                        ..waiting
                                    },
                                );
                            }
                        }
                    }
                }
            }
        }

        Ok(sets[n].iter().any(|it| {
            it.origin == 0
                && self.rules[it.rule].0 == self.start
                && it.dot == self.rules[it.rule].1.len()
        }))
    }
}

/// Whether `cfg` derives `w`. Always terminates.
pub fn cfg_member(cfg: &Cfg, w: &str) -> Result<bool, ExecError> {
    Recognizer::new(cfg).recognize(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::text::parse_cfg;

    fn member(g: &str, w: &str) -> bool {
        cfg_member(&parse_cfg(g).unwrap(), w).unwrap()
    }

    #[test]
    fn epsilon_only() {
        assert!(member("terminals: a\nS -> eps\n", ""));
        assert!(!member("terminals: a\nS -> eps\n", "a"));
    }

    #[test]
    fn left_recursion() {
        assert!(member("S -> S a | a\n", "aaa"));
        assert!(!member("S -> S a | a\n", ""));
    }

    #[test]
    fn nullable_chains_and_unit_cycles() {
        let g = "S -> A B A\nA -> eps | B\nB -> A | b\n";
        for w in ["", "b", "bb", "bbb", "bbbb"] {
            assert_eq!(member(g, w), w.len() <= 3, "{w}");
        }
        assert!(member("S -> S S | eps | a\n", "aaaa"));
    }

    #[test]
    fn anbn() {
        let g = "S -> a S b | eps\n";
        assert!(member(g, "aabb"));
        assert!(!member(g, "aba"));
        assert!(!member(g, "abb"));
    }

    #[test]
    fn start_without_productions() {
        let g = parse_cfg("variables: S A\nterminals: a\nstart: S\nA -> a\n").unwrap();
        assert!(!cfg_member(&g, "").unwrap());
        assert!(!cfg_member(&g, "a").unwrap());
    }

    #[test]
    fn outside_terminals() {
        let g = parse_cfg("S -> a\n").unwrap();
        assert_eq!(cfg_member(&g, "b"), Err(ExecError::OutsideAlphabet('b')));
    }
}
