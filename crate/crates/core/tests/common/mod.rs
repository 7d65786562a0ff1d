//! Oracles shared by the integration suites. Nothing here calls into the
//! library's own fixpoints, recognizer or chain builder.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use pdacfg::model::{
    Cfg, GSym, Pda, Production, Provenance, SingleStatePda, SsSymbol, Transition, Variable,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn var(name: &str) -> Variable {
    Variable::named(name).unwrap()
}

/// A grammar over variables `S A B` and terminals `a b` with 1..=6
/// productions of body length 0..=3. Epsilon, unit and left-recursive
/// productions all occur.
pub fn random_grammar(seed: u64) -> Cfg {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ 0x5eed);
    let vars = [var("S"), var("A"), var("B")];
    let n = rng.gen_range(1..=6);
    let mut productions = BTreeSet::new();
    for _ in 0..n {
        let head = vars[rng.gen_range(0..3)].clone();
        let len = rng.gen_range(0..=3);
        let body = (0..len)
            .map(|_| match rng.gen_range(0..5) {
                0 => GSym::T('a'),
                1 => GSym::T('b'),
                k => GSym::V(vars[k - 2].clone()),
            })
            .collect();
        productions.insert(Production::new(head, body));
    }
    Cfg {
        variables: vars.iter().cloned().collect(),
        terminals: ['a', 'b'].into(),
        productions,
        start: var("S"),
    }
}

fn nullable(cfg: &Cfg) -> BTreeSet<Variable> {
    let mut out = BTreeSet::new();
    let mut changed = true;
    while changed {
        changed = false;
        for p in &cfg.productions {
            if !out.contains(&p.head)
                && p.body
                    .iter()
                    .all(|s| matches!(s, GSym::V(v) if out.contains(v)))
            {
                out.insert(p.head.clone());
                changed = true;
            }
        }
    }
    out
}

/// Every string of length at most `max_len` derivable from the start,
/// found by breadth-first leftmost expansion of sentential forms.
///
/// Bodies are first expanded into every variant with some nullable
/// variables erased, dropping empty variants; every remaining symbol then
/// yields at least one terminal, so forms longer than `max_len` can be cut.
pub fn brute_force_language(cfg: &Cfg, max_len: usize) -> BTreeSet<String> {
    let null = nullable(cfg);
    let mut rules: BTreeMap<&Variable, BTreeSet<Vec<GSym>>> = BTreeMap::new();
    for p in &cfg.productions {
        let mut variants: Vec<Vec<GSym>> = vec![Vec::new()];
        for s in &p.body {
            let mut next = Vec::new();
            for v in &variants {
                let mut keep = v.clone();
                keep.push(s.clone());
                next.push(keep);
                if matches!(s, GSym::V(x) if null.contains(x)) {
                    next.push(v.clone());
                }
            }
            variants = next;
        }
        rules
            .entry(&p.head)
            .or_default()
            .extend(variants.into_iter().filter(|v| !v.is_empty()));
    }

    let mut out = BTreeSet::new();
    if null.contains(&cfg.start) {
        out.insert(String::new());
    }
    let start = vec![GSym::V(cfg.start.clone())];
    let mut seen: HashSet<Vec<GSym>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(form) = queue.pop_front() {
        let Some(i) = form.iter().position(|s| matches!(s, GSym::V(_))) else {
            out.insert(
                form.iter()
                    .map(|s| match s {
                        GSym::T(c) => *c,
                        GSym::V(_) => unreachable!(),
                    })
                    .collect(),
            );
            continue;
        };
        let GSym::V(head) = &form[i] else {
            unreachable!()
        };
        for body in rules.get(head).into_iter().flatten() {
            if form.len() - 1 + body.len() > max_len {
                continue;
            }
            let mut next = form[..i].to_vec();
            next.extend(body.iter().cloned());
            next.extend(form[i + 1..].iter().cloned());
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    out
}

/// All strings over `alphabet` of length at most `max_len`.
pub fn all_strings(alphabet: &[char], max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| alphabet.iter().map(move |c| format!("{w}{c}")))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

pub fn is_anbn(w: &str) -> bool {
    let n = w.len() / 2;
    w.len().is_multiple_of(2)
        && w[..n].chars().all(|c| c == 'a')
        && w[n..].chars().all(|c| c == 'b')
}

pub fn is_balanced(w: &str) -> bool {
    let mut depth = 0i32;
    for c in w.chars() {
        depth += if c == '(' { 1 } else { -1 };
        if depth < 0 {
            return false;
        }
    }
    depth == 0
}

pub fn is_even_palindrome(w: &str) -> bool {
    w.len().is_multiple_of(2) && w.chars().eq(w.chars().rev())
}

/// Checks every push-rule move of `ss` against its source move, and that
/// each pushing source move yields exactly `|Q|^l` moves. Returns the
/// violations and the number of push-rule moves checked.
pub fn chain_violations(pda: &Pda, ss: &SingleStatePda) -> (Vec<String>, usize) {
    let mut bad = Vec::new();
    let mut per_source: BTreeMap<&Transition, usize> = BTreeMap::new();
    let mut checked = 0;
    for (t, provs) in &ss.transitions {
        for prov in provs {
            let Provenance::Push {
                source,
                outer,
                intermediates,
            } = prov
            else {
                continue;
            };
            checked += 1;
            *per_source.entry(source).or_default() += 1;
            let chain: Vec<_> = t
                .push
                .iter()
                .filter_map(|s| match s {
                    SsSymbol::Triple(x) => Some(x),
                    SsSymbol::Start => None,
                })
                .collect();
            let popped_ok = matches!(&t.pop, SsSymbol::Triple(x)
                if x.from == source.from && x.base == source.pop && x.to == *outer);
            let ok = popped_ok
                && t.input == source.input
                && chain.len() == t.push.len()
                && chain.len() == source.push.len()
                && chain.first().is_some_and(|c| c.from == source.to)
                && chain.windows(2).all(|w| w[0].to == w[1].from)
                && chain.last().is_some_and(|c| c.to == *outer)
                && chain.iter().map(|c| &c.base).eq(source.push.iter())
                && chain[..chain.len() - 1]
                    .iter()
                    .map(|c| &c.to)
                    .eq(intermediates.iter());
            if !ok {
                bad.push(format!("{t} from {source}"));
            }
        }
    }
    let q = pda.states.len();
    for src in pda.transitions.iter().filter(|t| !t.push.is_empty()) {
        let got = per_source.get(src).copied().unwrap_or(0);
        let want = q.pow(src.push.len() as u32);
        if got != want {
            bad.push(format!("{src}: {got} moves, expected {want}"));
        }
    }
    (bad, checked)
}
