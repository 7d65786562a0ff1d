mod common;

use std::collections::BTreeSet;

use pdacfg::exec::{enumerate, LanguageRef, Limits};
use pdacfg::harness::builtin_corpus;
use pdacfg::{classical_pda_to_cfg, pda_to_cfg, prune_useless, to_single_state};

use common::{all_strings, is_anbn, is_balanced, is_even_palindrome};

fn language_by_predicate(name: &str, alphabet: &[char], bound: usize) -> BTreeSet<String> {
    let pred: fn(&str) -> bool = match name {
        "P0" => |w| w == "a",
        "P1" => is_anbn,
        "P2" => is_balanced,
        "P3" => is_even_palindrome,
        "P4" | "P5" => |_| false,
        other => panic!("no predicate for {other}"),
    };
    all_strings(alphabet, bound)
        .into_iter()
        .filter(|w| pred(w))
        .collect()
}

#[test]
fn expected_members_match_independent_predicates() {
    for e in builtin_corpus() {
        let alphabet: Vec<char> = e.pda.input_alphabet.iter().copied().collect();
        assert_eq!(
            e.expected_members,
            language_by_predicate(e.name, &alphabet, e.member_bound),
            "{}",
            e.name
        );
        assert!(e
            .expected_nonmembers
            .iter()
            .all(|w| !e.expected_members.contains(w)));
    }
}

#[test]
fn every_route_enumerates_the_expected_language() {
    for e in builtin_corpus() {
        let ss = to_single_state(&e.pda).unwrap();
        let g = pda_to_cfg(&e.pda).unwrap();
        let classical = classical_pda_to_cfg(&e.pda).unwrap();
        let pruned = prune_useless(&g).unwrap();
        let limits = Limits::default();
        let grammars = [&g, &classical, &pruned];
        for (i, cfg) in grammars.iter().enumerate() {
            let got = enumerate(LanguageRef::Grammar(cfg), e.member_bound, limits);
            assert!(got.complete());
            assert_eq!(got.members, e.expected_members, "{} grammar {i}", e.name);
        }
        for (label, source) in [
            ("pda", LanguageRef::Pda(&e.pda)),
            ("sspda", LanguageRef::SingleState(&ss)),
        ] {
            let got = enumerate(source, e.member_bound, limits);
            assert_eq!(got.complete(), e.simulator_conclusive, "{} {label}", e.name);
            assert!(
                got.members.is_subset(&e.expected_members),
                "{} {label}",
                e.name
            );
            if e.simulator_conclusive {
                assert_eq!(got.members, e.expected_members, "{} {label}", e.name);
            }
        }
    }
}

#[test]
fn pruning_shrinks_the_corpus_grammars() {
    for e in builtin_corpus() {
        let g = pda_to_cfg(&e.pda).unwrap();
        let pruned = prune_useless(&g).unwrap();
        assert!(pruned.productions.is_subset(&g.productions), "{}", e.name);
        if e.expected_members.is_empty() {
            assert!(pruned.productions.is_empty(), "{}", e.name);
        }
    }
}
