use std::collections::BTreeSet;

use crate::model::text::parse_pda;
use crate::model::Pda;

/// Source text of the built-in automata, by name.
pub const CORPUS_FILES: [(&str, &str); 6] = [
    ("P0", include_str!("../../corpus/p0.pda")),
    ("P1", include_str!("../../corpus/p1.pda")),
    ("P2", include_str!("../../corpus/p2.pda")),
    ("P3", include_str!("../../corpus/p3.pda")),
    ("P4", include_str!("../../corpus/p4.pda")),
    ("P5", include_str!("../../corpus/p5.pda")),
];

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub pda: Pda,
    /// `expected_members` is the complete language up to this length.
    pub member_bound: usize,
    pub expected_members: BTreeSet<String>,
    pub expected_nonmembers: BTreeSet<String>,
    /// Whether the simulator decides every string up to length 8 within the
    /// default limits.
    pub simulator_conclusive: bool,
    pub notes: &'static str,
}

fn strings(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn entry(
    name: &'static str,
    member_bound: usize,
    members: &[&str],
    nonmembers: &[&str],
    simulator_conclusive: bool,
    notes: &'static str,
) -> CorpusEntry {
    let text = CORPUS_FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .expect("corpus file");
    CorpusEntry {
        name,
        pda: parse_pda(text).expect("corpus automata parse"),
        member_bound,
        expected_members: strings(members),
        expected_nonmembers: strings(nonmembers),
        simulator_conclusive,
        notes,
    }
}

/// The built-in automata with their known languages.
pub fn builtin_corpus() -> Vec<CorpusEntry> {
    vec![
        entry(
            "P0",
            8,
            &["a"],
            &["", "aa", "aaa"],
            true,
            "the singleton {a}, one state",
        ),
        entry(
            "P1",
            8,
            &["", "ab", "aabb", "aaabbb", "aaaabbbb"],
            &["a", "b", "ba", "aab", "aba", "abab"],
            true,
            "a^n b^n with n >= 0; re-pushes the start symbol",
        ),
        entry(
            "P2",
            6,
            &[
                "", "()", "(())", "()()", "((()))", "(()())", "(())()", "()(())", "()()()",
            ],
            &["(()", ")(", "(", "())(", "((("],
            true,
            "balanced parentheses, one state",
        ),
        entry(
            "P3",
            4,
            &["", "aa", "bb", "aaaa", "abba", "baab", "bbbb"],
            &["a", "ab", "aba", "aab", "abab"],
            true,
            "even-length palindromes over {a,b}; guesses the midpoint",
        ),
        entry(
            "P4",
            8,
            &[],
            &["", "a", "b", "ab"],
            true,
            "no transitions, empty language",
        ),
        entry(
            "P5",
            8,
            &[],
            &["", "a"],
            false,
            "an epsilon-push loop: empty language the simulator cannot refute",
        ),
    ]
}
