use std::collections::BTreeSet;
use std::fmt;

use crate::model::{Cfg, Pda, SingleStatePda};

use super::earley::Recognizer;
use super::machine::{replay, LimitHit, Limits, Machine, ReplayError, Simulator, Verdict};

/// A borrowed language source of any kind.
#[derive(Debug, Clone, Copy)]
pub enum LanguageRef<'a> {
    Pda(&'a Pda),
    SingleState(&'a SingleStatePda),
    Grammar(&'a Cfg),
}

impl<'a> LanguageRef<'a> {
    pub fn alphabet(&self) -> &'a BTreeSet<char> {
        match self {
            LanguageRef::Pda(p) => &p.input_alphabet,
            LanguageRef::SingleState(m) => &m.input_alphabet,
            LanguageRef::Grammar(g) => &g.terminals,
        }
    }
}

/// Membership answer for one string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    Member,
    NonMember,
    Inconclusive(LimitHit),
}

impl Outcome {
    pub fn is_conclusive(&self) -> bool {
        !matches!(self, Outcome::Inconclusive(_))
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Member => f.write_str("member"),
            Outcome::NonMember => f.write_str("non-member"),
            Outcome::Inconclusive(hit) => write!(f, "inconclusive({hit})"),
        }
    }
}

/// An outcome together with the replay check of its witness, when the
/// source is an automaton that accepted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub outcome: Outcome,
    pub replay: Option<Result<(), ReplayError>>,
}

/// A language source compiled for repeated queries.
pub enum Decider<'a> {
    Pda(Simulator<'a, Pda>),
    SingleState(Simulator<'a, SingleStatePda>),
    Grammar(Recognizer<'a>),
}

fn simulate<M: Machine>(machine: &M, sim: &Simulator<'_, M>, w: &str, limits: Limits) -> Decision {
    if w.chars().any(|c| !machine.input_alphabet().contains(&c)) {
        return Decision {
            outcome: Outcome::NonMember,
            replay: None,
        };
    }
    match sim.run(w, limits).expect("alphabet checked") {
        Verdict::Accepted(witness) => Decision {
            outcome: Outcome::Member,
            replay: Some(replay(machine, w, &witness).map(|_| ())),
        },
        Verdict::Rejected => Decision {
            outcome: Outcome::NonMember,
            replay: None,
        },
        Verdict::Inconclusive(hit) => Decision {
            outcome: Outcome::Inconclusive(hit),
            replay: None,
        },
    }
}

impl<'a> Decider<'a> {
    pub fn new(source: LanguageRef<'a>) -> Self {
        match source {
            LanguageRef::Pda(p) => Decider::Pda(Simulator::new(p)),
            LanguageRef::SingleState(m) => Decider::SingleState(Simulator::new(m)),
            LanguageRef::Grammar(g) => Decider::Grammar(Recognizer::new(g)),
        }
    }

    /// Decides `w`; characters outside the source's alphabet make `w` a
    /// non-member rather than an error.
    pub fn decide(&self, w: &str, limits: Limits) -> Decision {
        match self {
            Decider::Pda(sim) => simulate(sim.machine(), sim, w, limits),
            Decider::SingleState(sim) => simulate(sim.machine(), sim, w, limits),
            Decider::Grammar(r) => Decision {
                outcome: match r.recognize(w) {
                    Ok(true) => Outcome::Member,
                    _ => Outcome::NonMember,
                },
                replay: None,
            },
        }
    }
}

/// All strings over `alphabet` of length at most `max_len`, shortest first
/// and lexicographic within a length.
pub fn strings_up_to(alphabet: &BTreeSet<char>, max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|s| {
                alphabet.iter().map(move |c| {
                    let mut t = s.clone();
                    t.push(*c);
                    t
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub members: BTreeSet<String>,
    /// Strings the simulator could not decide within its limits.
    pub inconclusive: BTreeSet<String>,
}

impl Enumeration {
    pub fn complete(&self) -> bool {
        self.inconclusive.is_empty()
    }
}

/// The members of length at most `max_len` over `alphabet`.
pub fn enumerate_over(
    source: LanguageRef<'_>,
    alphabet: &BTreeSet<char>,
    max_len: usize,
    limits: Limits,
) -> Enumeration {
    let decider = Decider::new(source);
    let mut out = Enumeration {
        members: BTreeSet::new(),
        inconclusive: BTreeSet::new(),
    };
    for w in strings_up_to(alphabet, max_len) {
        match decider.decide(&w, limits).outcome {
            Outcome::Member => {
                out.members.insert(w);
            }
            Outcome::NonMember => {}
            Outcome::Inconclusive(_) => {
                out.inconclusive.insert(w);
            }
        }
    }
    out
}

/// The members of length at most `max_len` over the source's own alphabet.
pub fn enumerate(source: LanguageRef<'_>, max_len: usize, limits: Limits) -> Enumeration {
    enumerate_over(source, source.alphabet(), max_len, limits)
}
