//! Differential checking of language sources over all short strings.

pub mod corpus;
pub mod random;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::exec::{strings_up_to, Decider, LanguageRef, Limits, Outcome};
use crate::model::{Cfg, Pda, SingleStatePda};

pub use corpus::{builtin_corpus, CorpusEntry};
pub use random::{random_pda, RandomBounds};

/// An owned language source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LanguageSource {
    Pda(Pda),
    SingleState(SingleStatePda),
    Grammar(Cfg),
}

impl LanguageSource {
    pub fn as_ref(&self) -> LanguageRef<'_> {
        match self {
            LanguageSource::Pda(p) => LanguageRef::Pda(p),
            LanguageSource::SingleState(m) => LanguageRef::SingleState(m),
            LanguageSource::Grammar(g) => LanguageRef::Grammar(g),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledSource {
    pub label: String,
    pub source: LanguageSource,
}

impl LabeledSource {
    pub fn new(label: impl Into<String>, source: LanguageSource) -> Self {
        Self {
            label: label.into(),
            source,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("a differential check needs at least two sources, got {0}")]
    TooFewSources(usize),
    #[error("source `{label}` uses symbol {symbol:?} outside the checked alphabet")]
    AlphabetMismatch { label: String, symbol: char },
}

/// A string on which two conclusive verdicts disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub string: String,
    /// One outcome per source, in source order.
    pub outcomes: Vec<Outcome>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub labels: Vec<String>,
    pub alphabet: BTreeSet<char>,
    pub max_len: usize,
    /// Number of strings queried.
    pub checked: usize,
    /// Strings on which every source answered, and all agreed.
    pub agreements: usize,
    pub mismatches: Vec<Mismatch>,
    /// (string, source label) for every inconclusive verdict.
    pub inconclusive: Vec<(String, String)>,
    /// Strings with at least one inconclusive verdict and no mismatch.
    pub inconclusive_strings: usize,
    /// Accepting witnesses that were replayed.
    pub witnesses_replayed: usize,
    /// (string, source label, reason) for witnesses that failed to replay.
    pub replay_failures: Vec<(String, String, String)>,
    pub elapsed: Duration,
}

fn show(w: &str) -> &str {
    if w.is_empty() {
        "eps"
    } else {
        w
    }
}

impl EquivalenceReport {
    pub fn first_mismatch(&self) -> Option<&Mismatch> {
        self.mismatches.first()
    }

    pub fn summary_line(&self) -> String {
        format!(
            "checked={} agree={} mismatch={} inconclusive={}",
            self.checked,
            self.agreements,
            self.mismatches.len(),
            self.inconclusive_strings
        )
    }

    /// Mismatch table (one row per string, one column per source) followed
    /// by the summary line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if !self.mismatches.is_empty() {
            let _ = writeln!(out, "string\t{}", self.labels.join("\t"));
            for m in &self.mismatches {
                let cols: Vec<String> = m.outcomes.iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "{}\t{}", show(&m.string), cols.join("\t"));
            }
        }
        for (w, label, why) in &self.replay_failures {
            let _ = writeln!(
                out,
                "# witness replay failed: {} via {label}: {why}",
                show(w)
            );
        }
        out.push_str(&self.summary_line());
        out.push('\n');
        out
    }

    /// Line-oriented `key=value` form.
    pub fn render_kv(&self) -> String {
        let alphabet: String = self.alphabet.iter().collect();
        format!(
            "sources={}\nalphabet={alphabet}\nmax_len={}\nchecked={}\nagree={}\nmismatch={}\n\
             inconclusive={}\ninconclusive_verdicts={}\nwitnesses_replayed={}\nreplay_failures={}\n\
             elapsed_ms={}\n",
            self.labels.join(","),
            self.max_len,
            self.checked,
            self.agreements,
            self.mismatches.len(),
            self.inconclusive_strings,
            self.inconclusive.len(),
            self.witnesses_replayed,
            self.replay_failures.len(),
            self.elapsed.as_millis()
        )
    }
}

/// Queries every source on every string over `alphabet` up to `max_len`.
/// Inconclusive verdicts are recorded but never count as mismatches.
pub fn differential_check(
    sources: &[LabeledSource],
    alphabet: &BTreeSet<char>,
    max_len: usize,
    limits: Limits,
) -> Result<EquivalenceReport, HarnessError> {
    if sources.len() < 2 {
        return Err(HarnessError::TooFewSources(sources.len()));
    }
    for s in sources {
        if let Some(&symbol) = s.source.as_ref().alphabet().difference(alphabet).next() {
            return Err(HarnessError::AlphabetMismatch {
                label: s.label.clone(),
                symbol,
            });
        }
    }

    let started = Instant::now();
    let deciders: Vec<Decider> = sources
        .iter()
        .map(|s| Decider::new(s.source.as_ref()))
        .collect();
    let mut report = EquivalenceReport {
        labels: sources.iter().map(|s| s.label.clone()).collect(),
        alphabet: alphabet.clone(),
        max_len,
        checked: 0,
        agreements: 0,
        mismatches: Vec::new(),
        inconclusive: Vec::new(),
        inconclusive_strings: 0,
        witnesses_replayed: 0,
        replay_failures: Vec::new(),
        elapsed: Duration::ZERO,
    };

    for w in strings_up_to(alphabet, max_len) {
        report.checked += 1;
        let mut outcomes = Vec::with_capacity(deciders.len());
        for (d, s) in deciders.iter().zip(sources) {
            let decision = d.decide(&w, limits);
            match decision.replay {
                Some(Ok(())) => report.witnesses_replayed += 1,
                Some(Err(e)) => {
                    report.witnesses_replayed += 1;
                    report
                        .replay_failures
                        .push((w.clone(), s.label.clone(), e.to_string()));
                }
                None => {}
            }
            if !decision.outcome.is_conclusive() {
                report.inconclusive.push((w.clone(), s.label.clone()));
            }
            outcomes.push(decision.outcome);
        }
        let conclusive: BTreeSet<&Outcome> =
            outcomes.iter().filter(|o| o.is_conclusive()).collect();
        if conclusive.len() > 1 {
            report.mismatches.push(Mismatch {
                string: w,
                outcomes,
            });
        } else if outcomes.iter().any(|o| !o.is_conclusive()) {
            report.inconclusive_strings += 1;
        } else {
            report.agreements += 1;
        }
    }
    report.elapsed = started.elapsed();
    Ok(report)
}

/// The four routes for one automaton: itself, its single-state form and the
/// two grammars (the classical one only when `classical` is set).
pub fn pipeline_sources(
    pda: &Pda,
    classical: bool,
) -> Result<Vec<LabeledSource>, crate::grammar::GrammarError> {
    let ss = crate::triple::to_single_state(pda)?;
    let g = crate::grammar::sspda_to_cfg(&ss)?;
    let mut out = vec![
        LabeledSource::new("pda", LanguageSource::Pda(pda.clone())),
        LabeledSource::new("sspda", LanguageSource::SingleState(ss)),
        LabeledSource::new("cfg", LanguageSource::Grammar(g)),
    ];
    if classical {
        out.push(LabeledSource::new(
            "classical",
            LanguageSource::Grammar(crate::grammar::classical_pda_to_cfg(pda)?),
        ));
    }
    Ok(out)
}
