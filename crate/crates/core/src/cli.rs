//! Command-line front end. [`run`] does all the work so it can be driven
//! from tests; the binary only forwards `argv` and the standard streams.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::exec::{render_witness, Decider, LanguageRef, Limits, Outcome, Simulator, Verdict};
use crate::grammar::{classical_pda_to_cfg_traced, prune_useless, sspda_to_cfg_traced};
use crate::harness::{differential_check, pipeline_sources};
use crate::model::text::{
    parse_document, render_cfg, render_cfg_annotated, render_sspda, Annotator, Document,
};
use crate::model::{Cfg, Pda};
use crate::triple::{size_stats, to_single_state};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;

#[derive(Debug, Parser)]
#[command(
    name = "pdacfg",
    version,
    about = "Convert empty-stack pushdown automata to context-free grammars"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Stage {
    /// The intermediate single-state automaton.
    Sspda,
    /// The grammar.
    Cfg,
}

#[derive(Debug, clap::Args)]
struct LimitArgs {
    /// Configurations the simulator may explore per string.
    #[arg(long, default_value_t = Limits::default().max_configs)]
    max_configs: usize,
    /// Deepest stack the simulator will build.
    #[arg(long, default_value_t = Limits::default().max_stack_depth)]
    max_depth: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert an automaton to a single-state automaton or a grammar.
    Convert {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Stage::Cfg)]
        stage: Stage,
        /// Remove useless variables from the grammar.
        #[arg(long)]
        prune: bool,
        /// Use the one-step classical construction.
        #[arg(long)]
        classical: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Annotate every move or production with its origin.
        #[arg(long)]
        verbose: bool,
    },
    /// Simulate an automaton on a string (omit the string for the empty one).
    Run {
        pda: PathBuf,
        #[arg(default_value = "")]
        string: String,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Decide grammar membership of a string.
    Member {
        cfg: PathBuf,
        #[arg(default_value = "")]
        string: String,
    },
    /// List every member up to a length.
    #[command(name = "enum")]
    Enum {
        path: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Compare the automaton with its converted forms on all short strings.
    Check {
        pda: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[command(flatten)]
        limits: LimitArgs,
        /// Include the classical construction.
        #[arg(long)]
        classical: bool,
    },
    /// Size accounting for the single-state construction.
    Stats { pda: PathBuf },
}

/// A failed invocation: exit code and diagnostic.
struct Failure(i32, String);

type Outcome_ = Result<(String, i32), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

fn data(msg: impl std::fmt::Display) -> Failure {
    Failure(EXIT_DATA, msg.to_string())
}

fn load(path: &Path) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| data(format!("{}: {e}", path.display())))
}

fn load_pda(path: &Path) -> Result<Pda, Failure> {
    match load(path)? {
        Document::Pda(p) => Ok(p),
        _ => Err(data(format!(
            "{}: expected a multistate automaton",
            path.display()
        ))),
    }
}

fn limits(args: &LimitArgs) -> Result<Limits, Failure> {
    Limits::new(args.max_configs, args.max_depth).map_err(|e| usage(e.to_string()))
}

fn show(w: &str) -> &str {
    if w.is_empty() {
        "eps"
    } else {
        w
    }
}

fn convert(
    input: &Path,
    stage: Stage,
    prune: bool,
    classical: bool,
    verbose: bool,
) -> Result<String, Failure> {
    if stage == Stage::Sspda && (prune || classical) {
        return Err(usage("--prune and --classical apply to --stage cfg only"));
    }
    let doc = load(input)?;
    if stage == Stage::Sspda {
        let Document::Pda(pda) = doc else {
            return Err(data(format!(
                "{}: expected a multistate automaton",
                input.display()
            )));
        };
        let ss = to_single_state(&pda).map_err(data)?;
        return Ok(render_sspda(&ss, verbose));
    }

    let (cfg, notes): (Cfg, Box<Annotator>) = match doc {
        Document::Pda(pda) if classical => {
            let (cfg, origin) = classical_pda_to_cfg_traced(&pda).map_err(data)?;
            (cfg, Box::new(move |p| origin.get(p).cloned()))
        }
        Document::Pda(pda) => {
            let ss = to_single_state(&pda).map_err(data)?;
            let (cfg, origin) = sspda_to_cfg_traced(&ss).map_err(data)?;
            (
                cfg,
                Box::new(move |p| origin.get(p).map(ToString::to_string)),
            )
        }
        Document::SingleState(_) if classical => {
            return Err(usage("--classical needs a multistate automaton"));
        }
        Document::SingleState(ss) => {
            let (cfg, origin) = sspda_to_cfg_traced(&ss).map_err(data)?;
            (
                cfg,
                Box::new(move |p| origin.get(p).map(ToString::to_string)),
            )
        }
        Document::Grammar(_) => {
            return Err(data(format!("{}: expected an automaton", input.display())));
        }
    };
    let cfg = if prune {
        prune_useless(&cfg).map_err(data)?
    } else {
        cfg
    };
    Ok(if verbose {
        render_cfg_annotated(&cfg, &*notes)
    } else {
        render_cfg(&cfg)
    })
}

fn simulate<M: crate::exec::Machine>(machine: &M, w: &str, limits: Limits) -> Outcome_
where
    M::Move: std::fmt::Display,
{
    let verdict = Simulator::new(machine).run(w, limits).map_err(data)?;
    Ok(match verdict {
        Verdict::Accepted(witness) => (format!("accepted\n{}", render_witness(&witness)), EXIT_OK),
        Verdict::Rejected => ("rejected\n".to_string(), EXIT_REJECTED),
        Verdict::Inconclusive(hit) => (format!("inconclusive {hit}\n"), EXIT_INCONCLUSIVE),
    })
}

fn dispatch(command: Command) -> Outcome_ {
    match command {
        Command::Convert {
            input,
            stage,
            prune,
            classical,
            output,
            verbose,
        } => {
            let text = convert(&input, stage, prune, classical, verbose)?;
            match output {
                Some(path) => {
                    std::fs::write(&path, text)
                        .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
                    Ok((String::new(), EXIT_OK))
                }
                None => Ok((text, EXIT_OK)),
            }
        }
        Command::Run {
            pda,
            string,
            limits: l,
        } => {
            let l = limits(&l)?;
            match load(&pda)? {
                Document::Pda(p) => simulate(&p, &string, l),
                Document::SingleState(m) => simulate(&m, &string, l),
                Document::Grammar(_) => {
                    Err(data(format!("{}: expected an automaton", pda.display())))
                }
            }
        }
        Command::Member { cfg, string } => {
            let Document::Grammar(g) = load(&cfg)? else {
                return Err(data(format!("{}: expected a grammar", cfg.display())));
            };
            Ok(if crate::exec::cfg_member(&g, &string).map_err(data)? {
                ("accepted\n".to_string(), EXIT_OK)
            } else {
                ("rejected\n".to_string(), EXIT_REJECTED)
            })
        }
        Command::Enum {
            path,
            max_len,
            limits: l,
        } => {
            let l = limits(&l)?;
            let doc = load(&path)?;
            let source = match &doc {
                Document::Pda(p) => LanguageRef::Pda(p),
                Document::SingleState(m) => LanguageRef::SingleState(m),
                Document::Grammar(g) => LanguageRef::Grammar(g),
            };
            let decider = Decider::new(source);
            let mut out = String::new();
            let mut undecided = Vec::new();
            for w in crate::exec::strings_up_to(source.alphabet(), max_len) {
                match decider.decide(&w, l).outcome {
                    Outcome::Member => {
                        let _ = writeln!(out, "{}", show(&w));
                    }
                    Outcome::NonMember => {}
                    Outcome::Inconclusive(_) => undecided.push(w),
                }
            }
            if undecided.is_empty() {
                Ok((out, EXIT_OK))
            } else {
                let listed: Vec<&str> = undecided.iter().map(|w| show(w)).collect();
                Err(Failure(
                    EXIT_INCONCLUSIVE,
                    format!("{out}\u{0}inconclusive: {}", listed.join(" ")),
                ))
            }
        }
        Command::Check {
            pda,
            max_len,
            limits: l,
            classical,
        } => {
            let l = limits(&l)?;
            let p = load_pda(&pda)?;
            let sources = pipeline_sources(&p, classical).map_err(data)?;
            let report =
                differential_check(&sources, &p.input_alphabet, max_len, l).map_err(data)?;
            let code = if !report.mismatches.is_empty() || !report.replay_failures.is_empty() {
                EXIT_REJECTED
            } else if report.inconclusive_strings > 0 {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OK
            };
            Ok((report.render(), code))
        }
        Command::Stats { pda } => {
            let p = load_pda(&pda)?;
            Ok((size_stats(&p).map_err(data)?.render(), EXIT_OK))
        }
    }
}

/// Runs one invocation; returns the exit code. Nothing is written to `out`
/// unless the command produced its payload.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((payload, code)) => {
            let _ = out.write_all(payload.as_bytes());
            code
        }
        Err(Failure(code, msg)) => {
            // An inconclusive enumeration still emits the members it found.
            let (payload, msg) = msg.split_once('\u{0}').unwrap_or(("", &msg));
            let _ = out.write_all(payload.as_bytes());
            let _ = writeln!(err, "pdacfg: {msg}");
            code
        }
    }
}
