//! Bounded breadth-first simulation of empty-stack pushdown automata.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::rc::Rc;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::model::{Configuration, Pda, SingleStatePda, SsSymbol, SsTransition, Transition};

use super::ExecError;

/// Search bounds for the simulator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_configs: usize,
    pub max_stack_depth: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_configs: 100_000,
            max_stack_depth: 64,
        }
    }
}

impl Limits {
    pub fn new(max_configs: usize, max_stack_depth: usize) -> Result<Self, ExecError> {
        if max_configs == 0 || max_stack_depth == 0 {
            return Err(ExecError::ZeroLimit);
        }
        Ok(Self {
            max_configs,
            max_stack_depth,
        })
    }
}

/// Which bound cut the search short.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LimitHit {
    MaxConfigs,
    MaxStackDepth,
}

impl fmt::Display for LimitHit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LimitHit::MaxConfigs => "max_configs",
            LimitHit::MaxStackDepth => "max_stack_depth",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<M> {
    /// Accepted, with the moves of a shortest accepting run.
    Accepted(Vec<M>),
    Rejected,
    Inconclusive(LimitHit),
}

impl<M> Verdict<M> {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted(_))
    }
}

/// Uniform view of a move for the simulator.
pub trait Move {
    type State: Clone + Eq + Hash + Ord + fmt::Debug;
    type Symbol: Clone + Eq + Hash + Ord + fmt::Debug;

    fn source(&self) -> &Self::State;
    fn input(&self) -> Option<char>;
    fn pop(&self) -> &Self::Symbol;
    fn target(&self) -> &Self::State;
    /// Pushed symbols, top first.
    fn push(&self) -> &[Self::Symbol];
}

/// Anything with a start configuration and a move relation.
pub trait Machine {
    type Move: Move + Clone + fmt::Debug;

    fn input_alphabet(&self) -> &BTreeSet<char>;
    fn initial_state(&self) -> <Self::Move as Move>::State;
    fn initial_symbol(&self) -> <Self::Move as Move>::Symbol;
    fn moves(&self) -> Box<dyn Iterator<Item = &Self::Move> + '_>;
}

pub type MachineConfiguration<M> =
    Configuration<<<M as Machine>::Move as Move>::State, <<M as Machine>::Move as Move>::Symbol>;

impl Move for Transition {
    type State = crate::model::StateId;
    type Symbol = crate::model::StackSymbol;

    fn source(&self) -> &Self::State {
        &self.from
    }
    fn input(&self) -> Option<char> {
        self.input
    }
    fn pop(&self) -> &Self::Symbol {
        &self.pop
    }
    fn target(&self) -> &Self::State {
        &self.to
    }
    fn push(&self) -> &[Self::Symbol] {
        &self.push
    }
}

impl Machine for Pda {
    type Move = Transition;

    fn input_alphabet(&self) -> &BTreeSet<char> {
        &self.input_alphabet
    }
    fn initial_state(&self) -> crate::model::StateId {
        self.start_state.clone()
    }
    fn initial_symbol(&self) -> crate::model::StackSymbol {
        self.start_stack.clone()
    }
    fn moves(&self) -> Box<dyn Iterator<Item = &Transition> + '_> {
        Box::new(self.transitions.iter())
    }
}

impl Move for SsTransition {
    type State = ();
    type Symbol = SsSymbol;

    fn source(&self) -> &() {
        &()
    }
    fn input(&self) -> Option<char> {
        self.input
    }
    fn pop(&self) -> &SsSymbol {
        &self.pop
    }
    fn target(&self) -> &() {
        &()
    }
    fn push(&self) -> &[SsSymbol] {
        &self.push
    }
}

impl Machine for SingleStatePda {
    type Move = SsTransition;

    fn input_alphabet(&self) -> &BTreeSet<char> {
        &self.input_alphabet
    }
    fn initial_state(&self) {}
    fn initial_symbol(&self) -> SsSymbol {
        SsSymbol::Start
    }
    fn moves(&self) -> Box<dyn Iterator<Item = &SsTransition> + '_> {
        Box::new(self.transitions.keys())
    }
}

/// Successors of `c` in one move.
pub fn step<M: Machine>(
    machine: &M,
    w: &str,
    c: &MachineConfiguration<M>,
) -> BTreeSet<MachineConfiguration<M>> {
    let Some(top) = c.top() else {
        return BTreeSet::new();
    };
    let next = w.chars().nth(c.input_pos);
    machine
        .moves()
        .filter(|m| m.source() == &c.state && m.pop() == top)
        .filter(|m| m.input().is_none() || m.input() == next)
        .map(|m| {
            let mut stack = m.push().to_vec();
            stack.extend_from_slice(&c.stack[1..]);
            Configuration::new(
                m.target().clone(),
                c.input_pos + usize::from(m.input().is_some()),
                stack,
            )
        })
        .collect()
}

struct CompiledMove {
    index: usize,
    input: Option<char>,
    target: u32,
    /// Bottom first, so that extending the internal stack puts the top last.
    push_rev: Vec<u32>,
}

/// A machine with states and symbols interned, indexed by (state, top).
pub struct Simulator<'m, M: Machine> {
    machine: &'m M,
    moves: Vec<&'m M::Move>,
    table: FxHashMap<(u32, u32), Vec<CompiledMove>>,
    start: (u32, u32),
}

fn intern<T: Clone + Eq + Hash>(map: &mut HashMap<T, u32>, value: &T) -> u32 {
    let next = map.len() as u32;
    *map.entry(value.clone()).or_insert(next)
}

struct Node {
    state: u32,
    pos: usize,
    stack: Rc<[u32]>,
    parent: usize,
    via: usize,
}

impl<'m, M: Machine> Simulator<'m, M> {
    pub fn new(machine: &'m M) -> Self {
        let mut states = HashMap::new();
        let mut symbols = HashMap::new();
        let start = (
            intern(&mut states, &machine.initial_state()),
            intern(&mut symbols, &machine.initial_symbol()),
        );
        let moves: Vec<&M::Move> = machine.moves().collect();
        let mut table: FxHashMap<(u32, u32), Vec<CompiledMove>> = FxHashMap::default();
        for (index, m) in moves.iter().enumerate() {
            let key = (
                intern(&mut states, m.source()),
                intern(&mut symbols, m.pop()),
            );
            let compiled = CompiledMove {
                index,
                input: m.input(),
                target: intern(&mut states, m.target()),
                push_rev: m
                    .push()
                    .iter()
                    .rev()
                    .map(|s| intern(&mut symbols, s))
                    .collect(),
            };
            table.entry(key).or_default().push(compiled);
        }
        Self {
            machine,
            moves,
            table,
            start,
        }
    }

    pub fn machine(&self) -> &'m M {
        self.machine
    }

    fn witness(&self, nodes: &[Node], mut at: usize) -> Vec<M::Move> {
        let mut out = Vec::new();
        while at != 0 {
            out.push(self.moves[nodes[at].via].clone());
            at = nodes[at].parent;
        }
        out.reverse();
        out
    }

    /// Breadth-first search for an accepting run on `w`.
    pub fn run(&self, w: &str, limits: Limits) -> Result<Verdict<M::Move>, ExecError> {
        let alphabet = self.machine.input_alphabet();
        let input: Vec<char> = w.chars().collect();
        if let Some(&c) = input.iter().find(|c| !alphabet.contains(c)) {
            return Err(ExecError::OutsideAlphabet(c));
        }
        let n = input.len();

        let mut nodes = vec![Node {
            state: self.start.0,
            pos: 0,
            stack: Rc::from(vec![self.start.1]),
            parent: 0,
            via: usize::MAX,
        }];
        let mut seen: FxHashSet<(u32, usize, Rc<[u32]>)> = FxHashSet::default();
        seen.insert((self.start.0, 0, nodes[0].stack.clone()));
        let mut queue = VecDeque::from([0usize]);
        let mut explored = 0usize;
        let mut depth_hit = false;

        while let Some(at) = queue.pop_front() {
            if explored >= limits.max_configs {
                return Ok(Verdict::Inconclusive(LimitHit::MaxConfigs));
            }
            explored += 1;
            let (state, pos) = (nodes[at].state, nodes[at].pos);
            let Some(&top) = nodes[at].stack.last() else {
                continue;
            };
            let Some(candidates) = self.table.get(&(state, top)) else {
                continue;
            };
            for m in candidates {
                let next_pos = match m.input {
                    None => pos,
                    Some(c) if pos < n && input[pos] == c => pos + 1,
                    Some(_) => continue,
                };
                let below = &nodes[at].stack[..nodes[at].stack.len() - 1];
                if below.len() + m.push_rev.len() > limits.max_stack_depth {
                    depth_hit = true;
                    continue;
                }
                let stack: Rc<[u32]> = below.iter().chain(&m.push_rev).copied().collect();
                if !seen.insert((m.target, next_pos, stack.clone())) {
                    continue;
                }
                let accepted = stack.is_empty() && next_pos == n;
                nodes.push(Node {
                    state: m.target,
                    pos: next_pos,
                    stack,
                    parent: at,
                    via: m.index,
                });
                let id = nodes.len() - 1;
                if accepted {
                    return Ok(Verdict::Accepted(self.witness(&nodes, id)));
                }
                queue.push_back(id);
            }
        }
        Ok(if depth_hit {
            Verdict::Inconclusive(LimitHit::MaxStackDepth)
        } else {
            Verdict::Rejected
        })
    }
}

/// Empty-stack acceptance of `w`, by bounded breadth-first search.
pub fn accepts<M: Machine>(
    machine: &M,
    w: &str,
    limits: Limits,
) -> Result<Verdict<M::Move>, ExecError> {
    Simulator::new(machine).run(w, limits)
}

/// Why a witness failed to replay.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReplayError {
    /// Move `index` does not apply to the configuration reached so far.
    Inapplicable { index: usize },
    /// The run ended without consuming the input or emptying the stack.
    Unfinished { input_pos: usize, stack_len: usize },
}

impl fmt::Display for ReplayError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReplayError::Inapplicable { index } => write!(f, "move {index} does not apply"),
            ReplayError::Unfinished {
                input_pos,
                stack_len,
            } => write!(
                f,
                "run ends at input position {input_pos} with {stack_len} stack symbols"
            ),
        }
    }
}

/// Applies `witness` move by move from the start configuration and checks
/// that it ends with all of `w` read and an empty stack. Returns every
/// configuration visited, the start included.
pub fn replay<M: Machine>(
    machine: &M,
    w: &str,
    witness: &[M::Move],
) -> Result<Vec<MachineConfiguration<M>>, ReplayError> {
    let input: Vec<char> = w.chars().collect();
    let mut c = Configuration::new(machine.initial_state(), 0, vec![machine.initial_symbol()]);
    let mut trace = vec![c.clone()];
    for (index, m) in witness.iter().enumerate() {
        let fits = c.state == *m.source()
            && c.top() == Some(m.pop())
            && match m.input() {
                None => true,
                Some(ch) => input.get(c.input_pos) == Some(&ch),
            };
        if !fits {
            return Err(ReplayError::Inapplicable { index });
        }
        let mut stack = m.push().to_vec();
        stack.extend_from_slice(&c.stack[1..]);
        c = Configuration::new(
            m.target().clone(),
            c.input_pos + usize::from(m.input().is_some()),
            stack,
        );
        trace.push(c.clone());
    }
    if c.input_pos != input.len() || !c.stack.is_empty() {
        return Err(ReplayError::Unfinished {
            input_pos: c.input_pos,
            stack_len: c.stack.len(),
        });
    }
    Ok(trace)
}

/// One move per line, prefixed by its 1-based step index.
pub fn render_witness<T: fmt::Display>(witness: &[T]) -> String {
    witness
        .iter()
        .enumerate()
        .map(|(i, m)| format!("{}: {m}\n", i + 1))
        .collect()
}
