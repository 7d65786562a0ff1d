//! Line-oriented text formats for automata and grammars.
//!
//! Automaton files carry five headers (`states:`, `input:`, `stack:`,
//! `start:`, `startstack:`) followed by transitions written
//! `FROM INPUT POP -> TO PUSH...`, with `eps` for an empty input or push.
//! Grammar files carry `HEAD -> BODY | BODY ...` lines and optional
//! `variables:`, `terminals:` and `start:` headers. `#` starts a comment.
//!
//! Rendering is canonical: everything is sorted by its rendered text.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use super::cfg::{Cfg, GSym, Production, Variable};
use super::error::ParseError;
use super::pda::{Pda, Transition};
use super::sspda::{SingleStatePda, SsTransition};
use super::symbol::{
    check_input_symbol, SsSymbol, StackSymbol, StateId, EPSILON, SOLE_STATE, START_MARKER,
};

const PDA_HEADERS: [&str; 5] = ["states", "input", "stack", "start", "startstack"];
const CFG_HEADERS: [&str; 3] = ["variables", "terminals", "start"];

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Splits a header line into its key and value tokens, if it is one.
fn header_of(line: &str) -> Option<(&str, Vec<&str>)> {
    let (first, rest) = match line.split_once(char::is_whitespace) {
        Some((a, b)) => (a, b),
        None => (line, ""),
    };
    let key = first.strip_suffix(':')?;
    Some((key, rest.split_whitespace().collect()))
}

struct RawMove<'a> {
    line: usize,
    from: &'a str,
    input: Option<char>,
    pop: &'a str,
    to: &'a str,
    push: Vec<&'a str>,
}

struct RawAutomaton<'a> {
    headers: HashMap<&'a str, (usize, Vec<&'a str>)>,
    moves: Vec<RawMove<'a>>,
    last_line: usize,
}

impl<'a> RawAutomaton<'a> {
    fn header(&self, key: &str) -> Result<&(usize, Vec<&'a str>), ParseError> {
        self.headers.get(key).ok_or_else(|| {
            ParseError::new(self.last_line.max(1), format!("missing header `{key}:`"))
        })
    }

    fn single(&self, key: &str) -> Result<(usize, &'a str), ParseError> {
        let (line, values) = self.header(key)?;
        match values.as_slice() {
            [v] => Ok((*line, v)),
            _ => Err(ParseError::new(
                *line,
                format!("header `{key}:` takes exactly one value"),
            )),
        }
    }

    fn input_alphabet(&self) -> Result<BTreeSet<char>, ParseError> {
        let (line, values) = self.header("input")?;
        let mut out = BTreeSet::new();
        for v in values {
            let c = single_char(v).ok_or_else(|| {
                ParseError::new(
                    *line,
                    format!("input symbol `{v}` must be a single character"),
                )
            })?;
            check_input_symbol(c).map_err(|e| ParseError::new(*line, e))?;
            if !out.insert(c) {
                return Err(ParseError::new(
                    *line,
                    format!("duplicate input symbol `{c}`"),
                ));
            }
        }
        Ok(out)
    }
}

fn single_char(s: &str) -> Option<char> {
    let mut it = s.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Some(c),
        _ => None,
    }
}

fn scan_automaton(text: &str) -> Result<RawAutomaton<'_>, ParseError> {
    let mut raw = RawAutomaton {
        headers: HashMap::new(),
        moves: Vec::new(),
        last_line: 0,
    };
    for (idx, full) in text.lines().enumerate() {
        let line_no = idx + 1;
        raw.last_line = line_no;
        let line = strip_comment(full);
        if line.is_empty() {
            continue;
        }
        if let Some((key, values)) = header_of(line) {
            if !PDA_HEADERS.contains(&key) {
                return Err(ParseError::new(line_no, format!("unknown header `{key}:`")));
            }
            if raw.headers.insert(key, (line_no, values)).is_some() {
                return Err(ParseError::new(
                    line_no,
                    format!("duplicate header `{key}:`"),
                ));
            }
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() < 6 || tokens[3] != "->" {
            return Err(ParseError::new(
                line_no,
                format!("malformed transition `{line}`; expected `FROM INPUT POP -> TO PUSH...`"),
            ));
        }
        let input = if tokens[1] == EPSILON {
            None
        } else {
            Some(single_char(tokens[1]).ok_or_else(|| {
                ParseError::new(
                    line_no,
                    format!("input `{}` must be a single character or `eps`", tokens[1]),
                )
            })?)
        };
        let push = match &tokens[5..] {
            [e] if *e == EPSILON => Vec::new(),
            rest => {
                if rest.contains(&EPSILON) {
                    return Err(ParseError::new(
                        line_no,
                        "`eps` must be the whole push sequence",
                    ));
                }
                rest.to_vec()
            }
        };
        raw.moves.push(RawMove {
            line: line_no,
            from: tokens[0],
            input,
            pop: tokens[2],
            to: tokens[4],
            push,
        });
    }
    Ok(raw)
}

fn declared<T: Ord>(
    set: &BTreeSet<T>,
    value: T,
    line: usize,
    what: &str,
    token: &str,
) -> Result<T, ParseError> {
    if set.contains(&value) {
        Ok(value)
    } else {
        Err(ParseError::new(
            line,
            format!("undeclared {what} `{token}`"),
        ))
    }
}

/// Reads a multistate automaton.
pub fn parse_pda(text: &str) -> Result<Pda, ParseError> {
    let raw = scan_automaton(text)?;

    let (line, names) = raw.header("states")?;
    if names.is_empty() {
        return Err(ParseError::new(*line, "state set is empty"));
    }
    let mut states = BTreeSet::new();
    for n in names {
        let s = StateId::new(*n).map_err(|e| ParseError::new(*line, e))?;
        if !states.insert(s) {
            return Err(ParseError::new(*line, format!("duplicate state `{n}`")));
        }
    }
    let input_alphabet = raw.input_alphabet()?;
    let (line, names) = raw.header("stack")?;
    let mut stack_alphabet = BTreeSet::new();
    for n in names {
        let s = StackSymbol::new(*n).map_err(|e| ParseError::new(*line, e))?;
        if !stack_alphabet.insert(s) {
            return Err(ParseError::new(
                *line,
                format!("duplicate stack symbol `{n}`"),
            ));
        }
    }

    let state_ref = |line: usize, name: &str| {
        let s = StateId::new(name).map_err(|e| ParseError::new(line, e))?;
        declared(&states, s, line, "state", name)
    };
    let sym_ref = |line: usize, name: &str| {
        let s = StackSymbol::new(name).map_err(|e| ParseError::new(line, e))?;
        declared(&stack_alphabet, s, line, "stack symbol", name)
    };

    let (line, name) = raw.single("start")?;
    let start_state = state_ref(line, name)?;
    let (line, name) = raw.single("startstack")?;
    let start_stack = sym_ref(line, name)?;

    let mut transitions = BTreeSet::new();
    for m in &raw.moves {
        let from = state_ref(m.line, m.from)?;
        if let Some(c) = m.input {
            if !input_alphabet.contains(&c) {
                return Err(ParseError::new(
                    m.line,
                    format!("undeclared input symbol `{c}`"),
                ));
            }
        }
        let pop = sym_ref(m.line, m.pop)?;
        let to = state_ref(m.line, m.to)?;
        let push = m
            .push
            .iter()
            .map(|s| sym_ref(m.line, s))
            .collect::<Result<Vec<_>, _>>()?;
        transitions.insert(Transition::new(from, m.input, pop, to, push));
    }

    Ok(Pda {
        states,
        input_alphabet,
        stack_alphabet,
        transitions,
        start_state,
        start_stack,
    })
}

/// Reads a single-state automaton as written by [`render_sspda`].
pub fn parse_sspda(text: &str) -> Result<SingleStatePda, ParseError> {
    let raw = scan_automaton(text)?;
    let (line, names) = raw.header("states")?;
    if names.as_slice() != [SOLE_STATE] {
        return Err(ParseError::new(
            *line,
            format!("a single-state automaton declares exactly `states: {SOLE_STATE}`"),
        ));
    }
    let input_alphabet = raw.input_alphabet()?;
    let (line, names) = raw.header("stack")?;
    let mut stack_alphabet = BTreeSet::new();
    for n in names {
        let s = SsSymbol::parse(n).map_err(|e| ParseError::new(*line, e))?;
        if !stack_alphabet.insert(s) {
            return Err(ParseError::new(
                *line,
                format!("duplicate stack symbol `{n}`"),
            ));
        }
    }
    let (line, name) = raw.single("start")?;
    if name != SOLE_STATE {
        return Err(ParseError::new(line, format!("undeclared state `{name}`")));
    }
    let (line, name) = raw.single("startstack")?;
    if name != START_MARKER {
        return Err(ParseError::new(
            line,
            format!("start stack symbol must be `{START_MARKER}`, found `{name}`"),
        ));
    }
    if !stack_alphabet.contains(&SsSymbol::Start) {
        return Err(ParseError::new(
            line,
            format!("undeclared stack symbol `{START_MARKER}`"),
        ));
    }

    let sym_ref = |line: usize, name: &str| {
        let s = SsSymbol::parse(name).map_err(|e| ParseError::new(line, e))?;
        declared(&stack_alphabet, s, line, "stack symbol", name)
    };
    let mut transitions = BTreeMap::new();
    for m in &raw.moves {
        for s in [m.from, m.to] {
            if s != SOLE_STATE {
                return Err(ParseError::new(m.line, format!("undeclared state `{s}`")));
            }
        }
        if let Some(c) = m.input {
            if !input_alphabet.contains(&c) {
                return Err(ParseError::new(
                    m.line,
                    format!("undeclared input symbol `{c}`"),
                ));
            }
        }
        let pop = sym_ref(m.line, m.pop)?;
        let push = m
            .push
            .iter()
            .map(|s| sym_ref(m.line, s))
            .collect::<Result<Vec<_>, _>>()?;
        if push.contains(&SsSymbol::Start) {
            return Err(ParseError::new(m.line, "the start marker cannot be pushed"));
        }
        transitions.insert(
            SsTransition {
                input: m.input,
                pop,
                push,
            },
            Vec::new(),
        );
    }
    Ok(SingleStatePda {
        input_alphabet,
        stack_alphabet,
        transitions,
    })
}

fn sorted_line<I: IntoIterator<Item = String>>(items: I) -> String {
    let mut v: Vec<String> = items.into_iter().collect();
    v.sort();
    v.join(" ")
}

fn header_line(out: &mut String, key: &str, values: &str) {
    if values.is_empty() {
        let _ = writeln!(out, "{key}:");
    } else {
        let _ = writeln!(out, "{key}: {values}");
    }
}

pub fn render_pda(pda: &Pda) -> String {
    let mut out = String::new();
    header_line(
        &mut out,
        "states",
        &sorted_line(pda.states.iter().map(ToString::to_string)),
    );
    header_line(
        &mut out,
        "input",
        &sorted_line(pda.input_alphabet.iter().map(ToString::to_string)),
    );
    header_line(
        &mut out,
        "stack",
        &sorted_line(pda.stack_alphabet.iter().map(ToString::to_string)),
    );
    header_line(&mut out, "start", pda.start_state.as_str());
    header_line(&mut out, "startstack", pda.start_stack.as_str());
    let mut lines: Vec<String> = pda.transitions.iter().map(ToString::to_string).collect();
    lines.sort();
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
    out
}

/// Renders a single-state automaton; `verbose` appends each move's
/// provenance as a trailing `# from:` comment.
pub fn render_sspda(m: &SingleStatePda, verbose: bool) -> String {
    let mut out = String::new();
    header_line(&mut out, "states", SOLE_STATE);
    header_line(
        &mut out,
        "input",
        &sorted_line(m.input_alphabet.iter().map(ToString::to_string)),
    );
    header_line(
        &mut out,
        "stack",
        &sorted_line(m.stack_alphabet.iter().map(ToString::to_string)),
    );
    header_line(&mut out, "start", SOLE_STATE);
    header_line(&mut out, "startstack", START_MARKER);
    let mut lines: Vec<(String, &Vec<_>)> = m
        .transitions
        .iter()
        .map(|(t, prov)| (t.to_string(), prov))
        .collect();
    lines.sort();
    for (l, prov) in lines {
        out.push_str(&l);
        if verbose {
            for p in prov {
                let _ = write!(out, "  # from: {p}");
            }
        }
        out.push('\n');
    }
    out
}

/// Production lines in canonical order: the start variable's group first,
/// then the remaining heads by rendering; bodies sorted by rendering.
fn production_groups(cfg: &Cfg) -> Vec<(String, Vec<&Production>)> {
    let mut groups: BTreeMap<String, Vec<&Production>> = BTreeMap::new();
    for p in &cfg.productions {
        groups.entry(p.head.to_string()).or_default().push(p);
    }
    for bodies in groups.values_mut() {
        bodies.sort_by_cached_key(|p| p.body_string());
    }
    let start = cfg.start.to_string();
    let mut out: Vec<(String, Vec<&Production>)> = Vec::new();
    if let Some(g) = groups.remove(&start) {
        out.push((start, g));
    }
    out.extend(groups);
    out
}

/// Supplies the `# from:` note for a production, if any.
pub type Annotator<'a> = dyn Fn(&Production) -> Option<String> + 'a;

fn render_cfg_inner(cfg: &Cfg, headers: bool, annotate: Option<&Annotator<'_>>) -> String {
    let mut out = String::new();
    if headers {
        header_line(
            &mut out,
            "variables",
            &sorted_line(cfg.variables.iter().map(ToString::to_string)),
        );
        header_line(
            &mut out,
            "terminals",
            &sorted_line(cfg.terminals.iter().map(ToString::to_string)),
        );
        header_line(&mut out, "start", &cfg.start.to_string());
    }
    for (head, prods) in production_groups(cfg) {
        match annotate {
            None => {
                let bodies: Vec<String> = prods.iter().map(|p| p.body_string()).collect();
                let _ = writeln!(out, "{head} -> {}", bodies.join(" | "));
            }
            Some(f) => {
                for p in prods {
                    let _ = write!(out, "{head} -> {}", p.body_string());
                    if let Some(note) = f(p) {
                        let _ = write!(out, "  # from: {note}");
                    }
                    out.push('\n');
                }
            }
        }
    }
    out
}

/// Canonical grammar text. Headers are emitted only when the symbol sets or
/// start variable cannot be inferred from the production lines alone.
pub fn render_cfg(cfg: &Cfg) -> String {
    let bare = render_cfg_inner(cfg, false, None);
    let headers = parse_cfg(&bare).map_or(true, |g| g != *cfg);
    if headers {
        render_cfg_inner(cfg, true, None)
    } else {
        bare
    }
}

/// Like [`render_cfg`] but one production per line, each followed by the
/// note `annotate` returns for it.
pub fn render_cfg_annotated(cfg: &Cfg, annotate: &Annotator<'_>) -> String {
    let bare = render_cfg_inner(cfg, false, None);
    let headers = parse_cfg(&bare).map_or(true, |g| g != *cfg);
    render_cfg_inner(cfg, headers, Some(annotate))
}

struct RawProduction<'a> {
    line: usize,
    head: &'a str,
    bodies: Vec<Vec<&'a str>>,
}

/// Reads a grammar.
pub fn parse_cfg(text: &str) -> Result<Cfg, ParseError> {
    let mut headers: HashMap<&str, (usize, Vec<&str>)> = HashMap::new();
    let mut raw: Vec<RawProduction> = Vec::new();
    let mut last_line = 0;
    for (idx, full) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = strip_comment(full);
        if line.is_empty() {
            continue;
        }
        if !line.contains("->") {
            if let Some((key, values)) = header_of(line) {
                if !CFG_HEADERS.contains(&key) {
                    return Err(ParseError::new(line_no, format!("unknown header `{key}:`")));
                }
                if headers.insert(key, (line_no, values)).is_some() {
                    return Err(ParseError::new(
                        line_no,
                        format!("duplicate header `{key}:`"),
                    ));
                }
                continue;
            }
        }
        let (head, rest) = line.split_once("->").ok_or_else(|| {
            ParseError::new(
                line_no,
                format!("malformed production `{line}`; expected `HEAD -> BODY`"),
            )
        })?;
        let head_tokens: Vec<&str> = head.split_whitespace().collect();
        let [head] = head_tokens.as_slice() else {
            return Err(ParseError::new(
                line_no,
                "a production has exactly one head token",
            ));
        };
        let mut bodies = Vec::new();
        for alt in rest.split('|') {
            let toks: Vec<&str> = alt.split_whitespace().collect();
            if toks.is_empty() {
                return Err(ParseError::new(line_no, "empty alternative; write `eps`"));
            }
            bodies.push(toks);
        }
        raw.push(RawProduction {
            line: line_no,
            head,
            bodies,
        });
    }

    let declared_vars = match headers.get("variables") {
        Some((line, names)) => {
            let mut set = BTreeSet::new();
            for n in names {
                let v = Variable::parse(n).map_err(|e| ParseError::new(*line, e))?;
                if !set.insert(v) {
                    return Err(ParseError::new(*line, format!("duplicate variable `{n}`")));
                }
            }
            Some(set)
        }
        None => None,
    };
    let declared_terms = match headers.get("terminals") {
        Some((line, names)) => {
            let mut set = BTreeSet::new();
            for n in names {
                let c = single_char(n).ok_or_else(|| {
                    ParseError::new(*line, format!("terminal `{n}` must be a single character"))
                })?;
                check_input_symbol(c).map_err(|e| ParseError::new(*line, e))?;
                if !set.insert(c) {
                    return Err(ParseError::new(*line, format!("duplicate terminal `{c}`")));
                }
            }
            Some(set)
        }
        None => None,
    };

    let heads: BTreeSet<&str> = raw.iter().map(|r| r.head).collect();
    let mut variables = declared_vars.clone().unwrap_or_default();
    let mut terminals = declared_terms.clone().unwrap_or_default();

    let classify = |line: usize, tok: &str| -> Result<GSym, ParseError> {
        if let Some(vars) = &declared_vars {
            let as_var = Variable::parse(tok).ok();
            if let Some(v) = as_var.filter(|v| vars.contains(v)) {
                return Ok(GSym::V(v));
            }
            if tok.starts_with('[') || tok == START_MARKER || single_char(tok).is_none() {
                return Err(ParseError::new(
                    line,
                    format!("undeclared variable `{tok}`"),
                ));
            }
        } else if tok.starts_with('[')
            || tok == START_MARKER
            || heads.contains(tok)
            || single_char(tok).is_none()
        {
            return Variable::parse(tok)
                .map(GSym::V)
                .map_err(|e| ParseError::new(line, e));
        }
        let c = single_char(tok).expect("single character");
        check_input_symbol(c).map_err(|e| ParseError::new(line, e))?;
        if let Some(terms) = &declared_terms {
            if !terms.contains(&c) {
                return Err(ParseError::new(line, format!("undeclared terminal `{c}`")));
            }
        }
        Ok(GSym::T(c))
    };

    let mut productions = BTreeSet::new();
    for r in &raw {
        let head = Variable::parse(r.head).map_err(|e| ParseError::new(r.line, e))?;
        if let Some(vars) = &declared_vars {
            if !vars.contains(&head) {
                return Err(ParseError::new(
                    r.line,
                    format!("undeclared variable `{}`", r.head),
                ));
            }
        }
        variables.insert(head.clone());
        for toks in &r.bodies {
            let body = if toks.as_slice() == [EPSILON] {
                Vec::new()
            } else {
                if toks.contains(&EPSILON) {
                    return Err(ParseError::new(r.line, "`eps` must be the whole body"));
                }
                toks.iter()
                    .map(|t| classify(r.line, t))
                    .collect::<Result<Vec<_>, _>>()?
            };
            for s in &body {
                match s {
                    GSym::V(v) => {
                        variables.insert(v.clone());
                    }
                    GSym::T(c) => {
                        terminals.insert(*c);
                    }
                }
            }
            productions.insert(Production::new(head.clone(), body));
        }
    }

    let start = match headers.get("start") {
        Some((line, values)) => {
            let [name] = values.as_slice() else {
                return Err(ParseError::new(
                    *line,
                    "header `start:` takes exactly one value",
                ));
            };
            let v = Variable::parse(name).map_err(|e| ParseError::new(*line, e))?;
            if declared_vars
                .as_ref()
                .is_some_and(|vars| !vars.contains(&v))
            {
                return Err(ParseError::new(
                    *line,
                    format!("undeclared variable `{name}`"),
                ));
            }
            variables.insert(v.clone());
            v
        }
        None => match raw.first() {
            Some(r) => Variable::parse(r.head).map_err(|e| ParseError::new(r.line, e))?,
            None => {
                return Err(ParseError::new(
                    last_line.max(1),
                    "no productions and no `start:` header",
                ))
            }
        },
    };

    let cfg = Cfg {
        variables,
        terminals,
        productions,
        start,
    };
    if let Some(v) = cfg.violations().into_iter().next() {
        return Err(ParseError::new(last_line.max(1), v));
    }
    Ok(cfg)
}

/// Any of the three object kinds the text formats describe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Pda(Pda),
    SingleState(SingleStatePda),
    Grammar(Cfg),
}

/// Parses a file of unknown kind: automaton files are recognised by their
/// `states:` header, and single-state ones by `Zs` or bracketed stack symbols.
pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let mut automaton = false;
    let mut single_state = false;
    for line in text.lines().map(strip_comment) {
        if let Some((key, values)) = header_of(line) {
            match key {
                "states" => automaton = true,
                "stack" => {
                    single_state = values
                        .iter()
                        .any(|v| *v == START_MARKER || v.starts_with('['))
                }
                _ => {}
            }
        }
    }
    match (automaton, single_state) {
        (true, true) => parse_sspda(text).map(Document::SingleState),
        (true, false) => parse_pda(text).map(Document::Pda),
        _ => parse_cfg(text).map(Document::Grammar),
    }
}
