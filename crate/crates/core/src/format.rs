//! Line-oriented text formats. Vertices are 1-based in every file.
//!
//! ```text
//! c comment
//! p graph <n> <m>      e <u> <v>            undirected graph
//! p mixed <n> <m>      e <u> <v> | a <u> <v>  partial orientation (a = arc u->v)
//! p wtree <b>          v <i> <wt>, e <i> <j>  vertex-weighted tree
//! p cnf <vars> <clauses>  signed literals, each clause ended by 0
//! ```
//!
//! Orientation listings are mixed-graph files with only `a` lines, optionally
//! followed by a summary line `R <value>` or `mu <value>`.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::condense::WeightedTree;
use crate::gadgets::{Literal, Nae3SatInstance};
use crate::graph::{EdgeState, Graph, MixedGraph, Orientation};
use crate::tree::TreeOrientation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing `p {0}` header")]
    MissingHeader(&'static str),
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("header declares {expected} {what}, found {found}")]
    CountMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}

/// A parse failure at a 1-based line number (0 when it concerns the file as
/// a whole).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn malformed(line: usize, text: &str) -> ParseError {
    err(line, ParseErrorKind::Malformed(text.trim().to_string()))
}

/// Non-comment, non-blank lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'))
}

fn parse_numbers<const K: usize>(line: usize, text: &str, rest: &[&str]) -> Result<[usize; K], ParseError> {
    if rest.len() != K {
        return Err(malformed(line, text));
    }
    let mut out = [0; K];
    for (slot, tok) in out.iter_mut().zip(rest) {
        *slot = tok.parse().map_err(|_| malformed(line, text))?;
    }
    Ok(out)
}

fn vertex(line: usize, v: usize, n: usize) -> Result<usize, ParseError> {
    if v == 0 || v > n {
        return Err(err(line, ParseErrorKind::VertexOutOfRange { vertex: v, n }));
    }
    Ok(v - 1)
}

/// Header `p <kind> ...` with `K` numeric fields.
fn header<'a, const K: usize>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    kind: &'static str,
) -> Result<(usize, [usize; K]), ParseError> {
    let (line, text) = lines
        .next()
        .ok_or_else(|| err(0, ParseErrorKind::MissingHeader(kind)))?;
    let toks: Vec<&str> = text.split_whitespace().collect();
    if toks.len() < 2 || toks[0] != "p" || toks[1] != kind {
        return Err(err(line, ParseErrorKind::MissingHeader(kind)));
    }
    Ok((line, parse_numbers::<K>(line, text, &toks[2..])?))
}

struct EdgeCollector {
    n: usize,
    seen: HashMap<(usize, usize), ()>,
    edges: Vec<(usize, usize)>,
    states: Vec<EdgeState>,
}

impl EdgeCollector {
    fn new(n: usize) -> Self {
        EdgeCollector {
            n,
            seen: HashMap::new(),
            edges: Vec::new(),
            states: Vec::new(),
        }
    }

    fn push(&mut self, line: usize, u: usize, v: usize, state: EdgeState) -> Result<(), ParseError> {
        let (a, b) = (vertex(line, u, self.n)?, vertex(line, v, self.n)?);
        if a == b {
            return Err(err(line, ParseErrorKind::SelfLoop(u)));
        }
        if self.seen.insert((a.min(b), a.max(b)), ()).is_some() {
            return Err(err(line, ParseErrorKind::DuplicateEdge(u, v)));
        }
        self.edges.push((a, b));
        self.states.push(state);
        Ok(())
    }

    fn check_count(&self, header_line: usize, m: usize) -> Result<(), ParseError> {
        if self.edges.len() != m {
            return Err(err(
                header_line,
                ParseErrorKind::CountMismatch {
                    what: "edges",
                    expected: m,
                    found: self.edges.len(),
                },
            ));
        }
        Ok(())
    }
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (hline, [n, m]) = header::<2>(&mut lines, "graph")?;
    if n == 0 {
        return Err(malformed(hline, "graph needs at least one vertex"));
    }
    let mut edges = EdgeCollector::new(n);
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks[0] {
            "e" => {
                let [u, v] = parse_numbers::<2>(line, l, &toks[1..])?;
                edges.push(line, u, v, EdgeState::Undirected)?;
            }
            _ => return Err(malformed(line, l)),
        }
    }
    edges.check_count(hline, m)?;
    Graph::new(n, edges.edges).map_err(|e| malformed(0, &e.to_string()))
}

pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("p graph {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

/// Summary line of an orientation listing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Summary {
    Reachability(u64),
    Mu(u128),
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summary::Reachability(r) => write!(f, "R {r}"),
            Summary::Mu(mu) => write!(f, "mu {mu}"),
        }
    }
}

fn parse_mixed_inner(text: &str, allow_summary: bool) -> Result<(MixedGraph, Option<Summary>), ParseError> {
    let mut lines = content_lines(text);
    let (hline, [n, m]) = header::<2>(&mut lines, "mixed")?;
    if n == 0 {
        return Err(malformed(hline, "graph needs at least one vertex"));
    }
    let mut edges = EdgeCollector::new(n);
    let mut summary = None;
    for (line, l) in lines {
        if summary.is_some() {
            return Err(malformed(line, l));
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks[0] {
            "e" | "a" => {
                let [u, v] = parse_numbers::<2>(line, l, &toks[1..])?;
                let state = if toks[0] == "e" {
                    EdgeState::Undirected
                } else {
                    EdgeState::Forward
                };
                edges.push(line, u, v, state)?;
            }
            "R" if allow_summary && toks.len() == 2 => {
                summary = Some(Summary::Reachability(
                    toks[1].parse().map_err(|_| malformed(line, l))?,
                ));
            }
            "mu" if allow_summary && toks.len() == 2 => {
                summary = Some(Summary::Mu(toks[1].parse().map_err(|_| malformed(line, l))?));
            }
            _ => return Err(malformed(line, l)),
        }
    }
    edges.check_count(hline, m)?;
    let g = Graph::new(n, edges.edges).map_err(|e| malformed(0, &e.to_string()))?;
    let mixed = MixedGraph::new(g, edges.states).map_err(|e| malformed(0, &e.to_string()))?;
    Ok((mixed, summary))
}

pub fn parse_mixed(text: &str) -> Result<MixedGraph, ParseError> {
    parse_mixed_inner(text, false).map(|(m, _)| m)
}

/// A mixed-graph file that may end with an `R` or `mu` summary line.
pub fn parse_orientation_listing(text: &str) -> Result<(MixedGraph, Option<Summary>), ParseError> {
    parse_mixed_inner(text, true)
}

pub fn serialize_mixed(m: &MixedGraph) -> String {
    let g = m.graph();
    let mut out = format!("p mixed {} {}\n", g.n(), g.m());
    for (&(u, v), s) in g.edges().iter().zip(m.state()) {
        let _ = match s {
            EdgeState::Undirected => writeln!(out, "e {} {}", u + 1, v + 1),
            EdgeState::Forward => writeln!(out, "a {} {}", u + 1, v + 1),
            EdgeState::Backward => writeln!(out, "a {} {}", v + 1, u + 1),
        };
    }
    out
}

/// Orientation as a mixed-graph listing with arcs sorted, plus an optional
/// summary line.
pub fn write_orientation(o: &Orientation, summary: Option<Summary>) -> String {
    let g = o.graph();
    let mut out = format!("p mixed {} {}\n", g.n(), g.m());
    for (u, v) in o.sorted_arcs() {
        let _ = writeln!(out, "a {} {}", u + 1, v + 1);
    }
    if let Some(s) = summary {
        let _ = writeln!(out, "{s}");
    }
    out
}

/// Tree orientation: sorted `a` lines and a closing `mu` line.
pub fn write_tree_orientation(t: &TreeOrientation, mu: u128) -> String {
    let mut out = String::new();
    for (u, v) in t.sorted_arcs() {
        let _ = writeln!(out, "a {} {}", u + 1, v + 1);
    }
    let _ = writeln!(out, "{}", Summary::Mu(mu));
    out
}

/// Reads `a` lines (one per tree edge, any order) and an optional `mu` line
/// against the tree `t`.
pub fn parse_tree_orientation(t: &WeightedTree, text: &str) -> Result<(TreeOrientation, Option<u128>), ParseError> {
    let index: HashMap<(usize, usize), usize> = t
        .edges()
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| ((u.min(v), u.max(v)), i))
        .collect();
    let mut forward: Vec<Option<bool>> = vec![None; t.edges().len()];
    let mut mu = None;
    for (line, l) in content_lines(text) {
        if mu.is_some() {
            return Err(malformed(line, l));
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks[0] {
            "a" => {
                let [u, v] = parse_numbers::<2>(line, l, &toks[1..])?;
                let (a, b) = (vertex(line, u, t.len())?, vertex(line, v, t.len())?);
                let &i = index
                    .get(&(a.min(b), a.max(b)))
                    .ok_or_else(|| err(line, ParseErrorKind::InvalidTree(format!("{u} {v} is not a tree edge"))))?;
                if forward[i].replace(t.edges()[i] == (a, b)).is_some() {
                    return Err(err(line, ParseErrorKind::DuplicateEdge(u, v)));
                }
            }
            "mu" if toks.len() == 2 => mu = Some(toks[1].parse().map_err(|_| malformed(line, l))?),
            _ => return Err(malformed(line, l)),
        }
    }
    let found = forward.iter().filter(|f| f.is_some()).count();
    if found != forward.len() {
        return Err(err(
            0,
            ParseErrorKind::CountMismatch {
                what: "arcs",
                expected: forward.len(),
                found,
            },
        ));
    }
    let forward = forward.into_iter().map(|f| f.expect("counted")).collect();
    let o = TreeOrientation::new(t.clone(), forward).map_err(|e| malformed(0, &e.to_string()))?;
    Ok((o, mu))
}

pub fn parse_wtree(text: &str) -> Result<WeightedTree, ParseError> {
    let mut lines = content_lines(text);
    let (hline, [b]) = header::<1>(&mut lines, "wtree")?;
    if b == 0 {
        return Err(malformed(hline, "tree needs at least one vertex"));
    }
    let mut weights: Vec<Option<u64>> = vec![None; b];
    let mut edges = EdgeCollector::new(b);
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks[0] {
            "v" if toks.len() == 3 => {
                let i: usize = toks[1].parse().map_err(|_| malformed(line, l))?;
                let w: u64 = toks[2].parse().map_err(|_| malformed(line, l))?;
                let i = vertex(line, i, b)?;
                if w == 0 {
                    return Err(err(line, ParseErrorKind::InvalidTree("weight must be positive".into())));
                }
                if weights[i].replace(w).is_some() {
                    return Err(malformed(line, l));
                }
            }
            "e" => {
                let [u, v] = parse_numbers::<2>(line, l, &toks[1..])?;
                edges.push(line, u, v, EdgeState::Undirected)?;
            }
            _ => return Err(malformed(line, l)),
        }
    }
    let weights = weights
        .into_iter()
        .enumerate()
        .map(|(i, w)| w.ok_or_else(|| err(0, ParseErrorKind::InvalidTree(format!("vertex {} has no weight", i + 1)))))
        .collect::<Result<Vec<u64>, _>>()?;
    WeightedTree::new(weights, edges.edges).map_err(|e| err(0, ParseErrorKind::InvalidTree(e.to_string())))
}

pub fn serialize_wtree(t: &WeightedTree) -> String {
    let mut out = format!("p wtree {}\n", t.len());
    for (i, w) in t.weights().iter().enumerate() {
        let _ = writeln!(out, "v {} {}", i + 1, w);
    }
    for &(u, v) in t.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

/// DIMACS CNF. Clauses may span lines; a `%` line ends the clause list.
pub fn parse_dimacs_cnf(text: &str) -> Result<Nae3SatInstance, ParseError> {
    let mut lines = content_lines(text);
    let (hline, [vars, count]) = header::<2>(&mut lines, "cnf")?;
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut last_line = hline;
    for (line, l) in lines {
        if l.starts_with('%') {
            break;
        }
        last_line = line;
        for tok in l.split_whitespace() {
            let lit: i64 = tok.parse().map_err(|_| malformed(line, l))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            let var = lit.unsigned_abs() as usize;
            if var > vars {
                return Err(err(line, ParseErrorKind::VertexOutOfRange { vertex: var, n: vars }));
            }
            current.push(Literal {
                var: var - 1,
                negated: lit < 0,
            });
        }
    }
    if !current.is_empty() {
        return Err(malformed(last_line, "clause not terminated by 0"));
    }
    if clauses.len() != count {
        return Err(err(
            hline,
            ParseErrorKind::CountMismatch {
                what: "clauses",
                expected: count,
                found: clauses.len(),
            },
        ));
    }
    Nae3SatInstance::new(vars, clauses).map_err(|e| err(0, ParseErrorKind::InvalidInstance(e.to_string())))
}

pub fn serialize_cnf(i: &Nae3SatInstance) -> String {
    let mut out = format!("p cnf {} {}\n", i.num_vars(), i.clauses().len());
    for clause in i.clauses() {
        for l in clause {
            let v = l.var as i64 + 1;
            let _ = write!(out, "{} ", if l.negated { -v } else { v });
        }
        out.push_str("0\n");
    }
    out
}

/// Graphviz rendering of an orientation.
pub fn orientation_dot(o: &Orientation) -> String {
    let mut out = String::from("digraph orientation {\n");
    for v in 0..o.graph().n() {
        let _ = writeln!(out, "  {};", v + 1);
    }
    for (u, v) in o.sorted_arcs() {
        let _ = writeln!(out, "  {} -> {};", u + 1, v + 1);
    }
    out.push_str("}\n");
    out
}
