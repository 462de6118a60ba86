//! Hardness-reduction instance generators and certificate checks.
//!
//! * PARTITION to weighted tree orientation: a star whose center weighs the
//!   total `S` of the numbers, one leaf per number, threshold `5 (S/2)^2`.
//! * NOT-ALL-EQUAL 3SAT to minimum reachability orientation: one edge per
//!   variable, one 9-cycle per clause, each literal tied to its variable edge
//!   by two paths of length 2.
//!
//! Clause cycle geometry: positions `0..9`, literal edges at `(0,1)`,
//! `(3,4)`, `(6,7)` with the literal's T vertex at the lower position, and
//! darkened vertices at positions `2, 5, 8`. A literal edge oriented
//! `T -> F` reads as the literal being true.

use serde::{Deserialize, Serialize};

use crate::condense::WeightedTree;
use crate::error::{Error, Result};
use crate::exec::{map_indices, Execution};
use crate::graph::{Graph, Orientation};
use crate::reach::{count_reachability, count_reachability_small};

pub const MAX_BRUTE_FORCE_VARS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn positive(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub fn negative(var: usize) -> Self {
        Literal { var, negated: true }
    }

    pub fn value(self, assignment: &[bool]) -> bool {
        assignment[self.var] != self.negated
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nae3SatInstance {
    num_vars: usize,
    clauses: Vec<[Literal; 3]>,
}

impl Nae3SatInstance {
    /// Clauses with one or two literals are padded by repeating their last
    /// literal.
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        let mut padded = Vec::with_capacity(clauses.len());
        for (j, clause) in clauses.into_iter().enumerate() {
            if clause.is_empty() || clause.len() > 3 {
                return Err(Error::InvalidInstance(format!(
                    "clause {j} has {} literals, expected 1 to 3",
                    clause.len()
                )));
            }
            if let Some(l) = clause.iter().find(|l| l.var >= num_vars) {
                return Err(Error::InvalidInstance(format!(
                    "clause {j} uses variable {} of {num_vars}",
                    l.var
                )));
            }
            let last = clause[clause.len() - 1];
            padded.push([
                clause[0],
                clause.get(1).copied().unwrap_or(last),
                clause.get(2).copied().unwrap_or(last),
            ]);
        }
        Ok(Nae3SatInstance {
            num_vars,
            clauses: padded,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    fn check_assignment(&self, assignment: &[bool]) -> Result<()> {
        if assignment.len() != self.num_vars {
            return Err(Error::LengthMismatch {
                expected: self.num_vars,
                found: assignment.len(),
            });
        }
        Ok(())
    }
}

pub fn clause_nae_satisfied(clause: &[Literal; 3], assignment: &[bool]) -> bool {
    let trues = clause.iter().filter(|l| l.value(assignment)).count();
    trues != 0 && trues != 3
}

/// Clauses with at least one true and at least one false literal.
pub fn nae_count(i: &Nae3SatInstance, assignment: &[bool]) -> Result<usize> {
    i.check_assignment(assignment)?;
    Ok(i.clauses
        .iter()
        .filter(|c| clause_nae_satisfied(c, assignment))
        .count())
}

/// Best assignment by enumerating all `2^vars`; ties go to the lowest
/// bit pattern (variable 0 in the lowest bit).
pub fn max_nae_bruteforce(i: &Nae3SatInstance) -> Result<(usize, Vec<bool>)> {
    if i.num_vars > MAX_BRUTE_FORCE_VARS {
        return Err(Error::TooLarge {
            what: "variables",
            size: i.num_vars,
            max: MAX_BRUTE_FORCE_VARS,
        });
    }
    let decode = |bits: u64| (0..i.num_vars).map(|v| bits >> v & 1 == 1).collect::<Vec<_>>();
    let mut best = (0, 0u64);
    for bits in 0..1u64 << i.num_vars {
        let count = nae_count(i, &decode(bits))?;
        if count > best.0 {
            best = (count, bits);
        }
    }
    Ok((best.0, decode(best.1)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WtoGadget {
    pub tree: WeightedTree,
    /// `5 (S/2)^2`, rounded up when `S` is odd.
    pub threshold: u128,
    pub sum: u64,
    /// An odd total has no equal split; the instance is a NO instance.
    pub odd_sum: bool,
}

/// Star with center weight `S = sum(a)` and leaves `a`: its optimum reaches
/// the threshold exactly when `a` splits into two equal halves.
pub fn partition_to_wto(a: &[u64]) -> Result<WtoGadget> {
    if a.is_empty() {
        return Err(Error::InvalidInstance("empty PARTITION instance".into()));
    }
    if a.contains(&0) {
        return Err(Error::InvalidInstance("PARTITION numbers must be positive".into()));
    }
    let sum = a
        .iter()
        .try_fold(0u64, |acc, &x| acc.checked_add(x))
        .ok_or_else(|| Error::InvalidInstance("sum overflows 64 bits".into()))?;
    let tree = WeightedTree::star(sum, a)?;
    let s = u128::from(sum);
    Ok(WtoGadget {
        tree,
        threshold: (5 * s * s).div_ceil(4),
        sum,
        odd_sum: sum % 2 == 1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableGadget {
    /// Vertex `xT`.
    pub t: usize,
    /// Vertex `xF`.
    pub f: usize,
    /// Edge `(xT, xF)`.
    pub edge: usize,
}

/// A length-2 path from a clause cycle vertex to a variable vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectorPath {
    pub cycle_vertex: usize,
    pub midpoint: usize,
    pub variable_vertex: usize,
    /// `(cycle_vertex, midpoint)` and `(midpoint, variable_vertex)`.
    pub edges: [usize; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiteralGadget {
    pub literal: Literal,
    /// Literal edge `(t, f)` on the clause cycle.
    pub t: usize,
    pub f: usize,
    pub edge: usize,
    /// Connectors leaving `t` and `f`, in that order.
    pub connectors: [ConnectorPath; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseGadget {
    /// Cycle vertices by position.
    pub cycle: [usize; 9],
    /// `cycle_edges[p]` joins positions `p` and `p + 1 mod 9`.
    pub cycle_edges: [usize; 9],
    pub literals: [LiteralGadget; 3],
    pub darkened: [usize; 3],
}

impl ClauseGadget {
    /// Cycle edges not carrying a literal.
    pub fn free_edges(&self) -> [usize; 6] {
        let e = &self.cycle_edges;
        [e[1], e[2], e[4], e[5], e[7], e[8]]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetAnnotations {
    pub variables: Vec<VariableGadget>,
    pub clauses: Vec<ClauseGadget>,
}

impl GadgetAnnotations {
    /// Copy with every vertex and edge id shifted by one, matching the
    /// 1-based text formats.
    pub fn one_based(&self) -> GadgetAnnotations {
        let mut a = self.clone();
        for v in &mut a.variables {
            v.t += 1;
            v.f += 1;
            v.edge += 1;
        }
        for c in &mut a.clauses {
            c.cycle.iter_mut().for_each(|x| *x += 1);
            c.cycle_edges.iter_mut().for_each(|x| *x += 1);
            c.darkened.iter_mut().for_each(|x| *x += 1);
            for l in &mut c.literals {
                l.t += 1;
                l.f += 1;
                l.edge += 1;
                for p in &mut l.connectors {
                    p.cycle_vertex += 1;
                    p.midpoint += 1;
                    p.variable_vertex += 1;
                    p.edges.iter_mut().for_each(|x| *x += 1);
                }
            }
        }
        a
    }
}

pub const LITERAL_POSITIONS: [usize; 3] = [0, 3, 6];
pub const DARKENED_POSITIONS: [usize; 3] = [2, 5, 8];

/// Builds the minimum-reachability instance for `i`.
///
/// Vertices: `2x` and `2x + 1` are `xT` and `xF`; clause `j` then takes 15
/// consecutive ids (9 cycle vertices, 6 midpoints). Edges: the variable edges
/// first, then 21 per clause (9 cycle edges, 12 connector edges).
pub fn nae3sat_to_graph(i: &Nae3SatInstance) -> Result<(Graph, GadgetAnnotations)> {
    let nv = i.num_vars();
    let mut edges = Vec::with_capacity(nv + 21 * i.clauses().len());
    let mut variables = Vec::with_capacity(nv);
    for x in 0..nv {
        variables.push(VariableGadget {
            t: 2 * x,
            f: 2 * x + 1,
            edge: edges.len(),
        });
        edges.push((2 * x, 2 * x + 1));
    }
    let mut clauses = Vec::with_capacity(i.clauses().len());
    for (j, clause) in i.clauses().iter().enumerate() {
        let base = 2 * nv + 15 * j;
        let cycle: [usize; 9] = std::array::from_fn(|p| base + p);
        let cycle_edges: [usize; 9] = std::array::from_fn(|p| {
            edges.push((cycle[p], cycle[(p + 1) % 9]));
            edges.len() - 1
        });
        let literals: [LiteralGadget; 3] = std::array::from_fn(|k| {
            let lit = clause[k];
            let (t, f) = (cycle[LITERAL_POSITIONS[k]], cycle[LITERAL_POSITIONS[k] + 1]);
            let var = variables[lit.var];
            // Positive: T joins xF and F joins xT; negated: T-xT and F-xF.
            let (t_target, f_target) = if lit.negated {
                (var.t, var.f)
            } else {
                (var.f, var.t)
            };
            let mut connector = |cycle_vertex: usize, midpoint: usize, variable_vertex: usize| {
                edges.push((cycle_vertex, midpoint));
                edges.push((midpoint, variable_vertex));
                ConnectorPath {
                    cycle_vertex,
                    midpoint,
                    variable_vertex,
                    edges: [edges.len() - 2, edges.len() - 1],
                }
            };
            let connectors = [
                connector(t, base + 9 + 2 * k, t_target),
                connector(f, base + 10 + 2 * k, f_target),
            ];
            LiteralGadget {
                literal: lit,
                t,
                f,
                edge: cycle_edges[LITERAL_POSITIONS[k]],
                connectors,
            }
        });
        clauses.push(ClauseGadget {
            cycle,
            cycle_edges,
            literals,
            darkened: DARKENED_POSITIONS.map(|p| cycle[p]),
        });
    }
    let n = 2 * nv + 15 * i.clauses().len();
    let g = Graph::new(n.max(1), edges).map_err(|e| Error::Internal(e.to_string()))?;
    Ok((g, GadgetAnnotations { variables, clauses }))
}

fn set_arc(g: &Graph, forward: &mut [bool], edge: usize, tail: usize) {
    forward[edge] = g.edge(edge).0 == tail;
}

/// Extra reachable pairs inside one clause subgraph (cycle, midpoints, and
/// the variable endpoints of its connectors) beyond its own arcs.
fn clause_extra_pairs(g: &Graph, clause: &ClauseGadget, forward: &[bool]) -> u64 {
    let mut edges: Vec<usize> = clause.cycle_edges.to_vec();
    for l in &clause.literals {
        for p in &l.connectors {
            edges.extend_from_slice(&p.edges);
        }
    }
    let mut local: Vec<usize> = Vec::with_capacity(24);
    let id = |v: usize, local: &mut Vec<usize>| match local.iter().position(|&x| x == v) {
        Some(i) => i,
        None => {
            local.push(v);
            local.len() - 1
        }
    };
    let arcs: Vec<(usize, usize)> = edges
        .iter()
        .map(|&e| {
            let (u, v) = g.edge(e);
            let (a, b) = if forward[e] { (u, v) } else { (v, u) };
            (id(a, &mut local), id(b, &mut local))
        })
        .collect();
    count_reachability_small(local.len(), arcs.iter().copied()) - arcs.len() as u64
}

/// Orientation realizing `assignment` with `R = |E| + 3m - 2x`, where `x`
/// counts the not-all-equal satisfied clauses.
///
/// Variable edges point at `xT` for true variables. Every 6-cycle formed by a
/// variable edge, a literal edge, and their two connectors is oriented
/// alternately. The six free edges of each clause cycle are chosen by
/// exhaustive search minimizing the clause's extra reachable pairs, which
/// must come to 1 for a satisfied clause and 3 otherwise.
pub fn assignment_to_orientation(
    i: &Nae3SatInstance,
    g: &Graph,
    ann: &GadgetAnnotations,
    assignment: &[bool],
) -> Result<Orientation> {
    i.check_assignment(assignment)?;
    let mut forward = vec![false; g.m()];
    // A variable vertex is a source if its variable edge leaves it.
    let mut is_source = vec![false; g.n()];
    for (x, var) in ann.variables.iter().enumerate() {
        let (tail, head) = if assignment[x] { (var.f, var.t) } else { (var.t, var.f) };
        set_arc(g, &mut forward, var.edge, tail);
        is_source[tail] = true;
        is_source[head] = false;
    }
    for clause in &ann.clauses {
        for l in &clause.literals {
            for p in &l.connectors {
                // Alternating around the 6-cycle: the cycle vertex matches
                // the variable vertex two steps away, the midpoint opposes it.
                if is_source[p.variable_vertex] {
                    set_arc(g, &mut forward, p.edges[1], p.variable_vertex);
                    set_arc(g, &mut forward, p.edges[0], p.cycle_vertex);
                } else {
                    set_arc(g, &mut forward, p.edges[1], p.midpoint);
                    set_arc(g, &mut forward, p.edges[0], p.midpoint);
                }
            }
            let t_is_source = is_source[l.connectors[0].variable_vertex];
            set_arc(g, &mut forward, l.edge, if t_is_source { l.t } else { l.f });
        }
    }
    let choices = map_indices(Execution::default(), ann.clauses.len(), |j| {
        let clause = &ann.clauses[j];
        let free = clause.free_edges();
        let mut local = forward.clone();
        let mut best: Option<(u64, u32)> = None;
        for mask in 0u32..64 {
            for (b, &e) in free.iter().enumerate() {
                local[e] = mask >> b & 1 == 1;
            }
            let extra = clause_extra_pairs(g, clause, &local);
            if best.is_none_or(|(be, _)| extra < be) {
                best = Some((extra, mask));
            }
        }
        best.expect("64 candidates")
    });
    for (j, (extra, mask)) in choices.into_iter().enumerate() {
        let expected = if clause_nae_satisfied(&i.clauses()[j], assignment) { 1 } else { 3 };
        if extra != expected {
            return Err(Error::Internal(format!(
                "clause {j}: local minimum {extra} extra pairs, expected {expected}"
            )));
        }
        for (b, &e) in ann.clauses[j].free_edges().iter().enumerate() {
            forward[e] = mask >> b & 1 == 1;
        }
    }
    Orientation::new(g.clone(), forward)
}

/// Assignment read off the variable edges, with the guaranteed number of
/// satisfied clauses `ceil((|E| + 3m - R) / 2)` (floored at zero).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentBound {
    pub assignment: Vec<bool>,
    pub bound: u64,
    pub r: u64,
}

pub fn orientation_to_assignment(
    i: &Nae3SatInstance,
    ann: &GadgetAnnotations,
    o: &Orientation,
) -> Result<AssignmentBound> {
    let g = o.graph();
    let assignment = ann
        .variables
        .iter()
        .map(|var| o.arc(var.edge).1 == var.t)
        .collect();
    let r = count_reachability(&o.digraph()).r;
    let budget = (g.m() + 3 * i.clauses().len()) as i128 - i128::from(r);
    let bound = if budget <= 0 { 0 } else { (budget as u64).div_ceil(2) };
    Ok(AssignmentBound { assignment, bound, r })
}
