//! Minimum-reachability orientation and comparability completion.
//!
//! Minimal orientations are acyclic, so the minimum can be searched over
//! orientations induced by vertex orderings. Its excess over `|E|` equals the
//! fewest edges whose addition leaves a transitively orientable graph.

use std::collections::{HashMap, HashSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{find_first, map_indices, Execution};
use crate::graph::{Graph, Orientation};

pub const DEFAULT_MAX_N_ORDERS: usize = 10;
pub const DEFAULT_MAX_N_COMPLETION: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinReachResult {
    pub r: u64,
    /// Acyclic, with exactly `r` reachable pairs.
    pub orientation: Orientation,
    /// `r - |E|`: arcs the transitive closure adds.
    pub closure_edges_added: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Completion {
    pub c_bar: usize,
    /// Edges to add, as vertex pairs `(u, v)` with `u < v`.
    pub added: Vec<(usize, usize)>,
}

/// Direct check: for every pair of arcs `a -> b -> c`, the edge `ac` exists
/// and is oriented `a -> c`.
pub fn is_transitive(o: &Orientation) -> bool {
    let arcs: HashSet<(usize, usize)> = o.arcs().collect();
    let d = o.digraph();
    o.arcs().all(|(a, b)| d.out(b).iter().all(|&c| arcs.contains(&(a, c))))
}

/// A transitive orientation of `g`, if `g` is a comparability graph.
///
/// Works through implication classes on a shrinking edge set: orient a seed
/// edge, propagate `a->b, bc in E, ac not in E => c->b` and
/// `a->b, ac in E, bc not in E => a->c`, then delete the class. A class that
/// forces both directions of an edge means no transitive orientation exists.
pub fn is_transitively_orientable(g: &Graph) -> Option<Orientation> {
    let mut remaining: Vec<HashSet<usize>> = vec![HashSet::new(); g.n()];
    for &(u, v) in g.edges() {
        remaining[u].insert(v);
        remaining[v].insert(u);
    }
    let mut tail_of: HashMap<(usize, usize), usize> = HashMap::with_capacity(g.m());
    for &(u, v) in g.edges() {
        if !remaining[u].contains(&v) {
            continue;
        }
        let mut class: HashSet<(usize, usize)> = HashSet::new();
        let mut stack = vec![(u, v)];
        class.insert((u, v));
        while let Some((a, b)) = stack.pop() {
            let mut forced = Vec::new();
            for &c in &remaining[a] {
                if c != b && !remaining[b].contains(&c) {
                    forced.push((a, c));
                }
            }
            for &c in &remaining[b] {
                if c != a && !remaining[a].contains(&c) {
                    forced.push((c, b));
                }
            }
            for (x, y) in forced {
                if class.contains(&(y, x)) {
                    return None;
                }
                if class.insert((x, y)) {
                    stack.push((x, y));
                }
            }
        }
        for (a, b) in class {
            remaining[a].remove(&b);
            remaining[b].remove(&a);
            tail_of.insert((a.min(b), a.max(b)), a);
        }
    }
    let forward = g
        .edges()
        .iter()
        .map(|&(u, v)| tail_of[&(u.min(v), u.max(v))] == u)
        .collect();
    let o = Orientation::new(g.clone(), forward).ok()?;
    debug_assert!(is_transitive(&o), "implication classes produced a non-transitive orientation");
    Some(o)
}

/// Number of arcs of the transitive closure of an acyclic orientation.
pub fn transitive_closure_count(o: &Orientation) -> Result<u64> {
    if !o.is_acyclic() {
        return Err(Error::Cyclic);
    }
    Ok(o.reachability())
}

/// `r(G)` for small graphs, trying the comparability fast path first.
pub fn min_reachability(g: &Graph, max_n: usize) -> Result<MinReachResult> {
    if let Some(o) = is_transitively_orientable(g) {
        return Ok(MinReachResult {
            r: g.m() as u64,
            orientation: o,
            closure_edges_added: 0,
        });
    }
    min_reachability_bruteforce_with(g, max_n, Execution::default())
}

pub fn min_reachability_bruteforce(g: &Graph) -> Result<MinReachResult> {
    min_reachability_bruteforce_with(g, DEFAULT_MAX_N_ORDERS, Execution::default())
}

/// Minimum of `R` over orientations induced by all `n!` vertex orders, split
/// across workers by the first vertex. Repeated orientations are skipped.
pub fn min_reachability_bruteforce_with(
    g: &Graph,
    max_n: usize,
    exec: Execution,
) -> Result<MinReachResult> {
    if g.n() > max_n {
        return Err(Error::TooLarge {
            what: "vertices",
            size: g.n(),
            max: max_n,
        });
    }
    if g.m() > 64 || g.n() > 64 {
        return Err(Error::TooLarge {
            what: "edges",
            size: g.m(),
            max: 64,
        });
    }
    let n = g.n();
    let edges = g.edges();
    let per_first = map_indices(exec, n, |first| {
        let rest: Vec<usize> = (0..n).filter(|&v| v != first).collect();
        let mut seen: HashSet<u64> = HashSet::new();
        let mut best: Option<(u64, u64)> = None;
        let mut pos = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        for tail in rest.iter().copied().permutations(rest.len()) {
            order.clear();
            order.push(first);
            order.extend(tail);
            for (i, &v) in order.iter().enumerate() {
                pos[v] = i;
            }
            let mask = edges
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &(u, v))| acc | (u64::from(pos[u] < pos[v]) << i));
            if !seen.insert(mask) {
                continue;
            }
            let r = acyclic_reach_count(n, edges, mask, &order);
            if best.is_none_or(|b| (r, mask) < b) {
                best = Some((r, mask));
            }
        }
        best
    });
    let (r, mask) = per_first
        .into_iter()
        .flatten()
        .min()
        .ok_or_else(|| Error::Internal("no vertex order enumerated".into()))?;
    Ok(MinReachResult {
        r,
        orientation: Orientation::from_mask(g, mask),
        closure_edges_added: r - g.m() as u64,
    })
}

/// Reachability of the orientation `mask`, given one of its topological
/// orders: reach sets fill in reverse order.
fn acyclic_reach_count(n: usize, edges: &[(usize, usize)], mask: u64, order: &[usize]) -> u64 {
    let mut out = [0u64; 64];
    for (i, &(u, v)) in edges.iter().enumerate() {
        if mask >> i & 1 == 1 {
            out[u] |= 1 << v;
        } else {
            out[v] |= 1 << u;
        }
    }
    let mut reach = [0u64; 64];
    for &v in order.iter().rev() {
        let mut acc = out[v];
        let mut bits = out[v];
        while bits != 0 {
            let w = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            acc |= reach[w];
        }
        reach[v] = acc;
    }
    reach[..n].iter().map(|r| u64::from(r.count_ones())).sum()
}

pub fn comparability_completion_bruteforce(g: &Graph) -> Result<Completion> {
    comparability_completion_bruteforce_with(g, DEFAULT_MAX_N_COMPLETION, Execution::default())
}

/// Fewest added edges that make `g` a comparability graph, by trying all
/// non-edge subsets of size 0, 1, 2, ... in lexicographic order.
pub fn comparability_completion_bruteforce_with(
    g: &Graph,
    max_n: usize,
    exec: Execution,
) -> Result<Completion> {
    if g.n() > max_n {
        return Err(Error::TooLarge {
            what: "vertices",
            size: g.n(),
            max: max_n,
        });
    }
    let adj = g.adjacency_matrix();
    let non_edges: Vec<(usize, usize)> = (0..g.n())
        .tuple_combinations()
        .filter(|&(u, v)| !adj[u][v])
        .collect();
    const BATCH: usize = 4096;
    for k in 0..=non_edges.len() {
        let mut combos = non_edges.iter().copied().combinations(k);
        loop {
            let batch: Vec<Vec<(usize, usize)>> = combos.by_ref().take(BATCH).collect();
            if batch.is_empty() {
                break;
            }
            let hit = find_first(exec, &batch, |extra| {
                let h = g.with_edges(extra).ok()?;
                is_transitively_orientable(&h).map(|_| extra.clone())
            });
            if let Some(added) = hit {
                return Ok(Completion { c_bar: k, added });
            }
        }
    }
    Err(Error::Internal("complete graph reported non-comparability".into()))
}
