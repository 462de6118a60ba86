//! Reachability counting and strong-connectivity structure of digraphs.

use serde::{Deserialize, Serialize};

use crate::exec::{map_indices, Execution};
use crate::graph::{Digraph, Orientation};

/// Number of ordered pairs `(x, y)`, `x != y`, with a directed path from `x`
/// to `y`; optionally the pairs themselves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReachabilityReport {
    pub r: u64,
    pub pairs: Option<Vec<(usize, usize)>>,
}

/// Fixed-width bit row over `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub(crate) fn new(n: usize) -> Self {
        BitRow {
            words: vec![0; n.div_ceil(64)],
        }
    }

    #[inline]
    pub(crate) fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, 1u64 << (i % 64));
        let fresh = self.words[w] & b == 0;
        self.words[w] |= b;
        fresh
    }

    #[inline]
    pub(crate) fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub(crate) fn count(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// Bit row of everything reachable from `source` by a path of length >= 1.
/// `source` itself is included only if it lies on a directed cycle.
pub(crate) fn reach_row(d: &Digraph, source: usize) -> BitRow {
    let mut row = BitRow::new(d.n());
    let mut stack: Vec<usize> = d.out(source).to_vec();
    for &v in d.out(source) {
        row.insert(v);
    }
    while let Some(u) = stack.pop() {
        for &v in d.out(u) {
            if row.insert(v) {
                stack.push(v);
            }
        }
    }
    row
}

fn row_count_excluding(row: &BitRow, source: usize) -> u64 {
    row.count() - u64::from(row.contains(source))
}

pub fn count_reachability(d: &Digraph) -> ReachabilityReport {
    count_reachability_with(d, Execution::default())
}

/// One graph search per source, each writing its own bit row.
pub fn count_reachability_with(d: &Digraph, exec: Execution) -> ReachabilityReport {
    let counts = map_indices(exec, d.n(), |s| row_count_excluding(&reach_row(d, s), s));
    ReachabilityReport {
        r: counts.into_iter().sum(),
        pairs: None,
    }
}

/// Like [`count_reachability`] but also lists every reachable pair, sorted.
pub fn reachable_pairs(d: &Digraph) -> ReachabilityReport {
    let rows = map_indices(Execution::default(), d.n(), |s| {
        reach_row(d, s)
            .iter()
            .filter(|&t| t != s)
            .map(|t| (s, t))
            .collect::<Vec<_>>()
    });
    let pairs: Vec<(usize, usize)> = rows.into_iter().flatten().collect();
    ReachabilityReport {
        r: pairs.len() as u64,
        pairs: Some(pairs),
    }
}

/// Vertices reachable from `source` (including `source`).
pub fn reachable_from(d: &Digraph, source: usize) -> Vec<bool> {
    let row = reach_row(d, source);
    let mut out: Vec<bool> = (0..d.n()).map(|v| row.contains(v)).collect();
    out[source] = true;
    out
}

/// Reachability count for graphs with at most 64 vertices, using one machine
/// word per vertex. Used by the exhaustive enumerators.
pub(crate) fn count_reachability_small(n: usize, arcs: impl Iterator<Item = (usize, usize)>) -> u64 {
    debug_assert!(n <= 64);
    let mut out = [0u64; 64];
    for (u, v) in arcs {
        out[u] |= 1 << v;
    }
    let mut total = 0;
    for s in 0..n {
        let mut seen = out[s];
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = out[v] & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        total += u64::from((seen & !(1 << s)).count_ones());
    }
    total
}

/// Strongly connected components. Component ids follow a topological order
/// of the condensation: component 0 has no incoming arcs from other
/// components.
pub fn strongly_connected_components(d: &Digraph) -> (Vec<usize>, usize) {
    let n = d.n();
    // First pass: finishing order on d.
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for s in 0..n {
        if visited[s] {
            continue;
        }
        visited[s] = true;
        stack.push((s, 0));
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            if let Some(&v) = d.out(u).get(*next) {
                *next += 1;
                if !visited[v] {
                    visited[v] = true;
                    stack.push((v, 0));
                }
            } else {
                order.push(u);
                stack.pop();
            }
        }
    }
    // Second pass on the reverse graph, latest finisher first.
    let rev = d.reverse();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    let mut dfs = Vec::new();
    for &s in order.iter().rev() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        dfs.push(s);
        while let Some(u) = dfs.pop() {
            for &v in rev.out(u) {
                if comp[v] == usize::MAX {
                    comp[v] = count;
                    dfs.push(v);
                }
            }
        }
        count += 1;
    }
    (comp, count)
}

pub fn is_strongly_connected(d: &Digraph) -> bool {
    strongly_connected_components(d).1 <= 1
}

/// Kahn's algorithm: acyclic iff every vertex gets peeled.
pub fn is_acyclic(d: &Digraph) -> bool {
    topological_order(d).is_some()
}

pub fn topological_order(d: &Digraph) -> Option<Vec<usize>> {
    let n = d.n();
    let mut indeg = vec![0usize; n];
    for u in 0..n {
        for &v in d.out(u) {
            indeg[v] += 1;
        }
    }
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(u) = ready.pop() {
        order.push(u);
        for &v in d.out(u) {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                ready.push(v);
            }
        }
    }
    (order.len() == n).then_some(order)
}

impl Orientation {
    pub fn reachability(&self) -> u64 {
        count_reachability(&self.digraph()).r
    }

    pub fn is_strongly_connected(&self) -> bool {
        is_strongly_connected(&self.digraph())
    }

    pub fn is_acyclic(&self) -> bool {
        is_acyclic(&self.digraph())
    }
}
