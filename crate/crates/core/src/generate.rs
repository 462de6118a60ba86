//! Seeded random instance generators.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::condense::WeightedTree;
use crate::gadgets::{Literal, Nae3SatInstance};
use crate::graph::{EdgeState, Graph, MixedGraph};

fn relabel(perm: &[usize], edges: &mut [(usize, usize)]) {
    for e in edges {
        *e = (perm[e.0], perm[e.1]);
    }
}

/// Random spanning tree plus random extra edges, `m` clamped to
/// `[n - 1, n(n - 1)/2]`.
pub fn connected_graph<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Graph {
    assert!(n >= 1);
    let max_m = n * (n - 1) / 2;
    let m = m.clamp(n - 1, max_m);
    let mut present = vec![vec![false; n]; n];
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for &(u, v) in &edges {
        present[u][v] = true;
    }
    let mut absent: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !present[u][v])
        .collect();
    absent.shuffle(rng);
    edges.extend(absent.into_iter().take(m - edges.len()));
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    relabel(&perm, &mut edges);
    edges.shuffle(rng);
    Graph::new(n, edges).expect("generator produces simple graphs")
}

/// Random 2-edge-connected graph on `n` vertices (`n = 1` or `n >= 3`),
/// grown by ears from a starting cycle, then given up to `chords` extra
/// edges.
pub fn two_edge_connected_graph<R: Rng + ?Sized>(n: usize, chords: usize, rng: &mut R) -> Graph {
    assert!(n == 1 || n >= 3, "no simple 2-edge-connected graph on 2 vertices");
    if n == 1 {
        return Graph::new(1, vec![]).expect("single vertex");
    }
    let mut present = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    let mut add = |u: usize, v: usize, edges: &mut Vec<(usize, usize)>| {
        present[u][v] = true;
        present[v][u] = true;
        edges.push((u, v));
    };
    let first = rng.gen_range(3..=n);
    for i in 0..first {
        add(i, (i + 1) % first, &mut edges);
    }
    let mut used = first;
    while used < n {
        let remaining = n - used;
        let a = rng.gen_range(0..used);
        let b = rng.gen_range(0..used);
        let min_len = if a == b { 2 } else { 1 };
        if remaining < min_len {
            continue;
        }
        let len = rng.gen_range(min_len..=remaining.min(4));
        let mut prev = a;
        for k in 0..len {
            add(prev, used + k, &mut edges);
            prev = used + k;
        }
        add(prev, b, &mut edges);
        used += len;
    }
    let mut absent: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !present[u][v])
        .collect();
    absent.shuffle(rng);
    edges.extend(absent.into_iter().take(chords));
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    relabel(&perm, &mut edges);
    Graph::new(n, edges).expect("generator produces simple graphs")
}

/// Random tree with weights uniform in `1..=max_weight`.
pub fn weighted_tree<R: Rng + ?Sized>(b: usize, max_weight: u64, rng: &mut R) -> WeightedTree {
    assert!(b >= 1 && max_weight >= 1);
    let mut edges: Vec<(usize, usize)> = (1..b).map(|v| (rng.gen_range(0..v), v)).collect();
    let mut perm: Vec<usize> = (0..b).collect();
    perm.shuffle(rng);
    relabel(&perm, &mut edges);
    let weights = (0..b).map(|_| rng.gen_range(1..=max_weight)).collect();
    WeightedTree::new(weights, edges).expect("generator produces trees")
}

/// Connected graph with each edge independently left undirected with
/// probability `1 - p_oriented`, otherwise given a random direction.
pub fn mixed_graph<R: Rng + ?Sized>(n: usize, m: usize, p_oriented: f64, rng: &mut R) -> MixedGraph {
    let g = connected_graph(n, m, rng);
    let state = (0..g.m())
        .map(|_| {
            if rng.gen_bool(p_oriented) {
                if rng.gen_bool(0.5) {
                    EdgeState::Forward
                } else {
                    EdgeState::Backward
                }
            } else {
                EdgeState::Undirected
            }
        })
        .collect();
    MixedGraph::new(g, state).expect("one state per edge")
}

/// Random 3-literal clauses over `vars` variables (repeats allowed).
pub fn cnf<R: Rng + ?Sized>(vars: usize, clauses: usize, rng: &mut R) -> Nae3SatInstance {
    assert!(vars >= 1);
    let clauses = (0..clauses)
        .map(|_| {
            (0..3)
                .map(|_| Literal {
                    var: rng.gen_range(0..vars),
                    negated: rng.gen_bool(0.5),
                })
                .collect()
        })
        .collect();
    Nae3SatInstance::new(vars, clauses).expect("literals in range")
}

/// `components` random 2-edge-connected blocks with sizes in `sizes`, joined
/// into one connected graph by `components - 1` bridges along a random tree.
pub fn bridged_blocks<R: Rng + ?Sized>(
    components: usize,
    sizes: std::ops::RangeInclusive<usize>,
    rng: &mut R,
) -> Graph {
    assert!(components >= 1);
    let mut edges = Vec::new();
    let mut offsets = Vec::with_capacity(components);
    let mut n = 0;
    for _ in 0..components {
        let mut size = rng.gen_range(sizes.clone());
        if size == 2 {
            size = 3;
        }
        let block = two_edge_connected_graph(size, size / 3, rng);
        edges.extend(block.edges().iter().map(|&(u, v)| (u + n, v + n)));
        offsets.push((n, size));
        n += size;
    }
    for c in 1..components {
        let p = rng.gen_range(0..c);
        let (po, ps) = offsets[p];
        let (co, cs) = offsets[c];
        edges.push((po + rng.gen_range(0..ps), co + rng.gen_range(0..cs)));
    }
    edges.shuffle(rng);
    Graph::new(n, edges).expect("generator produces simple graphs")
}
