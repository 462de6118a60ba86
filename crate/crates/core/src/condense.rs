//! Bridges, 2-edge-connected components, and contraction of a graph to its
//! vertex-weighted bridge tree.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Edge indices of all bridges of a connected graph, ascending.
///
/// Iterative low-link depth-first search, linear in `n + m`.
pub fn find_bridges(g: &Graph) -> Result<Vec<usize>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let flags = bridge_flags(g);
    Ok((0..g.m()).filter(|&e| flags[e]).collect())
}

/// `flags[e]` is true iff edge `e` is a bridge. Works on disconnected graphs.
pub(crate) fn bridge_flags(g: &Graph) -> Vec<bool> {
    let adj = g.adjacency();
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_bridge = vec![false; g.m()];
    let mut timer = 0;
    // (vertex, edge used to enter it, next adjacency slot)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push((root, usize::MAX, 0));
        while let Some(&mut (u, parent_edge, ref mut next)) = stack.last_mut() {
            if let Some(&(v, e)) = adj[u].get(*next) {
                *next += 1;
                if e == parent_edge {
                    continue;
                }
                if disc[v] == usize::MAX {
                    disc[v] = timer;
                    low[v] = timer;
                    timer += 1;
                    stack.push((v, e, 0));
                } else {
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] > disc[p] {
                        is_bridge[parent_edge] = true;
                    }
                }
            }
        }
    }
    is_bridge
}

/// A tree with a positive integer weight on every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedTree {
    weights: Vec<u64>,
    edges: Vec<(usize, usize)>,
}

impl WeightedTree {
    pub fn new(weights: Vec<u64>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let b = weights.len();
        if b == 0 {
            return Err(Error::InvalidTree("no vertices".into()));
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidTree(format!("vertex {i} has weight 0")));
        }
        if edges.len() != b - 1 {
            return Err(Error::InvalidTree(format!(
                "{} edges for {b} vertices",
                edges.len()
            )));
        }
        // Also rejects self-loops and duplicate edges.
        let g = Graph::new(b, edges.clone()).map_err(|e| Error::InvalidTree(e.to_string()))?;
        if !g.is_connected() {
            return Err(Error::InvalidTree("not connected".into()));
        }
        Ok(WeightedTree { weights, edges })
    }

    /// Star with the given center weight and one leaf per entry of `leaves`.
    pub fn star(center: u64, leaves: &[u64]) -> Result<Self> {
        let mut weights = vec![center];
        weights.extend_from_slice(leaves);
        let edges = (1..=leaves.len()).map(|i| (0, i)).collect();
        WeightedTree::new(weights, edges)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn total_weight(&self) -> u128 {
        self.weights.iter().map(|&w| u128::from(w)).sum()
    }

    /// `adj[v]` lists `(neighbor, edge index)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.len()];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        adj
    }

    /// Rooted view: parent vertex, parent edge, and a preorder listing.
    pub(crate) fn rooted(&self, root: usize) -> Rooted {
        let adj = self.adjacency();
        let b = self.len();
        let mut parent = vec![usize::MAX; b];
        let mut parent_edge = vec![usize::MAX; b];
        let mut order = Vec::with_capacity(b);
        let mut seen = vec![false; b];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(u) = stack.pop() {
            order.push(u);
            for &(v, e) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = u;
                    parent_edge[v] = e;
                    stack.push(v);
                }
            }
        }
        let mut subtree: Vec<u128> = self.weights.iter().map(|&w| u128::from(w)).collect();
        for &v in order.iter().rev() {
            if parent[v] != usize::MAX {
                subtree[parent[v]] += subtree[v];
            }
        }
        Rooted {
            parent,
            parent_edge,
            order,
            subtree,
        }
    }
}

pub(crate) struct Rooted {
    pub parent: Vec<usize>,
    pub parent_edge: Vec<usize>,
    /// Preorder: every vertex appears after its parent.
    pub order: Vec<usize>,
    /// Total weight of the subtree hanging at each vertex.
    pub subtree: Vec<u128>,
}

/// Correspondence between a graph and its bridge tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CondensationMap {
    /// Original vertex -> tree vertex.
    pub component_of: Vec<usize>,
    /// Tree vertex -> original vertices, ascending.
    pub members_of: Vec<Vec<usize>>,
    /// Tree edge -> the bridge of the graph it came from.
    pub bridge_of: Vec<usize>,
}

/// Contracts every 2-edge-connected component to one vertex weighted by its
/// size. Tree edge `i` is the image of bridge `map.bridge_of[i]`, with its
/// endpoints in the same order as the bridge's.
pub fn condense(g: &Graph) -> Result<(WeightedTree, CondensationMap)> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let flags = bridge_flags(g);
    let (component_of, count) = g.components_without(&flags);
    let mut members_of = vec![Vec::new(); count];
    for (v, &c) in component_of.iter().enumerate() {
        members_of[c].push(v);
    }
    let bridge_of: Vec<usize> = (0..g.m()).filter(|&e| flags[e]).collect();
    let tree_edges = bridge_of
        .iter()
        .map(|&e| {
            let (u, v) = g.edge(e);
            (component_of[u], component_of[v])
        })
        .collect();
    let weights = members_of.iter().map(|m| m.len() as u64).collect();
    let tree = WeightedTree::new(weights, tree_edges).map_err(|e| Error::Internal(e.to_string()))?;
    Ok((
        tree,
        CondensationMap {
            component_of,
            members_of,
            bridge_of,
        },
    ))
}
