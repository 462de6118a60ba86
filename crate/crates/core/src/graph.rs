//! Undirected graphs, orientations, partial orientations, and plain digraphs.
//!
//! Vertices are `0..n` internally; the text formats in [`crate::format`]
//! shift them to 1-based.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple undirected graph: no self-loops, no parallel edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut seen: HashMap<(usize, usize), usize> = HashMap::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { edge: i, vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { edge: i, vertex: u });
            }
            if let Some(&first) = seen.get(&(u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge { edge: i, first });
            }
            seen.insert((u.min(v), u.max(v)), i);
        }
        Ok(Graph { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> (usize, usize) {
        self.edges[i]
    }

    /// `adj[v]` lists `(neighbor, edge index)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        adj
    }

    /// Dense adjacency matrix; only sensible for small graphs.
    pub fn adjacency_matrix(&self) -> Vec<Vec<bool>> {
        let mut mat = vec![vec![false; self.n]; self.n];
        for &(u, v) in &self.edges {
            mat[u][v] = true;
            mat[v][u] = true;
        }
        mat
    }

    pub fn edge_index(&self) -> HashMap<(usize, usize), usize> {
        self.edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| ((u.min(v), u.max(v)), i))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components_without(&[]).1 == 1
    }

    /// Connected components after deleting the edges flagged in `removed`
    /// (an empty slice removes nothing). Returns the component label of each
    /// vertex and the number of components.
    pub fn components_without(&self, removed: &[bool]) -> (Vec<usize>, usize) {
        let adj = self.adjacency();
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &(w, e) in &adj[u] {
                    if removed.get(e).copied().unwrap_or(false) || label[w] != usize::MAX {
                        continue;
                    }
                    label[w] = count;
                    stack.push(w);
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// The same graph with extra edges appended.
    pub fn with_edges(&self, extra: &[(usize, usize)]) -> Result<Graph> {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(extra);
        Graph::new(self.n, edges)
    }
}

/// A direction for every edge of a graph. `forward[i]` means edge
/// `(u, v) = graph.edge(i)` is directed `u -> v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Orientation {
    graph: Graph,
    forward: Vec<bool>,
}

impl Orientation {
    pub fn new(graph: Graph, forward: Vec<bool>) -> Result<Self> {
        if forward.len() != graph.m() {
            return Err(Error::LengthMismatch {
                expected: graph.m(),
                found: forward.len(),
            });
        }
        Ok(Orientation { graph, forward })
    }

    /// Orientation whose `i`-th edge direction is bit `i` of `mask`.
    pub fn from_mask(graph: &Graph, mask: u64) -> Self {
        let forward = (0..graph.m()).map(|i| mask >> i & 1 == 1).collect();
        Orientation {
            graph: graph.clone(),
            forward,
        }
    }

    /// Orients every edge from the endpoint that comes first in `order`.
    /// The result is acyclic with `order` as a topological order.
    pub fn from_linear_order(graph: &Graph, order: &[usize]) -> Self {
        let mut pos = vec![0; graph.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let forward = graph.edges().iter().map(|&(u, v)| pos[u] < pos[v]).collect();
        Orientation {
            graph: graph.clone(),
            forward,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn forward(&self) -> &[bool] {
        &self.forward
    }

    pub fn arc(&self, i: usize) -> (usize, usize) {
        let (u, v) = self.graph.edge(i);
        if self.forward[i] {
            (u, v)
        } else {
            (v, u)
        }
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.graph.m()).map(|i| self.arc(i))
    }

    /// Arcs sorted by `(tail, head)`, the order used for printed output.
    pub fn sorted_arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs: Vec<_> = self.arcs().collect();
        arcs.sort_unstable();
        arcs
    }

    pub fn reversed(&self) -> Self {
        Orientation {
            graph: self.graph.clone(),
            forward: self.forward.iter().map(|f| !f).collect(),
        }
    }

    pub fn digraph(&self) -> Digraph {
        Digraph::from_arcs(self.graph.n(), self.arcs())
    }

    pub fn to_mixed(&self) -> MixedGraph {
        let state = self
            .forward
            .iter()
            .map(|&f| if f { EdgeState::Forward } else { EdgeState::Backward })
            .collect();
        MixedGraph {
            graph: self.graph.clone(),
            state,
        }
    }

    /// Bit `i` set iff edge `i` is forward. Only defined for `m <= 64`.
    pub fn mask(&self) -> u64 {
        debug_assert!(self.graph.m() <= 64);
        self.forward
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &f)| acc | (u64::from(f) << i))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeState {
    Undirected,
    /// `u -> v` for edge `(u, v)`.
    Forward,
    /// `v -> u` for edge `(u, v)`.
    Backward,
}

/// A partially oriented graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MixedGraph {
    graph: Graph,
    state: Vec<EdgeState>,
}

impl MixedGraph {
    pub fn new(graph: Graph, state: Vec<EdgeState>) -> Result<Self> {
        if state.len() != graph.m() {
            return Err(Error::LengthMismatch {
                expected: graph.m(),
                found: state.len(),
            });
        }
        Ok(MixedGraph { graph, state })
    }

    pub fn undirected(graph: Graph) -> Self {
        let state = vec![EdgeState::Undirected; graph.m()];
        MixedGraph { graph, state }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn state(&self) -> &[EdgeState] {
        &self.state
    }

    pub fn set_state(&mut self, edge: usize, state: EdgeState) {
        self.state[edge] = state;
    }

    pub fn undirected_edges(&self) -> Vec<usize> {
        (0..self.state.len())
            .filter(|&i| self.state[i] == EdgeState::Undirected)
            .collect()
    }

    /// Directed view with every undirected edge replaced by two opposing arcs.
    pub fn traversal_digraph(&self) -> Digraph {
        let mut arcs = Vec::with_capacity(self.state.len() * 2);
        for (i, &(u, v)) in self.graph.edges().iter().enumerate() {
            match self.state[i] {
                EdgeState::Forward => arcs.push((u, v)),
                EdgeState::Backward => arcs.push((v, u)),
                EdgeState::Undirected => {
                    arcs.push((u, v));
                    arcs.push((v, u));
                }
            }
        }
        Digraph::from_arcs(self.graph.n(), arcs)
    }

    /// The orientation, if every edge is already directed.
    pub fn to_orientation(&self) -> Option<Orientation> {
        let forward = self
            .state
            .iter()
            .map(|s| match s {
                EdgeState::Forward => Some(true),
                EdgeState::Backward => Some(false),
                EdgeState::Undirected => None,
            })
            .collect::<Option<Vec<bool>>>()?;
        Some(Orientation {
            graph: self.graph.clone(),
            forward,
        })
    }

    /// Whether `o` agrees with every arc fixed here.
    pub fn is_extended_by(&self, o: &Orientation) -> bool {
        o.graph() == &self.graph
            && self.state.iter().zip(o.forward()).all(|(s, &f)| match s {
                EdgeState::Undirected => true,
                EdgeState::Forward => f,
                EdgeState::Backward => !f,
            })
    }
}

/// Out-adjacency digraph. Parallel arcs are tolerated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
    arc_count: usize,
}

impl Digraph {
    pub fn from_arcs<I: IntoIterator<Item = (usize, usize)>>(n: usize, arcs: I) -> Self {
        let mut out = vec![Vec::new(); n];
        let mut arc_count = 0;
        for (u, v) in arcs {
            out[u].push(v);
            arc_count += 1;
        }
        Digraph { out, arc_count }
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn out(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn reverse(&self) -> Digraph {
        let mut out = vec![Vec::new(); self.n()];
        for (u, heads) in self.out.iter().enumerate() {
            for &v in heads {
                out[v].push(u);
            }
        }
        Digraph {
            out,
            arc_count: self.arc_count,
        }
    }
}
