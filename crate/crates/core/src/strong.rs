//! Strong orientations: Robbins orientation of bridgeless graphs, one-way cut
//! detection in partial orientations, and strong completion.

use serde::{Deserialize, Serialize};

use crate::condense::bridge_flags;
use crate::error::{Error, Result};
use crate::graph::{EdgeState, Graph, MixedGraph, Orientation};
use crate::reach::strongly_connected_components;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CutDirection {
    /// Every cut edge leaves `side`.
    OutOfSide,
    /// Every cut edge enters `side`.
    IntoSide,
}

/// A vertex set whose boundary edges are all oriented, all the same way.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneWayCutWitness {
    /// Ascending, nonempty, not all of `V`.
    pub side: Vec<usize>,
    pub direction: CutDirection,
}

impl OneWayCutWitness {
    /// Checks the witness against `m` directly from the edge list.
    pub fn verify(&self, m: &MixedGraph) -> bool {
        let n = m.graph().n();
        if self.side.is_empty() || self.side.len() >= n {
            return false;
        }
        let mut inside = vec![false; n];
        for &v in &self.side {
            if v >= n {
                return false;
            }
            inside[v] = true;
        }
        let mut crossing = 0;
        for (i, &(u, v)) in m.graph().edges().iter().enumerate() {
            if inside[u] == inside[v] {
                continue;
            }
            crossing += 1;
            let (tail, _) = match m.state()[i] {
                EdgeState::Undirected => return false,
                EdgeState::Forward => (u, v),
                EdgeState::Backward => (v, u),
            };
            let leaves = inside[tail];
            match self.direction {
                CutDirection::OutOfSide if !leaves => return false,
                CutDirection::IntoSide if leaves => return false,
                _ => {}
            }
        }
        crossing > 0
    }
}

/// Depth-first orientation of every edge not flagged in `skip`: tree edges
/// parent to child, the rest descendant to ancestor. Skipped edges are left
/// `false`. Each bridgeless component of the unskipped subgraph comes out
/// strongly connected.
pub(crate) fn dfs_strong_directions(g: &Graph, skip: &[bool]) -> Vec<bool> {
    let adj = g.adjacency();
    let mut forward = vec![false; g.m()];
    let mut oriented = vec![false; g.m()];
    let mut visited = vec![false; g.n()];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for root in 0..g.n() {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        stack.push((root, 0));
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            let Some(&(v, e)) = adj[u].get(*next) else {
                stack.pop();
                continue;
            };
            *next += 1;
            if skip.get(e).copied().unwrap_or(false) || oriented[e] {
                continue;
            }
            // An unoriented edge to a visited vertex always points at an
            // ancestor: the descendant side would have claimed it first.
            oriented[e] = true;
            forward[e] = g.edge(e).0 == u;
            if !visited[v] {
                visited[v] = true;
                stack.push((v, 0));
            }
        }
    }
    forward
}

fn first_bridge(g: &Graph) -> Option<Error> {
    let flags = bridge_flags(g);
    flags.iter().position(|&b| b).map(|e| {
        let (u, v) = g.edge(e);
        Error::Bridge { edge: e, u, v }
    })
}

/// Strongly connected orientation of a 2-edge-connected graph.
pub fn strong_orientation(g: &Graph) -> Result<Orientation> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if let Some(err) = first_bridge(g) {
        return Err(err);
    }
    Orientation::new(g.clone(), dfs_strong_directions(g, &[]))
}

/// A one-way cut of `m`, if any exists. The underlying graph should be
/// connected.
///
/// With undirected edges traversable both ways, a one-way cut exists exactly
/// when that digraph is not strongly connected; a source component of its
/// condensation is then a witness side.
pub fn find_one_way_cut(m: &MixedGraph) -> Option<OneWayCutWitness> {
    let (comp, count) = strongly_connected_components(&m.traversal_digraph());
    if count <= 1 {
        return None;
    }
    let side = (0..comp.len()).filter(|&v| comp[v] == 0).collect();
    Some(OneWayCutWitness {
        side,
        direction: CutDirection::OutOfSide,
    })
}

pub fn can_complete_strong(m: &MixedGraph) -> bool {
    let g = m.graph();
    if g.n() == 1 {
        return true;
    }
    g.is_connected() && first_bridge(g).is_none() && find_one_way_cut(m).is_none()
}

/// Extends the fixed arcs of `m` to a strongly connected orientation.
///
/// Undirected edges are fixed one at a time, each in the first direction that
/// leaves the partial orientation free of one-way cuts.
pub fn complete_strong(m: &MixedGraph) -> Result<Orientation> {
    let g = m.graph();
    if g.n() > 1 {
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        if let Some(err) = first_bridge(g) {
            return Err(err);
        }
        if let Some(w) = find_one_way_cut(m) {
            return Err(Error::OneWayCut(w));
        }
    }
    let mut work = m.clone();
    for e in m.undirected_edges() {
        work.set_state(e, EdgeState::Forward);
        if find_one_way_cut(&work).is_some() {
            work.set_state(e, EdgeState::Backward);
            if find_one_way_cut(&work).is_some() {
                return Err(Error::Internal(format!(
                    "no direction of edge {e} keeps the partial orientation completable"
                )));
            }
        }
    }
    work.to_orientation()
        .ok_or_else(|| Error::Internal("completion left an edge undirected".into()))
}
