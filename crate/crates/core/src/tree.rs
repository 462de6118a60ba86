//! Exact maximum-reachability orientation.
//!
//! An optimal orientation of a vertex-weighted tree makes every vertex either
//! reach a centroid `c` or be reached from it, and orients each subtree
//! hanging off `c` uniformly toward or away from `c`. The objective then
//! splits into
//!
//! ```text
//! mu = ||c|| * ||T - c||  +  (sum over toward-subtrees) * (sum over away-subtrees)
//!      + sum of mu* over the subtrees
//! ```
//!
//! where only the middle term depends on the choice, so the whole problem is a
//! balanced two-way partition of the subtree weights. A graph is reduced to
//! this by contracting its 2-edge-connected components.

use serde::{Deserialize, Serialize};

use crate::condense::{condense, CondensationMap, WeightedTree};
use crate::error::{Error, Result};
use crate::exec::{map_indices, Execution};
use crate::graph::{Graph, Orientation};
use crate::reach::{count_reachability, ReachabilityReport};
use crate::strong::dfs_strong_directions;

/// Default cap on the exact partition table (cells = half the total weight
/// plus one).
pub const DEFAULT_EXACT_BUDGET: u64 = 1_000_000;

/// One direction per tree edge; `forward[i]` means `edges[i].0 -> edges[i].1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeOrientation {
    tree: WeightedTree,
    forward: Vec<bool>,
}

impl TreeOrientation {
    pub fn new(tree: WeightedTree, forward: Vec<bool>) -> Result<Self> {
        if forward.len() != tree.edges().len() {
            return Err(Error::LengthMismatch {
                expected: tree.edges().len(),
                found: forward.len(),
            });
        }
        Ok(TreeOrientation { tree, forward })
    }

    pub fn from_mask(tree: &WeightedTree, mask: u64) -> Self {
        let forward = (0..tree.edges().len()).map(|i| mask >> i & 1 == 1).collect();
        TreeOrientation {
            tree: tree.clone(),
            forward,
        }
    }

    pub fn tree(&self) -> &WeightedTree {
        &self.tree
    }

    pub fn forward(&self) -> &[bool] {
        &self.forward
    }

    pub fn arc(&self, i: usize) -> (usize, usize) {
        let (u, v) = self.tree.edges()[i];
        if self.forward[i] {
            (u, v)
        } else {
            (v, u)
        }
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.forward.len()).map(|i| self.arc(i))
    }

    pub fn sorted_arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs: Vec<_> = self.arcs().collect();
        arcs.sort_unstable();
        arcs
    }

    fn out_lists(&self, reversed: bool) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.tree.len()];
        for (u, v) in self.arcs() {
            if reversed {
                out[v].push(u);
            } else {
                out[u].push(v);
            }
        }
        out
    }

    /// Vertices with a directed path from `w`, including `w`.
    pub fn out_set(&self, w: usize) -> Vec<bool> {
        closure_from(&self.out_lists(false), w)
    }

    /// Vertices with a directed path to `w`, including `w`.
    pub fn in_set(&self, w: usize) -> Vec<bool> {
        closure_from(&self.out_lists(true), w)
    }
}

fn closure_from(out: &[Vec<usize>], w: usize) -> Vec<bool> {
    let mut seen = vec![false; out.len()];
    seen[w] = true;
    let mut stack = vec![w];
    while let Some(u) = stack.pop() {
        for &v in &out[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

/// Weighted reachability: sum of `wt(v) * wt(w)` over ordered pairs `v != w`
/// with a directed path from `v` to `w`.
pub fn mu(t: &TreeOrientation) -> u128 {
    mu_with(t, Execution::default())
}

pub fn mu_with(t: &TreeOrientation, exec: Execution) -> u128 {
    let out = t.out_lists(false);
    let weights = t.tree.weights();
    let per_source = map_indices(exec, weights.len(), |s| {
        let reach = closure_from(&out, s);
        let reached: u128 = (0..weights.len())
            .filter(|&v| v != s && reach[v])
            .map(|v| u128::from(weights[v]))
            .sum();
        u128::from(weights[s]) * reached
    });
    per_source.into_iter().sum()
}

/// All weighted centroids, ascending: one vertex or two adjacent ones.
pub fn find_centroid(t: &WeightedTree) -> Vec<usize> {
    let rooted = t.rooted(0);
    let total = t.total_weight();
    let mut heaviest: Vec<u128> = rooted.subtree.iter().map(|&s| total - s).collect();
    for v in 0..t.len() {
        let p = rooted.parent[v];
        if p != usize::MAX {
            heaviest[p] = heaviest[p].max(rooted.subtree[v]);
        }
    }
    let best = heaviest.iter().copied().min().unwrap_or(0);
    (0..t.len()).filter(|&v| heaviest[v] == best).collect()
}

/// Value of the orientation of `t` with every edge pointing toward `root`
/// (equivalently, every edge pointing away): each vertex times the weight of
/// its proper descendants.
pub fn mu_star(t: &WeightedTree, root: usize) -> u128 {
    let rooted = t.rooted(root);
    (0..t.len())
        .map(|y| {
            let w = u128::from(t.weight(y));
            w * (rooted.subtree[y] - w)
        })
        .sum()
}

/// A two-way split of a list of weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    /// Indices of the chosen side, ascending.
    pub subset: Vec<usize>,
    /// Weight of the chosen side.
    pub sum: u64,
    /// `sum * (total - sum)`.
    pub product: u128,
}

impl Partition {
    pub(crate) fn new(weights: &[u64], mut subset: Vec<usize>) -> Self {
        subset.sort_unstable();
        let total: u128 = weights.iter().map(|&w| u128::from(w)).sum();
        let sum: u64 = subset.iter().map(|&i| weights[i]).sum();
        Partition {
            product: u128::from(sum) * (total - u128::from(sum)),
            subset,
            sum,
        }
    }
}

pub(crate) fn checked_total(weights: &[u64]) -> Result<u64> {
    weights
        .iter()
        .try_fold(0u64, |acc, &w| acc.checked_add(w))
        .ok_or_else(|| Error::InvalidInstance("total weight overflows 64 bits".into()))
}

/// Subset maximizing `p * (W - p)` by subset-sum dynamic programming over
/// sums `0..=W/2`. `budget` bounds the table length.
pub fn balanced_partition_exact(weights: &[u64], budget: u64) -> Result<Partition> {
    let total = checked_total(weights)?;
    let half = total / 2;
    let cells = half.saturating_add(1);
    if cells > budget {
        return Err(Error::BudgetExceeded { cells, budget });
    }
    const UNREACHED: u32 = u32::MAX;
    // first[s]: index of the item whose addition first made `s` reachable.
    let mut first = vec![UNREACHED; cells as usize];
    let half = half as usize;
    for (i, &w) in weights.iter().enumerate() {
        let w = w as usize;
        if w > half {
            continue;
        }
        for s in (w..=half).rev() {
            if first[s] == UNREACHED && (s == w || first[s - w] != UNREACHED) {
                first[s] = i as u32;
            }
        }
    }
    let best = (0..=half).rev().find(|&s| s == 0 || first[s] != UNREACHED).unwrap_or(0);
    let mut subset = Vec::new();
    let mut s = best;
    while s > 0 {
        let i = first[s] as usize;
        subset.push(i);
        s -= weights[i] as usize;
    }
    Ok(Partition::new(weights, subset))
}

/// Structure of an orientation built around a centroid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuReport {
    pub mu: u128,
    pub centroid: usize,
    /// `||c|| * ||T - c||`.
    pub center_term: u128,
    /// Product of the toward-side and away-side subtree weights.
    pub partition_term: u128,
    /// Sum of `mu*` over the subtrees hanging off the centroid.
    pub subtree_term: u128,
    /// Centroid neighbors whose subtrees point toward the centroid.
    pub toward: Vec<usize>,
    /// Centroid neighbors whose subtrees point away from it.
    pub away: Vec<usize>,
}

/// Orients `t` around its (lowest-numbered) centroid, splitting the
/// centroid's subtrees with `split`.
pub(crate) fn orient_at_centroid<F>(t: &WeightedTree, split: F) -> Result<(TreeOrientation, MuReport)>
where
    F: FnOnce(&[u64]) -> Result<Partition>,
{
    let c = find_centroid(t)[0];
    let rooted = t.rooted(c);
    let mut children: Vec<usize> = (0..t.len()).filter(|&v| rooted.parent[v] == c).collect();
    children.sort_unstable();
    let sizes = children
        .iter()
        .map(|&v| u64::try_from(rooted.subtree[v]))
        .collect::<std::result::Result<Vec<u64>, _>>()
        .map_err(|_| Error::InvalidInstance("subtree weight overflows 64 bits".into()))?;
    let partition = split(&sizes)?;

    let mut toward_child = vec![false; t.len()];
    for &i in &partition.subset {
        toward_child[children[i]] = true;
    }
    // Propagate each top-level choice down its subtree (preorder).
    let mut toward = vec![false; t.len()];
    for &v in &rooted.order {
        let p = rooted.parent[v];
        if p == usize::MAX {
            continue;
        }
        toward[v] = if p == c { toward_child[v] } else { toward[p] };
    }
    let mut forward = vec![false; t.edges().len()];
    for (v, &e) in rooted.parent_edge.iter().enumerate() {
        if e == usize::MAX {
            continue;
        }
        let tail = if toward[v] { v } else { rooted.parent[v] };
        forward[e] = t.edges()[e].0 == tail;
    }

    let wc = u128::from(t.weight(c));
    let center_term = wc * (t.total_weight() - wc);
    let subtree_term = mu_star(t, c) - center_term;
    let (toward_side, away_side): (Vec<usize>, Vec<usize>) =
        children.iter().partition(|&&v| toward_child[v]);
    let report = MuReport {
        mu: center_term + partition.product + subtree_term,
        centroid: c,
        center_term,
        partition_term: partition.product,
        subtree_term,
        toward: toward_side,
        away: away_side,
    };
    Ok((TreeOrientation::new(t.clone(), forward)?, report))
}

/// Maximum-`mu` orientation with the default exact budget.
pub fn optimal_tree_orientation(t: &WeightedTree) -> Result<(TreeOrientation, MuReport)> {
    optimal_tree_orientation_with_budget(t, DEFAULT_EXACT_BUDGET)
}

pub fn optimal_tree_orientation_with_budget(
    t: &WeightedTree,
    budget: u64,
) -> Result<(TreeOrientation, MuReport)> {
    orient_at_centroid(t, |sizes| balanced_partition_exact(sizes, budget))
}

/// Result of [`max_reachability_orientation`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxOrientation {
    pub orientation: Orientation,
    /// Counted on the produced orientation.
    pub reachability: ReachabilityReport,
    pub tree: WeightedTree,
    pub map: CondensationMap,
    pub mu: MuReport,
    /// Sum of `|C| * (|C| - 1)` over the 2-edge-connected components.
    pub internal_pairs: u64,
}

/// Reachability-maximizing orientation of a connected graph.
///
/// Bridges take the directions of an optimal orientation of the bridge tree;
/// each 2-edge-connected component is oriented strongly.
pub fn max_reachability_orientation(g: &Graph) -> Result<MaxOrientation> {
    let (tree, map) = condense(g)?;
    // Tree weights sum to n, so the exact table always fits in memory.
    let (tree_orientation, report) = optimal_tree_orientation_with_budget(&tree, u64::MAX)?;
    let mut is_bridge = vec![false; g.m()];
    for &e in &map.bridge_of {
        is_bridge[e] = true;
    }
    let mut forward = dfs_strong_directions(g, &is_bridge);
    for (i, &e) in map.bridge_of.iter().enumerate() {
        forward[e] = tree_orientation.forward()[i];
    }
    let orientation = Orientation::new(g.clone(), forward)?;
    let reachability = count_reachability(&orientation.digraph());
    let internal_pairs = map
        .members_of
        .iter()
        .map(|m| (m.len() * (m.len() - 1)) as u64)
        .sum();
    Ok(MaxOrientation {
        orientation,
        reachability,
        tree,
        map,
        mu: report,
        internal_pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(weights: &[u64]) -> WeightedTree {
        let edges = (1..weights.len()).map(|i| (i - 1, i)).collect();
        WeightedTree::new(weights.to_vec(), edges).unwrap()
    }

    #[test]
    fn mu_small_cases() {
        let t = path(&[2, 3]);
        assert_eq!(mu(&TreeOrientation::new(t, vec![true]).unwrap()), 6);
        let p3 = path(&[1, 1, 1]);
        assert_eq!(mu(&TreeOrientation::new(p3, vec![true, true]).unwrap()), 3);
        // Star with center weight 2, leaves 1 and 1: one leaf in, one out.
        let star = WeightedTree::star(2, &[1, 1]).unwrap();
        let o = TreeOrientation::new(star, vec![false, true]).unwrap();
        assert_eq!(mu(&o), 5);
    }

    #[test]
    fn centroid_cases() {
        assert_eq!(find_centroid(&path(&[1, 1, 1])), vec![1]);
        assert_eq!(find_centroid(&path(&[5, 5])), vec![0, 1]);
        let star = WeightedTree::star(8, &[3, 3, 2]).unwrap();
        assert_eq!(find_centroid(&star), vec![0]);
        assert_eq!(find_centroid(&path(&[7])), vec![0]);
    }

    #[test]
    fn mu_star_cases() {
        assert_eq!(mu_star(&path(&[4]), 0), 0);
        assert_eq!(mu_star(&path(&[3, 2]), 0), 6);
        assert_eq!(mu_star(&path(&[1, 1, 1]), 0), 3);
    }

    #[test]
    fn exact_partition_cases() {
        let p = balanced_partition_exact(&[5, 5], 100).unwrap();
        assert_eq!((p.sum, p.product), (5, 25));
        let p = balanced_partition_exact(&[8, 1, 1], 100).unwrap();
        assert_eq!((p.sum, p.product), (2, 16));
        assert_eq!(p.subset, vec![1, 2]);
        let p = balanced_partition_exact(&[3, 1, 1, 2, 2, 1], 100).unwrap();
        assert_eq!((p.sum, p.product), (5, 25));
        let p = balanced_partition_exact(&[], 100).unwrap();
        assert_eq!((p.sum, p.product), (0, 0));
    }

    #[test]
    fn exact_partition_budget() {
        assert_eq!(
            balanced_partition_exact(&[10, 10], 5),
            Err(Error::BudgetExceeded { cells: 11, budget: 5 })
        );
    }

    #[test]
    fn optimal_small_trees() {
        let (o, r) = optimal_tree_orientation(&path(&[1, 1, 1])).unwrap();
        assert_eq!(r.mu, 3);
        assert_eq!(mu(&o), 3);

        let star = WeightedTree::star(4, &[2, 2]).unwrap();
        let (o, r) = optimal_tree_orientation(&star).unwrap();
        assert_eq!(r.mu, 20);
        assert_eq!(mu(&o), 20);

        let (o, r) = optimal_tree_orientation(&path(&[9])).unwrap();
        assert_eq!(r.mu, 0);
        assert!(o.forward().is_empty());

        let (o, r) = optimal_tree_orientation(&path(&[2, 3])).unwrap();
        assert_eq!((r.mu, mu(&o)), (6, 6));
    }

    #[test]
    fn max_orientation_examples() {
        let tri_pendant = Graph::new(4, vec![(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let res = max_reachability_orientation(&tri_pendant).unwrap();
        assert_eq!(res.reachability.r, 9);

        let two_triangles = Graph::new(
            6,
            vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)],
        )
        .unwrap();
        assert_eq!(max_reachability_orientation(&two_triangles).unwrap().reachability.r, 21);

        let single = Graph::new(1, vec![]).unwrap();
        assert_eq!(max_reachability_orientation(&single).unwrap().reachability.r, 0);
    }
}
