//! Weighted tree orientation with arbitrary integer weights: the exact
//! pseudo-polynomial route, the approximation scheme for large weights, and
//! the exhaustive oracle.

use serde::{Deserialize, Serialize};

use crate::condense::WeightedTree;
use crate::error::{Error, Result};
use crate::exec::{map_chunks, Execution};
use crate::tree::{
    balanced_partition_exact, checked_total, orient_at_centroid, MuReport, Partition,
    TreeOrientation, DEFAULT_EXACT_BUDGET,
};

pub const MAX_BRUTE_FORCE_TREE: usize = 22;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApproxParams {
    /// Relative accuracy, in `(0, 1]`.
    pub epsilon: f64,
    /// Largest exact partition table (in cells) before switching to the
    /// approximation.
    pub budget: u64,
}

impl Default for ApproxParams {
    fn default() -> Self {
        ApproxParams {
            epsilon: 0.1,
            budget: DEFAULT_EXACT_BUDGET,
        }
    }
}

impl ApproxParams {
    fn validate(&self) -> Result<()> {
        validate_epsilon(self.epsilon)
    }
}

fn validate_epsilon(epsilon: f64) -> Result<()> {
    if epsilon.is_finite() && epsilon > 0.0 && epsilon <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidEpsilon(epsilon))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Guarantee {
    Exact,
    /// Within a factor `1 - epsilon` of optimal.
    Approximate { epsilon: f64 },
}

/// Trimmed subset-sum lists, one per prefix of `weights`. `lists[i]` holds
/// sums reachable with the first `i` weights.
pub(crate) fn trimmed_lists(weights: &[u64], epsilon: f64) -> Vec<Vec<u64>> {
    let delta = epsilon / (2.0 * weights.len().max(1) as f64);
    let mut lists = Vec::with_capacity(weights.len() + 1);
    lists.push(vec![0u64]);
    for &w in weights {
        let prev = lists.last().expect("lists start nonempty");
        let mut merged = Vec::with_capacity(prev.len() * 2);
        let (mut a, mut b) = (0, 0);
        while a < prev.len() || b < prev.len() {
            let next = match (prev.get(a), prev.get(b).map(|s| s + w)) {
                (Some(&x), Some(y)) if x <= y => {
                    a += 1;
                    x
                }
                (_, Some(y)) => {
                    b += 1;
                    y
                }
                (Some(&x), None) => {
                    a += 1;
                    x
                }
                (None, None) => unreachable!(),
            };
            match merged.last() {
                Some(&last) if (next as f64) <= last as f64 * (1.0 + delta) => {}
                _ => merged.push(next),
            }
        }
        lists.push(merged);
    }
    lists
}

/// Approximately balanced split: `product >= (1 - epsilon) * optimum`, with
/// `sum <= ceil(W / 2)`.
///
/// Keeps a sorted list of reachable subset sums, dropping any sum within a
/// factor `1 + epsilon / (2k)` of the previous kept one, and picks the
/// surviving sum with the largest `p * (W - p)`.
pub fn balanced_partition_fptas(weights: &[u64], epsilon: f64) -> Result<Partition> {
    validate_epsilon(epsilon)?;
    let total = checked_total(weights)?;
    let lists = trimmed_lists(weights, epsilon);
    let last = lists.last().expect("at least one list");
    let product = |s: u64| u128::from(s) * u128::from(total - s);
    let mut best = 0;
    for &s in last {
        if product(s) > product(best) {
            best = s;
        }
    }
    let mut subset = Vec::new();
    let mut s = best;
    for i in (0..weights.len()).rev() {
        if lists[i].binary_search(&s).is_ok() {
            continue;
        }
        s -= weights[i];
        debug_assert!(lists[i].binary_search(&s).is_ok());
        subset.push(i);
    }
    if best > total - best {
        let mut chosen = vec![false; weights.len()];
        for &i in &subset {
            chosen[i] = true;
        }
        subset = (0..weights.len()).filter(|&i| !chosen[i]).collect();
    }
    Ok(Partition::new(weights, subset))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WtoSolution {
    pub orientation: TreeOrientation,
    pub report: MuReport,
    pub guarantee: Guarantee,
}

/// Centroid decomposition with the partition solved exactly when its table
/// fits `params.budget`, approximately otherwise. The centroid and `mu*`
/// terms are exact, so the relative error of `mu` is at most that of the
/// partition product.
pub fn wto_solve(t: &WeightedTree, params: &ApproxParams) -> Result<WtoSolution> {
    params.validate()?;
    let mut guarantee = Guarantee::Exact;
    let (orientation, report) = orient_at_centroid(t, |sizes| {
        match balanced_partition_exact(sizes, params.budget) {
            Err(Error::BudgetExceeded { .. }) => {
                guarantee = Guarantee::Approximate {
                    epsilon: params.epsilon,
                };
                balanced_partition_fptas(sizes, params.epsilon)
            }
            other => other,
        }
    })?;
    Ok(WtoSolution {
        orientation,
        report,
        guarantee,
    })
}

pub fn brute_force_tree_orientation(t: &WeightedTree) -> Result<(TreeOrientation, u128)> {
    brute_force_tree_orientation_with(t, Execution::default())
}

/// Exhaustive search over all `2^(b-1)` edge-direction vectors. Ties go to
/// the lowest direction mask.
pub fn brute_force_tree_orientation_with(
    t: &WeightedTree,
    exec: Execution,
) -> Result<(TreeOrientation, u128)> {
    if t.len() > MAX_BRUTE_FORCE_TREE {
        return Err(Error::TooLarge {
            what: "tree vertices",
            size: t.len(),
            max: MAX_BRUTE_FORCE_TREE,
        });
    }
    let edges = t.edges();
    let weights = t.weights();
    let b = t.len();
    let eval = |mask: u64| -> u128 {
        let mut out = [0u32; MAX_BRUTE_FORCE_TREE];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                out[u] |= 1 << v;
            } else {
                out[v] |= 1 << u;
            }
        }
        let mut total = 0u128;
        for s in 0..b {
            let mut seen = out[s];
            let mut frontier = seen;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = out[v] & !seen;
                seen |= fresh;
                frontier |= fresh;
            }
            let mut reached = 0u128;
            let mut bits = seen;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                reached += u128::from(weights[v]);
            }
            total += u128::from(weights[s]) * reached;
        }
        total
    };
    let count = 1u64 << edges.len();
    let best = map_chunks(exec, count, |range| {
        let mut best: Option<(u128, u64)> = None;
        for mask in range {
            let value = eval(mask);
            if best.is_none_or(|(v, _)| value > v) {
                best = Some((value, mask));
            }
        }
        best
    })
    .into_iter()
    .flatten()
    .fold(None, |acc: Option<(u128, u64)>, (v, m)| match acc {
        Some((bv, _)) if bv >= v => acc,
        _ => Some((v, m)),
    })
    .unwrap_or((0, 0));
    Ok((TreeOrientation::from_mask(t, best.1), best.0))
}
