//! Exhaustive orientation search over all `2^|E|` direction vectors.

use crate::error::{Error, Result};
use crate::exec::{map_chunks, Execution};
use crate::graph::{Graph, Orientation};
use crate::reach::count_reachability_small;

pub const MAX_BRUTE_FORCE_EDGES: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Max,
    Min,
}

/// Best orientation under `objective`; ties go to the lowest mask.
pub fn brute_force_orientation(
    g: &Graph,
    objective: Objective,
    exec: Execution,
) -> Result<(Orientation, u64)> {
    if g.m() > MAX_BRUTE_FORCE_EDGES {
        return Err(Error::TooLarge {
            what: "edges",
            size: g.m(),
            max: MAX_BRUTE_FORCE_EDGES,
        });
    }
    if g.n() > 64 {
        return Err(Error::TooLarge {
            what: "vertices",
            size: g.n(),
            max: 64,
        });
    }
    let edges = g.edges();
    let eval = |mask: u64| {
        count_reachability_small(
            g.n(),
            edges.iter().enumerate().map(|(i, &(u, v))| {
                if mask >> i & 1 == 1 {
                    (u, v)
                } else {
                    (v, u)
                }
            }),
        )
    };
    let better = |a: u64, b: u64| match objective {
        Objective::Max => a > b,
        Objective::Min => a < b,
    };
    let (r, mask) = map_chunks(exec, 1u64 << g.m(), |range| {
        let mut best: Option<(u64, u64)> = None;
        for mask in range {
            let r = eval(mask);
            if best.is_none_or(|(br, _)| better(r, br)) {
                best = Some((r, mask));
            }
        }
        best
    })
    .into_iter()
    .flatten()
    .fold(None, |acc: Option<(u64, u64)>, (r, m)| match acc {
        Some((br, _)) if !better(r, br) => acc,
        _ => Some((r, m)),
    })
    .ok_or_else(|| Error::Internal("empty enumeration".into()))?;
    Ok((Orientation::from_mask(g, mask), r))
}

pub fn brute_force_max_reachability(g: &Graph) -> Result<(Orientation, u64)> {
    brute_force_orientation(g, Objective::Max, Execution::default())
}

pub fn brute_force_min_reachability(g: &Graph) -> Result<(Orientation, u64)> {
    brute_force_orientation(g, Objective::Min, Execution::default())
}

/// Every orientation attaining the optimum, as direction masks.
pub fn all_optimal_masks(g: &Graph, objective: Objective) -> Result<(u64, Vec<u64>)> {
    let (_, best) = brute_force_orientation(g, objective, Execution::default())?;
    let masks = map_chunks(Execution::default(), 1u64 << g.m(), |range| {
        range
            .filter(|&mask| Orientation::from_mask(g, mask).reachability() == best)
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    Ok((best, masks))
}
