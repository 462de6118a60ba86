use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use orient_core::exec::Execution;
use orient_core::format::{self, Summary};
use orient_core::gadgets::{
    assignment_to_orientation, nae3sat_to_graph, nae_count, partition_to_wto,
};
use orient_core::generate;
use orient_core::graph::Orientation;
use orient_core::min_reach::{comparability_completion_bruteforce, min_reachability, min_reachability_bruteforce};
use orient_core::oracle::{brute_force_orientation, Objective};
use orient_core::reach::count_reachability_with;
use orient_core::strong::{complete_strong, strong_orientation, CutDirection};
use orient_core::tree::{max_reachability_orientation, mu, optimal_tree_orientation};
use orient_core::wto::{brute_force_tree_orientation, wto_solve, ApproxParams, Guarantee};
use orient_core::Error;

use crate::error::{CliError, Kind};
use crate::report::{arcs_json, big, comments, one_based, Output};

type Result<T> = std::result::Result<T, CliError>;

fn orientation_output(o: &Orientation, r: u64, mut result: Value, notes: &[(&str, String)]) -> Output {
    let listing = format::write_orientation(o, Some(Summary::Reachability(r)));
    result["R"] = json!(r);
    result["arcs"] = arcs_json(o);
    result["listing"] = json!(listing);
    Output {
        result,
        text: comments(notes) + &listing,
        dot: Some(format::orientation_dot(o)),
    }
}

pub fn max_orient(text: &str, verify: bool) -> Result<Output> {
    let g = format::parse_graph(text)?;
    let res = max_reachability_orientation(&g)?;
    let r = res.reachability.r;
    let mut notes = vec![
        ("bridges", res.map.bridge_of.len().to_string()),
        ("components", res.tree.len().to_string()),
        ("mu", res.mu.mu.to_string()),
        ("internal_pairs", res.internal_pairs.to_string()),
    ];
    let mut result = json!({
        "n": g.n(),
        "m": g.m(),
        "bridges": res.map.bridge_of.len(),
        "components": res.tree.len(),
        "mu": big(res.mu.mu),
        "internal_pairs": res.internal_pairs,
    });
    if verify {
        // Re-read the emitted listing and count from scratch.
        let listing = format::write_orientation(&res.orientation, None);
        let back = format::parse_mixed(&listing)?
            .to_orientation()
            .ok_or_else(|| CliError::new(Kind::Other, "emitted listing is not a full orientation"))?;
        let recount = count_reachability_with(&back.digraph(), Execution::Sequential).r;
        let identity = res.mu.mu + u128::from(res.internal_pairs);
        if recount != r || identity != u128::from(r) {
            return Err(CliError::new(
                Kind::Verification,
                format!("R {r}, recount {recount}, mu + internal pairs {identity}"),
            ));
        }
        result["verified"] = json!(true);
        notes.push(("verified", "yes".into()));
    }
    Ok(orientation_output(&res.orientation, r, result, &notes))
}

/// `0.05` or `1/20`.
pub fn parse_epsilon(s: &str) -> std::result::Result<f64, String> {
    let value = match s.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
            let b: f64 = b.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
            a / b
        }
        None => s.trim().parse().map_err(|_| format!("not a number: {s:?}"))?,
    };
    if value.is_finite() && value > 0.0 && value <= 1.0 {
        Ok(value)
    } else {
        Err(format!("epsilon must lie in (0, 1], got {s}"))
    }
}

pub fn wto(text: &str, epsilon: f64, exact_budget: u64, oracle: bool) -> Result<Output> {
    let t = format::parse_wtree(text)?;
    let sol = wto_solve(&t, &ApproxParams { epsilon, budget: exact_budget })?;
    let rep = &sol.report;
    let guarantee = match sol.guarantee {
        Guarantee::Exact => "exact".to_string(),
        Guarantee::Approximate { epsilon } => format!("approximate {epsilon}"),
    };
    let join = |vs: &[usize]| one_based(vs).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    let mut notes = vec![
        ("guarantee", guarantee),
        ("centroid", (rep.centroid + 1).to_string()),
        ("toward", join(&rep.toward)),
        ("away", join(&rep.away)),
        ("partition_term", rep.partition_term.to_string()),
    ];
    let listing = format::write_tree_orientation(&sol.orientation, rep.mu);
    let mut result = json!({
        "mu": big(rep.mu),
        "guarantee": sol.guarantee,
        "centroid": rep.centroid + 1,
        "toward": one_based(&rep.toward),
        "away": one_based(&rep.away),
        "center_term": big(rep.center_term),
        "partition_term": big(rep.partition_term),
        "subtree_term": big(rep.subtree_term),
        "listing": listing,
    });
    if oracle {
        let (_, best) = brute_force_tree_orientation(&t)?;
        result["oracle_mu"] = big(best);
        result["matches_oracle"] = json!(best == rep.mu);
        notes.push(("oracle_mu", best.to_string()));
    }
    Ok(Output {
        result,
        text: comments(&notes) + &listing,
        dot: None,
    })
}

pub fn min_orient(text: &str, max_n: usize) -> Result<Output> {
    let g = format::parse_graph(text)?;
    let res = min_reachability(&g, max_n)?;
    let c_bar = res.r - g.m() as u64;
    let result = json!({
        "n": g.n(),
        "m": g.m(),
        "r": res.r,
        "c_bar": c_bar,
        "acyclic": res.orientation.is_acyclic(),
    });
    let notes = [("r", res.r.to_string()), ("c_bar", c_bar.to_string())];
    Ok(orientation_output(&res.orientation, res.r, result, &notes))
}

pub fn strong_orient(text: &str) -> Result<Output> {
    let g = format::parse_graph(text)?;
    let o = strong_orientation(&g)?;
    let r = o.reachability();
    let result = json!({ "n": g.n(), "m": g.m(), "strong": o.is_strongly_connected() });
    Ok(orientation_output(&o, r, result, &[]))
}

pub fn complete(text: &str) -> Result<Output> {
    let m = format::parse_mixed(text)?;
    match complete_strong(&m) {
        Ok(o) => {
            let r = o.reachability();
            let result = json!({ "feasible": true, "strong": o.is_strongly_connected() });
            Ok(orientation_output(&o, r, result, &[]))
        }
        Err(Error::OneWayCut(w)) => {
            let direction = match w.direction {
                CutDirection::OutOfSide => "out_of_side",
                CutDirection::IntoSide => "into_side",
            };
            let side = one_based(&w.side);
            let side_text = side.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
            let out = Output {
                result: json!({
                    "feasible": false,
                    "witness": { "kind": "one_way_cut", "side": side, "direction": direction },
                }),
                text: comments(&[
                    ("feasible", "no".into()),
                    ("one_way_cut", format!("{direction} {side_text}")),
                ]),
                dot: None,
            };
            Err(CliError::new(Kind::Infeasible, format!("one-way cut around {{{side_text}}}")).with_output(out))
        }
        Err(Error::Bridge { u, v, .. }) => {
            let out = Output {
                result: json!({
                    "feasible": false,
                    "witness": { "kind": "bridge", "edge": [u + 1, v + 1] },
                }),
                text: comments(&[("feasible", "no".into()), ("bridge", format!("{} {}", u + 1, v + 1))]),
                dot: None,
            };
            Err(CliError::new(Kind::Infeasible, format!("edge {} {} is a bridge", u + 1, v + 1)).with_output(out))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn check(text: &str, tree: Option<&str>) -> Result<Output> {
    if let Some(tree_text) = tree {
        let t = format::parse_wtree(tree_text)?;
        let (o, claimed) = format::parse_tree_orientation(&t, text)?;
        let value = mu(&o);
        let matches = claimed.is_none_or(|c| c == value);
        let out = Output {
            result: json!({ "mu": big(value), "claimed_mu": claimed.map(big), "matches": matches }),
            text: comments(&[("mu", value.to_string()), ("matches", yes_no(matches))]),
            dot: None,
        };
        return verdict(matches, out, || format!("listing claims mu {}, actual {value}", claimed.unwrap_or_default()));
    }
    let (m, summary) = format::parse_orientation_listing(text)?;
    let o = m
        .to_orientation()
        .ok_or_else(|| CliError::new(Kind::Parse, "listing leaves edges undirected"))?;
    let r = count_reachability_with(&o.digraph(), Execution::default()).r;
    let (strong, acyclic) = (o.is_strongly_connected(), o.is_acyclic());
    let claimed = match summary {
        None => None,
        Some(Summary::Reachability(c)) => Some(c),
        Some(Summary::Mu(_)) => {
            return Err(CliError::new(Kind::Parse, "a mu summary needs the tree (--tree)"));
        }
    };
    let matches = claimed.is_none_or(|c| c == r);
    let out = Output {
        result: json!({
            "n": o.graph().n(),
            "m": o.graph().m(),
            "strong": strong,
            "acyclic": acyclic,
            "R": r,
            "claimed_R": claimed,
            "matches": matches,
        }),
        text: comments(&[
            ("strong", yes_no(strong)),
            ("acyclic", yes_no(acyclic)),
            ("R", r.to_string()),
            ("matches", yes_no(matches)),
        ]),
        dot: Some(format::orientation_dot(&o)),
    };
    verdict(matches, out, || format!("listing claims R {}, actual {r}", claimed.unwrap_or_default()))
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.into()
}

fn verdict(ok: bool, out: Output, why: impl FnOnce() -> String) -> Result<Output> {
    if ok {
        Ok(out)
    } else {
        Err(CliError::new(Kind::Verification, why()).with_output(out))
    }
}

pub fn gadget_partition(numbers: &[u64], solve: bool) -> Result<Output> {
    let gadget = partition_to_wto(numbers)?;
    let tree_text = format::serialize_wtree(&gadget.tree);
    let mut notes = vec![
        ("sum", gadget.sum.to_string()),
        ("threshold", gadget.threshold.to_string()),
        ("odd_sum", yes_no(gadget.odd_sum)),
    ];
    let mut result = json!({
        "sum": gadget.sum,
        "threshold": big(gadget.threshold),
        "odd_sum": gadget.odd_sum,
        "tree": tree_text,
    });
    if solve {
        let (_, rep) = optimal_tree_orientation(&gadget.tree)?;
        let equal_split = !gadget.odd_sum && rep.mu == gadget.threshold;
        result["mu"] = big(rep.mu);
        result["equal_split"] = json!(equal_split);
        notes.push(("mu", rep.mu.to_string()));
        notes.push(("equal_split", yes_no(equal_split)));
    }
    Ok(Output {
        result,
        text: comments(&notes) + &tree_text,
        dot: None,
    })
}

/// `0`/`1` (or `F`/`T`) per variable; spaces and commas ignored.
pub fn parse_assignment(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .map(|c| match c {
            '1' | 'T' | 't' => Ok(true),
            '0' | 'F' | 'f' => Ok(false),
            _ => Err(CliError::new(Kind::Parse, format!("bad assignment character {c:?}"))),
        })
        .collect()
}

pub struct NaeOutput {
    pub output: Output,
    pub annotations: String,
}

pub fn gadget_nae3sat(text: &str, assignment: Option<&str>) -> Result<NaeOutput> {
    let inst = format::parse_dimacs_cnf(text)?;
    let (g, ann) = nae3sat_to_graph(&inst)?;
    let annotations = serde_json::to_string_pretty(&ann.one_based()).map_err(anyhow::Error::from)?;
    let notes = vec![("vertices", g.n().to_string()), ("edges", g.m().to_string())];
    let mut result = json!({ "vertices": g.n(), "edges": g.m() });
    let output = match assignment {
        None => {
            let graph_text = format::serialize_graph(&g);
            result["graph"] = json!(graph_text);
            Output {
                result,
                text: comments(&notes) + &graph_text,
                dot: None,
            }
        }
        Some(bits) => {
            let a = parse_assignment(bits)?;
            let o = assignment_to_orientation(&inst, &g, &ann, &a)?;
            let x = nae_count(&inst, &a)?;
            let m = inst.clauses().len();
            result["nae_satisfied"] = json!(x);
            result["clauses"] = json!(m);
            result["expected_R"] = json!(g.m() + 3 * m - 2 * x);
            let mut notes = notes;
            notes.push(("nae_satisfied", x.to_string()));
            orientation_output(&o, o.reachability(), result, &notes)
        }
    };
    Ok(NaeOutput { output, annotations })
}

pub fn oracle_tree(text: &str) -> Result<Output> {
    let t = format::parse_wtree(text)?;
    let (o, best) = brute_force_tree_orientation(&t)?;
    let listing = format::write_tree_orientation(&o, best);
    Ok(Output {
        result: json!({ "mu": big(best), "listing": listing }),
        text: listing,
        dot: None,
    })
}

pub fn oracle_graph(text: &str, min: bool) -> Result<Output> {
    let g = format::parse_graph(text)?;
    let objective = if min { Objective::Min } else { Objective::Max };
    let (o, r) = brute_force_orientation(&g, objective, Execution::default())?;
    let result = json!({ "objective": if min { "min" } else { "max" } });
    Ok(orientation_output(&o, r, result, &[]))
}

pub fn oracle_min(text: &str) -> Result<Output> {
    let g = format::parse_graph(text)?;
    let res = min_reachability_bruteforce(&g)?;
    let completion = comparability_completion_bruteforce(&g)?;
    let identity = res.r == (g.m() + completion.c_bar) as u64;
    let added: Vec<[usize; 2]> = completion.added.iter().map(|&(u, v)| [u + 1, v + 1]).collect();
    let result = json!({
        "r": res.r,
        "c_bar": completion.c_bar,
        "added": added,
        "identity_holds": identity,
    });
    let notes = [
        ("r", res.r.to_string()),
        ("c_bar", completion.c_bar.to_string()),
        ("identity_holds", yes_no(identity)),
    ];
    let out = orientation_output(&res.orientation, res.r, result, &notes);
    verdict(identity, out, || "r differs from |E| + c_bar".into())
}

fn generated(text: String) -> Output {
    Output {
        result: json!({ "text": text }),
        text,
        dot: None,
    }
}

pub fn gen_tree(b: usize, max_weight: u64, seed: u64) -> Result<Output> {
    if b == 0 || max_weight == 0 {
        return Err(CliError::new(Kind::Parse, "need at least one vertex and positive weights"));
    }
    let t = generate::weighted_tree(b, max_weight, &mut ChaCha8Rng::seed_from_u64(seed));
    Ok(generated(format::serialize_wtree(&t)))
}

pub fn gen_graph(n: usize, m: Option<usize>, two_edge_connected: bool, chords: usize, seed: u64) -> Result<Output> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if n == 0 {
        return Err(CliError::new(Kind::Parse, "need at least one vertex"));
    }
    let g = if two_edge_connected {
        if n == 2 {
            return Err(CliError::new(Kind::Infeasible, "no simple 2-edge-connected graph has 2 vertices"));
        }
        generate::two_edge_connected_graph(n, chords, &mut rng)
    } else {
        generate::connected_graph(n, m.unwrap_or(2 * n), &mut rng)
    };
    Ok(generated(format::serialize_graph(&g)))
}

pub fn gen_cnf(vars: usize, clauses: usize, seed: u64) -> Result<Output> {
    if vars == 0 {
        return Err(CliError::new(Kind::Parse, "need at least one variable"));
    }
    let i = generate::cnf(vars, clauses, &mut ChaCha8Rng::seed_from_u64(seed));
    Ok(generated(format::serialize_cnf(&i)))
}
