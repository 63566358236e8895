//! Rewrite drivers.
//!
//! Each driver iterates its rewrites until none applies and returns the full
//! trace, including terminal bookkeeping entries that record how the final
//! graph compares with the candidate extremal families of the same order.
//! Drivers never assert optimality: the traces carry the measured values and
//! the test-suites judge them.

use std::collections::BTreeMap;

use crate::families::{FamilyId, FamilySpec};
use crate::graph::Graph;
use crate::invariants::{diametric_decomposition, invariant_profile, Profile};
use crate::rat::Rat;

use super::rules::{
    normalize_leaf_positions, t10_double_extend_equal, t1_leaf_merge, t2_balance,
    t4_leaf_to_diameter_end, t5_split_branches, t6_caterpillarize, t7_extend_single_centroid,
    t8_extend_two_centroids, t9_rebalance_centroid_leaves,
};
use super::{DeltaClaim, Relation, RuleId, TransformError, TransformTrace};

/// Final graph of a driver run: the last trace entry's output, or the input
/// itself when the driver had nothing to do.
pub fn terminal_graph(input: &Graph, trace: &[TransformTrace]) -> Graph {
    trace.last().map(|t| t.after.clone()).unwrap_or_else(|| input.clone())
}

fn is_path_graph(g: &Graph) -> bool {
    (0..g.n()).all(|v| g.degree(v) <= 2)
}

fn family_value(family: FamilyId, n: usize, value: impl Fn(&Profile) -> Rat) -> Option<Rat> {
    let g = FamilySpec { family, n }.build().ok()?;
    let p = invariant_profile(&g).ok()?;
    Some(value(&p))
}

fn compare_entry(
    terminal: &Graph,
    value: impl Fn(&Profile) -> Rat,
    candidates: &[(&str, FamilyId)],
) -> TransformTrace {
    let n = terminal.n();
    let p = invariant_profile(terminal).expect("terminal graph profile");
    let mut locals = BTreeMap::new();
    locals.insert("value_terminal".to_string(), value(&p));
    for &(name, family) in candidates {
        if let Some(v) = family_value(family, n, &value) {
            locals.insert(format!("value_{name}"), v);
        }
    }
    TransformTrace::build(
        RuleId::TerminalCompare,
        terminal.clone(),
        terminal.clone(),
        locals,
        BTreeMap::new(),
        |_, _| Vec::new(),
    )
}

/// Greedily raises the gap between average distance and proximity.
///
/// Merges pendant paths below the centroid (`t1`), switching to leg
/// balancing (`t2`) on three-leg spiders, until the tree is a balanced
/// spider, a path, or the four-equal-leg spider.  Unless the input was
/// already a balanced three-leg spider, a closing entry records the terminal
/// value next to the spider and path values of the same order.
pub fn drive_max_avgdist_minus_proximity(
    g: &Graph,
) -> Result<Vec<TransformTrace>, TransformError> {
    if !g.is_tree() {
        return Err(TransformError::NotATree);
    }
    if g.n() <= 2 {
        return Ok(Vec::new());
    }
    let budget = 3 * g.n();
    let mut steps = Vec::new();
    let mut cur = g.clone();
    let mut terminal_is_balanced_spider3 = false;
    loop {
        assert!(steps.len() < budget, "merge driver exceeded its step budget");
        match t1_leaf_merge(&cur) {
            Ok(tr) => {
                cur = tr.after.clone();
                steps.push(tr);
            }
            Err(TransformError::NoBranchVertex) | Err(TransformError::FourEqualLegSpider) => break,
            Err(TransformError::ThreeLegSpider) => match t2_balance(&cur) {
                Ok(tr) => {
                    cur = tr.after.clone();
                    steps.push(tr);
                }
                Err(TransformError::AlreadyBalanced) => {
                    terminal_is_balanced_spider3 = true;
                    break;
                }
                Err(other) => return Err(other),
            },
            Err(other) => return Err(other),
        }
    }
    if steps.is_empty() && terminal_is_balanced_spider3 {
        return Ok(steps);
    }
    steps.push(compare_entry(
        &cur,
        |p| p.avg_distance - p.proximity,
        &[
            ("spider3", FamilyId::Spider3),
            ("spider4", FamilyId::Spider4),
            ("path", FamilyId::Path),
        ],
    ));
    Ok(steps)
}

/// Greedily raises the gap between average eccentricity and remoteness.
///
/// Moves off-path leaves to the diametric end (`t4`), splitting the spine at
/// a straddling branch pair (`t5`) when branches sit on both halves, until
/// the tree is a path.  A path input yields an empty trace.
pub fn drive_max_ecc_minus_remoteness(g: &Graph) -> Result<Vec<TransformTrace>, TransformError> {
    if !g.is_tree() {
        return Err(TransformError::NotATree);
    }
    if g.n() <= 2 {
        return Ok(Vec::new());
    }
    let budget = 3 * g.n();
    let mut steps = Vec::new();
    let mut cur = g.clone();
    while !is_path_graph(&cur) {
        assert!(steps.len() < budget, "spread driver exceeded its step budget");
        match t4_leaf_to_diameter_end(&cur) {
            Ok(tr) => {
                cur = tr.after.clone();
                steps.push(tr);
            }
            Err(TransformError::BranchOnFarHalf) => {
                let tr = t5_split_branches(&cur)?;
                cur = tr.after.clone();
                steps.push(tr);
            }
            Err(other) => return Err(other),
        }
    }
    Ok(steps)
}

/// Single off-spine leaf of a diameter-(n-2) caterpillar, with its spine
/// position and the decomposition it came from.
fn lone_off_spine_leaf(g: &Graph) -> (usize, usize, Vec<usize>) {
    let decomp = diametric_decomposition(g).expect("tree decomposition");
    let pos = decomp
        .component_sizes
        .iter()
        .position(|&s| s > 0)
        .expect("diameter n-2 leaves exactly one vertex off the spine");
    let vi = decomp.path[pos];
    let w = *g
        .neighbors(vi)
        .iter()
        .find(|&&x| !decomp.path.contains(&x))
        .expect("carrier has an off-spine neighbour");
    (w, pos, decomp.path)
}

/// Moves the last off-spine leaf onto the diametric end, reaching the path.
fn terminal_extend(g: &Graph) -> TransformTrace {
    let (w, pos, spine) = lone_off_spine_leaf(g);
    let far = *spine.last().unwrap();
    let w_parent = spine[pos];
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(a, b)| (a, b) != (w.min(w_parent), w.max(w_parent)))
        .collect();
    edges.push((w.min(far), w.max(far)));
    let after = Graph::new(g.n(), &edges).expect("terminal extension output");

    let mut locals = BTreeMap::new();
    locals.insert("moved_leaf".to_string(), Rat::from_int(w as i128));
    locals.insert("from_position".to_string(), Rat::from_int(pos as i128));
    let mut verdicts = BTreeMap::new();
    verdicts.insert("single_off_spine_leaf".to_string(), true);

    TransformTrace::build(RuleId::TerminalExtend, g.clone(), after, locals, verdicts, |b, a| {
        vec![
            DeltaClaim::new(
                "diameter_delta",
                Relation::Eq,
                Rat::ONE,
                Rat::from_int(a.diameter as i128) - Rat::from_int(b.diameter as i128),
            ),
            // the source argues the radius grows along with the diameter
            // here; the recorded numbers decide whether that held
            DeltaClaim::new(
                "radius_delta",
                Relation::Eq,
                Rat::ONE,
                Rat::from_int(a.radius as i128) - Rat::from_int(b.radius as i128),
            ),
        ]
    })
}

/// Re-hangs the last off-spine leaf onto the spine centre, reaching the
/// central broom.
fn terminal_rehang(g: &Graph, centre: usize) -> TransformTrace {
    let (w, pos, spine) = lone_off_spine_leaf(g);
    let w_parent = spine[pos];
    let target = spine[centre];
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(a, b)| (a, b) != (w.min(w_parent), w.max(w_parent)))
        .collect();
    edges.push((w.min(target), w.max(target)));
    let after = Graph::new(g.n(), &edges).expect("terminal rehang output");

    let mut locals = BTreeMap::new();
    locals.insert("moved_leaf".to_string(), Rat::from_int(w as i128));
    locals.insert("from_position".to_string(), Rat::from_int(pos as i128));
    locals.insert("to_position".to_string(), Rat::from_int(centre as i128));
    let mut verdicts = BTreeMap::new();
    verdicts.insert("single_off_spine_leaf".to_string(), true);

    TransformTrace::build(RuleId::TerminalRehang, g.clone(), after, locals, verdicts, |b, a| {
        vec![
            DeltaClaim::new(
                "diameter_delta",
                Relation::Eq,
                Rat::ZERO,
                Rat::from_int(a.diameter as i128) - Rat::from_int(b.diameter as i128),
            ),
            DeltaClaim::new(
                "radius_delta",
                Relation::Eq,
                Rat::ZERO,
                Rat::from_int(a.radius as i128) - Rat::from_int(b.radius as i128),
            ),
            DeltaClaim::new("remoteness_delta", Relation::Le, Rat::ZERO, a.remoteness - b.remoteness),
        ]
    })
}

/// Greedily lowers the gap between remoteness and radius.
///
/// Flattens the tree into a caterpillar (`t6`), then repeatedly gathers
/// pendant leaves around the centroid and lengthens the spine
/// (`t7`/`t8`/`t9`/`t10`) until the diameter reaches `n-2`; the final leaf is
/// then extended onto the spine end (odd order) or re-hung at the spine
/// centre (even order), as the case analysis directs.  The closing entry
/// records the terminal value next to the path and broom values of the same
/// order without revisiting the terminal choice, with one exception: a path
/// input is never degraded, so an even-order path stays a path and the
/// comparison against the broom is only recorded.
pub fn drive_min_remoteness_minus_radius(
    g: &Graph,
) -> Result<Vec<TransformTrace>, TransformError> {
    if !g.is_tree() {
        return Err(TransformError::NotATree);
    }
    let n = g.n();
    if n <= 3 {
        // every tree this small is a path and already terminal
        return Ok(Vec::new());
    }
    let budget = 3 * n;
    let mut steps = Vec::new();
    let mut cur = g.clone();
    if !cur.is_caterpillar() {
        let tr = t6_caterpillarize(&cur)?;
        cur = tr.after.clone();
        steps.push(tr);
    }
    let value = |p: &Profile| p.remoteness - Rat::from_int(p.radius as i128);
    let candidates = [("path", FamilyId::Path), ("broom", FamilyId::Broom)];
    loop {
        assert!(steps.len() < budget, "shift driver exceeded its step budget");
        let profile = invariant_profile(&cur).expect("driver state stays a tree");
        let d = profile.diameter as usize;
        if d == n - 1 {
            if n % 2 == 1 && steps.is_empty() {
                return Ok(steps);
            }
            steps.push(compare_entry(&cur, value, &candidates));
            return Ok(steps);
        }
        if d == n - 2 {
            if n % 2 == 1 {
                let tr = terminal_extend(&cur);
                cur = tr.after.clone();
                steps.push(tr);
                continue;
            }
            let centre = (n - 2) / 2;
            let (_, pos, _) = lone_off_spine_leaf(&cur);
            if pos == centre {
                if steps.is_empty() {
                    // central broom input: already terminal
                    return Ok(steps);
                }
                steps.push(compare_entry(&cur, value, &candidates));
                return Ok(steps);
            }
            let tr = terminal_rehang(&cur, centre);
            cur = tr.after.clone();
            steps.push(tr);
            continue;
        }
        // diameter at most n-3: settle the leaves, then extend the spine
        if let Some(tr) = normalize_leaf_positions(&cur)? {
            cur = tr.after.clone();
            steps.push(tr);
            continue;
        }
        let profile = invariant_profile(&cur).expect("driver state stays a tree");
        let tr = if profile.centroids.len() == 1 {
            t7_extend_single_centroid(&cur)?
        } else {
            let (c1, c2) = (profile.centroids[0], profile.centroids[1]);
            if cur.degree(c1) >= 3 && cur.degree(c2) >= 3 {
                if cur.degree(c1) == cur.degree(c2) {
                    t10_double_extend_equal(&cur)?
                } else {
                    t9_rebalance_centroid_leaves(&cur)?
                }
            } else {
                t8_extend_two_centroids(&cur)?
            }
        };
        cur = tr.after.clone();
        steps.push(tr);
    }
}

/// Remoteness-radius gap at the checkpoints of a shift-driver trace: the
/// input graph, the end of each paired spine extension, and every terminal
/// adjustment.  Intermediate unpaired extensions may raise the gap by up to
/// one half and are skipped.
pub fn rho_minus_r_checkpoints(input: &Graph, trace: &[TransformTrace]) -> Vec<Rat> {
    let gap = |p: &Profile| p.remoteness - Rat::from_int(p.radius as i128);
    let mut out = Vec::new();
    let p0 = invariant_profile(input).expect("checkpoint input profile");
    out.push(gap(&p0));
    let mut pending = false;
    for tr in trace {
        let val = gap(&tr.after_profile);
        match tr.rule {
            RuleId::T7 | RuleId::T8 => {
                pending = !pending;
                if !pending {
                    out.push(val);
                }
            }
            RuleId::TerminalExtend => {
                pending = !pending;
                out.push(val);
            }
            RuleId::TerminalCompare | RuleId::TerminalRehang => out.push(val),
            _ => {
                if !pending {
                    out.push(val);
                }
            }
        }
    }
    out
}
