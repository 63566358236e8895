//! The individual rewrites.
//!
//! All of them preserve the vertex count and (except for the spanning-tree
//! extraction `t3`) map trees to trees.  Deterministic tie-breaking rules —
//! smallest vertex id, then position — make every rewrite a function, so
//! repeated runs and parallel tests see identical traces.

use std::collections::BTreeMap;

use crate::graph::Graph;
use crate::invariants::{diametric_decomposition, invariant_profile, DiametricDecomposition};
use crate::rat::{rat, Rat};

use super::{DeltaClaim, Relation, RuleId, TransformError, TransformTrace};

fn rat_u(x: usize) -> Rat {
    Rat::from_int(x as i128)
}

fn require_tree(g: &Graph) -> Result<(), TransformError> {
    if g.is_tree() {
        Ok(())
    } else {
        Err(TransformError::NotATree)
    }
}

fn is_path_graph(g: &Graph) -> bool {
    (0..g.n()).all(|v| g.degree(v) <= 2)
}

/// Applies edge removals then additions and revalidates the graph.
fn rebuild(g: &Graph, remove: &[(usize, usize)], add: &[(usize, usize)]) -> Graph {
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| {
            !remove.iter().any(|&(a, b)| (a, b) == (u, v) || (b, a) == (u, v))
        })
        .collect();
    for &(a, b) in add {
        edges.push((a.min(b), a.max(b)));
    }
    Graph::new(g.n(), &edges).expect("rewrite must produce a valid graph")
}

/// Walks the pendant path hanging at `start` away from `v`; `start` is a
/// neighbour of `v`.  Returns the vertices in order, `start` first.
fn pendant_path(g: &Graph, v: usize, start: usize) -> Vec<usize> {
    let mut seq = vec![start];
    let mut prev = v;
    let mut cur = start;
    while g.degree(cur) == 2 {
        let next = *g
            .neighbors(cur)
            .iter()
            .find(|&&x| x != prev)
            .expect("degree-2 vertex has a second neighbour");
        seq.push(next);
        prev = cur;
        cur = next;
    }
    debug_assert_eq!(g.degree(cur), 1, "branch must end in a leaf");
    seq
}

/// All pendant paths hanging at `v`, skipping the branch toward `exclude`.
fn pendant_paths(g: &Graph, v: usize, exclude: Option<usize>) -> Vec<Vec<usize>> {
    g.neighbors(v)
        .iter()
        .filter(|&&w| Some(w) != exclude)
        .map(|&w| pendant_path(g, v, w))
        .collect()
}

/// Neighbour of `v` on the path from `v` to `target`.
fn step_toward(g: &Graph, v: usize, target: usize) -> usize {
    let dist = g.bfs_distances(target).expect("connected input");
    *g.neighbors(v)
        .iter()
        .find(|&&w| dist[w] + 1 == dist[v])
        .expect("v and target are connected")
}

/// Vertex set of the component of `g - removed` containing `start`.
fn component_without(g: &Graph, removed: usize, start: usize) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    seen[start] = true;
    let mut queue = vec![start];
    while let Some(x) = queue.pop() {
        for &y in g.neighbors(x) {
            if y != removed && !seen[y] {
                seen[y] = true;
                queue.push(y);
            }
        }
    }
    seen
}

fn smallest_off_path_leaf(g: &Graph, spine: &[usize]) -> Option<usize> {
    let first = *spine.first().unwrap();
    let last = *spine.last().unwrap();
    g.leaves().into_iter().find(|&w| w != first && w != last)
}

fn off_spine_neighbors(g: &Graph, v: usize, on_spine: &[bool]) -> Vec<usize> {
    g.neighbors(v).iter().copied().filter(|&w| !on_spine[w]).collect()
}

fn spine_membership(n: usize, spine: &[usize]) -> Vec<bool> {
    let mut on = vec![false; n];
    for &v in spine {
        on[v] = true;
    }
    on
}

/// Merges two pendant paths hanging below the centroid into one.
///
/// Picks a centroidal vertex `u` and the branch vertex `v` farthest from it
/// (two centroids: the pair with the larger distance wins, then the smaller
/// ids).  When `u != v` the branches of `v` away from `u` are pendant paths;
/// the shortest of them is re-rooted onto the leaf of the longest.  When
/// `u == v` the tree is a spider: with exactly three legs the input belongs
/// to [`t2_balance`], otherwise the two shortest legs are merged, which fails
/// only on the spider with four equal legs.
pub fn t1_leaf_merge(g: &Graph) -> Result<TransformTrace, TransformError> {
    require_tree(g)?;
    let n = g.n();
    let branch: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= 3).collect();
    if branch.is_empty() {
        return Err(TransformError::NoBranchVertex);
    }
    let profile = invariant_profile(g).expect("branchy tree has at least four vertices");

    let mut chosen: Option<(usize, usize, u32)> = None;
    for &u in &profile.centroids {
        let dist = g.bfs_distances(u).expect("connected input");
        let v = *branch
            .iter()
            .max_by_key(|&&b| (dist[b], std::cmp::Reverse(b)))
            .unwrap();
        match chosen {
            Some((_, _, best)) if dist[v] <= best => {}
            _ => chosen = Some((u, v, dist[v])),
        }
    }
    let (u, v, _) = chosen.unwrap();

    let (p1, p2, spider_case) = if u == v {
        let mut legs = pendant_paths(g, v, None);
        if legs.len() == 3 {
            return Err(TransformError::ThreeLegSpider);
        }
        legs.sort_by_key(|leg| (leg.len(), leg[0]));
        let p2 = legs.swap_remove(1);
        let p1 = legs.swap_remove(0);
        (p1, p2, true)
    } else {
        let toward = step_toward(g, v, u);
        let mut paths = pendant_paths(g, v, Some(toward));
        paths.sort_by_key(|p| (std::cmp::Reverse(p.len()), p[0]));
        let p1 = paths.remove(0);
        let p2 = paths
            .into_iter()
            .min_by_key(|p| (p.len(), p[0]))
            .expect("branch vertex has at least two pendant paths");
        (p1, p2, false)
    };

    let d1 = p1.len();
    let d2 = p2.len();
    let outside = n - 1 - d1 - d2;
    // Vertices outside the two merged paths must cover at least half of the
    // tree.  With u != v this follows from u being centroidal; for a spider
    // it can fail, and the failing shape is exactly the four-equal-leg one.
    if 2 * outside < n {
        debug_assert!(spider_case);
        return Err(TransformError::FourEqualLegSpider);
    }

    let x2 = p2[0];
    let y1 = *p1.last().unwrap();
    let after = rebuild(g, &[(v, x2)], &[(x2, y1)]);

    let (nr, d1r, d2r) = (rat_u(n), rat_u(d1), rat_u(d2));
    let out_r = nr - d1r - d2r - Rat::ONE;
    let pi_shift = d1r * d2r / (nr - Rat::ONE);
    let avgdist_shift = rat(2, 1) * d1r * d2r * out_r / (nr * (nr - Rat::ONE));
    let proof_bound = pi_shift * (rat(2, 1) * out_r / nr - Rat::ONE);

    let mut locals = BTreeMap::new();
    locals.insert("d1".to_string(), d1r);
    locals.insert("d2".to_string(), d2r);
    locals.insert("outside".to_string(), rat_u(outside));
    locals.insert("centroid".to_string(), rat_u(u));
    locals.insert("branch_vertex".to_string(), rat_u(v));
    let mut verdicts = BTreeMap::new();
    verdicts.insert("is_tree".to_string(), true);
    verdicts.insert("outside_at_least_half".to_string(), 2 * outside >= n);

    Ok(TransformTrace::build(
        RuleId::T1,
        g.clone(),
        after,
        locals,
        verdicts,
        |b, a| {
            let objective = (a.avg_distance - a.proximity) - (b.avg_distance - b.proximity);
            vec![
                DeltaClaim::new("centroid_pi_delta", Relation::Eq, pi_shift, a.pi_of[u] - b.pi_of[u]),
                DeltaClaim::new(
                    "avg_distance_delta",
                    Relation::Eq,
                    avgdist_shift,
                    a.avg_distance - b.avg_distance,
                ),
                DeltaClaim::new("avgdist_minus_proximity_delta", Relation::Ge, Rat::ZERO, objective),
                DeltaClaim::new(
                    "avgdist_minus_proximity_delta_vs_bound",
                    Relation::Ge,
                    proof_bound,
                    objective,
                ),
            ]
        },
    ))
}

/// Moves the deepest leaf of a three-leg spider onto its shallowest leg.
///
/// Requires every leg shorter than `n/2` (otherwise the centroid is not the
/// hub and [`t1_leaf_merge`] is responsible) and a longest/shortest gap of at
/// least two, so the move strictly reduces the imbalance.
pub fn t2_balance(g: &Graph) -> Result<TransformTrace, TransformError> {
    require_tree(g)?;
    let n = g.n();
    let hubs: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= 3).collect();
    if hubs.len() != 1 || g.degree(hubs[0]) != 3 {
        return Err(TransformError::NotAThreeLegSpider);
    }
    let hub = hubs[0];
    let legs = pendant_paths(g, hub, None);
    if legs.iter().any(|leg| 2 * leg.len() >= n) {
        return Err(TransformError::LegTooLong);
    }
    let longest = legs.iter().map(Vec::len).max().unwrap();
    let shortest = legs.iter().map(Vec::len).min().unwrap();
    if longest <= shortest + 1 {
        return Err(TransformError::AlreadyBalanced);
    }
    let leg1 = legs
        .iter()
        .filter(|leg| leg.len() == longest)
        .min_by_key(|leg| leg[0])
        .unwrap();
    let leg2 = legs
        .iter()
        .filter(|leg| leg.len() == shortest)
        .min_by_key(|leg| leg[0])
        .unwrap();
    let v1 = *leg1.last().unwrap();
    let v2 = *leg2.last().unwrap();
    let v1_parent = leg1[longest - 2];

    let after = rebuild(g, &[(v1_parent, v1)], &[(v1, v2)]);

    let (d1, d2) = (longest, shortest);
    let (nr, d1r, d2r) = (rat_u(n), rat_u(d1), rat_u(d2));
    let gap = d1r - d2r - Rat::ONE;
    let out_r = nr - d1r - d2r - Rat::ONE;
    let pi_shift = Rat::ZERO - gap / (nr - Rat::ONE);
    let avgdist_shift = Rat::ZERO - rat(2, 1) * out_r * gap / (nr * (nr - Rat::ONE));
    let proof_bound = (gap / (nr - Rat::ONE)) * (Rat::ONE - rat(2, 1) * out_r / nr);

    let new_legs = pendant_paths(&after, hub, None);
    let new_longest = new_legs.iter().map(Vec::len).max().unwrap();
    let new_shortest = new_legs.iter().map(Vec::len).min().unwrap();

    let mut locals = BTreeMap::new();
    locals.insert("d1".to_string(), d1r);
    locals.insert("d2".to_string(), d2r);
    locals.insert("outside".to_string(), rat_u(n - 1 - d1 - d2));
    locals.insert("moved_leaf".to_string(), rat_u(v1));
    locals.insert("target_leaf".to_string(), rat_u(v2));
    locals.insert("imbalance_before".to_string(), rat_u(longest - shortest));
    locals.insert("imbalance_after".to_string(), rat_u(new_longest - new_shortest));
    let mut verdicts = BTreeMap::new();
    verdicts.insert("is_three_leg_spider".to_string(), true);
    verdicts.insert("legs_below_half".to_string(), true);
    verdicts.insert("outside_at_most_half".to_string(), 2 * (n - 1 - d1 - d2) <= n);

    let imbalance_delta = rat_u(new_longest - new_shortest) - rat_u(longest - shortest);
    Ok(TransformTrace::build(
        RuleId::T2,
        g.clone(),
        after,
        locals,
        verdicts,
        |b, a| {
            let objective = (a.avg_distance - a.proximity) - (b.avg_distance - b.proximity);
            vec![
                DeltaClaim::new("centroid_pi_delta", Relation::Eq, pi_shift, a.pi_of[hub] - b.pi_of[hub]),
                DeltaClaim::new(
                    "avg_distance_delta",
                    Relation::Eq,
                    avgdist_shift,
                    a.avg_distance - b.avg_distance,
                ),
                DeltaClaim::new("avgdist_minus_proximity_delta", Relation::Ge, Rat::ZERO, objective),
                DeltaClaim::new(
                    "avgdist_minus_proximity_delta_vs_bound",
                    Relation::Ge,
                    proof_bound,
                    objective,
                ),
                DeltaClaim::new(
                    "imbalance_delta",
                    Relation::Le,
                    Rat::ZERO - Rat::ONE,
                    imbalance_delta,
                ),
            ]
        },
    ))
}

/// Replaces a connected graph by the breadth-first spanning tree rooted at
/// its smallest proximity-minimizing vertex.  Distances from the root are
/// preserved and all others can only grow, so proximity stays put while the
/// average distance rises.  Trees map to themselves.
pub fn t3_bfs_reduce(g: &Graph) -> Result<TransformTrace, TransformError> {
    let profile = invariant_profile(g).map_err(|_| TransformError::NotConnected)?;
    let root = profile.centroids[0];
    let after = g.bfs_tree(root).expect("profiled graph is connected");

    let mut locals = BTreeMap::new();
    locals.insert("root".to_string(), rat_u(root));
    let mut verdicts = BTreeMap::new();
    verdicts.insert("is_connected".to_string(), true);

    Ok(TransformTrace::build(
        RuleId::T3,
        g.clone(),
        after,
        locals,
        verdicts,
        |b, a| {
            let objective = (a.avg_distance - a.proximity) - (b.avg_distance - b.proximity);
            vec![
                DeltaClaim::new("proximity_delta", Relation::Le, Rat::ZERO, a.proximity - b.proximity),
                DeltaClaim::new(
                    "avg_distance_delta",
                    Relation::Ge,
                    Rat::ZERO,
                    a.avg_distance - b.avg_distance,
                ),
                DeltaClaim::new("avgdist_minus_proximity_delta", Relation::Ge, Rat::ZERO, objective),
            ]
        },
    ))
}

/// Re-attaches an off-path leaf to the far end of the diametric path.
///
/// Requires every branch vertex on the near half of a diametric path (either
/// orientation).  The diameter grows by exactly one while the average
/// eccentricity rises faster than the remoteness.
pub fn t4_leaf_to_diameter_end(g: &Graph) -> Result<TransformTrace, TransformError> {
    require_tree(g)?;
    if is_path_graph(g) {
        return Err(TransformError::NoOffPathLeaf);
    }
    let n = g.n();
    let decomp = diametric_decomposition(g).expect("non-path tree has a decomposition");
    let d = decomp.path.len() - 1;
    let branches: Vec<usize> = (0..=d).filter(|&i| decomp.component_sizes[i] > 0).collect();
    debug_assert!(!branches.is_empty());

    let spine: Vec<usize> = if 2 * branches.iter().max().unwrap() <= d {
        decomp.path.clone()
    } else if 2 * branches.iter().min().unwrap() >= d {
        decomp.path.iter().rev().copied().collect()
    } else {
        return Err(TransformError::BranchOnFarHalf);
    };

    let far = *spine.last().unwrap();
    let w = smallest_off_path_leaf(g, &spine).expect("non-path tree has an off-path leaf");
    let w_parent = g.neighbors(w)[0];
    let d_w = g.bfs_distances(far).expect("connected input")[w] as usize;
    let after = rebuild(g, &[(w_parent, w)], &[(w, far)]);

    let (nr, dr, dwr) = (rat_u(n), rat_u(d), rat_u(d_w));
    let ecc_bound = (rat(2, 1) * nr - dr - Rat::ONE) / (rat(2, 1) * nr);
    let rho_bound = (rat(2, 1) * nr - dr - rat(3, 1)) / (rat(2, 1) * (nr - Rat::ONE));
    let pi_shift = (nr - Rat::ONE - dwr) / (nr - Rat::ONE);

    let mut locals = BTreeMap::new();
    locals.insert("moved_leaf".to_string(), rat_u(w));
    locals.insert("far_end".to_string(), rat_u(far));
    locals.insert("leaf_to_far_end_distance".to_string(), dwr);
    locals.insert("max_branch_position".to_string(), rat_u(*branches.iter().max().unwrap()));
    let mut verdicts = BTreeMap::new();
    verdicts.insert("is_tree".to_string(), true);
    verdicts.insert("branches_on_near_half".to_string(), true);
    verdicts.insert("moved_leaf_beyond_half".to_string(), 2 * d_w >= d + 2);

    Ok(TransformTrace::build(
        RuleId::T4,
        g.clone(),
        after,
        locals,
        verdicts,
        |b, a| {
            let objective = (a.avg_ecc - a.remoteness) - (b.avg_ecc - b.remoteness);
            vec![
                DeltaClaim::new(
                    "diameter_delta",
                    Relation::Eq,
                    Rat::ONE,
                    rat_u(a.diameter as usize) - rat_u(b.diameter as usize),
                ),
                DeltaClaim::new("avg_ecc_delta", Relation::Ge, ecc_bound, a.avg_ecc - b.avg_ecc),
                DeltaClaim::new("remoteness_delta", Relation::Le, rho_bound, a.remoteness - b.remoteness),
                DeltaClaim::new("avgecc_minus_remoteness_delta", Relation::Ge, Rat::ZERO, objective),
                DeltaClaim::new(
                    "moved_leaf_pi_identity",
                    Relation::Eq,
                    Rat::ZERO,
                    a.pi_of[w] - b.pi_of[far] - pi_shift,
                ),
            ]
        },
    ))
}

/// Splits the spine at the innermost branch pair straddling the middle.
///
/// For the nearest branch vertices `v_j <= D/2 < v_k`, every neighbour of
/// `v_j` except its smallest off-path one and its successor is re-rooted onto
/// that off-path neighbour (symmetrically at `v_k`), lengthening the spine by
/// two.  The trace records the five-part vertex partition from which the
/// eccentricity gain is computed exactly.
pub fn t5_split_branches(g: &Graph) -> Result<TransformTrace, TransformError> {
    require_tree(g)?;
    if is_path_graph(g) {
        return Err(TransformError::NoSplitPair);
    }
    let n = g.n();
    let decomp = diametric_decomposition(g).expect("non-path tree has a decomposition");
    let d = decomp.path.len() - 1;
    let branches: Vec<usize> = (0..=d).filter(|&i| decomp.component_sizes[i] > 0).collect();
    let j = *branches
        .iter()
        .filter(|&&i| 2 * i <= d)
        .max()
        .ok_or(TransformError::NoSplitPair)?;
    let k = *branches
        .iter()
        .filter(|&&i| 2 * i > d)
        .min()
        .ok_or(TransformError::NoSplitPair)?;

    let spine = &decomp.path;
    let on_spine = spine_membership(n, spine);
    let (vj, vk) = (spine[j], spine[k]);
    let wj = *off_spine_neighbors(g, vj, &on_spine).iter().min().unwrap();
    let wk = *off_spine_neighbors(g, vk, &on_spine).iter().min().unwrap();

    let mut remove = Vec::new();
    let mut add = Vec::new();
    for &x in g.neighbors(vj) {
        if x != wj && x != spine[j + 1] {
            remove.push((vj, x));
            add.push((wj, x));
        }
    }
    for &x in g.neighbors(vk) {
        if x != wk && x != spine[k - 1] {
            remove.push((vk, x));
            add.push((wk, x));
        }
    }
    let after = rebuild(g, &remove, &add);

    // Five-part partition of the vertex set around the two split points.
    let x2_set = component_without(g, vj, wj);
    let right_of_j = component_without(g, vj, spine[j + 1]);
    let x4_set = component_without(g, vk, wk);
    let left_of_k = component_without(g, vk, spine[k - 1]);
    let mut sizes = [0usize; 5];
    for v in 0..n {
        if v != vj && x2_set[v] {
            sizes[1] += 1;
        } else if v != vj && !right_of_j[v] {
            sizes[0] += 1;
        } else if v != vk && x4_set[v] {
            sizes[3] += 1;
        } else if v != vk && !left_of_k[v] {
            sizes[4] += 1;
        } else {
            sizes[2] += 1;
        }
    }
    let [x1, x2, x3, x4, x5] = sizes.map(rat_u);
    let nr = rat_u(n);
    let delta1 = (rat(2, 1) * x1 + x2 + x3 + x4 + rat(2, 1) * x5) / nr;
    let delta2 = (x3 + x4 + rat(2, 1) * x5 - x2) / (nr - Rat::ONE);
    let delta3 = (x5 - x1) / (nr - Rat::ONE);
    let delta4 = (x1 + x5) / (nr - Rat::ONE);

    let mut locals = BTreeMap::new();
    locals.insert("near_branch_position".to_string(), rat_u(j));
    locals.insert("far_branch_position".to_string(), rat_u(k));
    locals.insert("x1".to_string(), x1);
    locals.insert("x2".to_string(), x2);
    locals.insert("x3".to_string(), x3);
    locals.insert("x4".to_string(), x4);
    locals.insert("x5".to_string(), x5);
    locals.insert("delta1".to_string(), delta1);
    locals.insert("delta2".to_string(), delta2);
    locals.insert("delta3".to_string(), delta3);
    locals.insert("delta4".to_string(), delta4);
    let mut verdicts = BTreeMap::new();
    verdicts.insert("is_tree".to_string(), true);
    verdicts.insert("branch_pair_straddles_middle".to_string(), 2 * j <= d && 2 * k > d);

    Ok(TransformTrace::build(
        RuleId::T5,
        g.clone(),
        after,
        locals,
        verdicts,
        |b, a| {
            let objective = (a.avg_ecc - a.remoteness) - (b.avg_ecc - b.remoteness);
            let per_vertex_gap_delta = (0..n)
                .map(|v| (a.avg_ecc - a.pi_of[v]) - (b.avg_ecc - b.pi_of[v]))
                .min()
                .unwrap();
            vec![
                DeltaClaim::new(
                    "diameter_delta",
                    Relation::Eq,
                    rat(2, 1),
                    rat_u(a.diameter as usize) - rat_u(b.diameter as usize),
                ),
                DeltaClaim::new("avg_ecc_delta", Relation::Eq, delta1, a.avg_ecc - b.avg_ecc),
                DeltaClaim::new("delta1_minus_delta2", Relation::Ge, Rat::ZERO, delta1 - delta2),
                DeltaClaim::new("delta1_minus_delta3", Relation::Ge, Rat::ZERO, delta1 - delta3),
                DeltaClaim::new("delta1_minus_delta4", Relation::Ge, Rat::ZERO, delta1 - delta4),
                DeltaClaim::new(
                    "min_vertex_gap_delta",
                    Relation::Ge,
                    Rat::ZERO,
                    per_vertex_gap_delta,
                ),
                DeltaClaim::new("avgecc_minus_remoteness_delta", Relation::Ge, Rat::ZERO, objective),
            ]
        },
    ))
}

/// Flattens every off-path subtree into pendant leaves, one level at a time.
///
/// Repeatedly takes the deepest internal vertex of the first non-flat branch
/// and moves its leaves one step toward the spine.  All steps are batched
/// into a single trace whose claims compare the final caterpillar with the
/// original tree.  A caterpillar input yields a flagged identity trace.
pub fn t6_caterpillarize(g: &Graph) -> Result<TransformTrace, TransformError> {
    require_tree(g)?;
    if g.n() < 2 {
        return Err(TransformError::NotConnected);
    }
    let n = g.n();
    let mut locals = BTreeMap::new();
    let mut verdicts = BTreeMap::new();
    verdicts.insert("is_tree".to_string(), true);

    let claims = |b: &crate::invariants::Profile, a: &crate::invariants::Profile| {
        vec![
            DeltaClaim::new("remoteness_delta", Relation::Le, Rat::ZERO, a.remoteness - b.remoteness),
            DeltaClaim::new(
                "radius_delta",
                Relation::Eq,
                Rat::ZERO,
                rat_u(a.radius as usize) - rat_u(b.radius as usize),
            ),
            DeltaClaim::new(
                "diameter_delta",
                Relation::Eq,
                Rat::ZERO,
                rat_u(a.diameter as usize) - rat_u(b.diameter as usize),
            ),
        ]
    };

    if g.is_caterpillar() {
        verdicts.insert("already_caterpillar".to_string(), true);
        locals.insert("steps".to_string(), Rat::ZERO);
        return Ok(TransformTrace::build(
            RuleId::T6,
            g.clone(),
            g.clone(),
            locals,
            verdicts,
            claims,
        ));
    }

    let mut cur = g.clone();
    let mut steps = 0usize;
    while !cur.is_caterpillar() {
        assert!(steps <= n * n + 10, "flattening must terminate");
        let decomp = diametric_decomposition(&cur).expect("tree decomposition");
        let spine = &decomp.path;
        // first spine position whose branch still has depth >= 2
        let (pos, dist) = (0..spine.len())
            .filter(|&i| decomp.component_sizes[i] > 0)
            .find_map(|i| {
                let dist = cur.bfs_distances(spine[i]).expect("connected input");
                let deep = (0..n)
                    .any(|v| decomp.component_of[v] == i && !spine.contains(&v) && dist[v] >= 2);
                deep.then_some((i, dist))
            })
            .expect("non-caterpillar tree has a deep branch");
        let v = (0..n)
            .filter(|&x| {
                decomp.component_of[x] == pos && !spine.contains(&x) && cur.degree(x) >= 2
            })
            .max_by_key(|&x| (dist[x], std::cmp::Reverse(x)))
            .expect("deep branch has an internal vertex");
        let parent = *cur
            .neighbors(v)
            .iter()
            .find(|&&x| dist[x] + 1 == dist[v])
            .unwrap();
        let moved: Vec<usize> =
            cur.neighbors(v).iter().copied().filter(|&x| cur.degree(x) == 1).collect();
        debug_assert_eq!(moved.len() + 1, cur.degree(v));
        let remove: Vec<(usize, usize)> = moved.iter().map(|&x| (v, x)).collect();
        let add: Vec<(usize, usize)> = moved.iter().map(|&x| (parent, x)).collect();
        cur = rebuild(&cur, &remove, &add);
        locals.insert(format!("step{steps}_vertex"), rat_u(v));
        locals.insert(format!("step{steps}_target"), rat_u(parent));
        locals.insert(format!("step{steps}_moved"), rat_u(moved.len()));
        steps += 1;
    }
    locals.insert("steps".to_string(), rat_u(steps));

    Ok(TransformTrace::build(RuleId::T6, g.clone(), cur, locals, verdicts, claims))
}

/// Finds the spine orientation in which position `want` holds and everything
/// past the returned centroid position is bare.  `centroid_positions` are
/// positions in the forward frame.
fn bare_oriented_spine(
    g: &Graph,
    decomp: &DiametricDecomposition,
    anchor: usize,
) -> Option<(Vec<usize>, usize)> {
    let fwd = decomp.path.clone();
    let j = fwd.iter().position(|&x| x == anchor).expect("anchor lies on the spine");
    if fwd[j + 1..].iter().all(|&x| g.degree(x) <= 2) {
        return Some((fwd, j));
    }
    let rev: Vec<usize> = decomp.path.iter().rev().copied().collect();
    let jr = rev.len() - 1 - j;
    if rev[jr + 1..].iter().all(|&x| g.degree(x) <= 2) {
        return Some((rev, jr));
    }
    None
}

/// Lengthens the spine of a single-centroid caterpillar by one.
///
/// With the far half bare, a spare leaf is spliced into the spine next to the
/// centroid: into the near edge when the centroid is bare, or between the
/// centroid and its successor otherwise, re-hanging just enough centroid
/// leaves onto the spliced vertex to keep both sides at or below `(n-1)/2`.
pub fn t7_extend_single_centroid(g: &Graph) -> Result<TransformTrace, TransformError> {
    require_tree(g)?;
    if !g.is_caterpillar() {
        return Err(TransformError::NotACaterpillar);
    }
    if is_path_graph(g) {
        return Err(TransformError::IsPath);
    }
    let n = g.n();
    let profile = invariant_profile(g).expect("caterpillar profile");
    if profile.centroids.len() != 1 {
        return Err(TransformError::CentroidCount { expected: 1, found: profile.centroids.len() });
    }
    let c = profile.centroids[0];
    let decomp = diametric_decomposition(g).expect("tree decomposition");
    let (spine, j) = bare_oriented_spine(g, &decomp, c).ok_or(TransformError::FarHalfNotBare)?;
    let on_spine = spine_membership(n, &spine);

    let mut locals = BTreeMap::new();
    locals.insert("centroid_position".to_string(), rat_u(j));
    let mut verdicts = BTreeMap::new();
    verdicts.insert("is_caterpillar".to_string(), true);
    verdicts.insert("single_centroid".to_string(), true);
    verdicts.insert("far_half_bare".to_string(), true);

    let after = if g.degree(c) == 2 {
        let w = smallest_off_path_leaf(g, &spine).ok_or(TransformError::NoOffPathLeaf)?;
        let w_parent = g.neighbors(w)[0];
        locals.insert("case".to_string(), Rat::ONE);
        locals.insert("moved_leaf".to_string(), rat_u(w));
        rebuild(g, &[(w_parent, w), (spine[j - 1], c)], &[(spine[j - 1], w), (w, c)])
    } else {
        let leaves = off_spine_neighbors(g, c, &on_spine);
        let w = *leaves.iter().min().unwrap();
        let left_size = component_without(g, c, spine[j - 1]).iter().filter(|&&x| x).count();
        let right_size = component_without(g, c, spine[j + 1]).iter().filter(|&&x| x).count();
        let target = (n - 1) / 2;
        let mut taken = Vec::new();
        for &x in leaves.iter().filter(|&&x| x != w) {
            if right_size + taken.len() >= target {
                break;
            }
            taken.push(x);
        }
        let kept = leaves.len() - 1 - taken.len();
        verdicts.insert(
            "left_side_within_half".to_string(),
            2 * (left_size + kept) <= n - 1,
        );
        verdicts.insert(
            "right_side_within_half".to_string(),
            2 * (right_size + taken.len()) <= n - 1,
        );
        locals.insert("case".to_string(), rat(2, 1));
        locals.insert("moved_leaf".to_string(), rat_u(w));
        locals.insert("left_component".to_string(), rat_u(left_size));
        locals.insert("right_component".to_string(), rat_u(right_size));
        locals.insert("kept_leaves".to_string(), rat_u(kept));
        locals.insert("rehung_leaves".to_string(), rat_u(taken.len()));
        let mut remove = vec![(c, spine[j + 1])];
        let mut add = vec![(w, spine[j + 1])];
        for &x in &taken {
            remove.push((c, x));
            add.push((w, x));
        }
        rebuild(g, &remove, &add)
    };

    Ok(TransformTrace::build(
        RuleId::T7,
        g.clone(),
        after,
        locals,
        verdicts,
        |b, a| {
            vec![
                DeltaClaim::new(
                    "diameter_delta",
                    Relation::Eq,
                    Rat::ONE,
                    rat_u(a.diameter as usize) - rat_u(b.diameter as usize),
                ),
                DeltaClaim::new("remoteness_delta", Relation::Le, rat(1, 2), a.remoteness - b.remoteness),
            ]
        },
    ))
}

/// Lengthens the spine of a two-centroid caterpillar by splicing a spare leaf
/// into the central edge.  Requires the far half (including the far centroid)
/// bare in one orientation.
pub fn t8_extend_two_centroids(g: &Graph) -> Result<TransformTrace, TransformError> {
    require_tree(g)?;
    if !g.is_caterpillar() {
        return Err(TransformError::NotACaterpillar);
    }
    if is_path_graph(g) {
        return Err(TransformError::IsPath);
    }
    let profile = invariant_profile(g).expect("caterpillar profile");
    if profile.centroids.len() != 2 {
        return Err(TransformError::CentroidCount { expected: 2, found: profile.centroids.len() });
    }
    let decomp = diametric_decomposition(g).expect("tree decomposition");
    let d = decomp.path.len() - 1;
    let pos_of = |v: usize| decomp.path.iter().position(|&x| x == v).unwrap();
    let (pa, pb) = (pos_of(profile.centroids[0]), pos_of(profile.centroids[1]));
    let p = pa.min(pb);
    debug_assert_eq!(pa.max(pb), p + 1, "centroid pair spans one edge");

    // the half past the carrying centroid must be bare, in either orientation
    let (spine, j) = if decomp.path[p + 1..].iter().all(|&x| g.degree(x) <= 2) {
        (decomp.path.clone(), p)
    } else if decomp.path[..=p].iter().all(|&x| g.degree(x) <= 2) {
        (decomp.path.iter().rev().copied().collect(), d - p - 1)
    } else {
        return Err(TransformError::FarHalfNotBare);
    };
    debug_assert!(spine[j + 1..].iter().all(|&x| g.degree(x) <= 2));

    let w = smallest_off_path_leaf(g, &spine).ok_or(TransformError::NoOffPathLeaf)?;
    let w_parent = g.neighbors(w)[0];
    let (vj, vj1) = (spine[j], spine[j + 1]);
    let after = rebuild(g, &[(w_parent, w), (vj, vj1)], &[(vj, w), (w, vj1)]);

    let after_profile = invariant_profile(&after).expect("rewrite output profile");
    let far = spine[spine.len() - 1];
    let far_gap = after_profile.remoteness - after_profile.pi_of[far];

    let mut locals = BTreeMap::new();
    locals.insert("centroid_position".to_string(), rat_u(j));
    locals.insert("moved_leaf".to_string(), rat_u(w));
    locals.insert("remoteness_gap_at_far_end_after".to_string(), far_gap);
    let mut verdicts = BTreeMap::new();
    verdicts.insert("is_caterpillar".to_string(), true);
    verdicts.insert("two_centroids".to_string(), true);
    verdicts.insert("far_half_bare".to_string(), true);

    Ok(TransformTrace::build(
        RuleId::T8,
        g.clone(),
        after,
        locals,
        verdicts,
        |b, a| {
            vec![
                DeltaClaim::new(
                    "diameter_delta",
                    Relation::Eq,
                    Rat::ONE,
                    rat_u(a.diameter as usize) - rat_u(b.diameter as usize),
                ),
                DeltaClaim::new("remoteness_delta", Relation::Le, rat(1, 2), a.remoteness - b.remoteness),
            ]
        },
    ))
}

/// Moves every pendant leaf from the short-side centroid onto the other one.
///
/// Applies to two-centroid caterpillars whose leaves all sit on the centroid
/// pair and whose centroid degrees differ; afterwards a single centroid
/// remains, with diameter and radius intact and remoteness not above its old
/// value.
pub fn t9_rebalance_centroid_leaves(g: &Graph) -> Result<TransformTrace, TransformError> {
    require_tree(g)?;
    if g.n() < 2 {
        return Err(TransformError::NotConnected);
    }
    if !g.is_caterpillar() {
        return Err(TransformError::NotACaterpillar);
    }
    let profile = invariant_profile(g).expect("caterpillar profile");
    if profile.centroids.len() != 2 {
        return Err(TransformError::CentroidCount { expected: 2, found: profile.centroids.len() });
    }
    let decomp = diametric_decomposition(g).expect("tree decomposition");
    let d = decomp.path.len() - 1;
    let pos_of = |v: usize| decomp.path.iter().position(|&x| x == v).unwrap();
    let (c1, c2) = (profile.centroids[0], profile.centroids[1]);
    if g.degree(c1) == g.degree(c2) {
        return Err(TransformError::EqualCentroidDegrees);
    }
    let p = pos_of(c1).min(pos_of(c2));
    if decomp
        .path
        .iter()
        .enumerate()
        .any(|(i, &x)| i != p && i != p + 1 && g.degree(x) > 2)
    {
        return Err(TransformError::SidesNotBare);
    }

    let on_spine = spine_membership(g.n(), &decomp.path);
    let (left, right) = (decomp.path[p], decomp.path[p + 1]);
    // donor: centroid with the higher degree, which sits on the shorter arm
    let (donor, recipient) = if g.degree(left) > g.degree(right) {
        (left, right)
    } else {
        (right, left)
    };
    let (d1, d2) = if donor == left { (p, d - p - 1) } else { (d - p - 1, p) };
    debug_assert!(d1 < d2);
    let moved = off_spine_neighbors(g, donor, &on_spine);
    debug_assert!(!moved.is_empty());
    let remove: Vec<(usize, usize)> = moved.iter().map(|&x| (donor, x)).collect();
    let add: Vec<(usize, usize)> = moved.iter().map(|&x| (recipient, x)).collect();
    let after = rebuild(g, &remove, &add);

    let mut locals = BTreeMap::new();
    locals.insert("d1".to_string(), rat_u(d1));
    locals.insert("d2".to_string(), rat_u(d2));
    locals.insert("donor".to_string(), rat_u(donor));
    locals.insert("recipient".to_string(), rat_u(recipient));
    locals.insert("moved".to_string(), rat_u(moved.len()));
    let mut verdicts = BTreeMap::new();
    verdicts.insert("is_caterpillar".to_string(), true);
    verdicts.insert("two_centroids".to_string(), true);
    verdicts.insert("sides_bare".to_string(), true);
    verdicts.insert("degrees_differ".to_string(), true);

    Ok(TransformTrace::build(
        RuleId::T9,
        g.clone(),
        after,
        locals,
        verdicts,
        |b, a| {
            vec![
                DeltaClaim::new(
                    "diameter_delta",
                    Relation::Eq,
                    Rat::ZERO,
                    rat_u(a.diameter as usize) - rat_u(b.diameter as usize),
                ),
                DeltaClaim::new(
                    "radius_delta",
                    Relation::Eq,
                    Rat::ZERO,
                    rat_u(a.radius as usize) - rat_u(b.radius as usize),
                ),
                DeltaClaim::new("remoteness_delta", Relation::Le, Rat::ZERO, a.remoteness - b.remoteness),
            ]
        },
    ))
}

/// Splices one leaf from each centroid into the central edge of a
/// two-centroid caterpillar with equal centroid degrees, then re-hangs the
/// remaining centroid leaves onto the spliced pair.  The diameter grows by
/// two and the radius by one, so the remoteness-radius gap cannot grow; the
/// re-hang itself is recorded to leave radius and remoteness untouched.
pub fn t10_double_extend_equal(g: &Graph) -> Result<TransformTrace, TransformError> {
    require_tree(g)?;
    if !g.is_caterpillar() {
        return Err(TransformError::NotACaterpillar);
    }
    if is_path_graph(g) {
        return Err(TransformError::IsPath);
    }
    let profile = invariant_profile(g).expect("caterpillar profile");
    if profile.centroids.len() != 2 {
        return Err(TransformError::CentroidCount { expected: 2, found: profile.centroids.len() });
    }
    let (c1, c2) = (profile.centroids[0], profile.centroids[1]);
    if g.degree(c1) != g.degree(c2) {
        return Err(TransformError::UnequalCentroidDegrees);
    }
    let decomp = diametric_decomposition(g).expect("tree decomposition");
    let d = decomp.path.len() - 1;
    let pos_of = |v: usize| decomp.path.iter().position(|&x| x == v).unwrap();
    let p = pos_of(c1).min(pos_of(c2));
    if decomp
        .path
        .iter()
        .enumerate()
        .any(|(i, &x)| i != p && i != p + 1 && g.degree(x) > 2)
    {
        return Err(TransformError::SidesNotBare);
    }
    let on_spine = spine_membership(g.n(), &decomp.path);
    let (vj, vj1) = (decomp.path[p], decomp.path[p + 1]);
    let leaves_j = off_spine_neighbors(g, vj, &on_spine);
    let leaves_j1 = off_spine_neighbors(g, vj1, &on_spine);
    debug_assert!(!leaves_j.is_empty() && leaves_j.len() == leaves_j1.len());
    let w1 = *leaves_j.iter().min().unwrap();
    let w2 = *leaves_j1.iter().min().unwrap();

    // splice: vj - w1 - w2 - vj1, keeping the existing edge (vj, w1)
    let mid = rebuild(g, &[(vj1, w2), (vj, vj1)], &[(w1, w2), (w2, vj1)]);
    let mut remove = Vec::new();
    let mut add = Vec::new();
    for &x in leaves_j.iter().filter(|&&x| x != w1) {
        remove.push((vj, x));
        add.push((w1, x));
    }
    for &x in leaves_j1.iter().filter(|&&x| x != w2) {
        remove.push((vj1, x));
        add.push((w2, x));
    }
    let after = rebuild(&mid, &remove, &add);
    let mid_profile = invariant_profile(&mid).expect("intermediate profile");

    let mut locals = BTreeMap::new();
    locals.insert("d1".to_string(), rat_u(p));
    locals.insert("d2".to_string(), rat_u(d - p - 1));
    locals.insert("spliced_leaf_left".to_string(), rat_u(w1));
    locals.insert("spliced_leaf_right".to_string(), rat_u(w2));
    locals.insert("rehung".to_string(), rat_u(remove.len()));
    let mut verdicts = BTreeMap::new();
    verdicts.insert("is_caterpillar".to_string(), true);
    verdicts.insert("two_centroids".to_string(), true);
    verdicts.insert("sides_bare".to_string(), true);
    verdicts.insert("degrees_equal".to_string(), true);
    verdicts.insert("arms_equal".to_string(), p == d - p - 1);

    let mid_radius = rat_u(mid_profile.radius as usize);
    let mid_remoteness = mid_profile.remoteness;
    Ok(TransformTrace::build(
        RuleId::T10,
        g.clone(),
        after,
        locals,
        verdicts,
        |b, a| {
            let objective = (a.remoteness - rat_u(a.radius as usize))
                - (b.remoteness - rat_u(b.radius as usize));
            vec![
                DeltaClaim::new(
                    "diameter_delta",
                    Relation::Eq,
                    rat(2, 1),
                    rat_u(a.diameter as usize) - rat_u(b.diameter as usize),
                ),
                DeltaClaim::new(
                    "radius_delta",
                    Relation::Eq,
                    Rat::ONE,
                    rat_u(a.radius as usize) - rat_u(b.radius as usize),
                ),
                DeltaClaim::new("remoteness_delta", Relation::Le, Rat::ONE, a.remoteness - b.remoteness),
                DeltaClaim::new("remoteness_minus_radius_delta", Relation::Le, Rat::ZERO, objective),
                DeltaClaim::new(
                    "rehang_radius_delta",
                    Relation::Eq,
                    Rat::ZERO,
                    rat_u(a.radius as usize) - mid_radius,
                ),
                DeltaClaim::new(
                    "rehang_remoteness_delta",
                    Relation::Eq,
                    Rat::ZERO,
                    a.remoteness - mid_remoteness,
                ),
            ]
        },
    ))
}

/// Shifts pendant leaves pairwise toward the centroid until no centroidal
/// vertex has carriers strictly on both sides.
///
/// Each iteration picks the innermost carriers left and right of the pivot
/// centroid and moves one leaf from each a single step inward; moving them
/// together keeps every transmission from growing.  All moves are batched
/// into one trace.  Returns `Ok(None)` when the caterpillar is already
/// settled.
pub fn normalize_leaf_positions(g: &Graph) -> Result<Option<TransformTrace>, TransformError> {
    require_tree(g)?;
    if !g.is_caterpillar() {
        return Err(TransformError::NotACaterpillar);
    }
    if is_path_graph(g) {
        return Ok(None);
    }
    let n = g.n();
    let mut cur = g.clone();
    let mut moves = 0usize;
    loop {
        assert!(moves <= n * n + 2 * n + 10, "leaf shifting must terminate");
        let profile = invariant_profile(&cur).expect("caterpillar profile");
        let decomp = diametric_decomposition(&cur).expect("tree decomposition");
        let spine = &decomp.path;
        let on_spine = spine_membership(n, spine);
        let carriers: Vec<usize> = (0..spine.len())
            .filter(|&i| !off_spine_neighbors(&cur, spine[i], &on_spine).is_empty())
            .collect();
        let mut centroid_positions: Vec<usize> = profile
            .centroids
            .iter()
            .map(|&c| spine.iter().position(|&x| x == c).expect("centroid lies on the spine"))
            .collect();
        centroid_positions.sort_unstable();
        let pivot = centroid_positions
            .into_iter()
            .find(|&cp| carriers.iter().any(|&i| i < cp) && carriers.iter().any(|&i| i > cp));
        let Some(pivot) = pivot else { break };
        let a = *carriers.iter().filter(|&&i| i < pivot).max().unwrap();
        let b = *carriers.iter().filter(|&&i| i > pivot).min().unwrap();
        let xa = *off_spine_neighbors(&cur, spine[a], &on_spine).iter().min().unwrap();
        let xb = *off_spine_neighbors(&cur, spine[b], &on_spine).iter().min().unwrap();
        cur = rebuild(
            &cur,
            &[(spine[a], xa), (spine[b], xb)],
            &[(spine[a + 1], xa), (spine[b - 1], xb)],
        );
        moves += 1;
    }
    if moves == 0 {
        return Ok(None);
    }

    let mut locals = BTreeMap::new();
    locals.insert("paired_moves".to_string(), rat_u(moves));
    let mut verdicts = BTreeMap::new();
    verdicts.insert("is_caterpillar".to_string(), true);

    Ok(Some(TransformTrace::build(
        RuleId::Normalize,
        g.clone(),
        cur,
        locals,
        verdicts,
        |b, a| {
            vec![
                DeltaClaim::new("remoteness_delta", Relation::Le, Rat::ZERO, a.remoteness - b.remoteness),
                DeltaClaim::new(
                    "radius_delta",
                    Relation::Eq,
                    Rat::ZERO,
                    rat_u(a.radius as usize) - rat_u(b.radius as usize),
                ),
                DeltaClaim::new(
                    "diameter_delta",
                    Relation::Eq,
                    Rat::ZERO,
                    rat_u(a.diameter as usize) - rat_u(b.diameter as usize),
                ),
            ]
        },
    )))
}
