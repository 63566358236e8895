//! Exhaustive monotonicity audit of the rewrite rules over every tree with
//! at most 11 vertices: wherever a rule's preconditions hold, the
//! inequality it promises must hold exactly, recomputed here from the
//! before/after profiles rather than read back from the recorded claims.
//! Zero violations are tolerated.

use dit_core::enumerate::{connected_graphs, free_trees};
use dit_core::rat::{rat, Rat};
use dit_core::transforms::{
    normalize_leaf_positions, t10_double_extend_equal, t1_leaf_merge, t2_balance, t3_bfs_reduce,
    t4_leaf_to_diameter_end, t5_split_branches, t6_caterpillarize, t7_extend_single_centroid,
    t8_extend_two_centroids, t9_rebalance_centroid_leaves, TransformTrace,
};
use dit_core::{Graph, Profile};

const MAX_N: usize = 11;

fn trees_up_to(max_n: usize) -> Vec<Graph> {
    (2..=max_n)
        .flat_map(|n| free_trees(n).expect("within cap"))
        .collect()
}

fn avgdist_gap(p: &Profile) -> Rat {
    p.avg_distance - p.proximity
}

fn ecc_gap(p: &Profile) -> Rat {
    p.avg_ecc - p.remoteness
}

fn rho_minus_r(p: &Profile) -> Rat {
    p.remoteness - Rat::from_int(i128::from(p.radius))
}

fn int(x: u32) -> Rat {
    Rat::from_int(i128::from(x))
}

/// Shared sanity for every successful application: order preserved, all
/// preconditions recorded true, all recorded claims hold.
fn check_trace_shape(tr: &TransformTrace) {
    assert_eq!(tr.after.n(), tr.before.n(), "rule changed the order");
    assert!(tr.precondition_verdicts.values().all(|&v| v));
    for claim in &tr.claims {
        assert!(
            claim.holds,
            "claim {} violated: {:?} bound {:?} actual {:?} on {:?}",
            claim.quantity,
            claim.relation,
            claim.bound,
            claim.actual,
            tr.before.edges()
        );
    }
}

#[test]
fn t1_never_lowers_the_distance_gap_and_meets_its_bound() {
    let mut applications = 0;
    for g in trees_up_to(MAX_N) {
        let Ok(tr) = t1_leaf_merge(&g) else { continue };
        applications += 1;
        check_trace_shape(&tr);
        let delta = avgdist_gap(&tr.after_profile) - avgdist_gap(&tr.before_profile);
        assert!(delta >= Rat::ZERO, "gap dropped on {:?}", g.edges());

        // Recompute the analytic lower bound from the recorded scalars:
        // (d1*d2/(n-1)) * (2*outside/n - 1).
        let n = Rat::from_int(g.n() as i128);
        let d1 = tr.local("d1").unwrap();
        let d2 = tr.local("d2").unwrap();
        let outside = tr.local("outside").unwrap();
        let bound = d1 * d2 / (n - Rat::ONE) * (rat(2, 1) * outside / n - Rat::ONE);
        assert!(delta >= bound, "analytic bound missed on {:?}", g.edges());
        assert_eq!(tr.before.leaves().len(), tr.after.leaves().len() + 1);
    }
    assert!(applications > 0);
}

#[test]
fn t2_never_lowers_the_distance_gap_and_shrinks_imbalance() {
    let mut applications = 0;
    for g in trees_up_to(MAX_N) {
        let Ok(tr) = t2_balance(&g) else { continue };
        applications += 1;
        check_trace_shape(&tr);
        let delta = avgdist_gap(&tr.after_profile) - avgdist_gap(&tr.before_profile);
        assert!(delta >= Rat::ZERO, "gap dropped on {:?}", g.edges());
        let before = tr.local("imbalance_before").unwrap();
        let after = tr.local("imbalance_after").unwrap();
        assert!(after < before, "legs did not rebalance on {:?}", g.edges());
    }
    assert!(applications > 0);
}

/// On a tree the search tree is the tree itself; on general graphs the
/// replacement never lowers the distance gap.
#[test]
fn t3_is_the_identity_on_trees_and_monotone_on_graphs() {
    for g in trees_up_to(MAX_N) {
        let tr = t3_bfs_reduce(&g).expect("defined on every connected graph");
        check_trace_shape(&tr);
        assert_eq!(tr.after, tr.before);
    }
    for n in 2..=6 {
        for g in connected_graphs(n).expect("within cap") {
            let tr = t3_bfs_reduce(&g).expect("defined on every connected graph");
            check_trace_shape(&tr);
            assert!(tr.after.is_tree());
            assert!(tr.after_profile.proximity <= tr.before_profile.proximity);
            assert!(tr.after_profile.avg_distance >= tr.before_profile.avg_distance);
            assert!(avgdist_gap(&tr.after_profile) >= avgdist_gap(&tr.before_profile));
        }
    }
}

#[test]
fn t4_grows_the_diameter_within_its_remoteness_budget() {
    let mut applications = 0;
    for g in trees_up_to(MAX_N) {
        let Ok(tr) = t4_leaf_to_diameter_end(&g) else { continue };
        applications += 1;
        check_trace_shape(&tr);
        let (b, a) = (&tr.before_profile, &tr.after_profile);
        assert_eq!(a.diameter, b.diameter + 1);
        assert!(ecc_gap(a) >= ecc_gap(b), "ecc gap dropped on {:?}", g.edges());

        // The proof's two analytic estimates, from the input order and
        // diameter alone.
        let n = Rat::from_int(g.n() as i128);
        let d = int(b.diameter);
        let ecc_floor = (rat(2, 1) * n - d - Rat::ONE) / (rat(2, 1) * n);
        let rho_ceiling = (rat(2, 1) * n - d - rat(3, 1)) / (rat(2, 1) * (n - Rat::ONE));
        assert!(a.avg_ecc - b.avg_ecc >= ecc_floor, "ecc floor missed on {:?}", g.edges());
        assert!(
            a.remoteness - b.remoteness <= rho_ceiling,
            "rho ceiling missed on {:?}",
            g.edges()
        );
    }
    assert!(applications > 0);
}

#[test]
fn t5_grows_the_diameter_twice_and_dominates_its_deltas() {
    let mut applications = 0;
    for g in trees_up_to(MAX_N) {
        let Ok(tr) = t5_split_branches(&g) else { continue };
        applications += 1;
        check_trace_shape(&tr);
        let (b, a) = (&tr.before_profile, &tr.after_profile);
        assert_eq!(a.diameter, b.diameter + 2);
        assert!(ecc_gap(a) >= ecc_gap(b), "ecc gap dropped on {:?}", g.edges());

        let d1 = tr.local("delta1").unwrap();
        for other in ["delta2", "delta3", "delta4"] {
            assert!(d1 >= tr.local(other).unwrap(), "{other} above delta1 on {:?}", g.edges());
        }
        assert_eq!(a.avg_ecc - b.avg_ecc, d1);
    }
    assert!(applications > 0);
}

#[test]
fn t6_flattens_without_touching_radius_or_diameter() {
    let mut applications = 0;
    for g in trees_up_to(MAX_N) {
        let Ok(tr) = t6_caterpillarize(&g) else { continue };
        applications += 1;
        check_trace_shape(&tr);
        let (b, a) = (&tr.before_profile, &tr.after_profile);
        assert!(tr.after.is_caterpillar());
        assert!(a.remoteness <= b.remoteness, "remoteness rose on {:?}", g.edges());
        assert_eq!(a.radius, b.radius);
        assert_eq!(a.diameter, b.diameter);
    }
    assert!(applications > 0);
}

#[test]
fn t7_and_t8_extend_within_half_a_unit_of_remoteness() {
    let mut hits7 = 0;
    let mut hits8 = 0;
    for g in trees_up_to(MAX_N) {
        for (hits, result) in [
            (&mut hits7, t7_extend_single_centroid(&g)),
            (&mut hits8, t8_extend_two_centroids(&g)),
        ] {
            let Ok(tr) = result else { continue };
            *hits += 1;
            check_trace_shape(&tr);
            let (b, a) = (&tr.before_profile, &tr.after_profile);
            assert_eq!(a.diameter, b.diameter + 1);
            assert!(
                a.remoteness - b.remoteness <= rat(1, 2),
                "remoteness jumped on {:?}",
                g.edges()
            );
        }
    }
    assert!(hits7 > 0 && hits8 > 0);
}

/// The leaf migration alone keeps the diameter and radius and cannot raise
/// remoteness; composed with the extension that follows it (two centroids
/// if the pair survived, one otherwise) the pair of steps behaves exactly
/// like a single extension.
#[test]
fn t9_composed_with_an_extension_behaves_like_one() {
    let mut applications = 0;
    for g in trees_up_to(MAX_N) {
        let Ok(tr9) = t9_rebalance_centroid_leaves(&g) else { continue };
        applications += 1;
        check_trace_shape(&tr9);
        let (b9, a9) = (&tr9.before_profile, &tr9.after_profile);
        assert_eq!(a9.diameter, b9.diameter);
        assert_eq!(a9.radius, b9.radius);
        assert!(a9.remoteness <= b9.remoteness, "remoteness rose on {:?}", g.edges());

        let follow = t8_extend_two_centroids(&tr9.after)
            .or_else(|_| t7_extend_single_centroid(&tr9.after))
            .expect("an extension applies after the migration");
        check_trace_shape(&follow);
        let end = &follow.after_profile;
        assert_eq!(end.diameter, b9.diameter + 1);
        assert!(
            end.remoteness - b9.remoteness <= rat(1, 2),
            "composite remoteness jumped on {:?}",
            g.edges()
        );
    }
    assert!(applications > 0);
}

#[test]
fn t10_never_raises_the_remoteness_radius_gap() {
    let mut applications = 0;
    for g in trees_up_to(MAX_N) {
        let Ok(tr) = t10_double_extend_equal(&g) else { continue };
        applications += 1;
        check_trace_shape(&tr);
        let (b, a) = (&tr.before_profile, &tr.after_profile);
        assert_eq!(a.diameter, b.diameter + 2);
        assert_eq!(a.radius, b.radius + 1);
        assert!(a.remoteness - b.remoteness <= Rat::ONE);
        assert!(rho_minus_r(a) <= rho_minus_r(b), "gap rose on {:?}", g.edges());
    }
    assert!(applications > 0);
}

#[test]
fn leaf_normalization_preserves_radius_and_diameter() {
    let mut applications = 0;
    for g in trees_up_to(MAX_N) {
        let Ok(Some(tr)) = normalize_leaf_positions(&g) else { continue };
        applications += 1;
        check_trace_shape(&tr);
        let (b, a) = (&tr.before_profile, &tr.after_profile);
        assert_eq!(a.radius, b.radius);
        assert_eq!(a.diameter, b.diameter);
        assert!(a.remoteness <= b.remoteness, "remoteness rose on {:?}", g.edges());
    }
    assert!(applications > 0);
}
