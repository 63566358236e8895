//! Structural properties of the invariant profile, checked exhaustively
//! over the enumerated classes: ordering relations between the invariants,
//! the two centroid characterizations, and label-invariance of the
//! canonical code.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dit_core::canon::canonical_code;
use dit_core::enumerate::{connected_graphs, free_trees};
use dit_core::invariants::{center_set, centroid_by_edge_split, invariant_profile};
use dit_core::rat::Rat;
use dit_core::{Graph, Profile};

fn profile(g: &Graph) -> Profile {
    invariant_profile(g).expect("enumerated graphs have profiles")
}

fn all_trees(max_n: usize) -> Vec<Graph> {
    (2..=max_n)
        .flat_map(|n| free_trees(n).expect("within cap"))
        .collect()
}

fn all_connected(max_n: usize) -> Vec<Graph> {
    (2..=max_n)
        .flat_map(|n| connected_graphs(n).expect("within cap"))
        .collect()
}

/// Proximity and remoteness are the min and max of the normalized
/// transmissions and the average distance is their mean, so the profile
/// must satisfy pi <= avg_distance <= rho on every connected graph.
#[test]
fn proximity_avg_distance_remoteness_are_ordered() {
    for g in all_trees(12).iter().chain(all_connected(7).iter()) {
        let p = profile(g);
        assert!(
            p.proximity <= p.avg_distance && p.avg_distance <= p.remoteness,
            "ordering failed on {:?}",
            g.edges()
        );
        // The mean-of-pi identity behind the sandwich, recomputed directly.
        let total: u64 = p.transmission_of.iter().sum();
        let mean = Rat::new(total as i128, (p.n * (p.n - 1)) as i128);
        assert_eq!(p.avg_distance, mean);
    }
}

#[test]
fn radius_avg_ecc_diameter_are_ordered() {
    for g in all_trees(12).iter().chain(all_connected(7).iter()) {
        let p = profile(g);
        let r = Rat::from_int(i128::from(p.radius));
        let d = Rat::from_int(i128::from(p.diameter));
        assert!(r <= p.avg_ecc && p.avg_ecc <= d, "ordering failed on {:?}", g.edges());
        assert!(p.diameter <= 2 * p.radius);
    }
}

/// In a tree the radius is exactly the rounded-up half diameter.
#[test]
fn tree_radius_is_half_the_diameter_rounded_up() {
    for g in all_trees(12) {
        let p = profile(&g);
        assert_eq!(u64::from(p.radius), u64::from(p.diameter).div_ceil(2));
    }
}

/// The profile finds centroids by minimizing normalized transmission; the
/// edge-split route instead checks that every incident edge leaves at least
/// half the vertices on the vertex's side. Both must name the same set.
#[test]
fn centroid_routes_agree_on_all_trees() {
    for g in all_trees(12) {
        let from_profile = profile(&g).centroids;
        let from_splits = centroid_by_edge_split(&g).expect("tree centroids");
        assert_eq!(from_profile, from_splits, "centroid mismatch on {:?}", g.edges());
    }
}

#[test]
fn leaves_are_never_centroidal() {
    for g in all_trees(12) {
        if g.n() < 3 {
            continue;
        }
        let centroids = profile(&g).centroids;
        for leaf in g.leaves() {
            assert!(!centroids.contains(&leaf), "leaf {leaf} centroidal in {:?}", g.edges());
        }
    }
}

/// A tree has one or two centroidal vertices; when there are two they are
/// adjacent and the shared edge splits the tree into equal halves (which
/// forces even order).
#[test]
fn centroid_sets_have_the_tree_shape() {
    for g in all_trees(12) {
        let centroids = profile(&g).centroids;
        match centroids.as_slice() {
            [_] => {}
            [u, v] => {
                assert!(g.has_edge(*u, *v), "non-adjacent centroids in {:?}", g.edges());
                assert_eq!(g.n() % 2, 0);
                let split = g.edge_split(*u, *v).expect("edge exists");
                assert_eq!(split.n_u, split.n_v);
            }
            other => panic!("{} centroids on {:?}", other.len(), g.edges()),
        }
    }
}

#[test]
fn center_set_matches_the_profile() {
    for g in all_trees(10).iter().chain(all_connected(6).iter()) {
        let p = profile(g);
        assert_eq!(center_set(g).expect("centers"), p.centers);
        for &c in &p.centers {
            assert_eq!(p.ecc_of[c], p.radius);
        }
    }
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| (perm[u], perm[v]))
        .collect();
    Graph::new(g.n(), &edges).expect("permuting labels preserves validity")
}

/// Canonical codes must not depend on vertex labels: any relabeling of a
/// graph gets the same code, and the scalar invariants are preserved.
#[test]
fn canonical_code_is_label_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);
    let sample: Vec<Graph> = all_trees(10)
        .into_iter()
        .chain(all_connected(6))
        .collect();
    for g in sample {
        let code = canonical_code(&g).expect("within caps");
        let p = profile(&g);
        let mut perm: Vec<usize> = (0..g.n()).collect();
        for _ in 0..100 {
            perm.shuffle(&mut rng);
            let h = relabel(&g, &perm);
            assert_eq!(canonical_code(&h).expect("within caps"), code);
            let q = profile(&h);
            assert_eq!((q.proximity, q.remoteness, q.avg_distance), (p.proximity, p.remoteness, p.avg_distance));
            assert_eq!((q.radius, q.diameter, q.avg_ecc), (p.radius, p.diameter, p.avg_ecc));
        }
    }
}

/// Distinct enumerated graphs get distinct codes and every code rebuilds a
/// graph with the same code (decode is a section of encode).
#[test]
fn codes_decode_back_to_the_same_class() {
    for n in 2..=9 {
        let trees = free_trees(n).expect("within cap");
        let mut seen = BTreeSet::new();
        for g in &trees {
            let code = canonical_code(g).expect("trees always encode");
            assert!(seen.insert(code.clone()), "duplicate code at n={n}");
            let rebuilt = code.to_graph().expect("codes decode");
            assert_eq!(rebuilt.n(), n);
            assert_eq!(canonical_code(&rebuilt).expect("decoded tree"), code);
        }
    }
    for n in 2..=6 {
        for g in connected_graphs(n).expect("within cap") {
            let code = canonical_code(&g).expect("within caps");
            let rebuilt = code.to_graph().expect("codes decode");
            assert_eq!(canonical_code(&rebuilt).expect("decoded graph"), code);
        }
    }
}
