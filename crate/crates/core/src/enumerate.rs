//! Exhaustive enumeration of small graph classes, one representative per
//! isomorphism class: free trees, caterpillars and connected graphs.
//!
//! Trees come from successor generation of canonical rooted level
//! sequences filtered to free-tree representatives. Connected graphs come
//! from iterating all edge subsets of the complete graph (n <= 7) or from
//! single-vertex extensions of the previous order (n = 8), deduplicated by
//! canonical code. All streams are returned sorted by canonical code, so
//! results never depend on worker count.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::canon::{canonical_code, free_tree_levels, CanonicalCode};
use crate::graph::Graph;

/// Largest order for tree and caterpillar enumeration.
pub const TREE_CAP: usize = 16;
/// Largest order for connected-graph enumeration by default.
pub const CONNECTED_CAP: usize = 7;
/// Largest order for connected-graph enumeration behind the explicit
/// opt-in (the class is an order of magnitude bigger there).
pub const CONNECTED_CAP_EXTENDED: usize = 8;

/// The enumerable graph classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphClass {
    Tree,
    Caterpillar,
    Connected,
}

impl GraphClass {
    pub const ALL: [GraphClass; 3] = [
        GraphClass::Tree,
        GraphClass::Caterpillar,
        GraphClass::Connected,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            GraphClass::Tree => "tree",
            GraphClass::Caterpillar => "caterpillar",
            GraphClass::Connected => "connected",
        }
    }

    pub fn from_name(name: &str) -> Option<GraphClass> {
        GraphClass::ALL.into_iter().find(|c| c.name() == name)
    }

    /// Default enumeration cap for the class.
    pub fn cap(&self) -> usize {
        match self {
            GraphClass::Tree | GraphClass::Caterpillar => TREE_CAP,
            GraphClass::Connected => CONNECTED_CAP,
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Errors from the enumeration entry points.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("{class} enumeration supports orders 1..={cap}, got {n}")]
    OutOfRange {
        class: GraphClass,
        n: usize,
        cap: usize,
    },
}

/// All non-isomorphic trees on n vertices, sorted by canonical code.
pub fn free_trees(n: usize) -> Result<Vec<Graph>, EnumerateError> {
    check_range(GraphClass::Tree, n, TREE_CAP)?;
    let mut sequences = Vec::new();
    let mut level: Vec<u8> = (0..n as u8).collect();
    loop {
        let g = tree_from_levels(&level);
        if free_tree_levels(&g) == level {
            sequences.push(level.clone());
        }
        // Successor: truncate the deepest vertex past level one and repeat
        // the block that starts at its parent.
        let Some(p) = (0..n).rev().find(|&i| level[i] > 1) else {
            break;
        };
        let q = (0..p)
            .rev()
            .find(|&j| level[j] == level[p] - 1)
            .expect("a vertex one level up precedes p");
        for i in p..n {
            level[i] = level[i - (p - q)];
        }
    }
    sequences.sort_unstable();
    Ok(sequences.iter().map(|s| tree_from_levels(s)).collect())
}

/// All non-isomorphic caterpillars on n vertices: the trees whose non-leaf
/// vertices induce a path. Sorted by canonical code.
pub fn caterpillars(n: usize) -> Result<Vec<Graph>, EnumerateError> {
    check_range(GraphClass::Caterpillar, n, TREE_CAP)?;
    let mut trees = free_trees(n).expect("same cap");
    trees.retain(Graph::is_caterpillar);
    Ok(trees)
}

/// All non-isomorphic connected graphs on n <= 7 vertices, sorted by
/// canonical code.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>, EnumerateError> {
    check_range(GraphClass::Connected, n, CONNECTED_CAP)?;
    Ok(decode_all(connected_codes_by_mask(n)))
}

/// Connected-graph enumeration with the cap raised to 8. The extra order
/// is produced by attaching one vertex to every representative of the
/// previous order in all possible ways; every connected graph has a
/// non-cut vertex, so each class is reached.
pub fn connected_graphs_extended(n: usize) -> Result<Vec<Graph>, EnumerateError> {
    if n == 0 || n > CONNECTED_CAP_EXTENDED {
        return Err(EnumerateError::OutOfRange {
            class: GraphClass::Connected,
            n,
            cap: CONNECTED_CAP_EXTENDED,
        });
    }
    if n <= CONNECTED_CAP {
        return connected_graphs(n);
    }
    Ok(decode_all(connected_codes_by_extension(n)))
}

fn check_range(class: GraphClass, n: usize, cap: usize) -> Result<(), EnumerateError> {
    if n == 0 || n > cap {
        return Err(EnumerateError::OutOfRange { class, n, cap });
    }
    Ok(())
}

/// Builds the tree with the given level sequence: the parent of each
/// vertex is the latest earlier vertex one level up.
fn tree_from_levels(levels: &[u8]) -> Graph {
    let mut edges = Vec::with_capacity(levels.len().saturating_sub(1));
    for i in 1..levels.len() {
        let parent = (0..i)
            .rev()
            .find(|&j| levels[j] == levels[i] - 1)
            .expect("valid level sequence");
        edges.push((parent, i));
    }
    Graph::new(levels.len(), &edges).expect("level sequence describes a tree")
}

fn decode_all(codes: BTreeSet<CanonicalCode>) -> Vec<Graph> {
    codes
        .iter()
        .map(|c| c.to_graph().expect("codes produced by the encoder"))
        .collect()
}

/// Vertex pairs of the complete graph in the fixed column order shared
/// with the canonical packing.
fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for k in 1..n {
        for i in 0..k {
            pairs.push((i, k));
        }
    }
    pairs
}

fn connected_codes_by_mask(n: usize) -> BTreeSet<CanonicalCode> {
    let pairs = all_pairs(n);
    let full: u16 = (1 << n) - 1;
    (0u64..1 << pairs.len())
        .into_par_iter()
        .filter_map(|mask| {
            let mut rows = [0u16; 8];
            for (idx, &(i, k)) in pairs.iter().enumerate() {
                if mask & (1 << idx) != 0 {
                    rows[i] |= 1 << k;
                    rows[k] |= 1 << i;
                }
            }
            // Bitset flood fill from vertex 0.
            let mut reach: u16 = 1;
            loop {
                let mut next = reach;
                for v in 0..n {
                    if reach & (1 << v) != 0 {
                        next |= rows[v];
                    }
                }
                if next == reach {
                    break;
                }
                reach = next;
            }
            if reach != full {
                return None;
            }
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(idx, _)| mask & (1 << idx) != 0)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::new(n, &edges).expect("pairs are valid simple edges");
            Some(canonical_code(&g).expect("order is within the canon cap"))
        })
        .collect()
}

fn connected_codes_by_extension(n: usize) -> BTreeSet<CanonicalCode> {
    let base = connected_graphs(n - 1).expect("previous order is within cap");
    base.par_iter()
        .flat_map_iter(|g| {
            let g = g.clone();
            (1u32..1 << (n - 1)).map(move |subset| {
                let mut edges = g.edges();
                for v in 0..n - 1 {
                    if subset & (1 << v) != 0 {
                        edges.push((v, n - 1));
                    }
                }
                let ext = Graph::new(n, &edges).expect("extension edges are simple");
                canonical_code(&ext).expect("order is within the canon cap")
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_code;
    use crate::families::{make_path, make_spider3};

    /// Distinct trees per order, long verified for this range.
    const TREE_COUNTS: [usize; 10] = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106];
    /// Distinct caterpillars per order.
    const CATERPILLAR_COUNTS: [usize; 8] = [1, 1, 1, 2, 3, 6, 10, 20];
    /// Distinct connected graphs per order.
    const CONNECTED_COUNTS: [usize; 6] = [1, 1, 2, 6, 21, 112];

    #[test]
    fn tree_counts_match() {
        for (i, &want) in TREE_COUNTS.iter().enumerate() {
            assert_eq!(free_trees(i + 1).unwrap().len(), want, "n={}", i + 1);
        }
    }

    #[test]
    fn caterpillar_counts_match() {
        for (i, &want) in CATERPILLAR_COUNTS.iter().enumerate() {
            assert_eq!(caterpillars(i + 1).unwrap().len(), want, "n={}", i + 1);
        }
    }

    #[test]
    fn connected_counts_match() {
        for (i, &want) in CONNECTED_COUNTS.iter().enumerate() {
            assert_eq!(connected_graphs(i + 1).unwrap().len(), want, "n={}", i + 1);
        }
    }

    #[test]
    fn four_vertex_trees_are_path_and_star() {
        let got: Vec<CanonicalCode> = free_trees(4)
            .unwrap()
            .iter()
            .map(|g| canonical_code(g).unwrap())
            .collect();
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let mut want = vec![
            canonical_code(&make_path(4).unwrap()).unwrap(),
            canonical_code(&star).unwrap(),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn even_spider_is_the_lone_non_caterpillar_at_seven() {
        let trees = free_trees(7).unwrap();
        let cats = caterpillars(7).unwrap();
        assert_eq!(trees.len() - cats.len(), 1);
        let spider = canonical_code(&make_spider3(7).unwrap()).unwrap();
        assert!(!cats
            .iter()
            .any(|g| canonical_code(g).unwrap() == spider));
    }

    #[test]
    fn caterpillars_are_a_tree_subset() {
        for n in 1..=12 {
            let tree_codes: BTreeSet<CanonicalCode> = free_trees(n)
                .unwrap()
                .iter()
                .map(|g| canonical_code(g).unwrap())
                .collect();
            for c in caterpillars(n).unwrap() {
                assert!(tree_codes.contains(&canonical_code(&c).unwrap()));
            }
        }
    }

    #[test]
    fn streams_are_sorted_and_duplicate_free() {
        let streams = [
            free_trees(9).unwrap(),
            caterpillars(9).unwrap(),
            connected_graphs(5).unwrap(),
        ];
        for graphs in streams {
            let codes: Vec<CanonicalCode> = graphs
                .iter()
                .map(|g| canonical_code(g).unwrap())
                .collect();
            for w in codes.windows(2) {
                assert!(w[0] < w[1], "codes must strictly increase");
            }
        }
    }

    #[test]
    fn emitted_graphs_are_connected_with_right_order() {
        for g in free_trees(8).unwrap() {
            assert_eq!(g.n(), 8);
            assert!(g.is_tree());
        }
        for g in connected_graphs(5).unwrap() {
            assert_eq!(g.n(), 5);
            assert!(g.is_connected());
        }
    }

    #[test]
    fn tree_count_within_connected_stream_matches() {
        let trees = free_trees(5).unwrap().len();
        let in_stream = connected_graphs(5)
            .unwrap()
            .iter()
            .filter(|g| g.is_tree())
            .count();
        assert_eq!(in_stream, trees);
    }

    #[test]
    fn caps_are_enforced() {
        assert!(free_trees(17).is_err());
        assert!(caterpillars(0).is_err());
        assert!(connected_graphs(8).is_err());
        assert!(connected_graphs_extended(9).is_err());
        assert!(free_trees(16).is_ok());
    }

    #[test]
    fn extension_route_agrees_with_masks_at_five() {
        let by_ext = connected_codes_by_extension(5);
        let by_mask = connected_codes_by_mask(5);
        assert_eq!(by_ext, by_mask);
    }

    #[test]
    fn class_names_round_trip() {
        for class in GraphClass::ALL {
            assert_eq!(GraphClass::from_name(class.name()), Some(class));
        }
        assert_eq!(GraphClass::from_name("digraph"), None);
    }
}
