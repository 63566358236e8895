//! Canonical codes for isomorphism testing and deduplication.
//!
//! Trees get a compact code built from a canonical rooted level sequence
//! (rooted at a graph center, children ordered so the sequence is
//! lexicographically maximal, and minimized over the at most two centers).
//! General graphs get the lexicographically smallest packed adjacency
//! bitstring over all vertex orderings with non-decreasing degree; that
//! restriction is isomorphism-safe and prunes the search hard.
//!
//! Codes are ordered bytes, printable as lowercase hex, and decodable back
//! into a representative graph.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph::Graph;

/// Largest order accepted by the general-graph code search.
pub const GENERAL_CANON_MAX: usize = 10;

const TREE_TAG: u8 = b'T';
const GENERAL_TAG: u8 = b'G';

/// Errors from encoding or decoding canonical codes.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CanonError {
    /// The general-graph search is exponential; refuse large non-trees.
    #[error("canonical code for non-trees is limited to {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
    /// Raised when decoding bytes that no encoder produces.
    #[error("malformed canonical code: {0}")]
    Malformed(String),
}

/// An isomorphism-invariant byte code: two graphs get equal codes exactly
/// when they are isomorphic. Ordered, hashable and usable as a map key.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// True when the code describes a tree.
    pub fn is_tree_code(&self) -> bool {
        self.0.first() == Some(&TREE_TAG)
    }

    /// Rebuilds a representative graph from the code.
    pub fn to_graph(&self) -> Result<Graph, CanonError> {
        match self.0.split_first() {
            Some((&TREE_TAG, levels)) => decode_tree(levels),
            Some((&GENERAL_TAG, rest)) => decode_general(rest),
            _ => Err(CanonError::Malformed("missing tag byte".into())),
        }
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl FromStr for CanonicalCode {
    type Err = CanonError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.len() % 2 != 0 {
            return Err(CanonError::Malformed("odd hex length".into()));
        }
        let bytes = (0..s.len() / 2)
            .map(|i| {
                u8::from_str_radix(&s[2 * i..2 * i + 2], 16)
                    .map_err(|_| CanonError::Malformed(format!("bad hex at byte {i}")))
            })
            .collect::<Result<Vec<u8>, _>>()?;
        Ok(CanonicalCode(bytes))
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CanonicalCode {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Computes the canonical code of a connected graph.
///
/// Trees of any supported order are handled by the level-sequence code;
/// other graphs go through the ordering search and are limited to
/// [`GENERAL_CANON_MAX`] vertices.
pub fn canonical_code(g: &Graph) -> Result<CanonicalCode, CanonError> {
    if g.is_tree() {
        let mut code = Vec::with_capacity(g.n() + 1);
        code.push(TREE_TAG);
        code.extend(free_tree_levels(g));
        return Ok(CanonicalCode(code));
    }
    let n = g.n();
    if n > GENERAL_CANON_MAX {
        return Err(CanonError::TooLarge {
            n,
            max: GENERAL_CANON_MAX,
        });
    }
    let cols = minimal_columns(g);
    let mut code = vec![GENERAL_TAG, n as u8];
    code.extend(pack_columns(n, &cols));
    Ok(CanonicalCode(code))
}

/// Canonical level sequence of a free tree: the rooted sequence from a
/// center, taking the smaller one when the tree has two centers.
pub fn free_tree_levels(g: &Graph) -> Vec<u8> {
    debug_assert!(g.is_tree());
    tree_centers(g)
        .into_iter()
        .map(|c| rooted_levels(g, c))
        .min()
        .expect("a tree has at least one center")
}

/// Canonical level sequence of the tree rooted at `root`: depth-first
/// levels with each vertex's child sequences ordered lexicographically
/// descending, which makes the sequence maximal over child orderings.
pub fn rooted_levels(g: &Graph, root: usize) -> Vec<u8> {
    fn rec(g: &Graph, v: usize, parent: usize, depth: u8) -> Vec<u8> {
        let mut subs: Vec<Vec<u8>> = g
            .neighbors(v)
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| rec(g, w, v, depth + 1))
            .collect();
        subs.sort_unstable_by(|a, b| b.cmp(a));
        let mut seq = vec![depth];
        for s in subs {
            seq.extend(s);
        }
        seq
    }
    rec(g, root, usize::MAX, 0)
}

/// The one or two centers of a tree, found from a doubled breadth-first
/// sweep: the middle vertices of a longest path.
fn tree_centers(g: &Graph) -> Vec<usize> {
    if g.n() == 1 {
        return vec![0];
    }
    let far = |v: usize| -> usize {
        let d = g.bfs_distances(v).expect("tree is connected");
        (0..g.n()).max_by_key(|&u| (d[u], usize::MAX - u)).expect("nonempty")
    };
    let a = far(0);
    let b = far(a);
    let dist_a = g.bfs_distances(a).expect("tree is connected");
    let diameter = dist_a[b] as usize;

    // Walk the a-b path and keep its middle vertex or two.
    let mut path = vec![b];
    let mut cur = b;
    while cur != a {
        let next = *g
            .neighbors(cur)
            .iter()
            .find(|&&w| dist_a[w] + 1 == dist_a[cur])
            .expect("path toward a");
        path.push(next);
        cur = next;
    }
    if diameter % 2 == 0 {
        vec![path[diameter / 2]]
    } else {
        let mut c = vec![path[diameter / 2], path[diameter / 2 + 1]];
        c.sort_unstable();
        c
    }
}

/// Finds the lexicographically smallest column vector over all vertex
/// orderings with non-decreasing degree. Column `k` holds the adjacency
/// bits between slot `k` and slots `0..k`, with slot 0 in the highest
/// compared position so integer comparison matches bitstring comparison.
fn minimal_columns(g: &Graph) -> Vec<u16> {
    let n = g.n();
    let degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut slot_degree = degrees.clone();
    slot_degree.sort_unstable();

    let adj: Vec<u16> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u16, |m, &w| m | (1 << w)))
        .collect();

    struct Search<'a> {
        n: usize,
        degrees: &'a [usize],
        slot_degree: &'a [usize],
        adj: &'a [u16],
        perm: Vec<usize>,
        used: u16,
        cols: Vec<u16>,
        best: Option<Vec<u16>>,
    }

    impl Search<'_> {
        fn descend(&mut self, k: usize) {
            if k == self.n {
                if self.best.as_ref().is_none_or(|b| self.cols < *b) {
                    self.best = Some(self.cols.clone());
                }
                return;
            }
            for v in 0..self.n {
                if self.used & (1 << v) != 0 || self.degrees[v] != self.slot_degree[k] {
                    continue;
                }
                let mut col = 0u16;
                for (i, &u) in self.perm.iter().enumerate() {
                    if self.adj[v] & (1 << u) != 0 {
                        col |= 1 << (k - 1 - i);
                    }
                }
                self.cols.push(col);
                let worse = self
                    .best
                    .as_ref()
                    .is_some_and(|b| self.cols[..] > b[..=k]);
                if !worse {
                    self.perm.push(v);
                    self.used |= 1 << v;
                    self.descend(k + 1);
                    self.used &= !(1 << v);
                    self.perm.pop();
                }
                self.cols.pop();
            }
        }
    }

    let mut search = Search {
        n,
        degrees: &degrees,
        slot_degree: &slot_degree,
        adj: &adj,
        perm: Vec::with_capacity(n),
        used: 0,
        cols: Vec::with_capacity(n),
        best: None,
    };
    search.descend(0);
    search.best.expect("at least one ordering exists")
}

/// Packs columns into bytes: pair (i, k) with i < k sits at bit
/// k(k-1)/2 + i, filled most significant bit first.
fn pack_columns(n: usize, cols: &[u16]) -> Vec<u8> {
    let bits = n * (n - 1) / 2;
    let mut bytes = vec![0u8; bits.div_ceil(8)];
    let mut pos = 0;
    for (k, &col) in cols.iter().enumerate().skip(1) {
        for i in 0..k {
            if col & (1 << (k - 1 - i)) != 0 {
                bytes[pos / 8] |= 0x80 >> (pos % 8);
            }
            pos += 1;
        }
    }
    bytes
}

fn decode_tree(levels: &[u8]) -> Result<Graph, CanonError> {
    if levels.is_empty() {
        return Err(CanonError::Malformed("empty level sequence".into()));
    }
    if levels[0] != 0 {
        return Err(CanonError::Malformed("level sequence must start at 0".into()));
    }
    let mut edges = Vec::with_capacity(levels.len().saturating_sub(1));
    for i in 1..levels.len() {
        let level = levels[i];
        if level == 0 || level > levels[i - 1] + 1 {
            return Err(CanonError::Malformed(format!(
                "level {level} at position {i} has no parent"
            )));
        }
        let parent = (0..i)
            .rev()
            .find(|&j| levels[j] == level - 1)
            .expect("checked above");
        edges.push((parent, i));
    }
    Graph::new(levels.len(), &edges)
        .map_err(|e| CanonError::Malformed(format!("level sequence builds no tree: {e}")))
}

fn decode_general(rest: &[u8]) -> Result<Graph, CanonError> {
    let (&n_byte, bytes) = rest
        .split_first()
        .ok_or_else(|| CanonError::Malformed("missing vertex count".into()))?;
    let n = n_byte as usize;
    if n == 0 {
        return Err(CanonError::Malformed("zero vertices".into()));
    }
    let bits = n * (n - 1) / 2;
    if bytes.len() != bits.div_ceil(8) {
        return Err(CanonError::Malformed(format!(
            "expected {} adjacency bytes for {n} vertices, got {}",
            bits.div_ceil(8),
            bytes.len()
        )));
    }
    let bit_at = |pos: usize| bytes[pos / 8] & (0x80 >> (pos % 8)) != 0;
    for pad in bits..bytes.len() * 8 {
        if bit_at(pad) {
            return Err(CanonError::Malformed("nonzero padding bits".into()));
        }
    }
    let mut edges = Vec::new();
    let mut pos = 0;
    for k in 1..n {
        for i in 0..k {
            if bit_at(pos) {
                edges.push((i, k));
            }
            pos += 1;
        }
    }
    Graph::new(n, &edges).map_err(|e| CanonError::Malformed(format!("bad adjacency bits: {e}")))
}
