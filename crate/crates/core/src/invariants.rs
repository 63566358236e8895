//! Exact distance invariants: eccentricities, transmissions, proximity,
//! remoteness, average distance, average eccentricity, center and centroid.
//!
//! Everything is computed from one BFS-based distance matrix pass and kept
//! exact as [`Rat`] values. The centroid admits two independent
//! characterizations on trees (argmin of normalized transmission, and the
//! edge-split criterion); both are exposed so they can be checked against
//! each other.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::rat::Rat;

/// Errors from invariant computations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    /// Normalized invariants divide by n-1 and are undefined on one vertex.
    #[error("normalized invariants are undefined on a single-vertex graph")]
    SingleVertex,
    /// Distances are infinite between components.
    #[error("graph is disconnected")]
    Disconnected,
    /// The operation relies on tree structure.
    #[error("operation requires a tree")]
    NotATree,
}

impl From<GraphError> for InvariantError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Disconnected => InvariantError::Disconnected,
            GraphError::NotATree => InvariantError::NotATree,
            other => panic!("unexpected graph error during invariant computation: {other}"),
        }
    }
}

/// Every distance invariant of a connected graph, computed exactly.
///
/// Per-vertex data is indexed by vertex id. `centers` is the set of
/// vertices of minimum eccentricity and `centroids` the set of vertices of
/// minimum normalized transmission; both are sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Profile {
    pub n: usize,
    pub m: usize,
    /// Eccentricity e(v) per vertex.
    pub ecc_of: Vec<u32>,
    /// Minimum eccentricity.
    pub radius: u32,
    /// Maximum eccentricity.
    pub diameter: u32,
    /// Average eccentricity (1/n) * sum of e(v).
    pub avg_ecc: Rat,
    /// Transmission (sum of distances to all other vertices) per vertex.
    pub transmission_of: Vec<u64>,
    /// Normalized transmission pi(v) = transmission / (n-1) per vertex.
    pub pi_of: Vec<Rat>,
    /// Minimum normalized transmission.
    pub proximity: Rat,
    /// Maximum normalized transmission.
    pub remoteness: Rat,
    /// Average distance over unordered vertex pairs.
    pub avg_distance: Rat,
    /// Vertices of minimum eccentricity, ascending.
    pub centers: Vec<usize>,
    /// Vertices of minimum normalized transmission, ascending.
    pub centroids: Vec<usize>,
}

/// A diametric path of a tree together with the off-path subtrees.
///
/// `path` is the chosen diametric path v_0..v_D. Every vertex is assigned
/// the index of the path vertex its component hangs from (path vertices map
/// to their own position). `component_sizes[i]` counts the vertices hanging
/// off v_i, excluding v_i itself, so the sizes plus D+1 sum to n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiametricDecomposition {
    pub path: Vec<usize>,
    pub component_of: Vec<usize>,
    pub component_sizes: Vec<usize>,
}

/// Computes the full invariant profile of a connected graph with n >= 2.
pub fn invariant_profile(g: &Graph) -> Result<Profile, InvariantError> {
    let n = g.n();
    if n < 2 {
        return Err(InvariantError::SingleVertex);
    }
    let dm = g.distance_matrix()?;

    let mut ecc_of = Vec::with_capacity(n);
    let mut transmission_of = Vec::with_capacity(n);
    for v in 0..n {
        ecc_of.push(dm.eccentricity(v));
        transmission_of.push(dm.transmission(v));
    }
    let radius = *ecc_of.iter().min().expect("nonempty");
    let diameter = *ecc_of.iter().max().expect("nonempty");
    let ecc_sum: u64 = ecc_of.iter().map(|&e| u64::from(e)).sum();
    let avg_ecc = Rat::new(ecc_sum as i128, n as i128);

    let pi_of: Vec<Rat> = transmission_of
        .iter()
        .map(|&t| Rat::new(t as i128, (n - 1) as i128))
        .collect();
    let proximity = pi_of.iter().min().expect("nonempty").clone();
    let remoteness = pi_of.iter().max().expect("nonempty").clone();
    let transmission_sum: u64 = transmission_of.iter().sum();
    let avg_distance = Rat::new(transmission_sum as i128, (n * (n - 1)) as i128);

    let centers = argmin_indices(&ecc_of);
    let centroids = argmin_indices(&pi_of);

    Ok(Profile {
        n,
        m: g.m(),
        ecc_of,
        radius,
        diameter,
        avg_ecc,
        transmission_of,
        pi_of,
        proximity,
        remoteness,
        avg_distance,
        centers,
        centroids,
    })
}

/// Vertices of minimum eccentricity, ascending.
pub fn center_set(g: &Graph) -> Result<Vec<usize>, InvariantError> {
    if g.n() == 1 {
        return Ok(vec![0]);
    }
    let dm = g.distance_matrix()?;
    let ecc: Vec<u32> = (0..g.n()).map(|v| dm.eccentricity(v)).collect();
    Ok(argmin_indices(&ecc))
}

/// Centroid of a tree via the edge-split criterion: v is centroidal iff for
/// every incident edge e the component of G - e containing v has at least
/// n/2 vertices.
///
/// This is independent of the distance-matrix route (argmin of normalized
/// transmission in [`Profile::centroids`]); the two must agree on trees.
pub fn centroid_by_edge_split(g: &Graph) -> Result<Vec<usize>, InvariantError> {
    if !g.is_tree() {
        return Err(InvariantError::NotATree);
    }
    let n = g.n();
    let mut out = Vec::new();
    for v in 0..n {
        let ok = g
            .neighbors(v)
            .iter()
            .all(|&u| 2 * g.edge_split(v, u).expect("tree edge").n_u >= n);
        if ok {
            out.push(v);
        }
    }
    Ok(out)
}

/// Chooses a diametric path of a tree and assigns every vertex to the path
/// vertex its off-path subtree hangs from.
///
/// Among all diametric paths the one with the lexicographically smallest
/// endpoint pair is taken (in a tree the path between two vertices is then
/// unique), so the decomposition is deterministic.
pub fn diametric_decomposition(g: &Graph) -> Result<DiametricDecomposition, InvariantError> {
    if !g.is_tree() {
        return Err(InvariantError::NotATree);
    }
    let n = g.n();
    if n == 1 {
        return Ok(DiametricDecomposition {
            path: vec![0],
            component_of: vec![0],
            component_sizes: vec![0],
        });
    }
    let dm = g.distance_matrix()?;
    let diameter = (0..n).map(|v| dm.eccentricity(v)).max().expect("nonempty");

    // Lexicographically smallest endpoint pair (a, b) with d(a, b) = D.
    let a = (0..n)
        .find(|&v| dm.eccentricity(v) == diameter)
        .expect("diameter is attained");
    let b = (0..n)
        .find(|&u| dm.dist(a, u) == diameter)
        .expect("eccentricity of a equals the diameter");

    // Walk from b back to a; each step has a unique neighbor one closer.
    let dist_a = dm.row(a);
    let mut path = vec![b];
    let mut cur = b;
    while cur != a {
        let next = *g
            .neighbors(cur)
            .iter()
            .find(|&&w| dist_a[w] + 1 == dist_a[cur])
            .expect("tree path toward a");
        path.push(next);
        cur = next;
    }
    path.reverse();

    // Flood each off-path component from its path vertex.
    let mut component_of = vec![usize::MAX; n];
    for (i, &v) in path.iter().enumerate() {
        component_of[v] = i;
    }
    let mut component_sizes = vec![0usize; path.len()];
    for (i, &v) in path.iter().enumerate() {
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for &w in g.neighbors(x) {
                if component_of[w] == usize::MAX {
                    component_of[w] = i;
                    component_sizes[i] += 1;
                    stack.push(w);
                }
            }
        }
    }
    debug_assert!(component_of.iter().all(|&c| c != usize::MAX));

    Ok(DiametricDecomposition {
        path,
        component_of,
        component_sizes,
    })
}

fn argmin_indices<T: Ord>(values: &[T]) -> Vec<usize> {
    let best = values.iter().min().expect("nonempty");
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| *v == best)
        .map(|(i, _)| i)
        .collect()
}
