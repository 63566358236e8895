//! Immutable simple undirected graphs with BFS-based distance machinery.
//!
//! Vertices are `0..n`.  Adjacency lists are kept sorted so that iteration
//! order — and therefore everything downstream that picks "the smallest
//! neighbor" — is deterministic.  Graphs are never mutated after
//! construction; transformations build new graphs from edited edge lists.

use serde::Serialize;

/// Errors produced by graph construction and distance queries.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("operation requires a tree")]
    NotATree,
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Graph {
    n: usize,
    m: usize,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicate
    /// edges and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if adjacency[u].contains(&v) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            m: edges.len(),
            adjacency,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for &v in &self.adjacency[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Vertices of degree one, ascending.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Hop counts from `v` to every vertex; `None` marks unreachable slots
    /// internally, surfaced as a `Disconnected` error.
    pub fn bfs_distances(&self, v: usize) -> Result<Vec<u32>, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        let mut dist = vec![u32::MAX; self.n];
        let mut queue = std::collections::VecDeque::with_capacity(self.n);
        dist[v] = 0;
        queue.push_back(v);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if dist.iter().any(|&d| d == u32::MAX) {
            return Err(GraphError::Disconnected);
        }
        Ok(dist)
    }

    /// The BFS tree rooted at `root`: each non-root vertex keeps one edge to
    /// its smallest-id neighbor at the previous BFS level.  Distances from
    /// the root are preserved by construction.
    pub fn bfs_tree(&self, root: usize) -> Result<Graph, GraphError> {
        let dist = self.bfs_distances(root)?;
        let mut edges = Vec::with_capacity(self.n - 1);
        for v in 0..self.n {
            if v == root {
                continue;
            }
            let parent = self.adjacency[v]
                .iter()
                .copied()
                .find(|&u| dist[u] + 1 == dist[v])
                .expect("BFS level structure guarantees a parent");
            edges.push((parent.min(v), parent.max(v)));
        }
        Graph::new(self.n, &edges)
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).is_ok()
    }

    /// True iff connected with exactly `n - 1` edges.
    pub fn is_tree(&self) -> bool {
        self.m == self.n - 1 && self.is_connected()
    }

    /// True iff the non-leaf vertices induce a path (or there are at most
    /// two of them).  Only meaningful for trees.
    pub fn is_caterpillar(&self) -> bool {
        if !self.is_tree() {
            return false;
        }
        let spine: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) >= 2).collect();
        if spine.len() <= 1 {
            return true;
        }
        // The spine induces a path iff its induced degree sequence has
        // exactly two 1s and the rest 2s, and the induced edge count fits a
        // path — for an induced subgraph of a tree (a forest), degree counts
        // alone decide it together with connectivity via edge count.
        let mut induced_deg = vec![0usize; self.n];
        let mut induced_edges = 0usize;
        for &u in &spine {
            for &v in &self.adjacency[u] {
                if v > u && self.degree(v) >= 2 {
                    induced_deg[u] += 1;
                    induced_deg[v] += 1;
                    induced_edges += 1;
                }
            }
        }
        if induced_edges != spine.len() - 1 {
            return false;
        }
        let ones = spine.iter().filter(|&&v| induced_deg[v] == 1).count();
        let twos = spine.iter().filter(|&&v| induced_deg[v] == 2).count();
        ones == 2 && ones + twos == spine.len()
    }

    /// Component sizes of `G - e` for a tree edge `e`, per endpoint.
    pub fn edge_split(&self, u: usize, v: usize) -> Result<EdgeSplit, GraphError> {
        if !self.is_tree() {
            return Err(GraphError::NotATree);
        }
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        // Collect u's side by a BFS that refuses to cross (u, v).
        let mut seen = vec![false; self.n];
        let mut queue = std::collections::VecDeque::new();
        seen[u] = true;
        queue.push_back(u);
        let mut side_u = Vec::new();
        while let Some(x) = queue.pop_front() {
            side_u.push(x);
            for &w in &self.adjacency[x] {
                if (x, w) == (u, v) || (x, w) == (v, u) {
                    continue;
                }
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        side_u.sort_unstable();
        let n_u = side_u.len();
        Ok(EdgeSplit {
            edge: (u, v),
            side_u,
            n_u,
            n_v: self.n - n_u,
        })
    }

    /// All-pairs distances.
    pub fn distance_matrix(&self) -> Result<DistanceMatrix, GraphError> {
        let mut d = Vec::with_capacity(self.n);
        for v in 0..self.n {
            d.push(self.bfs_distances(v)?);
        }
        Ok(DistanceMatrix { n: self.n, d })
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// All-pairs hop counts of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Vec<u32>>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dist(&self, u: usize, v: usize) -> u32 {
        self.d[u][v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.d[u]
    }

    /// Sum of distances from `u` to every other vertex.
    pub fn transmission(&self, u: usize) -> u64 {
        self.d[u].iter().map(|&x| x as u64).sum()
    }

    /// Largest distance from `u`.
    pub fn eccentricity(&self, u: usize) -> u32 {
        *self.d[u].iter().max().expect("non-empty row")
    }
}

/// The two components of `G - e` for a tree edge `e = (u, v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSplit {
    /// The removed edge, endpoint order as queried.
    pub edge: (usize, usize),
    /// Sorted vertex set of the component containing `edge.0`.
    pub side_u: Vec<usize>,
    /// Size of the component containing `edge.0`.
    pub n_u: usize,
    /// Size of the component containing `edge.1`.
    pub n_v: usize,
}
