//! Simple undirected graphs on at most 64 vertices.
//!
//! Each vertex neighborhood is a `u64` bit set, so complement, union and
//! connectivity are word-parallel.

use std::fmt;

use thiserror::Error;

/// Largest supported vertex count.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order {0} exceeds the supported maximum of {MAX_ORDER}")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("adjacency rows are not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("line graph would have {0} vertices (maximum {MAX_ORDER})")]
    LineGraphCapacity(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// An immutable simple graph with vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    ///
    /// Panics if `n > 64`.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_ORDER, "graph order {n} exceeds {MAX_ORDER}");
        Graph { n, adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n > MAX_ORDER {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, order: n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Graph { n, adj })
    }

    /// Builds a graph from neighborhood bit sets, checking every invariant.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self, GraphError> {
        let n = rows.len();
        if n > MAX_ORDER {
            return Err(GraphError::TooManyVertices(n));
        }
        let mask = low_mask(n);
        for (u, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                let vertex = (row & !mask).trailing_zeros() as usize;
                return Err(GraphError::VertexOutOfRange { vertex, order: n });
            }
            if row >> u & 1 == 1 {
                return Err(GraphError::Loop(u));
            }
            let mut rest = row;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if rows[v] >> u & 1 == 0 {
                    return Err(GraphError::Asymmetric(u, v));
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    /// Rows already known to satisfy the invariants.
    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        debug_assert!(Graph::from_rows(rows.clone()).is_ok());
        Graph { n: rows.len(), adj: rows }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            let mut higher = self.adj[u] & !low_mask(u + 1);
            std::iter::from_fn(move || {
                if higher == 0 {
                    return None;
                }
                let v = higher.trailing_zeros() as usize;
                higher &= higher - 1;
                Some((u, v))
            })
        })
    }

    pub fn complement(&self) -> Graph {
        let mask = low_mask(self.n);
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(u, &row)| !row & mask & !(1u64 << u))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Vertices of the line graph are the edges of `self` in [`Graph::edges`] order.
    pub fn line_graph(&self) -> Result<Graph, GraphError> {
        let edges: Vec<(usize, usize)> = self.edges().collect();
        let m = edges.len();
        if m > MAX_ORDER {
            return Err(GraphError::LineGraphCapacity(m));
        }
        let mut incident = vec![0u64; self.n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            incident[u] |= 1 << i;
            incident[v] |= 1 << i;
        }
        let adj = edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| (incident[u] | incident[v]) & !(1u64 << i))
            .collect();
        Ok(Graph { n: m, adj })
    }

    /// Vertices of `h` are shifted by `self.order()`.
    pub fn disjoint_union(&self, h: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + h.n;
        if n > MAX_ORDER {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(h.adj.iter().map(|&r| r << self.n));
        Ok(Graph { n, adj })
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal order");
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            let mut row = self.adj[u];
            let mut image = 0u64;
            while row != 0 {
                let v = row.trailing_zeros() as usize;
                row &= row - 1;
                image |= 1 << perm[v];
            }
            adj[perm[u]] = image;
        }
        Graph { n: self.n, adj }
    }

    /// The subgraph induced on all vertices except `v`, with higher vertices shifted down.
    pub fn delete_vertex(&self, v: usize) -> Graph {
        assert!(v < self.n);
        let lower = low_mask(v);
        let adj = (0..self.n)
            .filter(|&u| u != v)
            .map(|u| {
                let row = self.adj[u];
                (row & lower) | ((row >> 1) & !lower & !(1u64 << 63))
            })
            .map(|r| r & low_mask(self.n - 1))
            .collect();
        Graph { n: self.n - 1, adj }
    }

    /// Adds a vertex `n` adjacent to the vertex set `neighbors`.
    pub fn add_vertex(&self, neighbors: u64) -> Result<Graph, GraphError> {
        let n = self.n + 1;
        if n > MAX_ORDER {
            return Err(GraphError::TooManyVertices(n));
        }
        if neighbors & !low_mask(self.n) != 0 {
            let vertex = (neighbors & !low_mask(self.n)).trailing_zeros() as usize;
            return Err(GraphError::VertexOutOfRange { vertex, order: self.n });
        }
        let mut adj = self.adj.clone();
        let mut rest = neighbors;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            adj[u] |= 1 << self.n;
        }
        adj.push(neighbors);
        Ok(Graph { n, adj })
    }

    /// Degrees in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        degrees
    }

    /// Vertices reachable from `start` inside the vertex set `allowed`.
    pub(crate) fn reach_within(&self, start: usize, allowed: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            next &= allowed & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Breadth-first connectivity; graphs with at most one vertex are connected.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let all = low_mask(self.n);
        self.reach_within(0, all) == all
    }

    /// True when deleting `v` leaves the remaining vertices disconnected.
    pub fn is_cut_vertex(&self, v: usize) -> bool {
        if self.n <= 2 {
            return false;
        }
        let rest = low_mask(self.n) & !(1u64 << v);
        let start = rest.trailing_zeros() as usize;
        self.reach_within(start, rest) != rest
    }

    /// The common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let r = if self.n == 0 { 0 } else { self.degree(0) };
        (0..self.n).all(|v| self.degree(v) == r).then_some(r)
    }

    pub fn is_regular(&self) -> bool {
        self.regular_degree().is_some()
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let mut row = self.adj[u];
                while row != 0 {
                    let v = row.trailing_zeros() as usize;
                    row &= row - 1;
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        stack.push(v);
                    } else if color[v] == color[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Number of triangles.
    pub fn triangle_count(&self) -> usize {
        self.edges()
            .map(|(u, v)| (self.adj[u] & self.adj[v] & !low_mask(v + 1)).count_ones() as usize)
            .sum()
    }

    /// Dense 0/1 adjacency matrix in row-major order.
    pub fn adjacency_matrix<T: num_traits::Zero + num_traits::One + Clone>(&self) -> Vec<T> {
        let mut a = vec![T::zero(); self.n * self.n];
        for (u, v) in self.edges() {
            a[u * self.n + v] = T::one();
            a[v * self.n + u] = T::one();
        }
        a
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

// Constructors for the standard families.

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n > MAX_ORDER {
        return Err(GraphError::TooManyVertices(n));
    }
    Ok(Graph::empty(n).complement())
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidParameter("path needs at least 1 vertex".into()));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParameter("cycle needs at least 3 vertices".into()));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// K_{p,q}: vertices `0..p` on one side, `p..p+q` on the other.
pub fn complete_bipartite(p: usize, q: usize) -> Result<Graph, GraphError> {
    if p < 1 || q < 1 {
        return Err(GraphError::InvalidParameter(format!(
            "complete_bipartite needs p, q >= 1 (got {p}, {q})"
        )));
    }
    let edges: Vec<_> = (0..p).flat_map(|i| (p..p + q).map(move |j| (i, j))).collect();
    Graph::from_edges(p + q, &edges)
}

/// K_p and K_q sharing vertex 0; the K_q side occupies `0` and `p..p+q-1`.
pub fn clique_identified(p: usize, q: usize) -> Result<Graph, GraphError> {
    if p < 2 || q < 2 {
        return Err(GraphError::InvalidParameter(format!(
            "clique_identified needs p, q >= 2 (got {p}, {q})"
        )));
    }
    let n = p + q - 1;
    let mut edges = Vec::new();
    for i in 0..p {
        for j in i + 1..p {
            edges.push((i, j));
        }
    }
    let side: Vec<usize> = std::iter::once(0).chain(p..n).collect();
    for (a, &i) in side.iter().enumerate() {
        for &j in &side[a + 1..] {
            edges.push((i, j));
        }
    }
    Graph::from_edges(n, &edges)
}

/// The `d`-dimensional hypercube Q_d.
pub fn hypercube(d: usize) -> Result<Graph, GraphError> {
    if d > 6 {
        return Err(GraphError::TooManyVertices(1 << d));
    }
    let n = 1usize << d;
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (0..d).map(move |b| (u, u ^ (1 << b))))
        .filter(|&(u, v)| u < v)
        .collect();
    Graph::from_edges(n, &edges)
}

/// Incidence matrix of a symmetric 2-(v, k, λ) design: rows are points, columns blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignIncidence {
    v: usize,
    k: usize,
    lambda: usize,
    incidence: Vec<Vec<bool>>,
}

impl DesignIncidence {
    /// Validates block sizes, pair coverage and `2 <= k <= v - 1`.
    pub fn new(incidence: Vec<Vec<bool>>) -> Result<Self, GraphError> {
        let v = incidence.len();
        if incidence.iter().any(|row| row.len() != v) {
            return Err(GraphError::InvalidParameter(
                "symmetric design incidence must be square".into(),
            ));
        }
        if v < 3 {
            return Err(GraphError::InvalidParameter("design needs at least 3 points".into()));
        }
        let column = |j: usize| (0..v).filter(|&i| incidence[i][j]).count();
        let k = column(0);
        if !(2..v).contains(&k) {
            return Err(GraphError::InvalidParameter(format!(
                "block size {k} outside 2..={}",
                v - 1
            )));
        }
        if let Some(j) = (0..v).find(|&j| column(j) != k) {
            return Err(GraphError::InvalidParameter(format!(
                "block {j} has size {} instead of {k}",
                column(j)
            )));
        }
        let meet = |a: usize, b: usize| (0..v).filter(|&j| incidence[a][j] && incidence[b][j]).count();
        let lambda = meet(0, 1);
        for a in 0..v {
            for b in a + 1..v {
                if meet(a, b) != lambda {
                    return Err(GraphError::InvalidParameter(format!(
                        "points {a} and {b} share {} blocks instead of {lambda}",
                        meet(a, b)
                    )));
                }
            }
        }
        Ok(DesignIncidence { v, k, lambda, incidence })
    }

    pub fn points(&self) -> usize {
        self.v
    }

    pub fn block_size(&self) -> usize {
        self.k
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn incidence(&self) -> &[Vec<bool>] {
        &self.incidence
    }
}

/// The symmetric 2-(l, l-1, l-2) design whose blocks are the complements of single points.
pub fn design_complement_of_points(l: usize) -> Result<DesignIncidence, GraphError> {
    if l < 3 {
        return Err(GraphError::InvalidParameter(format!(
            "design_complement_of_points needs l >= 3 (got {l})"
        )));
    }
    let incidence = (0..l).map(|i| (0..l).map(|j| i != j).collect()).collect();
    DesignIncidence::new(incidence)
}

/// Bipartite point/block graph: points are `0..v`, blocks `v..2v`.
pub fn incidence_graph(design: &DesignIncidence) -> Result<Graph, GraphError> {
    let v = design.v;
    let mut edges = Vec::new();
    for (i, row) in design.incidence.iter().enumerate() {
        for (j, &on) in row.iter().enumerate() {
            if on {
                edges.push((i, v + j));
            }
        }
    }
    Graph::from_edges(2 * v, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_of_c4_is_two_edges() {
        let c4 = cycle(4).unwrap();
        let co = c4.complement();
        assert_eq!(co.size(), 2);
        assert!(!co.is_connected());
        assert_eq!(co.regular_degree(), Some(1));
        assert_eq!(complete(4).unwrap().complement(), Graph::empty(4));
    }

    #[test]
    fn complement_involution_at_64() {
        let g = Graph::from_edges(64, &[(0, 63), (5, 9)]).unwrap();
        assert_eq!(g.complement().complement(), g);
        assert_eq!(g.complement().size(), 64 * 63 / 2 - 2);
    }

    #[test]
    fn line_graph_small_cases() {
        let c5 = cycle(5).unwrap();
        let l = c5.line_graph().unwrap();
        assert_eq!(l.order(), 5);
        assert_eq!(l.regular_degree(), Some(2));
        assert!(l.is_connected());

        let star = complete_bipartite(1, 3).unwrap();
        assert_eq!(star.line_graph().unwrap(), complete(3).unwrap());

        let oct = complete(4).unwrap().line_graph().unwrap();
        assert_eq!(oct.order(), 6);
        assert_eq!(oct.regular_degree(), Some(4));
        // octahedron = K6 minus a perfect matching
        assert_eq!(oct.complement().size(), 3);
        assert_eq!(oct.complement().regular_degree(), Some(1));

        assert_eq!(Graph::empty(5).line_graph().unwrap().order(), 0);
    }

    #[test]
    fn line_graph_capacity() {
        let k12 = complete(12).unwrap();
        assert_eq!(k12.line_graph(), Err(GraphError::LineGraphCapacity(66)));
        assert_eq!(complete(11).unwrap().line_graph().unwrap().order(), 55);
    }

    #[test]
    fn constructors() {
        let g = clique_identified(6, 4).unwrap();
        assert_eq!((g.order(), g.size()), (9, 21));
        assert_eq!(clique_identified(2, 2).unwrap(), path(3).unwrap().relabel(&[1, 0, 2]));
        assert!(clique_identified(1, 3).is_err());
        assert!(complete_bipartite(0, 3).is_err());

        let design = design_complement_of_points(4).unwrap();
        assert_eq!((design.points(), design.block_size(), design.lambda()), (4, 3, 2));
        let ig = incidence_graph(&design).unwrap();
        assert_eq!(ig.order(), 8);
        assert_eq!(ig.regular_degree(), Some(3));
        assert!(ig.is_bipartite());
        // K_{4,4} minus a perfect matching
        let k44 = complete_bipartite(4, 4).unwrap();
        assert_eq!(k44.size() - ig.size(), 4);
        assert!(ig.edges().all(|(u, v)| k44.has_edge(u, v)));
        assert!(design_complement_of_points(2).is_err());
    }

    #[test]
    fn design_validation_rejects_unbalanced() {
        let bad = vec![
            vec![true, true, false],
            vec![true, false, true],
            vec![true, true, true],
        ];
        assert!(DesignIncidence::new(bad).is_err());
    }

    #[test]
    fn degree_queries() {
        assert_eq!(cycle(6).unwrap().regular_degree(), Some(2));
        assert!(!cycle(4).unwrap().complement().is_connected());
        assert_eq!(complete_bipartite(1, 3).unwrap().degree_sequence(), vec![3, 1, 1, 1]);
        assert!(Graph::empty(1).is_connected());
        assert!(Graph::empty(0).is_connected());
        assert!(!Graph::empty(2).is_connected());
        assert!(path(4).unwrap().is_cut_vertex(1));
        assert!(!path(4).unwrap().is_cut_vertex(0));
    }

    #[test]
    fn delete_and_add_vertex_roundtrip() {
        let g = clique_identified(4, 3).unwrap();
        let last = g.order() - 1;
        let nbrs = g.neighbors(last);
        let smaller = g.delete_vertex(last);
        assert_eq!(smaller.add_vertex(nbrs).unwrap(), g);
        let mid = g.delete_vertex(1);
        assert_eq!(mid.order(), 5);
        assert_eq!(mid.size(), g.size() - g.degree(1));
    }

    #[test]
    fn triangles_and_union() {
        assert_eq!(complete(5).unwrap().triangle_count(), 10);
        let u = cycle(4).unwrap().disjoint_union(&complete(1).unwrap()).unwrap();
        assert_eq!((u.order(), u.size()), (5, 4));
        assert!(hypercube(3).unwrap().is_bipartite());
        assert_eq!(hypercube(3).unwrap().regular_degree(), Some(3));
    }

    #[test]
    fn from_rows_checks_invariants() {
        assert!(matches!(Graph::from_rows(vec![0b10, 0]), Err(GraphError::Asymmetric(0, 1))));
        assert!(matches!(Graph::from_rows(vec![0b1]), Err(GraphError::Loop(0))));
        assert!(Graph::from_rows(vec![0b100, 0]).is_err());
        assert!(Graph::from_rows(vec![0b10, 0b01]).is_ok());
    }
}
