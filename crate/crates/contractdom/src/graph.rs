//! Immutable simple undirected graphs on at most 64 vertices, with the
//! bitset vertex sets and distance matrices the deciders are built on.

use std::fmt;

use thiserror::Error;

/// Hard limit imposed by the `u64` bitset representation.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph too large: {0} vertices (limit {MAX_VERTICES})")]
    TooLarge(usize),
    #[error("edge ({0}, {1}) not present")]
    MissingEdge(usize, usize),
    #[error("graph must have at least one vertex")]
    Empty,
}

/// Set of vertex ids in `0..64`, bitset-backed.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Ascending vertex ids.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

/// All-pairs hop distances; `None` marks unreachable pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

const UNREACHABLE: u32 = u32::MAX;

impl DistanceMatrix {
    pub fn get(&self, x: usize, y: usize) -> Option<usize> {
        let d = self.dist[x * self.n + y];
        if d == UNREACHABLE {
            None
        } else {
            Some(d as usize)
        }
    }

    /// True iff `d(x, y) <= bound` (unreachable pairs never qualify).
    pub fn within(&self, x: usize, y: usize, bound: usize) -> bool {
        matches!(self.get(x, y), Some(d) if d <= bound)
    }
}

/// Immutable simple undirected graph with dense vertex ids `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let mut adj = vec![VertexSet::EMPTY; n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { n, adj })
    }

    /// Builds from per-vertex adjacency bitsets; rows must already be
    /// symmetric and loop-free.
    pub(crate) fn from_adjacency(adj: Vec<VertexSet>) -> Graph {
        let n = adj.len();
        debug_assert!((0..n).all(|v| !adj[v].contains(v)));
        debug_assert!((0..n).all(|v| adj[v].iter().all(|w| adj[w].contains(v))));
        Graph { n, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn neighbours(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn closed_neighbourhood(&self, v: usize) -> VertexSet {
        self.adj[v].with(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Contracts edge `(u, v)`: the merged vertex takes id `min(u, v)` and
    /// ids above `max(u, v)` shift down by one. Returns the contracted graph
    /// together with the old-id to new-id rename map (both endpoints map to
    /// the merged id).
    pub fn contract_edge(&self, e: (usize, usize)) -> Result<(Graph, Vec<usize>), GraphError> {
        let (u, v) = e;
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        let keep = u.min(v);
        let drop = u.max(v);
        let mut rename = vec![0usize; self.n];
        for old in 0..self.n {
            rename[old] = if old == drop {
                keep
            } else if old > drop {
                old - 1
            } else {
                old
            };
        }
        let mut adj = vec![VertexSet::EMPTY; self.n - 1];
        for old in 0..self.n {
            for w in self.adj[old].iter() {
                let (a, b) = (rename[old], rename[w]);
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
        Ok((Graph::from_adjacency(adj), rename))
    }

    pub fn distances(&self) -> DistanceMatrix {
        let mut dist = vec![UNREACHABLE; self.n * self.n];
        for src in 0..self.n {
            let row = &mut dist[src * self.n..(src + 1) * self.n];
            let mut frontier = VertexSet::singleton(src);
            let mut seen = frontier;
            let mut d = 0u32;
            while !frontier.is_empty() {
                for v in frontier.iter() {
                    row[v] = d;
                }
                let mut next = VertexSet::EMPTY;
                for v in frontier.iter() {
                    next = next.union(self.adj[v]);
                }
                frontier = next.difference(seen);
                seen = seen.union(next);
                d += 1;
            }
        }
        DistanceMatrix { n: self.n, dist }
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| s.without(v).is_subset(self.adj[v]))
    }

    pub fn is_stable(&self, s: VertexSet) -> bool {
        s.iter().all(|v| s.is_disjoint(self.adj[v]))
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = VertexSet::singleton(0);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next = next.union(self.adj[v]);
            }
            frontier = next.difference(seen);
            seen = seen.union(next);
        }
        seen == self.vertices()
    }

    pub fn is_dominating(&self, d: VertexSet) -> bool {
        self.vertices()
            .difference(d)
            .iter()
            .all(|v| !self.adj[v].is_disjoint(d))
    }

    /// Union of closed neighbourhoods over `s`.
    pub fn closed_neighbourhood_set(&self, s: VertexSet) -> VertexSet {
        s.iter()
            .fold(s, |acc, v| acc.union(self.adj[v]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((n - 1, 0));
        Graph::from_edge_list(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edge_list(n, &edges).unwrap()
    }

    #[test]
    fn from_edge_list_basic() {
        let p3 = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.edges(), vec![(0, 1), (1, 2)]);
        let c4 = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4.edge_count(), 4);
        let k1 = Graph::from_edge_list(1, &[]).unwrap();
        assert!(k1.is_connected());
    }

    #[test]
    fn from_edge_list_dedup_and_errors() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(
            Graph::from_edge_list(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(Graph::from_edge_list(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
    }

    #[test]
    fn contract_edge_examples() {
        let (k2, _) = complete(3).contract_edge((0, 1)).unwrap();
        assert_eq!(k2.vertex_count(), 2);
        assert_eq!(k2.edges(), vec![(0, 1)]);

        let (p3, rename) = path(4).contract_edge((1, 2)).unwrap();
        assert_eq!(p3.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(rename, vec![0, 1, 1, 2]);

        let (tri, _) = cycle(4).contract_edge((0, 1)).unwrap();
        assert_eq!(tri.vertex_count(), 3);
        assert_eq!(tri.edge_count(), 3);

        assert_eq!(path(4).contract_edge((0, 2)), Err(GraphError::MissingEdge(0, 2)));
    }

    #[test]
    fn distances_examples() {
        assert_eq!(path(4).distances().get(0, 3), Some(3));
        assert_eq!(cycle(6).distances().get(0, 3), Some(3));
        let d = complete(5).distances();
        for u in 0..5 {
            for v in 0..5 {
                assert_eq!(d.get(u, v), Some(usize::from(u != v)));
            }
        }
    }

    #[test]
    fn distances_unreachable() {
        let g = Graph::from_edge_list(3, &[(0, 1)]).unwrap();
        assert_eq!(g.distances().get(0, 2), None);
        assert!(!g.distances().within(0, 2, 100));
    }

    #[test]
    fn clique_and_stable() {
        let k4 = complete(4);
        assert!(k4.is_clique(k4.vertices()));
        assert!(cycle(4).is_stable(VertexSet::from_iter([0, 2])));
        assert!(k4.is_clique(VertexSet::EMPTY));
        assert!(k4.is_stable(VertexSet::EMPTY));
        assert!(k4.is_clique(VertexSet::singleton(2)));
        assert!(k4.is_stable(VertexSet::singleton(2)));
    }

    #[test]
    fn connectivity() {
        assert!(path(4).is_connected());
        assert!(!Graph::from_edge_list(2, &[]).unwrap().is_connected());
        assert!(Graph::from_edge_list(1, &[]).unwrap().is_connected());
    }

    #[test]
    fn domination_predicate() {
        let star = Graph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(star.is_dominating(VertexSet::singleton(0)));
        assert!(!path(4).is_dominating(VertexSet::singleton(0)));
        assert!(path(4).is_dominating(path(4).vertices()));
    }

    #[test]
    fn contraction_preserves_connectivity_and_shrinks() {
        for g in [path(5), cycle(6), complete(4)] {
            for e in g.edges() {
                let (h, _) = g.contract_edge(e).unwrap();
                assert_eq!(h.vertex_count(), g.vertex_count() - 1);
                assert!(h.is_connected());
            }
        }
    }

    #[test]
    fn distance_symmetry_and_triangle_inequality() {
        for g in [path(6), cycle(7), complete(5)] {
            let d = g.distances();
            let n = g.vertex_count();
            for x in 0..n {
                assert_eq!(d.get(x, x), Some(0));
                for y in 0..n {
                    assert_eq!(d.get(x, y), d.get(y, x));
                    for z in 0..n {
                        if let (Some(xy), Some(yz), Some(xz)) =
                            (d.get(x, y), d.get(y, z), d.get(x, z))
                        {
                            assert!(xz <= xy + yz);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn vertex_set_ops() {
        let s = VertexSet::from_iter([1, 3, 5]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.min(), Some(1));
        assert_eq!(s.to_vec(), vec![1, 3, 5]);
        assert!(s.is_subset(VertexSet::full(6)));
        assert!(s.without(3).is_disjoint(VertexSet::singleton(3)));
    }
}
