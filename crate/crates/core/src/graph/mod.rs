//! Compact simple undirected graphs on at most 64 vertices.
//!
//! A graph is stored as one `u64` neighbourhood row per vertex, so
//! neighbourhood unions, intersections and BFS frontiers are single word
//! operations.

mod canon;
pub mod graph6;
mod vertex_set;

use std::collections::VecDeque;
use std::fmt;

pub use canon::{canonical_code, canonical_form, CanonicalCode};
pub use vertex_set::{k_subsets, KSubsets, VertexSet};

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 64;

/// Length of a shortest path, or `Infinite` when there is none.
///
/// `Finite(_)` orders before `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Distance::Infinite
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

/// Immutable simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, order: n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows, checking symmetry, loops and range.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        if n > MAX_ORDER {
            return Err(Error::TooManyVertices(n));
        }
        let full = VertexSet::full(n).bits();
        for (u, &row) in rows.iter().enumerate() {
            if row & !full != 0 {
                let vertex = (row & !full).trailing_zeros() as usize;
                return Err(Error::VertexOutOfRange { vertex, order: n });
            }
            if row >> u & 1 == 1 {
                return Err(Error::SelfLoop(u));
            }
            for v in VertexSet::from_bits(row) {
                if rows[v] >> u & 1 == 0 {
                    return Err(Error::Graph6(format!("asymmetric adjacency at {u}-{v}")));
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    /// Rows known to be valid.
    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        debug_assert!(Graph::from_rows(rows.clone()).is_ok());
        Graph { n: rows.len(), adj: rows }
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph::from_edge_list(n, &edges).expect("valid clique")
    }

    /// `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edge_list(leaves + 1, &edges).expect("valid star")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> VertexSet {
        VertexSet::from_bits(self.adj[u])
    }

    #[inline]
    pub fn closed_neighbors(&self, u: usize) -> VertexSet {
        VertexSet::from_bits(self.adj[u] | 1 << u)
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| {
                VertexSet::from_bits(self.adj[u] & !((2u64 << u).wrapping_sub(1)))
                    .iter()
                    .map(move |v| (u, v))
            })
            .collect()
    }

    /// Degrees sorted in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<_> = (0..self.n).map(|u| self.degree(u)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    /// Union of closed neighbourhoods of the members of `s`.
    pub fn closed_neighborhood_of(&self, s: VertexSet) -> VertexSet {
        let mut out = s.bits();
        for v in s {
            out |= self.adj[v];
        }
        VertexSet::from_bits(out)
    }

    /// Union of open neighbourhoods of the members of `s`.
    pub fn neighborhood_of(&self, s: VertexSet) -> VertexSet {
        let mut out = 0;
        for v in s {
            out |= self.adj[v];
        }
        VertexSet::from_bits(out)
    }

    pub fn check_set(&self, s: VertexSet) -> Result<()> {
        match s.difference(self.vertices()).first() {
            Some(vertex) => Err(Error::VertexOutOfRange { vertex, order: self.n }),
            None => Ok(()),
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, order: self.n })
        }
    }

    /// Subgraph induced by `s`, with its members relabelled `0..|s|` in ascending order.
    pub fn induced_subgraph(&self, s: VertexSet) -> Graph {
        debug_assert!(s.is_subset(self.vertices()));
        let members = s.to_vec();
        let rows = members
            .iter()
            .map(|&u| {
                members
                    .iter()
                    .enumerate()
                    .filter(|&(_, &v)| self.has_edge(u, v))
                    .fold(0u64, |r, (j, _)| r | 1 << j)
            })
            .collect();
        Graph { n: members.len(), adj: rows }
    }

    /// `G - v`, relabelled like [`Graph::induced_subgraph`].
    pub fn remove_vertex(&self, v: usize) -> Graph {
        self.induced_subgraph(self.vertices().without(v))
    }

    /// The graph whose vertex `perm[u]` plays the role of `u`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut rows = vec![0u64; self.n];
        for u in 0..self.n {
            for v in self.neighbors(u) {
                rows[perm[u]] |= 1 << perm[v];
            }
        }
        Graph { n: self.n, adj: rows }
    }

    /// Vertices reachable from `start` using only vertices of `allowed`.
    pub fn reach_within(&self, start: VertexSet, allowed: VertexSet) -> VertexSet {
        let allowed = allowed.bits();
        let mut seen = start.bits() & allowed;
        let mut frontier = seen;
        while frontier != 0 {
            let next = self.neighborhood_of(VertexSet::from_bits(frontier)).bits() & allowed & !seen;
            seen |= next;
            frontier = next;
        }
        VertexSet::from_bits(seen)
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reach_within(VertexSet::singleton(0), self.vertices()) == self.vertices()
    }

    /// Vertex sets of the connected components, ordered by their smallest vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut left = self.vertices();
        let mut out = Vec::new();
        while let Some(v) = left.first() {
            let comp = self.reach_within(VertexSet::singleton(v), left);
            out.push(comp);
            left = left.difference(comp);
        }
        out
    }

    /// BFS distances from `src` inside the subgraph induced by `allowed` (which must contain `src`).
    pub fn bfs_within(&self, src: usize, allowed: VertexSet) -> Vec<Distance> {
        let mut dist = vec![Distance::Infinite; self.n];
        dist[src] = Distance::Finite(0);
        let allowed = allowed.bits();
        let mut seen = 1u64 << src;
        let mut frontier = seen;
        let mut d = 0;
        while frontier != 0 {
            d += 1;
            let next = self.neighborhood_of(VertexSet::from_bits(frontier)).bits() & allowed & !seen;
            for v in VertexSet::from_bits(next) {
                dist[v] = Distance::Finite(d);
            }
            seen |= next;
            frontier = next;
        }
        dist
    }

    pub fn bfs(&self, src: usize) -> Vec<Distance> {
        self.bfs_within(src, self.vertices())
    }

    /// `dist_G(X, Y)`: multi-source BFS from `x` until `y` is hit.
    pub fn set_distance(&self, x: VertexSet, y: VertexSet) -> Result<Distance> {
        if x.is_empty() || y.is_empty() {
            return Err(Error::EmptySet);
        }
        self.check_set(x)?;
        self.check_set(y)?;
        let mut seen = x.bits();
        let mut frontier = seen;
        let mut d = 0;
        loop {
            if frontier & y.bits() != 0 {
                return Ok(Distance::Finite(d));
            }
            let next = self.neighborhood_of(VertexSet::from_bits(frontier)).bits() & !seen;
            if next == 0 {
                return Ok(Distance::Infinite);
            }
            seen |= next;
            frontier = next;
            d += 1;
        }
    }

    /// Length of a shortest cycle.
    pub fn girth(&self) -> Distance {
        let mut best = usize::MAX;
        let mut parent = vec![usize::MAX; self.n];
        let mut depth = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            depth.iter_mut().for_each(|d| *d = usize::MAX);
            depth[s] = 0;
            parent[s] = usize::MAX;
            queue.clear();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                if 2 * depth[u] + 1 >= best {
                    break;
                }
                for v in self.neighbors(u) {
                    if depth[v] == usize::MAX {
                        depth[v] = depth[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        best = best.min(depth[u] + depth[v] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Distance::Infinite
        } else {
            Distance::Finite(best)
        }
    }

    pub fn is_forest(&self) -> bool {
        self.size() + self.connected_components().len() == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.size() + 1 == self.n && self.is_connected()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&graph6::encode(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diamond() -> Graph {
        Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn edge_list_construction() {
        let k3 = Graph::from_edge_list(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(k3.size(), 3);
        assert_eq!(k3, Graph::complete(3));
        let k1 = Graph::from_edge_list(1, &[]).unwrap();
        assert_eq!((k1.order(), k1.size()), (1, 0));
        let d = diamond();
        assert_eq!(d.size(), 5);
        assert_eq!(d.degree_sequence(), vec![3, 3, 2, 2]);
        let dup = Graph::from_edge_list(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(dup.size(), 1);
    }

    #[test]
    fn edge_list_errors() {
        assert_eq!(
            Graph::from_edge_list(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, order: 3 })
        );
        assert_eq!(Graph::from_edge_list(3, &[(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(Graph::empty(65), Err(Error::TooManyVertices(65)));
    }

    #[test]
    fn induced_subgraphs() {
        let k3 = Graph::complete(3);
        let sub = k3.induced_subgraph([0, 1].into_iter().collect());
        assert_eq!(sub, Graph::complete(2));
        let c7 = Graph::cycle(7);
        assert_eq!(c7.induced_subgraph(c7.vertices()), c7);
        let bull = Graph::from_edge_list(5, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 4)]).unwrap();
        assert_eq!(bull.induced_subgraph([0, 1, 2].into_iter().collect()), k3);
        // relabelling is ascending
        let p4 = Graph::path(4);
        let sub = p4.induced_subgraph([1, 2, 3].into_iter().collect());
        assert_eq!(sub, Graph::path(3));
    }

    #[test]
    fn set_distances() {
        let p7 = Graph::path(7);
        let s = VertexSet::singleton;
        assert_eq!(p7.set_distance(s(0), s(0)), Ok(Distance::Finite(0)));
        assert_eq!(p7.set_distance(s(0), s(6)), Ok(Distance::Finite(6)));
        assert_eq!(p7.set_distance(s(0).with(5), s(6).with(3)), Ok(Distance::Finite(1)));
        let two = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.set_distance(s(0), s(3)), Ok(Distance::Infinite));
        assert_eq!(two.set_distance(VertexSet::EMPTY, s(3)), Err(Error::EmptySet));
    }

    #[test]
    fn components() {
        let g = Graph::from_edge_list(6, &[(0, 3), (3, 5), (1, 4)]).unwrap();
        let comps = g.connected_components();
        assert_eq!(comps.iter().map(|c| c.to_vec()).collect::<Vec<_>>(), vec![vec![0, 3, 5], vec![1, 4], vec![2]]);
        assert!(!g.is_connected());
        assert!(Graph::path(5).is_connected());
        assert!(Graph::empty(0).unwrap().is_connected());
    }

    #[test]
    fn girth_values() {
        assert_eq!(Graph::complete(3).girth(), Distance::Finite(3));
        assert_eq!(Graph::cycle(7).girth(), Distance::Finite(7));
        assert_eq!(Graph::path(9).girth(), Distance::Infinite);
        assert_eq!(Graph::star(5).girth(), Distance::Infinite);
        assert_eq!(diamond().girth(), Distance::Finite(3));
        // two 4-cycles sharing one vertex
        let f4 = Graph::from_edge_list(7, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 0)]).unwrap();
        assert_eq!(f4.girth(), Distance::Finite(4));
        let c5_pendant = Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 5)]).unwrap();
        assert_eq!(c5_pendant.girth(), Distance::Finite(5));
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bits[k] {
                            edges.push((i, j));
                        }
                        k += 1;
                    }
                }
                Graph::from_edge_list(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn girth_infinite_iff_forest(g in arb_graph(10)) {
            let comps = g.connected_components().len();
            prop_assert_eq!(g.girth().is_infinite(), g.size() <= g.order() - comps);
            prop_assert_eq!(g.girth().is_infinite(), g.is_forest());
        }

        #[test]
        fn set_distance_symmetric(g in arb_graph(10), a in any::<u64>(), b in any::<u64>()) {
            let x = VertexSet::from_bits(a).intersection(g.vertices());
            let y = VertexSet::from_bits(b).intersection(g.vertices());
            prop_assume!(!x.is_empty() && !y.is_empty());
            prop_assert_eq!(g.set_distance(x, y), g.set_distance(y, x));
        }

        #[test]
        fn induced_on_all_vertices_is_identity(g in arb_graph(12)) {
            prop_assert_eq!(g.induced_subgraph(g.vertices()), g);
        }

        #[test]
        fn rows_are_symmetric(g in arb_graph(12)) {
            prop_assert!(Graph::from_rows(g.rows().to_vec()).is_ok());
        }
    }
}
