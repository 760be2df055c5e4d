//! Simple undirected graphs on dense vertex ids `0..n`.

mod dot;
mod graph6;

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use dot::{to_dot, MINUS_FILL, PLUS_FILL, SOFT_FILL};
pub use graph6::{parse_graph6, write_graph6, GRAPH6_HEADER, MAX_GRAPH6_ORDER};

/// An unordered vertex pair, stored with the smaller id first.
pub type Edge = (usize, usize);

/// Immutable finite simple graph.
///
/// Adjacency is kept as one sorted neighbor list per vertex, so the degree of
/// `i` is `adjacency[i].len()` and `has_edge` is a binary search.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from a list of vertex pairs. Pairs may be given in
    /// either orientation; repeating a pair in any orientation is an error.
    pub fn new(n: usize, edges: &[Edge]) -> Result<Graph> {
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n {
                return Err(Error::VertexOutOfRange(a, n));
            }
            if b >= n {
                return Err(Error::VertexOutOfRange(b, n));
            }
            if a == b {
                return Err(Error::LoopEdge(a));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for (i, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(i.min(w[0]), i.max(w[0])));
            }
        }
        Ok(Graph { adjacency })
    }

    /// Graph with no edges.
    pub fn empty(n: usize) -> Graph {
        Graph {
            adjacency: vec![Vec::new(); n],
        }
    }

    pub(crate) fn from_sorted_adjacency(adjacency: Vec<Vec<usize>>) -> Graph {
        debug_assert!(adjacency.iter().enumerate().all(|(i, l)| {
            l.windows(2).all(|w| w[0] < w[1]) && !l.contains(&i)
        }));
        Graph { adjacency }
    }

    pub fn path(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InvalidSize("path needs at least one vertex".into()));
        }
        let edges: Vec<Edge> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::InvalidSize("cycle needs at least three vertices".into()));
        }
        let mut edges: Vec<Edge> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        Graph::new(n, &edges)
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidSize("both parts must be nonempty".into()));
        }
        let edges: Vec<Edge> = (0..a)
            .flat_map(|i| (a..a + b).map(move |j| (i, j)))
            .collect();
        Graph::new(a + b, &edges)
    }

    pub fn complete(n: usize) -> Graph {
        let adjacency = (0..n)
            .map(|i| (0..n).filter(|&j| j != i).collect())
            .collect();
        Graph { adjacency }
    }

    /// Disjoint union, with `other`'s vertices shifted past `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order();
        let mut adjacency = self.adjacency.clone();
        adjacency.extend(
            other
                .adjacency
                .iter()
                .map(|l| l.iter().map(|&j| j + shift).collect()),
        );
        Graph { adjacency }
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn size(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Sorted neighbor list of `i`.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.order() && self.adjacency[i].binary_search(&j).is_ok()
    }

    /// Edges in lexicographic order, each as `(min, max)`.
    pub fn edges(&self) -> Vec<Edge> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, l)| l.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
            .collect()
    }

    pub fn check_vertex(&self, i: usize) -> Result<()> {
        if i < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(i, self.order()))
        }
    }

    /// New graph with `(i, j)` added. Fails if the edge is already present.
    pub fn with_edge(&self, i: usize, j: usize) -> Result<Graph> {
        self.with_edges(&[(i, j)])
    }

    pub fn with_edges(&self, extra: &[Edge]) -> Result<Graph> {
        let mut edges = self.edges();
        edges.extend_from_slice(extra);
        Graph::new(self.order(), &edges)
    }

    /// New graph with the listed edges removed. Every listed pair must be an
    /// edge.
    pub fn without_edges(&self, removed: &[Edge]) -> Result<Graph> {
        let mut adjacency = self.adjacency.clone();
        for &(i, j) in removed {
            self.check_vertex(i)?;
            self.check_vertex(j)?;
            let pos = adjacency[i]
                .binary_search(&j)
                .map_err(|_| Error::NotAnEdge(i.min(j), i.max(j)))?;
            adjacency[i].remove(pos);
            let pos = adjacency[j]
                .binary_search(&i)
                .map_err(|_| Error::NotAnEdge(i.min(j), i.max(j)))?;
            adjacency[j].remove(pos);
        }
        Ok(Graph { adjacency })
    }

    /// Appends `count` isolated vertices.
    pub fn with_new_vertices(&self, count: usize) -> Graph {
        let mut adjacency = self.adjacency.clone();
        adjacency.extend(std::iter::repeat_with(Vec::new).take(count));
        Graph { adjacency }
    }

    /// Subgraph induced by `keep` (need not be sorted). Returns the graph and
    /// the old-to-new id map; surviving vertices keep their relative order.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<Option<usize>>) {
        let mut mask = vec![false; self.order()];
        for &k in keep {
            mask[k] = true;
        }
        self.filtered(&mask, |_, _| true)
    }

    /// Keeps the vertices where `mask` is set and the edges accepted by
    /// `keep_edge` among them.
    pub(crate) fn filtered(
        &self,
        mask: &[bool],
        keep_edge: impl Fn(usize, usize) -> bool,
    ) -> (Graph, Vec<Option<usize>>) {
        let mut map = vec![None; self.order()];
        let mut next = 0;
        for (i, &m) in mask.iter().enumerate() {
            if m {
                map[i] = Some(next);
                next += 1;
            }
        }
        let adjacency = (0..self.order())
            .filter(|&i| mask[i])
            .map(|i| {
                self.adjacency[i]
                    .iter()
                    .filter(|&&j| mask[j] && keep_edge(i, j))
                    .map(|&j| map[j].unwrap())
                    .collect()
            })
            .collect();
        (Graph { adjacency }, map)
    }

    /// Connected components in order of their smallest vertex, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True iff the graph has exactly one connected component. The empty
    /// graph has none and is reported as disconnected.
    pub fn is_connected(&self) -> bool {
        self.order() > 0 && self.components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.order() > 0 && self.size() + 1 == self.order() && self.is_connected()
    }

    /// Checks that every vertex class is an independent set.
    pub fn is_proper_coloring<T: PartialEq>(&self, classes: &[T]) -> bool {
        self.edges().iter().all(|&(i, j)| classes[i] != classes[j])
    }

    /// Two-colouring by BFS, `None` if an odd cycle exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.order();
        let mut side: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &w in &self.adjacency[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    /// Common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adjacency.first().map_or(0, Vec::len);
        self.adjacency.iter().all(|l| l.len() == d).then_some(d)
    }
}

/// Serializes as its graph6 string.
impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&write_graph6(self))
    }
}

/// Formats as graph6.
impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_graph6(self))
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Graph> {
        parse_graph6(s)
    }
}
