//! Finite graphs and the combinatorics the complexes are built from.

mod generators;
mod hom;
mod io;
mod kneser;

pub(crate) use generators::binomial;

pub use generators::{
    make_complete, make_cycle, make_edgeless, make_kneser, make_path, petersen, recognize_family,
    GraphFamily,
};
pub use hom::{hom_search, validate_hom, HomMap, SearchOutcome};
pub use io::{graph_from_edge_list, graph_from_json, graph_to_json, GraphFile};
pub use kneser::{kneser_odd_girth_formula, kneser_walk_test};

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sorted, duplicate-free list of vertex indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// Sorts and deduplicates.
    pub fn from_unsorted(mut v: Vec<usize>) -> Self {
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    /// Wraps an already strictly increasing list.
    pub fn from_sorted(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]), "not strictly increasing");
        VertexSet(v)
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(vec![v])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        let mut it = other.0.iter();
        'outer: for x in &self.0 {
            for y in it.by_ref() {
                if y == x {
                    continue 'outer;
                }
                if y > x {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.iter().copied().filter(|&x| other.contains(x)).collect())
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        VertexSet::from_unsorted(v)
    }

    pub fn with(&self, x: usize) -> VertexSet {
        match self.0.binary_search(&x) {
            Ok(_) => self.clone(),
            Err(pos) => {
                let mut v = self.0.clone();
                v.insert(pos, x);
                VertexSet(v)
            }
        }
    }

    pub fn without(&self, x: usize) -> VertexSet {
        VertexSet(self.0.iter().copied().filter(|&y| y != x).collect())
    }

    /// The set with its `i`-th smallest element removed.
    pub fn omit_index(&self, i: usize) -> VertexSet {
        let mut v = self.0.clone();
        v.remove(i);
        VertexSet(v)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&x| !other.contains(x))
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        VertexSet::from_unsorted(v)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a usize;
    type IntoIter = std::slice::Iter<'a, usize>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A finite graph with a symmetric adjacency relation and distinct labels.
///
/// Loops are allowed. Adjacency lists are sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from labels and index pairs; each pair is symmetrized.
    pub fn new(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut seen = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if let Some(j) = seen.insert(l.as_str(), i) {
                return Err(Error::invalid(format!(
                    "duplicate vertex label {l:?} at positions {j} and {i}"
                )));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u},{v}) out of range for {n} vertices")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        Ok(Graph { labels, adj })
    }

    /// Builds a graph on `0..n` labelled by the decimal indices.
    pub fn from_indices(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Graph::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Number of unordered edges, loops counted once.
    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Each unordered edge once, as `(u, v)` with `u <= v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v >= u).map(move |&v| (u, v)))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn has_loops(&self) -> bool {
        (0..self.vertex_count()).any(|v| self.has_edge(v, v))
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "vertex {v} not in graph with {} vertices",
                self.vertex_count()
            )))
        }
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }

    pub fn is_bipartite(&self) -> bool {
        odd_girth(self).is_infinite()
    }
}

/// `N_r(v)`: endpoints of walks of length exactly `r` starting at `v`.
pub fn walk_neighborhood(g: &Graph, v: usize, r: usize) -> Result<VertexSet> {
    g.check_vertex(v)?;
    let n = g.vertex_count();
    let mut current = vec![false; n];
    current[v] = true;
    for _ in 0..r {
        let mut next = vec![false; n];
        for (w, _) in current.iter().enumerate().filter(|(_, &b)| b) {
            for &x in g.neighbors(w) {
                next[x] = true;
            }
        }
        current = next;
    }
    Ok(VertexSet::from_sorted(
        current.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect(),
    ))
}

/// Length of the shortest odd closed walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OddGirth {
    Finite(usize),
    Infinite,
}

impl OddGirth {
    pub fn is_infinite(self) -> bool {
        matches!(self, OddGirth::Infinite)
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            OddGirth::Finite(g) => Some(g),
            OddGirth::Infinite => None,
        }
    }

    /// Whether the odd girth is strictly greater than `r`.
    pub fn exceeds(self, r: usize) -> bool {
        match self {
            OddGirth::Finite(g) => g > r,
            OddGirth::Infinite => true,
        }
    }
}

/// Serialized as the length, or the string `"infinite"`.
impl Serialize for OddGirth {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            OddGirth::Finite(g) => s.serialize_u64(*g as u64),
            OddGirth::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl fmt::Display for OddGirth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OddGirth::Finite(g) => write!(f, "{g}"),
            OddGirth::Infinite => write!(f, "infinite"),
        }
    }
}

/// Odd girth by breadth-first search on the parity-doubled graph: from
/// `(s, even)` the distance to `(s, odd)` is the shortest odd closed walk at `s`.
pub fn odd_girth(g: &Graph) -> OddGirth {
    let n = g.vertex_count();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; 2 * n];
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[2 * s] = 0;
        let mut queue = VecDeque::from([2 * s]);
        while let Some(node) = queue.pop_front() {
            let (u, parity) = (node / 2, node % 2);
            let d = dist[node];
            if best.is_some_and(|b| d + 1 >= b) {
                break;
            }
            for &w in g.neighbors(u) {
                let next = 2 * w + (1 - parity);
                if dist[next] == usize::MAX {
                    dist[next] = d + 1;
                    queue.push_back(next);
                }
            }
            if dist[2 * s + 1] != usize::MAX {
                break;
            }
        }
        let odd = dist[2 * s + 1];
        if odd != usize::MAX {
            best = Some(best.map_or(odd, |b| b.min(odd)));
        }
    }
    best.map_or(OddGirth::Infinite, OddGirth::Finite)
}
