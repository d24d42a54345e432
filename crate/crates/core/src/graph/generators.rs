use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// `C_n` on vertices `0..n`.
pub fn make_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid(format!("cycle length must be at least 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_indices(n, &edges)
}

pub fn make_path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("path needs at least one vertex"));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_indices(n, &edges)
}

pub fn make_complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("complete graph needs at least one vertex"));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_indices(n, &edges)
}

pub fn make_edgeless(n: usize) -> Graph {
    Graph::from_indices(n, &[]).expect("indices are distinct")
}

/// `K_{n,k}`: `k`-subsets of `{1..n}` in lexicographic order, labelled
/// like `{1,2}`, joined when disjoint.
pub fn make_kneser(n: usize, k: usize) -> Result<Graph> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::invalid(format!("Kneser parameters need 1 <= k <= n, got n={n}, k={k}")));
    }
    let subsets = k_subsets(n, k);
    let masks: Vec<u64> = subsets
        .iter()
        .map(|s| s.iter().fold(0u64, |m, &x| m | (1 << x)))
        .collect();
    let mut edges = Vec::new();
    for i in 0..masks.len() {
        for j in i + 1..masks.len() {
            if masks[i] & masks[j] == 0 {
                edges.push((i, j));
            }
        }
    }
    let labels = subsets.iter().map(|s| subset_label(s)).collect();
    Graph::new(labels, &edges)
}

pub fn petersen() -> Graph {
    make_kneser(5, 2).expect("valid parameters")
}

/// All `k`-subsets of `{1..n}` in lexicographic order.
pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    assert!(n < 64, "Kneser ground set too large");
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        // advance to the next combination
        let mut i = k;
        while i > 0 && cur[i - 1] == n - k + i {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn subset_label(s: &[usize]) -> String {
    let inner: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

fn parse_subset_label(label: &str) -> Option<Vec<usize>> {
    let inner = label.strip_prefix('{')?.strip_suffix('}')?;
    if inner.is_empty() {
        return Some(Vec::new());
    }
    inner.split(',').map(|t| t.trim().parse().ok()).collect()
}

/// A graph family with a closed-form height rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GraphFamily {
    Cycle { n: usize },
    Kneser { n: usize, k: usize },
    Complete { n: usize },
}

/// Recognizes cycles, complete graphs and Kneser graphs (the latter only with
/// `{a,b,..}` subset labels). Recognition is verified against the adjacency,
/// never inferred from labels alone.
pub fn recognize_family(g: &Graph) -> Option<GraphFamily> {
    let n = g.vertex_count();
    if n == 0 || g.has_loops() {
        return None;
    }
    if n >= 3 && g.is_connected() && (0..n).all(|v| g.degree(v) == 2) {
        return Some(GraphFamily::Cycle { n });
    }
    if let Some((n_ground, k)) = recognize_kneser(g) {
        return Some(GraphFamily::Kneser { n: n_ground, k });
    }
    if n >= 2 && (0..n).all(|v| g.degree(v) == n - 1) {
        return Some(GraphFamily::Complete { n });
    }
    None
}

fn recognize_kneser(g: &Graph) -> Option<(usize, usize)> {
    let sets: Vec<Vec<usize>> = g.labels().iter().map(|l| parse_subset_label(l)).collect::<Option<_>>()?;
    let k = sets.first()?.len();
    if k == 0 || sets.iter().any(|s| s.len() != k || s.windows(2).any(|w| w[0] >= w[1])) {
        return None;
    }
    let n = *sets.iter().flat_map(|s| s.iter()).max()?;
    if sets.iter().flatten().any(|&x| x == 0) || n >= 64 || binomial(n, k) != sets.len() as u128 {
        return None;
    }
    let masks: Vec<u64> = sets.iter().map(|s| s.iter().fold(0u64, |m, &x| m | (1 << x))).collect();
    let mut sorted = masks.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != masks.len() {
        return None;
    }
    for i in 0..masks.len() {
        for j in 0..masks.len() {
            if g.has_edge(i, j) != (masks[i] & masks[j] == 0) {
                return None;
            }
        }
    }
    Some((n, k))
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Disjoint pairs of k-subsets, counted by brute force over bitmasks.
    fn disjoint_pair_count(n: usize, k: usize) -> usize {
        let masks: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() as usize == k).collect();
        let mut c = 0;
        for (i, a) in masks.iter().enumerate() {
            for b in &masks[i + 1..] {
                if a & b == 0 {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn cycles() {
        let c3 = make_cycle(3).unwrap();
        assert_eq!((c3.vertex_count(), c3.edge_count()), (3, 3));
        let c5 = make_cycle(5).unwrap();
        assert_eq!((c5.vertex_count(), c5.edge_count()), (5, 5));
        assert!(make_cycle(2).is_err());
        assert!(!c5.has_loops());
    }

    #[test]
    fn kneser_counts() {
        let k52 = make_kneser(5, 2).unwrap();
        assert_eq!(k52.vertex_count(), 10);
        assert_eq!(k52.edge_count(), disjoint_pair_count(5, 2));
        assert_eq!(k52.edge_count(), 15);
        let k42 = make_kneser(4, 2).unwrap();
        assert_eq!((k42.vertex_count(), k42.edge_count()), (6, 3));
        assert!((0..6).all(|v| k42.degree(v) == 1));
        for (n, k) in [(6, 2), (7, 2), (7, 3)] {
            assert_eq!(make_kneser(n, k).unwrap().edge_count(), disjoint_pair_count(n, k));
        }
    }

    #[test]
    fn kneser_small_n_is_edgeless() {
        for (n, k) in [(3, 2), (5, 3), (4, 4)] {
            let g = make_kneser(n, k).unwrap();
            assert_eq!(g.edge_count(), 0);
        }
        assert!(make_kneser(2, 3).is_err());
    }

    #[test]
    fn kneser_labels_are_lexicographic() {
        let g = make_kneser(4, 2).unwrap();
        assert_eq!(g.labels(), ["{1,2}", "{1,3}", "{1,4}", "{2,3}", "{2,4}", "{3,4}"]);
    }

    #[test]
    fn families() {
        assert_eq!(recognize_family(&make_cycle(7).unwrap()), Some(GraphFamily::Cycle { n: 7 }));
        assert_eq!(recognize_family(&petersen()), Some(GraphFamily::Kneser { n: 5, k: 2 }));
        assert_eq!(recognize_family(&make_complete(4).unwrap()), Some(GraphFamily::Complete { n: 4 }));
        assert_eq!(recognize_family(&make_path(4).unwrap()), None);
        // Petersen relabelled loses its tag; structure alone is not trusted.
        let p = petersen();
        let edges: Vec<_> = p.edges().collect();
        let plain = Graph::from_indices(10, &edges).unwrap();
        assert_eq!(recognize_family(&plain), None);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(7, 3), 35);
        assert_eq!(binomial(3, 5), 0);
    }
}
