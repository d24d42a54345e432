use std::collections::{HashMap, HashSet};
use std::fmt;

use super::{Poset, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graph::{walk_neighborhood, Graph, VertexSet};

/// `N_r(G)`: generated by the nonempty walk neighborhoods `N_r(v)`.
pub fn neighborhood_complex(g: &Graph, r: usize) -> Result<SimplicialComplex> {
    if r < 1 {
        return Err(Error::invalid("neighborhood complex needs r >= 1"));
    }
    let sets = (0..g.vertex_count())
        .map(|v| walk_neighborhood(g, v, r))
        .collect::<Result<Vec<_>>>()?;
    SimplicialComplex::from_generators(g.labels().to_vec(), sets)
}

/// An element `(A, B)` of `B_r(G)`: every vertex of `B` lies in `N_r(x)` for
/// every `x` in `A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BPair {
    pub a: VertexSet,
    pub b: VertexSet,
}

impl BPair {
    pub fn swapped(&self) -> BPair {
        BPair { a: self.b.clone(), b: self.a.clone() }
    }

    pub fn leq(&self, other: &BPair) -> bool {
        self.a.is_subset(&other.a) && self.b.is_subset(&other.b)
    }
}

impl fmt::Display for BPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.a, self.b)
    }
}

fn size_lex(a: &VertexSet, b: &VertexSet) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn nonempty_subsets(set: &VertexSet) -> Vec<VertexSet> {
    let items = set.as_slice();
    let mut out: Vec<VertexSet> = (1u64..1 << items.len())
        .map(|mask| VertexSet::from_sorted((0..items.len()).filter(|i| mask >> i & 1 == 1).map(|i| items[i]).collect()))
        .collect();
    out.sort_by(size_lex);
    out
}

fn guard(count: u128, limit: usize) -> Result<()> {
    if count > limit as u128 {
        Err(Error::ResourceLimit { what: "poset element", count: count.min(usize::MAX as u128) as usize, limit })
    } else {
        Ok(())
    }
}

/// `B_r(G)` ordered componentwise by inclusion.
///
/// Every admissible `A` is a face of `N_r(G)`, so `A` ranges over subsets of
/// the walk neighborhoods and `B` over nonempty subsets of the common
/// neighborhood `∩_{x∈A} N_r(x)`. Elements are ordered by `A`, then `B`,
/// each by size and then lexicographically. Covers are one-vertex extensions.
pub fn b_poset(g: &Graph, r: usize, size_guard: usize) -> Result<Poset<BPair>> {
    if r < 1 {
        return Err(Error::invalid("B_r needs r >= 1"));
    }
    let n = g.vertex_count();
    let nbhd: Vec<VertexSet> = (0..n).map(|v| walk_neighborhood(g, v, r)).collect::<Result<_>>()?;

    let mut firsts: HashSet<VertexSet> = HashSet::new();
    for set in &nbhd {
        if set.is_empty() {
            continue;
        }
        guard((1u128 << set.len().min(127)) - 1, size_guard)?;
        for a in nonempty_subsets(set) {
            firsts.insert(a);
            guard(firsts.len() as u128, size_guard)?;
        }
    }
    let mut firsts: Vec<VertexSet> = firsts.into_iter().collect();
    firsts.sort_by(size_lex);

    let mut commons = Vec::with_capacity(firsts.len());
    let mut total: u128 = 0;
    for a in &firsts {
        let common = a.iter().skip(1).fold(nbhd[a.as_slice()[0]].clone(), |acc, x| acc.intersection(&nbhd[x]));
        debug_assert!(!common.is_empty(), "a face of N_r has a nonempty common neighborhood");
        total += (1u128 << common.len().min(127)) - 1;
        guard(total, size_guard)?;
        commons.push(common);
    }

    let mut elements = Vec::with_capacity(total as usize);
    for (a, common) in firsts.iter().zip(&commons) {
        for b in nonempty_subsets(common) {
            elements.push(BPair { a: a.clone(), b });
        }
    }
    let index: HashMap<&BPair, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();

    let mut covers = Vec::new();
    for (i, p) in elements.iter().enumerate() {
        for x in 0..n {
            if !p.a.contains(x) {
                if let Some(&j) = index.get(&BPair { a: p.a.with(x), b: p.b.clone() }) {
                    covers.push((i, j));
                }
            }
            if !p.b.contains(x) {
                if let Some(&j) = index.get(&BPair { a: p.a.clone(), b: p.b.with(x) }) {
                    covers.push((i, j));
                }
            }
        }
    }
    drop(index);

    let label_set = |s: &VertexSet| {
        let inner: Vec<&str> = s.iter().map(|v| g.label(v)).collect();
        format!("{{{}}}", inner.join(","))
    };
    let names = elements.iter().map(|p| format!("({}|{})", label_set(&p.a), label_set(&p.b))).collect();
    Poset::from_covers(elements, names, &covers)
}

/// The involution `(A, B) ↦ (B, A)` as a permutation of element indices.
pub fn b_poset_swap(p: &Poset<BPair>) -> Vec<usize> {
    let index: HashMap<&BPair, usize> = p.elements().iter().enumerate().map(|(i, e)| (e, i)).collect();
    p.elements()
        .iter()
        .map(|e| *index.get(&e.swapped()).expect("B_r is closed under swapping"))
        .collect()
}
