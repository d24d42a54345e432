use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::SimplicialComplex;
use crate::error::{Error, Result};
use crate::graph::VertexSet;

/// A finite poset stored by its Hasse diagram.
///
/// Each element carries a payload and a display name; `up[i]` lists the
/// elements covering `i`. The order is the reflexive-transitive closure.
#[derive(Debug, Clone)]
pub struct Poset<P> {
    elements: Vec<P>,
    names: Vec<String>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

impl<P> Poset<P> {
    /// Builds a poset from cover pairs `(lower, upper)`; rejects cycles.
    pub fn from_covers(elements: Vec<P>, names: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        assert_eq!(names.len(), n, "one name per element");
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for &(lo, hi) in covers {
            if lo >= n || hi >= n {
                return Err(Error::invalid(format!("cover ({lo},{hi}) out of range")));
            }
            up[lo].push(hi);
            down[hi].push(lo);
        }
        for l in up.iter_mut().chain(down.iter_mut()) {
            l.sort_unstable();
            l.dedup();
        }
        let poset = Poset { elements, names, up, down };
        if !poset.is_acyclic() {
            return Err(Error::invalid("cover relation has a cycle"));
        }
        Ok(poset)
    }

    fn is_acyclic(&self) -> bool {
        let n = self.len();
        let mut indegree: Vec<usize> = self.down.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut seen = 0;
        while let Some(i) = queue.pop_front() {
            seen += 1;
            for &j in &self.up[i] {
                indegree[j] -= 1;
                if indegree[j] == 0 {
                    queue.push_back(j);
                }
            }
        }
        seen == n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[P] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &P {
        &self.elements[i]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.up.iter().enumerate().flat_map(|(i, ups)| ups.iter().map(move |&j| (i, j)))
    }

    /// `i <= j` in the order.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        if i == j {
            return true;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![i];
        while let Some(x) = stack.pop() {
            for &y in &self.up[x] {
                if y == j {
                    return true;
                }
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }

    pub fn minimal_elements(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.down[i].is_empty())
    }

    /// Maximal chains, depth-first from each minimal element along upper
    /// covers in index order. Stops with an error after `limit` chains.
    pub fn maximal_chains(&self, limit: usize) -> Result<Vec<Vec<usize>>> {
        let mut chains = Vec::new();
        for start in self.minimal_elements() {
            let mut path = vec![start];
            let mut cursor = vec![0usize];
            while let Some(&pos) = cursor.last() {
                let top = *path.last().expect("path tracks cursor");
                let ups = &self.up[top];
                if ups.is_empty() {
                    if chains.len() == limit {
                        return Err(Error::ResourceLimit { what: "chain", count: limit + 1, limit });
                    }
                    chains.push(path.clone());
                }
                if pos < ups.len() {
                    *cursor.last_mut().expect("nonempty") += 1;
                    path.push(ups[pos]);
                    cursor.push(0);
                } else {
                    path.pop();
                    cursor.pop();
                }
            }
        }
        Ok(chains)
    }

    pub fn to_file(&self) -> PosetFile {
        PosetFile { elements: self.names.clone(), covers: self.covers().map(|(i, j)| [i, j]).collect() }
    }
}

/// On-disk poset: element names and cover pairs `[lower, upper]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub elements: Vec<String>,
    pub covers: Vec<[usize; 2]>,
}

/// `Δ(P)`: vertices are the elements of `P`, facets its maximal chains.
pub fn order_complex<P>(p: &Poset<P>) -> SimplicialComplex {
    try_order_complex(p, usize::MAX).expect("unbounded")
}

/// [`order_complex`] with a cap on the number of maximal chains.
pub fn try_order_complex<P>(p: &Poset<P>, chain_limit: usize) -> Result<SimplicialComplex> {
    let chains = p.maximal_chains(chain_limit)?;
    let facets = chains.into_iter().map(VertexSet::from_unsorted).collect();
    Ok(SimplicialComplex::from_maximal(p.names.clone(), facets))
}

/// `FK`: nonempty faces of `k` ordered by inclusion, named by vertex labels.
pub fn face_poset(k: &SimplicialComplex, face_limit: usize) -> Result<Poset<VertexSet>> {
    let table = k.faces(face_limit)?;
    let faces: Vec<VertexSet> = table.iter().cloned().collect();
    let mut offsets = vec![0usize];
    for d in 0..(table.dim() + 1) as usize {
        offsets.push(offsets[d] + table.count(d));
    }
    let mut covers = Vec::new();
    for (i, face) in faces.iter().enumerate() {
        if face.len() < 2 {
            continue;
        }
        let d = face.len() - 1;
        for j in 0..face.len() {
            let sub = face.omit_index(j);
            let idx = table.index_of(&sub).expect("faces are closed under subsets");
            covers.push((offsets[d - 1] + idx, i));
        }
    }
    let names = faces
        .iter()
        .map(|f| {
            let inner: Vec<&str> = f.iter().map(|v| k.label(v)).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect();
    Poset::from_covers(faces, names, &covers)
}

/// `Sd K = Δ(FK)`, returned with the face each new vertex stands for.
pub fn barycentric_subdivision(k: &SimplicialComplex, face_limit: usize) -> Result<(SimplicialComplex, Vec<VertexSet>)> {
    let fp = face_poset(k, face_limit)?;
    let sd = order_complex(&fp);
    Ok((sd, fp.elements))
}
