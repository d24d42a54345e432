use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::VertexSet;

/// A finite abstract simplicial complex stored by its facets.
///
/// `labels` is the ambient vertex universe; a vertex is part of the complex
/// only if some facet contains it. Facets are pairwise non-nested, nonempty
/// and kept in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    facets: Vec<VertexSet>,
}

impl SimplicialComplex {
    /// Builds the complex generated by `sets`, dropping empty, duplicate and
    /// nested generators.
    pub fn from_generators(labels: Vec<String>, sets: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        let n = labels.len();
        let mut sets: Vec<VertexSet> = sets.into_iter().filter(|s| !s.is_empty()).collect();
        if let Some(bad) = sets.iter().find(|s| s.iter().any(|v| v >= n)) {
            return Err(Error::invalid(format!("face {bad} uses a vertex outside 0..{n}")));
        }
        sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        sets.dedup();
        let mut facets: Vec<VertexSet> = Vec::with_capacity(sets.len());
        for s in sets {
            if !facets.iter().any(|f| s.is_subset(f)) {
                facets.push(s);
            }
        }
        Ok(Self::from_maximal(labels, facets))
    }

    /// Wraps facets already known to be distinct and pairwise non-nested.
    pub(crate) fn from_maximal(labels: Vec<String>, mut facets: Vec<VertexSet>) -> Self {
        facets.sort();
        SimplicialComplex { labels, facets }
    }

    /// Builds the complex from a downward-closed face collection by keeping
    /// the faces with no cofacet in the collection.
    pub fn from_closed_faces(labels: Vec<String>, faces: impl IntoIterator<Item = VertexSet>) -> Self {
        let all: HashSet<VertexSet> = faces.into_iter().filter(|f| !f.is_empty()).collect();
        let n = labels.len();
        let facets = all
            .iter()
            .filter(|f| (0..n).all(|u| f.contains(u) || !all.contains(&f.with(u))))
            .cloned()
            .collect();
        Self::from_maximal(labels, facets)
    }

    pub fn empty(labels: Vec<String>) -> Self {
        SimplicialComplex { labels, facets: Vec::new() }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension, `-1` for the empty complex.
    pub fn dim(&self) -> i64 {
        self.facets.iter().map(|f| f.len() as i64 - 1).max().unwrap_or(-1)
    }

    /// Vertices that occur in some facet.
    pub fn vertices(&self) -> VertexSet {
        VertexSet::from_unsorted(self.facets.iter().flat_map(|f| f.iter()).collect())
    }

    pub fn contains_face(&self, face: &VertexSet) -> bool {
        !face.is_empty() && self.facets.iter().any(|f| face.is_subset(f))
    }

    /// Enumerates all faces, failing once more than `limit` distinct faces appear.
    pub fn faces(&self, limit: usize) -> Result<FaceTable> {
        FaceTable::enumerate(self, limit)
    }

    pub fn has_same_faces(&self, other: &SimplicialComplex) -> bool {
        self.facets == other.facets
    }

    /// Renumbers the complex onto the vertices it actually uses, in index order.
    pub fn restrict_to_support(&self) -> SimplicialComplex {
        let support = self.vertices();
        let mut new_index = vec![usize::MAX; self.labels.len()];
        for (i, v) in support.iter().enumerate() {
            new_index[v] = i;
        }
        let labels = support.iter().map(|v| self.labels[v].clone()).collect();
        let facets = self
            .facets
            .iter()
            .map(|f| VertexSet::from_sorted(f.iter().map(|v| new_index[v]).collect()))
            .collect();
        Self::from_maximal(labels, facets)
    }

    pub fn to_file(&self) -> ComplexFile {
        ComplexFile {
            vertices: self.labels.clone(),
            facets: self
                .facets
                .iter()
                .map(|f| f.iter().map(|v| self.labels[v].clone()).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("complex serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ComplexFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_complex()
    }
}

/// On-disk complex: facets listed by vertex label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

impl ComplexFile {
    pub fn into_complex(self) -> Result<SimplicialComplex> {
        let mut index = HashMap::with_capacity(self.vertices.len());
        for (i, l) in self.vertices.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::Parse(format!("duplicate vertex label {l:?}")));
            }
        }
        let mut sets = Vec::with_capacity(self.facets.len());
        for facet in &self.facets {
            let ids = facet
                .iter()
                .map(|l| index.get(l).copied().ok_or_else(|| Error::Parse(format!("unknown vertex {l:?} in facet"))))
                .collect::<Result<Vec<_>>>()?;
            sets.push(VertexSet::from_unsorted(ids));
        }
        SimplicialComplex::from_generators(self.vertices, sets)
    }
}

/// Every face of a complex, grouped by dimension and sorted lexicographically.
#[derive(Debug, Clone)]
pub struct FaceTable {
    by_dim: Vec<Vec<VertexSet>>,
    index: Vec<HashMap<VertexSet, usize>>,
}

impl FaceTable {
    fn enumerate(k: &SimplicialComplex, limit: usize) -> Result<Self> {
        let top = k.dim();
        if top < 0 {
            return Ok(FaceTable { by_dim: Vec::new(), index: Vec::new() });
        }
        let top = top as usize;
        let mut levels: Vec<HashSet<VertexSet>> = vec![HashSet::new(); top + 1];
        let mut total = 0usize;
        for f in k.facets() {
            if levels[f.len() - 1].insert(f.clone()) {
                total += 1;
            }
        }
        check_limit(total, limit)?;
        for d in (1..=top).rev() {
            let (lower, upper) = levels.split_at_mut(d);
            let below = &mut lower[d - 1];
            for face in upper[0].iter() {
                for i in 0..face.len() {
                    if below.insert(face.omit_index(i)) {
                        total += 1;
                        check_limit(total, limit)?;
                    }
                }
            }
        }
        let by_dim: Vec<Vec<VertexSet>> = levels
            .into_iter()
            .map(|set| {
                let mut v: Vec<_> = set.into_iter().collect();
                v.sort();
                v
            })
            .collect();
        let index = by_dim
            .iter()
            .map(|faces| faces.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect())
            .collect();
        Ok(FaceTable { by_dim, index })
    }

    /// Highest dimension present, `-1` when empty.
    pub fn dim(&self) -> i64 {
        self.by_dim.len() as i64 - 1
    }

    pub fn faces(&self, d: usize) -> &[VertexSet] {
        self.by_dim.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn count(&self, d: usize) -> usize {
        self.faces(d).len()
    }

    pub fn total(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn index_of(&self, face: &VertexSet) -> Option<usize> {
        let d = face.len().checked_sub(1)?;
        self.index.get(d)?.get(face).copied()
    }

    /// Face counts `f_0, f_1, ...`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(d, f)| if d % 2 == 0 { f.len() as i64 } else { -(f.len() as i64) })
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = &VertexSet> {
        self.by_dim.iter().flatten()
    }
}

fn check_limit(count: usize, limit: usize) -> Result<()> {
    if count > limit {
        Err(Error::ResourceLimit { what: "face", count, limit })
    } else {
        Ok(())
    }
}
