use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::snf::{smith_normal_form, IntMatrix, SmithForm};
use crate::complexes::{FaceTable, SimplicialComplex};
use crate::error::{Error, Result};
use crate::DEFAULT_FACE_LIMIT;

/// `∂_d`: rows indexed by `(d-1)`-faces, columns by `d`-faces, both in the
/// lexicographic order of the face table. Omitting the `i`-th smallest
/// vertex contributes `(-1)^i`.
#[derive(Debug, Clone)]
pub struct BoundaryMatrix {
    pub dim: usize,
    pub matrix: IntMatrix,
}

pub fn boundary_matrix(faces: &FaceTable, d: usize) -> BoundaryMatrix {
    assert!(d >= 1, "boundary matrices start in dimension 1");
    let columns = faces
        .faces(d)
        .iter()
        .map(|sigma| {
            (0..sigma.len())
                .map(|i| {
                    let row = faces.index_of(&sigma.omit_index(i)).expect("face table is closed");
                    (row, if i % 2 == 0 { 1 } else { -1 })
                })
                .collect()
        })
        .collect();
    BoundaryMatrix { dim: d, matrix: IntMatrix::from_columns(faces.count(d - 1), columns) }
}

/// `∂_1, ..., ∂_dim` of `k`.
pub fn boundary_matrices(k: &SimplicialComplex, face_limit: usize) -> Result<Vec<BoundaryMatrix>> {
    let faces = k.faces(face_limit)?;
    Ok((1..=faces.dim().max(0) as usize).map(|d| boundary_matrix(&faces, d)).collect())
}

/// One homology group `Z^betti ⊕ Z/t_1 ⊕ ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub dim: usize,
    pub betti: usize,
    #[serde(serialize_with = "serialize_ints")]
    pub torsion: Vec<BigInt>,
}

fn serialize_ints<S: Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        match i64::try_from(x) {
            Ok(v) => seq.serialize_element(&v)?,
            Err(_) => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

/// Unreduced integral homology in dimensions `0..=dim K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct HomologyResult {
    pub groups: Vec<HomologyGroup>,
}

impl HomologyResult {
    pub fn betti(&self, d: usize) -> usize {
        self.groups.get(d).map_or(0, |g| g.betti)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    pub fn torsion(&self, d: usize) -> &[BigInt] {
        self.groups.get(d).map_or(&[], |g| g.torsion.as_slice())
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.iter().all(|g| g.torsion.is_empty())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .map(|g| if g.dim % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) })
            .sum()
    }

    /// Whether reduced homology vanishes in dimension `d`.
    pub fn reduced_vanishes(&self, d: usize) -> bool {
        let expected_betti = usize::from(d == 0);
        self.betti(d) == expected_betti && self.torsion(d).is_empty()
    }

    /// Betti numbers equal `[1, 0, ..., 0, 1]` with a top class in `n`, no torsion.
    pub fn is_sphere_profile(&self, n: usize) -> bool {
        self.is_torsion_free()
            && (0..self.groups.len().max(n + 1)).all(|d| {
                let want = if n == 0 {
                    if d == 0 { 2 } else { 0 }
                } else {
                    usize::from(d == 0 || d == n)
                };
                self.betti(d) == want
            })
    }
}

pub fn homology(k: &SimplicialComplex) -> Result<HomologyResult> {
    homology_with_limit(k, DEFAULT_FACE_LIMIT)
}

pub fn homology_with_limit(k: &SimplicialComplex, face_limit: usize) -> Result<HomologyResult> {
    let faces = k.faces(face_limit)?;
    Ok(homology_of_faces(&faces))
}

fn homology_of_faces(faces: &FaceTable) -> HomologyResult {
    if faces.dim() < 0 {
        return HomologyResult { groups: Vec::new() };
    }
    let top = faces.dim() as usize;
    // forms[d] is the Smith form of ∂_d; ∂_0 and ∂_{top+1} vanish
    let forms: Vec<SmithForm> = (1..=top)
        .into_par_iter()
        .map(|d| smith_normal_form(&boundary_matrix(faces, d).matrix))
        .collect();
    let rank = |d: usize| if d == 0 || d > top { 0 } else { forms[d - 1].rank() };
    let groups = (0..=top)
        .map(|d| HomologyGroup {
            dim: d,
            betti: faces.count(d) - rank(d) - rank(d + 1),
            torsion: if d < top { forms[d].torsion() } else { Vec::new() },
        })
        .collect();
    HomologyResult { groups }
}

/// Homological connectivity: the largest `k` with vanishing reduced homology
/// in all dimensions `<= k`. It says nothing about the fundamental group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connectivity {
    Finite(i64),
    /// Reduced homology vanishes everywhere.
    Acyclic,
}

impl Serialize for Connectivity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Connectivity::Finite(k) => s.serialize_i64(*k),
            Connectivity::Acyclic => s.serialize_str("infinite"),
        }
    }
}

pub fn homology_connectivity(k: &SimplicialComplex) -> Result<Connectivity> {
    if k.is_empty() {
        return Err(Error::invalid("connectivity of the empty complex is undefined"));
    }
    let h = homology(k)?;
    Ok(connectivity_of(&h))
}

pub fn connectivity_of(h: &HomologyResult) -> Connectivity {
    match (0..h.groups.len()).find(|&d| !h.reduced_vanishes(d)) {
        Some(d) => Connectivity::Finite(d as i64 - 1),
        None => Connectivity::Acyclic,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;

    fn complex(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_generators(
            (0..n).map(|i| i.to_string()).collect(),
            facets.iter().map(|f| VertexSet::from_unsorted(f.to_vec())),
        )
        .unwrap()
    }

    fn sphere_boundary(n: usize) -> SimplicialComplex {
        let facets: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| j != i).collect()).collect();
        let refs: Vec<&[usize]> = facets.iter().map(|f| f.as_slice()).collect();
        complex(n, &refs)
    }

    #[test]
    fn edge_boundary_convention() {
        let k = complex(2, &[&[0, 1]]);
        let d = boundary_matrices(&k, 100).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].matrix.to_dense(), vec![vec![-1], vec![1]]);
    }

    #[test]
    fn triangle_boundary_columns() {
        let k = sphere_boundary(3);
        let d1 = &boundary_matrices(&k, 100).unwrap()[0];
        let dense = d1.matrix.to_dense();
        assert_eq!(dense.len(), 3);
        for j in 0..3 {
            let col: Vec<i64> = dense.iter().map(|r| r[j]).collect();
            assert_eq!(col.iter().sum::<i64>(), 0);
            assert_eq!(col.iter().filter(|&&x| x == 1).count(), 1);
            assert_eq!(col.iter().filter(|&&x| x == -1).count(), 1);
        }
    }

    #[test]
    fn boundary_squares_to_zero() {
        let k = sphere_boundary(5);
        let d = boundary_matrices(&k, 1000).unwrap();
        for pair in d.windows(2) {
            let prod = pair[0].matrix.mul_dense(&pair[1].matrix);
            assert!(prod.iter().flatten().all(|&x| x == 0), "∂{}∂{}", pair[0].dim, pair[1].dim);
        }
    }

    #[test]
    fn sphere_homology() {
        for r in 1..=4 {
            let h = homology(&sphere_boundary(r + 2)).unwrap();
            assert!(h.is_sphere_profile(r), "S^{r}: {:?}", h.betti_numbers());
        }
    }

    #[test]
    fn projective_plane() {
        let k = complex(
            6,
            &[&[0, 1, 2], &[0, 2, 3], &[0, 3, 4], &[0, 4, 5], &[0, 1, 5], &[1, 2, 4], &[2, 3, 5], &[1, 3, 4], &[2, 4, 5], &[1, 3, 5]],
        );
        let h = homology(&k).unwrap();
        assert_eq!(h.betti_numbers(), vec![1, 0, 0]);
        assert_eq!(h.torsion(1), [BigInt::from(2)]);
        assert!(h.torsion(0).is_empty() && h.torsion(2).is_empty());
    }

    #[test]
    fn connectivity() {
        assert_eq!(homology_connectivity(&sphere_boundary(10)).unwrap(), Connectivity::Finite(7));
        assert_eq!(homology_connectivity(&complex(1, &[&[0]])).unwrap(), Connectivity::Acyclic);
        assert_eq!(homology_connectivity(&complex(2, &[&[0], &[1]])).unwrap(), Connectivity::Finite(-1));
        assert!(homology_connectivity(&SimplicialComplex::empty(vec![])).is_err());
    }

    #[test]
    fn empty_complex_has_no_groups() {
        let h = homology(&SimplicialComplex::empty(vec!["a".into()])).unwrap();
        assert!(h.groups.is_empty());
    }

    #[test]
    fn report_json() {
        let h = homology(&sphere_boundary(3)).unwrap();
        let json = serde_json::to_string(&h).unwrap();
        assert_eq!(json, r#"[{"dim":0,"betti":1,"torsion":[]},{"dim":1,"betti":1,"torsion":[]}]"#);
    }
}
