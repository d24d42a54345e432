use crate::complexes::FaceTable;
use crate::homology::gf2::{BitVec, Gf2Span};

/// A Z/2 cochain on the `dim`-faces of a face table, indexed like
/// `FaceTable::faces(dim)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainZ2 {
    pub dim: usize,
    pub bits: BitVec,
}

impl CochainZ2 {
    pub fn zero(faces: &FaceTable, dim: usize) -> Self {
        CochainZ2 { dim, bits: BitVec::zeros(count(faces, dim)) }
    }

    /// The cochain taking value 1 on every vertex.
    pub fn unit(faces: &FaceTable) -> Self {
        let n = count(faces, 0);
        CochainZ2 { dim: 0, bits: BitVec::from_bools(&vec![true; n]) }
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }
}

fn count(faces: &FaceTable, d: usize) -> usize {
    if (d as i64) <= faces.dim() { faces.count(d) } else { 0 }
}

pub fn coboundary(faces: &FaceTable, c: &CochainZ2) -> CochainZ2 {
    let d = c.dim + 1;
    let mut out = CochainZ2::zero(faces, d);
    if out.bits.is_empty() {
        return out;
    }
    for (i, face) in faces.faces(d).iter().enumerate() {
        let mut v = false;
        for j in 0..face.len() {
            let idx = faces.index_of(&face.omit_index(j)).expect("closed under subsets");
            v ^= c.bits.get(idx);
        }
        if v {
            out.bits.set(i, true);
        }
    }
    out
}

/// Image of `δ: C^{d-1} -> C^d` as an echelon span.
fn coboundary_image(faces: &FaceTable, d: usize) -> Gf2Span {
    let mut span = Gf2Span::new();
    if d == 0 {
        return span;
    }
    let mut columns = vec![BitVec::zeros(count(faces, d)); count(faces, d - 1)];
    if count(faces, d) > 0 {
        for (i, face) in faces.faces(d).iter().enumerate() {
            for j in 0..face.len() {
                let idx = faces.index_of(&face.omit_index(j)).expect("closed under subsets");
                columns[idx].set(i, true);
            }
        }
    }
    for col in columns {
        span.insert(col);
    }
    span
}

pub fn is_coboundary(faces: &FaceTable, c: &CochainZ2) -> bool {
    c.is_zero() || coboundary_image(faces, c.dim).contains(&c.bits)
}

/// Alexander-Whitney cup product, faces read in increasing vertex order.
pub fn cup_product(faces: &FaceTable, a: &CochainZ2, b: &CochainZ2) -> CochainZ2 {
    let d = a.dim + b.dim;
    let mut out = CochainZ2::zero(faces, d);
    if out.bits.is_empty() {
        return out;
    }
    for (i, face) in faces.faces(d).iter().enumerate() {
        let vs = face.as_slice();
        let front = crate::graph::VertexSet::from_sorted(vs[..=a.dim].to_vec());
        let back = crate::graph::VertexSet::from_sorted(vs[a.dim..].to_vec());
        let fa = faces.index_of(&front).expect("closed under subsets");
        let fb = faces.index_of(&back).expect("closed under subsets");
        if a.bits.get(fa) && b.bits.get(fb) {
            out.bits.set(i, true);
        }
    }
    out
}
