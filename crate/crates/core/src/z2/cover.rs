use std::collections::{HashMap, VecDeque};

use crate::complexes::{barycentric_subdivision, FaceTable, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::homology::gf2::BitVec;
use crate::DEFAULT_FACE_LIMIT;

use super::cochain::CochainZ2;

/// A vertex permutation of order dividing two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Involution(Vec<usize>);

impl Involution {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        for (v, &w) in map.iter().enumerate() {
            if w >= n || map[w] != v {
                return Err(Error::invalid(format!("map is not an involution at vertex {v}")));
            }
        }
        Ok(Involution(map))
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn apply_set(&self, s: &VertexSet) -> VertexSet {
        VertexSet::from_unsorted(s.iter().map(|v| self.0[v]).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// Outcome of [`check_free_involution`], with the first violation found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FreenessCheck {
    Free,
    SizeMismatch,
    NotSimplicial(VertexSet),
    FixedVertex(usize),
    FaceMeetsImage(VertexSet),
}

impl FreenessCheck {
    pub fn is_free(&self) -> bool {
        matches!(self, FreenessCheck::Free)
    }
}

pub fn check_free_involution(k: &SimplicialComplex, t: &Involution) -> FreenessCheck {
    if t.len() != k.labels().len() {
        return FreenessCheck::SizeMismatch;
    }
    if let Some(v) = k.vertices().iter().find(|&v| t.apply(v) == v) {
        return FreenessCheck::FixedVertex(v);
    }
    for f in k.facets() {
        if !k.contains_face(&t.apply_set(f)) {
            return FreenessCheck::NotSimplicial(f.clone());
        }
        if f.iter().any(|v| f.contains(t.apply(v))) {
            return FreenessCheck::FaceMeetsImage(f.clone());
        }
    }
    FreenessCheck::Free
}

/// A double cover `K -> Q = K / t` together with its sheet data.
#[derive(Debug, Clone)]
pub struct DoubleCover {
    /// Total complex, barycentrically subdivided `subdivisions` times.
    pub total: SimplicialComplex,
    pub involution: Involution,
    pub quotient: SimplicialComplex,
    /// Quotient vertex of each total vertex (`usize::MAX` off the support).
    pub orbit: Vec<usize>,
    /// The two preimages of each quotient vertex, smaller index first.
    pub preimages: Vec<[usize; 2]>,
    /// Chosen lift of each quotient vertex along a spanning forest.
    pub sheet: Vec<usize>,
    pub subdivisions: usize,
    pub total_faces: FaceTable,
    pub quotient_faces: FaceTable,
    /// Monodromy bit per quotient edge, in face-table order.
    pub monodromy: BitVec,
}

impl DoubleCover {
    pub fn total_has_face(&self, face: &VertexSet) -> bool {
        self.total_faces.index_of(face).is_some()
    }
}

pub fn quotient_complex(k: &SimplicialComplex, t: &Involution) -> Result<DoubleCover> {
    quotient_complex_with_limit(k, t, DEFAULT_FACE_LIMIT)
}

/// Orbit complex of a free involution. If some quotient face does not have
/// exactly two swapped preimages, the total complex is subdivided with the
/// induced involution and the construction retried, at most twice.
pub fn quotient_complex_with_limit(k: &SimplicialComplex, t: &Involution, face_limit: usize) -> Result<DoubleCover> {
    match check_free_involution(k, t) {
        FreenessCheck::Free => {}
        other => return Err(Error::invalid(format!("involution is not free: {other:?}"))),
    }
    let mut total = k.clone();
    let mut inv = t.clone();
    for subdivisions in 0..=2 {
        if let Some(cover) = try_quotient(&total, &inv, subdivisions, face_limit)? {
            return Ok(cover);
        }
        if subdivisions == 2 {
            break;
        }
        let (sd, faces) = barycentric_subdivision(&total, face_limit)?;
        let index: HashMap<&VertexSet, usize> = faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let map = faces.iter().map(|f| index[&inv.apply_set(f)]).collect();
        inv = Involution::new(map)?;
        total = sd;
    }
    Err(Error::Structural("quotient still invalid after two barycentric subdivisions".into()))
}

fn try_quotient(k: &SimplicialComplex, t: &Involution, subdivisions: usize, face_limit: usize) -> Result<Option<DoubleCover>> {
    let support = k.vertices();
    let mut orbits: Vec<[usize; 2]> = support
        .iter()
        .filter(|&v| v < t.apply(v))
        .map(|v| [v, t.apply(v)])
        .collect();
    let orbit_label = |[a, b]: [usize; 2]| {
        let (la, lb) = (k.label(a), k.label(b));
        if la <= lb { format!("{la}|{lb}") } else { format!("{lb}|{la}") }
    };
    orbits.sort_by_cached_key(|&o| orbit_label(o));
    let mut orbit = vec![usize::MAX; k.labels().len()];
    for (q, &[a, b]) in orbits.iter().enumerate() {
        orbit[a] = q;
        orbit[b] = q;
    }
    let labels: Vec<String> = orbits.iter().map(|&o| orbit_label(o)).collect();

    let total_faces = k.faces(face_limit)?;
    let project = |f: &VertexSet| VertexSet::from_unsorted(f.iter().map(|v| orbit[v]).collect());
    let mut preimage_count: HashMap<VertexSet, usize> = HashMap::new();
    for f in total_faces.iter() {
        let q = project(f);
        if q.len() != f.len() {
            return Ok(None);
        }
        *preimage_count.entry(q).or_default() += 1;
    }
    if preimage_count.values().any(|&c| c != 2) {
        return Ok(None);
    }
    let quotient = SimplicialComplex::from_generators(labels, k.facets().iter().map(project))?;
    let quotient_faces = quotient.faces(face_limit)?;
    debug_assert_eq!(quotient_faces.total() * 2, total_faces.total());

    let mut cover = DoubleCover {
        total: k.clone(),
        involution: t.clone(),
        quotient,
        orbit,
        preimages: orbits,
        sheet: Vec::new(),
        subdivisions,
        total_faces,
        quotient_faces,
        monodromy: BitVec::zeros(0),
    };
    let order: Vec<usize> = (0..cover.preimages.len()).collect();
    let (sheet, monodromy) = sheets_and_monodromy(&cover, &order);
    cover.sheet = sheet;
    cover.monodromy = monodromy;
    Ok(Some(cover))
}

/// Lifts a breadth-first spanning forest of the quotient 1-skeleton, roots
/// and neighbours taken in `order`, and marks each quotient edge whose lift
/// from the chosen sheet ends on the other sheet.
fn sheets_and_monodromy(cover: &DoubleCover, order: &[usize]) -> (Vec<usize>, BitVec) {
    let nq = cover.preimages.len();
    let rank: Vec<usize> = {
        let mut r = vec![0; nq];
        for (i, &q) in order.iter().enumerate() {
            r[q] = i;
        }
        r
    };
    let edges = cover.quotient_faces.faces(1);
    let mut adj = vec![Vec::new(); nq];
    for e in edges {
        let (a, b) = (e.as_slice()[0], e.as_slice()[1]);
        adj[a].push(b);
        adj[b].push(a);
    }
    for a in &mut adj {
        a.sort_by_key(|&q| rank[q]);
    }
    let edge = |x: usize, y: usize| cover.total_has_face(&VertexSet::from_unsorted(vec![x, y]));

    let mut sheet = vec![usize::MAX; nq];
    for &root in order {
        if sheet[root] != usize::MAX {
            continue;
        }
        sheet[root] = cover.preimages[root][0];
        let mut queue = VecDeque::from([root]);
        while let Some(p) = queue.pop_front() {
            for &c in &adj[p] {
                if sheet[c] == usize::MAX {
                    let [c0, c1] = cover.preimages[c];
                    sheet[c] = if edge(sheet[p], c0) { c0 } else { c1 };
                    debug_assert!(edge(sheet[p], sheet[c]));
                    queue.push_back(c);
                }
            }
        }
    }
    let mut bits = BitVec::zeros(edges.len());
    for (i, e) in edges.iter().enumerate() {
        let (a, b) = (e.as_slice()[0], e.as_slice()[1]);
        if !edge(sheet[a], sheet[b]) {
            bits.set(i, true);
        }
    }
    (sheet, bits)
}

/// The monodromy cocycle representing `w_1` of the cover.
pub fn w1_cocycle(cover: &DoubleCover) -> CochainZ2 {
    CochainZ2 { dim: 1, bits: cover.monodromy.clone() }
}

/// `w_1` relative to the spanning forest grown in the given vertex order.
pub fn w1_cocycle_with_order(cover: &DoubleCover, order: &[usize]) -> CochainZ2 {
    assert_eq!(order.len(), cover.preimages.len(), "order must list every quotient vertex");
    CochainZ2 { dim: 1, bits: sheets_and_monodromy(cover, order).1 }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::homology::homology;
    use num_bigint::BigInt;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    pub(crate) fn hexagon() -> (SimplicialComplex, Involution) {
        let k = SimplicialComplex::from_generators(labels(6), (0..6).map(|i| VertexSet::from_unsorted(vec![i, (i + 1) % 6]))).unwrap();
        (k, Involution::new((0..6).map(|i| (i + 3) % 6).collect()).unwrap())
    }

    pub(crate) fn octahedron() -> (SimplicialComplex, Involution) {
        // vertex i and i+3 are antipodal
        let mut facets = Vec::new();
        for mask in 0..8 {
            facets.push(VertexSet::from_unsorted((0..3).map(|axis| axis + 3 * (mask >> axis & 1)).collect()));
        }
        let k = SimplicialComplex::from_generators(labels(6), facets).unwrap();
        (k, Involution::new((0..6).map(|i| (i + 3) % 6).collect()).unwrap())
    }

    #[test]
    fn involution_must_square_to_identity() {
        assert!(Involution::new(vec![1, 2, 0]).is_err());
        assert!(Involution::new(vec![1, 0, 2]).is_ok());
    }

    #[test]
    fn freeness() {
        let (k, t) = hexagon();
        assert!(check_free_involution(&k, &t).is_free());
        let id = Involution::new((0..6).collect()).unwrap();
        assert_eq!(check_free_involution(&k, &id), FreenessCheck::FixedVertex(0));
        // reflection of the hexagon fixing no vertex but swapping 0<->1 across an edge
        let refl = Involution::new(vec![1, 0, 5, 4, 3, 2]).unwrap();
        assert!(matches!(check_free_involution(&k, &refl), FreenessCheck::FaceMeetsImage(_)));
        // swapping two vertices of a path is not simplicial
        let path = SimplicialComplex::from_generators(labels(3), [vec![0, 1], vec![1, 2]].map(VertexSet::from_sorted)).unwrap();
        let bad = Involution::new(vec![1, 0, 2]).unwrap();
        assert!(!check_free_involution(&path, &bad).is_free());
    }

    #[test]
    fn hexagon_quotient_is_a_triangle() {
        let (k, t) = hexagon();
        let cov = quotient_complex(&k, &t).unwrap();
        assert_eq!(cov.subdivisions, 0);
        assert_eq!(cov.quotient_faces.f_vector(), vec![3, 3]);
        assert_eq!(cov.quotient.labels(), ["0|3", "1|4", "2|5"]);
        // going once around the triangle switches sheets
        assert_eq!(w1_cocycle(&cov).bits.count_ones() % 2, 1);
    }

    #[test]
    fn octahedron_needs_subdivision_and_gives_rp2() {
        let (k, t) = octahedron();
        let cov = quotient_complex(&k, &t).unwrap();
        assert_eq!(cov.subdivisions, 1);
        assert_eq!(cov.quotient.labels().len(), 13);
        let h = homology(&cov.quotient).unwrap();
        assert_eq!(h.betti_numbers(), vec![1, 0, 0]);
        assert_eq!(h.torsion(1), [BigInt::from(2)]);
    }

    #[test]
    fn faces_double() {
        for (k, t) in [hexagon(), octahedron()] {
            let cov = quotient_complex(&k, &t).unwrap();
            let total = cov.total_faces.f_vector();
            let quotient = cov.quotient_faces.f_vector();
            assert_eq!(total, quotient.iter().map(|c| 2 * c).collect::<Vec<_>>());
        }
    }

    #[test]
    fn w1_is_a_cocycle_independent_of_the_forest() {
        use crate::z2::{coboundary, is_coboundary, b_complex_with_swap, HeightOptions};
        let g = crate::graph::make_cycle(5).unwrap();
        let mut cases = vec![hexagon(), octahedron()];
        cases.push(b_complex_with_swap(&g, 1, &HeightOptions::default()).unwrap());
        cases.push(b_complex_with_swap(&g, 3, &HeightOptions::default()).unwrap());
        for (k, t) in cases {
            let cov = quotient_complex(&k, &t).unwrap();
            let faces = &cov.quotient_faces;
            let w = w1_cocycle(&cov);
            assert!(coboundary(faces, &w).is_zero());
            let reversed: Vec<usize> = (0..cov.preimages.len()).rev().collect();
            let mut diff = w1_cocycle_with_order(&cov, &reversed);
            diff.bits.xor_assign(&w.bits);
            assert!(is_coboundary(faces, &diff));
            assert!(!is_coboundary(faces, &w));
        }
    }

    #[test]
    fn quotient_of_b_triangle_is_a_circle() {
        use crate::z2::{b_complex_with_swap, HeightOptions};
        let g = crate::graph::make_cycle(3).unwrap();
        let (k, t) = b_complex_with_swap(&g, 1, &HeightOptions::default()).unwrap();
        let cov = quotient_complex(&k, &t).unwrap();
        assert_eq!(cov.subdivisions, 0);
        let h = homology(&cov.quotient).unwrap();
        assert_eq!(h.betti_numbers(), vec![1, 1]);
    }

    #[test]
    fn disconnected_cover_is_trivial() {
        use crate::z2::is_coboundary;
        let k = SimplicialComplex::from_generators(labels(4), [vec![0, 1], vec![2, 3]].map(VertexSet::from_sorted)).unwrap();
        let cov = quotient_complex(&k, &Involution::new(vec![2, 3, 0, 1]).unwrap()).unwrap();
        assert!(is_coboundary(&cov.quotient_faces, &w1_cocycle(&cov)));
    }

    #[test]
    fn non_free_rejected() {
        let (k, _) = hexagon();
        let id = Involution::new((0..6).collect()).unwrap();
        assert!(matches!(quotient_complex(&k, &id), Err(Error::InvalidParameter(_))));
    }
}
