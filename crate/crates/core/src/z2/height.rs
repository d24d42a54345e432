use serde::Serialize;

use crate::complexes::{b_poset, b_poset_swap, neighborhood_complex, try_order_complex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graph::{binomial, hom_search, make_cycle, odd_girth, recognize_family, Graph, GraphFamily, OddGirth};
use crate::{DEFAULT_FACE_LIMIT, DEFAULT_SEARCH_BUDGET};

use super::cochain::{cup_product, is_coboundary};
use super::cover::{quotient_complex_with_limit, w1_cocycle, Involution};

pub fn z2_height(k: &SimplicialComplex, t: &Involution) -> Result<i64> {
    z2_height_with_limit(k, t, DEFAULT_FACE_LIMIT)
}

/// Largest `n` with `w_1^n` not a coboundary; `-1` for the empty complex.
pub fn z2_height_with_limit(k: &SimplicialComplex, t: &Involution, face_limit: usize) -> Result<i64> {
    if k.is_empty() {
        return Ok(-1);
    }
    let cover = quotient_complex_with_limit(k, t, face_limit)?;
    let faces = &cover.quotient_faces;
    let w = w1_cocycle(&cover);
    if is_coboundary(faces, &w) {
        return Ok(0);
    }
    let mut power = w.clone();
    let mut n = 1;
    while (n as i64) < faces.dim() {
        let next = cup_product(faces, &power, &w);
        if is_coboundary(faces, &next) {
            break;
        }
        power = next;
        n += 1;
    }
    Ok(n as i64)
}

/// `Δ(B_r(G))` with the swap involution `(A, B) -> (B, A)`.
pub fn b_complex_with_swap(g: &Graph, r: usize, opts: &HeightOptions) -> Result<(SimplicialComplex, Involution)> {
    let poset = b_poset(g, r, opts.poset_guard)?;
    let swap = Involution::new(b_poset_swap(&poset))?;
    let complex = try_order_complex(&poset, opts.chain_limit)?;
    Ok((complex, swap))
}

#[derive(Debug, Clone)]
pub struct HeightOptions {
    /// Largest odd `m` tried by the "maps to C_m" rule.
    pub m_bound: usize,
    pub search_budget: u64,
    /// Compute the height of `Δ(B_r(G))` when the cheap bounds disagree.
    pub exact: bool,
    pub face_limit: usize,
    pub poset_guard: usize,
    /// Cap on maximal chains, i.e. facets of `Δ(B_r(G))`.
    pub chain_limit: usize,
}

impl Default for HeightOptions {
    fn default() -> Self {
        HeightOptions {
            m_bound: 15,
            search_budget: DEFAULT_SEARCH_BUDGET,
            exact: false,
            face_limit: DEFAULT_FACE_LIMIT,
            poset_guard: 200_000,
            chain_limit: 500_000,
        }
    }
}

/// The rule that produced a height bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum HeightRule {
    /// No edges: `B_r(G)` is empty.
    Edgeless,
    /// Some edge gives a nonempty free Z/2-space.
    Nonempty,
    /// `N_r(G)`, hence `B_r(G)`, is connected, so the cover is nontrivial.
    Connected,
    /// `g_0(G) = r + 2`.
    OddGirth { odd_girth: usize },
    /// `G = C_{r+2}`.
    Cycle { n: usize },
    /// `K_{n,k}` with `k - 1 = r'(n - 2k)` and `r = 2r' + 1`; complete graphs as `k = 1`.
    KneserSphere { n: usize, k: usize },
    /// Maps to `K_2`.
    Bipartite,
    /// Maps to the odd cycle `C_m` with `m > 2r`.
    MapsToOddCycle { m: usize },
    /// `ht <= dim Δ(B_r(G)) <= |V| - 2`.
    Dimension { vertices: usize },
    /// Cup powers of `w_1` on `Δ(B_r(G))`.
    Computed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub value: i64,
    #[serde(flatten)]
    pub rule: HeightRule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeightBounds {
    pub r: usize,
    pub lower: Bound,
    pub upper: Bound,
}

impl HeightBounds {
    pub fn exact(&self) -> Option<i64> {
        (self.lower.value == self.upper.value).then_some(self.lower.value)
    }
}

/// Checks that `r` is odd and `g_0(G) > r`, so the swap on `B_r(G)` is free.
pub(crate) fn check_free_parameters(g: &Graph, r: usize) -> Result<OddGirth> {
    if r.is_multiple_of(2) {
        return Err(Error::NotFree(format!("r = {r} is even")));
    }
    let g0 = odd_girth(g);
    if !g0.exceeds(r) {
        return Err(Error::NotFree(format!("odd girth {g0} does not exceed r = {r}")));
    }
    Ok(g0)
}

/// Cheap bounds on `ht(B_r(G))` from closed-form rules, without building
/// `Δ(B_r(G))` unless `opts.exact` asks for it.
pub fn height_bounds(g: &Graph, r: usize, opts: &HeightOptions) -> Result<HeightBounds> {
    let g0 = check_free_parameters(g, r)?;
    let n = g.vertex_count();
    let mut lowers: Vec<Bound> = Vec::new();
    let mut uppers: Vec<Bound> = Vec::new();
    let exact = |value: i64, rule: HeightRule, lowers: &mut Vec<Bound>, uppers: &mut Vec<Bound>| {
        lowers.push(Bound { value, rule: rule.clone() });
        uppers.push(Bound { value, rule });
    };

    if g.edge_count() == 0 {
        exact(-1, HeightRule::Edgeless, &mut lowers, &mut uppers);
    } else {
        lowers.push(Bound { value: 0, rule: HeightRule::Nonempty });
        if is_connected_complex(&neighborhood_complex(g, r)?) {
            lowers.push(Bound { value: 1, rule: HeightRule::Connected });
        }
        if g.is_bipartite() {
            uppers.push(Bound { value: 0, rule: HeightRule::Bipartite });
        }
    }
    if g0 == OddGirth::Finite(r + 2) {
        lowers.push(Bound { value: r as i64, rule: HeightRule::OddGirth { odd_girth: r + 2 } });
    }
    match recognize_family(g) {
        Some(GraphFamily::Cycle { n }) if n == r + 2 => {
            exact(r as i64, HeightRule::Cycle { n }, &mut lowers, &mut uppers);
        }
        Some(GraphFamily::Kneser { n, k }) => {
            if let Some(v) = kneser_sphere_height(n, k, r) {
                exact(v, HeightRule::KneserSphere { n, k }, &mut lowers, &mut uppers);
            }
        }
        Some(GraphFamily::Complete { n }) => {
            if let Some(v) = kneser_sphere_height(n, 1, r) {
                exact(v, HeightRule::KneserSphere { n, k: 1 }, &mut lowers, &mut uppers);
            }
        }
        _ => {}
    }
    if g.edge_count() > 0 && !g.is_bipartite() {
        let first = (2 * r + 1).max(3);
        for m in (first..=opts.m_bound).step_by(2) {
            let target = make_cycle(m)?;
            if hom_search(g, &target, opts.search_budget).found().is_some() {
                uppers.push(Bound { value: 1, rule: HeightRule::MapsToOddCycle { m } });
                break;
            }
        }
    }

    uppers.push(Bound { value: (n as i64 - 2).max(-1), rule: HeightRule::Dimension { vertices: n } });
    // ties keep the earlier, more specific rule
    let pick = |bounds: Vec<Bound>, better: fn(i64, i64) -> bool| {
        bounds.into_iter().reduce(|best, b| if better(b.value, best.value) { b } else { best })
    };
    let lower = pick(lowers, |a, b| a > b).expect("some lower rule always applies");
    let upper = pick(uppers, |a, b| a < b).expect("the dimension rule always applies");
    if lower.value > upper.value {
        return Err(Error::Structural(format!("height bounds cross: {lower:?} > {upper:?}")));
    }
    let mut bounds = HeightBounds { r, lower, upper };
    if opts.exact && bounds.exact().is_none() {
        let (complex, swap) = b_complex_with_swap(g, r, opts)?;
        let value = z2_height_with_limit(&complex, &swap, opts.face_limit)?;
        let computed = Bound { value, rule: HeightRule::Computed };
        if value < bounds.lower.value || value > bounds.upper.value {
            return Err(Error::Structural(format!("computed height {value} outside cheap bounds")));
        }
        bounds.lower = computed.clone();
        bounds.upper = computed;
    }
    Ok(bounds)
}

/// `C(n, k) - 2` when `K_{n,k}` with walk length `r` falls under the sphere rule.
fn kneser_sphere_height(n: usize, k: usize, r: usize) -> Option<i64> {
    if k == 0 || n <= 2 * k {
        return None;
    }
    let gap = n - 2 * k;
    if !(k - 1).is_multiple_of(gap) || r != 2 * ((k - 1) / gap) + 1 {
        return None;
    }
    i64::try_from(binomial(n, k)).ok().map(|v| v - 2)
}

fn is_connected_complex(k: &SimplicialComplex) -> bool {
    let support = k.vertices();
    if support.is_empty() {
        return false;
    }
    let n = k.labels().len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for f in k.facets() {
        let s = f.as_slice();
        for &v in &s[1..] {
            let (a, b) = (find(&mut parent, s[0]), find(&mut parent, v));
            parent[a] = b;
        }
    }
    let root = find(&mut parent, support.as_slice()[0]);
    let connected = support.iter().all(|v| find(&mut parent, v) == root);
    connected
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_edgeless, make_kneser, make_path, petersen};

    fn opts() -> HeightOptions {
        HeightOptions::default()
    }

    #[test]
    fn b_of_triangle_has_height_one() {
        let g = make_cycle(3).unwrap();
        let (k, t) = b_complex_with_swap(&g, 1, &opts()).unwrap();
        assert_eq!(z2_height(&k, &t).unwrap(), 1);
    }

    #[test]
    fn b3_of_pentagon_has_height_three() {
        let g = make_cycle(5).unwrap();
        let (k, t) = b_complex_with_swap(&g, 3, &opts()).unwrap();
        let h = z2_height(&k, &t).unwrap();
        assert_eq!(h, 3);
        assert!(h <= k.dim());
    }

    #[test]
    fn spheres() {
        let (k, t) = crate::z2::cover::tests::hexagon();
        assert_eq!(z2_height(&k, &t).unwrap(), 1);
        let (k, t) = crate::z2::cover::tests::octahedron();
        assert_eq!(z2_height(&k, &t).unwrap(), 2);
    }

    #[test]
    fn trivial_cover_has_height_zero() {
        // two disjoint edges swapped as wholes
        let labels = (0..4).map(|i| i.to_string()).collect();
        let k = SimplicialComplex::from_generators(
            labels,
            [vec![0, 1], vec![2, 3]].map(crate::graph::VertexSet::from_sorted),
        )
        .unwrap();
        let t = Involution::new(vec![2, 3, 0, 1]).unwrap();
        assert_eq!(z2_height(&k, &t).unwrap(), 0);
        assert_eq!(z2_height(&SimplicialComplex::empty(vec![]), &Involution::new(vec![]).unwrap()).unwrap(), -1);
    }

    #[test]
    fn pentagon_bounds() {
        let b = height_bounds(&make_cycle(5).unwrap(), 3, &opts()).unwrap();
        assert_eq!(b.exact(), Some(3));
        assert_eq!(b.lower.rule, HeightRule::OddGirth { odd_girth: 5 });
    }

    #[test]
    fn kneser_bounds() {
        let b = height_bounds(&make_kneser(5, 2).unwrap(), 3, &opts()).unwrap();
        assert_eq!(b.exact(), Some(8));
        assert_eq!(b.upper.rule, HeightRule::KneserSphere { n: 5, k: 2 });
        let b = height_bounds(&make_complete(5).unwrap(), 1, &opts()).unwrap();
        assert_eq!(b.exact(), Some(3));
    }

    #[test]
    fn odd_cycle_maps_to_itself() {
        let b = height_bounds(&make_cycle(9).unwrap(), 1, &opts()).unwrap();
        assert_eq!(b.upper, Bound { value: 1, rule: HeightRule::MapsToOddCycle { m: 3 } });
        let b = height_bounds(&make_cycle(9).unwrap(), 3, &opts()).unwrap();
        assert_eq!(b.upper.rule, HeightRule::MapsToOddCycle { m: 7 });
        assert_eq!(b.exact(), Some(1));
    }

    #[test]
    fn bipartite_and_edgeless() {
        let b = height_bounds(&make_path(4).unwrap(), 3, &opts()).unwrap();
        assert_eq!((b.lower.value, b.upper.value), (0, 0));
        let b = height_bounds(&make_edgeless(3), 1, &opts()).unwrap();
        assert_eq!(b.exact(), Some(-1));
    }

    #[test]
    fn preconditions() {
        assert!(matches!(height_bounds(&make_cycle(5).unwrap(), 2, &opts()), Err(Error::NotFree(_))));
        assert!(matches!(height_bounds(&make_cycle(5).unwrap(), 5, &opts()), Err(Error::NotFree(_))));
    }

    #[test]
    fn petersen_at_r1_is_pinned_by_cheap_rules() {
        // connected N_1 gives 1 from below, a 3-colouring gives 1 from above
        let b = height_bounds(&petersen(), 1, &opts()).unwrap();
        assert_eq!(b.exact(), Some(1));
        assert_eq!(b.upper.rule, HeightRule::MapsToOddCycle { m: 3 });
    }

    #[test]
    fn exact_refines_a_disconnected_graph() {
        // C_5 plus a disjoint edge: N_1 is disconnected, so cheap rules give [0, 1]
        let g = Graph::from_indices(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 6)]).unwrap();
        let b = height_bounds(&g, 1, &opts()).unwrap();
        assert_eq!((b.lower.value, b.upper.value), (0, 1));
        let mut o = opts();
        o.exact = true;
        let b = height_bounds(&g, 1, &o).unwrap();
        assert_eq!(b.exact(), Some(1));
        assert_eq!(b.lower.rule, HeightRule::Computed);
    }

    #[test]
    fn exact_matches_closed_form_on_k4() {
        let mut o = opts();
        o.exact = true;
        let g = make_complete(4).unwrap();
        let (k, t) = b_complex_with_swap(&g, 1, &o).unwrap();
        assert_eq!(z2_height(&k, &t).unwrap(), 2);
    }
}
