use std::collections::BTreeSet;

use nbhd::complexes::{face_poset, neighborhood_complex, order_complex, SimplicialComplex};
use nbhd::graph::{hom_search, make_cycle, odd_girth, walk_neighborhood, Graph, OddGirth, VertexSet};
use nbhd::homology::gf2::{rank_gf2, BitVec};
use nbhd::homology::{boundary_matrices, dense_smith_normal_form, homology, smith_normal_form, IntMatrix};
use nbhd::z2::{coboundary, cup_product, obstruction_check, CochainZ2, HeightOptions, Verdict};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges: Vec<_> = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e).collect();
            Graph::from_indices(n, &edges).unwrap()
        })
    })
}

fn complex_strategy() -> impl Strategy<Value = SimplicialComplex> {
    (1usize..=7).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::btree_set(0..n, 1..=4.min(n)), 1..6).prop_map(move |sets| {
            let labels = (0..n).map(|i| format!("v{i}")).collect();
            SimplicialComplex::from_generators(labels, sets.into_iter().map(|s| VertexSet::from_sorted(s.into_iter().collect())))
                .unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn walk_neighborhoods_are_symmetric_and_grow_by_two(g in graph_strategy(8), r in 1usize..5) {
        let n = g.vertex_count();
        let nbhd: Vec<VertexSet> = (0..n).map(|v| walk_neighborhood(&g, v, r).unwrap()).collect();
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(nbhd[x].contains(y), nbhd[y].contains(x));
            }
            prop_assert!(nbhd[x].is_subset(&walk_neighborhood(&g, x, r + 2).unwrap()));
        }
    }

    #[test]
    fn odd_girth_is_the_shortest_odd_cycle_that_maps_in(g in graph_strategy(7)) {
        let by_search = (3..=2 * g.vertex_count() + 1)
            .step_by(2)
            .find(|&m| hom_search(&make_cycle(m).unwrap(), &g, 1_000_000).found().is_some());
        let expected = by_search.map_or(OddGirth::Infinite, OddGirth::Finite);
        prop_assert_eq!(odd_girth(&g), expected);
    }

    #[test]
    fn smith_factors_match_determinantal_divisors(
        rows in 1usize..4,
        cols in 1usize..5,
        entries in proptest::collection::vec(-6i64..=6, 16),
    ) {
        let dense: Vec<Vec<i64>> = (0..rows).map(|i| entries[i * cols..(i + 1) * cols].to_vec()).collect();
        let m = IntMatrix::from_dense(&dense);
        let snf = smith_normal_form(&m);
        prop_assert_eq!(&snf.factors, &dense_smith_normal_form(&m).factors);
        let mut product = BigInt::from(1);
        for k in 1..=rows.min(cols) {
            let dk = determinantal_divisor(&dense, k);
            if dk.is_zero() {
                prop_assert!(snf.factors.len() < k);
                break;
            }
            product *= &snf.factors[k - 1];
            prop_assert_eq!(&product, &dk);
        }
        for w in snf.factors.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
    }

    #[test]
    fn euler_characteristic_two_ways(k in complex_strategy()) {
        let h = homology(&k).unwrap();
        prop_assert_eq!(h.euler_characteristic(), k.faces(1 << 16).unwrap().euler_characteristic());
    }

    #[test]
    fn universal_coefficients_mod_two(k in complex_strategy()) {
        let h = homology(&k).unwrap();
        let f = k.faces(1 << 16).unwrap().f_vector();
        let ranks: Vec<usize> = boundary_matrices(&k, 1 << 16)
            .unwrap()
            .iter()
            .map(|b| {
                rank_gf2((0..b.matrix.ncols()).map(|j| {
                    let mut v = BitVec::zeros(b.matrix.nrows());
                    for &(i, x) in b.matrix.column(j) {
                        if x % 2 != 0 {
                            v.flip(i);
                        }
                    }
                    v
                }))
            })
            .collect();
        let even = |d: usize| h.torsion(d).iter().filter(|t| t.is_even()).count();
        for d in 0..f.len() {
            let rank_in = if d >= 1 { ranks[d - 1] } else { 0 };
            let rank_out = ranks.get(d).copied().unwrap_or(0);
            let mod2 = f[d] - rank_in - rank_out;
            let expected = h.betti(d) + even(d) + if d >= 1 { even(d - 1) } else { 0 };
            prop_assert_eq!(mod2, expected);
        }
    }

    #[test]
    fn subdivision_keeps_homology(k in complex_strategy()) {
        let sd = order_complex(&face_poset(&k, 1 << 16).unwrap());
        prop_assert_eq!(homology(&sd).unwrap(), homology(&k).unwrap());
    }

    #[test]
    fn cup_product_satisfies_leibniz(
        k in complex_strategy(),
        p in 0usize..2,
        q in 0usize..2,
        seed_a in any::<u64>(),
        seed_b in any::<u64>(),
    ) {
        let faces = k.faces(1 << 16).unwrap();
        let random = |dim: usize, seed: u64| {
            let n = if (dim as i64) <= faces.dim() { faces.count(dim) } else { 0 };
            CochainZ2 { dim, bits: BitVec::from_bools(&(0..n).map(|i| seed >> (i % 64) & 1 == 1).collect::<Vec<_>>()) }
        };
        let a = random(p, seed_a);
        let b = random(q, seed_b);
        let lhs = coboundary(&faces, &cup_product(&faces, &a, &b));
        let mut rhs = cup_product(&faces, &coboundary(&faces, &a), &b);
        rhs.bits.xor_assign(&cup_product(&faces, &a, &coboundary(&faces, &b)).bits);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn obstructions_never_contradict_a_found_map(g in graph_strategy(6), h in graph_strategy(6)) {
        for r in [1usize, 3] {
            let Ok(report) = obstruction_check(&g, &h, r, &HeightOptions::default()) else { continue };
            if report.verdict == Verdict::NoMap {
                prop_assert!(hom_search(&g, &h, 1_000_000).found().is_none());
            }
        }
    }
}

fn determinantal_divisor(m: &[Vec<i64>], k: usize) -> BigInt {
    let rows: Vec<usize> = (0..m.len()).collect();
    let cols: Vec<usize> = (0..m[0].len()).collect();
    let mut g = BigInt::zero();
    for rs in subsets(&rows, k) {
        for cs in subsets(&cols, k) {
            let minor: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
            g = g.gcd(&BigInt::from(det(&minor)));
        }
    }
    g.abs()
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << items.len())
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect())
        .collect()
}

/// Laplace expansion along the first row.
fn det(m: &[Vec<i64>]) -> i128 {
    if m.len() == 1 {
        return m[0][0] as i128;
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..].iter().map(|row| [&row[..j], &row[j + 1..]].concat()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] as i128 * det(&minor)
        })
        .collect::<Vec<_>>()
        .iter()
        .sum()
}

#[test]
fn kneser_walk_count_matches_search_on_small_cases() {
    use nbhd::graph::{kneser_walk_test, make_kneser};
    for (n, k) in [(5, 2), (6, 2)] {
        let g = make_kneser(n, k).unwrap();
        let sets: Vec<Vec<usize>> = g
            .labels()
            .iter()
            .map(|l| l.trim_matches(|c| c == '{' || c == '}').split(',').map(|t| t.parse::<usize>().unwrap()).collect())
            .collect();
        for s in 1..=3 {
            for a in 0..g.vertex_count() {
                let walk = walk_neighborhood(&g, a, 2 * s).unwrap();
                for b in 0..g.vertex_count() {
                    assert_eq!(kneser_walk_test(n, k, &sets[a], &sets[b], s).unwrap(), walk.contains(b));
                }
            }
        }
    }
}

#[test]
fn neighborhood_complex_faces_lie_in_some_walk_neighborhood() {
    let g = make_cycle(9).unwrap();
    let k = neighborhood_complex(&g, 3).unwrap();
    let nbhds: BTreeSet<VertexSet> = (0..9).map(|v| walk_neighborhood(&g, v, 3).unwrap()).collect();
    for f in k.faces(1 << 16).unwrap().iter() {
        assert!(nbhds.iter().any(|n| f.is_subset(n)));
    }
}
