//! Discrete Morse matchings on `N_r(C_m)` and the collapses they drive.
//!
//! For odd `m > 2r` the walk neighborhoods of `C_m` are the windows
//! `{x, x+2, .., x+2r}`. The faces of `N_r(C_m)` not already in `N_{r-1}(C_m)`
//! split into strata `P_x`, the faces containing both `x` and `x+2r`, and
//! each stratum carries a perfect acyclic matching.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::complexes::{neighborhood_complex, FaceTable, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graph::{make_cycle, VertexSet};
use crate::homology::{homology, HomologyResult};

/// Pairs `(tau, sigma)` with `tau` a facet of `sigma`, over a domain of faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseMatching {
    pub pairs: Vec<(VertexSet, VertexSet)>,
    pub domain: Vec<VertexSet>,
}

impl MorseMatching {
    /// `[tau, sigma]` pairs written with vertex labels.
    pub fn export(&self, labels: &[String]) -> Vec<[Vec<String>; 2]> {
        let named = |s: &VertexSet| s.iter().map(|v| labels[v].clone()).collect();
        self.pairs.iter().map(|(t, s)| [named(t), named(s)]).collect()
    }
}

fn check_cycle_parameters(m: usize, r: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::invalid(format!("r = {r} must be at least 2")));
    }
    if m.is_multiple_of(2) || m <= 2 * r {
        return Err(Error::invalid(format!("m = {m} must be odd and greater than 2r = {}", 2 * r)));
    }
    Ok(())
}

/// `x + 2i` reduced mod `m`.
fn step(m: usize, x: usize, i: usize) -> usize {
    (x + 2 * i) % m
}

fn window(m: usize, r: usize, x: usize) -> Vec<usize> {
    (0..=r).map(|i| step(m, x, i)).collect()
}

/// The stratum `P_x`: subsets of the window at `x` containing `x` and `x+2r`.
pub fn stratum(m: usize, r: usize, x: usize) -> Result<Vec<VertexSet>> {
    check_cycle_parameters(m, r)?;
    let inner = &window(m, r, x)[1..r];
    let mut out: Vec<VertexSet> = (0u64..1 << inner.len())
        .map(|mask| {
            let mut v = vec![x, step(m, x, r)];
            v.extend((0..inner.len()).filter(|j| mask >> j & 1 == 1).map(|j| inner[j]));
            VertexSet::from_unsorted(v)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// `d(σ) = max { 2i : x+2i ∉ σ, 1 <= i <= r }`, undefined on the full window.
pub fn d_value(m: usize, r: usize, x: usize, sigma: &VertexSet) -> Option<usize> {
    (1..=r).rev().find(|&i| !sigma.contains(step(m, x, i))).map(|i| 2 * i)
}

/// The matching `M = ⊔_x M_x` on `FN_r(C_m) ∖ FN_{r-1}(C_m)`.
pub fn cycle_matching(m: usize, r: usize) -> Result<MorseMatching> {
    check_cycle_parameters(m, r)?;
    let mut pairs = Vec::new();
    let mut domain = Vec::new();
    for x in 0..m {
        let full = VertexSet::from_unsorted(window(m, r, x));
        let special = full.without(step(m, x, 1));
        for sigma in stratum(m, r, x)? {
            if sigma == full {
                pairs.push((special.clone(), full.clone()));
            } else if sigma != special {
                let d = d_value(m, r, x, &sigma).expect("defined off the full window");
                let v = step(m, x, d / 2 - 1);
                if sigma.contains(v) {
                    pairs.push((sigma.without(v), sigma.clone()));
                }
            }
            domain.push(sigma);
        }
    }
    domain.sort();
    pairs.sort();
    Ok(MorseMatching { pairs, domain })
}

/// Diagnostics from [`verify_matching`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MatchingReport {
    pub pairs: usize,
    pub domain: usize,
    /// Faces occurring in more than one pair.
    pub duplicates: Vec<VertexSet>,
    /// Pairs where `tau` is not a facet of `sigma`.
    pub non_cofacet: Vec<(VertexSet, VertexSet)>,
    /// Matched or domain faces missing from the complex or the domain.
    pub outside: Vec<VertexSet>,
    /// Unmatched domain faces.
    pub critical: Vec<VertexSet>,
}

impl MatchingReport {
    pub fn is_well_formed(&self) -> bool {
        self.duplicates.is_empty() && self.non_cofacet.is_empty() && self.outside.is_empty()
    }

    pub fn is_perfect(&self) -> bool {
        self.is_well_formed() && self.critical.is_empty()
    }
}

pub fn verify_matching(faces: &FaceTable, matching: &MorseMatching) -> MatchingReport {
    let domain: HashSet<&VertexSet> = matching.domain.iter().collect();
    let mut report = MatchingReport { pairs: matching.pairs.len(), domain: domain.len(), ..Default::default() };
    let mut seen: HashMap<&VertexSet, usize> = HashMap::new();
    for (tau, sigma) in &matching.pairs {
        *seen.entry(tau).or_default() += 1;
        *seen.entry(sigma).or_default() += 1;
        if tau.len() + 1 != sigma.len() || !tau.is_subset(sigma) {
            report.non_cofacet.push((tau.clone(), sigma.clone()));
        }
    }
    let mut dup: Vec<VertexSet> = seen.iter().filter(|(_, &c)| c > 1).map(|(f, _)| (*f).clone()).collect();
    dup.sort();
    report.duplicates = dup;
    let mut outside: BTreeSet<VertexSet> = BTreeSet::new();
    for f in matching.domain.iter().chain(seen.keys().copied()) {
        if faces.index_of(f).is_none() || !domain.contains(f) {
            outside.insert(f.clone());
        }
    }
    report.outside = outside.into_iter().collect();
    let mut critical: Vec<VertexSet> = domain.iter().filter(|f| !seen.contains_key(*f)).map(|f| (*f).clone()).collect();
    critical.sort();
    report.critical = critical;
    report
}

/// Result of [`verify_acyclic`]; a cycle is listed as the faces it visits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Acyclicity {
    Acyclic,
    Cycle(Vec<VertexSet>),
}

impl Acyclicity {
    pub fn is_acyclic(&self) -> bool {
        matches!(self, Acyclicity::Acyclic)
    }
}

/// Cycle detection on the Hasse diagram of the domain with matched edges
/// reversed: `sigma -> tau` for unmatched facets, `tau -> sigma` for pairs.
pub fn verify_acyclic(matching: &MorseMatching) -> Acyclicity {
    let nodes = &matching.domain;
    let index: HashMap<&VertexSet, usize> = nodes.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let partner_up: HashMap<usize, usize> = matching
        .pairs
        .iter()
        .filter_map(|(t, s)| Some((*index.get(t)?, *index.get(s)?)))
        .collect();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    for (i, sigma) in nodes.iter().enumerate() {
        for j in 0..sigma.len() {
            if let Some(&t) = index.get(&sigma.omit_index(j)) {
                if partner_up.get(&t) == Some(&i) {
                    out[t].push(i);
                } else {
                    out[i].push(t);
                }
            }
        }
    }
    // iterative three-colour depth-first search
    let mut colour = vec![0u8; nodes.len()];
    let mut parent = vec![usize::MAX; nodes.len()];
    for start in 0..nodes.len() {
        if colour[start] != 0 {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        colour[start] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < out[v].len() {
                let w = out[v][*next];
                *next += 1;
                match colour[w] {
                    0 => {
                        colour[w] = 1;
                        parent[w] = v;
                        stack.push((w, 0));
                    }
                    1 => {
                        let mut cycle = vec![nodes[w].clone()];
                        let mut u = v;
                        let mut path = vec![];
                        while u != w {
                            path.push(nodes[u].clone());
                            u = parent[u];
                        }
                        path.reverse();
                        cycle.extend(path);
                        return Acyclicity::Cycle(cycle);
                    }
                    _ => {}
                }
            } else {
                colour[v] = 2;
                stack.pop();
            }
        }
    }
    Acyclicity::Acyclic
}

/// Removes matched pairs by elementary collapses, always taking the
/// lexicographically first free `tau`. Ends with exactly the unmatched faces.
pub fn collapse(k: &SimplicialComplex, matching: &MorseMatching, face_limit: usize) -> Result<SimplicialComplex> {
    let table = k.faces(face_limit)?;
    let mut present: HashSet<VertexSet> = table.iter().cloned().collect();
    for (t, s) in &matching.pairs {
        if !present.contains(t) || !present.contains(s) {
            return Err(Error::MatchingDefect(format!("pair ({t}, {s}) is not in the complex")));
        }
    }
    let mut up: HashMap<VertexSet, usize> = present.iter().map(|f| (f.clone(), 0)).collect();
    for f in table.iter().filter(|f| f.len() > 1) {
        for j in 0..f.len() {
            *up.get_mut(&f.omit_index(j)).expect("closed") += 1;
        }
    }
    let sigma_of: HashMap<VertexSet, VertexSet> = matching.pairs.iter().cloned().collect();
    let tau_of: HashMap<VertexSet, VertexSet> = matching.pairs.iter().map(|(t, s)| (s.clone(), t.clone())).collect();
    let free = |t: &VertexSet, up: &HashMap<VertexSet, usize>| up[t] == 1 && up[&sigma_of[t]] == 0;
    let mut ready: BTreeSet<VertexSet> = sigma_of.keys().filter(|t| free(t, &up)).cloned().collect();
    let mut remaining = matching.pairs.len();

    while let Some(tau) = ready.pop_first() {
        if !present.contains(&tau) || !free(&tau, &up) {
            continue;
        }
        let sigma = sigma_of[&tau].clone();
        let mut touched = Vec::new();
        for f in [&sigma, &tau] {
            present.remove(f);
            for j in 0..f.len() {
                let g = f.omit_index(j);
                if g.is_empty() {
                    continue;
                }
                *up.get_mut(&g).expect("closed") -= 1;
                touched.push(g);
            }
        }
        remaining -= 1;
        for g in touched {
            if !present.contains(&g) {
                continue;
            }
            if sigma_of.contains_key(&g) && free(&g, &up) {
                ready.insert(g.clone());
            }
            if let Some(t) = tau_of.get(&g) {
                if present.contains(t) && free(t, &up) {
                    ready.insert(t.clone());
                }
            }
        }
    }
    if remaining > 0 {
        return Err(Error::MatchingDefect(format!("{remaining} matched pairs never became free")));
    }
    Ok(SimplicialComplex::from_closed_faces(k.labels().to_vec(), present))
}

/// One `N_r(C_m) ↘ N_{r-1}(C_m)` step of [`collapse_cycle_complex`].
#[derive(Debug, Clone, Serialize)]
pub struct CollapseStep {
    pub r: usize,
    pub pairs: usize,
    pub critical: usize,
    pub acyclic: bool,
    /// The collapse result has the faces of `N_{r-1}(C_m)`.
    pub reached_next: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CollapseRun {
    pub m: usize,
    pub r: usize,
    pub steps: Vec<CollapseStep>,
    pub final_facets: Vec<VertexSet>,
    pub homology: HomologyResult,
}

/// Collapses `N_r(C_m)` down to `N_1(C_m)`, one walk length at a time.
pub fn collapse_cycle_complex(m: usize, r: usize, face_limit: usize) -> Result<CollapseRun> {
    check_cycle_parameters(m, r)?;
    let g = make_cycle(m)?;
    let mut current = neighborhood_complex(&g, r)?;
    let mut steps = Vec::new();
    for s in (2..=r).rev() {
        let matching = cycle_matching(m, s)?;
        let report = verify_matching(&current.faces(face_limit)?, &matching);
        let acyclic = verify_acyclic(&matching).is_acyclic();
        if !report.is_well_formed() {
            return Err(Error::MatchingDefect(format!("matching for r = {s} is malformed: {report:?}")));
        }
        let next = collapse(&current, &matching, face_limit)?;
        let reached_next = next.has_same_faces(&neighborhood_complex(&g, s - 1)?);
        steps.push(CollapseStep { r: s, pairs: matching.pairs.len(), critical: report.critical.len(), acyclic, reached_next });
        current = next;
    }
    let homology = homology(&current)?;
    Ok(CollapseRun { m, r, steps, final_facets: current.facets().to_vec(), homology })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::from_unsorted(v.to_vec())
    }

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    fn n_faces(m: usize, r: usize) -> FaceTable {
        neighborhood_complex(&make_cycle(m).unwrap(), r).unwrap().faces(1 << 20).unwrap()
    }

    #[test]
    fn parameters() {
        assert!(cycle_matching(5, 3).is_err());
        assert!(cycle_matching(8, 2).is_err());
        assert!(cycle_matching(7, 1).is_err());
    }

    #[test]
    fn seven_two_is_perfect_and_acyclic() {
        let m = cycle_matching(7, 2).unwrap();
        // each stratum is {x, x+4} and {x, x+2, x+4}
        assert_eq!(m.domain.len(), 14);
        assert_eq!(m.pairs.len(), 7);
        assert!(m.pairs.contains(&(vs(&[0, 4]), vs(&[0, 2, 4]))));
        let report = verify_matching(&n_faces(7, 2), &m);
        assert!(report.is_perfect(), "{report:?}");
        assert!(verify_acyclic(&m).is_acyclic());
    }

    #[test]
    fn perfect_and_acyclic_on_larger_cases() {
        for (mm, r) in [(9, 2), (9, 3), (11, 4), (11, 3), (13, 5)] {
            let m = cycle_matching(mm, r).unwrap();
            let report = verify_matching(&n_faces(mm, r), &m);
            assert!(report.is_perfect(), "({mm},{r}) {report:?}");
            assert!(verify_acyclic(&m).is_acyclic(), "({mm},{r})");
        }
    }

    #[test]
    fn strata_partition_the_new_faces() {
        for (mm, r) in [(7, 2), (9, 3), (11, 4)] {
            let big = n_faces(mm, r);
            let small = n_faces(mm, r - 1);
            let new: BTreeSet<VertexSet> = big.iter().filter(|f| small.index_of(f).is_none()).cloned().collect();
            let mut union = BTreeSet::new();
            let mut total = 0;
            for x in 0..mm {
                let p = stratum(mm, r, x).unwrap();
                total += p.len();
                union.extend(p);
            }
            assert_eq!(total, union.len(), "strata overlap");
            assert_eq!(union, new);
        }
    }

    #[test]
    fn d_is_monotone_and_constant_on_pairs() {
        for (mm, r) in [(7, 2), (9, 3), (11, 4)] {
            let m = cycle_matching(mm, r).unwrap();
            for x in 0..mm {
                let p = stratum(mm, r, x).unwrap();
                let full = VertexSet::from_unsorted(window(mm, r, x));
                for t in &p {
                    for s in &p {
                        if t != s && t.is_subset(s) && *s != full {
                            assert!(d_value(mm, r, x, t) >= d_value(mm, r, x, s));
                        }
                    }
                }
                for (t, s) in &m.pairs {
                    if p.contains(s) && *s != full {
                        assert_eq!(d_value(mm, r, x, t), d_value(mm, r, x, s));
                    }
                }
            }
        }
    }

    #[test]
    fn empty_matching_leaves_everything_critical() {
        let m = cycle_matching(7, 2).unwrap();
        let empty = MorseMatching { pairs: vec![], domain: m.domain.clone() };
        let report = verify_matching(&n_faces(7, 2), &empty);
        assert_eq!(report.critical.len(), 14);
        assert!(verify_acyclic(&empty).is_acyclic());
    }

    #[test]
    fn dropped_pair_is_reported() {
        let mut m = cycle_matching(7, 2).unwrap();
        let (t, s) = m.pairs.remove(0);
        let report = verify_matching(&n_faces(7, 2), &m);
        assert_eq!(report.critical, vec![t, s]);
        let mut dup = cycle_matching(7, 2).unwrap();
        dup.pairs.push((vs(&[0, 4]), vs(&[0, 2, 4])));
        assert!(!verify_matching(&n_faces(7, 2), &dup).is_well_formed());
    }

    #[test]
    fn square_gradient_cycle() {
        let domain = vec![vs(&[0]), vs(&[1]), vs(&[2]), vs(&[3]), vs(&[0, 1]), vs(&[1, 2]), vs(&[2, 3]), vs(&[0, 3])];
        let pairs = vec![(vs(&[0]), vs(&[0, 1])), (vs(&[1]), vs(&[1, 2])), (vs(&[2]), vs(&[2, 3])), (vs(&[3]), vs(&[0, 3]))];
        match verify_acyclic(&MorseMatching { pairs, domain }) {
            Acyclicity::Cycle(c) => assert_eq!(c.len(), 8),
            Acyclicity::Acyclic => panic!("expected a cycle"),
        }
    }

    #[test]
    fn cone_collapses_to_apex() {
        let k = SimplicialComplex::from_generators(labels(3), [vs(&[0, 1, 2])]).unwrap();
        let pairs = vec![(vs(&[1]), vs(&[0, 1])), (vs(&[2]), vs(&[0, 2])), (vs(&[1, 2]), vs(&[0, 1, 2]))];
        let domain = k.faces(100).unwrap().iter().filter(|f| **f != vs(&[0])).cloned().collect();
        let out = collapse(&k, &MorseMatching { pairs, domain }, 100).unwrap();
        assert_eq!(out.facets(), [vs(&[0])]);
    }

    #[test]
    fn collapse_reports_stuck_matchings() {
        let k = SimplicialComplex::from_generators(labels(3), [vs(&[0, 1, 2])]).unwrap();
        // the triangle's edges are never free while the 2-face is unmatched
        let pairs = vec![(vs(&[1]), vs(&[1, 2]))];
        let domain = vec![vs(&[1]), vs(&[1, 2])];
        assert!(matches!(collapse(&k, &MorseMatching { pairs, domain }, 100), Err(Error::MatchingDefect(_))));
    }

    #[test]
    fn n2_of_c7_collapses_to_the_heptagon() {
        let g = make_cycle(7).unwrap();
        let k = neighborhood_complex(&g, 2).unwrap();
        let out = collapse(&k, &cycle_matching(7, 2).unwrap(), 1 << 20).unwrap();
        let expected: Vec<VertexSet> = (0..7).map(|v| vs(&[(v + 6) % 7, (v + 1) % 7])).collect();
        let expected = SimplicialComplex::from_generators(labels(7), expected).unwrap();
        assert!(out.has_same_faces(&expected));
    }

    #[test]
    fn iterated_collapse_reaches_a_circle() {
        let run = collapse_cycle_complex(9, 3, 1 << 20).unwrap();
        assert_eq!(run.steps.len(), 2);
        assert!(run.steps.iter().all(|s| s.acyclic && s.critical == 0 && s.reached_next));
        assert_eq!(run.homology.betti_numbers(), vec![1, 1]);
        assert!(run.homology.is_torsion_free());
        assert_eq!(run.final_facets.len(), 9);
    }

    #[test]
    fn export_uses_labels() {
        let m = cycle_matching(7, 2).unwrap();
        let e = m.export(&labels(7));
        assert_eq!(e.len(), 7);
        assert!(e.contains(&[vec!["0".to_string(), "4".to_string()], vec!["0".into(), "2".into(), "4".into()]]));
    }
}
