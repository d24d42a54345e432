use serde::Serialize;

use crate::complexes::neighborhood_complex;
use crate::error::Result;
use crate::graph::{hom_search, make_cycle, odd_girth, Graph, OddGirth};

use super::{abelianize, edge_path_presentation, homology_with_limit};

/// `H_1(N_i(G))` next to the abelianized edge-path group at one base vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummandRow {
    pub i: usize,
    pub base: String,
    pub h1_rank: usize,
    pub h1_torsion: Vec<String>,
    pub presentation_rank: usize,
    pub presentation_torsion: Vec<String>,
    pub agrees: bool,
    pub has_z_summand: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum SummandStatus {
    /// Bipartite graphs have chromatic number at most 2.
    Skipped { reason: String },
    /// No map to an odd cycle within the scanned range.
    NoCycleTarget { m_bound: usize },
    Checked { m: usize, r: usize, rows: Vec<SummandRow> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummandReport {
    pub odd_girth: OddGirth,
    #[serde(flatten)]
    pub status: SummandStatus,
}

/// For a non-bipartite `G` mapping to the odd cycle `C_m`, `m = 2r + 1`,
/// checks that `H_1(N_i(G); Z)` has a free summand for `1 <= i <= r`, and
/// that the edge-path presentation abelianizes to the same group.
///
/// The largest odd `m <= m_bound` admitting a map is used.
pub fn h1_summand_report(g: &Graph, m_bound: usize, search_budget: u64, face_limit: usize) -> Result<SummandReport> {
    let g0 = odd_girth(g);
    let Some(girth) = g0.finite() else {
        return Ok(SummandReport {
            odd_girth: g0,
            status: SummandStatus::Skipped { reason: "odd girth infinite: bipartite, chromatic number at most 2".into() },
        });
    };
    let mut m = m_bound.min(girth);
    if m % 2 == 0 {
        m -= 1;
    }
    let target = loop {
        if m < 3 {
            break None;
        }
        if hom_search(g, &make_cycle(m)?, search_budget).found().is_some() {
            break Some(m);
        }
        m -= 2;
    };
    let Some(m) = target else {
        return Ok(SummandReport { odd_girth: g0, status: SummandStatus::NoCycleTarget { m_bound } });
    };
    let r = (m - 1) / 2;
    let base = (0..g.vertex_count()).find(|&v| g.degree(v) > 0).expect("non-bipartite graphs have edges");
    let mut rows = Vec::new();
    for i in 1..=r {
        let k = neighborhood_complex(g, i)?;
        let h = homology_with_limit(&k, face_limit)?;
        let ab = abelianize(&edge_path_presentation(&k, base)?);
        let (h1_rank, h1_torsion): (usize, Vec<String>) = if h.groups.len() > 1 {
            (h.betti(1), h.torsion(1).iter().map(|t| t.to_string()).collect())
        } else {
            (0, Vec::new())
        };
        let presentation_torsion: Vec<String> = ab.torsion.iter().map(|t| t.to_string()).collect();
        // H_1 sees every component, the presentation only the base one
        let agrees = ab.free_rank == h1_rank && presentation_torsion == h1_torsion;
        rows.push(SummandRow {
            i,
            base: g.label(base).to_string(),
            h1_rank,
            h1_torsion,
            presentation_rank: ab.free_rank,
            presentation_torsion,
            agrees,
            has_z_summand: h1_rank >= 1,
        });
    }
    Ok(SummandReport { odd_girth: g0, status: SummandStatus::Checked { m, r, rows } })
}
