use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{binomial, odd_girth, Graph, OddGirth};

use super::height::{check_free_parameters, height_bounds, Bound, HeightOptions};
use super::HEIGHT_CONVENTION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "NO-MAP")]
    NoMap,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::NoMap => "NO-MAP",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub verdict: Verdict,
    /// Lower bound on `ht(B_r(G))` for the source graph.
    pub lhs: Bound,
    /// Upper bound on `ht(B_r(H))` for the target graph.
    pub rhs: Bound,
    pub r: usize,
    pub convention: &'static str,
}

/// A map `G -> H` induces a Z/2-map `B_r(G) -> B_r(H)`, so
/// `ht(B_r(G)) > ht(B_r(H))` rules it out.
pub fn obstruction_check(g: &Graph, h: &Graph, r: usize, opts: &HeightOptions) -> Result<ObstructionReport> {
    check_free_parameters(g, r).map_err(|e| tag(e, "source"))?;
    check_free_parameters(h, r).map_err(|e| tag(e, "target"))?;
    let lhs = height_bounds(g, r, opts)?.lower;
    let rhs = height_bounds(h, r, opts)?.upper;
    let verdict = if lhs.value > rhs.value { Verdict::NoMap } else { Verdict::Inconclusive };
    Ok(ObstructionReport { verdict, lhs, rhs, r, convention: HEIGHT_CONVENTION })
}

fn tag(e: Error, which: &str) -> Error {
    match e {
        Error::NotFree(msg) => Error::NotFree(format!("{which} graph: {msg}")),
        other => other,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KneserCertificate {
    pub n: usize,
    pub k: usize,
    /// The `r` with `k - 1 = r(n - 2k)`.
    pub r: usize,
    pub kneser_vertices: u128,
    pub kneser_height: i64,
    pub graph_vertices: usize,
    pub graph_odd_girth: OddGirth,
    pub verdict: Verdict,
    /// Which test produced the verdict, if any fired.
    pub clause: Option<&'static str>,
    pub graph_upper: Option<Bound>,
}

/// No map `K_{n,k} -> G` when `g_0(G) > 2r + 1` and either `G` has fewer
/// vertices than `K_{n,k}` or its height bound falls below `C(n,k) - 2`.
pub fn kneser_certificate(n: usize, k: usize, g: &Graph, opts: &HeightOptions) -> Result<KneserCertificate> {
    if k == 0 || n <= 2 * k {
        return Err(Error::invalid(format!("need n > 2k >= 2, got n = {n}, k = {k}")));
    }
    let gap = n - 2 * k;
    if !(k - 1).is_multiple_of(gap) || k - 1 == 0 {
        return Err(Error::invalid(format!("k - 1 = {} is not a positive multiple of n - 2k = {gap}", k - 1)));
    }
    let r = (k - 1) / gap;
    let kneser_vertices = binomial(n, k);
    let kneser_height = i64::try_from(kneser_vertices).map_err(|_| Error::invalid("C(n, k) too large"))? - 2;
    let g0 = odd_girth(g);
    let mut cert = KneserCertificate {
        n,
        k,
        r,
        kneser_vertices,
        kneser_height,
        graph_vertices: g.vertex_count(),
        graph_odd_girth: g0,
        verdict: Verdict::Inconclusive,
        clause: None,
        graph_upper: None,
    };
    if !g0.exceeds(2 * r + 1) {
        return Ok(cert);
    }
    if (g.vertex_count() as u128) < kneser_vertices {
        cert.verdict = Verdict::NoMap;
        cert.clause = Some("vertex-count");
        return Ok(cert);
    }
    let upper = height_bounds(g, 2 * r + 1, opts)?.upper;
    if upper.value < kneser_height {
        cert.verdict = Verdict::NoMap;
        cert.clause = Some("height");
    }
    cert.graph_upper = Some(upper);
    Ok(cert)
}
