//! Edge-path group presentations and their abelianization.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use serde::Serialize;

use super::snf::{smith_normal_form, IntMatrix};
use crate::complexes::SimplicialComplex;
use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::DEFAULT_FACE_LIMIT;

/// A letter: generator index and exponent `±1`.
pub type Letter = (usize, i8);

/// Group presentation of the edge-path group `E(K, v)`.
///
/// A breadth-first spanning tree of the 1-skeleton component of `v` is
/// contracted: every non-tree edge `a < b` becomes a generator `[a,b]`, and
/// each 2-face `a < b < c` gives the relator `[a,b][b,c][a,c]^-1` with tree
/// edges deleted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    /// Vertex-index pairs of the generating edges.
    pub edges: Vec<(usize, usize)>,
    pub generators: Vec<String>,
    pub relators: Vec<Vec<Letter>>,
}

/// Exported form: generator names and relators written as words.
#[derive(Debug, Clone, Serialize)]
pub struct PresentationFile {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
}

impl Presentation {
    pub fn word_to_string(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        word.iter()
            .map(|&(g, e)| if e > 0 { self.generators[g].clone() } else { format!("{}^-1", self.generators[g]) })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn to_file(&self) -> PresentationFile {
        PresentationFile {
            generators: self.generators.clone(),
            relators: self.relators.iter().map(|w| self.word_to_string(w)).collect(),
        }
    }
}

pub fn edge_path_presentation(k: &SimplicialComplex, base: usize) -> Result<Presentation> {
    if base >= k.labels().len() || !k.contains_face(&VertexSet::singleton(base)) {
        return Err(Error::invalid(format!("base vertex {base} is not a vertex of the complex")));
    }
    let faces = k.faces(DEFAULT_FACE_LIMIT)?;
    let n = k.labels().len();
    let mut adj = vec![BTreeSet::new(); n];
    for e in faces.faces(1) {
        let (a, b) = (e.as_slice()[0], e.as_slice()[1]);
        adj[a].insert(b);
        adj[b].insert(a);
    }

    let mut in_component = vec![false; n];
    let mut tree: BTreeSet<(usize, usize)> = BTreeSet::new();
    in_component[base] = true;
    let mut queue = VecDeque::from([base]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if !in_component[w] {
                in_component[w] = true;
                tree.insert((u.min(w), u.max(w)));
                queue.push_back(w);
            }
        }
    }

    let mut edges = Vec::new();
    let mut gen_of: HashMap<(usize, usize), usize> = HashMap::new();
    for e in faces.faces(1) {
        let pair = (e.as_slice()[0], e.as_slice()[1]);
        if in_component[pair.0] && !tree.contains(&pair) {
            gen_of.insert(pair, edges.len());
            edges.push(pair);
        }
    }
    let generators = edges.iter().map(|&(a, b)| format!("[{},{}]", k.label(a), k.label(b))).collect();

    let relators = faces
        .faces(2)
        .iter()
        .filter(|t| in_component[t.as_slice()[0]])
        .map(|t| {
            let [a, b, c] = [t.as_slice()[0], t.as_slice()[1], t.as_slice()[2]];
            [((a, b), 1), ((b, c), 1), ((a, c), -1)]
                .into_iter()
                .filter_map(|(e, sign)| gen_of.get(&e).map(|&g| (g, sign)))
                .collect()
        })
        .collect();

    Ok(Presentation { edges, generators, relators })
}

/// Abelianization `Z^rank ⊕ ⊕ Z/t_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

pub fn abelianize(p: &Presentation) -> AbelianGroup {
    let gens = p.generators.len();
    // columns are relators, rows generators: same invariant factors as the transpose
    let columns = p
        .relators
        .iter()
        .map(|w| w.iter().map(|&(g, e)| (g, i64::from(e))).collect())
        .collect();
    let m = IntMatrix::from_columns(gens, columns);
    let snf = smith_normal_form(&m);
    AbelianGroup { free_rank: gens - snf.rank(), torsion: snf.torsion() }
}
