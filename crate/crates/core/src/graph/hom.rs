use serde::{Deserialize, Serialize};

use super::Graph;

/// Total vertex map from a source graph to a target graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HomMap(pub Vec<usize>);

impl HomMap {
    pub fn image(&self, v: usize) -> usize {
        self.0[v]
    }
}

/// True iff `f` is total on `g` and every edge of `g` lands on an edge of `h`.
pub fn validate_hom(f: &HomMap, g: &Graph, h: &Graph) -> bool {
    if f.0.len() != g.vertex_count() || f.0.iter().any(|&x| x >= h.vertex_count()) {
        return false;
    }
    g.edges().all(|(u, v)| h.has_edge(f.0[u], f.0[v]))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(HomMap),
    /// The search space was exhausted.
    NoneExists,
    BudgetExceeded { expansions: u64 },
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&HomMap> {
        match self {
            SearchOutcome::Found(f) => Some(f),
            _ => None,
        }
    }
}

#[derive(Clone)]
struct Domain(Vec<u64>);

impl Domain {
    fn full(n: usize) -> Self {
        let mut words = vec![u64::MAX; n.div_ceil(64)];
        if !n.is_multiple_of(64) {
            if let Some(last) = words.last_mut() {
                *last = (1u64 << (n % 64)) - 1;
            }
        }
        Domain(words)
    }

    fn from_members(n: usize, members: impl Iterator<Item = usize>) -> Self {
        let mut words = vec![0u64; n.div_ceil(64)];
        for m in members {
            words[m / 64] |= 1 << (m % 64);
        }
        Domain(words)
    }

    fn intersect(&mut self, other: &Domain) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= b;
        }
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn contains(&self, x: usize) -> bool {
        self.0[x / 64] >> (x % 64) & 1 == 1
    }

    fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| i * 64 + b)
        })
    }
}

/// Exhaustive backtracking search for a graph map `g -> h`.
///
/// Source vertices are assigned in descending degree order (ties by label),
/// target candidates in index order. After each assignment the domains of
/// unassigned neighbours are intersected with the target neighbourhood.
/// `budget` bounds the number of candidate assignments tried.
pub fn hom_search(g: &Graph, h: &Graph, budget: u64) -> SearchOutcome {
    let n = g.vertex_count();
    let m = h.vertex_count();
    if n == 0 {
        return SearchOutcome::Found(HomMap(Vec::new()));
    }
    if m == 0 {
        return SearchOutcome::NoneExists;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then_with(|| g.label(a).cmp(g.label(b))));

    let target_nbhd: Vec<Domain> =
        (0..m).map(|x| Domain::from_members(m, h.neighbors(x).iter().copied())).collect();
    let looped = Domain::from_members(m, (0..m).filter(|&x| h.has_edge(x, x)));

    let mut initial = vec![Domain::full(m); n];
    for v in 0..n {
        if g.has_edge(v, v) {
            initial[v].intersect(&looped);
        }
    }
    if initial.iter().any(Domain::is_empty) {
        return SearchOutcome::NoneExists;
    }

    let mut search = Search {
        g,
        order: &order,
        target_nbhd: &target_nbhd,
        assignment: vec![usize::MAX; n],
        expansions: 0,
        budget,
    };
    match search.extend(0, initial) {
        Step::Found => SearchOutcome::Found(HomMap(search.assignment)),
        Step::Exhausted => SearchOutcome::NoneExists,
        Step::OutOfBudget => SearchOutcome::BudgetExceeded { expansions: search.expansions },
    }
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Search<'a> {
    g: &'a Graph,
    order: &'a [usize],
    target_nbhd: &'a [Domain],
    assignment: Vec<usize>,
    expansions: u64,
    budget: u64,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize, domains: Vec<Domain>) -> Step {
        if depth == self.order.len() {
            return Step::Found;
        }
        let v = self.order[depth];
        let candidates: Vec<usize> = domains[v].members().collect();
        for x in candidates {
            if self.expansions >= self.budget {
                return Step::OutOfBudget;
            }
            self.expansions += 1;
            // neighbours already assigned are consistent by forward checking
            let mut next = domains.clone();
            let mut dead = false;
            for &w in self.g.neighbors(v) {
                if self.assignment[w] == usize::MAX && w != v {
                    next[w].intersect(&self.target_nbhd[x]);
                    if next[w].is_empty() {
                        dead = true;
                        break;
                    }
                }
            }
            if dead {
                continue;
            }
            debug_assert!(self
                .g
                .neighbors(v)
                .iter()
                .all(|&w| self.assignment[w] == usize::MAX || self.target_nbhd[x].contains(self.assignment[w])));
            self.assignment[v] = x;
            match self.extend(depth + 1, next) {
                Step::Exhausted => {}
                other => return other,
            }
            self.assignment[v] = usize::MAX;
        }
        Step::Exhausted
    }
}
