//! Smith normal form over the integers.
//!
//! Reduction runs in two phases. Unit pivots are eliminated first on a sparse
//! column store with checked `i64` arithmetic; whatever remains is copied into
//! a dense arbitrary-precision matrix and diagonalized with minimal-magnitude
//! pivots. Both phases apply only unimodular row and column operations, so
//! the invariant factors are those of the input.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sparse integer matrix in column-major form. Each column holds
/// `(row, value)` pairs sorted by row with no zero values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                if x != 0 {
                    m.columns[j].push((i, x));
                }
            }
        }
        m
    }

    /// Builds from sparse columns; entries are summed per row and zeros dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|mut c| {
                c.sort_by_key(|&(r, _)| r);
                let mut merged: Vec<(usize, i64)> = Vec::with_capacity(c.len());
                for (r, x) in c {
                    assert!(r < rows, "row {r} out of range");
                    match merged.last_mut() {
                        Some((lr, lx)) if *lr == r => *lx += x,
                        _ => merged.push((r, x)),
                    }
                }
                merged.retain(|&(_, x)| x != 0);
                merged
            })
            .collect();
        IntMatrix { rows, cols, columns }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.columns[j]
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.columns[j].iter().find(|&&(r, _)| r == i).map_or(0, |&(_, x)| x)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, x) in col {
                d[i][j] = x;
            }
        }
        d
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    /// `self * other` as a dense matrix.
    pub fn mul_dense(&self, other: &IntMatrix) -> Vec<Vec<i64>> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = vec![vec![0i64; other.cols]; self.rows];
        for (j, col) in other.columns.iter().enumerate() {
            for &(k, y) in col {
                for &(i, x) in &self.columns[k] {
                    out[i][j] += x * y;
                }
            }
        }
        out
    }
}

/// Nonzero invariant factors `d_1 | d_2 | ...` and the rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut state = SparseReducer::new(m);
    let units = state.eliminate_units();
    let residual = state.residual();
    let mut factors = vec![BigInt::one(); units];
    factors.extend(dense_smith_factors(residual));
    SmithForm { factors }
}

/// Invariant factors by dense reduction alone, without the sparse phase.
pub fn dense_smith_normal_form(m: &IntMatrix) -> SmithForm {
    let dense = m.to_dense().into_iter().map(|row| row.into_iter().map(BigInt::from).collect()).collect();
    SmithForm { factors: dense_smith_factors(dense) }
}

struct SparseReducer {
    columns: Vec<Vec<(usize, i64)>>,
    active: Vec<bool>,
    /// For each row, the active columns with a nonzero entry there.
    row_cols: Vec<BTreeSet<usize>>,
    row_alive: Vec<bool>,
}

impl SparseReducer {
    fn new(m: &IntMatrix) -> Self {
        let mut row_cols = vec![BTreeSet::new(); m.rows];
        for (j, col) in m.columns.iter().enumerate() {
            for &(i, _) in col {
                row_cols[i].insert(j);
            }
        }
        SparseReducer {
            columns: m.columns.clone(),
            active: vec![true; m.cols],
            row_cols,
            row_alive: vec![true; m.rows],
        }
    }

    /// Eliminates unit pivots until none remain or an operation would
    /// overflow. Returns the number of pivots removed.
    fn eliminate_units(&mut self) -> usize {
        let mut pivots = 0;
        loop {
            let mut progressed = false;
            for c in 0..self.columns.len() {
                if !self.active[c] {
                    continue;
                }
                let pivot = self.columns[c]
                    .iter()
                    .filter(|&&(_, x)| x == 1 || x == -1)
                    .min_by_key(|&&(r, _)| (self.row_cols[r].len(), r))
                    .copied();
                let Some((p, unit)) = pivot else { continue };
                if !self.pivot(c, p, unit) {
                    return pivots;
                }
                pivots += 1;
                progressed = true;
            }
            if !progressed {
                return pivots;
            }
        }
    }

    /// Clears row `p` outside column `c`, then drops both. Returns false if
    /// an update would overflow; updates already applied remain valid.
    fn pivot(&mut self, c: usize, p: usize, unit: i64) -> bool {
        let others: Vec<usize> = self.row_cols[p].iter().copied().filter(|&j| j != c).collect();
        let pivot_col = self.columns[c].clone();
        for j in others {
            let a = self.columns[j].iter().find(|&&(r, _)| r == p).map(|&(_, x)| x).expect("indexed");
            let factor = a * unit;
            let Some(updated) = axpy(&self.columns[j], &pivot_col, factor) else {
                return false;
            };
            for &(r, _) in &self.columns[j] {
                self.row_cols[r].remove(&j);
            }
            for &(r, _) in &updated {
                self.row_cols[r].insert(j);
            }
            self.columns[j] = updated;
        }
        for &(r, _) in &pivot_col {
            self.row_cols[r].remove(&c);
        }
        self.active[c] = false;
        self.row_alive[p] = false;
        self.columns[c].clear();
        true
    }

    fn residual(self) -> Vec<Vec<BigInt>> {
        let live_rows: Vec<usize> = (0..self.row_alive.len())
            .filter(|&r| self.row_alive[r] && !self.row_cols[r].is_empty())
            .collect();
        let live_cols: Vec<usize> =
            (0..self.columns.len()).filter(|&c| self.active[c] && !self.columns[c].is_empty()).collect();
        let mut row_pos = vec![usize::MAX; self.row_alive.len()];
        for (i, &r) in live_rows.iter().enumerate() {
            row_pos[r] = i;
        }
        let mut dense = vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
        for (j, &c) in live_cols.iter().enumerate() {
            for &(r, x) in &self.columns[c] {
                dense[row_pos[r]][j] = BigInt::from(x);
            }
        }
        dense
    }
}

/// `target - factor * source` on sorted sparse columns, `None` on overflow.
fn axpy(target: &[(usize, i64)], source: &[(usize, i64)], factor: i64) -> Option<Vec<(usize, i64)>> {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        let ti = target.get(i).map_or(usize::MAX, |e| e.0);
        let sj = source.get(j).map_or(usize::MAX, |e| e.0);
        if ti < sj {
            out.push(target[i]);
            i += 1;
        } else {
            let sub = source[j].1.checked_mul(factor)?;
            let value = if ti == sj {
                let v = target[i].1.checked_sub(sub)?;
                i += 1;
                v
            } else {
                sub.checked_neg()?
            };
            if value != 0 {
                out.push((sj, value));
            }
            j += 1;
        }
    }
    Some(out)
}

fn min_nonzero(a: &[Vec<BigInt>], t: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().take(cols).skip(t) {
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
                if x.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

fn swap_cols(a: &mut [Vec<BigInt>], x: usize, y: usize) {
    if x != y {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
    }
}

/// Dense Smith reduction; returns the nonzero invariant factors in order.
fn dense_smith_factors(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_nonzero(&a, t, cols) else { break };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (head, tail) = a.split_at_mut(i);
                for (x, p) in tail[0].iter_mut().zip(&head[t]).skip(t) {
                    *x -= &q * p;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let p = row[t].clone();
                    row[j] -= &q * p;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                // a remainder smaller than the pivot survives in row or column t
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                a.swap(t, best.0);
                swap_cols(&mut a, t, best.1);
                continue;
            }
            let pivot = a[t][t].clone();
            let offender = (t + 1..rows).find(|&i| a[i].iter().skip(t + 1).any(|x| !x.is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    for (x, y) in head[t].iter_mut().zip(&tail[0]).skip(t) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        factors.push(a[t][t].abs());
        t += 1;
    }
    factors
}
