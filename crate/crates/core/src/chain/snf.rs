use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::field::is_unit;
use super::matrix::SparseMatrix;
use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal, each diagonal
/// entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfCertificate {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfCertificate {
    /// Nonzero diagonal entries of `D`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.len().min(self.d.first().map_or(0, Vec::len)))
            .map(|i| self.d[i][i].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    /// Recomputes `U M V`, checks it equals `D`, that `D` is a divisibility
    /// chain, and that `|det U| = |det V| = 1`.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let rows = m.len();
        let cols = self.v.len();
        let um = int_mul(&self.u, m, rows);
        let umv = int_mul(&um, &self.v, cols);
        if umv != self.d {
            return false;
        }
        for (i, row) in self.d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i != j && !x.is_zero() {
                    return false;
                }
            }
        }
        let diag: Vec<BigInt> = (0..rows.min(cols)).map(|i| self.d[i][i].clone()).collect();
        for w in diag.windows(2) {
            if w[0].is_zero() {
                if !w[1].is_zero() {
                    return false;
                }
            } else if !w[1].is_multiple_of(&w[0]) || w[0].is_negative() {
                return false;
            }
        }
        is_unit(&determinant(&self.u)) && is_unit(&determinant(&self.v))
    }
}

pub fn int_identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn int_mul(a: &IntMatrix, b: &IntMatrix, inner: usize) -> IntMatrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![BigInt::zero(); cols];
            for k in 0..inner {
                if row[k].is_zero() {
                    continue;
                }
                for (j, o) in out.iter_mut().enumerate() {
                    if !b[k][j].is_zero() {
                        *o += &row[k] * &b[k][j];
                    }
                }
            }
            out
        })
        .collect()
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

struct Work {
    a: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// row_i += q * row_j
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        add_row(&mut self.a, i, j, q);
        if let Some(u) = &mut self.u {
            add_row(u, i, j, q);
        }
    }

    /// col_i += q * col_j
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        add_col(&mut self.a, i, j, q);
        if let Some(v) = &mut self.v {
            add_col(v, i, j, q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -x.clone();
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -x.clone();
            }
        }
    }
}

fn add_row(m: &mut IntMatrix, i: usize, j: usize, q: &BigInt) {
    let src = m[j].clone();
    for (x, s) in m[i].iter_mut().zip(&src) {
        if !s.is_zero() {
            *x += q * s;
        }
    }
}

fn add_col(m: &mut IntMatrix, i: usize, j: usize, q: &BigInt) {
    for row in m.iter_mut() {
        if !row[j].is_zero() {
            let add = q * &row[j];
            row[i] += add;
        }
    }
}

/// Smallest-magnitude pivoting with row and column moves; the pivot is made
/// to divide the whole remaining block before moving on.
fn reduce(w: &mut Work, rows: usize, cols: usize) {
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest_in_block(&w.a, t, rows, cols) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !w.a[i][t].is_zero() {
                    let q = w.a[i][t].div_floor(&w.a[t][t]);
                    w.add_row(i, t, &-q);
                    clean &= w.a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !w.a[t][j].is_zero() {
                    let q = w.a[t][j].div_floor(&w.a[t][t]);
                    w.add_col(j, t, &-q);
                    clean &= w.a[t][j].is_zero();
                }
            }
            if !clean {
                let mut best: Option<(usize, usize)> = None;
                let mut best_abs: Option<BigInt> = None;
                for (i, j) in (t + 1..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j))) {
                    let x = &w.a[i][j];
                    if !x.is_zero() && best_abs.as_ref().is_none_or(|b| x.abs() < *b) {
                        best_abs = Some(x.abs());
                        best = Some((i, j));
                    }
                }
                let (i, j) = best.expect("a nonzero remainder exists");
                w.swap_rows(t, i);
                w.swap_cols(t, j);
                continue;
            }
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !w.a[i][j].is_multiple_of(&w.a[t][t]));
            match offender {
                Some((i, _)) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
}

fn smallest_in_block(a: &IntMatrix, t: usize, rows: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_abs: Option<BigInt> = None;
    for (i, row) in a.iter().enumerate().take(rows).skip(t) {
        for (j, x) in row.iter().enumerate().take(cols).skip(t) {
            if !x.is_zero() && best_abs.as_ref().is_none_or(|b| x.abs() < *b) {
                best_abs = Some(x.abs());
                best = Some((i, j));
                if x.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

/// Smith normal form with unimodular certificates.
pub fn smith_normal_form(m: &IntMatrix, cols: usize) -> SnfCertificate {
    let rows = m.len();
    let mut w = Work { a: m.clone(), u: Some(int_identity(rows)), v: Some(int_identity(cols)) };
    reduce(&mut w, rows, cols);
    SnfCertificate { u: w.u.unwrap(), d: w.a, v: w.v.unwrap() }
}

/// Nonzero invariant factors of a dense integer matrix, without certificates.
pub fn dense_invariant_factors(m: &IntMatrix, cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let mut w = Work { a: m.clone(), u: None, v: None };
    reduce(&mut w, rows, cols);
    (0..rows.min(cols)).map(|i| w.a[i][i].clone()).filter(|x| !x.is_zero()).collect()
}

/// Nonzero invariant factors of an integer sparse matrix.
///
/// Unit pivots are eliminated sparsely first (each contributes a factor 1);
/// the remaining block goes through the dense reduction.
pub fn invariant_factors(m: &SparseMatrix) -> Result<Vec<BigInt>> {
    if !m.is_integral() {
        return Err(Error::InvalidInput("integer Smith normal form of a non-integral matrix".into()));
    }
    let mut cols: Vec<BTreeMap<usize, BigInt>> = m
        .columns()
        .iter()
        .map(|c| c.iter().map(|(r, v)| (*r, v.to_integer())).collect())
        .collect();
    let mut row_index: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.rows()];
    for (c, col) in cols.iter().enumerate() {
        for r in col.keys() {
            row_index[*r].insert(c);
        }
    }
    let mut alive_cols: BTreeSet<usize> = (0..cols.len()).filter(|&c| !cols[c].is_empty()).collect();
    let mut units = 0usize;
    loop {
        let mut order: Vec<usize> = alive_cols.iter().copied().collect();
        order.sort_by_key(|&c| (cols[c].len(), c));
        let mut progress = false;
        for j in order {
            if !alive_cols.contains(&j) {
                continue;
            }
            let pivot = cols[j]
                .iter()
                .filter(|(_, v)| is_unit(v))
                .min_by_key(|(r, _)| (row_index[**r].len(), **r))
                .map(|(r, v)| (*r, v.clone()));
            let Some((i, pv)) = pivot else { continue };
            // Clear row i using column j: col_k -= (a_ik / a_ij) col_j.
            let pivot_col: Vec<(usize, BigInt)> = cols[j].iter().map(|(r, v)| (*r, v.clone())).collect();
            let others: Vec<usize> = row_index[i].iter().copied().filter(|&k| k != j).collect();
            for k in others {
                let factor = &cols[k][&i] * &pv; // pv = ±1, so a_ik / pv = a_ik * pv
                for (r, v) in &pivot_col {
                    let entry = cols[k].entry(*r).or_insert_with(BigInt::zero);
                    *entry -= &factor * v;
                    if entry.is_zero() {
                        cols[k].remove(r);
                        row_index[*r].remove(&k);
                    } else {
                        row_index[*r].insert(k);
                    }
                }
                if cols[k].is_empty() {
                    alive_cols.remove(&k);
                }
            }
            // Row i now meets only column j, so the row operations clearing
            // column j touch nothing else: drop both.
            for (r, _) in &pivot_col {
                row_index[*r].remove(&j);
            }
            cols[j].clear();
            alive_cols.remove(&j);
            row_index[i].clear();
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let live_cols: Vec<usize> = alive_cols.into_iter().collect();
    let live_rows: Vec<usize> = (0..m.rows()).filter(|&r| !row_index[r].is_empty()).collect();
    let mut factors = vec![BigInt::one(); units];
    if !live_cols.is_empty() {
        let row_pos: BTreeMap<usize, usize> = live_rows.iter().enumerate().map(|(k, &r)| (r, k)).collect();
        let mut dense = vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
        for (cj, &c) in live_cols.iter().enumerate() {
            for (r, v) in &cols[c] {
                dense[row_pos[r]][cj] = v.clone();
            }
        }
        factors.extend(dense_invariant_factors(&dense, live_cols.len()));
    }
    factors.sort_by_key(|a| a.abs());
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn two_by_two_example() {
        let m = int(&[&[2, 4], &[6, 8]]);
        let c = smith_normal_form(&m, 2);
        assert!(c.verify(&m));
        assert_eq!(c.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn identity_is_fixed() {
        let m = int_identity(3);
        let c = smith_normal_form(&m, 3);
        assert_eq!(c.d, m);
        assert!(c.verify(&m));
    }

    #[test]
    fn divisibility_is_enforced() {
        let m = int(&[&[2, 0], &[0, 3]]);
        let c = smith_normal_form(&m, 2);
        assert!(c.verify(&m));
        assert_eq!(c.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn determinant_values() {
        assert_eq!(determinant(&int(&[&[2, 1], &[1, 1]])), BigInt::from(1));
        assert_eq!(determinant(&int(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]])), BigInt::from(-5));
    }

    #[test]
    fn sparse_factors_agree_with_dense() {
        let m = int(&[&[1, 2, 0], &[3, 4, 0], &[0, 0, 6], &[1, 1, 1]]);
        let s = SparseMatrix::from_dense_integers(&m, 3);
        let mut dense = dense_invariant_factors(&m, 3);
        dense.sort_by_key(|a| a.abs());
        assert_eq!(invariant_factors(&s).unwrap(), dense);
    }
}
