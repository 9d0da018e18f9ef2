//! Small dense linear algebra over `Q`.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type QMatrix = Vec<Vec<BigRational>>;
pub type QVector = Vec<BigRational>;

pub fn zeros(rows: usize, cols: usize) -> QMatrix {
    vec![vec![BigRational::zero(); cols]; rows]
}

pub fn identity(n: usize) -> QMatrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigRational::one();
    }
    m
}

pub fn mul(a: &QMatrix, b: &QMatrix, inner: usize) -> QMatrix {
    let cols = b.first().map_or(0, Vec::len);
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for k in 0..inner {
            if row[k].is_zero() {
                continue;
            }
            for j in 0..cols {
                if !b[k][j].is_zero() {
                    out[i][j] += &row[k] * &b[k][j];
                }
            }
        }
    }
    out
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut QMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (v, pv) in m[i].iter_mut().zip(&pivot_row) {
                    if !pv.is_zero() {
                        *v -= &factor * pv;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &QMatrix) -> usize {
    let mut m = m.clone();
    rref(&mut m).len()
}

/// Basis of the null space `{x : m x = 0}` for an `rows x cols` matrix.
pub fn kernel(m: &QMatrix, cols: usize) -> Vec<QVector> {
    let mut r = m.clone();
    let pivots = rref(&mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

/// Coordinates of `target` in terms of the vectors `basis` (assumed
/// independent), or `None` if `target` is not in their span.
pub fn solve_in_span(basis: &[QVector], target: &QVector) -> Option<QVector> {
    let n = target.len();
    let k = basis.len();
    // augmented n x (k+1)
    let mut m: QMatrix = (0..n)
        .map(|i| {
            let mut row: QVector = basis.iter().map(|b| b[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![BigRational::zero(); k];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = m[row][k].clone();
    }
    Some(x)
}

/// Extends the independent family `base` by vectors from `candidates` to a
/// basis of their joint span; returns the indices of the candidates used.
pub fn extend_basis(base: &[QVector], candidates: &[QVector]) -> Vec<usize> {
    let mut current: Vec<QVector> = base.to_vec();
    let mut chosen = Vec::new();
    let mut r = rank_of_vectors(&current);
    for (i, c) in candidates.iter().enumerate() {
        current.push(c.clone());
        let nr = rank_of_vectors(&current);
        if nr > r {
            chosen.push(i);
            r = nr;
        } else {
            current.pop();
        }
    }
    chosen
}

pub fn rank_of_vectors(vs: &[QVector]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    rank(&vs.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: BigRational = (0..3).map(|i| &m[0][i] * &v[i]).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn span_membership() {
        let basis = vec![vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]];
        assert_eq!(solve_in_span(&basis, &vec![q(2), q(3), q(5)]), Some(vec![q(2), q(3)]));
        assert_eq!(solve_in_span(&basis, &vec![q(0), q(0), q(1)]), None);
        assert_eq!(extend_basis(&basis, &[vec![q(1), q(1), q(2)], vec![q(0), q(0), q(1)]]), vec![1]);
    }
}
