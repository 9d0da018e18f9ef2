use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{Field, PrimeField, Rationals};
use super::Ring;

/// A sparse matrix with exact rational entries, stored by columns with rows
/// ascending, so iteration order is deterministic.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, BigRational)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, cols: (0..n).map(|i| vec![(i, BigRational::one())]).collect() }
    }

    /// Sums duplicate entries and drops zeros.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, BigRational)>,
    {
        let mut buckets: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            buckets[c].push((r, v));
        }
        let cols = buckets.into_iter().map(normalize_column).collect();
        Self { rows, cols }
    }

    pub fn from_columns(rows: usize, cols: Vec<Vec<(usize, BigRational)>>) -> Self {
        Self::from_triplets(
            rows,
            cols.len(),
            cols.into_iter().enumerate().flat_map(|(c, col)| col.into_iter().map(move |(r, v)| (r, c, v))),
        )
    }

    /// The matrix of a function between finite sets: column `j` has a 1 in row `f[j]`.
    pub fn from_function(rows: usize, f: &[u32]) -> Self {
        Self { rows, cols: f.iter().map(|&r| vec![(r as usize, BigRational::one())]).collect() }
    }

    pub fn from_dense_integers(m: &[Vec<BigInt>], cols: usize) -> Self {
        let rows = m.len();
        Self::from_triplets(
            rows,
            cols,
            m.iter().enumerate().flat_map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(move |(c, v)| (r, c, BigRational::from_integer(v.clone())))
            }),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &[(usize, BigRational)] {
        &self.cols[c]
    }

    pub fn columns(&self) -> &[Vec<(usize, BigRational)>] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> BigRational {
        match self.cols[c].binary_search_by_key(&r, |e| e.0) {
            Ok(k) => self.cols[c][k].1.clone(),
            Err(_) => BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// Triplets `(row, col, value)` in column-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        self.cols.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); self.rows];
        for (r, c, v) in self.triplets() {
            cols[r].push((c, v.clone()));
        }
        Self { rows: self.cols.len(), cols }
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows, "dimension mismatch in product");
        let cols = other
            .cols
            .iter()
            .map(|col| {
                let mut acc: HashMap<usize, BigRational> = HashMap::new();
                for (k, b) in col {
                    for (r, a) in &self.cols[*k] {
                        *acc.entry(*r).or_insert_with(BigRational::zero) += a * b;
                    }
                }
                normalize_column(acc.into_iter().collect())
            })
            .collect();
        SparseMatrix { rows: self.rows, cols }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols()), (other.rows, other.cols()), "dimension mismatch in sum");
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| normalize_column(a.iter().chain(b).cloned().collect()))
            .collect();
        SparseMatrix { rows: self.rows, cols }
    }

    pub fn scale(&self, s: &BigRational) -> SparseMatrix {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols());
        }
        let cols = self.cols.iter().map(|c| c.iter().map(|(r, v)| (*r, v * s)).collect()).collect();
        SparseMatrix { rows: self.rows, cols }
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// Applies the matrix to a dense vector.
    pub fn apply(&self, x: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(x.len(), self.cols());
        let mut y = vec![BigRational::zero(); self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            if x[c].is_zero() {
                continue;
            }
            for (r, v) in col {
                y[r.to_owned()] += v * &x[c];
            }
        }
        y
    }

    pub fn is_integral(&self) -> bool {
        self.triplets().all(|(_, _, v)| v.is_integer())
    }

    /// Dense integer rows, or `None` if some entry is not an integer.
    pub fn to_dense_integers(&self) -> Option<Vec<Vec<BigInt>>> {
        let mut m = vec![vec![BigInt::zero(); self.cols()]; self.rows];
        for (r, c, v) in self.triplets() {
            if !v.is_integer() {
                return None;
            }
            m[r][c] = v.to_integer();
        }
        Some(m)
    }

    pub fn to_dense(&self) -> Vec<Vec<BigRational>> {
        let mut m = vec![vec![BigRational::zero(); self.cols()]; self.rows];
        for (r, c, v) in self.triplets() {
            m[r][c] = v.clone();
        }
        m
    }

    /// Keeps the listed rows and columns, renumbered in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut row_pos = vec![usize::MAX; self.rows];
        for (k, &r) in rows.iter().enumerate() {
            row_pos[r] = k;
        }
        let new_cols = cols
            .iter()
            .map(|&c| {
                let mut col: Vec<(usize, BigRational)> = self.cols[c]
                    .iter()
                    .filter(|(r, _)| row_pos[*r] != usize::MAX)
                    .map(|(r, v)| (row_pos[*r], v.clone()))
                    .collect();
                col.sort_by_key(|e| e.0);
                col
            })
            .collect();
        SparseMatrix { rows: rows.len(), cols: new_cols }
    }

    /// Rank over the given coefficient ring. Over `Z` this is the rank over `Q`.
    pub fn rank(&self, ring: Ring) -> usize {
        match ring {
            Ring::Z | Ring::Q => rank_over(&Rationals, self),
            Ring::Fp(p) => rank_over(&PrimeField::new(p).expect("validated prime"), self),
        }
    }
}

fn normalize_column(mut col: Vec<(usize, BigRational)>) -> Vec<(usize, BigRational)> {
    col.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, BigRational)> = Vec::with_capacity(col.len());
    for (r, v) in col {
        match out.last_mut() {
            Some((lr, lv)) if *lr == r => *lv += v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// Rank by column reduction keyed on the lowest nonzero row.
pub fn rank_over<F: Field>(field: &F, m: &SparseMatrix) -> usize {
    let mut pivots: HashMap<usize, Vec<(usize, F::Elem)>> = HashMap::new();
    let mut order: Vec<usize> = (0..m.cols()).collect();
    order.sort_by_key(|&c| m.cols[c].len());
    for c in order {
        let mut col: Vec<(usize, F::Elem)> = m.cols[c]
            .iter()
            .filter_map(|(r, v)| {
                let e = field.from_rational(v).expect("entry has an image in the field");
                (!field.is_zero(&e)).then_some((*r, e))
            })
            .collect();
        while let Some((low, lead)) = col.last().cloned() {
            match pivots.get(&low) {
                Some(p) => {
                    let factor = field.neg(&lead);
                    col = axpy(field, &col, &factor, p);
                }
                None => {
                    let inv = field.inv(&lead);
                    let normalized = col.iter().map(|(r, v)| (*r, field.mul(v, &inv))).collect();
                    pivots.insert(low, normalized);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `x + a * y` for sorted sparse vectors.
fn axpy<F: Field>(field: &F, x: &[(usize, F::Elem)], a: &F::Elem, y: &[(usize, F::Elem)]) -> Vec<(usize, F::Elem)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            out.push((y[j].0, field.mul(a, &y[j].1)));
            j += 1;
        } else {
            let v = field.add(&x[i].1, &field.mul(a, &y[j].1));
            if !field.is_zero(&v) {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix {}x{} [", self.rows, self.cols())?;
        for (r, c, v) in self.triplets() {
            write!(f, " ({r},{c})={v}")?;
        }
        write!(f, " ]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::from_triplets(2, 2, vec![(0, 0, q(1)), (0, 1, q(2)), (1, 1, q(3))]);
        let b = a.mul(&a);
        assert_eq!(b.get(0, 1), q(8));
        assert_eq!(a.transpose().get(1, 0), q(2));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn ranks() {
        let m = SparseMatrix::from_triplets(2, 2, vec![(0, 0, q(2)), (1, 1, q(2))]);
        assert_eq!(m.rank(Ring::Q), 2);
        assert_eq!(m.rank(Ring::Fp(2)), 0);
        assert_eq!(m.rank(Ring::Fp(3)), 2);
        let dep = SparseMatrix::from_triplets(2, 3, vec![(0, 0, q(1)), (1, 1, q(1)), (0, 2, q(1)), (1, 2, q(1))]);
        assert_eq!(dep.rank(Ring::Q), 2);
    }
}
