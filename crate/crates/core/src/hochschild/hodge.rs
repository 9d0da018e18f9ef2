use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::complex::HochschildComplex;
use crate::chain::dense::{self, QMatrix, QVector};
use crate::chain::{Ring, SparseMatrix};
use crate::error::{Error, Result};

pub const MAX_HODGE_DEGREE: usize = 7;

/// Permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { return out };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

pub fn descents(p: &[usize]) -> usize {
    p.windows(2).filter(|w| w[0] > w[1]).count()
}

/// Coefficients of `σ` in the Eulerian idempotents `e_n^{(1)}, ..., e_n^{(n)}`:
/// the `x^i` coefficients of `(x - d)(x - d + 1)⋯(x - d + n - 1) / n!`,
/// `d` the number of descents. Index 0 is unused for `n > 0`.
pub fn eulerian_coefficients(n: usize, d: usize) -> Vec<BigRational> {
    // polynomial coefficients, lowest degree first
    let mut poly = vec![BigRational::one()];
    for j in 0..n {
        let root = BigRational::from_integer(BigInt::from(j as i64 - d as i64));
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] += c;
            next[k] += c * &root;
        }
        poly = next;
    }
    let factorial: BigInt = (1..=n as u64).map(BigInt::from).product();
    let f = BigRational::from_integer(factorial);
    poly.into_iter().map(|c| c / &f).collect()
}

/// Eulerian idempotents acting on `C_0..C_{s_max}` of a Hochschild complex
/// of a graded-commutative algebra over `Q`.
#[derive(Clone, Debug)]
pub struct HodgeData {
    /// `idempotents[s][i] = e_s^{(i)}`, `0 <= i <= s`.
    pub idempotents: Vec<Vec<SparseMatrix>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeContract {
    pub idempotent: bool,
    pub orthogonal: bool,
    pub complete: bool,
    pub b_compatible: bool,
}

impl HodgeContract {
    pub fn holds(&self) -> bool {
        self.idempotent && self.orthogonal && self.complete && self.b_compatible
    }
}

/// `σ · (a_0 ⊗ a_1 ⊗ ... ⊗ a_s)` moves `a_{i+1}` to slot `σ(i)+1`, with the
/// Koszul sign for the suspended degrees `|a_i| + 1`.
fn permute(cx: &HochschildComplex, w: &[u32], p: &[usize]) -> (bool, Vec<u32>) {
    let s = p.len();
    let shifted: Vec<i64> = w[1..].iter().map(|&a| cx.algebra().degree(a as usize) + 1).collect();
    let mut odd = false;
    for i in 0..s {
        for j in i + 1..s {
            if p[i] > p[j] && (shifted[i] * shifted[j]) % 2 != 0 {
                odd = !odd;
            }
        }
    }
    let mut v = w.to_vec();
    for i in 0..s {
        v[p[i] + 1] = w[i + 1];
    }
    (odd, v)
}

pub fn hodge_data(cx: &HochschildComplex) -> Result<HodgeData> {
    if cx.ring() != Ring::Q {
        return Err(Error::Unsupported("the Hodge decomposition is computed over Q".into()));
    }
    if !cx.algebra().is_commutative() {
        return Err(Error::NotCommutative { a: 0, b: 0 });
    }
    if cx.s_max() > MAX_HODGE_DEGREE {
        return Err(Error::ResourceLimit {
            what: "Hodge decomposition degree".into(),
            needed: cx.s_max() as u128,
            cap: MAX_HODGE_DEGREE as u128,
        });
    }
    let mut idempotents = Vec::new();
    for s in 0..=cx.s_max() {
        let words = cx.words(s);
        let index: HashMap<&[u32], usize> = words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
        let perms = permutations(s);
        let coeffs: Vec<Vec<BigRational>> = perms.iter().map(|p| eulerian_coefficients(s, descents(p))).collect();
        let mut pieces = Vec::with_capacity(s + 1);
        for i in 0..=s {
            let mut triplets = Vec::new();
            for (col, w) in words.iter().enumerate() {
                let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
                for (p, c) in perms.iter().zip(&coeffs) {
                    if c[i].is_zero() {
                        continue;
                    }
                    let (odd, v) = permute(cx, w, p);
                    let row = index[v.as_slice()];
                    let term = if odd { -c[i].clone() } else { c[i].clone() };
                    *acc.entry(row).or_insert_with(BigRational::zero) += term;
                }
                triplets.extend(acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(r, c)| (r, col, c)));
            }
            pieces.push(SparseMatrix::from_triplets(words.len(), words.len(), triplets));
        }
        idempotents.push(pieces);
    }
    Ok(HodgeData { idempotents })
}

impl HodgeData {
    pub fn s_max(&self) -> usize {
        self.idempotents.len() - 1
    }

    pub fn piece(&self, s: usize, i: usize) -> &SparseMatrix {
        &self.idempotents[s][i]
    }

    /// `ψ^k = Σ_i k^i e^{(i)}` on `C_s`.
    pub fn adams(&self, s: usize, k: i64) -> SparseMatrix {
        let n = self.idempotents[s][0].cols();
        self.idempotents[s].iter().enumerate().fold(SparseMatrix::zeros(n, n), |acc, (i, e)| {
            acc.add(&e.scale(&BigRational::from_integer(BigInt::from(k).pow(i as u32))))
        })
    }

    pub fn check_contract(&self, cx: &HochschildComplex) -> HodgeContract {
        let mut contract = HodgeContract { idempotent: true, orthogonal: true, complete: true, b_compatible: true };
        for (s, pieces) in self.idempotents.iter().enumerate() {
            let n = cx.dim(s);
            let mut sum = SparseMatrix::zeros(n, n);
            for (i, e) in pieces.iter().enumerate() {
                sum = sum.add(e);
                contract.idempotent &= e.mul(e) == *e;
                for (j, f) in pieces.iter().enumerate() {
                    if i != j {
                        contract.orthogonal &= e.mul(f).is_zero();
                    }
                }
                if s > 0 {
                    let below = if i < s { self.idempotents[s - 1][i].clone() } else { SparseMatrix::zeros(cx.dim(s - 1), cx.dim(s - 1)) };
                    contract.b_compatible &= cx.b(s).mul(e) == below.mul(cx.b(s));
                }
            }
            contract.complete &= sum == SparseMatrix::identity(n);
        }
        contract
    }
}

/// Hodge pieces of one bigraded homology group `H_{s,t}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeClass {
    pub simplicial: usize,
    pub internal: i64,
    pub total: i64,
    /// `(piece i, rank of H^{(i)}_{s,t})`, nonzero pieces only.
    pub pieces: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdamsCheck {
    pub k: i64,
    pub simplicial: usize,
    pub internal: i64,
    /// `ψ^k` acts on `H_{s,t}` as `Σ_i k^i` times the Hodge projections.
    pub eigenvalue_law: bool,
    /// Eigenvalues `k^i` with multiplicities.
    pub eigenvalues: Vec<(String, usize)>,
}

fn restrict(m: &SparseMatrix, rows: &[usize], cols: &[usize]) -> SparseMatrix {
    m.submatrix(rows, cols)
}

/// Splits `H_{s,t}` by Hodge piece: `rank H^{(i)} = rank e - rank(b e) - rank(b' e')`.
pub fn hodge_classes(cx: &HochschildComplex, data: &HodgeData) -> Result<Vec<HodgeClass>> {
    let mut out = Vec::new();
    for s in 0..cx.s_max().min(data.s_max()) {
        for t in cx.internal_range(s) {
            let here = cx.block(s, t);
            let above = cx.block(s + 1, t);
            let below = if s > 0 { cx.block(s - 1, t) } else { Vec::new() };
            let mut pieces = Vec::new();
            for i in 0..=s {
                let e = restrict(data.piece(s, i), &here, &here);
                let e_up = if i <= s + 1 { restrict(data.piece(s + 1, i), &above, &above) } else { SparseMatrix::zeros(0, 0) };
                let b_here = restrict(cx.b(s), &below, &here);
                let b_up = restrict(cx.b(s + 1), &here, &above);
                let rank = e.rank(Ring::Q) - b_here.mul(&e).rank(Ring::Q) - b_up.mul(&e_up).rank(Ring::Q);
                if rank > 0 {
                    pieces.push((i, rank));
                }
            }
            if !pieces.is_empty() {
                out.push(HodgeClass { simplicial: s, internal: t, total: t - s as i64, pieces });
            }
        }
    }
    Ok(out)
}

/// Basis of `H_{s,t}`: kernel vectors of `b` completing a basis of the image
/// of the incoming `b`. Returns `(representatives, image basis)`.
pub fn homology_representatives(cx: &HochschildComplex, s: usize, t: i64) -> (Vec<QVector>, Vec<QVector>) {
    let here = cx.block(s, t);
    let below = if s > 0 { cx.block(s - 1, t) } else { Vec::new() };
    let above = cx.block(s + 1, t);
    let out = restrict(cx.b(s), &below, &here).to_dense();
    let kernel = dense::kernel(&out, here.len());
    let incoming = restrict(cx.b(s + 1), &here, &above);
    let image_cols: Vec<QVector> = (0..incoming.cols())
        .map(|c| {
            let mut v = vec![BigRational::zero(); here.len()];
            for (r, x) in incoming.column(c) {
                v[*r] = x.clone();
            }
            v
        })
        .collect();
    let picked = dense::extend_basis(&[], &image_cols);
    let image: Vec<QVector> = picked.into_iter().map(|i| image_cols[i].clone()).collect();
    let reps = dense::extend_basis(&image, &kernel).into_iter().map(|i| kernel[i].clone()).collect();
    (reps, image)
}

/// Matrix of a chain endomorphism (given on `C_s`) on `H_{s,t}` in the basis
/// of [`homology_representatives`].
pub fn induced_on_homology(cx: &HochschildComplex, s: usize, t: i64, map: &SparseMatrix) -> Result<QMatrix> {
    let here = cx.block(s, t);
    let block = restrict(map, &here, &here);
    let (reps, image) = homology_representatives(cx, s, t);
    let mut basis = reps.clone();
    basis.extend(image);
    let h = reps.len();
    let mut m = dense::zeros(h, h);
    for (j, r) in reps.iter().enumerate() {
        let y = block.apply(r);
        let coords = dense::solve_in_span(&basis, &y)
            .ok_or_else(|| Error::InvalidInput(format!("map does not preserve cycles in bidegree ({s}, {t})")))?;
        for i in 0..h {
            m[i][j] = coords[i].clone();
        }
    }
    Ok(m)
}

/// Checks `ψ^k = Σ_i k^i P_i` on every `H_{s,t}`, `P_i` the induced Hodge projections.
pub fn adams_checks(cx: &HochschildComplex, data: &HodgeData, k: i64) -> Result<Vec<AdamsCheck>> {
    let mut out = Vec::new();
    for s in 0..cx.s_max().min(data.s_max()) {
        for t in cx.internal_range(s) {
            let psi = induced_on_homology(cx, s, t, &data.adams(s, k))?;
            if psi.is_empty() {
                continue;
            }
            let h = psi.len();
            let mut expected = dense::zeros(h, h);
            let mut eigenvalues = Vec::new();
            for i in 0..=s {
                let p = induced_on_homology(cx, s, t, data.piece(s, i))?;
                let mult = dense::rank(&p);
                if mult > 0 {
                    eigenvalues.push((BigInt::from(k).pow(i as u32).to_string(), mult));
                }
                let scale = BigRational::from_integer(BigInt::from(k).pow(i as u32));
                for (row, prow) in expected.iter_mut().zip(&p) {
                    for (e, x) in row.iter_mut().zip(prow) {
                        *e += x * &scale;
                    }
                }
            }
            out.push(AdamsCheck { k, simplicial: s, internal: t, eigenvalue_law: expected == psi, eigenvalues });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_list() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
        assert_eq!(descents(&[2, 0, 1]), 1);
    }

    #[test]
    fn eulerian_coefficients_sum_to_powers() {
        // Σ_σ Σ_i c_i(σ) x^i = x^n
        for n in 1..=5 {
            let mut total = vec![BigRational::zero(); n + 1];
            for p in permutations(n) {
                for (i, c) in eulerian_coefficients(n, descents(&p)).into_iter().enumerate() {
                    total[i] += c;
                }
            }
            for (i, c) in total.iter().enumerate() {
                assert_eq!(c.is_one(), i == n);
                assert!(i == n || c.is_zero());
            }
        }
    }
}
