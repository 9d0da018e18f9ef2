use num_rational::BigRational;
use num_traits::One;

use super::subdivision::RCyclicTruncatedObject;
use super::truncated::TruncatedCyclicSet;
use crate::chain::{ChainComplex, Ring, SparseMatrix};
use crate::error::{Error, Result};

/// A cyclic module on levels `0..=N`: the operators of a cyclic set turned
/// into matrices (columns indexed by the source basis).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedCyclicModule {
    pub ring: Ring,
    pub ranks: Vec<usize>,
    /// `faces[n][i] : M_n -> M_{n-1}`.
    pub faces: Vec<Vec<SparseMatrix>>,
    /// `degeneracies[n][i] : M_{n-1} -> M_n`, the last one extra.
    pub degeneracies: Vec<Vec<SparseMatrix>>,
    pub cycle: Vec<SparseMatrix>,
    /// `C_r` generator, for linearized r-cyclic objects.
    pub rotation: Option<Vec<SparseMatrix>>,
}

pub fn linearize(x: &TruncatedCyclicSet, ring: Ring, truncation: usize) -> Result<TruncatedCyclicModule> {
    ring.validate()?;
    let mut module = TruncatedCyclicModule {
        ring,
        ranks: Vec::new(),
        faces: Vec::new(),
        degeneracies: Vec::new(),
        cycle: Vec::new(),
        rotation: None,
    };
    for n in 0..=truncation {
        let l = x.level(n)?;
        let below = if n > 0 { x.size(n - 1)? } else { 0 };
        module.ranks.push(l.size());
        module.faces.push(l.faces.iter().map(|f| SparseMatrix::from_function(below, f)).collect());
        module.degeneracies.push(l.degeneracies.iter().map(|s| SparseMatrix::from_function(l.size(), s)).collect());
        module.cycle.push(SparseMatrix::from_function(l.size(), &l.cycle));
    }
    Ok(module)
}

pub fn linearize_rcyclic(y: &RCyclicTruncatedObject, ring: Ring) -> Result<TruncatedCyclicModule> {
    ring.validate()?;
    let mut module = TruncatedCyclicModule {
        ring,
        ranks: Vec::new(),
        faces: Vec::new(),
        degeneracies: Vec::new(),
        cycle: Vec::new(),
        rotation: Some(Vec::new()),
    };
    for n in 0..=y.truncation() {
        let l = y.level(n)?;
        let size = l.labels.len();
        let below = if n > 0 { y.level(n - 1)?.labels.len() } else { 0 };
        module.ranks.push(size);
        module.faces.push(l.faces.iter().map(|f| SparseMatrix::from_function(below, f)).collect());
        module.degeneracies.push(l.degeneracies.iter().map(|s| SparseMatrix::from_function(size, s)).collect());
        module.cycle.push(SparseMatrix::from_function(size, &l.cycle));
        if let Some(rot) = module.rotation.as_mut() {
            rot.push(SparseMatrix::from_function(size, &l.rotation));
        }
    }
    Ok(module)
}

fn permutation_fixed_basis(m: &SparseMatrix) -> Result<Vec<usize>> {
    let mut fixed = Vec::new();
    for c in 0..m.cols() {
        let col = m.column(c);
        if col.len() != 1 || !col[0].1.is_one() {
            return Err(Error::Unsupported("basis fixed points need a permutation action".into()));
        }
        if col[0].0 == c {
            fixed.push(c);
        }
    }
    Ok(fixed)
}

impl TruncatedCyclicModule {
    pub fn truncation(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Span of the basis vectors fixed by the rotation, with all operators
    /// restricted to it.
    pub fn basis_fixed_points(&self) -> Result<TruncatedCyclicModule> {
        let rotation = self
            .rotation
            .as_ref()
            .ok_or_else(|| Error::Unsupported("no C_r-action on this module".into()))?;
        let fixed: Vec<Vec<usize>> = rotation.iter().map(permutation_fixed_basis).collect::<Result<_>>()?;
        let restrict = |m: &SparseMatrix, rows: &[usize], cols: &[usize]| -> Result<SparseMatrix> {
            let sub = m.submatrix(rows, cols);
            let lost = cols.iter().map(|&c| m.column(c).len()).sum::<usize>() != sub.nnz();
            if lost {
                return Err(Error::InvalidInput("operator does not preserve the fixed basis".into()));
            }
            Ok(sub)
        };
        let mut out = TruncatedCyclicModule {
            ring: self.ring,
            ranks: fixed.iter().map(Vec::len).collect(),
            faces: Vec::new(),
            degeneracies: Vec::new(),
            cycle: Vec::new(),
            rotation: None,
        };
        for n in 0..self.ranks.len() {
            out.faces.push(self.faces[n].iter().map(|f| restrict(f, &fixed[n - 1], &fixed[n])).collect::<Result<_>>()?);
            out.degeneracies
                .push(self.degeneracies[n].iter().map(|s| restrict(s, &fixed[n], &fixed[n - 1])).collect::<Result<_>>()?);
            out.cycle.push(restrict(&self.cycle[n], &fixed[n], &fixed[n])?);
        }
        Ok(out)
    }

    /// The un-normalized complex `b = Σ (-1)^i d_i` on levels `0..=max_level`.
    pub fn moore_complex(&self, max_level: usize) -> Result<ChainComplex> {
        if max_level > self.truncation() {
            return Err(Error::TruncationTooSmall { needed: max_level, available: self.truncation() });
        }
        let diffs = (1..=max_level)
            .map(|n| {
                self.faces[n].iter().enumerate().fold(SparseMatrix::zeros(self.ranks[n - 1], self.ranks[n]), |acc, (i, d)| {
                    let sign = if i % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                    acc.add(&d.scale(&sign))
                })
            })
            .collect();
        ChainComplex::new(self.ring, 0, self.ranks[..=max_level].to_vec(), diffs, (0, max_level as isize - 1), false)
    }
}
