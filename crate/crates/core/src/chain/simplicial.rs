use num_rational::BigRational;
use num_traits::One;

use super::complex::{ChainComplex, Ring};
use super::matrix::SparseMatrix;
use crate::error::{Error, Result};

/// Face and degeneracy tables of a truncated simplicial set.
pub trait SimplicialData {
    /// Highest level available without further generation.
    fn available_level(&self) -> usize;
    fn level_size(&self, n: usize) -> Result<usize>;
    /// `d_i : X_n -> X_{n-1}` for `0 <= i <= n`.
    fn face(&self, n: usize, i: usize) -> Result<Vec<u32>>;
    /// `s_i : X_{n-1} -> X_n` for `0 <= i < n`.
    fn degeneracy(&self, n: usize, i: usize) -> Result<Vec<u32>>;
    /// Level above which every element is degenerate, if known.
    fn dimension_bound(&self) -> Option<usize>;
}

/// Flags the degenerate elements of `X_n`: the union of the images of
/// `s_0, ..., s_{n-1}`.
pub fn degenerate_flags<X: SimplicialData + ?Sized>(x: &X, n: usize) -> Result<Vec<bool>> {
    let mut flags = vec![false; x.level_size(n)?];
    for i in 0..n {
        for y in x.degeneracy(n, i)? {
            flags[y as usize] = true;
        }
    }
    Ok(flags)
}

/// Chains on levels `0..=max_level`; with `normalized`, degree `n` is free on
/// the non-degenerate elements and faces landing on degenerate ones are dropped.
pub fn simplicial_chains<X: SimplicialData + ?Sized>(
    x: &X,
    ring: Ring,
    max_level: usize,
    normalized: bool,
) -> Result<ChainComplex> {
    if max_level > x.available_level() {
        return Err(Error::TruncationTooSmall { needed: max_level, available: x.available_level() });
    }
    let mut bases: Vec<Vec<u32>> = Vec::with_capacity(max_level + 1);
    let mut positions: Vec<Vec<Option<usize>>> = Vec::with_capacity(max_level + 1);
    for n in 0..=max_level {
        let size = x.level_size(n)?;
        let keep: Vec<bool> = if normalized { degenerate_flags(x, n)?.into_iter().map(|d| !d).collect() } else { vec![true; size] };
        let basis: Vec<u32> = (0..size as u32).filter(|&e| keep[e as usize]).collect();
        let mut pos = vec![None; size];
        for (k, &e) in basis.iter().enumerate() {
            pos[e as usize] = Some(k);
        }
        bases.push(basis);
        positions.push(pos);
    }
    let mut diffs = Vec::with_capacity(max_level);
    for n in 1..=max_level {
        let faces: Vec<Vec<u32>> = (0..=n).map(|i| x.face(n, i)).collect::<Result<_>>()?;
        let mut triplets = Vec::new();
        for (col, &e) in bases[n].iter().enumerate() {
            for (i, face) in faces.iter().enumerate() {
                if let Some(row) = positions[n - 1][face[e as usize] as usize] {
                    let sign = if i % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                    triplets.push((row, col, sign));
                }
            }
        }
        diffs.push(SparseMatrix::from_triplets(bases[n - 1].len(), bases[n].len(), triplets));
    }
    // Without further non-degenerate cells the top degree is exact as well.
    let complete = normalized && x.dimension_bound().is_some_and(|b| b <= max_level);
    let hi = if complete { max_level as isize } else { max_level as isize - 1 };
    let ranks = bases.iter().map(Vec::len).collect();
    let labels = bases.iter().map(|b| b.iter().map(|e| e.to_string()).collect()).collect();
    Ok(ChainComplex::new(ring, 0, ranks, diffs, (0, hi), complete)?.with_labels(labels))
}

pub fn normalized_chains<X: SimplicialData + ?Sized>(x: &X, ring: Ring, max_level: usize) -> Result<ChainComplex> {
    simplicial_chains(x, ring, max_level, true)
}

pub fn moore_chains<X: SimplicialData + ?Sized>(x: &X, ring: Ring, max_level: usize) -> Result<ChainComplex> {
    simplicial_chains(x, ring, max_level, false)
}
