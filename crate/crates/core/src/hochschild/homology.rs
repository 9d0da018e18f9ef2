use serde::Serialize;

use super::algebra::GradedAlgebra;
use super::complex::HochschildComplex;
use crate::chain::{ChainComplex, HomologyTable, Ring, SparseMatrix};
use crate::cyclic::DEFAULT_MAX_CELLS;
use crate::error::{Error, Result};

/// Which degrees an `HH` computation covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HHRange {
    /// Simplicial degrees `0..=s`.
    Simplicial(usize),
    /// Total degrees `t - s` in `lo..=hi`; needs the connective gap.
    Total(i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BigradedRank {
    pub simplicial: usize,
    pub internal: i64,
    pub total: i64,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRank {
    pub degree: i64,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HHTable {
    pub ring: Ring,
    pub range: HHRange,
    pub normalized: bool,
    /// Nonzero bigraded pieces.
    pub bigraded: Vec<BigradedRank>,
    /// Ranks by simplicial or total degree, every degree of the range listed.
    pub ranks: Vec<DegreeRank>,
}

impl HHTable {
    pub fn rank(&self, degree: i64) -> Option<usize> {
        self.ranks.iter().find(|r| r.degree == degree).map(|r| r.rank)
    }

    pub fn rank_vector(&self) -> Vec<usize> {
        self.ranks.iter().map(|r| r.rank).collect()
    }
}

impl HochschildComplex {
    /// `dim H_{s,t}` for `s < s_max`.
    pub fn bigraded_rank(&self, s: usize, t: i64) -> Result<usize> {
        if s >= self.s_max() {
            return Err(Error::OutsideWindow { degree: s as isize, lo: 0, hi: self.s_max() as isize - 1 });
        }
        let ring = self.ring();
        let dim = self.block(s, t).len();
        Ok(dim - self.b_block(s, t).rank(ring) - self.b_block(s + 1, t).rank(ring))
    }

    /// All nonzero `H_{s,t}` with `s < s_max`.
    pub fn bigraded_homology(&self) -> Result<Vec<BigradedRank>> {
        let mut out = Vec::new();
        for s in 0..self.s_max() {
            for t in self.internal_range(s) {
                let rank = self.bigraded_rank(s, t)?;
                if rank > 0 {
                    out.push(BigradedRank { simplicial: s, internal: t, total: t - s as i64, rank });
                }
            }
        }
        Ok(out)
    }
}

/// Largest simplicial degree a total-degree window can reach for an algebra
/// with the connective gap: if every non-unit basis degree is at least `g`,
/// normalized words in `C_s` have `t - s >= (g - 1)s`.
pub fn simplicial_bound(range: HHRange, algebra: &GradedAlgebra) -> Result<usize> {
    match range {
        HHRange::Simplicial(s) => Ok(s),
        HHRange::Total(lo, hi) => {
            if !algebra.has_connective_gap() {
                return Err(Error::Unsupported(
                    "total-degree windows need every non-unit basis degree >= 2; use a simplicial range".into(),
                ));
            }
            if lo > hi {
                return Err(Error::InvalidInput(format!("empty total-degree range {lo}..{hi}")));
            }
            let gap = (0..algebra.dim()).filter(|&i| i != algebra.unit()).map(|i| algebra.degree(i)).min();
            Ok(match gap {
                Some(g) => (hi.max(0) / (g - 1)) as usize,
                None => 0,
            })
        }
    }
}

pub fn hh(algebra: &GradedAlgebra, range: HHRange, normalized: bool) -> Result<HHTable> {
    hh_with_cap(algebra, range, normalized, DEFAULT_MAX_CELLS)
}

/// [`hh`] with an explicit bound on the total number of chain generators.
pub fn hh_with_cap(algebra: &GradedAlgebra, range: HHRange, normalized: bool, cap: u128) -> Result<HHTable> {
    if matches!(range, HHRange::Total(..)) && !normalized {
        return Err(Error::Unsupported("total-degree windows are computed on the normalized complex".into()));
    }
    let top = simplicial_bound(range, algebra)?;
    let cx = HochschildComplex::with_cap(algebra, top + 1, normalized, cap)?;
    table_from_complex(&cx, range)
}

pub fn table_from_complex(cx: &HochschildComplex, range: HHRange) -> Result<HHTable> {
    Ok(summarize(cx.ring(), range, cx.is_normalized(), cx.bigraded_homology()?))
}

fn summarize(ring: Ring, range: HHRange, normalized: bool, bigraded: Vec<BigradedRank>) -> HHTable {
    let degree_of = |e: &BigradedRank| match range {
        HHRange::Simplicial(_) => e.simplicial as i64,
        HHRange::Total(..) => e.total,
    };
    let (lo, hi) = match range {
        HHRange::Simplicial(s) => (0, s as i64),
        HHRange::Total(lo, hi) => (lo, hi),
    };
    let ranks = (lo..=hi)
        .map(|d| DegreeRank { degree: d, rank: bigraded.iter().filter(|e| degree_of(e) == d).map(|e| e.rank).sum() })
        .collect();
    let bigraded = bigraded.into_iter().filter(|e| (lo..=hi).contains(&degree_of(e))).collect();
    HHTable { ring, range, normalized, bigraded, ranks }
}

/// Cyclic homology from the total complex of the `(b, B)` bicomplex on the
/// normalized chains, `Tot_n = C_n ⊕ C_{n-2} ⊕ ...`, degrees `0..=n_max`.
pub fn hc(algebra: &GradedAlgebra, n_max: usize) -> Result<HomologyTable> {
    hc_with_cap(algebra, n_max, DEFAULT_MAX_CELLS)
}

pub fn hc_with_cap(algebra: &GradedAlgebra, n_max: usize, cap: u128) -> Result<HomologyTable> {
    let cx = HochschildComplex::with_cap(algebra, n_max + 1, true, cap)?;
    cyclic_total_complex(&cx)?.homology(0..=n_max as isize)
}

pub fn cyclic_total_complex(cx: &HochschildComplex) -> Result<ChainComplex> {
    let top = cx.s_max();
    // offsets[n][k]: start of the summand C_{n-2k} inside Tot_n
    let summands = |n: usize| -> Vec<usize> { (0..=n / 2).map(|k| n - 2 * k).collect() };
    let offsets = |n: usize| -> Vec<usize> {
        summands(n)
            .iter()
            .scan(0, |acc, &s| {
                let o = *acc;
                *acc += cx.dim(s);
                Some(o)
            })
            .collect()
    };
    let ranks: Vec<usize> = (0..=top).map(|n| summands(n).iter().map(|&s| cx.dim(s)).sum()).collect();
    let mut diffs = Vec::new();
    for n in 1..=top {
        let (src, dst) = (summands(n), summands(n - 1));
        let (so, dof) = (offsets(n), offsets(n - 1));
        let mut triplets = Vec::new();
        for (k, &s) in src.iter().enumerate() {
            // b : C_s -> C_{s-1}
            if s > 0 {
                if let Some(j) = dst.iter().position(|&d| d == s - 1) {
                    for (r, c, v) in cx.b(s).triplets() {
                        triplets.push((dof[j] + r, so[k] + c, v.clone()));
                    }
                }
            }
            // B : C_s -> C_{s+1}
            if let Some(j) = dst.iter().position(|&d| d == s + 1) {
                let m: &SparseMatrix = cx.connes(s).expect("B below the top degree");
                for (r, c, v) in m.triplets() {
                    triplets.push((dof[j] + r, so[k] + c, v.clone()));
                }
            }
        }
        diffs.push(SparseMatrix::from_triplets(ranks[n - 1], ranks[n], triplets));
    }
    ChainComplex::new(cx.ring(), 0, ranks, diffs, (0, top as isize - 1), false)
}

/// Ranks of the cohomology of the field-linear dual of the Hochschild
/// complex, reported in the same degrees as [`hh`].
pub fn dual_hh(algebra: &GradedAlgebra, range: HHRange) -> Result<HHTable> {
    dual_hh_with_cap(algebra, range, DEFAULT_MAX_CELLS)
}

pub fn dual_hh_with_cap(algebra: &GradedAlgebra, range: HHRange, cap: u128) -> Result<HHTable> {
    if !algebra.field().is_field() {
        return Err(Error::Unsupported("duals are taken over fields".into()));
    }
    let top = simplicial_bound(range, algebra)?;
    let cx = HochschildComplex::with_cap(algebra, top + 1, true, cap)?;
    let mut internal: Vec<i64> = (0..=cx.s_max()).flat_map(|s| cx.internal_range(s)).collect();
    internal.sort();
    internal.dedup();
    let mut bigraded = Vec::new();
    for t in internal {
        let dual = cx.chain_complex(Some(t))?.dual()?;
        for s in 0..cx.s_max() {
            let rank = dual.homology([-(s as isize)])?.rank(-(s as isize)).unwrap_or(0);
            if rank > 0 {
                bigraded.push(BigradedRank { simplicial: s, internal: t, total: t - s as i64, rank });
            }
        }
    }
    bigraded.sort_by_key(|e| (e.simplicial, e.internal));
    Ok(summarize(cx.ring(), range, true, bigraded))
}
