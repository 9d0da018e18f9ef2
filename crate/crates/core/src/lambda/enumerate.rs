use std::fmt;

use serde::{Deserialize, Serialize};

use super::cyclic::LambdaMor;
use super::delta::{delta_count, DeltaMor};
use super::rcyclic::RCyclicMor;
use crate::error::{cap_check, Error, Result};

pub const DEFAULT_MORPHISM_CAP: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MorphismKind {
    Delta,
    Lambda,
    RCyclic(usize),
}

impl fmt::Display for MorphismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismKind::Delta => write!(f, "Δ"),
            MorphismKind::Lambda => write!(f, "Λ"),
            MorphismKind::RCyclic(r) => write!(f, "Λ_{r}"),
        }
    }
}

/// A morphism of any of the three index categories.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Morphism {
    Delta(DeltaMor),
    Lambda(LambdaMor),
    RCyclic(RCyclicMor),
}

impl Morphism {
    pub fn kind(&self) -> MorphismKind {
        match self {
            Morphism::Delta(_) => MorphismKind::Delta,
            Morphism::Lambda(_) => MorphismKind::Lambda,
            Morphism::RCyclic(f) => MorphismKind::RCyclic(f.r()),
        }
    }

    pub fn source(&self) -> usize {
        match self {
            Morphism::Delta(f) => f.source(),
            Morphism::Lambda(f) => f.source(),
            Morphism::RCyclic(f) => f.source(),
        }
    }

    pub fn target(&self) -> usize {
        match self {
            Morphism::Delta(f) => f.target(),
            Morphism::Lambda(f) => f.target(),
            Morphism::RCyclic(f) => f.target(),
        }
    }

    /// One period of the function model; Δ maps are read as their periodic extension.
    pub fn sample(&self) -> Vec<i64> {
        match self {
            Morphism::Delta(f) => f.values().iter().map(|&v| v as i64).collect(),
            Morphism::Lambda(f) => f.values(),
            Morphism::RCyclic(f) => f.values().to_vec(),
        }
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &Morphism) -> Result<Morphism> {
        match (self, f) {
            (Morphism::Delta(g), Morphism::Delta(f)) => g.compose(f).map(Morphism::Delta),
            (Morphism::Lambda(g), Morphism::Lambda(f)) => g.compose(f).map(Morphism::Lambda),
            (Morphism::RCyclic(g), Morphism::RCyclic(f)) if g.r() == f.r() => g.compose(f).map(Morphism::RCyclic),
            _ => Err(Error::KindMismatch { left: self.kind().to_string(), right: f.kind().to_string() }),
        }
    }
}

/// Number of morphisms `[m] -> [n]` of the given kind.
pub fn hom_count(kind: MorphismKind, m: usize, n: usize) -> u128 {
    let d = delta_count(m, n);
    match kind {
        MorphismKind::Delta => d,
        MorphismKind::Lambda => d.saturating_mul(m as u128 + 1),
        MorphismKind::RCyclic(r) => d.saturating_mul(m as u128 + 1).saturating_mul(r as u128),
    }
}

/// All non-decreasing sequences of length `len` in `[lo, hi]`, lexicographically.
fn monotone_sequences(len: usize, lo: i64, hi: i64, out: &mut Vec<Vec<i64>>) {
    fn rec(len: usize, lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let start = cur.last().copied().unwrap_or(lo);
        for v in start..=hi {
            cur.push(v);
            rec(len, lo, hi, cur, out);
            cur.pop();
        }
    }
    rec(len, lo, hi, &mut Vec::with_capacity(len), out);
}

pub fn enumerate_delta(m: usize, n: usize, cap: u128) -> Result<Vec<DeltaMor>> {
    cap_check("Δ morphisms", hom_count(MorphismKind::Delta, m, n), cap)?;
    let mut seqs = Vec::new();
    monotone_sequences(m + 1, 0, n as i64, &mut seqs);
    Ok(seqs
        .into_iter()
        .map(|s| DeltaMor::from_raw(n, s.into_iter().map(|v| v as usize).collect()))
        .collect())
}

/// Every morphism of `Λ([m],[n])`, ordered by normal form `(rot, delta)`.
pub fn enumerate_lambda(m: usize, n: usize, cap: u128) -> Result<Vec<LambdaMor>> {
    cap_check("Λ morphisms", hom_count(MorphismKind::Lambda, m, n), cap)?;
    let deltas = enumerate_delta(m, n, u128::MAX)?;
    let mut out = Vec::with_capacity(deltas.len() * (m + 1));
    for rot in 0..=m {
        for d in &deltas {
            out.push(LambdaMor::from_parts(rot, d.clone())?);
        }
    }
    Ok(out)
}

/// Every morphism of `Λ_r([m],[n])`, ordered by canonical sample.
pub fn enumerate_rcyclic(r: usize, m: usize, n: usize, cap: u128) -> Result<Vec<RCyclicMor>> {
    if r == 0 {
        return Err(Error::InvalidInput("r must be at least 1".into()));
    }
    cap_check("Λ_r morphisms", hom_count(MorphismKind::RCyclic(r), m, n), cap)?;
    let q = n as i64 + 1;
    let mut out = Vec::new();
    for v0 in 0..r as i64 * q {
        let mut rest = Vec::new();
        monotone_sequences(m, v0, v0 + q, &mut rest);
        for tail in rest {
            let mut values = Vec::with_capacity(m + 1);
            values.push(v0);
            values.extend(tail);
            out.push(RCyclicMor::new(r, n, values)?);
        }
    }
    Ok(out)
}

pub fn enumerate(kind: MorphismKind, m: usize, n: usize, cap: u128) -> Result<Vec<Morphism>> {
    Ok(match kind {
        MorphismKind::Delta => enumerate_delta(m, n, cap)?.into_iter().map(Morphism::Delta).collect(),
        MorphismKind::Lambda => enumerate_lambda(m, n, cap)?.into_iter().map(Morphism::Lambda).collect(),
        MorphismKind::RCyclic(r) => enumerate_rcyclic(r, m, n, cap)?.into_iter().map(Morphism::RCyclic).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_lambda(3, 0, DEFAULT_MORPHISM_CAP).unwrap().len(), 4);
        assert_eq!(enumerate_lambda(2, 1, DEFAULT_MORPHISM_CAP).unwrap().len(), 12);
        let only = enumerate_delta(0, 0, DEFAULT_MORPHISM_CAP).unwrap();
        assert_eq!(only.len(), 1);
        assert!(only[0].is_identity());
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let all = enumerate_lambda(2, 2, DEFAULT_MORPHISM_CAP).unwrap();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let all = enumerate_rcyclic(2, 1, 1, DEFAULT_MORPHISM_CAP).unwrap();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all.len() as u128, hom_count(MorphismKind::RCyclic(2), 1, 1));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(enumerate_lambda(8, 8, 1000), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn kind_mismatch() {
        let a = Morphism::Delta(DeltaMor::identity(1));
        let b = Morphism::Lambda(LambdaMor::identity(1));
        assert!(matches!(a.compose(&b), Err(Error::KindMismatch { .. })));
    }
}
