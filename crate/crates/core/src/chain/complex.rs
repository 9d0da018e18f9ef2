use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::field::PrimeField;
use super::matrix::SparseMatrix;
use super::snf::invariant_factors;
use crate::error::{Error, Result};

/// Coefficient ring of a complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ring {
    Z,
    Q,
    Fp(u64),
}

impl Ring {
    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Z)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Ring::Fp(p) if PrimeField::new(*p).is_none() => {
                Err(Error::InvalidInput(format!("{p} is not a supported prime")))
            }
            _ => Ok(()),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let ring = match s.trim() {
            "Z" => Ring::Z,
            "Q" => Ring::Q,
            other => {
                let p = other
                    .strip_prefix("Fp:")
                    .or_else(|| other.strip_prefix("F"))
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::InvalidInput(format!("unknown ring {other:?}; use Z, Q or Fp:P")))?;
                Ring::Fp(p)
            }
        };
        ring.validate()?;
        Ok(ring)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z => write!(f, "Z"),
            Ring::Q => write!(f, "Q"),
            Ring::Fp(p) => write!(f, "Fp:{p}"),
        }
    }
}

/// A bounded complex of finitely generated free modules,
/// `d_n : C_n -> C_{n-1}`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ring: Ring,
    lo: isize,
    ranks: Vec<usize>,
    /// `differentials[k]` is `d_{lo+k}`; `d_lo` maps to the zero module.
    differentials: Vec<SparseMatrix>,
    labels: Option<Vec<Vec<String>>>,
    window: (isize, isize),
    complete: bool,
}

impl ChainComplex {
    /// `differentials` lists `d_{lo+1}, ..., d_{lo+len-1}`. Dimensions and
    /// `d ∘ d = 0` are checked.
    pub fn new(
        ring: Ring,
        lo: isize,
        ranks: Vec<usize>,
        differentials: Vec<SparseMatrix>,
        window: (isize, isize),
        complete: bool,
    ) -> Result<Self> {
        ring.validate()?;
        if differentials.len() + 1 != ranks.len().max(1) {
            return Err(Error::InvalidInput(format!(
                "{} ranks need {} differentials, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                differentials.len()
            )));
        }
        let mut all = Vec::with_capacity(ranks.len());
        if let Some(&r0) = ranks.first() {
            all.push(SparseMatrix::zeros(0, r0));
        }
        for (k, d) in differentials.into_iter().enumerate() {
            if d.rows() != ranks[k] || d.cols() != ranks[k + 1] {
                return Err(Error::InvalidInput(format!(
                    "d_{} is {}x{}, expected {}x{}",
                    lo + k as isize + 1,
                    d.rows(),
                    d.cols(),
                    ranks[k],
                    ranks[k + 1]
                )));
            }
            all.push(d);
        }
        let c = Self { ring, lo, ranks, differentials: all, labels: None, window, complete };
        c.check_square_zero()?;
        Ok(c)
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Self {
        debug_assert_eq!(labels.len(), self.ranks.len());
        self.labels = Some(labels);
        self
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn lo(&self) -> isize {
        self.lo
    }

    pub fn hi(&self) -> isize {
        self.lo + self.ranks.len() as isize - 1
    }

    pub fn window(&self) -> (isize, isize) {
        self.window
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn labels(&self, n: isize) -> Option<&[String]> {
        let k = self.index(n)?;
        self.labels.as_ref().map(|l| l[k].as_slice())
    }

    fn index(&self, n: isize) -> Option<usize> {
        (n >= self.lo && n <= self.hi()).then(|| (n - self.lo) as usize)
    }

    pub fn rank(&self, n: isize) -> usize {
        self.index(n).map_or(0, |k| self.ranks[k])
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `d_n : C_n -> C_{n-1}`, zero outside the stored range.
    pub fn differential(&self, n: isize) -> SparseMatrix {
        match self.index(n) {
            Some(k) => self.differentials[k].clone(),
            None => SparseMatrix::zeros(self.rank(n - 1), self.rank(n)),
        }
    }

    fn differential_ref(&self, n: isize) -> Option<&SparseMatrix> {
        self.index(n).map(|k| &self.differentials[k])
    }

    pub fn check_square_zero(&self) -> Result<()> {
        for n in self.lo + 1..=self.hi() {
            let (Some(a), Some(b)) = (self.differential_ref(n), self.differential_ref(n + 1)) else { continue };
            if !a.mul(b).is_zero() {
                return Err(Error::InvalidInput(format!("d_{n} ∘ d_{} is not zero", n + 1)));
            }
        }
        Ok(())
    }

    /// Same complex over another ring. Entries must have images there.
    pub fn with_ring(&self, ring: Ring) -> Result<Self> {
        ring.validate()?;
        if ring == Ring::Z && self.differentials.iter().any(|d| !d.is_integral()) {
            return Err(Error::InvalidInput("complex has non-integral entries".into()));
        }
        let mut c = self.clone();
        c.ring = ring;
        Ok(c)
    }

    pub fn with_window(mut self, window: (isize, isize)) -> Self {
        self.window = window;
        self
    }

    /// Replaces the basis of `C_n` through an invertible change of basis:
    /// `d_n ↦ d_n P`, `d_{n+1} ↦ P^{-1} d_{n+1}`.
    pub fn change_basis(&self, n: isize, p: &SparseMatrix, p_inv: &SparseMatrix) -> Result<Self> {
        let k = self.index(n).ok_or(Error::OutsideWindow { degree: n, lo: self.lo, hi: self.hi() })?;
        let mut c = self.clone();
        c.differentials[k] = self.differentials[k].mul(p);
        if let Some(next) = self.index(n + 1) {
            c.differentials[next] = p_inv.mul(&self.differentials[next]);
        }
        c.labels = None;
        c.check_square_zero()?;
        Ok(c)
    }

    /// Linear dual over a field, regraded so that `H_{-n}` of the result is
    /// the cohomology `H^n`.
    pub fn dual(&self) -> Result<Self> {
        if !self.ring.is_field() {
            return Err(Error::Unsupported("duals are only taken over fields".into()));
        }
        let lo = -self.hi();
        let ranks: Vec<usize> = self.ranks.iter().rev().copied().collect();
        // D_{-n} -> D_{-n-1} is (d_{n+1})^T
        let diffs = (1..ranks.len())
            .map(|k| {
                let n = -(lo + k as isize);
                self.differential(n + 1).transpose()
            })
            .collect();
        let window = (-self.window.1, -self.window.0);
        Self::new(self.ring, lo, ranks, diffs, window, self.complete)
    }

    /// Homology in the requested degrees, which must lie in the validity window.
    pub fn homology(&self, degrees: impl IntoIterator<Item = isize>) -> Result<HomologyTable> {
        let mut entries = Vec::new();
        for n in degrees {
            if n < self.window.0 || n > self.window.1 {
                return Err(Error::OutsideWindow { degree: n, lo: self.window.0, hi: self.window.1 });
            }
            entries.push(self.homology_at(n)?);
        }
        Ok(HomologyTable { ring: self.ring, window: self.window, entries })
    }

    /// Homology in every degree of the validity window that carries modules.
    pub fn homology_in_window(&self) -> Result<HomologyTable> {
        let lo = self.window.0.max(self.lo);
        let hi = self.window.1.min(self.hi());
        self.homology(lo..=hi)
    }

    fn homology_at(&self, n: isize) -> Result<HomologyEntry> {
        let dim = self.rank(n);
        let out = self.differential(n);
        let inc = self.differential(n + 1);
        match self.ring {
            Ring::Z => {
                let r_out = invariant_factors(&out)?.len();
                let inc_factors = invariant_factors(&inc)?;
                let torsion: Vec<BigInt> = inc_factors.iter().filter(|f| !f.is_one()).cloned().collect();
                Ok(HomologyEntry { degree: n, rank: dim - r_out - inc_factors.len(), torsion })
            }
            ring => {
                let r_out = out.rank(ring);
                let r_in = inc.rank(ring);
                Ok(HomologyEntry { degree: n, rank: dim - r_out - r_in, torsion: Vec::new() })
            }
        }
    }

    /// Alternating sum of ranks over the whole stored range.
    pub fn euler_characteristic(&self) -> EulerCharacteristic {
        let value = self
            .ranks
            .iter()
            .enumerate()
            .map(|(k, &r)| if (self.lo + k as isize).rem_euclid(2) == 0 { r as i64 } else { -(r as i64) })
            .sum();
        EulerCharacteristic { value, complete: self.complete }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerCharacteristic {
    pub value: i64,
    /// `false` when levels beyond the truncation could carry generators.
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyEntry {
    pub degree: isize,
    pub rank: usize,
    #[serde(with = "bigint_strings")]
    pub torsion: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyTable {
    pub ring: Ring,
    pub window: (isize, isize),
    pub entries: Vec<HomologyEntry>,
}

impl HomologyTable {
    pub fn rank(&self, n: isize) -> Option<usize> {
        self.entries.iter().find(|e| e.degree == n).map(|e| e.rank)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.rank).collect()
    }

    pub fn torsion(&self, n: isize) -> Option<&[BigInt]> {
        self.entries.iter().find(|e| e.degree == n).map(|e| e.torsion.as_slice())
    }
}

mod bigint_strings {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn ring_parsing() {
        assert_eq!("Z".parse::<Ring>().unwrap(), Ring::Z);
        assert_eq!("Fp:5".parse::<Ring>().unwrap(), Ring::Fp(5));
        assert!("Fp:6".parse::<Ring>().is_err());
        assert!("R".parse::<Ring>().is_err());
    }

    #[test]
    fn multiplication_by_two() {
        let d = SparseMatrix::from_triplets(1, 1, vec![(0, 0, q(2))]);
        let c = ChainComplex::new(Ring::Z, 0, vec![1, 1], vec![d], (0, 1), true).unwrap();
        let h = c.homology(0..=1).unwrap();
        assert_eq!(h.rank(0), Some(0));
        assert_eq!(h.torsion(0).unwrap(), &[BigInt::from(2)]);
        assert_eq!(h.rank(1), Some(0));
        let h2 = c.with_ring(Ring::Fp(2)).unwrap().homology(0..=1).unwrap();
        assert_eq!(h2.ranks(), vec![1, 1]);
    }

    #[test]
    fn zero_complex_and_window() {
        let c = ChainComplex::new(Ring::Q, 0, vec![0, 0], vec![SparseMatrix::zeros(0, 0)], (0, 0), false).unwrap();
        assert_eq!(c.homology(0..=0).unwrap().ranks(), vec![0]);
        assert!(matches!(c.homology(1..=1), Err(Error::OutsideWindow { .. })));
    }

    #[test]
    fn rejects_nonzero_square() {
        let a = SparseMatrix::from_triplets(1, 1, vec![(0, 0, q(1))]);
        assert!(ChainComplex::new(Ring::Q, 0, vec![1, 1, 1], vec![a.clone(), a], (0, 2), true).is_err());
    }

    #[test]
    fn dual_reverses_degrees() {
        let d = SparseMatrix::from_triplets(1, 2, vec![(0, 0, q(1)), (0, 1, q(-1))]);
        let c = ChainComplex::new(Ring::Q, 0, vec![1, 2], vec![d], (0, 1), true).unwrap();
        let dual = c.dual().unwrap();
        assert_eq!((dual.lo(), dual.hi()), (-1, 0));
        let h = c.homology(0..=1).unwrap();
        let hd = dual.homology([-1, 0]).unwrap();
        assert_eq!(hd.rank(0), h.rank(0));
        assert_eq!(hd.rank(-1), h.rank(1));
        assert!(c.with_ring(Ring::Z).unwrap().dual().is_err());
    }
}
