use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An order-preserving map `[m] -> [n]`, stored by its values `v_0 <= ... <= v_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DeltaMor {
    source: usize,
    target: usize,
    values: Vec<usize>,
}

impl DeltaMor {
    pub fn new(target: usize, values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidMorphism("a map out of [m] needs m+1 values".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidMorphism(format!("values {values:?} are not non-decreasing")));
        }
        if values.iter().any(|&v| v > target) {
            return Err(Error::InvalidMorphism(format!("values {values:?} leave [0, {target}]")));
        }
        Ok(Self { source: values.len() - 1, target, values })
    }

    pub(crate) fn from_raw(target: usize, values: Vec<usize>) -> Self {
        debug_assert!(Self::new(target, values.clone()).is_ok());
        Self { source: values.len() - 1, target, values }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_raw(n, (0..=n).collect())
    }

    /// The coface `d^i : [n-1] -> [n]` skipping `i`.
    pub fn coface(n: usize, i: usize) -> Result<Self> {
        if n == 0 || i > n {
            return Err(Error::InvalidMorphism(format!("no coface d^{i} into [{n}]")));
        }
        Ok(Self::from_raw(n, (0..n).map(|j| if j < i { j } else { j + 1 }).collect()))
    }

    /// The codegeneracy `s^i : [n+1] -> [n]` repeating `i`.
    pub fn codegeneracy(n: usize, i: usize) -> Result<Self> {
        if i > n {
            return Err(Error::InvalidMorphism(format!("no codegeneracy s^{i} onto [{n}]")));
        }
        Ok(Self::from_raw(n, (0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect()))
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Periodic extension to `Z`: `x = a(m+1) + i  |->  a(n+1) + v_i`.
    pub fn eval_periodic(&self, x: i64) -> i64 {
        let p = self.source as i64 + 1;
        let q = self.target as i64 + 1;
        let a = x.div_euclid(p);
        let i = x.rem_euclid(p) as usize;
        a * q + self.values[i] as i64
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &DeltaMor) -> Result<DeltaMor> {
        if f.target != self.source {
            return Err(Error::LevelMismatch { expected: self.source, found: f.target });
        }
        Ok(Self::from_raw(self.target, f.values.iter().map(|&v| self.values[v]).collect()))
    }

    /// Positions `j` with `v_j = v_{j+1}`, ascending.
    pub fn collapsed_positions(&self) -> Vec<usize> {
        (0..self.source).filter(|&j| self.values[j] == self.values[j + 1]).collect()
    }

    /// Elements of `[n]` missed by the map, ascending.
    pub fn missed_values(&self) -> Vec<usize> {
        let mut hit = vec![false; self.target + 1];
        for &v in &self.values {
            hit[v] = true;
        }
        (0..=self.target).filter(|&v| !hit[v]).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.collapsed_positions().is_empty()
    }
}

/// `C(a, b)` in `u128`, saturating.
pub(crate) fn binomial(a: u64, b: u64) -> u128 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc.saturating_mul((a - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// `|Δ([m],[n])| = C(m+n+1, m+1)`.
pub fn delta_count(m: usize, n: usize) -> u128 {
    binomial((m + n + 1) as u64, (m + 1) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_values() {
        assert!(DeltaMor::new(2, vec![1, 0]).is_err());
        assert!(DeltaMor::new(1, vec![0, 2]).is_err());
        assert!(DeltaMor::new(1, vec![]).is_err());
    }

    #[test]
    fn coface_and_codegeneracy_values() {
        assert_eq!(DeltaMor::coface(2, 1).unwrap().values(), &[0, 2]);
        assert_eq!(DeltaMor::codegeneracy(1, 0).unwrap().values(), &[0, 0, 1]);
        assert!(DeltaMor::coface(0, 0).is_err());
    }

    #[test]
    fn simplicial_identity_s_d() {
        // s^i d^i = id
        for n in 1..5 {
            for i in 0..n {
                let d = DeltaMor::coface(n, i).unwrap();
                let s = DeltaMor::codegeneracy(n - 1, i).unwrap();
                assert!(s.compose(&d).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn counts() {
        assert_eq!(delta_count(0, 0), 1);
        assert_eq!(delta_count(2, 1), 4);
        assert_eq!(binomial(10, 3), 120);
    }
}
