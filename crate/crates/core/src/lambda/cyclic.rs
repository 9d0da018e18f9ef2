use std::fmt;

use serde::{Deserialize, Serialize};

use super::delta::DeltaMor;
use crate::error::{Error, Result};

/// A morphism `[m] -> [n]` of the cyclic category in normal form `delta ∘ τ_m^rot`.
///
/// The underlying function model is a non-decreasing `f: Z -> Z` with
/// `f(x + m + 1) = f(x) + n + 1`, taken modulo `f ~ f + (n + 1)`. The cycle
/// map `τ_m` is `x |-> x - 1`, so `f(x) = delta(x - rot)` with `delta`
/// extended periodically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LambdaMor {
    source: usize,
    target: usize,
    rot: usize,
    delta: DeltaMor,
}

impl LambdaMor {
    pub fn from_parts(rot: usize, delta: DeltaMor) -> Result<Self> {
        if rot > delta.source() {
            return Err(Error::InvalidMorphism(format!(
                "rotation {rot} out of range for source [{}]",
                delta.source()
            )));
        }
        Ok(Self { source: delta.source(), target: delta.target(), rot, delta })
    }

    pub fn from_delta(delta: DeltaMor) -> Self {
        Self { source: delta.source(), target: delta.target(), rot: 0, delta }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_delta(DeltaMor::identity(n))
    }

    /// `τ_n`, the cycle map `x |-> x - 1` on `[n]`.
    pub fn tau(n: usize) -> Self {
        Self::tau_power(n, 1)
    }

    /// `τ_n^k` for any integer `k`.
    pub fn tau_power(n: usize, k: i64) -> Self {
        let rot = k.rem_euclid(n as i64 + 1) as usize;
        Self { source: n, target: n, rot, delta: DeltaMor::identity(n) }
    }

    pub fn coface(n: usize, i: usize) -> Result<Self> {
        DeltaMor::coface(n, i).map(Self::from_delta)
    }

    pub fn codegeneracy(n: usize, i: usize) -> Result<Self> {
        DeltaMor::codegeneracy(n, i).map(Self::from_delta)
    }

    /// The extra degeneracy `s^{n+1} : [n+1] -> [n]`, sending `n+1` onto `0`
    /// across the wrap-around arrow.
    pub fn extra_degeneracy(n: usize) -> Self {
        let mut values: Vec<i64> = (0..=n as i64).collect();
        values.push(n as i64 + 1);
        Self::normal_form(&values, n).expect("extra degeneracy is a valid degree-1 map")
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn rot(&self) -> usize {
        self.rot
    }

    pub fn delta(&self) -> &DeltaMor {
        &self.delta
    }

    pub fn is_identity(&self) -> bool {
        self.rot == 0 && self.delta.is_identity()
    }

    /// The function model at `x`, with the representative fixed by `delta`.
    pub fn eval(&self, x: i64) -> i64 {
        self.delta.eval_periodic(x - self.rot as i64)
    }

    /// Canonical sample `f(0), ..., f(m)` with `0 <= f(0) <= n`.
    pub fn values(&self) -> Vec<i64> {
        let q = self.target as i64 + 1;
        let shift = self.eval(0).div_euclid(q) * q;
        (0..=self.source as i64).map(|x| self.eval(x) - shift).collect()
    }

    /// The induced map of sets `Z/(m+1) -> Z/(n+1)`.
    pub fn set_map(&self) -> Vec<usize> {
        let q = self.target as i64 + 1;
        (0..=self.source as i64).map(|x| self.eval(x).rem_euclid(q) as usize).collect()
    }

    /// Recovers the normal form from a sample `f(0), ..., f(m)` of a degree-1
    /// monotone function into `[n]`. Any representative modulo `n + 1` is accepted.
    pub fn normal_form(values: &[i64], target: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidMorphism("empty sample".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidMorphism(format!("sample {values:?} is not monotone")));
        }
        let m = values.len() - 1;
        let p = m as i64 + 1;
        let q = target as i64 + 1;
        if values[m] > values[0] + q {
            return Err(Error::InvalidMorphism(format!(
                "sample {values:?} violates the period offset f(x+{p}) = f(x)+{q}"
            )));
        }
        let f = |x: i64| {
            let a = x.div_euclid(p);
            values[x.rem_euclid(p) as usize] + a * q
        };
        // The preimage of each output block is an interval of length m+1;
        // `rot` is where the block containing f(0) starts.
        let block = |x: i64| f(x).div_euclid(q);
        let b0 = block(0);
        let mut start = 0i64;
        while block(start - 1) == b0 {
            start -= 1;
        }
        let rot = start.rem_euclid(p) as usize;
        let base = f(rot as i64).div_euclid(q) * q;
        let delta_values: Vec<usize> = (0..p).map(|y| (f(y + rot as i64) - base) as usize).collect();
        let delta = DeltaMor::new(target, delta_values)?;
        Self::from_parts(rot, delta)
    }

    /// `self ∘ f`, computed on normal forms by commuting the cycle maps of
    /// `self` past the simplicial part of `f`.
    pub fn compose(&self, f: &LambdaMor) -> Result<LambdaMor> {
        if f.target != self.source {
            return Err(Error::LevelMismatch { expected: self.source, found: f.target });
        }
        let mut phi = f.delta.clone();
        let mut rot = f.rot;
        let m1 = f.source + 1;
        for _ in 0..self.rot {
            let (moved, c) = tau_past_delta(&phi);
            phi = moved;
            rot = (rot + c) % m1;
        }
        let delta = self.delta.compose(&phi)?;
        Self::from_parts(rot, delta)
    }
}

/// Rewrites `τ_n ∘ φ` as `φ' ∘ τ_m^c`.
fn tau_past_delta(phi: &DeltaMor) -> (DeltaMor, usize) {
    let m = phi.source();
    let n = phi.target();
    let v = phi.values();
    let zeros = v.iter().take_while(|&&x| x == 0).count();
    if zeros == 0 {
        return (DeltaMor::from_raw(n, v.iter().map(|&x| x - 1).collect()), 0);
    }
    let mut moved: Vec<usize> = v[zeros..].iter().map(|&x| x - 1).collect();
    moved.extend(std::iter::repeat_n(n, zeros));
    (DeltaMor::from_raw(n, moved), zeros % (m + 1))
}

impl fmt::Display for LambdaMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}] rot {} delta {:?}", self.source, self.target, self.rot, self.delta.values())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_normal_form() {
        let id = LambdaMor::normal_form(&[0, 1, 2], 2).unwrap();
        assert!(id.is_identity());
        assert_eq!(id, LambdaMor::identity(2));
    }

    #[test]
    fn shift_up_is_inverse_cycle() {
        // x |-> x+1 is τ^{-1} = τ^n, with delta = id
        for n in 0..5usize {
            let vals: Vec<i64> = (1..=n as i64 + 1).collect();
            let f = LambdaMor::normal_form(&vals, n).unwrap();
            assert!(f.delta().is_identity());
            assert_eq!(f.rot(), n);
            assert_eq!(f, LambdaMor::tau_power(n, -1));
        }
    }

    #[test]
    fn tau_one_squared_is_identity() {
        let t = LambdaMor::tau(1);
        assert!(t.compose(&t).unwrap().is_identity());
    }

    #[test]
    fn rejects_bad_samples() {
        assert!(LambdaMor::normal_form(&[1, 0], 1).is_err());
        assert!(LambdaMor::normal_form(&[0, 3], 1).is_err());
    }

    #[test]
    fn values_round_trip() {
        let f = LambdaMor::normal_form(&[1, 1, 3], 1).unwrap();
        assert_eq!(f.values(), vec![1, 1, 3]);
        assert_eq!(LambdaMor::normal_form(&f.values(), 1).unwrap(), f);
    }

    #[test]
    fn extra_degeneracy_shape() {
        let s = LambdaMor::extra_degeneracy(1);
        assert_eq!(s.source(), 2);
        assert_eq!(s.values(), vec![0, 1, 2]);
        assert_eq!(s.set_map(), vec![0, 1, 0]);
    }
}
