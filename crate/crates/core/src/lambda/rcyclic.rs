use serde::{Deserialize, Serialize};

use super::cyclic::LambdaMor;
use super::delta::DeltaMor;
use crate::error::{Error, Result};

/// A morphism `[m] -> [n]` of the r-cyclic category.
///
/// Stored as the sample `f(0), ..., f(m)` of a non-decreasing `f: Z -> Z` with
/// `f(x + m + 1) = f(x) + n + 1`, modulo `f ~ f + r(n + 1)`, normalized so that
/// `0 <= f(0) < r(n + 1)`. The object `[m]` stands for `[r(m+1) - 1]` of the
/// cyclic category.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RCyclicMor {
    r: usize,
    source: usize,
    target: usize,
    values: Vec<i64>,
}

impl RCyclicMor {
    pub fn new(r: usize, target: usize, values: Vec<i64>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidMorphism("r must be at least 1".into()));
        }
        if values.is_empty() {
            return Err(Error::InvalidMorphism("empty sample".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidMorphism(format!("sample {values:?} is not monotone")));
        }
        let q = target as i64 + 1;
        let m = values.len() - 1;
        if values[m] > values[0] + q {
            return Err(Error::InvalidMorphism(format!("sample {values:?} violates the period offset {q}")));
        }
        let big = r as i64 * q;
        let shift = values[0].div_euclid(big) * big;
        let values = values.into_iter().map(|v| v - shift).collect();
        Ok(Self { r, source: m, target, values })
    }

    pub fn identity(r: usize, n: usize) -> Result<Self> {
        Self::new(r, n, (0..=n as i64).collect())
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn eval(&self, x: i64) -> i64 {
        let p = self.source as i64 + 1;
        let q = self.target as i64 + 1;
        self.values[x.rem_euclid(p) as usize] + x.div_euclid(p) * q
    }

    /// `self ∘ f`, by composing function models and renormalizing.
    pub fn compose(&self, f: &RCyclicMor) -> Result<RCyclicMor> {
        if self.r != f.r {
            return Err(Error::KindMismatch {
                left: format!("Λ_{}", self.r),
                right: format!("Λ_{}", f.r),
            });
        }
        if f.target != self.source {
            return Err(Error::LevelMismatch { expected: self.source, found: f.target });
        }
        let values = (0..=f.source as i64).map(|x| self.eval(f.eval(x))).collect();
        Self::new(self.r, self.target, values)
    }

    /// The same function read as a morphism `[r(m+1)-1] -> [r(n+1)-1]` of the
    /// cyclic category.
    pub fn to_lambda(&self) -> LambdaMor {
        let big_source = self.r * (self.source + 1);
        let sample: Vec<i64> = (0..big_source as i64).map(|x| self.eval(x)).collect();
        LambdaMor::normal_form(&sample, self.r * (self.target + 1) - 1)
            .expect("an r-periodic degree-1 map is a cyclic morphism")
    }

    /// The quotient functor to the cyclic category: forget `f ~ f + r(n+1)`
    /// in favour of `f ~ f + (n+1)`.
    pub fn quotient(&self) -> LambdaMor {
        LambdaMor::normal_form(&self.values, self.target).expect("valid sample")
    }

    /// The `a`-th preimage of `g` under the quotient functor: `g + a(n+1)`.
    pub fn lift(r: usize, g: &LambdaMor, a: usize) -> Result<Self> {
        let q = g.target() as i64 + 1;
        let values = g.values().into_iter().map(|v| v + a as i64 * q).collect();
        Self::new(r, g.target(), values)
    }

    /// Image of an order-preserving map under subdivision.
    pub fn subdivided(r: usize, phi: &DeltaMor) -> Result<Self> {
        Self::new(r, phi.target(), phi.values().iter().map(|&v| v as i64).collect())
    }

    /// The generator of the levelwise `C_r`-action on level `m`, i.e. the
    /// translation `x |-> x - (m+1)`.
    pub fn rotation_generator(r: usize, m: usize) -> Result<Self> {
        Self::new(r, m, (0..=m as i64).map(|x| x - (m as i64 + 1)).collect())
    }
}

/// Edgewise subdivision on order-preserving maps: `[m] -> [n]` becomes
/// `[r(m+1)-1] -> [r(n+1)-1]`, repeating the map `r` times.
pub fn sd_on_morphism(r: usize, phi: &DeltaMor) -> Result<DeltaMor> {
    if r == 0 {
        return Err(Error::InvalidMorphism("r must be at least 1".into()));
    }
    let (m1, n1) = (phi.source() + 1, phi.target() + 1);
    let values = (0..r).flat_map(|a| phi.values().iter().map(move |&v| a * n1 + v)).collect();
    DeltaMor::new(r * n1 - 1, values).inspect(|d| {
        debug_assert_eq!(d.source(), r * m1 - 1);
    })
}

/// The quotient functor `P_r` on a single morphism.
pub fn quotient_p_r(f: &RCyclicMor) -> LambdaMor {
    f.quotient()
}
