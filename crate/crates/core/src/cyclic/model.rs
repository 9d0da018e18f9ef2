use std::fmt::Debug;
use std::hash::Hash;

use num_integer::Integer;

use crate::error::{cap_check, Result};
use crate::lambda::{enumerate_lambda, hom_count, LambdaMor, MorphismKind, RCyclicMor};

pub const DEFAULT_MAX_CELLS: u128 = 2_000_000;

/// A cyclic set `Λ^op -> Set` given by element enumeration and an action.
///
/// `act(f, x)` takes `x ∈ X_n` with `n = f.target()` to `X_{f.source()}`.
/// Levels are returned sorted and without repetition, which fixes the ids used
/// once the object is materialized.
pub trait CyclicModel: Send + Sync {
    type Elem: Clone + Ord + Hash + Debug + Send + Sync;

    fn level(&self, n: usize) -> Result<Vec<Self::Elem>>;
    fn act(&self, f: &LambdaMor, x: &Self::Elem) -> Self::Elem;
    fn label(&self, x: &Self::Elem) -> String;
    /// Level above which every element is degenerate, if known.
    fn dimension_bound(&self) -> Option<usize>;
    fn describe(&self) -> String;

    /// Elements of `X_level` fixed by `t^shift`.
    fn fixed_under_translation(&self, level: usize, shift: usize) -> Result<Vec<Self::Elem>> {
        let t = LambdaMor::tau_power(level, shift as i64);
        Ok(self.level(level)?.into_iter().filter(|x| self.act(&t, x) == *x).collect())
    }
}

impl<M: CyclicModel + ?Sized> CyclicModel for std::sync::Arc<M> {
    type Elem = M::Elem;

    fn level(&self, n: usize) -> Result<Vec<Self::Elem>> {
        (**self).level(n)
    }
    fn act(&self, f: &LambdaMor, x: &Self::Elem) -> Self::Elem {
        (**self).act(f, x)
    }
    fn label(&self, x: &Self::Elem) -> String {
        (**self).label(x)
    }
    fn dimension_bound(&self) -> Option<usize> {
        (**self).dimension_bound()
    }
    fn describe(&self) -> String {
        (**self).describe()
    }
    fn fixed_under_translation(&self, level: usize, shift: usize) -> Result<Vec<Self::Elem>> {
        (**self).fixed_under_translation(level, shift)
    }
}

/// The terminal cyclic set.
#[derive(Clone, Copy, Debug, Default)]
pub struct Point;

impl CyclicModel for Point {
    type Elem = ();

    fn level(&self, _n: usize) -> Result<Vec<()>> {
        Ok(vec![()])
    }
    fn act(&self, _f: &LambdaMor, _x: &()) {}
    fn label(&self, _x: &()) -> String {
        "*".into()
    }
    fn dimension_bound(&self) -> Option<usize> {
        Some(0)
    }
    fn describe(&self) -> String {
        "point".into()
    }
}

/// The standard cyclic simplex `Λ[n] = Λ(-, [n])`, acting by precomposition.
#[derive(Clone, Debug)]
pub struct Representable {
    n: usize,
    cap: u128,
}

impl Representable {
    pub fn new(n: usize) -> Self {
        Self { n, cap: DEFAULT_MAX_CELLS }
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

impl CyclicModel for Representable {
    type Elem = LambdaMor;

    fn level(&self, k: usize) -> Result<Vec<LambdaMor>> {
        cap_check("cells of a representable level", hom_count(MorphismKind::Lambda, k, self.n), self.cap)?;
        let mut all = enumerate_lambda(k, self.n, self.cap)?;
        all.sort();
        Ok(all)
    }
    fn act(&self, f: &LambdaMor, x: &LambdaMor) -> LambdaMor {
        x.compose(f).expect("levels checked by caller")
    }
    fn label(&self, x: &LambdaMor) -> String {
        format!("{:?}", x.values())
    }
    fn dimension_bound(&self) -> Option<usize> {
        Some(self.n + 1)
    }
    fn describe(&self) -> String {
        format!("Λ[{}]", self.n)
    }
}

/// The levelwise `C_r`-fixed points of `sd_r X`, made cyclic through the
/// quotient `Λ_r -> Λ`. Elements are those of `X_{r(n+1)-1}`.
#[derive(Clone, Debug)]
pub struct FixedPoints<M> {
    base: M,
    r: usize,
}

impl<M: CyclicModel> FixedPoints<M> {
    pub fn new(base: M, r: usize) -> Self {
        assert!(r >= 1, "r must be at least 1");
        Self { base, r }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn base(&self) -> &M {
        &self.base
    }

    /// Acts through the `a`-th preimage of `f` under the quotient functor.
    pub fn act_with_lift(&self, f: &LambdaMor, x: &M::Elem, a: usize) -> M::Elem {
        let lift = RCyclicMor::lift(self.r, f, a).expect("valid lift").to_lambda();
        self.base.act(&lift, x)
    }
}

impl<M: CyclicModel> CyclicModel for FixedPoints<M> {
    type Elem = M::Elem;

    fn level(&self, j: usize) -> Result<Vec<M::Elem>> {
        self.base.fixed_under_translation(self.r * (j + 1) - 1, j + 1)
    }
    fn act(&self, f: &LambdaMor, x: &M::Elem) -> M::Elem {
        self.act_with_lift(f, x, 0)
    }
    fn label(&self, x: &M::Elem) -> String {
        self.base.label(x)
    }
    fn dimension_bound(&self) -> Option<usize> {
        None
    }
    fn describe(&self) -> String {
        format!("(sd_{} {})^C_{}", self.r, self.base.describe(), self.r)
    }
    fn fixed_under_translation(&self, j: usize, shift: usize) -> Result<Vec<M::Elem>> {
        // Fixed by the big translation by `shift` and by the C_r generator (by j+1).
        self.base.fixed_under_translation(self.r * (j + 1) - 1, (j + 1).gcd(&shift))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_zero_level_three() {
        assert_eq!(Representable::new(0).level(3).unwrap().len(), 4);
    }

    #[test]
    fn sd_two_of_lambda_zero_has_no_fixed_points() {
        let f = FixedPoints::new(Representable::new(0), 2);
        for j in 0..=4 {
            assert!(f.level(j).unwrap().is_empty());
        }
    }

    #[test]
    fn point_fixed_points_are_a_point() {
        let f = FixedPoints::new(Point, 3);
        for j in 0..4 {
            assert_eq!(f.level(j).unwrap().len(), 1);
        }
    }

    #[test]
    fn cap_applies() {
        assert!(Representable::new(6).with_cap(10).level(6).is_err());
    }
}
