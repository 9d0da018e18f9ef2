use std::collections::BTreeSet;

use serde::Serialize;

use super::model::{CyclicModel, FixedPoints};
use super::nerve::CyclicNerve;
use crate::error::Result;
use crate::lambda::LambdaMor;

/// The generators of `Λ` with target `[j]` whose source is within `0..=top`.
pub fn generators_into(j: usize, top: usize) -> Result<Vec<LambdaMor>> {
    let mut gens = vec![LambdaMor::tau(j)];
    if j > 0 {
        for i in 0..=j {
            gens.push(LambdaMor::coface(j, i)?);
        }
    }
    if j < top {
        for i in 0..=j {
            gens.push(LambdaMor::codegeneracy(j, i)?);
        }
        gens.push(LambdaMor::extra_degeneracy(j));
    }
    Ok(gens)
}

fn filtered_fixed<M: CyclicModel>(model: &M, level: usize, shift: usize) -> Result<Vec<M::Elem>> {
    let t = LambdaMor::tau_power(level, shift as i64);
    Ok(model.level(level)?.into_iter().filter(|x| model.act(&t, x) == *x).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaLevel {
    pub level: usize,
    pub source_size: usize,
    pub fixed_size: usize,
    pub injective: bool,
    pub surjective: bool,
    /// Whether the fixed set was also found by filtering all of `X_{r(j+1)-1}`.
    pub brute_force_checked: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaReport {
    pub r: usize,
    pub levels: Vec<GammaLevel>,
    pub commutes_with_generators: bool,
    pub lifts_agree: bool,
    pub checked_actions: usize,
    pub counterexample: Option<String>,
}

impl GammaReport {
    pub fn holds(&self) -> bool {
        self.commutes_with_generators && self.lifts_agree && self.levels.iter().all(|l| l.injective && l.surjective)
    }
}

/// `γ_r : N^cyc C -> (sd_r N^cyc C)^{C_r}`, `x |-> x x ⋯ x`, checked on levels
/// `0..=truncation`. Base levels of size at most `brute_force_cap` are also
/// searched exhaustively for fixed elements.
pub fn gamma_diagonal(nerve: &CyclicNerve, r: usize, truncation: usize, brute_force_cap: u128) -> Result<GammaReport> {
    let fixed = FixedPoints::new(nerve.clone(), r);
    let arrows = nerve.category().arrow_count() as u128;
    let mut levels = Vec::new();
    let mut commutes = true;
    let mut lifts_agree = true;
    let mut checked = 0usize;
    let mut counterexample = None;
    for j in 0..=truncation {
        let source = nerve.level(j)?;
        let target: BTreeSet<Vec<u32>> = fixed.level(j)?.into_iter().collect();
        let base_level = r * (j + 1) - 1;
        let brute = arrows.saturating_pow((base_level + 1) as u32) <= brute_force_cap;
        if brute {
            let slow: BTreeSet<Vec<u32>> = filtered_fixed(nerve, base_level, j + 1)?.into_iter().collect();
            if slow != target {
                counterexample.get_or_insert_with(|| format!("level {j}: fixed-point enumeration disagrees with filtering"));
                commutes = false;
            }
        }
        let image: BTreeSet<Vec<u32>> = source.iter().map(|x| CyclicNerve::repeat(x, r)).collect();
        levels.push(GammaLevel {
            level: j,
            source_size: source.len(),
            fixed_size: target.len(),
            injective: image.len() == source.len(),
            surjective: image == target,
            brute_force_checked: brute,
        });
        for f in generators_into(j, truncation)? {
            for x in &source {
                let lhs = CyclicNerve::repeat(&nerve.act(&f, x), r);
                let gx = CyclicNerve::repeat(x, r);
                let rhs = fixed.act(&f, &gx);
                let other = fixed.act_with_lift(&f, &gx, r - 1);
                checked += 1;
                if lhs != rhs {
                    commutes = false;
                    counterexample
                        .get_or_insert_with(|| format!("γ_{r} vs {f} on {}", nerve.label(x)));
                }
                if rhs != other {
                    lifts_agree = false;
                    counterexample.get_or_insert_with(|| format!("lifts of {f} disagree on {}", nerve.label(&gx)));
                }
            }
        }
    }
    Ok(GammaReport { r, levels, commutes_with_generators: commutes, lifts_agree, checked_actions: checked, counterexample })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatibilityReport {
    pub m: usize,
    pub n: usize,
    pub truncation: usize,
    /// `it ∘ γ_{mn} = (γ_n)^{C_m} ∘ γ_m` elementwise.
    pub square_commutes: bool,
    /// The identification `(sd_{mn} X)^{C_{mn}} ≅ (sd_m (sd_n X)^{C_n})^{C_m}` is a bijection...
    pub identification_bijective: bool,
    /// ...and commutes with the generators.
    pub identification_cyclic: bool,
    /// `t_{mn-1}(γ_n x) = γ_n(t_{m-1} x)` on `X_{m-1}`.
    pub diagonal_equivariant: bool,
    pub counterexample: Option<String>,
}

impl CompatibilityReport {
    pub fn holds(&self) -> bool {
        self.square_commutes && self.identification_bijective && self.identification_cyclic && self.diagonal_equivariant
    }
}

/// Checks the compatibility square of the diagonals for `(m, n)` on levels
/// `0..=truncation`. The iterated fixed set is found by filtering when its
/// ambient level has at most `brute_force_cap` elements.
pub fn cyclotomic_compatibility(
    nerve: &CyclicNerve,
    m: usize,
    n: usize,
    truncation: usize,
    brute_force_cap: u128,
) -> Result<CompatibilityReport> {
    let direct = FixedPoints::new(nerve.clone(), m * n);
    let inner = FixedPoints::new(nerve.clone(), n);
    let iterated = FixedPoints::new(inner.clone(), m);
    let arrows = nerve.category().arrow_count() as u128;
    let mut square = true;
    let mut bijective = true;
    let mut cyclic = true;
    let mut counterexample = None;
    for j in 0..=truncation {
        let a: BTreeSet<Vec<u32>> = direct.level(j)?.into_iter().collect();
        let ambient = m * (j + 1) - 1;
        let b: BTreeSet<Vec<u32>> = if arrows.saturating_pow((m * (j + 1)) as u32) <= brute_force_cap {
            filtered_fixed(&inner, ambient, j + 1)?.into_iter().collect()
        } else {
            iterated.level(j)?.into_iter().collect()
        };
        if a != b {
            bijective = false;
            counterexample.get_or_insert_with(|| format!("level {j}: fixed sets differ ({} vs {})", a.len(), b.len()));
        }
        for x in nerve.level(j)? {
            let via_mn = CyclicNerve::repeat(&x, m * n);
            let via_m = CyclicNerve::repeat(&CyclicNerve::repeat(&x, m), n);
            if via_mn != via_m || !b.contains(&via_m) {
                square = false;
                counterexample.get_or_insert_with(|| format!("square fails on {}", nerve.label(&x)));
            }
        }
        for f in generators_into(j, truncation)? {
            for y in &a {
                if direct.act(&f, y) != iterated.act(&f, y) {
                    cyclic = false;
                    counterexample.get_or_insert_with(|| format!("identification does not commute with {f}"));
                }
            }
        }
    }
    let mut equivariant = true;
    let tau_small = LambdaMor::tau(m - 1);
    let tau_big = LambdaMor::tau(m * n - 1);
    for x in nerve.level(m - 1)? {
        let lhs = nerve.act(&tau_big, &CyclicNerve::repeat(&x, n));
        let rhs = CyclicNerve::repeat(&nerve.act(&tau_small, &x), n);
        if lhs != rhs {
            equivariant = false;
            counterexample.get_or_insert_with(|| format!("diagonal not equivariant on {}", nerve.label(&x)));
        }
    }
    Ok(CompatibilityReport {
        m,
        n,
        truncation,
        square_commutes: square,
        identification_bijective: bijective,
        identification_cyclic: cyclic,
        diagonal_equivariant: equivariant,
        counterexample,
    })
}
