use std::collections::BTreeSet;

use serde::Serialize;

use super::truncated::TruncatedCyclicSet;
use crate::error::{Error, Result};
use crate::lambda::{enumerate_lambda, DeltaMor, LambdaMor};

/// Degenerate parts of one level and the subset cube describing them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatchingData {
    pub level: usize,
    /// `L_n`: union of the images of `s_0, ..., s_{n-1}`.
    pub simplicial: BTreeSet<u32>,
    /// `L_n^cyc`: the same union including the extra degeneracy.
    pub cyclic: BTreeSet<u32>,
    /// `X_S` for every proper subset `S ⊂ {0..n}`, as a bitmask.
    pub cube: Vec<(u32, BTreeSet<u32>)>,
    /// `X_{-1}` as a subset of `X_0`.
    pub x_minus_one: BTreeSet<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatchingReport {
    pub level: usize,
    pub simplicial_in_cyclic: bool,
    /// `None` at level 0, where the cycle operator is the identity and the law does not apply.
    pub cyclic_is_t_closure: Option<bool>,
    pub intersection_law: bool,
    pub union_is_cyclic_latching: bool,
    /// `None` at level 0, where `X_∅ = X_{-1}` is not cut out by collapses.
    pub cube_is_fixed_set_of_collapses: Option<bool>,
    /// Every map `[n] -> [0]` sends `X_{-1}` to the same elements of `X_n`.
    pub x_minus_one_image_well_defined: bool,
}

impl LatchingReport {
    pub fn all_hold(&self) -> bool {
        self.simplicial_in_cyclic
            && self.cyclic_is_t_closure.unwrap_or(true)
            && self.intersection_law
            && self.union_is_cyclic_latching
            && self.cube_is_fixed_set_of_collapses.unwrap_or(true)
            && self.x_minus_one_image_well_defined
    }
}

/// The round-down map `r_S : [n] -> [|S|-1]`,
/// `x |-> #{y ∈ S + (n+1)Z : 0 <= y <= x} - 1`.
pub fn round_down(n: usize, s: u32) -> Result<LambdaMor> {
    let members: Vec<i64> = (0..=n as i64).filter(|&y| s >> y & 1 == 1).collect();
    if members.is_empty() {
        return Err(Error::InvalidInput("round-down map needs a non-empty subset".into()));
    }
    let values: Vec<i64> = (0..=n as i64).map(|x| members.iter().filter(|&&y| y <= x).count() as i64 - 1).collect();
    LambdaMor::normal_form(&values, members.len() - 1)
}

/// `D_i : [n] -> [n]`, sending `i` to `i - 1` (cyclically) and fixing the rest.
pub fn collapse(n: usize, i: usize) -> Result<LambdaMor> {
    let values: Vec<i64> = (0..=n as i64).map(|x| if x == i as i64 { x - 1 } else { x }).collect();
    LambdaMor::normal_form(&values, n)
}

pub fn latching(x: &TruncatedCyclicSet, n: usize) -> Result<LatchingData> {
    if n >= 31 {
        return Err(Error::Unsupported("latching cubes are limited to levels below 31".into()));
    }
    let level = x.level(n)?;
    let x_minus_one: BTreeSet<u32> = x.x_minus_one()?.into_iter().collect();
    let (simplicial, cyclic) = if n == 0 {
        (BTreeSet::new(), x_minus_one.clone())
    } else {
        let simplicial: BTreeSet<u32> = level.degeneracies[..n].iter().flatten().copied().collect();
        let mut cyclic = simplicial.clone();
        cyclic.extend(level.degeneracies[n].iter().copied());
        (simplicial, cyclic)
    };
    let full = (1u32 << (n + 1)) - 1;
    let constant = LambdaMor::from_delta(DeltaMor::new(0, vec![0; n + 1])?);
    let mut cube = Vec::with_capacity(full as usize);
    for s in 0..full {
        let image: BTreeSet<u32> = if s == 0 {
            x_minus_one.iter().map(|&e| x.act(&constant, e)).collect::<Result<_>>()?
        } else {
            x.morphism_table(&round_down(n, s)?)?.into_iter().collect()
        };
        cube.push((s, image));
    }
    Ok(LatchingData { level: n, simplicial, cyclic, cube, x_minus_one })
}

impl LatchingData {
    pub fn subset(&self, s: u32) -> &BTreeSet<u32> {
        &self.cube[s as usize].1
    }

    pub fn verify(&self, x: &TruncatedCyclicSet) -> Result<LatchingReport> {
        let n = self.level;
        let level = x.level(n)?;
        let cyclic_is_t_closure = (n > 0).then(|| {
            let mut closure = self.simplicial.clone();
            let mut frontier: Vec<u32> = closure.iter().copied().collect();
            while let Some(e) = frontier.pop() {
                let t = level.cycle[e as usize];
                if closure.insert(t) {
                    frontier.push(t);
                }
            }
            closure == self.cyclic
        });
        let mut intersection_law = true;
        for (s, xs) in &self.cube {
            for (t, xt) in &self.cube {
                let meet: BTreeSet<u32> = xs.intersection(xt).copied().collect();
                if meet != *self.subset(s & t) {
                    intersection_law = false;
                }
            }
        }
        let union: BTreeSet<u32> = self.cube.iter().flat_map(|(_, v)| v.iter().copied()).collect();
        let collapses: Vec<Vec<u32>> = (0..=n).map(|i| x.morphism_table(&collapse(n, i)?)).collect::<Result<_>>()?;
        let mut cube_is_fixed_set_of_collapses = true;
        for (s, xs) in &self.cube {
            let fixed: BTreeSet<u32> = (0..level.size() as u32)
                .filter(|&e| (0..=n).filter(|i| s >> i & 1 == 0).all(|i| collapses[i][e as usize] == e))
                .collect();
            if fixed != *xs {
                cube_is_fixed_set_of_collapses = false;
            }
        }
        let mut x_minus_one_image_well_defined = true;
        let mut images = Vec::new();
        for f in enumerate_lambda(n, 0, u128::MAX)? {
            let image: Vec<u32> = self.x_minus_one.iter().map(|&e| x.act(&f, e)).collect::<Result<_>>()?;
            images.push(image);
        }
        if images.windows(2).any(|w| w[0] != w[1]) {
            x_minus_one_image_well_defined = false;
        }
        let pushed: BTreeSet<u32> = images[0].iter().copied().collect();
        Ok(LatchingReport {
            level: n,
            simplicial_in_cyclic: self.simplicial.is_subset(&self.cyclic),
            cyclic_is_t_closure,
            intersection_law,
            union_is_cyclic_latching: if n == 0 { union == pushed } else { union == self.cyclic },
            cube_is_fixed_set_of_collapses: (n > 0).then_some(cube_is_fixed_set_of_collapses),
            x_minus_one_image_well_defined,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::truncated::standard_cyclic_simplex;

    #[test]
    fn round_down_examples() {
        let full = round_down(2, 0b111).unwrap();
        assert!(full.is_identity());
        let r = round_down(2, 0b010).unwrap();
        assert_eq!(r.target(), 0);
        assert_eq!(r.values(), vec![0, 1, 1]);
    }

    #[test]
    fn lambda_zero_level_one() {
        let x = standard_cyclic_simplex(0, 2).unwrap();
        let l = latching(&x, 1).unwrap();
        assert_eq!(l.simplicial.len(), 1);
        assert_eq!(l.cyclic.len(), 2);
        assert!(l.verify(&x).unwrap().all_hold());
    }
}
