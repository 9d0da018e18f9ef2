use std::sync::Arc;

use serde::Serialize;

use super::truncated::{Level, TruncatedCyclicSet};
use crate::chain::SimplicialData;
use crate::error::{Error, Result};
use crate::lambda::{sd_on_morphism, to_generator_word, DeltaMor, LambdaMor, RCyclicMor};

/// Generator tables of one level of an r-cyclic object.
///
/// As in [`Level`], plus the `C_r` generator `rotation`; `cycle` is the
/// r-cyclic operator of order `r(n+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RLevel {
    pub labels: Vec<String>,
    pub faces: Vec<Vec<u32>>,
    pub degeneracies: Vec<Vec<u32>>,
    pub cycle: Vec<u32>,
    pub rotation: Vec<u32>,
}

/// `sd_r X` on levels `0..=N`, with level `k` equal to `X_{r(k+1)-1}` (same ids).
#[derive(Debug)]
pub struct RCyclicTruncatedObject {
    r: usize,
    truncation: usize,
    base: Arc<TruncatedCyclicSet>,
    levels: Vec<RLevel>,
}

/// Edgewise subdivision. Needs `X` through level `r(N+1)-1`, generating it
/// lazily where possible.
pub fn subdivide(x: &Arc<TruncatedCyclicSet>, r: usize, truncation: usize) -> Result<RCyclicTruncatedObject> {
    if r == 0 {
        return Err(Error::InvalidInput("r must be at least 1".into()));
    }
    let needed = r * (truncation + 1) - 1;
    if !x.has_generator() && needed > x.truncation() {
        return Err(Error::TruncationTooSmall { needed, available: x.truncation() });
    }
    let big = |f: &RCyclicMor| f.to_lambda();
    let mut levels = Vec::with_capacity(truncation + 1);
    for k in 0..=truncation {
        let base_level = x.level(r * (k + 1) - 1)?;
        let mut faces = Vec::new();
        let mut degeneracies = Vec::new();
        if k > 0 {
            for i in 0..=k {
                let d = LambdaMor::from_delta(sd_on_morphism(r, &DeltaMor::coface(k, i)?)?);
                faces.push(x.morphism_table(&d)?);
            }
            for i in 0..k {
                let s = LambdaMor::from_delta(sd_on_morphism(r, &DeltaMor::codegeneracy(k - 1, i)?)?);
                degeneracies.push(x.morphism_table(&s)?);
            }
            degeneracies.push(x.morphism_table(&big(&extra_degeneracy(r, k - 1)?))?);
        }
        let cycle = x.morphism_table(&big(&cycle_map(r, k)?))?;
        let rotation = x.morphism_table(&big(&RCyclicMor::rotation_generator(r, k)?))?;
        levels.push(RLevel { labels: base_level.labels.clone(), faces, degeneracies, cycle, rotation });
    }
    Ok(RCyclicTruncatedObject { r, truncation, base: x.clone(), levels })
}

/// `x |-> x - 1` on `[k]` in `Λ_r`.
fn cycle_map(r: usize, k: usize) -> Result<RCyclicMor> {
    RCyclicMor::new(r, k, (0..=k as i64).map(|x| x - 1).collect())
}

/// The extra degeneracy `[n+1] -> [n]` in `Λ_r`.
fn extra_degeneracy(r: usize, n: usize) -> Result<RCyclicMor> {
    RCyclicMor::new(r, n, (0..=n as i64 + 1).collect())
}

impl RCyclicTruncatedObject {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn level(&self, k: usize) -> Result<&RLevel> {
        self.levels.get(k).ok_or(Error::TruncationTooSmall { needed: k, available: self.truncation })
    }

    pub fn base(&self) -> &Arc<TruncatedCyclicSet> {
        &self.base
    }

    /// Acts through the underlying cyclic object.
    pub fn act(&self, f: &RCyclicMor, x: u32) -> Result<u32> {
        if f.target() > self.truncation || f.source() > self.truncation {
            return Err(Error::TruncationTooSmall { needed: f.target().max(f.source()), available: self.truncation });
        }
        self.base.act(&f.to_lambda(), x)
    }

    /// Acts through the r-cyclic generator tables: `f = sd_r(δ) ∘ τ^J`, so
    /// `X(f) = t^J ∘ X(sd_r δ)`.
    pub fn act_by_generators(&self, f: &RCyclicMor, x: u32) -> Result<u32> {
        let big = f.to_lambda();
        let small: Vec<usize> = big.delta().values()[..=f.source()].to_vec();
        let delta = DeltaMor::new(f.target(), small)?;
        if &sd_on_morphism(self.r, &delta)? != big.delta() {
            return Err(Error::InvalidMorphism(format!("{big} is not a subdivided map followed by a rotation")));
        }
        let word = to_generator_word(&LambdaMor::from_delta(delta));
        let mut y = x;
        for atom in word.atoms() {
            let n = atom.target;
            y = match atom.generator {
                crate::lambda::Generator::Face(i) => self.level(n)?.faces[i][y as usize],
                crate::lambda::Generator::Degeneracy(i) => self.level(n + 1)?.degeneracies[i][y as usize],
                _ => unreachable!("simplicial words have no cycle atoms"),
            };
        }
        let cycle = &self.level(f.source())?.cycle;
        for _ in 0..big.rot() {
            y = cycle[y as usize];
        }
        Ok(y)
    }

    /// `C_r` acts with order dividing `r` and commutes with faces,
    /// degeneracies and the cycle operator.
    pub fn check_rotation(&self) -> Result<()> {
        for (k, l) in self.levels.iter().enumerate() {
            for x in 0..l.labels.len() {
                let y = (0..self.r).fold(x as u32, |acc, _| l.rotation[acc as usize]);
                if y as usize != x {
                    return Err(Error::InvalidInput(format!("C_{} generator has wrong order at level {k}", self.r)));
                }
                if l.rotation[l.cycle[x] as usize] != l.cycle[l.rotation[x] as usize] {
                    return Err(Error::InvalidInput(format!("rotation and cycle do not commute at level {k}")));
                }
                for (i, face) in l.faces.iter().enumerate() {
                    let below = &self.levels[k - 1].rotation;
                    if below[face[x] as usize] != face[l.rotation[x] as usize] {
                        return Err(Error::InvalidInput(format!("rotation and d_{i} do not commute at level {k}")));
                    }
                }
            }
            if k > 0 {
                let below = &self.levels[k - 1];
                for (i, s) in l.degeneracies.iter().enumerate() {
                    for y in 0..below.labels.len() {
                        if l.rotation[s[y] as usize] != s[below.rotation[y] as usize] {
                            return Err(Error::InvalidInput(format!("rotation and s_{i} do not commute at level {k}")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Levelwise `C_r`-fixed elements, as base ids.
    pub fn fixed_ids(&self, k: usize) -> Result<Vec<u32>> {
        let l = self.level(k)?;
        Ok((0..l.labels.len() as u32).filter(|&x| l.rotation[x as usize] == x).collect())
    }
}

impl SimplicialData for RCyclicTruncatedObject {
    fn available_level(&self) -> usize {
        self.truncation
    }

    fn level_size(&self, n: usize) -> Result<usize> {
        Ok(self.level(n)?.labels.len())
    }

    fn face(&self, n: usize, i: usize) -> Result<Vec<u32>> {
        Ok(self.level(n)?.faces[i].clone())
    }

    fn degeneracy(&self, n: usize, i: usize) -> Result<Vec<u32>> {
        Ok(self.level(n)?.degeneracies[i].clone())
    }

    fn dimension_bound(&self) -> Option<usize> {
        None
    }
}

/// The fixed cyclic object `(sd_r X)^{C_r}`: levelwise fixed elements with
/// operators restricted from lifts along `Λ_r -> Λ`.
pub fn fixed_points(y: &RCyclicTruncatedObject) -> Result<TruncatedCyclicSet> {
    let mut ids: Vec<Vec<u32>> = Vec::with_capacity(y.truncation + 1);
    let mut position: Vec<Vec<Option<u32>>> = Vec::with_capacity(y.truncation + 1);
    for k in 0..=y.truncation {
        let fixed = y.fixed_ids(k)?;
        let mut pos = vec![None; y.level(k)?.labels.len()];
        for (p, &x) in fixed.iter().enumerate() {
            pos[x as usize] = Some(p as u32);
        }
        ids.push(fixed);
        position.push(pos);
    }
    let restrict = |table: &[u32], from: &[u32], to: &[Option<u32>]| -> Result<Vec<u32>> {
        from.iter()
            .map(|&x| to[table[x as usize] as usize].ok_or_else(|| Error::InvalidInput("operator leaves the fixed points".into())))
            .collect()
    };
    let mut levels = Vec::with_capacity(y.truncation + 1);
    for k in 0..=y.truncation {
        let l = y.level(k)?;
        let labels = ids[k].iter().map(|&x| l.labels[x as usize].clone()).collect();
        let faces = l.faces.iter().map(|f| restrict(f, &ids[k], &position[k - 1])).collect::<Result<_>>()?;
        let degeneracies = l
            .degeneracies
            .iter()
            .map(|s| restrict(s, &ids[k - 1], &position[k]))
            .collect::<Result<_>>()?;
        let cycle = restrict(&l.cycle, &ids[k], &position[k])?;
        levels.push(Level::new(labels, faces, degeneracies, cycle));
    }
    TruncatedCyclicSet::from_levels(format!("(sd_{} {})^C_{}", y.r, y.base.name(), y.r), levels, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::truncated::standard_cyclic_simplex;

    #[test]
    fn sd_two_lambda_zero_level_zero() {
        let x = Arc::new(standard_cyclic_simplex(0, 1).unwrap());
        let y = subdivide(&x, 2, 2).unwrap();
        let l0 = y.level(0).unwrap();
        assert_eq!(l0.labels.len(), 2);
        assert_eq!(l0.rotation, vec![1, 0]);
        y.check_rotation().unwrap();
        let f = fixed_points(&y).unwrap();
        for k in 0..=2 {
            assert_eq!(f.size(k).unwrap(), 0);
        }
    }

    #[test]
    fn sd_one_is_identity() {
        let x = Arc::new(standard_cyclic_simplex(2, 4).unwrap());
        let y = subdivide(&x, 1, 4).unwrap();
        for k in 0..=4 {
            let a = y.level(k).unwrap();
            let b = x.level(k).unwrap();
            assert_eq!(a.faces, b.faces);
            assert_eq!(a.degeneracies, b.degeneracies);
            assert_eq!(a.cycle, b.cycle);
            assert!(a.rotation.iter().enumerate().all(|(i, &v)| i as u32 == v));
        }
    }
}
