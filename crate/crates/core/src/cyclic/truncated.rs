use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use rand::Rng;
use serde::Serialize;

use super::model::CyclicModel;
use crate::chain::SimplicialData;
use crate::error::{Error, Result};
use crate::lambda::{enumerate_lambda, to_generator_word, Atom, Generator, GeneratorWord, LambdaMor};

/// Generator tables of one level `X_n`.
///
/// `faces[i] = d_i : X_n -> X_{n-1}`; `degeneracies[i] = s_i : X_{n-1} -> X_n`
/// for `0 <= i <= n`, the last being the extra degeneracy; `cycle = t_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Level {
    pub labels: Vec<String>,
    pub faces: Vec<Vec<u32>>,
    pub degeneracies: Vec<Vec<u32>>,
    pub cycle: Vec<u32>,
    #[serde(skip)]
    cycle_inverse: Vec<u32>,
}

impl Level {
    pub fn new(labels: Vec<String>, faces: Vec<Vec<u32>>, degeneracies: Vec<Vec<u32>>, cycle: Vec<u32>) -> Self {
        let mut cycle_inverse = vec![0; cycle.len()];
        for (x, &y) in cycle.iter().enumerate() {
            cycle_inverse[y as usize] = x as u32;
        }
        Self { labels, faces, degeneracies, cycle, cycle_inverse }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn cycle_inverse(&self) -> &[u32] {
        &self.cycle_inverse
    }
}

/// Produces levels on demand.
pub trait LevelSource: Send + Sync {
    fn build(&self, n: usize) -> Result<Level>;
    fn dimension_bound(&self) -> Option<usize>;
    fn describe(&self) -> String;
    /// Acts through the underlying model, bypassing generator tables.
    fn act_direct(&self, _f: &LambdaMor, _x: u32) -> Option<Result<u32>> {
        None
    }
}

/// Materializes the levels of a [`CyclicModel`], numbering elements by
/// their position in the sorted level.
pub struct ModelSource<M: CyclicModel> {
    model: M,
    elements: RwLock<BTreeMap<usize, Arc<Vec<M::Elem>>>>,
}

impl<M: CyclicModel> ModelSource<M> {
    pub fn new(model: M) -> Self {
        Self { model, elements: RwLock::new(BTreeMap::new()) }
    }

    pub fn model(&self) -> &M {
        &self.model
    }

    pub fn elements(&self, n: usize) -> Result<Arc<Vec<M::Elem>>> {
        if let Some(e) = self.elements.read().expect("lock").get(&n) {
            return Ok(e.clone());
        }
        let level = Arc::new(self.model.level(n)?);
        debug_assert!(level.windows(2).all(|w| w[0] < w[1]));
        self.elements.write().expect("lock").entry(n).or_insert(level.clone());
        Ok(level)
    }

    fn id_of(&self, n: usize, x: &M::Elem) -> Result<u32> {
        let level = self.elements(n)?;
        level
            .binary_search(x)
            .map(|p| p as u32)
            .map_err(|_| Error::InvalidInput(format!("{} is not an element of level {n}", self.model.label(x))))
    }

    fn table(&self, f: &LambdaMor) -> Result<Vec<u32>> {
        let from = self.elements(f.target())?;
        from.iter().map(|x| self.id_of(f.source(), &self.model.act(f, x))).collect()
    }
}

impl<M: CyclicModel> LevelSource for ModelSource<M> {
    fn build(&self, n: usize) -> Result<Level> {
        let elems = self.elements(n)?;
        let labels = elems.iter().map(|x| self.model.label(x)).collect();
        let mut faces = Vec::new();
        let mut degeneracies = Vec::new();
        if n > 0 {
            for i in 0..=n {
                faces.push(self.table(&LambdaMor::coface(n, i)?)?);
            }
            for i in 0..n {
                degeneracies.push(self.table(&LambdaMor::codegeneracy(n - 1, i)?)?);
            }
            degeneracies.push(self.table(&LambdaMor::extra_degeneracy(n - 1))?);
        }
        let cycle = self.table(&LambdaMor::tau(n))?;
        Ok(Level::new(labels, faces, degeneracies, cycle))
    }

    fn dimension_bound(&self) -> Option<usize> {
        self.model.dimension_bound()
    }

    fn describe(&self) -> String {
        self.model.describe()
    }

    fn act_direct(&self, f: &LambdaMor, x: u32) -> Option<Result<u32>> {
        Some(self.elements(f.target()).and_then(|level| {
            let e = level.get(x as usize).ok_or_else(|| Error::InvalidInput(format!("no element {x}")))?;
            self.id_of(f.source(), &self.model.act(f, e))
        }))
    }
}

/// A cyclic set presented on levels `0..=N` by generator tables, with an
/// optional source that extends it on demand. Levels, once built, never change.
pub struct TruncatedCyclicSet {
    name: String,
    truncation: usize,
    source: Option<Arc<dyn LevelSource>>,
    levels: RwLock<Vec<Arc<Level>>>,
    dimension_bound: Option<usize>,
}

impl std::fmt::Debug for TruncatedCyclicSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TruncatedCyclicSet")
            .field("name", &self.name)
            .field("truncation", &self.truncation)
            .field("built", &self.levels.read().expect("lock").len())
            .finish()
    }
}

impl TruncatedCyclicSet {
    /// Builds levels `0..=truncation` of a model and keeps the model as a lazy source.
    pub fn from_model<M: CyclicModel + 'static>(model: M, truncation: usize) -> Result<Self> {
        let name = model.describe();
        let source: Arc<dyn LevelSource> = Arc::new(ModelSource::new(model));
        Self::from_source(name, source, truncation)
    }

    pub fn from_source(name: String, source: Arc<dyn LevelSource>, truncation: usize) -> Result<Self> {
        let x = Self {
            name,
            truncation,
            dimension_bound: source.dimension_bound(),
            source: Some(source),
            levels: RwLock::new(Vec::new()),
        };
        x.level(truncation)?;
        Ok(x)
    }

    /// A fully materialized object without a generator.
    pub fn from_levels(name: String, levels: Vec<Level>, dimension_bound: Option<usize>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidInput("at least level 0 is required".into()));
        }
        let x = Self {
            name,
            truncation: levels.len() - 1,
            source: None,
            levels: RwLock::new(levels.into_iter().map(Arc::new).collect()),
            dimension_bound,
        };
        x.check_shapes()?;
        Ok(x)
    }

    fn check_shapes(&self) -> Result<()> {
        let levels = self.levels.read().expect("lock").clone();
        for (n, l) in levels.iter().enumerate() {
            let faces_ok = if n == 0 { l.faces.is_empty() } else { l.faces.len() == n + 1 };
            let degs_ok = if n == 0 { l.degeneracies.is_empty() } else { l.degeneracies.len() == n + 1 };
            let sizes_ok = l.cycle.len() == l.size()
                && l.faces.iter().all(|f| f.len() == l.size() && f.iter().all(|&y| (y as usize) < levels[n - 1].size()))
                && l.degeneracies
                    .iter()
                    .all(|s| s.len() == levels[n - 1].size() && s.iter().all(|&y| (y as usize) < l.size()));
            if !(faces_ok && degs_ok && sizes_ok) {
                return Err(Error::InvalidInput(format!("malformed generator tables at level {n}")));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn dimension_bound(&self) -> Option<usize> {
        self.dimension_bound
    }

    pub fn has_generator(&self) -> bool {
        self.source.is_some()
    }

    pub fn source(&self) -> Option<&Arc<dyn LevelSource>> {
        self.source.as_ref()
    }

    /// Level `n`, generating it (and all lower levels) if needed.
    pub fn level(&self, n: usize) -> Result<Arc<Level>> {
        if let Some(l) = self.levels.read().expect("lock").get(n) {
            return Ok(l.clone());
        }
        let Some(source) = &self.source else {
            let available = self.levels.read().expect("lock").len() - 1;
            return Err(Error::TruncationTooSmall { needed: n, available });
        };
        let mut levels = self.levels.write().expect("lock");
        while levels.len() <= n {
            let built = source.build(levels.len())?;
            levels.push(Arc::new(built));
        }
        Ok(levels[n].clone())
    }

    pub fn size(&self, n: usize) -> Result<usize> {
        Ok(self.level(n)?.size())
    }

    /// Highest level built so far.
    pub fn built_level(&self) -> usize {
        self.levels.read().expect("lock").len() - 1
    }

    pub fn apply_atom(&self, atom: &Atom, x: u32) -> Result<u32> {
        let n = atom.target;
        Ok(match atom.generator {
            Generator::Face(i) => self.level(n)?.faces[i][x as usize],
            Generator::Degeneracy(i) => self.level(n + 1)?.degeneracies[i][x as usize],
            Generator::Tau => self.level(n)?.cycle[x as usize],
            Generator::TauInverse => self.level(n)?.cycle_inverse()[x as usize],
        })
    }

    /// `X(w)(x)`: the operators of the atoms applied left to right.
    pub fn act_word(&self, w: &GeneratorWord, x: u32) -> Result<u32> {
        let size = self.size(w.target())?;
        if x as usize >= size {
            return Err(Error::InvalidInput(format!("no element {x} at level {}", w.target())));
        }
        w.atoms().iter().try_fold(x, |acc, a| self.apply_atom(a, acc))
    }

    pub fn act(&self, f: &LambdaMor, x: u32) -> Result<u32> {
        self.act_word(&to_generator_word(f), x)
    }

    /// `X(f)` as a table indexed by the elements of `X_{f.target()}`.
    pub fn morphism_table(&self, f: &LambdaMor) -> Result<Vec<u32>> {
        let w = to_generator_word(f);
        (0..self.size(f.target())? as u32).map(|x| self.act_word(&w, x)).collect()
    }

    /// `X_{-1}`: elements of `X_0` on which `s_0` and the extra degeneracy agree.
    pub fn x_minus_one(&self) -> Result<Vec<u32>> {
        let l1 = self.level(1)?;
        Ok((0..self.size(0)? as u32)
            .filter(|&x| l1.degeneracies[0][x as usize] == l1.degeneracies[1][x as usize])
            .collect())
    }

    /// Checks `t_n^{n+1} = id` on every built level.
    pub fn check_cycle_order(&self) -> Result<()> {
        for n in 0..=self.truncation {
            let l = self.level(n)?;
            for x in 0..l.size() as u32 {
                let y = (0..=n).fold(x, |acc, _| l.cycle[acc as usize]);
                if y != x {
                    return Err(Error::InvalidInput(format!("t_{n}^{} moves element {x}", n + 1)));
                }
            }
        }
        Ok(())
    }

    /// Random morphisms into levels `<= truncation`, each acted on through two
    /// different generator words and, when available, through the model.
    /// Returns the first disagreement.
    pub fn check_factorization_independence<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        trials: usize,
    ) -> Result<Option<FunctorialityFailure>> {
        let top = self.truncation;
        for _ in 0..trials {
            let (m, k, n) = (rng.gen_range(0..=top), rng.gen_range(0..=top), rng.gen_range(0..=top));
            let fs = enumerate_lambda(m, k, u128::MAX)?;
            let gs = enumerate_lambda(k, n, u128::MAX)?;
            let f = &fs[rng.gen_range(0..fs.len())];
            let g = &gs[rng.gen_range(0..gs.len())];
            let size = self.size(n)?;
            if size == 0 {
                continue;
            }
            let x = rng.gen_range(0..size as u32);
            let gf = g.compose(f)?;
            let a = self.act_word(&to_generator_word(&gf), x)?;
            let b = self.act_word(&GeneratorWord::randomized(&gf, rng), x)?;
            let c = self.act(f, self.act(g, x)?)?;
            let d = match self.source.as_ref().and_then(|s| s.act_direct(&gf, x)) {
                Some(r) => r?,
                None => a,
            };
            if a != b || a != c || a != d {
                return Ok(Some(FunctorialityFailure { f: f.clone(), g: g.clone(), element: x, results: [a, b, c, d] }));
            }
        }
        Ok(None)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctorialityFailure {
    pub f: LambdaMor,
    pub g: LambdaMor,
    pub element: u32,
    /// canonical word, random word, `X(f)X(g)`, model action
    pub results: [u32; 4],
}

impl SimplicialData for TruncatedCyclicSet {
    fn available_level(&self) -> usize {
        if self.source.is_some() {
            usize::MAX
        } else {
            self.truncation
        }
    }

    fn level_size(&self, n: usize) -> Result<usize> {
        self.size(n)
    }

    fn face(&self, n: usize, i: usize) -> Result<Vec<u32>> {
        Ok(self.level(n)?.faces[i].clone())
    }

    fn degeneracy(&self, n: usize, i: usize) -> Result<Vec<u32>> {
        Ok(self.level(n)?.degeneracies[i].clone())
    }

    fn dimension_bound(&self) -> Option<usize> {
        self.dimension_bound
    }
}

pub fn standard_cyclic_simplex(n: usize, truncation: usize) -> Result<TruncatedCyclicSet> {
    TruncatedCyclicSet::from_model(super::model::Representable::new(n), truncation)
}

pub fn point(truncation: usize) -> Result<TruncatedCyclicSet> {
    TruncatedCyclicSet::from_model(super::model::Point, truncation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lambda_zero_levels_and_cycle() {
        let x = standard_cyclic_simplex(0, 3).unwrap();
        assert_eq!(x.size(3).unwrap(), 4);
        x.check_cycle_order().unwrap();
        assert!(x.x_minus_one().unwrap().is_empty());
    }

    #[test]
    fn lazy_generation_extends() {
        let x = standard_cyclic_simplex(1, 1).unwrap();
        assert_eq!(x.built_level(), 1);
        assert_eq!(x.size(3).unwrap(), 4 * 5);
        assert_eq!(x.built_level(), 3);
    }

    #[test]
    fn point_has_point_x_minus_one() {
        let p = point(2).unwrap();
        assert_eq!(p.x_minus_one().unwrap(), vec![0]);
    }

    #[test]
    fn tau_acts_as_cycle() {
        let x = standard_cyclic_simplex(2, 3).unwrap();
        for n in 0..=3 {
            assert_eq!(x.morphism_table(&LambdaMor::tau(n)).unwrap(), x.level(n).unwrap().cycle);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(x.check_factorization_independence(&mut rng, 100).unwrap(), None);
    }

    #[test]
    fn materialized_without_source_is_bounded() {
        let x = standard_cyclic_simplex(0, 2).unwrap();
        let levels = (0..=2).map(|n| (*x.level(n).unwrap()).clone()).collect();
        let y = TruncatedCyclicSet::from_levels("copy".into(), levels, Some(1)).unwrap();
        assert!(matches!(y.level(3), Err(Error::TruncationTooSmall { .. })));
    }
}
