use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::model::{CyclicModel, DEFAULT_MAX_CELLS};
use crate::error::{cap_check, Error, Result};
use crate::lambda::{enumerate_lambda, hom_count, LambdaMor, MorphismKind};

/// Identifies `left_map ∈ Λ[n_left]_level` with `right_map ∈ Λ[n_right]_level`,
/// i.e. glues along two maps out of `Λ[level]`. Maps are given by a sample
/// `f(0), ..., f(level)` of their function model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub left: usize,
    pub right: usize,
    pub level: usize,
    pub left_map: Vec<i64>,
    pub right_map: Vec<i64>,
}

/// A finite colimit of standard cyclic simplices: a coproduct of `Λ[n_i]`
/// modulo relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub representables: Vec<usize>,
    #[serde(default)]
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn validate(&self) -> Result<Vec<(usize, LambdaMor, usize, LambdaMor)>> {
        if self.representables.is_empty() {
            return Err(Error::InvalidInput("at least one representable is required".into()));
        }
        self.relations
            .iter()
            .enumerate()
            .map(|(k, r)| {
                let count = self.representables.len();
                if r.left >= count || r.right >= count {
                    return Err(Error::InvalidInput(format!("relation {k}: summand index out of range")));
                }
                let parse = |sample: &[i64], target: usize| {
                    if sample.len() != r.level + 1 {
                        return Err(Error::InvalidInput(format!(
                            "relation {k}: a map out of [{}] needs {} values",
                            r.level,
                            r.level + 1
                        )));
                    }
                    LambdaMor::normal_form(sample, target)
                        .map_err(|e| Error::InvalidInput(format!("relation {k}: {e}")))
                };
                let u = parse(&r.left_map, self.representables[r.left])?;
                let v = parse(&r.right_map, self.representables[r.right])?;
                Ok((r.left, u, r.right, v))
            })
            .collect()
    }

    /// A random presentation: 1 to `max_summands` simplices of dimension at
    /// most `max_n`, glued along up to `max_relations` random pairs of maps.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_summands: usize, max_n: usize, max_relations: usize) -> Self {
        let count = rng.gen_range(1..=max_summands);
        let representables: Vec<usize> = (0..count).map(|_| rng.gen_range(0..=max_n)).collect();
        let relations = (0..rng.gen_range(0..=max_relations))
            .map(|_| {
                let left = rng.gen_range(0..count);
                let right = rng.gen_range(0..count);
                let level = rng.gen_range(0..=max_n);
                let pick = |rng: &mut R, target: usize| {
                    let all = enumerate_lambda(level, target, u128::MAX).expect("small");
                    all[rng.gen_range(0..all.len())].values()
                };
                let left_map = pick(rng, representables[left]);
                let right_map = pick(rng, representables[right]);
                Relation { left, right, level, left_map, right_map }
            })
            .collect();
        Self { representables, relations }
    }
}

type Cell = (u32, LambdaMor);

struct ColimitLevel {
    canonical: HashMap<Cell, Cell>,
    reps: Vec<Cell>,
}

/// Cyclic set presented as a colimit of representables. Each element is the
/// least `(summand, map)` pair of its equivalence class.
pub struct Colimit {
    presentation: Presentation,
    relations: Vec<(usize, LambdaMor, usize, LambdaMor)>,
    cap: u128,
    cache: RwLock<BTreeMap<usize, Arc<ColimitLevel>>>,
}

impl std::fmt::Debug for Colimit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Colimit").field("presentation", &self.presentation).finish()
    }
}

impl Colimit {
    pub fn new(presentation: Presentation) -> Result<Self> {
        let relations = presentation.validate()?;
        Ok(Self { presentation, relations, cap: DEFAULT_MAX_CELLS, cache: RwLock::new(BTreeMap::new()) })
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    fn level_data(&self, k: usize) -> Result<Arc<ColimitLevel>> {
        if let Some(l) = self.cache.read().expect("lock").get(&k) {
            return Ok(l.clone());
        }
        let total: u128 = self
            .presentation
            .representables
            .iter()
            .map(|&n| hom_count(MorphismKind::Lambda, k, n))
            .sum();
        cap_check("colimit cells", total, self.cap)?;
        let mut cells: Vec<Cell> = Vec::new();
        for (i, &n) in self.presentation.representables.iter().enumerate() {
            for g in enumerate_lambda(k, n, self.cap)? {
                cells.push((i as u32, g));
            }
        }
        let index: HashMap<Cell, usize> = cells.iter().cloned().enumerate().map(|(p, c)| (c, p)).collect();
        let mut parent: Vec<usize> = (0..cells.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (i, u, j, v) in &self.relations {
            for h in enumerate_lambda(k, u.source(), self.cap)? {
                let a = index[&(*i as u32, u.compose(&h)?)];
                let b = index[&(*j as u32, v.compose(&h)?)];
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        // Roots are not necessarily minimal; pick the least cell of each class.
        let mut least: HashMap<usize, usize> = HashMap::new();
        for p in 0..cells.len() {
            let root = find(&mut parent, p);
            let e = least.entry(root).or_insert(p);
            if cells[p] < cells[*e] {
                *e = p;
            }
        }
        let mut canonical = HashMap::with_capacity(cells.len());
        for p in 0..cells.len() {
            let root = find(&mut parent, p);
            canonical.insert(cells[p].clone(), cells[least[&root]].clone());
        }
        let mut reps: Vec<Cell> = least.values().map(|&p| cells[p].clone()).collect();
        reps.sort();
        let data = Arc::new(ColimitLevel { canonical, reps });
        self.cache.write().expect("lock").insert(k, data.clone());
        Ok(data)
    }
}

impl CyclicModel for Colimit {
    type Elem = Cell;

    fn level(&self, n: usize) -> Result<Vec<Cell>> {
        Ok(self.level_data(n)?.reps.clone())
    }

    fn act(&self, f: &LambdaMor, x: &Cell) -> Cell {
        let raw = (x.0, x.1.compose(f).expect("levels checked by caller"));
        self.level_data(f.source()).expect("level within caps").canonical[&raw].clone()
    }

    fn label(&self, x: &Cell) -> String {
        format!("{}:{:?}", x.0, x.1.values())
    }

    fn dimension_bound(&self) -> Option<usize> {
        self.presentation.representables.iter().max().map(|n| n + 1)
    }

    fn describe(&self) -> String {
        format!(
            "colimit of Λ{:?} with {} relations",
            self.presentation.representables,
            self.presentation.relations.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_representable_is_unchanged() {
        let c = Colimit::new(Presentation { representables: vec![1], relations: vec![] }).unwrap();
        assert_eq!(c.level(2).unwrap().len(), enumerate_lambda(2, 1, u128::MAX).unwrap().len());
    }

    #[test]
    fn gluing_two_points() {
        // Λ[0] ⊔ Λ[0] with the two identity vertices identified is Λ[0].
        let rel = Relation { left: 0, right: 1, level: 0, left_map: vec![0], right_map: vec![0] };
        let c = Colimit::new(Presentation { representables: vec![0, 0], relations: vec![rel] }).unwrap();
        for k in 0..4 {
            assert_eq!(c.level(k).unwrap().len(), k + 1);
        }
    }

    #[test]
    fn bad_relation_rejected() {
        let rel = Relation { left: 0, right: 3, level: 0, left_map: vec![0], right_map: vec![0] };
        assert!(Colimit::new(Presentation { representables: vec![0], relations: vec![rel] }).is_err());
        let rel = Relation { left: 0, right: 0, level: 1, left_map: vec![0], right_map: vec![0] };
        assert!(Colimit::new(Presentation { representables: vec![0], relations: vec![rel] }).is_err());
    }
}
