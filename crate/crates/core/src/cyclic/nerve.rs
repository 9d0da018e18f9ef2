use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::model::{CyclicModel, DEFAULT_MAX_CELLS};
use crate::error::{cap_check, Error, Result};
use crate::lambda::LambdaMor;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteMonoid {
    pub elements: Vec<String>,
    /// `table[a][b] = a·b`.
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl FiniteMonoid {
    pub fn validate(&self) -> Result<()> {
        let n = self.elements.len();
        if n == 0 {
            return Err(Error::InvalidInput("a monoid needs at least one element".into()));
        }
        if self.identity >= n {
            return Err(Error::InvalidInput(format!("identity index {} out of range", self.identity)));
        }
        if self.table.len() != n || self.table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidInput(format!("multiplication table must be {n}x{n} with entries < {n}")));
        }
        for a in 0..n {
            if self.table[self.identity][a] != a || self.table[a][self.identity] != a {
                return Err(Error::NotUnital(a));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial() -> Self {
        Self { elements: vec!["e".into()], table: vec![vec![0]], identity: 0 }
    }

    pub fn cyclic_group(n: usize) -> Self {
        Self {
            elements: (0..n).map(|i| format!("g{i}")).collect(),
            table: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
            identity: 0,
        }
    }

    /// `S_3` as permutations of three letters, in lexicographic order of
    /// their one-line notation; `a·b` applies `b` first.
    pub fn symmetric_group_3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).expect("closed under composition");
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        Self {
            elements: perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect(),
            table,
            identity: 0,
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let m: Self = serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("monoid: {e}")))?;
        m.validate()?;
        Ok(m)
    }

    /// The one-object category with composition "`a` then `b`" = `a·b`.
    pub fn to_category(&self) -> FiniteCategory {
        let n = self.elements.len();
        FiniteCategory {
            objects: vec!["*".into()],
            morphisms: self
                .elements
                .iter()
                .map(|name| ArrowSpec { name: name.clone(), source: 0, target: 0 })
                .collect(),
            compose: (0..n).map(|a| (0..n).map(|b| Some(self.table[a][b])).collect()).collect(),
            identities: vec![self.identity],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<ArrowSpec>,
    /// `compose[f][g]` is "`f` then `g`", defined iff `target(f) = source(g)`.
    pub compose: Vec<Vec<Option<usize>>>,
    /// Identity arrow of each object.
    pub identities: Vec<usize>,
}

impl FiniteCategory {
    pub fn validate(&self) -> Result<()> {
        let (no, nm) = (self.objects.len(), self.morphisms.len());
        if no == 0 {
            return Err(Error::InvalidInput("a category needs at least one object".into()));
        }
        if self.morphisms.iter().any(|a| a.source >= no || a.target >= no) {
            return Err(Error::InvalidInput("arrow endpoint out of range".into()));
        }
        if self.identities.len() != no || self.identities.iter().any(|&i| i >= nm) {
            return Err(Error::InvalidInput("one identity arrow per object required".into()));
        }
        if self.compose.len() != nm || self.compose.iter().any(|r| r.len() != nm) {
            return Err(Error::InvalidInput(format!("composition table must be {nm}x{nm}")));
        }
        for f in 0..nm {
            for g in 0..nm {
                let composable = self.morphisms[f].target == self.morphisms[g].source;
                match (composable, self.compose[f][g]) {
                    (true, Some(h)) => {
                        if h >= nm
                            || self.morphisms[h].source != self.morphisms[f].source
                            || self.morphisms[h].target != self.morphisms[g].target
                        {
                            return Err(Error::InvalidInput(format!("composite of {f} and {g} has wrong endpoints")));
                        }
                    }
                    (false, None) => {}
                    _ => return Err(Error::InvalidInput(format!("composite of {f} and {g} defined inconsistently"))),
                }
            }
        }
        for (c, &id) in self.identities.iter().enumerate() {
            if self.morphisms[id].source != c || self.morphisms[id].target != c {
                return Err(Error::NotUnital(id));
            }
            for f in 0..nm {
                if self.morphisms[f].source == c && self.compose[id][f] != Some(f) {
                    return Err(Error::NotUnital(f));
                }
                if self.morphisms[f].target == c && self.compose[f][id] != Some(f) {
                    return Err(Error::NotUnital(f));
                }
            }
        }
        for a in 0..nm {
            for b in 0..nm {
                let Some(ab) = self.compose[a][b] else { continue };
                for c in 0..nm {
                    let Some(bc) = self.compose[b][c] else { continue };
                    if self.compose[ab][c] != self.compose[a][bc] {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let c: Self = serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("category: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    /// The discrete category on `n` objects.
    pub fn discrete(n: usize) -> Self {
        Self {
            objects: (0..n).map(|i| format!("c{i}")).collect(),
            morphisms: (0..n).map(|i| ArrowSpec { name: format!("id{i}"), source: i, target: i }).collect(),
            compose: (0..n).map(|f| (0..n).map(|g| (f == g).then_some(f)).collect()).collect(),
            identities: (0..n).collect(),
        }
    }

    pub fn arrow_count(&self) -> usize {
        self.morphisms.len()
    }

    fn then(&self, f: u32, g: u32) -> u32 {
        self.compose[f as usize][g as usize].expect("composable arrows") as u32
    }

    fn source(&self, f: u32) -> usize {
        self.morphisms[f as usize].source
    }

    fn target(&self, f: u32) -> usize {
        self.morphisms[f as usize].target
    }
}

/// The cyclic nerve. An element of level `n` is a loop `(a_0, ..., a_n)` with
/// `a_0 : c_n -> c_0` and `a_j : c_{j-1} -> c_j`; a morphism `f` acts by
/// `X(f)(a)_k = a_{f(k-1)+1} ⋯ a_{f(k)}` (path order, indices mod `n+1`,
/// empty products are identities). So `d_0` merges `a_0 a_1` and `t` moves
/// `a_n` to the front.
#[derive(Clone, Debug)]
pub struct CyclicNerve {
    category: FiniteCategory,
    cap: u128,
}

impl CyclicNerve {
    pub fn new(category: FiniteCategory) -> Result<Self> {
        category.validate()?;
        Ok(Self { category, cap: DEFAULT_MAX_CELLS })
    }

    pub fn of_monoid(m: &FiniteMonoid) -> Result<Self> {
        m.validate()?;
        Self::new(m.to_category())
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }

    /// Loops of length `len`, lexicographically.
    fn loops(&self, len: usize) -> Result<Vec<Vec<u32>>> {
        let bound = (self.category.arrow_count() as u128).saturating_pow(len as u32);
        cap_check("cyclic nerve cells", bound, self.cap)?;
        let mut out = Vec::new();
        let mut cur: Vec<u32> = Vec::with_capacity(len);
        self.extend_loops(len, &mut cur, &mut out);
        Ok(out)
    }

    fn extend_loops(&self, len: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            if self.category.target(cur[len - 1]) == self.category.source(cur[0]) {
                out.push(cur.clone());
            }
            return;
        }
        for f in 0..self.category.arrow_count() as u32 {
            if let Some(&prev) = cur.last() {
                if self.category.target(prev) != self.category.source(f) {
                    continue;
                }
            }
            cur.push(f);
            self.extend_loops(len, cur, out);
            cur.pop();
        }
    }

    /// The `r`-fold repetition of a loop.
    pub fn repeat(x: &[u32], r: usize) -> Vec<u32> {
        x.iter().copied().cycle().take(x.len() * r).collect()
    }
}

impl CyclicModel for CyclicNerve {
    type Elem = Vec<u32>;

    fn level(&self, n: usize) -> Result<Vec<Vec<u32>>> {
        self.loops(n + 1)
    }

    fn act(&self, f: &LambdaMor, x: &Vec<u32>) -> Vec<u32> {
        let len = x.len() as i64;
        debug_assert_eq!(x.len(), f.target() + 1);
        let at = |j: i64| x[j.rem_euclid(len) as usize];
        (0..=f.source() as i64)
            .map(|k| {
                let (lo, hi) = (f.eval(k - 1) + 1, f.eval(k));
                if lo > hi {
                    let object = self.category.target(at(hi));
                    return self.category.identities[object] as u32;
                }
                (lo + 1..=hi).fold(at(lo), |acc, j| self.category.then(acc, at(j)))
            })
            .collect()
    }

    fn label(&self, x: &Vec<u32>) -> String {
        let names: Vec<&str> = x.iter().map(|&f| self.category.morphisms[f as usize].name.as_str()).collect();
        format!("({})", names.join(","))
    }

    fn dimension_bound(&self) -> Option<usize> {
        None
    }

    fn describe(&self) -> String {
        format!(
            "N^cyc of a category with {} objects and {} arrows",
            self.category.objects.len(),
            self.category.arrow_count()
        )
    }

    /// Loops invariant under rotation by `shift` are repetitions of loops of
    /// length `gcd(level + 1, shift)`.
    fn fixed_under_translation(&self, level: usize, shift: usize) -> Result<Vec<Vec<u32>>> {
        let len = level + 1;
        let g = len.gcd(&(shift % len));
        Ok(self.loops(g)?.iter().map(|x| Self::repeat(x, len / g)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_validate() {
        FiniteMonoid::trivial().validate().unwrap();
        FiniteMonoid::cyclic_group(3).validate().unwrap();
        FiniteMonoid::symmetric_group_3().validate().unwrap();
        FiniteCategory::discrete(2).validate().unwrap();
        FiniteMonoid::symmetric_group_3().to_category().validate().unwrap();
    }

    #[test]
    fn rejects_bad_tables() {
        let mut m = FiniteMonoid::cyclic_group(3);
        m.table[1][1] = 0;
        assert!(matches!(m.validate(), Err(Error::NotAssociative { .. })));
        let bad = FiniteMonoid { elements: vec!["a".into(), "b".into()], table: vec![vec![0, 0], vec![0, 0]], identity: 0 };
        assert!(matches!(bad.validate(), Err(Error::NotUnital(_))));
    }

    #[test]
    fn level_sizes() {
        let c2 = CyclicNerve::of_monoid(&FiniteMonoid::cyclic_group(2)).unwrap();
        for n in 0..5 {
            assert_eq!(c2.level(n).unwrap().len(), 1 << (n + 1));
        }
        let two = CyclicNerve::new(FiniteCategory::discrete(2)).unwrap();
        for n in 0..5 {
            assert_eq!(two.level(n).unwrap().len(), 2);
        }
    }

    #[test]
    fn standard_operators() {
        let c3 = CyclicNerve::of_monoid(&FiniteMonoid::cyclic_group(3)).unwrap();
        let x = vec![1, 2, 0];
        assert_eq!(c3.act(&LambdaMor::coface(2, 0).unwrap(), &x), vec![0, 0]);
        assert_eq!(c3.act(&LambdaMor::coface(2, 2).unwrap(), &x), vec![1, 2]);
        assert_eq!(c3.act(&LambdaMor::tau(2), &x), vec![0, 1, 2]);
        assert_eq!(c3.act(&LambdaMor::codegeneracy(2, 0).unwrap(), &x), vec![1, 0, 2, 0]);
        assert_eq!(c3.act(&LambdaMor::extra_degeneracy(2), &x), vec![0, 2, 0, 1]);
    }

    #[test]
    fn fast_fixed_points_match_filter() {
        let s3 = CyclicNerve::of_monoid(&FiniteMonoid::symmetric_group_3()).unwrap();
        for level in 0..4 {
            for shift in 0..=level + 1 {
                let t = LambdaMor::tau_power(level, shift as i64);
                let slow: Vec<Vec<u32>> =
                    s3.level(level).unwrap().into_iter().filter(|x| s3.act(&t, x) == *x).collect();
                let mut fast = s3.fixed_under_translation(level, shift).unwrap();
                fast.sort();
                assert_eq!(fast, slow, "level {level} shift {shift}");
            }
        }
    }
}
