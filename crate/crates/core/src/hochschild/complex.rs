use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::algebra::{reduce, GradedAlgebra};
use crate::chain::{ChainComplex, Ring, SparseMatrix};
use crate::cyclic::{TruncatedCyclicModule, DEFAULT_MAX_CELLS};
use crate::error::{cap_check, Error, Result};

pub type Word = Vec<u32>;
type Terms = Vec<(BigRational, Word)>;

/// The cyclic bar complex `C_s = A ⊗ A^{⊗s}` (or `A ⊗ Ā^{⊗s}` when
/// normalized) for `0 <= s <= s_max`, with `b`, Connes' `B` and, when
/// un-normalized, the signed cyclic operator.
#[derive(Clone, Debug)]
pub struct HochschildComplex {
    algebra: GradedAlgebra,
    s_max: usize,
    normalized: bool,
    words: Vec<Vec<Word>>,
    index: Vec<HashMap<Word, usize>>,
    internal: Vec<Vec<i64>>,
    /// `b[s] : C_s -> C_{s-1}`; `b[0]` has no rows.
    b: Vec<SparseMatrix>,
    /// `connes[s] : C_s -> C_{s+1}` for `s < s_max`.
    connes: Vec<SparseMatrix>,
    cycle: Option<Vec<SparseMatrix>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OperatorIdentities {
    pub b_squared: bool,
    pub connes_squared: bool,
    pub anticommute: bool,
    /// `None` on the normalized complex, where the cyclic operator does not descend.
    pub cycle_order: Option<bool>,
}

impl OperatorIdentities {
    pub fn all_hold(&self) -> bool {
        self.b_squared && self.connes_squared && self.anticommute && self.cycle_order.unwrap_or(true)
    }
}

fn sign(odd: bool) -> BigRational {
    if odd {
        -BigRational::one()
    } else {
        BigRational::one()
    }
}

impl HochschildComplex {
    pub fn new(algebra: &GradedAlgebra, s_max: usize, normalized: bool) -> Result<Self> {
        Self::with_cap(algebra, s_max, normalized, DEFAULT_MAX_CELLS)
    }

    pub fn with_cap(algebra: &GradedAlgebra, s_max: usize, normalized: bool, cap: u128) -> Result<Self> {
        let dim = algebra.dim() as u128;
        let letters = if normalized { dim - 1 } else { dim };
        let mut total: u128 = 0;
        for s in 0..=s_max {
            let n = letters.checked_pow(s as u32).and_then(|p| p.checked_mul(dim)).unwrap_or(u128::MAX);
            total = total.saturating_add(n);
        }
        cap_check("Hochschild chain groups", total, cap)?;
        let mut cx = Self {
            algebra: algebra.clone(),
            s_max,
            normalized,
            words: Vec::new(),
            index: Vec::new(),
            internal: Vec::new(),
            b: Vec::new(),
            connes: Vec::new(),
            cycle: None,
        };
        for s in 0..=s_max {
            let words = cx.enumerate_words(s);
            cx.internal.push(words.iter().map(|w| cx.word_degree(w)).collect());
            cx.index.push(words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect());
            cx.words.push(words);
        }
        for s in 0..=s_max {
            let rows = if s > 0 { cx.words[s - 1].len() } else { 0 };
            let b = cx.matrix(s, rows, |w| if s == 0 { Vec::new() } else { cx.apply_b(w) }, s.saturating_sub(1))?;
            cx.b.push(b);
        }
        for s in 0..s_max {
            let m = cx.matrix(s, cx.words[s + 1].len(), |w| cx.apply_connes(w), s + 1)?;
            cx.connes.push(m);
        }
        if !normalized {
            let cycle = (0..=s_max)
                .map(|s| cx.matrix(s, cx.words[s].len(), |w| cx.apply_t(w), s))
                .collect::<Result<_>>()?;
            cx.cycle = Some(cycle);
        }
        Ok(cx)
    }

    fn enumerate_words(&self, s: usize) -> Vec<Word> {
        let dim = self.algebra.dim() as u32;
        let unit = self.algebra.unit() as u32;
        let letters: Vec<u32> = (0..dim).filter(|&i| !self.normalized || i != unit).collect();
        let mut out = Vec::new();
        if letters.is_empty() && s > 0 {
            return out;
        }
        let mut digits = vec![0usize; s];
        loop {
            for a0 in 0..dim {
                let mut w = Vec::with_capacity(s + 1);
                w.push(a0);
                w.extend(digits.iter().map(|&d| letters[d]));
                out.push(w);
            }
            // odometer on positions 1..=s, last position fastest
            let mut pos = s;
            loop {
                if pos == 0 {
                    out.sort();
                    return out;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < letters.len() {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }

    fn word_degree(&self, w: &[u32]) -> i64 {
        w.iter().map(|&a| self.algebra.degree(a as usize)).sum()
    }

    fn is_degenerate(&self, w: &[u32]) -> bool {
        w[1..].iter().any(|&a| a as usize == self.algebra.unit())
    }

    fn matrix<F: Fn(&Word) -> Terms>(&self, s: usize, rows: usize, op: F, target: usize) -> Result<SparseMatrix> {
        let field = self.algebra.field();
        let mut triplets = Vec::new();
        for (col, w) in self.words[s].iter().enumerate() {
            let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
            for (c, v) in op(w) {
                if self.normalized && self.is_degenerate(&v) {
                    continue;
                }
                let row = *self.index[target]
                    .get(&v)
                    .ok_or_else(|| Error::InvalidInput(format!("word {v:?} missing from C_{target}")))?;
                *acc.entry(row).or_insert_with(BigRational::zero) += c;
            }
            for (row, c) in acc {
                let c = reduce(field, &c)?;
                if !c.is_zero() {
                    triplets.push((row, col, c));
                }
            }
        }
        Ok(SparseMatrix::from_triplets(rows, self.words[s].len(), triplets))
    }

    /// Face `d_i` with the Koszul sign on the last face.
    fn face(&self, w: &Word, i: usize) -> Terms {
        let s = w.len() - 1;
        if i < s {
            self.algebra
                .product(w[i] as usize, w[i + 1] as usize)
                .iter()
                .map(|(k, c)| {
                    let mut v = w.clone();
                    v[i] = *k as u32;
                    v.remove(i + 1);
                    (c.clone(), v)
                })
                .collect()
        } else {
            let last = w[s] as usize;
            let before: i64 = w[..s].iter().map(|&a| self.algebra.degree(a as usize)).sum();
            let eps = sign((self.algebra.degree(last) * before) % 2 != 0);
            self.algebra
                .product(last, w[0] as usize)
                .iter()
                .map(|(k, c)| {
                    let mut v = w[..s].to_vec();
                    v[0] = *k as u32;
                    (c * &eps, v)
                })
                .collect()
        }
    }

    fn apply_b(&self, w: &Word) -> Terms {
        let s = w.len() - 1;
        (0..=s)
            .flat_map(|i| {
                let sg = sign(i % 2 == 1);
                self.face(w, i).into_iter().map(move |(c, v)| (c * &sg, v))
            })
            .collect()
    }

    /// Signed cyclic operator `(-1)^s (-1)^{|a_s|(|a_0|+...+|a_{s-1}|)} a_s ⊗ a_0 ⊗ ... ⊗ a_{s-1}`.
    fn apply_t(&self, w: &Word) -> Terms {
        let s = w.len() - 1;
        let last = w[s] as usize;
        let before: i64 = w[..s].iter().map(|&a| self.algebra.degree(a as usize)).sum();
        let odd = (s as i64 + self.algebra.degree(last) * before) % 2 != 0;
        let mut v = Vec::with_capacity(s + 1);
        v.push(w[s]);
        v.extend_from_slice(&w[..s]);
        vec![(sign(odd), v)]
    }

    fn apply_t_terms(&self, terms: &Terms) -> Terms {
        terms.iter().flat_map(|(c, w)| self.apply_t(w).into_iter().map(move |(d, v)| (c * d, v))).collect()
    }

    /// `B = (1 - t) s N` with `s(a_0 ⊗ ... ⊗ a_s) = 1 ⊗ a_0 ⊗ ... ⊗ a_s`.
    fn apply_connes(&self, w: &Word) -> Terms {
        let s = w.len() - 1;
        let mut norm: Terms = Vec::new();
        let mut cur: Terms = vec![(BigRational::one(), w.clone())];
        for _ in 0..=s {
            norm.extend(cur.iter().cloned());
            cur = self.apply_t_terms(&cur);
        }
        let unit = self.algebra.unit() as u32;
        let lifted: Terms = norm
            .into_iter()
            .map(|(c, v)| {
                let mut u = Vec::with_capacity(v.len() + 1);
                u.push(unit);
                u.extend(v);
                (c, u)
            })
            .collect();
        let mut out = lifted.clone();
        out.extend(self.apply_t_terms(&lifted).into_iter().map(|(c, v)| (-c, v)));
        out
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn ring(&self) -> Ring {
        self.algebra.field()
    }

    pub fn s_max(&self) -> usize {
        self.s_max
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn words(&self, s: usize) -> &[Word] {
        &self.words[s]
    }

    pub fn dim(&self, s: usize) -> usize {
        self.words[s].len()
    }

    pub fn internal_degrees(&self, s: usize) -> &[i64] {
        &self.internal[s]
    }

    pub fn b(&self, s: usize) -> &SparseMatrix {
        &self.b[s]
    }

    pub fn connes(&self, s: usize) -> Option<&SparseMatrix> {
        self.connes.get(s)
    }

    pub fn cycle(&self, s: usize) -> Option<&SparseMatrix> {
        self.cycle.as_ref().map(|c| &c[s])
    }

    /// Human-readable tensor word.
    pub fn label(&self, w: &[u32]) -> String {
        w.iter().map(|&a| self.algebra.basis()[a as usize].name.as_str()).collect::<Vec<_>>().join("⊗")
    }

    /// Words of `C_s` in internal degree `t`.
    pub fn block(&self, s: usize, t: i64) -> Vec<usize> {
        (0..self.words[s].len()).filter(|&i| self.internal[s][i] == t).collect()
    }

    /// Internal degrees occurring in `C_s`.
    pub fn internal_range(&self, s: usize) -> Vec<i64> {
        let mut ts: Vec<i64> = self.internal[s].clone();
        ts.sort();
        ts.dedup();
        ts
    }

    /// `b` restricted to internal degree `t`, `C_{s,t} -> C_{s-1,t}`.
    pub fn b_block(&self, s: usize, t: i64) -> SparseMatrix {
        let rows = if s > 0 { self.block(s - 1, t) } else { Vec::new() };
        self.b[s].submatrix(&rows, &self.block(s, t))
    }

    pub fn check_identities(&self) -> OperatorIdentities {
        let ring = self.ring();
        let zero_over = |m: &SparseMatrix| m.triplets().all(|(_, _, c)| reduce(ring, c).map(|c| c.is_zero()).unwrap_or(false));
        let b_squared = (2..=self.s_max).all(|s| zero_over(&self.b[s - 1].mul(&self.b[s])));
        let connes_squared = (0..self.s_max.saturating_sub(1)).all(|s| zero_over(&self.connes[s + 1].mul(&self.connes[s])));
        // bB + Bb on C_s, for s with both composites inside the truncation
        let anticommute = (0..self.s_max).all(|s| {
            let bb = self.b[s + 1].mul(&self.connes[s]);
            let other = if s > 0 { self.connes[s - 1].mul(&self.b[s]) } else { SparseMatrix::zeros(bb.rows(), bb.cols()) };
            zero_over(&bb.add(&other))
        });
        let cycle_order = self.cycle.as_ref().map(|cycle| {
            cycle.iter().enumerate().all(|(s, t)| {
                let mut power = SparseMatrix::identity(t.cols());
                for _ in 0..=s {
                    power = t.mul(&power);
                }
                zero_over(&power.sub(&SparseMatrix::identity(t.cols())))
            })
        });
        OperatorIdentities { b_squared, connes_squared, anticommute, cycle_order }
    }

    /// `(C_•, b)` in one internal degree (all of them for `None`), graded by
    /// simplicial degree with validity window `0..s_max-1`.
    pub fn chain_complex(&self, internal: Option<i64>) -> Result<ChainComplex> {
        let pick = |s: usize| -> Vec<usize> {
            match internal {
                Some(t) => self.block(s, t),
                None => (0..self.words[s].len()).collect(),
            }
        };
        let blocks: Vec<Vec<usize>> = (0..=self.s_max).map(pick).collect();
        let ranks = blocks.iter().map(Vec::len).collect();
        let diffs = (1..=self.s_max).map(|s| self.b[s].submatrix(&blocks[s - 1], &blocks[s])).collect();
        let labels = blocks
            .iter()
            .enumerate()
            .map(|(s, b)| b.iter().map(|&i| self.label(&self.words[s][i])).collect())
            .collect();
        Ok(ChainComplex::new(self.ring(), 0, ranks, diffs, (0, self.s_max as isize - 1), false)?.with_labels(labels))
    }

    /// For ungraded algebras: the unsigned cyclic module with the same
    /// operators as the linearized cyclic nerve (faces multiply neighbours,
    /// `s_i` inserts a unit after position `i`, the extra degeneracy sends
    /// `a_0 ⊗ ... ⊗ a_s` to `1 ⊗ a_1 ⊗ ... ⊗ a_s ⊗ a_0`, `t` moves `a_s` to the front).
    pub fn unsigned_cyclic_module(&self) -> Result<TruncatedCyclicModule> {
        if self.normalized || !self.algebra.is_ungraded() {
            return Err(Error::Unsupported("the unsigned cyclic module needs an un-normalized ungraded complex".into()));
        }
        let unit = self.algebra.unit() as u32;
        let mut module = TruncatedCyclicModule {
            ring: self.ring(),
            ranks: self.words.iter().map(Vec::len).collect(),
            faces: Vec::new(),
            degeneracies: Vec::new(),
            cycle: Vec::new(),
            rotation: None,
        };
        for s in 0..=self.s_max {
            let mut faces = Vec::new();
            let mut degeneracies = Vec::new();
            if s > 0 {
                for i in 0..=s {
                    faces.push(self.matrix(s, self.dim(s - 1), |w| self.face(w, i), s - 1)?);
                }
                for i in 0..=s {
                    let insert = move |w: &Word| -> Terms {
                        let mut v = w.clone();
                        if i < s {
                            v.insert(i + 1, unit);
                        } else {
                            let a0 = v[0];
                            v[0] = unit;
                            v.push(a0);
                        }
                        vec![(BigRational::one(), v)]
                    };
                    degeneracies.push(self.matrix(s - 1, self.dim(s), insert, s)?);
                }
            }
            let rotate = |w: &Word| -> Terms {
                let mut v = vec![w[w.len() - 1]];
                v.extend_from_slice(&w[..w.len() - 1]);
                vec![(BigRational::one(), v)]
            };
            module.faces.push(faces);
            module.degeneracies.push(degeneracies);
            module.cycle.push(self.matrix(s, self.dim(s), rotate, s)?);
        }
        Ok(module)
    }
}
