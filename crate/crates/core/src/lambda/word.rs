use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::cyclic::LambdaMor;
use crate::error::{Error, Result};

/// One generating morphism of the cyclic category, tagged with its target level.
///
/// `Degeneracy(n + 1)` with target `n` is the extra degeneracy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", content = "index", rename_all = "snake_case")]
pub enum Generator {
    Face(usize),
    Degeneracy(usize),
    Tau,
    TauInverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Atom {
    pub generator: Generator,
    pub target: usize,
}

impl Atom {
    pub fn source(&self) -> usize {
        match self.generator {
            Generator::Face(_) => self.target - 1,
            Generator::Degeneracy(_) => self.target + 1,
            Generator::Tau | Generator::TauInverse => self.target,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match self.generator {
            Generator::Face(i) => self.target > 0 && i <= self.target,
            Generator::Degeneracy(i) => i <= self.target + 1,
            Generator::Tau | Generator::TauInverse => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidMorphism(format!("no generator {self}")))
        }
    }

    pub fn morphism(&self) -> Result<LambdaMor> {
        self.validate()?;
        let n = self.target;
        Ok(match self.generator {
            Generator::Face(i) => LambdaMor::coface(n, i)?,
            Generator::Degeneracy(i) if i == n + 1 => LambdaMor::extra_degeneracy(n),
            Generator::Degeneracy(i) => LambdaMor::codegeneracy(n, i)?,
            Generator::Tau => LambdaMor::tau(n),
            Generator::TauInverse => LambdaMor::tau_power(n, -1),
        })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.generator {
            Generator::Face(i) => write!(f, "d^{i}:[{}]->[{}]", self.source(), self.target),
            Generator::Degeneracy(i) => write!(f, "s^{i}:[{}]->[{}]", self.source(), self.target),
            Generator::Tau => write!(f, "tau_{}", self.target),
            Generator::TauInverse => write!(f, "tau_{}^-1", self.target),
        }
    }
}

/// A composite `a_0 ∘ a_1 ∘ ... ∘ a_k` of generators, stored in composition
/// order. Acting on a cyclic object, the operators apply left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorWord {
    source: usize,
    target: usize,
    atoms: Vec<Atom>,
}

impl GeneratorWord {
    pub fn empty(n: usize) -> Self {
        Self { source: n, target: n, atoms: Vec::new() }
    }

    pub fn from_atoms(atoms: Vec<Atom>) -> Result<Self> {
        let (Some(first), Some(last)) = (atoms.first(), atoms.last()) else {
            return Err(Error::InvalidMorphism("use GeneratorWord::empty for the empty word".into()));
        };
        for a in &atoms {
            a.validate()?;
        }
        for w in atoms.windows(2) {
            if w[0].source() != w[1].target {
                return Err(Error::LevelMismatch { expected: w[0].source(), found: w[1].target });
            }
        }
        Ok(Self { source: last.source(), target: first.target, atoms })
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Composes the generators.
    pub fn evaluate(&self) -> Result<LambdaMor> {
        let mut acc = LambdaMor::identity(self.source);
        for a in self.atoms.iter().rev() {
            acc = a.morphism()?.compose(&acc)?;
        }
        Ok(acc)
    }

    /// `self ∘ other`.
    pub fn then_after(&self, other: &GeneratorWord) -> Result<GeneratorWord> {
        if other.target != self.source {
            return Err(Error::LevelMismatch { expected: self.source, found: other.target });
        }
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&other.atoms);
        Ok(Self { source: other.source, target: self.target, atoms })
    }

    /// Level of the object between atom `k - 1` and atom `k`.
    fn level_before(&self, k: usize) -> usize {
        if k == 0 {
            self.target
        } else {
            self.atoms[k - 1].source()
        }
    }

    /// A different word for the same morphism: peels off a random power of
    /// `τ`, then splices in random identities `s^i d^i` and `τ^(l+1)`.
    pub fn randomized<R: Rng + ?Sized>(f: &LambdaMor, rng: &mut R) -> GeneratorWord {
        let m = f.source();
        let k = rng.gen_range(0..=m);
        let head = to_generator_word(&f.compose(&LambdaMor::tau_power(m, -(k as i64))).expect("composable"));
        let mut tail = GeneratorWord::empty(m);
        for _ in 0..k {
            tail.atoms.push(Atom { generator: Generator::Tau, target: m });
        }
        let mut word = head.then_after(&tail).expect("levels agree");
        for _ in 0..rng.gen_range(0..3) {
            let pos = rng.gen_range(0..=word.atoms.len());
            let l = word.level_before(pos);
            let insert: Vec<Atom> = if rng.gen_bool(0.5) {
                let i = rng.gen_range(0..=l);
                vec![
                    Atom { generator: Generator::Degeneracy(i), target: l },
                    Atom { generator: Generator::Face(i), target: l + 1 },
                ]
            } else {
                let g = if rng.gen_bool(0.5) { Generator::Tau } else { Generator::TauInverse };
                vec![Atom { generator: g, target: l }; l + 1]
            };
            word.atoms.splice(pos..pos, insert);
        }
        word
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "id_[{}]", self.source);
        }
        let parts: Vec<String> = self.atoms.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(" ∘ "))
    }
}

/// Factors `f = d^{i_1} ∘ ... ∘ d^{i_a} ∘ s^{j_1} ∘ ... ∘ s^{j_b} ∘ τ^j` with
/// `i_1 > ... > i_a` and `j_1 < ... < j_b`; `τ^j` is written with whichever of
/// `τ`, `τ^{-1}` gives the shorter word.
pub fn to_generator_word(f: &LambdaMor) -> GeneratorWord {
    let delta = f.delta();
    let (m, n) = (f.source(), f.target());
    let mut atoms = Vec::new();
    let missed = delta.missed_values();
    let mut level = n;
    for &i in missed.iter().rev() {
        atoms.push(Atom { generator: Generator::Face(i), target: level });
        level -= 1;
    }
    let collapsed = delta.collapsed_positions();
    let mut level = m - collapsed.len();
    for &j in &collapsed {
        atoms.push(Atom { generator: Generator::Degeneracy(j), target: level });
        level += 1;
    }
    let j = f.rot();
    let (generator, count) = if 2 * j <= m + 1 { (Generator::Tau, j) } else { (Generator::TauInverse, m + 1 - j) };
    atoms.extend(std::iter::repeat_n(Atom { generator, target: m }, count));
    GeneratorWord { source: m, target: n, atoms }
}
