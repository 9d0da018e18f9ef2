use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::chain::{format_rational, parse_rational, Ring};
use crate::cyclic::FiniteMonoid;
use crate::error::{Error, Result};

/// Sparse vector over the basis, sorted by index, no zero entries.
pub type Element = Vec<(usize, BigRational)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    pub degree: i64,
}

/// A finite-dimensional unital associative algebra over `Q` or `F_p` with a
/// non-negative internal grading, given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    field: Ring,
    basis: Vec<BasisElement>,
    unit: usize,
    /// `table[i][j] = e_i e_j`.
    table: Vec<Vec<Element>>,
    commutative: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum FieldSpec {
    Name(String),
    Fp {
        #[serde(rename = "Fp")]
        p: u64,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDocument {
    field: FieldSpec,
    basis: Vec<BasisElement>,
    unit: usize,
    products: Vec<(usize, usize, usize, String)>,
    #[serde(default)]
    commutative: bool,
}

/// Reduces an exact coefficient into the ground field: unchanged over `Q`,
/// the representative in `[0, p)` over `F_p`.
pub fn reduce(field: Ring, q: &BigRational) -> Result<BigRational> {
    match field {
        Ring::Fp(p) => {
            let p = BigInt::from(p);
            let den = q.denom().mod_floor(&p);
            if den.is_zero() {
                return Err(Error::InvalidInput(format!("coefficient {q} is not defined mod {p}")));
            }
            let inv = den.modpow(&(&p - 2u32), &p);
            Ok(BigRational::from_integer((q.numer() * inv).mod_floor(&p)))
        }
        _ => Ok(q.clone()),
    }
}

pub(crate) fn push_term(acc: &mut BTreeMap<usize, BigRational>, k: usize, c: BigRational) {
    let e = acc.entry(k).or_insert_with(BigRational::zero);
    *e += c;
}

fn finish(field: Ring, acc: BTreeMap<usize, BigRational>) -> Element {
    acc.into_iter()
        .filter_map(|(k, c)| {
            let c = reduce(field, &c).expect("coefficients stay integral");
            (!c.is_zero()).then_some((k, c))
        })
        .collect()
}

impl GradedAlgebra {
    /// Builds and validates an algebra from `(i, j, k, c)` meaning `e_i e_j ∋ c e_k`.
    pub fn new(
        field: Ring,
        basis: Vec<BasisElement>,
        unit: usize,
        products: &[(usize, usize, usize, BigRational)],
        commutative: bool,
    ) -> Result<Self> {
        match field {
            Ring::Q | Ring::Fp(_) => field.validate()?,
            Ring::Z => return Err(Error::InvalidInput("algebras are defined over Q or F_p".into())),
        }
        let n = basis.len();
        if n == 0 || unit >= n {
            return Err(Error::InvalidInput("unit index out of range".into()));
        }
        if let Some(b) = basis.iter().find(|b| b.degree < 0) {
            return Err(Error::InvalidInput(format!("basis element {} has negative degree", b.name)));
        }
        let mut acc = vec![vec![BTreeMap::new(); n]; n];
        for (i, j, k, c) in products {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::InvalidInput(format!("product ({i}, {j}, {k}) refers to a missing basis element")));
            }
            push_term(&mut acc[*i][*j], *k, reduce(field, c)?);
        }
        let table = acc.into_iter().map(|row| row.into_iter().map(|e| finish(field, e)).collect()).collect();
        let algebra = Self { field, basis, unit, table, commutative };
        algebra.validate()?;
        Ok(algebra)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        if self.basis[self.unit].degree != 0 {
            return Err(Error::DegreeViolation { a: self.unit, b: self.unit, c: self.unit });
        }
        for i in 0..n {
            for j in 0..n {
                for (k, _) in &self.table[i][j] {
                    if self.degree(*k) != self.degree(i) + self.degree(j) {
                        return Err(Error::DegreeViolation { a: i, b: j, c: *k });
                    }
                }
            }
        }
        let basis_vector = |i: usize| vec![(i, BigRational::one())];
        for i in 0..n {
            if self.table[self.unit][i] != basis_vector(i) || self.table[i][self.unit] != basis_vector(i) {
                return Err(Error::NotUnital(i));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let left = self.mul(&self.table[a][b], &basis_vector(c));
                    let right = self.mul(&basis_vector(a), &self.table[b][c]);
                    if left != right {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        if self.commutative {
            for a in 0..n {
                for b in 0..n {
                    let sign = self.koszul(a, b);
                    let swapped: Element = self.table[b][a].iter().map(|(k, c)| (*k, c * &sign)).collect();
                    if finish(self.field, swapped.into_iter().collect()) != self.table[a][b] {
                        return Err(Error::NotCommutative { a, b });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: AlgebraDocument = serde_json::from_str(s)
            .map_err(|e| Error::InvalidInput(format!("algebra document, line {} column {}: {e}", e.line(), e.column())))?;
        let field = match doc.field {
            FieldSpec::Name(name) => name.parse::<Ring>()?,
            FieldSpec::Fp { p } => Ring::Fp(p),
        };
        let products = doc
            .products
            .iter()
            .map(|(i, j, k, c)| {
                parse_rational(c)
                    .map(|q| (*i, *j, *k, q))
                    .ok_or_else(|| Error::InvalidInput(format!("bad coefficient {c:?} in product ({i}, {j}, {k})")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, doc.basis, doc.unit, &products, doc.commutative)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let field = match self.field {
            Ring::Fp(p) => serde_json::json!({ "Fp": p }),
            _ => serde_json::json!("Q"),
        };
        let products: Vec<serde_json::Value> = (0..self.dim())
            .flat_map(|i| (0..self.dim()).map(move |j| (i, j)))
            .flat_map(|(i, j)| {
                self.table[i][j].iter().map(move |(k, c)| serde_json::json!([i, j, k, format_rational(c)]))
            })
            .collect();
        serde_json::json!({
            "field": field,
            "basis": self.basis,
            "unit": self.unit,
            "products": products,
            "commutative": self.commutative,
        })
    }

    /// The ground field as an algebra.
    pub fn ground(field: Ring) -> Result<Self> {
        Self::new(field, vec![BasisElement { name: "1".into(), degree: 0 }], 0, &[(0, 0, 0, BigRational::one())], true)
    }

    /// `k[M]` in internal degree 0.
    pub fn monoid_algebra(m: &FiniteMonoid, field: Ring) -> Result<Self> {
        m.validate()?;
        let n = m.elements.len();
        let basis = m.elements.iter().map(|name| BasisElement { name: name.clone(), degree: 0 }).collect();
        let products: Vec<_> =
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| (a, b, m.table[a][b], BigRational::one())).collect();
        let commutative = (0..n).all(|a| (0..n).all(|b| m.table[a][b] == m.table[b][a]));
        Self::new(field, basis, m.identity, &products, commutative)
    }

    /// `k[x]/x^2` with `|x| = degree`; graded-commutative for every degree
    /// over `Q` since `x^2 = 0`.
    pub fn square_zero(field: Ring, degree: i64) -> Result<Self> {
        let basis = vec![BasisElement { name: "1".into(), degree: 0 }, BasisElement { name: "x".into(), degree }];
        let one = BigRational::one();
        Self::new(field, basis, 0, &[(0, 0, 0, one.clone()), (0, 1, 1, one.clone()), (1, 0, 1, one)], true)
    }

    /// `Q[x]/x^{k+1}` with `|x| = degree` (even, so the result is commutative).
    pub fn truncated_polynomial(degree: i64, k: usize) -> Result<Self> {
        if degree % 2 != 0 {
            return Err(Error::InvalidInput("truncated polynomial generators need even degree".into()));
        }
        let basis = (0..=k).map(|i| BasisElement { name: format!("x^{i}"), degree: degree * i as i64 }).collect();
        let products: Vec<_> = (0..=k)
            .flat_map(|i| (0..=k).map(move |j| (i, j)))
            .filter(|(i, j)| i + j <= k)
            .map(|(i, j)| (i, j, i + j, BigRational::one()))
            .collect();
        Self::new(Ring::Q, basis, 0, &products, true)
    }

    pub fn field(&self) -> Ring {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].degree
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// Every non-unit basis element has degree at least 2.
    pub fn has_connective_gap(&self) -> bool {
        (0..self.dim()).all(|i| i == self.unit || self.degree(i) >= 2)
    }

    pub fn is_ungraded(&self) -> bool {
        self.basis.iter().all(|b| b.degree == 0)
    }

    pub fn product(&self, i: usize, j: usize) -> &Element {
        &self.table[i][j]
    }

    /// `(-1)^{|e_a||e_b|}`.
    pub fn koszul(&self, a: usize, b: usize) -> BigRational {
        if (self.degree(a) * self.degree(b)) % 2 == 0 {
            BigRational::one()
        } else {
            -BigRational::one()
        }
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut acc = BTreeMap::new();
        for (i, a) in x {
            for (j, b) in y {
                for (k, c) in &self.table[*i][*j] {
                    push_term(&mut acc, *k, a * b * c);
                }
            }
        }
        finish(self.field, acc)
    }
}

/// Formal cochain model of `S^m`: `Λ_Q[x_{2n+1}]` for odd spheres and
/// `Q[x_{2n}]/x^2` for even ones.
pub fn sphere_model(n: usize, odd: bool) -> Result<GradedAlgebra> {
    if n == 0 {
        return Err(Error::InvalidInput("sphere models need n >= 1".into()));
    }
    let degree = if odd { 2 * n as i64 + 1 } else { 2 * n as i64 };
    GradedAlgebra::square_zero(Ring::Q, degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_and_group_algebras() {
        let k = GradedAlgebra::ground(Ring::Q).unwrap();
        assert!(k.is_commutative() && k.dim() == 1);
        let c2 = GradedAlgebra::monoid_algebra(&FiniteMonoid::cyclic_group(2), Ring::Q).unwrap();
        assert!(c2.is_commutative() && c2.is_ungraded());
        assert_eq!(c2.product(1, 1), &vec![(0, BigRational::one())]);
    }

    #[test]
    fn exterior_algebra() {
        let a = sphere_model(1, true).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.degree(1), 3);
        assert!(a.product(1, 1).is_empty());
        assert!(a.has_connective_gap());
    }

    #[test]
    fn rejects_bad_documents() {
        let not_unital = r#"{"field":"Q","basis":[{"name":"1","degree":0},{"name":"x","degree":2}],
            "unit":0,"products":[[0,0,0,"1"],[0,1,1,"1"]],"commutative":true}"#;
        assert_eq!(GradedAlgebra::from_json(not_unital), Err(Error::NotUnital(1)));
        let degree = r#"{"field":"Q","basis":[{"name":"1","degree":0},{"name":"x","degree":2}],
            "unit":0,"products":[[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"],[1,1,0,"1"]]}"#;
        assert_eq!(GradedAlgebra::from_json(degree), Err(Error::DegreeViolation { a: 1, b: 1, c: 0 }));
        let odd_square = r#"{"field":"Q","basis":[{"name":"1","degree":0},{"name":"x","degree":1},{"name":"y","degree":2}],
            "unit":0,"products":[[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"],[0,2,2,"1"],[2,0,2,"1"],[1,1,2,"1"]],"commutative":true}"#;
        assert_eq!(GradedAlgebra::from_json(odd_square), Err(Error::NotCommutative { a: 1, b: 1 }));
        let field = r#"{"field":{"Fp":4},"basis":[{"name":"1","degree":0}],"unit":0,"products":[[0,0,0,"1"]]}"#;
        assert!(GradedAlgebra::from_json(field).is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = GradedAlgebra::truncated_polynomial(2, 3).unwrap();
        let b = GradedAlgebra::from_json(&a.to_json().to_string()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn prime_field_reduction() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(reduce(Ring::Fp(5), &half).unwrap(), BigRational::from_integer(3.into()));
        assert!(reduce(Ring::Fp(2), &half).is_err());
    }
}
