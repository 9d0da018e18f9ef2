use cyclotome_core::hochschild::{
    adams_checks, hodge_classes, hodge_data, sphere_model, AdamsCheck, HochschildComplex, HodgeContract,
    MAX_HODGE_DEGREE,
};
use cyclotome_core::Result;
use serde::Serialize;

/// Rank of `HH` of the square-zero model of `S^{2n+1}` (odd) or `S^{2n}` (even)
/// in total degree `d`. Odd: one class in degrees `2ni` and `2ni + 2n + 1`.
/// Even: degree 0 and, for `j >= 0`, degrees `(2n-1)(2j+1)` and `(2n-1)2j + 2n`.
pub fn expected_rank(n: i64, odd: bool, d: i64) -> usize {
    if d < 0 {
        return 0;
    }
    let hit = if odd {
        let p = 2 * n;
        d % p == 0 || (d > 2 * n && (d - 2 * n - 1) % p == 0)
    } else {
        let p = 2 * (2 * n - 1);
        d == 0 || (d >= 2 * n - 1 && (d - (2 * n - 1)) % p == 0) || (d >= 2 * n && (d - 2 * n) % p == 0)
    };
    usize::from(hit)
}

#[derive(Clone, Debug, Serialize)]
pub struct DictionaryEntry {
    /// `alpha_i` for `1 ⊗ x^{⊗i}`, `alpha_i beta` for `x ⊗ x^{⊗i}`.
    pub class: String,
    pub simplicial: usize,
    pub internal: i64,
    pub total: i64,
    pub piece: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HodgeDictionary {
    pub contract: HodgeContract,
    pub entries: Vec<DictionaryEntry>,
    pub adams: Vec<AdamsCheck>,
    /// Every class lies in a single piece equal to its divided-power index.
    pub pieces_follow_divided_powers: bool,
    pub eigenvalue_laws_hold: bool,
}

impl HodgeDictionary {
    pub fn holds(&self) -> bool {
        self.contract.holds() && self.pieces_follow_divided_powers && self.eigenvalue_laws_hold
    }
}

/// Hodge pieces and Adams eigenvalues of the classes of the odd sphere model
/// of total degree at most `max_degree`, as far as simplicial degree
/// `MAX_HODGE_DEGREE - 1`.
pub fn odd_sphere_dictionary(n: usize, max_degree: i64, ks: &[i64]) -> Result<HodgeDictionary> {
    let a = sphere_model(n, true)?;
    let x = 2 * n as i64 + 1;
    let wanted = (max_degree.max(0) / (2 * n as i64)) as usize + 1;
    let cx = HochschildComplex::new(&a, wanted.min(MAX_HODGE_DEGREE), true)?;
    let data = hodge_data(&cx)?;
    let contract = data.check_contract(&cx);
    let classes = hodge_classes(&cx, &data)?;
    let mut entries = Vec::new();
    let mut follows = true;
    for c in classes.iter().filter(|c| c.total <= max_degree) {
        let s = c.simplicial;
        let class = if c.internal == x * s as i64 {
            format!("alpha_{s}")
        } else if c.internal == x * (s as i64 + 1) {
            format!("alpha_{s} beta")
        } else {
            format!("unexpected ({s}, {})", c.internal)
        };
        let piece = match c.pieces.as_slice() {
            [(i, 1)] => Some(*i),
            _ => None,
        };
        follows &= piece == Some(s) && !class.starts_with("unexpected");
        entries.push(DictionaryEntry { class, simplicial: s, internal: c.internal, total: c.total, piece });
    }
    let mut adams = Vec::new();
    for &k in ks {
        adams.extend(adams_checks(&cx, &data, k)?.into_iter().filter(|c| c.internal - c.simplicial as i64 <= max_degree));
    }
    let laws = adams.iter().all(|c| c.eigenvalue_law);
    Ok(HodgeDictionary { contract, entries, adams, pieces_follow_divided_powers: follows, eigenvalue_laws_hold: laws })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_tables() {
        let odd: Vec<usize> = (0..=8).map(|d| expected_rank(1, true, d)).collect();
        assert_eq!(odd, vec![1, 0, 1, 1, 1, 1, 1, 1, 1]);
        let odd5: Vec<usize> = (0..=9).map(|d| expected_rank(2, true, d)).collect();
        assert_eq!(odd5, vec![1, 0, 0, 0, 1, 1, 0, 0, 1, 1]);
        assert!((0..=10).all(|d| expected_rank(1, false, d) == 1));
        let s4: Vec<usize> = (0..=10).map(|d| expected_rank(2, false, d)).collect();
        assert_eq!(s4, vec![1, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1]);
    }
}
