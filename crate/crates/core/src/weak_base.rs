//! Weak bases of all co-clones with a finite base.
//!
//! Arguments follow the written order of each formula, with `c0` and `c1`
//! in the last positions.

use crate::error::{Error, Result};
use crate::lattice::{CoCloneId, Family};
use crate::relation::Relation;

/// Chain indices are capped so the widest chain row (`n + 3` columns) stays
/// within the relation arity limit.
pub const MAX_CHAIN_INDEX: u32 = 21;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakBaseEntry {
    pub co_clone: CoCloneId,
    pub relation: Relation,
    pub formula: String,
}

fn or(x: &[bool]) -> bool {
    x.iter().any(|&b| b)
}

fn nand(x: &[bool]) -> bool {
    !x.iter().all(|&b| b)
}

fn even(x: &[bool]) -> bool {
    x.iter().filter(|&&b| b).count() % 2 == 0
}

fn one_in_three(x: &[bool]) -> bool {
    x.iter().filter(|&&b| b).count() == 1
}

/// `x[j] != x[k + j]` for `j < k`.
fn neq_ext(x: &[bool], k: usize) -> bool {
    (0..k).all(|j| x[j] != x[k + j])
}

fn build(arity: usize, pred: impl Fn(&[bool]) -> bool) -> Relation {
    Relation::from_bits(arity, pred).expect("weak bases fit the arity cap")
}

fn chain_row(family: Family, n: usize) -> (Relation, String) {
    use Family::*;
    let xs = format!("x1,...,x{n}");
    match family {
        S0 => (build(n + 1, |x| or(&x[..n]) && x[n]), format!("OR^{n}({xs}) ∧ T(c1)")),
        S02 => (
            build(n + 2, |x| or(&x[..n]) && !x[n] && x[n + 1]),
            format!("OR^{n}({xs}) ∧ F(c0) ∧ T(c1)"),
        ),
        S01 => (
            build(n + 2, |x| or(&x[..n]) && (!x[n] || !nand(&x[..n])) && x[n + 1]),
            format!("OR^{n}({xs}) ∧ (x → x1⋯x{n}) ∧ T(c1)"),
        ),
        S00 => (
            build(n + 3, |x| or(&x[..n]) && (!x[n] || !nand(&x[..n])) && !x[n + 1] && x[n + 2]),
            format!("OR^{n}({xs}) ∧ (x → x1⋯x{n}) ∧ F(c0) ∧ T(c1)"),
        ),
        S1 => (build(n + 1, |x| nand(&x[..n]) && !x[n]), format!("NAND^{n}({xs}) ∧ F(c0)")),
        S12 => (
            build(n + 2, |x| nand(&x[..n]) && !x[n] && x[n + 1]),
            format!("NAND^{n}({xs}) ∧ F(c0) ∧ T(c1)"),
        ),
        S11 => (
            build(n + 2, |x| nand(&x[..n]) && (!or(&x[..n]) || x[n]) && !x[n + 1]),
            format!("NAND^{n}({xs}) ∧ (x1 ∨ ... ∨ x{n} → x) ∧ F(c0)"),
        ),
        S10 => (
            build(n + 3, |x| nand(&x[..n]) && (!or(&x[..n]) || x[n]) && !x[n + 1] && x[n + 2]),
            format!("NAND^{n}({xs}) ∧ (x1 ∨ ... ∨ x{n} → x) ∧ F(c0) ∧ T(c1)"),
        ),
        _ => unreachable!("not a chain family"),
    }
}

fn plain_row(family: Family) -> (Relation, &'static str) {
    use Family::*;
    let iv = |x: &[bool]| x[0] == (x[1] || x[2]);
    let iv_tail = |x: &[bool]| (x[1] && x[2]) || !x[3];
    let ie = |x: &[bool]| x[0] == (x[1] && x[2]);
    let ie_tail = |x: &[bool]| !(x[1] || x[2]) || x[3];
    let in_core = |x: &[bool]| (x[0] && x[3]) == (x[1] && x[2]);
    match family {
        BF => (build(2, |x| x[0] == x[1]), "Eq(x1,x2)"),
        R0 => (build(1, |x| !x[0]), "F(c0)"),
        R1 => (build(1, |x| x[0]), "T(c1)"),
        R2 => (build(2, |x| !x[0] && x[1]), "F(c0) ∧ T(c1)"),
        M => (build(2, |x| !x[0] || x[1]), "(x1 → x2)"),
        M0 => (build(3, |x| (!x[0] || x[1]) && !x[2]), "(x1 → x2) ∧ F(c0)"),
        M1 => (build(3, |x| (!x[0] || x[1]) && x[2]), "(x1 → x2) ∧ T(c1)"),
        M2 => (build(4, |x| (!x[0] || x[1]) && !x[2] && x[3]), "(x1 → x2) ∧ F(c0) ∧ T(c1)"),
        D => (build(2, |x| x[0] != x[1]), "(x1 ≠ x2)"),
        D1 => (build(4, |x| x[0] != x[1] && !x[2] && x[3]), "(x1 ≠ x2) ∧ F(c0) ∧ T(c1)"),
        D2 => (
            build(6, |x| or(&x[..2]) && neq_ext(&x[..4], 2) && !x[4] && x[5]),
            "OR^2_{2≠}(x1,x2,x3,x4) ∧ F(c0) ∧ T(c1)",
        ),
        L => (build(4, even), "EVEN^4(x1,x2,x3,x4)"),
        L0 => (build(4, |x| even(&x[..3]) && !x[3]), "EVEN^3(x1,x2,x3) ∧ F(c0)"),
        L1 => (build(4, |x| !even(&x[..3]) && x[3]), "ODD^3(x1,x2,x3) ∧ T(c1)"),
        L2 => (
            build(8, |x| even(&x[..3]) && neq_ext(&x[..6], 3) && !x[6] && x[7]),
            "EVEN^3_{3≠}(x1,...,x6) ∧ F(c0) ∧ T(c1)",
        ),
        L3 => (build(8, |x| even(&x[..4]) && neq_ext(x, 4)), "EVEN^4_{4≠}(x1,...,x8)"),
        V => (build(4, |x| iv(x) && iv_tail(x)), "(¬x1 ↔ ¬x2¬x3) ∧ (¬x2 ∨ ¬x3 → ¬x4)"),
        V0 => (build(4, |x| iv(x) && !x[3]), "(¬x1 ↔ ¬x2¬x3) ∧ F(c0)"),
        V1 => (
            build(5, |x| iv(x) && iv_tail(x) && x[4]),
            "(¬x1 ↔ ¬x2¬x3) ∧ (¬x2 ∨ ¬x3 → ¬x4) ∧ T(c1)",
        ),
        V2 => (build(5, |x| iv(x) && !x[3] && x[4]), "(¬x1 ↔ ¬x2¬x3) ∧ F(c0) ∧ T(c1)"),
        E => (build(4, |x| ie(x) && ie_tail(x)), "(x1 ↔ x2x3) ∧ (x2 ∨ x3 → x4)"),
        E0 => (
            build(5, |x| ie(x) && ie_tail(x) && !x[4]),
            "(x1 ↔ x2x3) ∧ (x2 ∨ x3 → x4) ∧ F(c0)",
        ),
        E1 => (build(4, |x| ie(x) && x[3]), "(x1 ↔ x2x3) ∧ T(c1)"),
        E2 => (build(5, |x| ie(x) && !x[3] && x[4]), "(x1 ↔ x2x3) ∧ F(c0) ∧ T(c1)"),
        N => (build(4, |x| even(x) && in_core(x)), "EVEN^4(x1,x2,x3,x4) ∧ (x1x4 ↔ x2x3)"),
        N2 => (
            build(8, |x| even(&x[..4]) && neq_ext(x, 4) && in_core(x)),
            "EVEN^4_{4≠}(x1,...,x8) ∧ (x1x4 ↔ x2x3)",
        ),
        I => (
            build(4, |x| ie(x) && (!x[3] == (!x[1] && !x[2]))),
            "(x1 ↔ x2x3) ∧ (¬x4 ↔ ¬x2¬x3)",
        ),
        I0 => (
            build(4, |x| (!x[0] || !x[1]) && ((!x[0] && !x[1]) == !x[2]) && !x[3]),
            "(¬x1 ∨ ¬x2) ∧ (¬x1¬x2 ↔ ¬x3) ∧ F(c0)",
        ),
        I1 => (
            build(4, |x| (x[0] || x[1]) && ((x[0] && x[1]) == x[2]) && x[3]),
            "(x1 ∨ x2) ∧ (x1x2 ↔ x3) ∧ T(c1)",
        ),
        I2 => (
            build(8, |x| one_in_three(&x[..3]) && neq_ext(&x[..6], 3) && !x[6] && x[7]),
            "R^{1/3}_{3≠}(x1,...,x6) ∧ F(c0) ∧ T(c1)",
        ),
        _ => unreachable!("chain family"),
    }
}

/// The weak base of `c` with its defining formula.
pub fn weak_base_entry(c: CoCloneId) -> Result<WeakBaseEntry> {
    let family = c.family();
    let (relation, formula) = if family.is_chain() {
        let n = c.index().ok_or_else(|| Error::Invalid(format!("{c} has no finite base")))?;
        if n > MAX_CHAIN_INDEX {
            return Err(Error::Invalid(format!("chain index {n} exceeds {MAX_CHAIN_INDEX}")));
        }
        chain_row(family, n as usize)
    } else {
        let (r, f) = plain_row(family);
        (r, f.to_string())
    };
    Ok(WeakBaseEntry { co_clone: c, relation: relation.named(format!("R_{c}")), formula })
}

pub fn weak_base(c: CoCloneId) -> Result<Relation> {
    weak_base_entry(c).map(|e| e.relation)
}

/// Every row, with chains instantiated at each index in `chain_indices`.
pub fn catalog(chain_indices: &[u32]) -> Result<Vec<WeakBaseEntry>> {
    let mut out = Vec::new();
    for family in Family::ALL {
        if family.is_chain() {
            for &n in chain_indices {
                out.push(weak_base_entry(CoCloneId::chain_member(family, n)?)?);
            }
        } else {
            out.push(weak_base_entry(CoCloneId::new(family)?)?);
        }
    }
    Ok(out)
}

/// `R_II2` as the displayed three-row matrix.
pub fn r_ii2_matrix() -> Relation {
    Relation::from_rows(&["00111001", "01010101", "10001101"])
        .expect("valid rows")
        .named("R_II2")
}

/// `R_IN2` as the displayed six-row matrix.
pub fn r_in2_matrix() -> Relation {
    Relation::from_rows(&["00001111", "00111100", "01011010", "11110000", "11000011", "10100101"])
        .expect("valid rows")
        .named("R_IN2")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operation::{ops, preserves};

    fn id(s: &str) -> CoCloneId {
        s.parse().unwrap()
    }

    #[test]
    fn matrices() {
        assert_eq!(weak_base(id("II2")).unwrap(), r_ii2_matrix());
        assert_eq!(weak_base(id("IN2")).unwrap().row_set(), r_in2_matrix().row_set());
        let id2 = weak_base(id("ID2")).unwrap();
        let rows: Vec<String> = id2.row_set().into_iter().collect();
        assert_eq!(rows, vec!["011001", "100101", "110001"]);
    }

    #[test]
    fn negation_closure() {
        assert!(preserves(&ops::negation(), &r_in2_matrix()));
        assert!(!preserves(&ops::negation(), &r_ii2_matrix()));
    }

    #[test]
    fn constant_columns() {
        for e in catalog(&[2, 3]).unwrap() {
            let a = e.relation.arity();
            let tail: Vec<&str> = e.formula.rsplit(" ∧ ").take(2).collect();
            let has_t = tail.iter().any(|s| s.starts_with("T(c1)"));
            let has_f = e.formula.contains("F(c0)");
            if has_t {
                assert!(e.relation.tuples().iter().all(|&t| (t >> (a - 1)) & 1 == 1), "{}", e.co_clone);
            }
            if has_f {
                let pos = if has_t { a - 2 } else { a - 1 };
                assert!(e.relation.tuples().iter().all(|&t| (t >> pos) & 1 == 0), "{}", e.co_clone);
            }
        }
    }

    #[test]
    fn limits_rejected() {
        assert!(weak_base(id("IS1")).is_err());
        assert!(weak_base(CoCloneId::chain_member(Family::S1, 22).unwrap()).is_err());
    }
}
