//! Total and partial Boolean operations and the polymorphism tests.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::relation::{bit, full_mask, ConstraintLanguage, Relation};

/// Largest operation arity. `h_6` has arity 7, so the cap is one above the
/// six needed for ternary bases.
pub const MAX_OPERATION_ARITY: usize = 7;

/// Truth table indexed by the argument mask, argument 1 in the low bit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BooleanOperation {
    arity: usize,
    table: u128,
    name: String,
}

fn check_op_arity(arity: usize) -> Result<()> {
    if arity == 0 || arity > MAX_OPERATION_ARITY {
        return Err(Error::Arity { arity, max: MAX_OPERATION_ARITY });
    }
    Ok(())
}

impl BooleanOperation {
    pub fn from_table(arity: usize, table: u128, name: impl Into<String>) -> Result<Self> {
        check_op_arity(arity)?;
        let rows = 1u32 << arity;
        let mask = if rows == 128 { u128::MAX } else { (1u128 << rows) - 1 };
        if table & !mask != 0 {
            return Err(Error::Invalid("truth table longer than 2^arity".into()));
        }
        Ok(BooleanOperation { arity, table, name: name.into() })
    }

    pub fn from_fn(arity: usize, name: impl Into<String>, f: impl Fn(&[bool]) -> bool) -> Result<Self> {
        check_op_arity(arity)?;
        let mut table = 0u128;
        let mut args = vec![false; arity];
        for e in 0..(1u32 << arity) {
            for (i, a) in args.iter_mut().enumerate() {
                *a = bit(e, i);
            }
            if f(&args) {
                table |= 1 << e;
            }
        }
        Self::from_table(arity, table, name)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn table(&self) -> u128 {
        self.table
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    #[inline]
    pub fn eval(&self, args: u32) -> bool {
        (self.table >> args) & 1 == 1
    }

    pub fn eval_bits(&self, args: &[bool]) -> bool {
        let e = args.iter().enumerate().fold(0u32, |acc, (i, &b)| acc | ((b as u32) << i));
        self.eval(e)
    }

    /// `dual(f)(a) = 1 - f(ā)`.
    pub fn dual(&self) -> BooleanOperation {
        let full = full_mask(self.arity);
        let mut table = 0u128;
        for e in 0..=full {
            if !self.eval(!e & full) {
                table |= 1 << e;
            }
        }
        BooleanOperation { arity: self.arity, table, name: format!("dual({})", self.name) }
    }

    pub fn to_partial(&self) -> PartialOperation {
        let rows = 1u32 << self.arity;
        let defined = if rows == 128 { u128::MAX } else { (1u128 << rows) - 1 };
        PartialOperation { arity: self.arity, defined, values: self.table, name: self.name.clone() }
    }

    /// Coordinate-wise image of a tuple sequence.
    pub fn apply(&self, tuples: &[u32], arity: usize) -> u32 {
        let mut out = 0u32;
        for j in 0..arity {
            let e = tuples.iter().enumerate().fold(0u32, |acc, (i, &t)| acc | (((t >> j) & 1) << i));
            if self.eval(e) {
                out |= 1 << j;
            }
        }
        out
    }
}

impl fmt::Display for BooleanOperation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Named operations.
pub mod ops {
    use super::BooleanOperation;

    fn op(arity: usize, name: &str, f: impl Fn(&[bool]) -> bool) -> BooleanOperation {
        BooleanOperation::from_fn(arity, name, f).expect("arity within cap")
    }

    pub fn identity() -> BooleanOperation {
        op(1, "id", |a| a[0])
    }
    pub fn negation() -> BooleanOperation {
        op(1, "not", |a| !a[0])
    }
    pub fn constant(c: bool) -> BooleanOperation {
        op(1, if c { "1" } else { "0" }, move |_| c)
    }
    pub fn min() -> BooleanOperation {
        op(2, "min", |a| a[0] && a[1])
    }
    pub fn max() -> BooleanOperation {
        op(2, "max", |a| a[0] || a[1])
    }
    pub fn xor2() -> BooleanOperation {
        op(2, "x^y", |a| a[0] ^ a[1])
    }
    pub fn xnor2() -> BooleanOperation {
        op(2, "x^y^1", |a| !(a[0] ^ a[1]))
    }
    pub fn implies() -> BooleanOperation {
        op(2, "x->y", |a| !a[0] || a[1])
    }
    pub fn and_not() -> BooleanOperation {
        op(2, "x&!y", |a| a[0] && !a[1])
    }
    pub fn minority() -> BooleanOperation {
        op(3, "x^y^z", |a| a[0] ^ a[1] ^ a[2])
    }
    pub fn xor3_not() -> BooleanOperation {
        op(3, "x^y^z^1", |a| !(a[0] ^ a[1] ^ a[2]))
    }
    pub fn majority() -> BooleanOperation {
        op(3, "maj", |a| (a[0] && a[1]) || (a[0] && a[2]) || (a[1] && a[2]))
    }
    /// `x ∧ (y ⊕ z ⊕ 1)`.
    pub fn and_xnor() -> BooleanOperation {
        op(3, "x&(y^z^1)", |a| a[0] && !(a[1] ^ a[2]))
    }
    pub fn or_and_not() -> BooleanOperation {
        op(3, "x|(y&!z)", |a| a[0] || (a[1] && !a[2]))
    }
    pub fn or_and() -> BooleanOperation {
        op(3, "x|(y&z)", |a| a[0] || (a[1] && a[2]))
    }
    pub fn and_or_not() -> BooleanOperation {
        op(3, "x&(y|!z)", |a| a[0] && (a[1] || !a[2]))
    }
    pub fn and_or() -> BooleanOperation {
        op(3, "x&(y|z)", |a| a[0] && (a[1] || a[2]))
    }
    /// `(x∧¬y) ∨ (x∧¬z) ∨ (¬y∧¬z)`.
    pub fn self_dual_base() -> BooleanOperation {
        op(3, "(x&!y)|(x&!z)|(!y&!z)", |a| (a[0] && !a[1]) || (a[0] && !a[2]) || (!a[1] && !a[2]))
    }
    /// `(x∧y) ∨ (x∧¬z) ∨ (y∧¬z)`.
    pub fn self_dual_r2_base() -> BooleanOperation {
        op(3, "(x&y)|(x&!z)|(y&!z)", |a| (a[0] && a[1]) || (a[0] && !a[2]) || (a[1] && !a[2]))
    }

    /// `h_n(x1..x_{n+1})`: 1 iff at most one argument is 0.
    pub fn h(n: usize) -> crate::error::Result<BooleanOperation> {
        BooleanOperation::from_fn(n + 1, format!("h{n}"), |a| a.iter().filter(|&&b| !b).count() <= 1)
    }

    pub fn dual_h(n: usize) -> crate::error::Result<BooleanOperation> {
        Ok(h(n)?.dual().renamed(format!("dual(h{n})")))
    }
}

/// The ternary operation with `f(y,x,x) = f(y,x,y) = f(x,x,y) = y`.
pub fn arithmetical_operation() -> BooleanOperation {
    // Every Boolean triple has two equal entries, so one identity applies.
    BooleanOperation::from_fn(3, "arith", |a| if a[1] == a[2] || a[0] == a[2] { a[0] } else { a[2] })
        .expect("ternary")
}

/// A violating tuple sequence and its image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub tuples: Vec<u32>,
    pub image: u32,
}

/// First sequence (in lexicographic order of tuple indices) whose image leaves `r`.
pub fn find_violation(f: &BooleanOperation, r: &Relation) -> Option<Violation> {
    if r.is_empty() {
        return None;
    }
    let k = f.arity();
    let full = full_mask(r.arity());
    let ts = r.tuples();
    let set = r.dense();
    let ones: Vec<usize> = (0..(1usize << k)).filter(|&e| f.eval(e as u32)).collect();
    // prefix[d][e] = AND over i<d of (t_i if e_i else !t_i)
    let mut prefix: Vec<Vec<u32>> = (0..=k).map(|d| vec![0u32; 1 << d]).collect();
    prefix[0][0] = full;
    let mut idx = vec![0usize; k];
    let mut d = 0usize;
    loop {
        if d == k {
            let img = ones.iter().fold(0u32, |acc, &e| acc | prefix[k][e]);
            if !set.contains(img) {
                return Some(Violation { tuples: idx.iter().map(|&i| ts[i]).collect(), image: img });
            }
            // backtrack
            loop {
                if d == 0 {
                    return None;
                }
                d -= 1;
                idx[d] += 1;
                if idx[d] < ts.len() {
                    break;
                }
                idx[d] = 0;
            }
        }
        let t = ts[idx[d]];
        let (lo, hi) = prefix.split_at_mut(d + 1);
        let prev = &lo[d];
        let next = &mut hi[0];
        for e in 0..(1usize << (d + 1)) {
            let p = prev[e & !(1 << d)];
            next[e] = if (e >> d) & 1 == 1 { p & t } else { p & !t & full };
        }
        d += 1;
    }
}

pub fn preserves(f: &BooleanOperation, r: &Relation) -> bool {
    find_violation(f, r).is_none()
}

pub fn preserves_language(f: &BooleanOperation, lang: &ConstraintLanguage) -> bool {
    lang.relations().all(|r| preserves(f, r))
}

/// A Boolean operation with gaps in its table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialOperation {
    arity: usize,
    defined: u128,
    values: u128,
    name: String,
}

impl PartialOperation {
    /// `entries` lists `(argument mask, value)` pairs.
    pub fn new(arity: usize, entries: &[(u32, bool)], name: impl Into<String>) -> Result<Self> {
        check_op_arity(arity)?;
        if entries.is_empty() {
            return Err(Error::Invalid("partial operation with no defined entry".into()));
        }
        let mut defined = 0u128;
        let mut values = 0u128;
        for &(e, v) in entries {
            if e >= (1 << arity) {
                return Err(Error::TupleRange { tuple: e as u64, arity });
            }
            defined |= 1 << e;
            if v {
                values |= 1 << e;
            }
        }
        Ok(PartialOperation { arity, defined, values, name: name.into() })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, args: u32) -> Option<bool> {
        if (self.defined >> args) & 1 == 1 {
            Some((self.values >> args) & 1 == 1)
        } else {
            None
        }
    }
}

pub fn find_partial_violation(p: &PartialOperation, r: &Relation) -> Option<Violation> {
    if r.is_empty() {
        return None;
    }
    let k = p.arity();
    let ts = r.tuples();
    let mut idx = vec![0usize; k];
    loop {
        let seq: Vec<u32> = idx.iter().map(|&i| ts[i]).collect();
        let mut img = 0u32;
        let mut ok = true;
        for j in 0..r.arity() {
            let e = seq.iter().enumerate().fold(0u32, |acc, (i, &t)| acc | (((t >> j) & 1) << i));
            match p.eval(e) {
                Some(true) => img |= 1 << j,
                Some(false) => {}
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && !r.contains(img) {
            return Some(Violation { tuples: seq, image: img });
        }
        let mut d = k;
        loop {
            if d == 0 {
                return None;
            }
            d -= 1;
            idx[d] += 1;
            if idx[d] < ts.len() {
                break;
            }
            idx[d] = 0;
        }
    }
}

pub fn preserves_partial(p: &PartialOperation, r: &Relation) -> bool {
    find_partial_violation(p, r).is_none()
}

/// Whether `h_n` (or `dual(h_n)` when `dual`) preserves `r`, for any `n >= 1`.
///
/// The image coordinate is decided by whether two or more of the `n+1`
/// arguments carry the minority bit there, so only multisets matter.
pub fn threshold_preserves(n: usize, dual: bool, r: &Relation) -> bool {
    if r.is_empty() {
        return true;
    }
    let full = full_mask(r.arity());
    let marks: Vec<u32> = r.tuples().iter().map(|&t| if dual { t } else { !t & full }).collect();
    let mut layer: HashSet<(u32, u32)> = HashSet::new();
    layer.insert((0, 0));
    for _ in 0..=n {
        let mut next = HashSet::with_capacity(layer.len() * 2);
        for &(c1, c2) in &layer {
            for &s in &marks {
                next.insert((c1 | s, c2 | (c1 & s)));
            }
        }
        if next == layer {
            break;
        }
        layer = next;
    }
    let set = r.dense();
    layer.iter().all(|&(_, c2)| {
        let img = if dual { c2 } else { !c2 & full };
        set.contains(img)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::{make_relation, RelationSpec};

    #[test]
    fn arithmetical_table() {
        let f = arithmetical_operation();
        // rows written as (a1,a2,a3) with a1 in the low bit
        let ones: Vec<u32> = (0..8).filter(|&e| f.eval(e)).collect();
        assert_eq!(ones, vec![0b001, 0b100, 0b101, 0b111]);
        for e in 0..8u32 {
            assert_eq!(f.eval(!e & 7), !f.eval(e), "self-dual");
        }
        assert!(!f.eval(0) && f.eval(7), "idempotent");
    }

    #[test]
    fn max_and_min_on_or2() {
        let or2 = make_relation(&RelationSpec::Or(2)).unwrap();
        assert!(preserves(&ops::max(), &or2));
        let v = find_violation(&ops::min(), &or2).unwrap();
        assert_eq!(v.image, 0);
        let mut seq = v.tuples.clone();
        seq.sort();
        assert_eq!(seq, vec![0b01, 0b10]);
        assert!(preserves(&ops::negation(), &make_relation(&RelationSpec::Neq).unwrap()));
    }

    #[test]
    fn partial_examples() {
        let p = PartialOperation::new(1, &[(0, true)], "p").unwrap();
        assert!(preserves_partial(&p, &make_relation(&RelationSpec::T).unwrap()));
        assert!(!preserves_partial(&p, &make_relation(&RelationSpec::F).unwrap()));
        let q = PartialOperation::new(2, &[(0b10, false), (0b01, false)], "q").unwrap();
        assert!(!preserves_partial(&q, &make_relation(&RelationSpec::Neq).unwrap()));
    }

    #[test]
    fn threshold_matches_tables() {
        let rels = [
            make_relation(&RelationSpec::Nand(3)).unwrap(),
            make_relation(&RelationSpec::Or(3)).unwrap(),
            make_relation(&RelationSpec::OneInThree).unwrap(),
            make_relation(&RelationSpec::Even(4)).unwrap(),
        ];
        for r in &rels {
            for n in 1..=5 {
                assert_eq!(threshold_preserves(n, false, r), preserves(&ops::h(n).unwrap(), r));
                assert_eq!(threshold_preserves(n, true, r), preserves(&ops::dual_h(n).unwrap(), r));
            }
        }
    }
}
