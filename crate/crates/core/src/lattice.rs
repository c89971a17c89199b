//! Post's lattice: clone identifiers, membership by definition, bases, and
//! identification of the co-clone generated by a finite language.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::operation::{ops, preserves, threshold_preserves, BooleanOperation, MAX_OPERATION_ARITY};
use crate::relation::{full_mask, ConstraintLanguage, Relation};
use crate::weak_base::weak_base;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    BF,
    R0,
    R1,
    R2,
    M,
    M1,
    M0,
    M2,
    S0,
    S1,
    S02,
    S01,
    S00,
    S12,
    S11,
    S10,
    D,
    D1,
    D2,
    L,
    L0,
    L1,
    L2,
    L3,
    V,
    V0,
    V1,
    V2,
    E,
    E0,
    E1,
    E2,
    N,
    N2,
    I,
    I0,
    I1,
    I2,
}

impl Family {
    pub const ALL: [Family; 38] = [
        Family::BF,
        Family::R0,
        Family::R1,
        Family::R2,
        Family::M,
        Family::M1,
        Family::M0,
        Family::M2,
        Family::S0,
        Family::S1,
        Family::S02,
        Family::S01,
        Family::S00,
        Family::S12,
        Family::S11,
        Family::S10,
        Family::D,
        Family::D1,
        Family::D2,
        Family::L,
        Family::L0,
        Family::L1,
        Family::L2,
        Family::L3,
        Family::V,
        Family::V0,
        Family::V1,
        Family::V2,
        Family::E,
        Family::E0,
        Family::E1,
        Family::E2,
        Family::N,
        Family::N2,
        Family::I,
        Family::I0,
        Family::I1,
        Family::I2,
    ];

    pub fn name(self) -> &'static str {
        use Family::*;
        match self {
            BF => "BF",
            R0 => "R0",
            R1 => "R1",
            R2 => "R2",
            M => "M",
            M1 => "M1",
            M0 => "M0",
            M2 => "M2",
            S0 => "S0",
            S1 => "S1",
            S02 => "S02",
            S01 => "S01",
            S00 => "S00",
            S12 => "S12",
            S11 => "S11",
            S10 => "S10",
            D => "D",
            D1 => "D1",
            D2 => "D2",
            L => "L",
            L0 => "L0",
            L1 => "L1",
            L2 => "L2",
            L3 => "L3",
            V => "V",
            V0 => "V0",
            V1 => "V1",
            V2 => "V2",
            E => "E",
            E0 => "E0",
            E1 => "E1",
            E2 => "E2",
            N => "N",
            N2 => "N2",
            I => "I",
            I0 => "I0",
            I1 => "I1",
            I2 => "I2",
        }
    }

    /// The eight S-families that come in chains `S^n` with a limit.
    pub fn is_chain(self) -> bool {
        use Family::*;
        matches!(self, S0 | S1 | S02 | S01 | S00 | S12 | S11 | S10)
    }

    /// Chains on the 0 side use `dual(h_n)`; the 1 side uses `h_n`.
    fn chain_side(self) -> Option<bool> {
        use Family::*;
        match self {
            S0 | S02 | S01 | S00 => Some(false),
            S1 | S12 | S11 | S10 => Some(true),
            _ => None,
        }
    }
}

/// Position in an S-chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chain {
    Finite(u32),
    Limit,
}

/// A clone of Post's lattice. Chain families carry a [`Chain`] position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CloneId {
    family: Family,
    chain: Option<Chain>,
}

impl CloneId {
    pub fn new(family: Family) -> Result<Self> {
        if family.is_chain() {
            return Ok(CloneId { family, chain: Some(Chain::Limit) });
        }
        Ok(CloneId { family, chain: None })
    }

    pub fn chain_member(family: Family, n: u32) -> Result<Self> {
        if !family.is_chain() {
            return Err(Error::Invalid(format!("{} has no chain index", family.name())));
        }
        if n < 2 {
            return Err(Error::Invalid(format!("chain index must be >= 2, got {n}")));
        }
        Ok(CloneId { family, chain: Some(Chain::Finite(n)) })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn chain(&self) -> Option<Chain> {
        self.chain
    }

    pub fn index(&self) -> Option<u32> {
        match self.chain {
            Some(Chain::Finite(n)) => Some(n),
            _ => None,
        }
    }

    pub fn is_limit(&self) -> bool {
        self.chain == Some(Chain::Limit)
    }

    fn with_chain(&self, chain: Option<Chain>) -> CloneId {
        CloneId { family: self.family, chain }
    }

    /// Every clone, with chain members for `n = 2..=max_n` and the limits.
    pub fn catalog(max_n: u32) -> Vec<CloneId> {
        let mut out = Vec::new();
        for f in Family::ALL {
            if f.is_chain() {
                for n in 2..=max_n {
                    out.push(CloneId { family: f, chain: Some(Chain::Finite(n)) });
                }
                out.push(CloneId { family: f, chain: Some(Chain::Limit) });
            } else {
                out.push(CloneId { family: f, chain: None });
            }
        }
        out
    }
}

impl fmt::Display for CloneId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.family.name())?;
        if let Some(n) = self.index() {
            write!(f, "^{n}")?;
        }
        Ok(())
    }
}

impl FromStr for CloneId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (base, idx) = match s.split_once('^') {
            Some((b, i)) => (b, Some(i)),
            None => (s, None),
        };
        let family = Family::ALL
            .into_iter()
            .find(|f| f.name() == base)
            .ok_or_else(|| Error::Invalid(format!("unknown clone `{s}`")))?;
        match idx {
            None => CloneId::new(family),
            Some(i) => {
                let n: u32 = i.parse().map_err(|_| Error::Invalid(format!("bad chain index in `{s}`")))?;
                CloneId::chain_member(family, n)
            }
        }
    }
}

/// A co-clone, named by `I` followed by its clone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoCloneId(CloneId);

impl CoCloneId {
    pub fn of(clone: CloneId) -> Self {
        CoCloneId(clone)
    }

    pub fn clone_id(&self) -> CloneId {
        self.0
    }

    pub fn family(&self) -> Family {
        self.0.family
    }

    pub fn index(&self) -> Option<u32> {
        self.0.index()
    }

    pub fn is_limit(&self) -> bool {
        self.0.is_limit()
    }

    pub fn new(family: Family) -> Result<Self> {
        CloneId::new(family).map(CoCloneId)
    }

    pub fn chain_member(family: Family, n: u32) -> Result<Self> {
        CloneId::chain_member(family, n).map(CoCloneId)
    }

    pub fn catalog(max_n: u32) -> Vec<CoCloneId> {
        CloneId::catalog(max_n).into_iter().map(CoCloneId).collect()
    }
}

impl fmt::Display for CoCloneId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I{}", self.0)
    }
}

impl FromStr for CoCloneId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rest = s.strip_prefix('I').ok_or_else(|| Error::Invalid(format!("unknown co-clone `{s}`")))?;
        rest.parse::<CloneId>()
            .map(CoCloneId)
            .map_err(|_| Error::Invalid(format!("unknown co-clone `{s}`")))
    }
}

// ---------------------------------------------------------------------------
// Membership by the defining conditions of each clone.

fn zero_reproducing(f: &BooleanOperation) -> bool {
    !f.eval(0)
}

fn one_reproducing(f: &BooleanOperation) -> bool {
    f.eval(full_mask(f.arity()))
}

fn monotone(f: &BooleanOperation) -> bool {
    let full = full_mask(f.arity());
    (0..=full).all(|a| (0..f.arity()).all(|i| !f.eval(a) || f.eval(a | (1 << i))))
}

fn self_dual(f: &BooleanOperation) -> bool {
    let full = full_mask(f.arity());
    (0..=full).all(|a| f.eval(!a & full) != f.eval(a))
}

fn affine(f: &BooleanOperation) -> bool {
    let full = full_mask(f.arity());
    let c = f.eval(0);
    let lin: u32 = (0..f.arity()).filter(|&i| f.eval(1 << i) != c).fold(0, |acc, i| acc | (1 << i));
    (0..=full).all(|a| f.eval(a) == (c ^ ((a & lin).count_ones() % 2 == 1)))
}

/// Every set of at most `degree` tuples of `f⁻¹(c)` shares a coordinate equal to `c`.
/// `degree = None` means any number.
fn separating(f: &BooleanOperation, c: bool, degree: Option<u32>) -> bool {
    let full = full_mask(f.arity());
    // Work with "c-masks": the coordinates where a tuple has value c.
    let marks: Vec<u32> =
        (0..=full).filter(|&a| f.eval(a) == c).map(|a| if c { a } else { !a & full }).collect();
    match degree {
        None => marks.iter().fold(full, |acc, &m| acc & m) != 0 || marks.is_empty(),
        Some(k) => {
            // DFS over subsets in index order, pruning once the common mask is 0.
            fn go(marks: &[u32], start: usize, common: u32, left: u32) -> bool {
                if common == 0 {
                    return false;
                }
                if left == 0 {
                    return true;
                }
                (start..marks.len()).all(|i| go(marks, i + 1, common & marks[i], left - 1))
            }
            go(&marks, 0, full, k)
        }
    }
}

fn join_homomorphism(f: &BooleanOperation) -> bool {
    let full = full_mask(f.arity());
    (0..=full).all(|a| (0..=full).all(|b| f.eval(a | b) == (f.eval(a) || f.eval(b))))
}

fn meet_homomorphism(f: &BooleanOperation) -> bool {
    let full = full_mask(f.arity());
    (0..=full).all(|a| (0..=full).all(|b| f.eval(a & b) == (f.eval(a) && f.eval(b))))
}

fn essential_vars(f: &BooleanOperation) -> usize {
    let full = full_mask(f.arity());
    (0..f.arity()).filter(|&i| (0..=full).any(|a| f.eval(a) != f.eval(a ^ (1 << i)))).count()
}

fn projection_or_constant(f: &BooleanOperation) -> bool {
    let full = full_mask(f.arity());
    let constant = (0..=full).all(|a| f.eval(a) == f.eval(0));
    constant || (0..f.arity()).any(|i| (0..=full).all(|a| f.eval(a) == ((a >> i) & 1 == 1)))
}

/// Whether `f` belongs to the clone, using the definitions column.
pub fn clone_contains(id: CloneId, f: &BooleanOperation) -> bool {
    use Family::*;
    let r0 = || zero_reproducing(f);
    let r1 = || one_reproducing(f);
    let r2 = || r0() && r1();
    let m = || monotone(f);
    let degree = match id.chain {
        Some(Chain::Finite(n)) => Some(n),
        _ => None,
    };
    let s0 = || separating(f, false, degree);
    let s1 = || separating(f, true, degree);
    match id.family {
        BF => true,
        R0 => r0(),
        R1 => r1(),
        R2 => r2(),
        M => m(),
        M1 => m() && r1(),
        M0 => m() && r0(),
        M2 => m() && r2(),
        S0 => s0(),
        S1 => s1(),
        S02 => s0() && r2(),
        S01 => s0() && m(),
        S00 => s0() && r2() && m(),
        S12 => s1() && r2(),
        S11 => s1() && m(),
        S10 => s1() && r2() && m(),
        D => self_dual(f),
        D1 => self_dual(f) && r2(),
        D2 => self_dual(f) && m(),
        L => affine(f),
        L0 => affine(f) && r0(),
        L1 => affine(f) && r1(),
        L2 => affine(f) && r2(),
        L3 => affine(f) && self_dual(f),
        V => join_homomorphism(f),
        V0 => join_homomorphism(f) && r0(),
        V1 => join_homomorphism(f) && r1(),
        V2 => join_homomorphism(f) && r2(),
        E => meet_homomorphism(f),
        E0 => meet_homomorphism(f) && r0(),
        E1 => meet_homomorphism(f) && r1(),
        E2 => meet_homomorphism(f) && r2(),
        N => essential_vars(f) <= 1,
        N2 => essential_vars(f) <= 1 && self_dual(f),
        I => projection_or_constant(f),
        I0 => projection_or_constant(f) && r0(),
        I1 => projection_or_constant(f) && r1(),
        I2 => projection_or_constant(f) && r2(),
    }
}

// ---------------------------------------------------------------------------
// Bases.

/// A base operation. Threshold generators stand for `h_n`/`dual(h_n)` of any arity.
#[derive(Clone, Debug)]
pub enum Generator {
    Table(BooleanOperation),
    Threshold { n: u32, dual: bool },
}

impl Generator {
    pub fn preserves(&self, r: &Relation) -> bool {
        match self {
            Generator::Table(f) => preserves(f, r),
            Generator::Threshold { n, dual } => threshold_preserves(*n as usize, *dual, r),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Generator::Table(f) => f.name().to_string(),
            Generator::Threshold { n, dual: false } => format!("h{n}"),
            Generator::Threshold { n, dual: true } => format!("dual(h{n})"),
        }
    }
}

fn limit_base(family: Family) -> Vec<BooleanOperation> {
    use Family::*;
    match family {
        BF => vec![ops::min(), ops::negation()],
        R0 => vec![ops::min(), ops::xor2()],
        R1 => vec![ops::max(), ops::xnor2()],
        R2 => vec![ops::max(), ops::and_xnor()],
        M => vec![ops::max(), ops::min(), ops::constant(false), ops::constant(true)],
        M1 => vec![ops::max(), ops::min(), ops::constant(true)],
        M0 => vec![ops::max(), ops::min(), ops::constant(false)],
        M2 => vec![ops::max(), ops::min()],
        S0 => vec![ops::implies()],
        S1 => vec![ops::and_not()],
        S02 => vec![ops::or_and_not()],
        S01 => vec![ops::or_and(), ops::constant(true)],
        S00 => vec![ops::or_and()],
        S12 => vec![ops::and_or_not()],
        S11 => vec![ops::and_or(), ops::constant(false)],
        S10 => vec![ops::and_or()],
        D => vec![ops::self_dual_base()],
        D1 => vec![ops::self_dual_r2_base()],
        D2 => vec![ops::majority()],
        L => vec![ops::xor2(), ops::constant(true)],
        L0 => vec![ops::xor2()],
        L1 => vec![ops::xnor2()],
        L2 => vec![ops::minority()],
        L3 => vec![ops::xor3_not()],
        V => vec![ops::max(), ops::constant(false), ops::constant(true)],
        V0 => vec![ops::max(), ops::constant(false)],
        V1 => vec![ops::max(), ops::constant(true)],
        V2 => vec![ops::max()],
        E => vec![ops::min(), ops::constant(false), ops::constant(true)],
        E0 => vec![ops::min(), ops::constant(false)],
        E1 => vec![ops::min(), ops::constant(true)],
        E2 => vec![ops::min()],
        N => vec![ops::negation(), ops::constant(false), ops::constant(true)],
        N2 => vec![ops::negation()],
        I => vec![ops::identity(), ops::constant(false), ops::constant(true)],
        I0 => vec![ops::identity(), ops::constant(false)],
        I1 => vec![ops::identity(), ops::constant(true)],
        I2 => vec![ops::identity()],
    }
}

/// Generators of a finite chain member: the threshold operation of that
/// index together with the rest of the limit base.
fn chain_generators(family: Family, n: u32) -> Vec<Generator> {
    use Family::*;
    let dual = family.chain_side() == Some(false);
    let th = Generator::Threshold { n, dual };
    let mut out = match family {
        S0 => vec![Generator::Table(ops::implies())],
        S1 => vec![Generator::Table(ops::and_not())],
        S02 => vec![Generator::Table(ops::or_and_not())],
        S01 => vec![Generator::Table(ops::constant(true))],
        S00 => vec![Generator::Table(ops::or_and())],
        S12 => vec![Generator::Table(ops::and_or_not())],
        S11 => vec![Generator::Table(ops::constant(false))],
        S10 => vec![Generator::Table(ops::and_or())],
        _ => unreachable!("not a chain family"),
    };
    out.insert(if matches!(family, S01 | S11) { 0 } else { 1 }, th);
    out
}

pub fn generators(id: CloneId) -> Vec<Generator> {
    match id.chain {
        Some(Chain::Finite(n)) => chain_generators(id.family, n),
        _ => limit_base(id.family).into_iter().map(Generator::Table).collect(),
    }
}

/// Clone bases as truth tables.
pub fn clone_base(id: CloneId) -> Result<Vec<BooleanOperation>> {
    generators(id)
        .into_iter()
        .map(|g| match g {
            Generator::Table(f) => Ok(f),
            Generator::Threshold { n, dual } => {
                if n as usize + 1 > MAX_OPERATION_ARITY {
                    return Err(Error::Arity { arity: n as usize + 1, max: MAX_OPERATION_ARITY });
                }
                if dual {
                    ops::dual_h(n as usize)
                } else {
                    ops::h(n as usize)
                }
            }
        })
        .collect()
}

pub fn base_preserves(id: CloneId, r: &Relation) -> bool {
    generators(id).iter().all(|g| g.preserves(r))
}

// ---------------------------------------------------------------------------
// Order and identification.

/// Replaces the chain positions of `a` and `b` by small ones in the same
/// relative order: 2 stays 2, larger indices and limits map into {3, 4}.
fn compress(a: CloneId, b: CloneId) -> (CloneId, CloneId) {
    let key = |c: Option<Chain>| match c {
        Some(Chain::Finite(n)) => Some(n as u64),
        Some(Chain::Limit) => Some(u64::MAX),
        None => None,
    };
    let mut vals: Vec<u64> = [key(a.chain), key(b.chain)].into_iter().flatten().filter(|&v| v > 2).collect();
    vals.sort_unstable();
    vals.dedup();
    let map = |c: Option<Chain>| -> Option<Chain> {
        match key(c) {
            None => None,
            Some(2) => Some(Chain::Finite(2)),
            Some(v) => {
                let pos = vals.iter().position(|&x| x == v).expect("collected above");
                Some(Chain::Finite(3 + pos as u32))
            }
        }
    };
    (a.with_chain(map(a.chain)), b.with_chain(map(b.chain)))
}

/// `a ⊆ b` as co-clones: every base operation of `clone(b)` preserves the
/// weak base of `a`.
pub fn co_clone_leq(a: CoCloneId, b: CoCloneId) -> bool {
    let (ca, cb) = compress(a.0, b.0);
    co_clone_leq_exact(CoCloneId(ca), CoCloneId(cb)).expect("compressed ids have weak bases")
}

/// The weak-base test without index compression. Fails on limits.
pub fn co_clone_leq_exact(a: CoCloneId, b: CoCloneId) -> Result<bool> {
    let w = weak_base(a)?;
    Ok(base_preserves(b.0, &w))
}

/// The co-clone order derived from the clone definitions: `a ⊆ b` iff every
/// base operation of `clone(b)` lies in `clone(a)`.
pub fn co_clone_leq_by_definitions(a: CoCloneId, b: CoCloneId) -> Result<bool> {
    let base = clone_base(b.0)?;
    Ok(base.iter().all(|f| clone_contains(a.0, f)))
}

/// The co-clone `⟨Γ⟩`.
pub fn co_clone_of(lang: &ConstraintLanguage) -> Result<CoCloneId> {
    if lang.is_empty() {
        return Err(Error::EmptyLanguage);
    }
    let r = lang.max_arity() as u32;
    let max_n = (r + 1).max(2);
    let containing: Vec<CoCloneId> = CoCloneId::catalog(max_n)
        .into_iter()
        .filter(|c| lang.relations().all(|rel| base_preserves(c.0, rel)))
        .collect();
    let minima: Vec<CoCloneId> = containing
        .iter()
        .copied()
        .filter(|&a| containing.iter().all(|&b| co_clone_leq(a, b)))
        .collect();
    match minima.as_slice() {
        [one] => Ok(*one),
        [] => Err(Error::Inconsistent(format!(
            "no least co-clone among {} candidates",
            containing.len()
        ))),
        many => Err(Error::Inconsistent(format!(
            "several least co-clones: {}",
            many.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::{make_relation, RelationSpec};

    #[test]
    fn names_round_trip() {
        for c in CoCloneId::catalog(4) {
            let s = c.to_string();
            assert_eq!(s.parse::<CoCloneId>().unwrap(), c, "{s}");
        }
        assert_eq!("IS12^3".parse::<CoCloneId>().unwrap().index(), Some(3));
        assert!("IS12^1".parse::<CoCloneId>().is_err());
        assert!("IX".parse::<CoCloneId>().is_err());
    }

    #[test]
    fn base_examples() {
        let d2 = clone_base(CloneId::new(Family::D2).unwrap()).unwrap();
        assert_eq!(d2, vec![ops::h(2).unwrap().renamed("maj")]);
        let l2 = clone_base(CloneId::new(Family::L2).unwrap()).unwrap();
        assert_eq!(l2, vec![ops::minority()]);
        let i2 = clone_base(CloneId::new(Family::I2).unwrap()).unwrap();
        assert_eq!(i2, vec![ops::identity()]);
        assert!(clone_base(CloneId::chain_member(Family::S1, 7).unwrap()).is_err());
    }

    #[test]
    fn every_base_satisfies_its_definition() {
        for id in CloneId::catalog(5) {
            for f in clone_base(id).unwrap() {
                assert!(clone_contains(id, &f), "{} not in {id}", f.name());
            }
        }
    }

    #[test]
    fn small_examples() {
        let eq = ConstraintLanguage::single(make_relation(&RelationSpec::Eq).unwrap());
        assert_eq!(co_clone_of(&eq).unwrap().to_string(), "IBF");
        let neq = ConstraintLanguage::single(make_relation(&RelationSpec::Neq).unwrap());
        assert_eq!(co_clone_of(&neq).unwrap().to_string(), "ID");
    }

    #[test]
    fn order_examples() {
        let is21: CoCloneId = "IS1^2".parse().unwrap();
        let ii2: CoCloneId = "II2".parse().unwrap();
        assert!(co_clone_leq(is21, ii2));
        assert!(!co_clone_leq(ii2, is21));
        let il0: CoCloneId = "IL0".parse().unwrap();
        let il2: CoCloneId = "IL2".parse().unwrap();
        assert!(co_clone_leq(il0, il2));
        assert!(!co_clone_leq(il2, il0));
    }
}
