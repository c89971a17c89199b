//! Boolean relations stored as sorted bitmask sets.
//!
//! Coordinate 1 of a tuple is the least significant bit of its mask.
//! Text renderings list coordinate 1 first.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

pub const MAX_RELATION_ARITY: usize = 24;

#[derive(Clone, Debug)]
pub struct Relation {
    arity: usize,
    tuples: Vec<u32>,
    name: Option<String>,
}

impl PartialEq for Relation {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.tuples == other.tuples
    }
}

impl Eq for Relation {}

impl Hash for Relation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.arity.hash(state);
        self.tuples.hash(state);
    }
}

#[inline]
pub fn bit(t: u32, i: usize) -> bool {
    (t >> i) & 1 == 1
}

#[inline]
pub fn full_mask(arity: usize) -> u32 {
    if arity >= 32 {
        u32::MAX
    } else {
        (1u32 << arity) - 1
    }
}

/// Renders a tuple with coordinate 1 leftmost.
pub fn tuple_string(t: u32, arity: usize) -> String {
    (0..arity).map(|i| if bit(t, i) { '1' } else { '0' }).collect()
}

/// Parses a row of `0`/`1` characters, coordinate 1 leftmost.
pub fn parse_tuple(s: &str) -> Option<u32> {
    if s.is_empty() || s.len() > MAX_RELATION_ARITY {
        return None;
    }
    let mut t = 0u32;
    for (i, c) in s.chars().enumerate() {
        match c {
            '0' => {}
            '1' => t |= 1 << i,
            _ => return None,
        }
    }
    Some(t)
}

fn check_arity(arity: usize) -> Result<()> {
    if arity == 0 || arity > MAX_RELATION_ARITY {
        return Err(Error::Arity { arity, max: MAX_RELATION_ARITY });
    }
    Ok(())
}

impl Relation {
    pub fn new(arity: usize, tuples: impl IntoIterator<Item = u32>) -> Result<Self> {
        check_arity(arity)?;
        let full = full_mask(arity);
        let mut v: Vec<u32> = Vec::new();
        for t in tuples {
            if t & !full != 0 {
                return Err(Error::TupleRange { tuple: t as u64, arity });
            }
            v.push(t);
        }
        v.sort_unstable();
        v.dedup();
        Ok(Relation { arity, tuples: v, name: None })
    }

    pub fn empty(arity: usize) -> Result<Self> {
        Self::new(arity, std::iter::empty())
    }

    pub fn full(arity: usize) -> Result<Self> {
        check_arity(arity)?;
        Self::new(arity, 0..=full_mask(arity))
    }

    /// Every tuple whose mask satisfies `pred`.
    pub fn from_fn(arity: usize, pred: impl Fn(u32) -> bool) -> Result<Self> {
        check_arity(arity)?;
        Self::new(arity, (0..=full_mask(arity)).filter(|&t| pred(t)))
    }

    /// Like [`Relation::from_fn`] but the predicate sees coordinates as booleans.
    pub fn from_bits(arity: usize, pred: impl Fn(&[bool]) -> bool) -> Result<Self> {
        check_arity(arity)?;
        let mut buf = vec![false; arity];
        let mut keep = Vec::new();
        for t in 0..=full_mask(arity) {
            for (i, b) in buf.iter_mut().enumerate() {
                *b = bit(t, i);
            }
            if pred(&buf) {
                keep.push(t);
            }
        }
        Self::new(arity, keep)
    }

    pub fn from_rows(rows: &[&str]) -> Result<Self> {
        let arity = rows
            .first()
            .map(|r| r.len())
            .ok_or_else(|| Error::Invalid("no rows given".into()))?;
        let mut ts = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != arity {
                return Err(Error::Invalid(format!("row `{r}` has length {} not {arity}", r.len())));
            }
            ts.push(parse_tuple(r).ok_or_else(|| Error::Invalid(format!("bad row `{r}`")))?);
        }
        Self::new(arity, ts)
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> &str {
        self.name.as_deref().unwrap_or("R")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn tuples(&self) -> &[u32] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    /// Empty relations are legal values; classifiers reject them.
    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, t: u32) -> bool {
        self.tuples.binary_search(&t).is_ok()
    }

    pub fn rows(&self) -> Vec<String> {
        self.tuples.iter().map(|&t| tuple_string(t, self.arity)).collect()
    }

    pub fn row_set(&self) -> BTreeSet<String> {
        self.rows().into_iter().collect()
    }

    /// Keeps the listed coordinates (0-based) in the given order.
    pub fn project(&self, coords: &[usize]) -> Result<Relation> {
        check_arity(coords.len())?;
        for &c in coords {
            if c >= self.arity {
                return Err(Error::Index { index: c, len: self.arity });
            }
        }
        Relation::new(coords.len(), self.tuples.iter().map(|&t| gather(t, coords)))
    }

    /// Appends the coordinates of `other` after those of `self`.
    pub fn product(&self, other: &Relation) -> Result<Relation> {
        let arity = self.arity + other.arity;
        check_arity(arity)?;
        let mut ts = Vec::with_capacity(self.len() * other.len());
        for &a in &self.tuples {
            for &b in &other.tuples {
                ts.push(a | (b << self.arity));
            }
        }
        Relation::new(arity, ts)
    }

    pub fn intersect(&self, other: &Relation) -> Result<Relation> {
        if self.arity != other.arity {
            return Err(Error::Invalid("intersection of relations with different arities".into()));
        }
        Relation::new(self.arity, self.tuples.iter().copied().filter(|&t| other.contains(t)))
    }

    pub fn dense(&self) -> DenseSet {
        DenseSet::new(self)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} {{", self.label(), self.arity)?;
        for (i, r) in self.rows().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

/// Collects bits `t[coords[0]], t[coords[1]], ...` into a fresh mask.
#[inline]
pub fn gather(t: u32, coords: &[usize]) -> u32 {
    let mut out = 0u32;
    for (j, &c) in coords.iter().enumerate() {
        out |= ((t >> c) & 1) << j;
    }
    out
}

/// Constant-time membership table.
#[derive(Clone, Debug)]
pub enum DenseSet {
    Bits(Vec<u64>),
    Sorted(Vec<u32>),
}

impl DenseSet {
    const DENSE_LIMIT: usize = 20;

    pub fn new(r: &Relation) -> Self {
        if r.arity <= Self::DENSE_LIMIT {
            let words = (1usize << r.arity).div_ceil(64);
            let mut bits = vec![0u64; words];
            for &t in &r.tuples {
                bits[(t >> 6) as usize] |= 1 << (t & 63);
            }
            DenseSet::Bits(bits)
        } else {
            DenseSet::Sorted(r.tuples.clone())
        }
    }

    #[inline]
    pub fn contains(&self, t: u32) -> bool {
        match self {
            DenseSet::Bits(b) => (b[(t >> 6) as usize] >> (t & 63)) & 1 == 1,
            DenseSet::Sorted(v) => v.binary_search(&t).is_ok(),
        }
    }
}

/// Named constructors for the relations used throughout the crate.
#[derive(Clone, Debug)]
pub enum RelationSpec {
    Eq,
    Neq,
    T,
    F,
    Or(usize),
    Nand(usize),
    Even(usize),
    Odd(usize),
    OneInThree,
    /// `R(x1..xn) ∧ neq(x1,x_{n+1}) ∧ … ∧ neq(xm,x_{n+m})`.
    NeqExt(Box<Relation>, usize),
    /// Conjunction of relations applied to index tuples over `arity` coordinates.
    Conj(Vec<(Relation, Vec<usize>)>, usize),
}

pub fn make_relation(spec: &RelationSpec) -> Result<Relation> {
    use RelationSpec::*;
    let pos = |n: usize| -> Result<usize> {
        if n == 0 {
            Err(Error::Arity { arity: 0, max: MAX_RELATION_ARITY })
        } else {
            Ok(n)
        }
    };
    match spec {
        Eq => Relation::new(2, [0b00, 0b11]).map(|r| r.named("eq")),
        Neq => Relation::new(2, [0b01, 0b10]).map(|r| r.named("neq")),
        T => Relation::new(1, [1]).map(|r| r.named("T")),
        F => Relation::new(1, [0]).map(|r| r.named("F")),
        Or(n) => {
            let n = pos(*n)?;
            Relation::from_fn(n, |t| t != 0).map(|r| r.named(format!("OR{n}")))
        }
        Nand(n) => {
            let n = pos(*n)?;
            Relation::from_fn(n, |t| t != full_mask(n)).map(|r| r.named(format!("NAND{n}")))
        }
        Even(n) => {
            let n = pos(*n)?;
            Relation::from_fn(n, |t| t.count_ones() % 2 == 0).map(|r| r.named(format!("EVEN{n}")))
        }
        Odd(n) => {
            let n = pos(*n)?;
            Relation::from_fn(n, |t| t.count_ones() % 2 == 1).map(|r| r.named(format!("ODD{n}")))
        }
        OneInThree => Relation::from_fn(3, |t| t.count_ones() == 1).map(|r| r.named("ONE_IN_THREE")),
        NeqExt(r, m) => {
            let (n, m) = (r.arity(), *m);
            if m == 0 || m > n {
                return Err(Error::Invalid(format!("NEQ_EXT needs 1 <= m <= {n}, got {m}")));
            }
            check_arity(n + m)?;
            let low = full_mask(m);
            Relation::new(n + m, r.tuples().iter().map(|&t| t | ((!t & low) << n)))
        }
        Conj(atoms, arity) => {
            let arity = *arity;
            check_arity(arity)?;
            for (r, idx) in atoms {
                if idx.len() != r.arity() {
                    return Err(Error::Invalid(format!(
                        "atom over {} has {} arguments",
                        r.label(),
                        idx.len()
                    )));
                }
                if let Some(&i) = idx.iter().find(|&&i| i >= arity) {
                    return Err(Error::Index { index: i, len: arity });
                }
            }
            let sets: Vec<DenseSet> = atoms.iter().map(|(r, _)| r.dense()).collect();
            Relation::from_fn(arity, |t| {
                atoms.iter().zip(&sets).all(|((_, idx), s)| s.contains(gather(t, idx)))
            })
        }
    }
}

/// A finite set of uniquely named relations, kept in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintLanguage {
    entries: Vec<(String, Relation)>,
}

impl ConstraintLanguage {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, r: Relation) -> Result<()> {
        let name = name.into();
        if self.get(&name).is_some() {
            return Err(Error::Invalid(format!("duplicate relation name `{name}`")));
        }
        let r = r.named(name.clone());
        self.entries.push((name, r));
        Ok(())
    }

    /// Builds a language from relations, naming unnamed ones `R1`, `R2`, ...
    pub fn from_relations(rels: impl IntoIterator<Item = Relation>) -> Result<Self> {
        let mut l = Self::new();
        for (i, r) in rels.into_iter().enumerate() {
            let name = r.name().map(str::to_string).unwrap_or_else(|| format!("R{}", i + 1));
            l.insert(name, r)?;
        }
        Ok(l)
    }

    pub fn single(r: Relation) -> Self {
        Self::from_relations([r]).expect("single relation is uniquely named")
    }

    pub fn get(&self, name: &str) -> Option<&Relation> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Relation)> {
        self.entries.iter().map(|(n, r)| (n.as_str(), r))
    }

    pub fn relations(&self) -> impl Iterator<Item = &Relation> {
        self.entries.iter().map(|(_, r)| r)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_arity(&self) -> usize {
        self.relations().map(Relation::arity).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_in_three_rows() {
        let r = make_relation(&RelationSpec::OneInThree).unwrap();
        assert_eq!(r.row_set(), ["001", "010", "100"].iter().map(|s| s.to_string()).collect());
    }

    #[test]
    fn even3_neq_extension() {
        let e3 = make_relation(&RelationSpec::Even(3)).unwrap();
        let r = make_relation(&RelationSpec::NeqExt(Box::new(e3), 3)).unwrap();
        assert_eq!(r.arity(), 6);
        let rows = r.row_set();
        let want: BTreeSet<String> =
            ["000111", "011100", "101010", "110001"].iter().map(|s| s.to_string()).collect();
        assert_eq!(rows, want);
    }

    #[test]
    fn even2_is_eq() {
        let e2 = make_relation(&RelationSpec::Even(2)).unwrap();
        assert_eq!(e2, make_relation(&RelationSpec::Eq).unwrap());
    }

    #[test]
    fn rejects_bad_tuples_and_arities() {
        assert!(Relation::new(2, [4]).is_err());
        assert!(Relation::new(0, []).is_err());
        assert!(Relation::new(25, []).is_err());
        assert!(make_relation(&RelationSpec::Or(0)).is_err());
        let r = make_relation(&RelationSpec::Eq).unwrap();
        assert!(make_relation(&RelationSpec::NeqExt(Box::new(r.clone()), 3)).is_err());
        assert!(make_relation(&RelationSpec::Conj(vec![(r, vec![0, 2])], 2)).is_err());
    }

    #[test]
    fn tuple_text_is_coordinate_one_first() {
        assert_eq!(tuple_string(0b001, 3), "100");
        assert_eq!(parse_tuple("100"), Some(1));
        let r = Relation::from_rows(&["10", "11"]).unwrap();
        assert_eq!(r.tuples(), &[1, 3]);
    }

    #[test]
    fn empty_relation_is_flagged() {
        let r = Relation::empty(3).unwrap();
        assert!(r.is_empty());
    }
}
