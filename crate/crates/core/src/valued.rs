//! Finite-valued cost functions, multimorphisms, the Boolean VCSP
//! classifier and the synthesis of `f_≠` from an NP-hard set of cost
//! functions.
//!
//! Witness searches run over tuples in lexicographic order with coordinate 1
//! most significant, so `(0,1)` comes before `(1,0)`.

use std::fmt;

use num_traits::{One, Zero};

use crate::classify::Complexity;
use crate::error::{Error, Result};
use crate::operation::{ops, BooleanOperation};
use crate::rational::{self, Rational};
use crate::relation::{full_mask, tuple_string, Relation};

pub const MAX_COST_ARITY: usize = 8;

#[derive(Clone, Debug)]
pub struct CostFunction {
    arity: usize,
    table: Vec<Rational>,
    name: Option<String>,
}

impl PartialEq for CostFunction {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.table == other.table
    }
}

impl Eq for CostFunction {}

impl CostFunction {
    /// `table[mask]` is the cost of the tuple `mask` (coordinate 1 is bit 0).
    pub fn new(arity: usize, table: Vec<Rational>) -> Result<Self> {
        if arity == 0 || arity > MAX_COST_ARITY {
            return Err(Error::Arity { arity, max: MAX_COST_ARITY });
        }
        if table.len() != 1 << arity {
            return Err(Error::Invalid(format!("cost table of arity {arity} needs {} entries", 1 << arity)));
        }
        if let Some(v) = table.iter().find(|v| !rational::is_nonneg(v)) {
            return Err(Error::Invalid(format!("negative cost {}", rational::format(v))));
        }
        Ok(CostFunction { arity, table, name: None })
    }

    pub fn from_fn(arity: usize, f: impl Fn(u32) -> Rational) -> Result<Self> {
        if arity == 0 || arity > MAX_COST_ARITY {
            return Err(Error::Arity { arity, max: MAX_COST_ARITY });
        }
        Self::new(arity, (0..=full_mask(arity)).map(f).collect())
    }

    pub fn from_ints(arity: usize, values: &[i64]) -> Result<Self> {
        Self::new(arity, values.iter().map(|&v| rational::int(v)).collect())
    }

    /// 0 on tuples of the relation, 1 elsewhere.
    pub fn indicator(r: &Relation) -> Result<Self> {
        Self::from_fn(r.arity(), |t| if r.contains(t) { Rational::zero() } else { Rational::one() })
            .map(|f| f.named(format!("f_{}", r.label())))
    }

    /// `f_≠`: 0 on unequal arguments, 1 on equal ones.
    pub fn f_neq() -> Self {
        Self::from_ints(2, &[1, 0, 0, 1]).expect("binary").named("f_neq")
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> &str {
        self.name.as_deref().unwrap_or("f")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[Rational] {
        &self.table
    }

    pub fn eval(&self, t: u32) -> &Rational {
        &self.table[t as usize]
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        CostFunction { arity: self.arity, table: self.table.iter().map(|v| v * c).collect(), name: self.name.clone() }
    }

    pub fn shifted(&self, c: &Rational) -> Result<Self> {
        Self::new(self.arity, self.table.iter().map(|v| v + c).collect()).map(|f| match &self.name {
            Some(n) => f.named(n.clone()),
            None => f,
        })
    }
}

/// Tuples of the given arity in lexicographic order, coordinate 1 first.
pub fn lex_tuples(arity: usize) -> impl Iterator<Item = u32> {
    (0..1u32 << arity).map(move |k| reverse_bits(k, arity))
}

fn reverse_bits(k: u32, arity: usize) -> u32 {
    (0..arity).fold(0, |acc, i| acc | (((k >> (arity - 1 - i)) & 1) << i))
}

// ---------------------------------------------------------------------------
// Multimorphisms.

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultimorphismWitness {
    /// `ν(p(x)) > ν(x)`.
    Unary { operation: String, function: usize, arity: usize, x: u32 },
    /// `ν(f(s,t)) + ν(g(s,t)) > ν(s) + ν(t)`.
    Binary { operations: (String, String), function: usize, arity: usize, s: u32, t: u32 },
}

impl fmt::Display for MultimorphismWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultimorphismWitness::Unary { operation, function, arity, x } => {
                write!(f, "not ({operation}): function #{function} at x={}", tuple_string(*x, *arity))
            }
            MultimorphismWitness::Binary { operations, function, arity, s, t } => write!(
                f,
                "not ({},{}): function #{function} at s={} t={}",
                operations.0,
                operations.1,
                tuple_string(*s, *arity),
                tuple_string(*t, *arity)
            ),
        }
    }
}

fn apply_unary(p: &BooleanOperation, x: u32, arity: usize) -> u32 {
    p.apply(&[x], arity)
}

pub fn unary_violation(delta: &[CostFunction], p: &BooleanOperation) -> Option<MultimorphismWitness> {
    delta.iter().enumerate().find_map(|(i, nu)| {
        lex_tuples(nu.arity)
            .find(|&x| nu.eval(apply_unary(p, x, nu.arity)) > nu.eval(x))
            .map(|x| MultimorphismWitness::Unary { operation: p.name().to_string(), function: i, arity: nu.arity, x })
    })
}

pub fn admits_unary_multimorphism(delta: &[CostFunction], p: &BooleanOperation) -> bool {
    unary_violation(delta, p).is_none()
}

pub fn binary_violation(
    delta: &[CostFunction],
    f: &BooleanOperation,
    g: &BooleanOperation,
) -> Option<MultimorphismWitness> {
    delta.iter().enumerate().find_map(|(i, nu)| {
        let a = nu.arity;
        lex_tuples(a).find_map(|s| {
            lex_tuples(a)
                .find(|&t| nu.eval(f.apply(&[s, t], a)) + nu.eval(g.apply(&[s, t], a)) > nu.eval(s) + nu.eval(t))
                .map(|t| MultimorphismWitness::Binary {
                    operations: (f.name().to_string(), g.name().to_string()),
                    function: i,
                    arity: a,
                    s,
                    t,
                })
        })
    })
}

pub fn admits_binary_multimorphism(delta: &[CostFunction], f: &BooleanOperation, g: &BooleanOperation) -> bool {
    binary_violation(delta, f, g).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcspClassification {
    pub verdict: Complexity,
    /// Admitted multimorphisms among `(0)`, `(1)`, `(min,max)`.
    pub admitted: Vec<String>,
    pub witnesses: Vec<MultimorphismWitness>,
}

impl fmt::Display for VcspClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.verdict {
            Complexity::P => writeln!(f, "P ({})", self.admitted.join(", "))?,
            Complexity::NpHard => writeln!(f, "NP-hard")?,
        }
        for w in &self.witnesses {
            writeln!(f, "  {w}")?;
        }
        Ok(())
    }
}

pub fn classify_vcsp(delta: &[CostFunction]) -> Result<VcspClassification> {
    if delta.is_empty() {
        return Err(Error::EmptyLanguage);
    }
    let mut admitted = Vec::new();
    let mut witnesses = Vec::new();
    for (label, c) in [("(0)", false), ("(1)", true)] {
        match unary_violation(delta, &ops::constant(c)) {
            None => admitted.push(label.to_string()),
            Some(w) => witnesses.push(w),
        }
    }
    match binary_violation(delta, &ops::min(), &ops::max()) {
        None => admitted.push("(min,max)".to_string()),
        Some(w) => witnesses.push(w),
    }
    let verdict = if admitted.is_empty() { Complexity::NpHard } else { Complexity::P };
    Ok(VcspClassification { verdict, admitted, witnesses })
}

// ---------------------------------------------------------------------------
// Expressing f_≠.

/// An argument slot of a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    X,
    Y,
    V0,
    V1,
}

impl Slot {
    fn pick(self, x: bool, y: bool, v0: bool, v1: bool) -> bool {
        match self {
            Slot::X => x,
            Slot::Y => y,
            Slot::V0 => v0,
            Slot::V1 => v1,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Slot::X => "x",
            Slot::Y => "y",
            Slot::V0 => "v0",
            Slot::V1 => "v1",
        }
    }

    fn substitute(self, map: &[(Slot, Slot)]) -> Slot {
        map.iter().find(|(from, _)| *from == self).map(|&(_, to)| to).unwrap_or(self)
    }
}

/// `weight · Δ[function](slots)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub weight: Rational,
    pub function: usize,
    pub slots: Vec<Slot>,
}

impl Term {
    fn eval(&self, delta: &[CostFunction], x: bool, y: bool, v0: bool, v1: bool) -> Rational {
        let t = self
            .slots
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, s)| acc | ((s.pick(x, y, v0, v1) as u32) << i));
        &self.weight * delta[self.function].eval(t)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<&str> = self.slots.iter().map(|s| s.name()).collect();
        write!(f, "{}·f{}({})", rational::format(&self.weight), self.function, args.join(","))
    }
}

/// A weighted sum of terms plus a constant.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Combo {
    terms: Vec<Term>,
    constant: Rational,
}

impl Combo {
    fn eval(&self, delta: &[CostFunction], x: bool, y: bool, v0: bool, v1: bool) -> Rational {
        self.terms.iter().fold(self.constant.clone(), |acc, t| acc + t.eval(delta, x, y, v0, v1))
    }

    /// Value with the constants in place.
    fn at(&self, delta: &[CostFunction], x: bool, y: bool) -> Rational {
        self.eval(delta, x, y, false, true)
    }

    fn scale(&self, c: &Rational) -> Combo {
        Combo {
            terms: self.terms.iter().map(|t| Term { weight: &t.weight * c, ..t.clone() }).collect(),
            constant: &self.constant * c,
        }
    }

    fn add(mut self, other: Combo) -> Combo {
        self.terms.extend(other.terms);
        self.constant += other.constant;
        self
    }

    fn offset(mut self, c: &Rational) -> Combo {
        self.constant += c;
        self
    }

    fn substitute(&self, map: &[(Slot, Slot)]) -> Combo {
        Combo {
            terms: self
                .terms
                .iter()
                .map(|t| Term { slots: t.slots.iter().map(|s| s.substitute(map)).collect(), ..t.clone() })
                .collect(),
            constant: self.constant.clone(),
        }
    }

    fn range(&self, delta: &[CostFunction]) -> Rational {
        let vals: Vec<Rational> = (0..16u32)
            .map(|m| self.eval(delta, m & 1 == 1, m & 2 == 2, m & 4 == 4, m & 8 == 8))
            .collect();
        let max = vals.iter().max().expect("16 points").clone();
        let min = vals.iter().min().expect("16 points").clone();
        max - min
    }
}

/// `f_≠(x,y) = α1·(Σ terms)(x,y,v0,v1) + α2` once `v0 = 0` and `v1 = 1`
/// are forced by minimizing the forcing terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeqExpression {
    pub terms: Vec<Term>,
    pub forcing: Vec<Term>,
    pub alpha1: Rational,
    pub alpha2: Rational,
    /// True when no term refers to `v0` or `v1`.
    pub vestigial_constants: bool,
    pub trace: Vec<String>,
}

impl fmt::Display for NeqExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.trace {
            writeln!(f, "# {line}")?;
        }
        let join = |ts: &[Term]| ts.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" + ");
        writeln!(f, "terms: {}", if self.terms.is_empty() { "0".into() } else { join(&self.terms) })?;
        writeln!(f, "forcing: {}", if self.forcing.is_empty() { "none".into() } else { join(&self.forcing) })?;
        writeln!(f, "alpha1: {}", rational::format(&self.alpha1))?;
        writeln!(f, "alpha2: {}", rational::format(&self.alpha2))?;
        write!(f, "vestigial constants: {}", self.vestigial_constants)
    }
}

fn single(function: usize, slots: Vec<Slot>) -> Combo {
    Combo { terms: vec![Term { weight: Rational::one(), function, slots }], constant: Rational::zero() }
}

fn mask_bits(t: u32, arity: usize) -> Vec<bool> {
    (0..arity).map(|i| (t >> i) & 1 == 1).collect()
}

/// Runs the case analysis of the hardness proof and returns the expression.
pub fn express_neq(delta: &[CostFunction]) -> Result<NeqExpression> {
    let class = classify_vcsp(delta)?;
    if class.verdict == Complexity::P {
        return Err(Error::NotHard(format!("admits {}", class.admitted.join(", "))));
    }
    let mut trace = Vec::new();

    // g(0̄) > g(u) and h(1̄) > h(v).
    let (gi, u) = delta
        .iter()
        .enumerate()
        .find_map(|(i, f)| lex_tuples(f.arity).find(|&u| f.eval(0) > f.eval(u)).map(|u| (i, u)))
        .ok_or_else(|| Error::Inconsistent("no witness against (0)".into()))?;
    let (hi, v) = delta
        .iter()
        .enumerate()
        .find_map(|(i, f)| {
            let ones = full_mask(f.arity);
            lex_tuples(f.arity).find(|&v| f.eval(ones) > f.eval(v)).map(|v| (i, v))
        })
        .ok_or_else(|| Error::Inconsistent("no witness against (1)".into()))?;
    let (a, b_len) = (delta[gi].arity, delta[hi].arity);
    trace.push(format!(
        "g = f{gi}, u = {}; h = f{hi}, v = {}",
        tuple_string(u, a),
        tuple_string(v, b_len)
    ));

    // w ∈ argmin g(x_1..x_a) + h(x_{a+1}..x_b), least in lexicographic order.
    let b = a + b_len;
    let split = |w: u32| (w & full_mask(a), w >> a);
    let cost = |w: u32| {
        let (lo, hi_part) = split(w);
        delta[gi].eval(lo) + delta[hi].eval(hi_part)
    };
    let mut w = None::<(u32, Rational)>;
    for t in lex_tuples(b) {
        let c = cost(t);
        if w.as_ref().is_none_or(|(_, best)| c < *best) {
            w = Some((t, c));
        }
    }
    let w = w.expect("nonempty").0;
    trace.push(format!("w = {}", tuple_string(w, b)));
    let wb = mask_bits(w, b);
    let slot_of = |bit: bool| if bit { Slot::Y } else { Slot::X };
    let o = single(gi, wb[..a].iter().map(|&bit| slot_of(bit)).collect())
        .add(single(hi, wb[a..].iter().map(|&bit| slot_of(bit)).collect()));
    let ov = |x: bool, y: bool| o.at(delta, x, y);
    let (o00, o01, o10, o11) = (ov(false, false), ov(false, true), ov(true, false), ov(true, true));
    trace.push(format!(
        "o(0,0)={} o(0,1)={} o(1,0)={} o(1,1)={}",
        rational::format(&o00),
        rational::format(&o01),
        rational::format(&o10),
        rational::format(&o11)
    ));
    if !(o01 < o00 && o01 < o11) {
        return Err(Error::Inconsistent("(0,1) does not minimize o".into()));
    }

    // Forcing v0 = 0 and v1 = 1, before scaling.
    let forcing: Option<Combo> = if o00 != o11 {
        if o00 < o11 {
            trace.push("o(0,0) < o(1,1): force v0 by o(v0,v0), then v1 by g'(v1)".into());
            let first = o.substitute(&[(Slot::X, Slot::V0), (Slot::Y, Slot::V0)]);
            let ub = mask_bits(u, a);
            let second = single(gi, ub.iter().map(|&bit| if bit { Slot::V1 } else { Slot::V0 }).collect());
            Some(stack_forcing(delta, first, second, true))
        } else {
            trace.push("o(1,1) < o(0,0): force v1 by o(v1,v1), then v0 by h'(v0)".into());
            let first = o.substitute(&[(Slot::X, Slot::V1), (Slot::Y, Slot::V1)]);
            let vb = mask_bits(v, b_len);
            let second = single(hi, vb.iter().map(|&bit| if bit { Slot::V1 } else { Slot::V0 }).collect());
            Some(stack_forcing(delta, first, second, false))
        }
    } else if o01 == o10 {
        trace.push("o(0,0) = o(1,1) and o(0,1) = o(1,0): f_neq is affine in o".into());
        let (alpha1, alpha2) = normalize(&o00, &o01);
        return finish(delta, o, None, alpha1, alpha2, trace);
    } else if o01 < o10 {
        trace.push("o(0,0) = o(1,1), o(0,1) < o(1,0): force by o(v0,v1)".into());
        Some(o.substitute(&[(Slot::X, Slot::V0), (Slot::Y, Slot::V1)]))
    } else {
        trace.push("o(0,0) = o(1,1), o(1,0) < o(0,1): force by o(v1,v0)".into());
        Some(o.substitute(&[(Slot::X, Slot::V1), (Slot::Y, Slot::V0)]))
    };

    // f(min(s,t)) + f(max(s,t)) > f(s) + f(t).
    let (fi, s, t) = match class.witnesses.iter().find_map(|w| match w {
        MultimorphismWitness::Binary { function, s, t, .. } => Some((*function, *s, *t)),
        _ => None,
    }) {
        Some(x) => x,
        None => return Err(Error::Inconsistent("no witness against (min,max)".into())),
    };
    let k = delta[fi].arity;
    trace.push(format!("f = f{fi}, s = {}, t = {}", tuple_string(s, k), tuple_string(t, k)));
    let sb = mask_bits(s, k);
    let tb = mask_bits(t, k);
    let g2_slots: Vec<Slot> = (0..k)
        .map(|i| {
            if sb[i] && tb[i] {
                Slot::V1
            } else if !sb[i] && !tb[i] {
                Slot::V0
            } else if sb[i] && !tb[i] {
                Slot::X
            } else {
                Slot::Y
            }
        })
        .collect();
    let g2 = single(fi, g2_slots);
    let h = g2.clone().add(g2.substitute(&[(Slot::X, Slot::Y), (Slot::Y, Slot::X)]));
    let hv = |x: bool, y: bool| h.at(delta, x, y);
    let (h00, h01, h11) = (hv(false, false), hv(false, true), hv(true, true));
    trace.push(format!(
        "h(0,0)={} h(0,1)={} h(1,1)={}",
        rational::format(&h00),
        rational::format(&h01),
        rational::format(&h11)
    ));
    let two = rational::int(2);
    let main = if h00 == h11 {
        trace.push("h(0,0) = h(1,1): f_neq is affine in h".into());
        h
    } else if h11 > h00 {
        trace.push("h(1,1) > h(0,0): h' = f1(x) + f1(y) + h".into());
        let d = &h11 - &h00;
        // f1(x) = (o(v0,x) - o(0,1)) / (o(0,0) - o(0,1)).
        let scale = Rational::one() / (&o00 - &o01);
        let f1 = |arg: Slot| {
            o.substitute(&[(Slot::X, Slot::V0), (Slot::Y, arg)]).scale(&scale).offset(&(-(&o01 * &scale)))
        };
        f1(Slot::X).add(f1(Slot::Y)).add(h.scale(&(&two / d)))
    } else {
        trace.push("h(0,0) > h(1,1): h' = f0(x) + f0(y) + h".into());
        let d = &h00 - &h11;
        // f0(x) = (o(x,v1) - o(0,1)) / (o(1,1) - o(0,1)).
        let scale = Rational::one() / (&o11 - &o01);
        let f0 = |arg: Slot| {
            o.substitute(&[(Slot::X, arg), (Slot::Y, Slot::V1)]).scale(&scale).offset(&(-(&o01 * &scale)))
        };
        f0(Slot::X).add(f0(Slot::Y)).add(h.scale(&(&two / d)))
    };
    let a_val = main.at(delta, false, false);
    let b_val = main.at(delta, false, true);
    let (alpha1, alpha2) = normalize(&a_val, &b_val);
    finish(delta, main, forcing, alpha1, alpha2, trace)
}

/// Weights `W1·first + W2·second` so that `(0,1)` uniquely minimizes the sum.
/// `first` pins one constant on its own (`v0` when `pins_v0`); `second`
/// pins the other once the first is in place.
fn stack_forcing(delta: &[CostFunction], first: Combo, second: Combo, pins_v0: bool) -> Combo {
    let at = |c: &Combo, v0: bool, v1: bool| c.eval(delta, false, false, v0, v1);
    let good_first = at(&first, false, true);
    let (bad_first, bad_second) = if pins_v0 {
        (at(&first, true, true), at(&second, false, false))
    } else {
        (at(&first, false, false), at(&second, true, true))
    };
    let w2 = Rational::one() / (bad_second - at(&second, false, true));
    let second = second.scale(&w2);
    let w1 = (Rational::one() + second.range(delta)) / (bad_first - good_first);
    first.scale(&w1).add(second)
}

fn normalize(a: &Rational, b: &Rational) -> (Rational, Rational) {
    let d = a - b;
    (Rational::one() / &d, -(b / &d))
}

fn finish(
    delta: &[CostFunction],
    main: Combo,
    forcing: Option<Combo>,
    alpha1: Rational,
    alpha2: Rational,
    mut trace: Vec<String>,
) -> Result<NeqExpression> {
    let alpha2 = &alpha2 + &alpha1 * &main.constant;
    let uses_constants = main.terms.iter().any(|t| t.slots.iter().any(|s| matches!(s, Slot::V0 | Slot::V1)));
    let forcing_terms = match (forcing, uses_constants) {
        (Some(f), true) => {
            let at = |v0: bool, v1: bool| f.eval(delta, false, false, v0, v1);
            let good = at(false, true);
            let gap = [at(false, false), at(true, false), at(true, true)]
                .into_iter()
                .map(|x| x - &good)
                .min()
                .expect("three points");
            if gap <= Rational::zero() {
                return Err(Error::Inconsistent("forcing terms do not pin (v0,v1) = (0,1)".into()));
            }
            let m = (Rational::one() + main.range(delta)) / gap;
            trace.push(format!("forcing weight {}", rational::format(&m)));
            f.scale(&m).terms
        }
        _ => Vec::new(),
    };
    Ok(NeqExpression {
        terms: main.terms,
        forcing: forcing_terms,
        alpha1,
        alpha2,
        vestigial_constants: !uses_constants,
        trace,
    })
}

/// Checks the expression by minimizing over `v0, v1` for every `(x, y)`.
pub fn verify_neq_expression(e: &NeqExpression, delta: &[CostFunction]) -> bool {
    let valid = |ts: &[Term]| {
        ts.iter().all(|t| {
            t.function < delta.len()
                && t.slots.len() == delta[t.function].arity
                && rational::is_nonneg(&t.weight)
        })
    };
    if !valid(&e.terms) || !valid(&e.forcing) || !rational::is_nonneg(&e.alpha1) {
        return false;
    }
    let sum = |ts: &[Term], x, y, v0, v1| ts.iter().fold(Rational::zero(), |acc, t| acc + t.eval(delta, x, y, v0, v1));
    let base = (0..4u32)
        .map(|m| sum(&e.forcing, false, false, m & 1 == 1, m & 2 == 2))
        .min()
        .expect("four points");
    for (x, y) in [(false, false), (false, true), (true, false), (true, true)] {
        let value = (0..4u32)
            .map(|m| sum(&e.terms, x, y, m & 1 == 1, m & 2 == 2) + sum(&e.forcing, x, y, m & 1 == 1, m & 2 == 2))
            .min()
            .expect("four points")
            - &base;
        let want = if x == y { Rational::one() } else { Rational::zero() };
        if &e.alpha1 * value + &e.alpha2 != want {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_neq_witnesses() {
        let d = [CostFunction::f_neq()];
        let zero = unary_violation(&d, &ops::constant(false)).unwrap();
        assert_eq!(zero, MultimorphismWitness::Unary { operation: "0".into(), function: 0, arity: 2, x: 0b10 });
        assert!(!admits_unary_multimorphism(&d, &ops::constant(true)));
        match binary_violation(&d, &ops::min(), &ops::max()).unwrap() {
            MultimorphismWitness::Binary { s, t, .. } => {
                assert_eq!(tuple_string(s, 2), "01");
                assert_eq!(tuple_string(t, 2), "10");
            }
            w => panic!("{w}"),
        }
        assert_eq!(classify_vcsp(&d).unwrap().verdict, Complexity::NpHard);
        assert_eq!(classify_vcsp(&d).unwrap().witnesses.len(), 3);
    }

    #[test]
    fn tractable_examples() {
        let constant = CostFunction::from_ints(2, &[3, 3, 3, 3]).unwrap();
        assert_eq!(classify_vcsp(&[constant]).unwrap().verdict, Complexity::P);
        // x·(1−y): cost 1 only at x=1, y=0, i.e. mask 0b01.
        let sub = CostFunction::from_ints(2, &[0, 1, 0, 0]).unwrap();
        assert!(admits_binary_multimorphism(std::slice::from_ref(&sub), &ops::min(), &ops::max()));
        assert!(admits_binary_multimorphism(&[], &ops::min(), &ops::max()));
        assert_eq!(classify_vcsp(&[sub]).unwrap().verdict, Complexity::P);
    }

    #[test]
    fn express_f_neq() {
        let d = [CostFunction::f_neq()];
        let e = express_neq(&d).unwrap();
        assert_eq!(e.alpha1, rational::ratio(1, 2));
        assert_eq!(e.alpha2, Rational::zero());
        assert!(e.forcing.is_empty());
        assert!(e.vestigial_constants);
        assert!(e.trace.iter().any(|l| l == "w = 0101"));
        assert!(verify_neq_expression(&e, &d));
    }

    #[test]
    fn express_scaled_and_shifted() {
        let d = [CostFunction::f_neq().scaled(&rational::int(3))];
        let e = express_neq(&d).unwrap();
        assert_eq!(e.alpha1, rational::ratio(1, 6));
        assert!(verify_neq_expression(&e, &d));
        let d = [CostFunction::f_neq().shifted(&rational::int(5)).unwrap()];
        let e = express_neq(&d).unwrap();
        assert!(verify_neq_expression(&e, &d));
    }

    #[test]
    fn verifier_rejects_zero_alpha() {
        let d = [CostFunction::f_neq()];
        let mut e = express_neq(&d).unwrap();
        e.alpha1 = Rational::zero();
        assert!(!verify_neq_expression(&e, &d));
        let identity = NeqExpression {
            terms: vec![Term { weight: Rational::one(), function: 0, slots: vec![Slot::X, Slot::Y] }],
            forcing: vec![],
            alpha1: Rational::one(),
            alpha2: Rational::zero(),
            vestigial_constants: true,
            trace: vec![],
        };
        assert!(verify_neq_expression(&identity, &d));
    }

    #[test]
    fn express_needs_forcing() {
        // NAND-like costs plus a unary bias: forces the constant machinery.
        let f = CostFunction::from_ints(2, &[0, 0, 0, 2]).unwrap();
        let g = CostFunction::from_ints(1, &[1, 0]).unwrap();
        let d = [f, g];
        assert_eq!(classify_vcsp(&d).unwrap().verdict, Complexity::NpHard);
        let e = express_neq(&d).unwrap();
        assert!(verify_neq_expression(&e, &d), "{e}");
    }
}
