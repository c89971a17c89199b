//! Exhaustive solvers used as ground truth.
//!
//! Assignments are bitmasks with variable `i` at bit `i`. The search assigns
//! variables in index order and checks each constraint as soon as its last
//! variable is set. Ties resolve to the least bitmask.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::{Instance, Library, ProblemKind, Threshold};
use crate::rational::{self, Rational};
use crate::relation::{gather, DenseSet};

pub const MAX_VARS: usize = 24;
pub const MAX_VARS_ALL: usize = 20;

/// Variables fixed before the parallel split.
const SPLIT_DEPTH: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Unsatisfiable,
    /// A decision instance with a satisfying assignment.
    Satisfiable { witness: u32, solutions: Option<Vec<u32>> },
    Optimal { value: Rational, witness: u32, optimal_set: Option<Vec<u32>> },
}

impl Outcome {
    pub fn is_satisfiable(&self) -> bool {
        !matches!(self, Outcome::Unsatisfiable)
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            Outcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<u32> {
        match self {
            Outcome::Unsatisfiable => None,
            Outcome::Satisfiable { witness, .. } | Outcome::Optimal { witness, .. } => Some(*witness),
        }
    }

    /// The optimal (or satisfying) assignments, when requested.
    pub fn all(&self) -> Option<&[u32]> {
        match self {
            Outcome::Unsatisfiable => Some(&[]),
            Outcome::Satisfiable { solutions, .. } => solutions.as_deref(),
            Outcome::Optimal { optimal_set, .. } => optimal_set.as_deref(),
        }
    }
}

struct Hard {
    set: DenseSet,
    scope: Vec<usize>,
}

struct Soft {
    /// Contribution per local tuple, already oriented for maximization.
    table: Vec<i128>,
    scope: Vec<usize>,
}

struct Compiled {
    n: usize,
    hard: Vec<Hard>,
    soft: Vec<Soft>,
    linear: Vec<i128>,
    /// Indices into `hard`/`soft` whose largest variable is `i`.
    close_hard: Vec<Vec<usize>>,
    close_soft: Vec<Vec<usize>>,
    /// Constraints with an empty scope never occur; this guards `n = 0`.
    scale: BigInt,
    maximize: bool,
}

fn compile(inst: &Instance, lib: &Library) -> Result<Compiled> {
    inst.validate(lib)?;
    let n = inst.num_vars;
    let mut hard = Vec::new();
    // Rational soft tables first; scaled once the common denominator is known.
    let mut soft_q: Vec<(Vec<Rational>, Vec<usize>)> = Vec::new();
    let mut linear_q: Vec<Rational> = vec![Rational::zero(); n];
    match inst.kind {
        ProblemKind::Sat | ProblemKind::UMaxOnes | ProblemKind::WMaxOnes | ProblemKind::MinOnes => {
            for c in &inst.constraints {
                hard.push(Hard { set: lib.relation(&c.name)?.dense(), scope: c.scope.clone() });
            }
            if inst.kind != ProblemKind::Sat {
                for (i, w) in linear_q.iter_mut().enumerate() {
                    *w = inst.var_weight(i);
                }
            }
        }
        ProblemKind::Vcsp => {
            for c in &inst.constraints {
                let f = lib.cost(&c.name)?;
                let w = c.weight_or_one();
                soft_q.push((f.table().iter().map(|v| v * &w).collect(), c.scope.clone()));
            }
        }
        ProblemKind::MaxCsp => {
            for c in &inst.constraints {
                let r = lib.relation(&c.name)?;
                let w = c.weight_or_one();
                let table = (0..1u32 << r.arity())
                    .map(|t| if r.contains(t) { w.clone() } else { Rational::zero() })
                    .collect();
                soft_q.push((table, c.scope.clone()));
            }
        }
        ProblemKind::MaxCut => {
            for c in &inst.constraints {
                let w = c.weight_or_one();
                let table = vec![Rational::zero(), w.clone(), w, Rational::zero()];
                soft_q.push((table, c.scope.clone()));
            }
        }
    }
    let scale = rational::common_denominator(soft_q.iter().flat_map(|(t, _)| t.iter()).chain(linear_q.iter()));
    let maximize = inst.kind.maximizes();
    let orient = |v: i128| if maximize { v } else { -v };
    let soft = soft_q
        .iter()
        .map(|(t, scope)| {
            let table = t.iter().map(|v| rational::scaled(v, &scale).map(orient)).collect::<Result<Vec<_>>>()?;
            Ok(Soft { table, scope: scope.clone() })
        })
        .collect::<Result<Vec<_>>>()?;
    let linear = linear_q.iter().map(|v| rational::scaled(v, &scale).map(orient)).collect::<Result<Vec<_>>>()?;
    let mut close_hard = vec![Vec::new(); n.max(1)];
    let mut close_soft = vec![Vec::new(); n.max(1)];
    for (i, h) in hard.iter().enumerate() {
        close_hard[*h.scope.iter().max().expect("nonempty scope")].push(i);
    }
    for (i, s) in soft.iter().enumerate() {
        close_soft[*s.scope.iter().max().expect("nonempty scope")].push(i);
    }
    Ok(Compiled { n, hard, soft, linear, close_hard, close_soft, scale, maximize })
}

#[derive(Clone)]
struct Best {
    value: Option<i128>,
    mask: u32,
    all: Vec<u32>,
}

impl Best {
    fn empty() -> Self {
        Best { value: None, mask: 0, all: Vec::new() }
    }

    fn offer(&mut self, value: i128, mask: u32, want_all: bool) {
        match self.value {
            Some(v) if value < v => {}
            Some(v) if value == v => {
                self.mask = self.mask.min(mask);
                if want_all {
                    self.all.push(mask);
                }
            }
            _ => {
                self.value = Some(value);
                self.mask = mask;
                self.all.clear();
                if want_all {
                    self.all.push(mask);
                }
            }
        }
    }

    fn merge(mut self, other: Best, want_all: bool) -> Best {
        match (self.value, other.value) {
            (_, None) => self,
            (None, _) => other,
            (Some(a), Some(b)) if b > a => other,
            (Some(a), Some(b)) if b < a => self,
            _ => {
                self.mask = self.mask.min(other.mask);
                if want_all {
                    self.all.extend(other.all);
                }
                self
            }
        }
    }
}

impl Compiled {
    /// Assigns variable `i` to `bit` and checks what closes there.
    fn step(&self, mask: u32, i: usize, acc: i128) -> Option<i128> {
        for &h in &self.close_hard[i] {
            let h = &self.hard[h];
            if !h.set.contains(gather(mask, &h.scope)) {
                return None;
            }
        }
        let mut acc = acc;
        if (mask >> i) & 1 == 1 {
            acc += self.linear[i];
        }
        for &s in &self.close_soft[i] {
            let s = &self.soft[s];
            acc += s.table[gather(mask, &s.scope) as usize];
        }
        Some(acc)
    }

    fn dfs(&self, i: usize, mask: u32, acc: i128, best: &mut Best, want_all: bool) {
        if i == self.n {
            best.offer(acc, mask, want_all);
            return;
        }
        for bit in [0u32, 1] {
            let m = mask | (bit << i);
            if let Some(a) = self.step(m, i, acc) {
                self.dfs(i + 1, m, a, best, want_all);
            }
        }
    }

    fn run(&self, want_all: bool) -> Best {
        let depth = self.n.min(SPLIT_DEPTH);
        let prefixes: Vec<u32> = (0..1u32 << depth).collect();
        let results: Vec<Best> = prefixes
            .par_iter()
            .map(|&p| {
                let mut acc = 0i128;
                for i in 0..depth {
                    match self.step(p, i, acc) {
                        Some(a) => acc = a,
                        None => return Best::empty(),
                    }
                }
                let mut best = Best::empty();
                self.dfs(depth, p, acc, &mut best, want_all);
                best
            })
            .collect();
        let mut best = results.into_iter().fold(Best::empty(), |a, b| a.merge(b, want_all));
        best.all.sort_unstable();
        best
    }
}

/// Solves `inst` exactly. With `want_all`, also returns every optimal (or,
/// for SAT, every satisfying) assignment in ascending order.
pub fn solve(inst: &Instance, lib: &Library, want_all: bool) -> Result<Outcome> {
    let cap = if want_all { MAX_VARS_ALL } else { MAX_VARS };
    if inst.num_vars > cap {
        return Err(Error::SizeCap { vars: inst.num_vars, cap });
    }
    let c = compile(inst, lib)?;
    let best = c.run(want_all);
    let all = want_all.then_some(best.all);
    let Some(v) = best.value else {
        return Ok(Outcome::Unsatisfiable);
    };
    if inst.kind == ProblemKind::Sat {
        return Ok(Outcome::Satisfiable { witness: best.mask, solutions: all });
    }
    let v = if c.maximize { v } else { -v };
    Ok(Outcome::Optimal { value: rational::unscale(v, &c.scale), witness: best.mask, optimal_set: all })
}

/// Whether a solution meets `threshold`, defaulting to the instance's own.
/// SAT ignores thresholds.
pub fn decide(inst: &Instance, lib: &Library, threshold: Option<&Threshold>) -> Result<bool> {
    let outcome = solve(inst, lib, false)?;
    let t = threshold.or(inst.threshold.as_ref());
    Ok(match (&outcome, t) {
        (Outcome::Unsatisfiable, _) => false,
        (Outcome::Satisfiable { .. }, _) => true,
        (Outcome::Optimal { .. }, None) => true,
        (Outcome::Optimal { value, .. }, Some(t)) => t.accepts(value),
    })
}

/// Objective value of an assignment, or `None` if it violates a hard constraint.
pub fn evaluate(inst: &Instance, lib: &Library, mask: u32) -> Result<Option<Rational>> {
    let c = compile(inst, lib)?;
    let mut acc = 0i128;
    for i in 0..c.n {
        match c.step(mask, i, acc) {
            Some(a) => acc = a,
            None => return Ok(None),
        }
    }
    let v = if c.maximize { acc } else { -acc };
    Ok(Some(rational::unscale(v, &c.scale)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Constraint;

    fn triangle(kind: ProblemKind, name: &str) -> Instance {
        let mut i = Instance::new(kind, 3);
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            i.constraints.push(Constraint::new(name, vec![a, b]));
        }
        i
    }

    #[test]
    fn independent_set_in_triangle() {
        let lib = Library::new();
        let out = solve(&triangle(ProblemKind::UMaxOnes, "NAND2"), &lib, true).unwrap();
        assert_eq!(out.value(), Some(&rational::int(1)));
        assert_eq!(out.witness(), Some(0b001));
        assert_eq!(out.all().unwrap(), &[1, 2, 4]);
    }

    #[test]
    fn max_cut_triangle() {
        let lib = Library::new();
        let vcsp = solve(&triangle(ProblemKind::Vcsp, "f_neq"), &lib, false).unwrap();
        assert_eq!(vcsp.value(), Some(&rational::int(1)));
        let cut = triangle(ProblemKind::MaxCut, "edge");
        assert!(decide(&cut, &lib, Some(&Threshold::at_least(rational::int(2)))).unwrap());
        assert!(!decide(&cut, &lib, Some(&Threshold::at_least(rational::int(3)))).unwrap());
    }

    #[test]
    fn sat_and_unsat() {
        let lib = Library::new();
        let mut i = Instance::new(ProblemKind::Sat, 8);
        i.add("R_II2", (0..8).collect());
        assert!(solve(&i, &lib, false).unwrap().is_satisfiable());
        let mut j = Instance::new(ProblemKind::WMaxOnes, 1);
        j.add("T", vec![0]);
        j.add("F", vec![0]);
        assert_eq!(solve(&j, &lib, false).unwrap(), Outcome::Unsatisfiable);
    }

    #[test]
    fn weights_and_min_ones() {
        let lib = Library::new();
        let mut i = Instance::new(ProblemKind::MinOnes, 2);
        i.add("OR2", vec![0, 1]);
        i.var_weights = Some(vec![rational::ratio(3, 2), rational::ratio(1, 3)]);
        let out = solve(&i, &lib, false).unwrap();
        assert_eq!(out.value(), Some(&rational::ratio(1, 3)));
        assert_eq!(out.witness(), Some(0b10));
        assert_eq!(evaluate(&i, &lib, 0b11).unwrap(), Some(rational::ratio(11, 6)));
        assert_eq!(evaluate(&i, &lib, 0).unwrap(), None);
    }

    #[test]
    fn empty_instance() {
        let lib = Library::new();
        let out = solve(&Instance::new(ProblemKind::WMaxOnes, 0), &lib, true).unwrap();
        assert_eq!(out.value(), Some(&rational::int(0)));
        assert!(solve(&Instance::new(ProblemKind::Sat, 25), &lib, false).is_err());
    }
}
