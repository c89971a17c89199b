//! Source instance spaces: exhaustive enumeration and seeded sampling.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::instance::{Constraint, Instance, Library, ProblemKind};
use crate::rational::{self, Rational};

/// Largest instance count enumerated exhaustively.
pub const EXHAUSTIVE_LIMIT: u128 = 1 << 12;

pub type Generator = dyn Fn(&mut ChaCha8Rng) -> (Instance, Library) + Send + Sync;

#[derive(Clone)]
pub struct SourceSpace {
    pub kind: ProblemKind,
    pub library: Library,
    /// Relation or cost function names with their arities.
    pub alphabet: Vec<(String, usize)>,
    pub min_vars: usize,
    pub max_vars: usize,
    pub max_constraints: usize,
    /// Constraint cap for exhaustive enumeration.
    pub exhaustive_constraints: usize,
    pub degree_bound: Option<usize>,
    pub var_weights: bool,
    pub constraint_weights: bool,
    /// Half of the random relational instances are built around a hidden
    /// assignment so that they are satisfiable.
    pub planted: bool,
    /// Replaces the default random generator.
    pub generator: Option<Arc<Generator>>,
}

impl SourceSpace {
    pub fn new(kind: ProblemKind, alphabet: &[(&str, usize)], max_vars: usize, max_constraints: usize) -> Self {
        SourceSpace {
            kind,
            library: Library::new(),
            alphabet: alphabet.iter().map(|&(n, k)| (n.to_string(), k)).collect(),
            min_vars: 1,
            max_vars,
            max_constraints,
            exhaustive_constraints: max_constraints.min(3),
            degree_bound: None,
            var_weights: kind == ProblemKind::WMaxOnes,
            constraint_weights: matches!(kind, ProblemKind::MaxCsp | ProblemKind::MaxCut | ProblemKind::Vcsp),
            planted: matches!(kind, ProblemKind::Sat | ProblemKind::UMaxOnes | ProblemKind::WMaxOnes),
            generator: None,
        }
    }

    pub fn with_degree_bound(mut self, b: usize) -> Self {
        self.degree_bound = Some(b);
        self
    }

    pub fn with_library(mut self, lib: Library) -> Self {
        self.library = lib;
        self
    }

    pub fn with_generator(mut self, g: Arc<Generator>) -> Self {
        self.generator = Some(g);
        self
    }

    fn atoms_for(&self, n: usize) -> u128 {
        self.alphabet.iter().map(|(_, k)| (n as u128).saturating_pow(*k as u32)).fold(0, u128::saturating_add)
    }

    /// Number of instances with `min_vars..=n_max` variables and at most
    /// `exhaustive_constraints` constraints (as multisets), before degree filtering.
    pub fn count(&self, n_max: usize) -> u128 {
        let mut total: u128 = 0;
        for n in self.min_vars..=n_max {
            let s = self.atoms_for(n);
            for m in 0..=self.exhaustive_constraints as u128 {
                total = total.saturating_add(multichoose(s, m));
            }
        }
        total
    }

    /// The largest variable count whose whole space fits the exhaustive limit.
    pub fn exhaustive_vars(&self) -> Option<usize> {
        (self.min_vars..=self.max_vars).rev().find(|&n| self.count(n) <= EXHAUSTIVE_LIMIT)
    }

    fn scopes(&self, n: usize) -> Vec<(usize, Vec<usize>)> {
        let mut out = Vec::new();
        for (a, (_, k)) in self.alphabet.iter().enumerate() {
            let mut scope = vec![0; *k];
            loop {
                out.push((a, scope.clone()));
                if !odometer(&mut scope, n) {
                    break;
                }
            }
        }
        out
    }

    /// Every instance up to `n_max` variables, unit weights, in a fixed order.
    pub fn enumerate(&self, n_max: usize) -> Vec<Instance> {
        let mut out = Vec::new();
        for n in self.min_vars..=n_max {
            let atoms = self.scopes(n);
            let mut pick: Vec<usize> = Vec::new();
            loop {
                let mut inst = Instance::new(self.kind, n);
                for &p in &pick {
                    let (a, scope) = &atoms[p];
                    inst.add(self.alphabet[*a].0.clone(), scope.clone());
                }
                if self.degree_ok(&inst) {
                    out.push(inst);
                }
                if !next_multiset(&mut pick, atoms.len(), self.exhaustive_constraints) {
                    break;
                }
            }
        }
        out
    }

    fn degree_ok(&self, inst: &Instance) -> bool {
        self.degree_bound.is_none_or(|b| inst.degrees().iter().all(|&d| d <= b))
    }

    /// One random instance with its library.
    pub fn random(&self, rng: &mut ChaCha8Rng) -> (Instance, Library) {
        if let Some(g) = &self.generator {
            return g(rng);
        }
        let n = rng.gen_range(self.min_vars..=self.max_vars);
        let m = rng.gen_range(0..=self.max_constraints);
        let mut inst = Instance::new(self.kind, n);
        let hidden: Option<u32> = (self.planted && rng.gen_bool(0.5)).then(|| rng.gen_range(0..1u32 << n));
        let mut degree = vec![0usize; n];
        for _ in 0..m {
            let Some(c) = (0..50).find_map(|_| self.random_constraint(rng, n, hidden, &degree)) else {
                break;
            };
            let mut seen = c.scope.clone();
            seen.sort_unstable();
            seen.dedup();
            for v in seen {
                degree[v] += 1;
            }
            inst.constraints.push(c);
        }
        if self.var_weights {
            for i in 0..n {
                inst.set_var_weight(i, pick(rng, &[(0, 1), (1, 2), (1, 1), (2, 1), (3, 1)]));
            }
        }
        (inst, self.library.clone())
    }

    fn random_constraint(&self, rng: &mut ChaCha8Rng, n: usize, hidden: Option<u32>, degree: &[usize]) -> Option<Constraint> {
        let (name, k) = self.alphabet.choose(rng)?;
        let open: Vec<usize> = (0..n).filter(|&v| self.degree_bound.is_none_or(|b| degree[v] < b)).collect();
        if open.is_empty() {
            return None;
        }
        let scope: Vec<usize> = match hidden.and_then(|h| self.planted_tuple(name, rng).map(|t| (h, t))) {
            Some((h, t)) => (0..*k)
                .map(|j| {
                    let want = (t >> j) & 1;
                    let fit: Vec<usize> = open.iter().copied().filter(|&v| (h >> v) & 1 == want).collect();
                    *fit.choose(rng).or_else(|| open.choose(rng)).expect("nonempty")
                })
                .collect(),
            None => (0..*k).map(|_| *open.choose(rng).expect("nonempty")).collect(),
        };
        let mut seen = scope.clone();
        seen.sort_unstable();
        seen.dedup();
        if self.degree_bound.is_some_and(|b| seen.iter().any(|&v| degree[v] + 1 > b)) {
            return None;
        }
        let weight = self
            .constraint_weights
            .then(|| pick(rng, &[(1, 2), (1, 1), (2, 1), (3, 1)]));
        Some(Constraint { name: name.clone(), scope, weight })
    }

    fn planted_tuple(&self, name: &str, rng: &mut ChaCha8Rng) -> Option<u32> {
        let r = self.library.relation(name).ok()?;
        r.tuples().choose(rng).copied()
    }
}

fn pick(rng: &mut ChaCha8Rng, choices: &[(i64, i64)]) -> Rational {
    let &(p, q) = choices.choose(rng).expect("nonempty");
    rational::ratio(p, q)
}

fn multichoose(s: u128, m: u128) -> u128 {
    // C(s + m - 1, m)
    if m == 0 {
        return 1;
    }
    if s == 0 {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..m {
        acc = acc.saturating_mul(s + i) / (i + 1);
    }
    acc
}

fn odometer(v: &mut [usize], base: usize) -> bool {
    for i in (0..v.len()).rev() {
        v[i] += 1;
        if v[i] < base {
            return true;
        }
        v[i] = 0;
    }
    false
}

/// Next non-decreasing sequence over `0..s` of length at most `max_len`.
fn next_multiset(pick: &mut Vec<usize>, s: usize, max_len: usize) -> bool {
    let len = pick.len();
    for i in (0..len).rev() {
        if pick[i] + 1 < s {
            let v = pick[i] + 1;
            pick[i..].iter_mut().for_each(|x| *x = v);
            return true;
        }
    }
    if len < max_len && s > 0 {
        pick.clear();
        pick.resize(len + 1, 0);
        return true;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_matches_count() {
        let s = SourceSpace::new(ProblemKind::UMaxOnes, &[("OR2", 2)], 4, 3);
        assert_eq!(s.enumerate(4).len() as u128, s.count(4));
        assert_eq!(s.count(4), 4 + 35 + 220 + 969);
        assert_eq!(s.exhaustive_vars(), Some(4));
    }

    #[test]
    fn degree_filter() {
        let s = SourceSpace::new(ProblemKind::Sat, &[("neq", 2)], 3, 3).with_degree_bound(1);
        assert!(s.enumerate(3).iter().all(|i| i.degrees().iter().all(|&d| d <= 1)));
    }
}
