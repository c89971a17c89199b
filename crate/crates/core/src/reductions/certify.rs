//! Oracle comparison of source and target instances.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::sample::SourceSpace;
use super::{Contract, Reduction, WhenInfeasible};
use crate::instance::{Instance, Library};
use crate::oracle::{self, decide, solve, Outcome};
use crate::rational;
use crate::text::write_instance;

/// Redraws allowed when a sample is too large for the oracle.
const REDRAWS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    /// Exhaustive enumeration at the largest variable count whose space has
    /// at most 4096 instances, plus `trials` random instances if that count
    /// is below the space maximum or some enumerated outputs were too large.
    Auto { trials: usize, seed: u64 },
    Random { trials: usize, seed: u64 },
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub instance: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct CertifyReport {
    pub name: String,
    /// Largest variable count covered exhaustively.
    pub exhaustive_vars: Option<usize>,
    pub exhaustive: usize,
    pub random: usize,
    /// Exhaustive instances whose output exceeds the oracle cap.
    pub skipped: usize,
    pub max_target_vars: usize,
    pub failures: Vec<Counterexample>,
}

impl CertifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn checked(&self) -> usize {
        self.exhaustive + self.random
    }
}

impl fmt::Display for CertifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ex = match self.exhaustive_vars {
            Some(n) => format!("{} exhaustive (n <= {n})", self.exhaustive),
            None => "0 exhaustive".to_string(),
        };
        writeln!(
            f,
            "{}: {ex}, {} random, {} skipped, max target vars {}, {} failures",
            self.name,
            self.random,
            self.skipped,
            self.max_target_vars,
            self.failures.len()
        )?;
        for c in &self.failures {
            writeln!(f, "counterexample: {}", c.detail)?;
            for line in c.instance.lines() {
                writeln!(f, "  {line}")?;
            }
        }
        Ok(())
    }
}

fn fits(red: &Reduction, inst: &Instance, lib: &Library) -> bool {
    red.apply(inst, lib).is_ok_and(|a| a.instance.num_vars <= cap_for(&a))
}

fn cap_for(a: &super::Applied) -> usize {
    let all = a.optima_differ.is_some() || matches!(a.contract, Contract::Value { infeasible: WhenInfeasible::Avoids { .. }, .. });
    if all {
        oracle::MAX_VARS_ALL
    } else {
        oracle::MAX_VARS
    }
}

/// Applies `red` and compares oracle answers. Returns the output variable
/// count, or a description of the disagreement.
pub fn check_instance(red: &Reduction, inst: &Instance, lib: &Library) -> Result<usize, String> {
    let a = red.apply(inst, lib).map_err(|e| format!("apply failed: {e}"))?;
    let tgt = &a.instance;
    let need_all = cap_for(&a) == oracle::MAX_VARS_ALL;
    let src = solve(inst, lib, false).map_err(|e| format!("source oracle: {e}"))?;
    let out = solve(tgt, &a.library, need_all).map_err(|e| format!("target oracle: {e}"))?;
    match &a.contract {
        Contract::Decision(th) => {
            let t = match &out {
                Outcome::Unsatisfiable => false,
                Outcome::Satisfiable { .. } => true,
                Outcome::Optimal { value, .. } => th.accepts(value),
            };
            if src.is_satisfiable() != t {
                return Err(format!(
                    "source satisfiable = {}, target optimum {} against {th}",
                    src.is_satisfiable(),
                    out.value().map(rational::format).unwrap_or_else(|| "none".into())
                ));
            }
        }
        Contract::Value { scale, offset, infeasible } => match (&src, &out) {
            (Outcome::Optimal { value: k, .. }, Outcome::Optimal { value: v, .. }) => {
                let want = scale * k + offset;
                if *v != want {
                    return Err(format!(
                        "source optimum {}, target optimum {}, expected {}",
                        rational::format(k),
                        rational::format(v),
                        rational::format(&want)
                    ));
                }
            }
            (Outcome::Optimal { value: k, .. }, _) => {
                return Err(format!("source optimum {} but target infeasible", rational::format(k)));
            }
            (Outcome::Unsatisfiable, Outcome::Unsatisfiable) => {}
            (Outcome::Unsatisfiable, Outcome::Optimal { value, optimal_set, .. }) => match infeasible {
                WhenInfeasible::TargetInfeasible => {
                    return Err(format!("source infeasible, target optimum {}", rational::format(value)));
                }
                WhenInfeasible::BelowOffset => {
                    if value >= offset {
                        return Err(format!(
                            "source infeasible, target optimum {} not below {}",
                            rational::format(value),
                            rational::format(offset)
                        ));
                    }
                }
                WhenInfeasible::Avoids { var, value: bit } => {
                    let all = optimal_set.as_deref().unwrap_or(&[]);
                    if all.iter().any(|&m| ((m >> var) & 1 == 1) == *bit) {
                        return Err(format!("source infeasible, an optimum sets variable {var} to {}", *bit as u8));
                    }
                }
            },
            (s, o) => return Err(format!("unexpected outcomes {s:?} / {o:?}")),
        },
    }
    if let Some((x, y)) = a.optima_differ {
        if let Some(all) = out.all() {
            if all.iter().any(|&m| (m >> x) & 1 == (m >> y) & 1) {
                return Err(format!("an optimum sets variables {x} and {y} equal"));
            }
        }
    }
    if inst.threshold.is_some() {
        let s = decide(inst, lib, None).map_err(|e| e.to_string())?;
        let t = decide(tgt, &a.library, None).map_err(|e| e.to_string())?;
        if s != t {
            return Err(format!("threshold decision {s} maps to {t}"));
        }
    }
    Ok(tgt.num_vars)
}

fn run(red: &Reduction, items: Vec<(Instance, Library)>, report: &mut CertifyReport) {
    let results: Vec<Result<usize, String>> = items.par_iter().map(|(i, l)| check_instance(red, i, l)).collect();
    for ((inst, lib), r) in items.iter().zip(results) {
        match r {
            Ok(v) => report.max_target_vars = report.max_target_vars.max(v),
            Err(detail) => report.failures.push(Counterexample { instance: write_instance(inst, lib), detail }),
        }
    }
}

pub fn certify(red: &Reduction, sampling: Sampling) -> CertifyReport {
    certify_space(red, &red.space(), sampling)
}

/// Certifies `red` over an explicit source space. Results do not depend on
/// the number of worker threads.
pub fn certify_space(red: &Reduction, space: &SourceSpace, sampling: Sampling) -> CertifyReport {
    let mut report = CertifyReport { name: red.name().to_string(), ..Default::default() };
    let exhaustive = match sampling {
        Sampling::Auto { .. } | Sampling::Exhaustive => space.exhaustive_vars(),
        Sampling::Random { .. } => None,
    };
    if let Some(nx) = exhaustive {
        report.exhaustive_vars = Some(nx);
        let mut items = Vec::new();
        for inst in space.enumerate(nx) {
            if fits(red, &inst, &space.library) {
                items.push((inst, space.library.clone()));
            } else if red.apply(&inst, &space.library).is_ok() {
                report.skipped += 1;
            } else {
                items.push((inst, space.library.clone()));
            }
        }
        report.exhaustive = items.len();
        run(red, items, &mut report);
    }
    let random = match sampling {
        Sampling::Auto { trials, seed } => {
            let more = exhaustive.is_none_or(|n| n < space.max_vars || space.generator.is_some()) || report.skipped > 0;
            more.then_some((trials, seed))
        }
        Sampling::Random { trials, seed } => Some((trials, seed)),
        Sampling::Exhaustive => None,
    };
    if let Some((trials, seed)) = random {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut items = Vec::with_capacity(trials);
        for _ in 0..trials {
            let mut drawn = space.random(&mut rng);
            for _ in 0..REDRAWS {
                if fits(red, &drawn.0, &drawn.1) || red.apply(&drawn.0, &drawn.1).is_err() {
                    break;
                }
                drawn = space.random(&mut rng);
            }
            items.push(drawn);
        }
        report.random = items.len();
        run(red, items, &mut report);
    }
    report
}
