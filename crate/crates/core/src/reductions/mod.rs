//! Named instance transformations with value maps and variable bounds.
//!
//! Output variables are ordered: source variables first, then globals, then
//! per-variable auxiliaries, then per-constraint auxiliaries.

mod certify;
mod entries;
mod sample;

use std::fmt;
use std::sync::Arc;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::instance::{Direction, Instance, Library, ProblemKind, Threshold};
use crate::rational::{self, Rational};

pub use certify::{certify, certify_space, check_instance, CertifyReport, Counterexample, Sampling};
pub use entries::{uvcsp_cost_bound, Xor3Encoding};
pub use sample::SourceSpace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KindTag {
    Cv,
    /// Output variables at most `C·n + O(1)`.
    Lv(String),
}

impl fmt::Display for KindTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KindTag::Cv => write!(f, "CV"),
            KindTag::Lv(c) => write!(f, "LV(C = {c})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Exact,
    AtMost,
}

#[derive(Clone, Debug)]
pub struct ReductionRecord {
    pub name: String,
    pub source: ProblemKind,
    pub source_language: String,
    pub target: ProblemKind,
    pub target_language: String,
    pub tag: KindTag,
    pub bound: String,
    pub bound_kind: BoundKind,
    pub threshold_map: String,
}

impl fmt::Display for ReductionRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.bound_kind == BoundKind::Exact { "=" } else { "<=" };
        write!(
            f,
            "{}: {}({}) -> {}({}), {}, vars {rel} {}, {}",
            self.name,
            self.source,
            self.source_language,
            self.target,
            self.target_language,
            self.tag,
            self.bound,
            self.threshold_map
        )
    }
}

/// What a target must satisfy when the source has no feasible solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WhenInfeasible {
    TargetInfeasible,
    /// The target optimum is below the offset, or the target is infeasible.
    BelowOffset,
    /// Every optimal target solution sets `var` differently from `value`.
    Avoids { var: usize, value: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Contract {
    /// The source is satisfiable iff the target optimum meets `threshold`.
    Decision(Threshold),
    /// Target optimum = `scale` · source optimum + `offset`.
    Value { scale: Rational, offset: Rational, infeasible: WhenInfeasible },
}

impl Contract {
    pub fn value(scale: Rational, offset: Rational, infeasible: WhenInfeasible) -> Self {
        Contract::Value { scale, offset, infeasible }
    }

    /// Maps a source threshold to the equivalent target threshold.
    pub fn map_threshold(&self, t: &Threshold) -> Threshold {
        match self {
            Contract::Decision(th) => th.clone(),
            Contract::Value { scale, offset, .. } => {
                let direction = if scale.is_negative() {
                    match t.direction {
                        Direction::AtLeast => Direction::AtMost,
                        Direction::AtMost => Direction::AtLeast,
                    }
                } else {
                    t.direction
                };
                Threshold { direction, value: scale * &t.value + offset }
            }
        }
    }
}

impl fmt::Display for Contract {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Contract::Decision(t) => write!(f, "satisfiable iff optimum {t}"),
            Contract::Value { scale, offset, .. } => {
                write!(f, "optimum = {}·k + {}", rational::format(scale), rational::format(offset))
            }
        }
    }
}

/// The output of one application.
#[derive(Clone, Debug)]
pub struct Applied {
    pub instance: Instance,
    pub library: Library,
    pub contract: Contract,
    pub declared_vars: usize,
    pub bound_kind: BoundKind,
    /// Pairs of variables that differ in every optimal solution.
    pub optima_differ: Option<(usize, usize)>,
    pub notes: Vec<String>,
}

impl Applied {
    fn new(instance: Instance, library: Library, contract: Contract, declared: usize, kind: BoundKind) -> Self {
        Applied {
            instance,
            library,
            contract,
            declared_vars: declared,
            bound_kind: kind,
            optima_differ: None,
            notes: Vec::new(),
        }
    }

    fn check_bound(&self) -> Result<()> {
        let n = self.instance.num_vars;
        let ok = match self.bound_kind {
            BoundKind::Exact => n == self.declared_vars,
            BoundKind::AtMost => n <= self.declared_vars,
        };
        if ok {
            Ok(())
        } else {
            let rel = if self.bound_kind == BoundKind::Exact { "=" } else { "<=" };
            Err(Error::VariableBound { actual: n, declared: format!("{rel} {}", self.declared_vars) })
        }
    }
}

pub type ApplyFn = dyn Fn(&Instance, &Library) -> Result<Applied> + Send + Sync;

#[derive(Clone)]
pub struct Reduction {
    pub record: ReductionRecord,
    apply: Arc<ApplyFn>,
    space: Arc<dyn Fn() -> SourceSpace + Send + Sync>,
}

impl fmt::Debug for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Reduction").field("record", &self.record).finish()
    }
}

impl Reduction {
    pub fn name(&self) -> &str {
        &self.record.name
    }

    /// Transforms `inst`, maps its threshold and asserts the declared bound.
    pub fn apply(&self, inst: &Instance, lib: &Library) -> Result<Applied> {
        if inst.kind != self.record.source {
            return Err(Error::LanguageMismatch(format!(
                "{} expects {}, got {}",
                self.record.name, self.record.source, inst.kind
            )));
        }
        inst.validate(lib)?;
        let mut out = (self.apply)(inst, lib)?;
        out.check_bound()?;
        if let Some(t) = &inst.threshold {
            out.instance.threshold = Some(out.contract.map_threshold(t));
        } else if let Contract::Decision(t) = &out.contract {
            out.instance.threshold = Some(t.clone());
        }
        out.instance.validate(&out.library)?;
        Ok(out)
    }

    /// The default source space sampled by `certify`.
    pub fn space(&self) -> SourceSpace {
        (self.space)()
    }
}

/// Every registered reduction in registry order.
pub fn registry() -> Vec<Reduction> {
    entries::all()
}

pub fn lookup(name: &str) -> Result<Reduction> {
    registry()
        .into_iter()
        .find(|r| r.record.name == name)
        .ok_or_else(|| Error::Invalid(format!("unknown reduction `{name}`")))
}

pub fn names() -> Vec<String> {
    registry().into_iter().map(|r| r.record.name).collect()
}
