//! Problem instances and the name library they are resolved against.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::error::{Error, Result};
use crate::lattice::CoCloneId;
use crate::rational::{self, Rational};
use crate::relation::{make_relation, Relation, RelationSpec};
use crate::valued::CostFunction;
use crate::weak_base::weak_base;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    Sat,
    UMaxOnes,
    WMaxOnes,
    MinOnes,
    Vcsp,
    MaxCsp,
    MaxCut,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 7] = [
        ProblemKind::Sat,
        ProblemKind::UMaxOnes,
        ProblemKind::WMaxOnes,
        ProblemKind::MinOnes,
        ProblemKind::Vcsp,
        ProblemKind::MaxCsp,
        ProblemKind::MaxCut,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Sat => "sat",
            ProblemKind::UMaxOnes => "u-max-ones",
            ProblemKind::WMaxOnes => "w-max-ones",
            ProblemKind::MinOnes => "min-ones",
            ProblemKind::Vcsp => "vcsp",
            ProblemKind::MaxCsp => "max-csp",
            ProblemKind::MaxCut => "max-cut",
        }
    }

    /// Whether larger objective values are better.
    pub fn maximizes(self) -> bool {
        matches!(self, ProblemKind::UMaxOnes | ProblemKind::WMaxOnes | ProblemKind::MaxCsp | ProblemKind::MaxCut)
    }

    /// Kinds whose constraints are hard relations.
    pub fn has_hard_constraints(self) -> bool {
        matches!(self, ProblemKind::Sat | ProblemKind::UMaxOnes | ProblemKind::WMaxOnes | ProblemKind::MinOnes)
    }

    pub fn default_direction(self) -> Direction {
        if self.maximizes() || self == ProblemKind::Sat {
            Direction::AtLeast
        } else {
            Direction::AtMost
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProblemKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown problem kind `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    AtLeast,
    AtMost,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Threshold {
    pub direction: Direction,
    pub value: Rational,
}

impl Threshold {
    pub fn at_least(value: Rational) -> Self {
        Threshold { direction: Direction::AtLeast, value }
    }

    pub fn at_most(value: Rational) -> Self {
        Threshold { direction: Direction::AtMost, value }
    }

    pub fn accepts(&self, v: &Rational) -> bool {
        match self.direction {
            Direction::AtLeast => v >= &self.value,
            Direction::AtMost => v <= &self.value,
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.direction {
            Direction::AtLeast => ">=",
            Direction::AtMost => "<=",
        };
        write!(f, "{op} {}", rational::format(&self.value))
    }
}

/// A relation or cost-function application.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    pub scope: Vec<usize>,
    pub weight: Option<Rational>,
}

impl Constraint {
    pub fn new(name: impl Into<String>, scope: Vec<usize>) -> Self {
        Constraint { name: name.into(), scope, weight: None }
    }

    pub fn weighted(name: impl Into<String>, scope: Vec<usize>, weight: Rational) -> Self {
        Constraint { name: name.into(), scope, weight: Some(weight) }
    }

    pub fn weight_or_one(&self) -> Rational {
        self.weight.clone().unwrap_or_else(Rational::one)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub kind: ProblemKind,
    pub num_vars: usize,
    pub constraints: Vec<Constraint>,
    /// Per-variable weights for the Max-Ones and Min-Ones kinds.
    pub var_weights: Option<Vec<Rational>>,
    pub threshold: Option<Threshold>,
}

impl Instance {
    pub fn new(kind: ProblemKind, num_vars: usize) -> Self {
        Instance { kind, num_vars, constraints: Vec::new(), var_weights: None, threshold: None }
    }

    pub fn add(&mut self, name: impl Into<String>, scope: Vec<usize>) {
        self.constraints.push(Constraint::new(name, scope));
    }

    pub fn add_weighted(&mut self, name: impl Into<String>, scope: Vec<usize>, weight: Rational) {
        self.constraints.push(Constraint::weighted(name, scope, weight));
    }

    /// Adds a fresh variable and returns its index.
    pub fn fresh(&mut self) -> usize {
        self.num_vars += 1;
        if let Some(w) = &mut self.var_weights {
            w.push(Rational::from_integer(0.into()));
        }
        self.num_vars - 1
    }

    pub fn with_threshold(mut self, t: Threshold) -> Self {
        self.threshold = Some(t);
        self
    }

    pub fn set_var_weight(&mut self, var: usize, w: Rational) {
        let n = self.num_vars;
        let ws = self.var_weights.get_or_insert_with(|| vec![Rational::one(); n]);
        ws.resize(n, Rational::one());
        ws[var] = w;
    }

    /// Weight of variable `i` in the objective. Unweighted kinds use 1.
    pub fn var_weight(&self, i: usize) -> Rational {
        match (&self.var_weights, self.kind) {
            (_, ProblemKind::UMaxOnes) => Rational::one(),
            (Some(w), _) => w.get(i).cloned().unwrap_or_else(Rational::one),
            (None, _) => Rational::one(),
        }
    }

    /// Number of constraints each variable occurs in.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.num_vars];
        for c in &self.constraints {
            let mut seen: Vec<usize> = c.scope.clone();
            seen.sort_unstable();
            seen.dedup();
            for v in seen {
                if v < d.len() {
                    d[v] += 1;
                }
            }
        }
        d
    }

    /// Checks indices, weights and constraint arities against `lib`.
    pub fn validate(&self, lib: &Library) -> Result<()> {
        if let Some(w) = &self.var_weights {
            if w.len() != self.num_vars {
                return Err(Error::Invalid(format!("{} variable weights for {} variables", w.len(), self.num_vars)));
            }
            if w.iter().any(|x| !rational::is_nonneg(x)) {
                return Err(Error::Invalid("negative variable weight".into()));
            }
        }
        for c in &self.constraints {
            if let Some(&i) = c.scope.iter().find(|&&i| i >= self.num_vars) {
                return Err(Error::Index { index: i, len: self.num_vars });
            }
            if let Some(w) = &c.weight {
                if !rational::is_nonneg(w) {
                    return Err(Error::Invalid(format!("negative weight on `{}`", c.name)));
                }
            }
            let arity = match self.kind {
                ProblemKind::Vcsp => lib.cost(&c.name)?.arity(),
                ProblemKind::MaxCut => {
                    if c.name != "edge" {
                        return Err(Error::LanguageMismatch(format!("max-cut expects `edge`, found `{}`", c.name)));
                    }
                    2
                }
                _ => lib.relation(&c.name)?.arity(),
            };
            if arity != c.scope.len() {
                return Err(Error::Invalid(format!(
                    "`{}` has arity {arity} but {} arguments",
                    c.name,
                    c.scope.len()
                )));
            }
        }
        Ok(())
    }

    /// Distinct constraint names in first-use order.
    pub fn names(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for c in &self.constraints {
            if !out.contains(&c.name) {
                out.push(c.name.clone());
            }
        }
        out
    }
}

/// Named relations and cost functions. Built-in names resolve without
/// registration: `eq`, `neq`, `T`, `F`, `OR<n>`, `NAND<n>`, `EVEN<n>`,
/// `ODD<n>`, `XOR3`, `ONE_IN_THREE`, `R_<co-clone>`, plus cost functions
/// `f_neq` and `f_<relation>` (0 inside the relation, 1 outside).
#[derive(Clone, Debug, Default)]
pub struct Library {
    relations: BTreeMap<String, Relation>,
    costs: BTreeMap<String, CostFunction>,
}

fn sized(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok()
}

fn builtin_relation(name: &str) -> Option<Relation> {
    let spec = match name {
        "eq" => RelationSpec::Eq,
        "neq" => RelationSpec::Neq,
        "T" => RelationSpec::T,
        "F" => RelationSpec::F,
        "ONE_IN_THREE" => RelationSpec::OneInThree,
        "XOR3" => RelationSpec::Even(3),
        _ => {
            if let Some(c) = name.strip_prefix("R_") {
                let id: CoCloneId = format!("I{}", c.strip_prefix('I')?).parse().ok()?;
                return weak_base(id).ok().map(|r| r.named(name));
            }
            if let Some(n) = sized(name, "OR") {
                RelationSpec::Or(n)
            } else if let Some(n) = sized(name, "NAND") {
                RelationSpec::Nand(n)
            } else if let Some(n) = sized(name, "EVEN") {
                RelationSpec::Even(n)
            } else if let Some(n) = sized(name, "ODD") {
                RelationSpec::Odd(n)
            } else {
                return None;
            }
        }
    };
    make_relation(&spec).ok().map(|r| r.named(name))
}

impl Library {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_relation(&mut self, name: impl Into<String>, r: Relation) -> Result<()> {
        let name = name.into();
        if let Some(old) = self.relation_opt(&name) {
            if old == r {
                return Ok(());
            }
            return Err(Error::Invalid(format!("relation `{name}` already defined differently")));
        }
        self.relations.insert(name.clone(), r.named(name));
        Ok(())
    }

    pub fn add_cost(&mut self, name: impl Into<String>, f: CostFunction) -> Result<()> {
        let name = name.into();
        if let Some(old) = self.cost_opt(&name) {
            if old == f {
                return Ok(());
            }
            return Err(Error::Invalid(format!("cost function `{name}` already defined differently")));
        }
        self.costs.insert(name.clone(), f.named(name));
        Ok(())
    }

    fn relation_opt(&self, name: &str) -> Option<Relation> {
        self.relations.get(name).cloned().or_else(|| builtin_relation(name))
    }

    fn cost_opt(&self, name: &str) -> Option<CostFunction> {
        if let Some(f) = self.costs.get(name) {
            return Some(f.clone());
        }
        if name == "f_neq" {
            return Some(CostFunction::f_neq());
        }
        let rel = self.relation_opt(name.strip_prefix("f_")?)?;
        CostFunction::indicator(&rel).ok().map(|f| f.named(name))
    }

    pub fn relation(&self, name: &str) -> Result<Relation> {
        self.relation_opt(name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn cost(&self, name: &str) -> Result<CostFunction> {
        self.cost_opt(name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// Whether `name` resolves without a registered definition.
    pub fn is_builtin(name: &str) -> bool {
        builtin_relation(name).is_some()
            || name == "f_neq"
            || name.strip_prefix("f_").and_then(builtin_relation).is_some()
    }

    pub fn registered_relations(&self) -> impl Iterator<Item = (&str, &Relation)> {
        self.relations.iter().map(|(n, r)| (n.as_str(), r))
    }

    pub fn registered_costs(&self) -> impl Iterator<Item = (&str, &CostFunction)> {
        self.costs.iter().map(|(n, f)| (n.as_str(), f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_resolve() {
        let lib = Library::new();
        assert_eq!(lib.relation("XOR3").unwrap().rows(), vec!["000", "110", "101", "011"]);
        assert_eq!(lib.relation("R_II2").unwrap().len(), 3);
        assert_eq!(lib.relation("R_IS1^2").unwrap().arity(), 3);
        assert_eq!(lib.relation("NAND2").unwrap().len(), 3);
        assert_eq!(lib.cost("f_neq").unwrap().arity(), 2);
        assert_eq!(lib.cost("f_R_II2").unwrap().arity(), 8);
        assert!(lib.relation("R_IS1").is_err());
        assert!(lib.relation("nope").is_err());
    }

    #[test]
    fn validation() {
        let lib = Library::new();
        let mut i = Instance::new(ProblemKind::Sat, 2);
        i.add("neq", vec![0, 1]);
        assert!(i.validate(&lib).is_ok());
        i.add("neq", vec![0, 2]);
        assert!(i.validate(&lib).is_err());
        let mut j = Instance::new(ProblemKind::Sat, 2);
        j.add("T", vec![0, 1]);
        assert!(j.validate(&lib).is_err());
    }
}
