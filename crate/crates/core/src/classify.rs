//! Closure-test classifiers for SAT and Max-Ones.

use std::fmt;

use crate::error::{Error, Result};
use crate::operation::{arithmetical_operation, find_violation, ops, BooleanOperation};
use crate::relation::{tuple_string, ConstraintLanguage};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Complexity {
    P,
    NpHard,
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Complexity::P => "P",
            Complexity::NpHard => "NP-hard",
        })
    }
}

/// One failed closure: the operation, the relation and a violating sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureWitness {
    pub closure: String,
    pub operation: String,
    pub relation: String,
    pub arity: usize,
    pub tuples: Vec<u32>,
    pub image: u32,
}

impl fmt::Display for ClosureWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.tuples.iter().map(|&t| tuple_string(t, self.arity)).collect();
        write!(
            f,
            "not {}: {}({}) = {} not in {}",
            self.closure,
            self.operation,
            args.join(", "),
            tuple_string(self.image, self.arity),
            self.relation
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Complexity,
    /// Closures that hold, in test order.
    pub closures: Vec<String>,
    /// One witness per failed closure.
    pub witnesses: Vec<ClosureWitness>,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.verdict {
            Complexity::P => writeln!(f, "P ({})", self.closures.join(", "))?,
            Complexity::NpHard => writeln!(f, "NP-hard")?,
        }
        for w in &self.witnesses {
            writeln!(f, "  {w}")?;
        }
        Ok(())
    }
}

fn check_language(lang: &ConstraintLanguage) -> Result<()> {
    if lang.is_empty() {
        return Err(Error::EmptyLanguage);
    }
    if let Some((name, _)) = lang.iter().find(|(_, r)| r.is_empty()) {
        return Err(Error::EmptyRelation(name.to_string()));
    }
    Ok(())
}

fn classify(lang: &ConstraintLanguage, tests: &[(&str, BooleanOperation)]) -> Result<Classification> {
    check_language(lang)?;
    let mut closures = Vec::new();
    let mut witnesses = Vec::new();
    for (closure, op) in tests {
        let failure = lang.iter().find_map(|(name, r)| find_violation(op, r).map(|v| (name, r, v)));
        match failure {
            None => closures.push(closure.to_string()),
            Some((name, r, v)) => witnesses.push(ClosureWitness {
                closure: closure.to_string(),
                operation: op.name().to_string(),
                relation: name.to_string(),
                arity: r.arity(),
                tuples: v.tuples,
                image: v.image,
            }),
        }
    }
    let verdict = if closures.is_empty() { Complexity::NpHard } else { Complexity::P };
    Ok(Classification { verdict, closures, witnesses })
}

/// Max-Ones is in P iff the language is 1-closed, max-closed or arithmetical.
pub fn classify_max_ones(lang: &ConstraintLanguage) -> Result<Classification> {
    classify(
        lang,
        &[
            ("1-closed", ops::constant(true)),
            ("max-closed", ops::max()),
            ("arithmetical", arithmetical_operation()),
        ],
    )
}

/// Schaefer's six closure tests.
pub fn classify_sat(lang: &ConstraintLanguage) -> Result<Classification> {
    classify(
        lang,
        &[
            ("0-valid", ops::constant(false)),
            ("1-valid", ops::constant(true)),
            ("Horn", ops::min()),
            ("dual Horn", ops::max()),
            ("affine", ops::minority()),
            ("bijunctive", ops::majority()),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::{make_relation, RelationSpec};

    fn lang(spec: RelationSpec) -> ConstraintLanguage {
        ConstraintLanguage::single(make_relation(&spec).unwrap())
    }

    #[test]
    fn max_ones_examples() {
        let c = classify_max_ones(&lang(RelationSpec::Eq)).unwrap();
        assert_eq!(c.verdict, Complexity::P);
        assert_eq!(c.closures[0], "1-closed");
        let c = classify_max_ones(&lang(RelationSpec::OneInThree)).unwrap();
        assert_eq!(c.verdict, Complexity::NpHard);
        assert_eq!(c.witnesses.len(), 3);
        let c = classify_max_ones(&lang(RelationSpec::Neq)).unwrap();
        assert_eq!(c.closures, vec!["arithmetical".to_string()]);
    }

    #[test]
    fn sat_examples() {
        assert_eq!(classify_sat(&lang(RelationSpec::Eq)).unwrap().verdict, Complexity::P);
        let c = classify_sat(&lang(RelationSpec::OneInThree)).unwrap();
        assert_eq!(c.verdict, Complexity::NpHard);
        assert_eq!(c.witnesses.len(), 6);
        let c = classify_sat(&lang(RelationSpec::Or(2))).unwrap();
        assert!(c.closures.contains(&"dual Horn".to_string()));
    }

    #[test]
    fn rejects_empty() {
        assert_eq!(classify_sat(&ConstraintLanguage::new()), Err(Error::EmptyLanguage));
        let l = ConstraintLanguage::single(crate::relation::Relation::empty(2).unwrap().named("Z"));
        assert!(matches!(classify_max_ones(&l), Err(Error::EmptyRelation(_))));
    }
}
