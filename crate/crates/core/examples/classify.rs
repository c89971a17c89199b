//! SAT and Max-Ones dichotomies by closure tests.

use boolcsp::classify::{classify_max_ones, classify_sat};
use boolcsp::relation::{make_relation, ConstraintLanguage, RelationSpec};

fn main() -> boolcsp::Result<()> {
    let cases = [
        ("1-in-3", RelationSpec::OneInThree),
        ("OR2", RelationSpec::Or(2)),
        ("NAND2", RelationSpec::Nand(2)),
        ("EVEN3", RelationSpec::Even(3)),
    ];
    for (name, spec) in cases {
        let lang = ConstraintLanguage::single(make_relation(&spec)?.named(name));
        print!("{name}\n  SAT: {}  Max-Ones: {}", classify_sat(&lang)?, classify_max_ones(&lang)?);
    }
    Ok(())
}
