//! Primitive positive definitions, constant extensions and argmax gadgets.

use boolcsp::formula::{eval_formula, search_definition, SearchOutcome};
use boolcsp::gadgets::{argmax_identities, extension_gadgets, xor3_definition};
use boolcsp::relation::{make_relation, ConstraintLanguage, RelationSpec};
use boolcsp::weak_base::weak_base;

fn main() -> boolcsp::Result<()> {
    let mut lang = ConstraintLanguage::new();
    lang.insert("OR3", make_relation(&RelationSpec::Or(3))?)?;
    lang.insert("F", make_relation(&RelationSpec::F)?)?;
    let or2 = make_relation(&RelationSpec::Or(2))?;
    match search_definition(&or2, &lang, 1, 2, 1_000_000)? {
        SearchOutcome::Found(f) => println!("OR2 = {f}"),
        SearchOutcome::NotFound { .. } => println!("OR2 not found"),
    }

    for g in extension_gadgets() {
        let c = g.check()?;
        println!("{:<18} forward {} backward {} backward|y1 {}", g.name(), c.forward, c.backward, c.backward_given_y1);
    }
    for id in argmax_identities() {
        println!("{:<22} holds {} optimum {}", id.name(), id.holds(), id.optimum());
    }

    let f = xor3_definition();
    let mut ii2 = ConstraintLanguage::new();
    ii2.insert("R_II2", weak_base("II2".parse()?)?)?;
    let xor3 = eval_formula(&f, &ii2)?;
    println!("XOR3 over R_II2: {:?}", xor3.rows());
    Ok(())
}
