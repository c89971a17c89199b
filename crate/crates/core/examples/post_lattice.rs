//! Clones, co-clones and the inclusion order.

use boolcsp::lattice::{co_clone_leq, co_clone_of, generators, CoCloneId};
use boolcsp::relation::{make_relation, ConstraintLanguage, RelationSpec};

fn main() -> boolcsp::Result<()> {
    let ids = CoCloneId::catalog(3);
    println!("{} co-clones with chains up to index 3", ids.len());

    let in2: CoCloneId = "IN2".parse()?;
    let below: Vec<String> = ids.iter().filter(|&&c| co_clone_leq(c, in2)).map(|c| c.to_string()).collect();
    println!("below IN2: {}", below.join(" "));

    for g in generators(in2.clone_id()) {
        println!("N2 generator: {}", g.name());
    }

    let even3 = make_relation(&RelationSpec::Even(3))?;
    println!("<EVEN3> = {}", co_clone_of(&ConstraintLanguage::single(even3))?);
    let nand2 = make_relation(&RelationSpec::Nand(2))?;
    println!("<NAND2> = {}", co_clone_of(&ConstraintLanguage::single(nand2))?);
    Ok(())
}
