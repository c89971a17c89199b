//! Building relations and testing polymorphisms.

use boolcsp::operation::{find_violation, ops, preserves};
use boolcsp::relation::{make_relation, tuple_string, Relation, RelationSpec};

fn main() -> boolcsp::Result<()> {
    let one_in_three = make_relation(&RelationSpec::OneInThree)?;
    let or2 = Relation::from_rows(&["01", "10", "11"])?.named("or2");
    println!("{one_in_three}");
    println!("{or2}");

    for op in [ops::min(), ops::max(), ops::majority(), ops::minority()] {
        match find_violation(&op, &one_in_three) {
            Some(v) => {
                let args: Vec<String> = v.tuples.iter().map(|&t| tuple_string(t, 3)).collect();
                println!("{} breaks 1-in-3: ({}) -> {}", op.name(), args.join(", "), tuple_string(v.image, 3));
            }
            None => println!("{} preserves 1-in-3", op.name()),
        }
    }
    println!("max preserves or2: {}", preserves(&ops::max(), &or2));

    let ext = make_relation(&RelationSpec::NeqExt(Box::new(one_in_three), 3))?;
    println!("1-in-3 with complements: {} tuples of arity {}", ext.len(), ext.arity());
    Ok(())
}
