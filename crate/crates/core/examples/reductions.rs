//! Applying and certifying gadget reductions.

use boolcsp::instance::{Instance, Library, ProblemKind};
use boolcsp::reductions::{certify, lookup, registry, Sampling};
use boolcsp::text::write_instance;

fn main() -> boolcsp::Result<()> {
    for r in registry() {
        println!("{}", r.record);
    }

    let mut inst = Instance::new(ProblemKind::UMaxOnes, 3);
    inst.add("OR2", vec![0, 1]);
    inst.add("NAND2", vec![1, 2]);
    let red = lookup("maxones_to_minones")?;
    let a = red.apply(&inst, &Library::new())?;
    println!("\n{}", a.contract);
    print!("{}", write_instance(&a.instance, &a.library));

    let report = certify(&lookup("umo_IL2_to_IL0")?, Sampling::Auto { trials: 100, seed: 7 });
    print!("\n{report}");
    Ok(())
}
