//! Weak bases of co-clones.

use boolcsp::text::write_relation;
use boolcsp::weak_base::{catalog, weak_base_entry};

fn main() -> boolcsp::Result<()> {
    for e in catalog(&[2])? {
        println!("{:<8} arity {:<2} {:>3} tuples  {}", e.co_clone.to_string(), e.relation.arity(), e.relation.len(), e.formula);
    }
    let ii2 = weak_base_entry("II2".parse()?)?;
    print!("\n{}", write_relation(&ii2.relation.named("R_II2")));
    Ok(())
}
