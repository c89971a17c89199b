//! Reading and writing relation, cost function and instance files.

use boolcsp::text::{parse_costs, parse_instance, parse_relations, write_cost, write_instance, write_relation};

const INSTANCE: &str = "\
relation R 3
110
011
problem w-max-ones
vars 4
varweights 1 1/2 2 0
c R 0 1 2
c NAND2 2 3
";

fn main() -> boolcsp::Result<()> {
    let (inst, lib) = parse_instance(INSTANCE)?;
    let text = write_instance(&inst, &lib);
    print!("{text}");
    assert_eq!(parse_instance(&text)?.0, inst);

    let rels = parse_relations("relation xor 2\n01\n10\n")?;
    print!("{}", write_relation(&rels[0]));
    let costs = parse_costs("costfn f 1\n0 1/3\n1 0\n")?;
    print!("{}", write_cost(&costs[0]));
    Ok(())
}
