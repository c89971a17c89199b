//! Multimorphism classification and expressing f_neq.

use boolcsp::valued::{classify_vcsp, express_neq, verify_neq_expression, CostFunction};

fn main() -> boolcsp::Result<()> {
    let submodular = CostFunction::from_ints(2, &[0, 1, 1, 0])?.named("g");
    print!("{{g}}: {}", classify_vcsp(&[submodular])?);

    let delta = vec![
        CostFunction::from_ints(2, &[3, 0, 1, 2])?.named("a"),
        CostFunction::from_ints(1, &[0, 1])?.named("b"),
    ];
    print!("{{a, b}}: {}", classify_vcsp(&delta)?);
    let e = express_neq(&delta)?;
    println!("{e}");
    println!("verified: {}", verify_neq_expression(&e, &delta));
    Ok(())
}
