//! Exact optima by enumeration.

use boolcsp::instance::{Instance, Library, ProblemKind, Threshold};
use boolcsp::oracle::{decide, solve};
use boolcsp::rational::{self, int};

fn main() -> boolcsp::Result<()> {
    let lib = Library::new();
    let mut triangle = Instance::new(ProblemKind::UMaxOnes, 3);
    for (u, v) in [(0, 1), (1, 2), (0, 2)] {
        triangle.add("NAND2", vec![u, v]);
    }
    let out = solve(&triangle, &lib, true)?;
    println!("independent set in a triangle: {}", rational::format(out.value().expect("feasible")));
    println!("optimal assignments: {:?}", out.all());

    let mut cut = Instance::new(ProblemKind::MaxCut, 3);
    for (u, v) in [(0, 1), (1, 2), (0, 2)] {
        cut.add("edge", vec![u, v]);
    }
    for k in [2, 3] {
        println!("max cut >= {k}: {}", decide(&cut, &lib, Some(&Threshold::at_least(int(k))))?);
    }

    let mut weighted = Instance::new(ProblemKind::WMaxOnes, 2);
    weighted.add("NAND2", vec![0, 1]);
    weighted.set_var_weight(0, rational::ratio(3, 2));
    let out = solve(&weighted, &lib, false)?;
    println!("weighted optimum {} at {:02b}", rational::format(out.value().expect("feasible")), out.witness().expect("feasible"));
    Ok(())
}
