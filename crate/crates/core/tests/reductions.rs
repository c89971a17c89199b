use boolcsp::instance::{Instance, Library, ProblemKind, Threshold};
use boolcsp::oracle::solve;
use boolcsp::rational::int;
use boolcsp::reductions::*;
use boolcsp::relation::Relation;
use boolcsp::valued::CostFunction;
use boolcsp::Error;

const SEED: u64 = 0x5eed;

fn optimum(inst: &Instance, lib: &Library) -> i64 {
    let out = solve(inst, lib, false).unwrap();
    let v = out.value().expect("feasible");
    assert!(v.is_integer());
    num_traits::ToPrimitive::to_i64(&v.to_integer()).unwrap()
}

#[test]
fn every_entry_certifies() {
    let mut failed = Vec::new();
    for r in registry() {
        let rep = certify(&r, Sampling::Auto { trials: 200, seed: SEED });
        assert!(rep.checked() > 0, "{}", rep.name);
        if !rep.passed() {
            failed.push(rep.to_string());
        }
    }
    assert!(failed.is_empty(), "{}", failed.join("\n"));
}

#[test]
fn registry_names_are_unique() {
    let mut names = names();
    let n = names.len();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), n);
    assert!(lookup("maxones_to_minones").is_ok());
    assert!(lookup("nope").is_err());
}

#[test]
fn il2_to_il0_example() {
    let mut inst = Instance::new(ProblemKind::UMaxOnes, 4);
    inst.add("R_IL2", vec![0, 1, 1, 2, 3, 3, 0, 2]);
    let lib = Library::new();
    assert_eq!(optimum(&inst, &lib), 2);
    let a = lookup("umo_IL2_to_IL0").unwrap().apply(&inst, &lib).unwrap();
    assert_eq!(a.instance.num_vars, 10);
    assert_eq!(optimum(&a.instance, &a.library), 7);
}

#[test]
fn sat_to_il2_stays_within_eight_n() {
    let red = lookup("sat2_to_umo_IL2").unwrap();
    for inst in red.space().enumerate(2) {
        let a = red.apply(&inst, &Library::new()).unwrap();
        assert!(a.instance.num_vars <= 2 + 8 * inst.num_vars);
    }
}

#[test]
fn triangle_cut() {
    let mut inst = Instance::new(ProblemKind::MaxCut, 3);
    for (u, v) in [(0, 1), (1, 2), (0, 2)] {
        inst.add("edge", vec![u, v]);
    }
    let lib = Library::new();
    assert_eq!(optimum(&inst, &lib), 2);
    let a = lookup("maxcut_to_vcsp_neq").unwrap().apply(&inst, &lib).unwrap();
    assert_eq!(a.instance.kind, ProblemKind::Vcsp);
    assert_eq!(optimum(&a.instance, &a.library), 1);
}

#[test]
fn uvcsp_binary_term_bound() {
    let mut lib = Library::new();
    lib.add_cost("f", CostFunction::from_ints(2, &[0, 2, 1, 0]).unwrap()).unwrap();
    let mut inst = Instance::new(ProblemKind::Vcsp, 2);
    inst.add("f", vec![0, 1]);
    let a = lookup("uvcspd_to_minones").unwrap().apply(&inst, &lib).unwrap();
    assert_eq!(uvcsp_cost_bound(2, 1, 2, 2), 2 + 2 * 2 + 2 * 5);
    assert!(a.instance.num_vars <= uvcsp_cost_bound(2, 1, 2, 2));
    assert_eq!(optimum(&a.instance, &a.library), optimum(&inst, &lib) + 2);
}

#[test]
fn uvcsp_zero_terms_are_dropped() {
    let mut lib = Library::new();
    lib.add_cost("z", CostFunction::from_ints(2, &[0, 0, 0, 0]).unwrap()).unwrap();
    let mut inst = Instance::new(ProblemKind::Vcsp, 1);
    inst.add("z", vec![0, 0]);
    inst.add("z", vec![0, 0]);
    let a = lookup("uvcspd_to_minones").unwrap().apply(&inst, &lib).unwrap();
    assert_eq!(a.instance.num_vars, 1);
    assert_eq!(optimum(&a.instance, &a.library), 0);
}

// One complement per term occurrence, as printed, skews shared variables.
#[test]
fn per_term_complements_miscount() {
    let mut lib = Library::new();
    lib.add_cost("h", CostFunction::from_ints(1, &[1, 0]).unwrap()).unwrap();
    let mut src = Instance::new(ProblemKind::Vcsp, 1);
    src.add("h", vec![0]);
    src.add("h", vec![0]);
    assert_eq!(optimum(&src, &lib), 0);

    // R_h(x, y1, y2): y1 = 1 iff x = 0.
    let mut tlib = Library::new();
    tlib.add_relation("R_h", Relation::new(3, [0b010, 0b001]).unwrap()).unwrap();
    let mut printed = Instance::new(ProblemKind::MinOnes, 1);
    for _ in 0..2 {
        let w = printed.fresh();
        printed.add("neq", vec![0, w]);
        let (y1, y2) = (printed.fresh(), printed.fresh());
        printed.add("R_h", vec![0, y1, y2]);
    }
    // Offset by total arity predicts 2.
    assert_eq!(optimum(&printed, &tlib), 1);

    let a = lookup("uvcspd_to_minones").unwrap().apply(&src, &lib).unwrap();
    assert_eq!(optimum(&a.instance, &a.library), 1);
    assert_eq!(a.contract, Contract::value(int(1), int(1), WhenInfeasible::TargetInfeasible));
}

#[test]
fn maxones_to_minones_exhaustive() {
    let red = lookup("maxones_to_minones").unwrap();
    let space = SourceSpace::new(ProblemKind::UMaxOnes, &[("OR2", 2)], 4, 3);
    let rep = certify_space(&red, &space, Sampling::Exhaustive);
    assert_eq!(rep.exhaustive_vars, Some(4));
    assert_eq!(rep.exhaustive, 1228);
    assert!(rep.passed(), "{rep}");
    let mut inst = Instance::new(ProblemKind::UMaxOnes, 3);
    inst.add("OR2", vec![0, 1]);
    inst.add("NAND2", vec![0, 1]);
    let a = red.apply(&inst, &Library::new()).unwrap();
    assert_eq!(optimum(&a.instance, &a.library), 2 * 3 - optimum(&inst, &Library::new()));
}

#[test]
fn sat_to_is21_exhaustive() {
    let red = lookup("sat2_to_umo_IS21").unwrap();
    let rep = certify(&red, Sampling::Exhaustive);
    assert!(rep.exhaustive > 0 && rep.passed(), "{rep}");
}

#[test]
fn qwpp_in2_random() {
    let red = lookup("wmo_qwpp_family[IN2]").unwrap();
    let rep = certify(&red, Sampling::Random { trials: 200, seed: SEED });
    assert_eq!(rep.random, 200);
    assert!(rep.passed(), "{rep}");
}

#[test]
fn certification_is_deterministic() {
    let red = lookup("maxcsp_nandTF_to_neq").unwrap();
    let run = || certify(&red, Sampling::Random { trials: 50, seed: 7 }).to_string();
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(run);
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(run);
    assert_eq!(one, four);
}

#[test]
fn degree_bound_is_enforced() {
    let mut inst = Instance::new(ProblemKind::Sat, 8);
    for _ in 0..3 {
        inst.add("R_II2", (0..8).collect());
    }
    let err = lookup("sat2_to_umo_IL2").unwrap().apply(&inst, &Library::new()).unwrap_err();
    assert!(matches!(err, Error::DegreeBound { .. }), "{err}");
}

#[test]
fn language_mismatch() {
    let mut inst = Instance::new(ProblemKind::UMaxOnes, 2);
    inst.add("OR2", vec![0, 1]);
    let red = lookup("umo_IL2_to_IL0").unwrap();
    assert!(red.apply(&inst, &Library::new()).is_err());
    let sat = Instance::new(ProblemKind::Sat, 2);
    assert!(matches!(red.apply(&sat, &Library::new()), Err(Error::LanguageMismatch(_))));
}

#[test]
fn thresholds_are_mapped() {
    let mut inst = Instance::new(ProblemKind::UMaxOnes, 3).with_threshold(Threshold::at_least(int(2)));
    inst.add("OR2", vec![0, 1]);
    let a = lookup("maxones_to_minones").unwrap().apply(&inst, &Library::new()).unwrap();
    assert_eq!(a.instance.threshold, Some(Threshold::at_most(int(4))));
    check_instance(&lookup("maxones_to_minones").unwrap(), &inst, &Library::new()).unwrap();
}
