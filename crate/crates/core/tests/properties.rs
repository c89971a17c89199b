use boolcsp::formula::{eval_wpp, WppGadget};
use boolcsp::instance::{Instance, Library, ProblemKind, Threshold};
use boolcsp::operation::{ops, preserves};
use boolcsp::oracle::{decide, evaluate, solve, Outcome};
use boolcsp::rational::{self, int, ratio, Rational};
use boolcsp::reductions::lookup;
use boolcsp::relation::Relation;
use boolcsp::text::{parse_costs, parse_instance, parse_relations, write_cost, write_instance, write_relation};
use boolcsp::valued::CostFunction;
use proptest::prelude::*;

fn relation(max_arity: usize) -> impl Strategy<Value = Relation> {
    (1..=max_arity).prop_flat_map(|k| {
        proptest::collection::btree_set(0u32..1 << k, 1..=(1usize << k)).prop_map(move |s| Relation::new(k, s).unwrap().named("r"))
    })
}

fn rat() -> impl Strategy<Value = Rational> {
    (0i64..20, 1i64..6).prop_map(|(p, q)| ratio(p, q))
}

const ALPHABET: [(&str, usize); 5] = [("OR2", 2), ("NAND2", 2), ("EVEN3", 3), ("T", 1), ("neq", 2)];

fn max_ones(max_vars: usize) -> impl Strategy<Value = Instance> {
    (1..=max_vars).prop_flat_map(|n| {
        let atom = (0..ALPHABET.len(), proptest::collection::vec(0..n, 3));
        (proptest::collection::vec(atom, 0..6), proptest::collection::vec(rat(), n)).prop_map(move |(atoms, ws)| {
            let mut inst = Instance::new(ProblemKind::WMaxOnes, n);
            for (a, scope) in atoms {
                let (name, k) = ALPHABET[a];
                inst.add(name, scope[..k].to_vec());
            }
            for (i, w) in ws.into_iter().enumerate() {
                inst.set_var_weight(i, w);
            }
            inst
        })
    })
}

fn permuted(inst: &Instance, perm: &[usize]) -> Instance {
    let mut out = Instance::new(inst.kind, inst.num_vars);
    for c in &inst.constraints {
        out.add(c.name.clone(), c.scope.iter().map(|&v| perm[v]).collect());
    }
    for (i, &p) in perm.iter().enumerate() {
        out.set_var_weight(p, inst.var_weight(i));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relation_text_round_trip(r in relation(6)) {
        let back = parse_relations(&write_relation(&r)).unwrap();
        prop_assert_eq!(back.len(), 1);
        prop_assert_eq!(&back[0], &r);
    }

    #[test]
    fn cost_text_round_trip(k in 1usize..=4, vals in proptest::collection::vec(rat(), 16)) {
        let f = CostFunction::new(k, vals[..1 << k].to_vec()).unwrap().named("f");
        let back = parse_costs(&write_cost(&f)).unwrap();
        prop_assert_eq!(&back[0], &f);
    }

    #[test]
    fn instance_text_round_trip(inst in max_ones(6), t in rat()) {
        let inst = inst.with_threshold(Threshold::at_least(t));
        let lib = Library::new();
        let (back, _) = parse_instance(&write_instance(&inst, &lib)).unwrap();
        prop_assert_eq!(back, inst);
    }

    #[test]
    fn oracle_is_permutation_invariant(inst in max_ones(7), seed in any::<u64>()) {
        let lib = Library::new();
        let n = inst.num_vars;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let a = solve(&inst, &lib, false).unwrap();
        let b = solve(&permuted(&inst, &perm), &lib, false).unwrap();
        prop_assert_eq!(a.value(), b.value());
        prop_assert_eq!(a.is_satisfiable(), b.is_satisfiable());
    }

    #[test]
    fn witness_attains_optimum(inst in max_ones(8)) {
        let lib = Library::new();
        let out = solve(&inst, &lib, true).unwrap();
        if let Outcome::Optimal { value, witness, optimal_set } = &out {
            prop_assert_eq!(evaluate(&inst, &lib, *witness).unwrap(), Some(value.clone()));
            let all = optimal_set.as_ref().unwrap();
            prop_assert_eq!(all.iter().min(), Some(witness));
            for m in 0..1u32 << inst.num_vars {
                match evaluate(&inst, &lib, m).unwrap() {
                    Some(v) => {
                        prop_assert!(v <= *value);
                        prop_assert_eq!(v == *value, all.contains(&m));
                    }
                    None => prop_assert!(!all.contains(&m)),
                }
            }
        }
    }

    #[test]
    fn max_ones_monotone_in_weights(inst in max_ones(7), i in 0usize..7, extra in rat()) {
        let lib = Library::new();
        let i = i % inst.num_vars;
        let mut heavier = inst.clone();
        heavier.set_var_weight(i, inst.var_weight(i) + extra);
        let a = solve(&inst, &lib, false).unwrap();
        let b = solve(&heavier, &lib, false).unwrap();
        if let (Some(x), Some(y)) = (a.value(), b.value()) {
            prop_assert!(x <= y);
        }
    }

    #[test]
    fn wpp_invariant_under_scaling(inst in max_ones(6), c in (1i64..7, 1i64..7)) {
        let lib = Library::new();
        let n = inst.num_vars;
        let mut scaled = inst.clone();
        for i in 0..n {
            scaled.set_var_weight(i, inst.var_weight(i) * ratio(c.0, c.1));
        }
        let proj: Vec<usize> = (0..n).step_by(2).collect();
        let a = eval_wpp(&WppGadget::new(inst, proj.clone()).unwrap(), &lib);
        let b = eval_wpp(&WppGadget::new(scaled, proj).unwrap(), &lib);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn polymorphisms_survive_projection(r in relation(5), keep in proptest::collection::vec(any::<bool>(), 5)) {
        let coords: Vec<usize> = (0..r.arity()).filter(|&i| keep[i]).collect();
        prop_assume!(!coords.is_empty());
        let p = r.project(&coords).unwrap();
        for op in [ops::min(), ops::max(), ops::majority(), ops::minority(), ops::constant(true), ops::constant(false)] {
            if preserves(&op, &r) {
                prop_assert!(preserves(&op, &p), "{} on {} -> {}", op.name(), r, p);
            }
        }
    }

    #[test]
    fn cut_thresholds_map_through_reduction(edges in proptest::collection::vec((0usize..5, 0usize..5, 1i64..4), 0..8), k in 0i64..12) {
        let mut inst = Instance::new(ProblemKind::MaxCut, 5).with_threshold(Threshold::at_least(int(k)));
        for (u, v, w) in edges {
            inst.add_weighted("edge", vec![u, v], int(w));
        }
        let lib = Library::new();
        let a = lookup("maxcut_to_vcsp_neq").unwrap().apply(&inst, &lib).unwrap();
        prop_assert_eq!(decide(&inst, &lib, None).unwrap(), decide(&a.instance, &a.library, None).unwrap());
        let t = a.instance.threshold.clone().unwrap();
        prop_assert_eq!(rational::format(&t.value), rational::format(&(inst.constraints.iter().map(|c| c.weight_or_one()).sum::<Rational>() - int(k))));
    }
}
