use boolcsp::classify::Complexity;
use boolcsp::operation::ops;
use boolcsp::rational;
use boolcsp::valued::{
    admits_binary_multimorphism, admits_unary_multimorphism, classify_vcsp, express_neq, verify_neq_expression,
    CostFunction,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_delta(rng: &mut ChaCha8Rng) -> Vec<CostFunction> {
    let count = rng.gen_range(1..=3);
    (0..count)
        .map(|_| {
            let arity = rng.gen_range(1..=3);
            let values: Vec<i64> = (0..1 << arity).map(|_| rng.gen_range(0..=4)).collect();
            CostFunction::from_ints(arity, &values).unwrap()
        })
        .collect()
}

#[test]
fn synthesis_verifies_on_random_hard_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut hard, mut easy) = (0, 0);
    let mut cases = std::collections::BTreeSet::new();
    while hard < 500 {
        let delta = random_delta(&mut rng);
        let class = classify_vcsp(&delta).unwrap();
        match class.verdict {
            Complexity::NpHard => {
                let e = express_neq(&delta).unwrap();
                assert!(verify_neq_expression(&e, &delta), "{delta:?}\n{e}");
                cases.extend(e.trace.iter().filter(|l| l.contains(':')).map(|l| l.split(':').next().unwrap().to_string()));
                hard += 1;
            }
            Complexity::P => {
                let ok = class.admitted.iter().all(|m| match m.as_str() {
                    "(0)" => admits_unary_multimorphism(&delta, &ops::constant(false)),
                    "(1)" => admits_unary_multimorphism(&delta, &ops::constant(true)),
                    _ => admits_binary_multimorphism(&delta, &ops::max(), &ops::min()),
                });
                assert!(ok);
                easy += 1;
            }
        }
    }
    assert!(easy > 0);
    assert!(cases.len() >= 5, "{cases:?}");
}

#[test]
fn classification_ignores_scaling_and_shifts() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let delta = random_delta(&mut rng);
        let base = classify_vcsp(&delta).unwrap();
        let c = rational::ratio(rng.gen_range(1..7), rng.gen_range(1..5));
        let scaled: Vec<_> = delta.iter().map(|f| f.scaled(&c)).collect();
        let shifted: Vec<_> = delta.iter().map(|f| f.shifted(&c).unwrap()).collect();
        assert_eq!(classify_vcsp(&scaled).unwrap().admitted, base.admitted);
        assert_eq!(classify_vcsp(&shifted).unwrap().admitted, base.admitted);
    }
}
