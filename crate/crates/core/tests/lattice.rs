use boolcsp::lattice::{co_clone_leq, co_clone_leq_by_definitions, co_clone_leq_exact, co_clone_of, CoCloneId};
use boolcsp::relation::{ConstraintLanguage, Relation};
use boolcsp::weak_base::catalog;

#[test]
fn every_weak_base_identifies_its_row() {
    for e in catalog(&[2, 3, 4]).unwrap() {
        let lang = ConstraintLanguage::single(e.relation.clone());
        assert_eq!(co_clone_of(&lang).unwrap(), e.co_clone, "{}", e.formula);
    }
}

#[test]
fn compressed_order_matches_exact_order() {
    let ids = CoCloneId::catalog(5);
    for &a in &ids {
        for &b in &ids {
            if a.is_limit() || b.is_limit() {
                continue;
            }
            assert_eq!(co_clone_leq(a, b), co_clone_leq_exact(a, b).unwrap(), "{a} {b}");
        }
    }
}

#[test]
fn order_matches_definitions() {
    let ids = CoCloneId::catalog(5);
    for &a in &ids {
        for &b in &ids {
            assert_eq!(co_clone_leq(a, b), co_clone_leq_by_definitions(a, b).unwrap(), "{a} {b}");
        }
    }
}

#[test]
fn order_is_partial_order() {
    let ids = CoCloneId::catalog(4);
    for &a in &ids {
        assert!(co_clone_leq(a, a));
        for &b in &ids {
            if a != b && co_clone_leq(a, b) {
                assert!(!co_clone_leq(b, a), "{a} {b}");
            }
            for &c in &ids {
                if co_clone_leq(a, b) && co_clone_leq(b, c) {
                    assert!(co_clone_leq(a, c), "{a} {b} {c}");
                }
            }
        }
    }
}

fn permute(r: &Relation, perm: &[usize]) -> Relation {
    let tuples = r.tuples().iter().map(|&t| {
        perm.iter().enumerate().fold(0u32, |acc, (i, &p)| acc | (((t >> p) & 1) << i))
    });
    Relation::new(r.arity(), tuples).unwrap()
}

#[test]
fn ternary_identification_is_permutation_invariant() {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for mask in 1u32..256 {
        let r = Relation::new(3, (0..8).filter(|t| mask >> t & 1 == 1)).unwrap();
        let base = co_clone_of(&ConstraintLanguage::single(r.clone())).unwrap();
        for p in &perms {
            let q = permute(&r, p);
            assert_eq!(co_clone_of(&ConstraintLanguage::single(q)).unwrap(), base);
        }
    }
}
