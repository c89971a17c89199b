//! Golden and certification checks shared by the `selftest` command and the
//! acceptance suite. Reports contain no timings and do not depend on the
//! number of worker threads.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{classify_max_ones, Complexity};
use crate::gadgets::{argmax_identities, co_clone, extension_gadgets};
use crate::instance::{Instance, Library, ProblemKind};
use crate::lattice::{co_clone_leq, co_clone_of};
use crate::operation::ops;
use crate::oracle::solve;
use crate::rational;
use crate::reductions::{certify, registry, Sampling};
use crate::relation::{ConstraintLanguage, Relation};
use crate::valued::{
    admits_binary_multimorphism, admits_unary_multimorphism, classify_vcsp, express_neq, verify_neq_expression,
    CostFunction,
};
use crate::weak_base::{catalog, r_ii2_matrix, r_in2_matrix, weak_base};

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_TRIALS: usize = 200;
/// Hard random cost function sets checked by the synthesis check.
pub const SYNTHESIS_CASES: usize = 500;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), passed, detail: detail.into() }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {}", self.name, self.detail)
    }
}

fn failure(name: &str, e: impl fmt::Display) -> Check {
    Check::new(name, false, format!("error: {e}"))
}

pub fn weak_base_goldens() -> Check {
    let name = "weak base goldens";
    let pairs = [("II2", r_ii2_matrix()), ("IN2", r_in2_matrix())];
    let mut bad = Vec::new();
    for (c, want) in &pairs {
        match weak_base(co_clone(c)) {
            Ok(r) if r.rows() == want.rows() => {}
            Ok(_) => bad.push(c.to_string()),
            Err(e) => return failure(name, e),
        }
    }
    let passed = bad.is_empty();
    let detail = if passed { "R_II2 3x8 and R_IN2 6x8 match".to_string() } else { format!("mismatch: {}", bad.join(", ")) };
    Check::new(name, passed, detail)
}

pub fn coclone_identification() -> Check {
    let name = "co-clone identification";
    let entries = match catalog(&[2, 3]) {
        Ok(e) => e,
        Err(e) => return failure(name, e),
    };
    let mut bad = Vec::new();
    for e in &entries {
        match co_clone_of(&ConstraintLanguage::single(e.relation.clone())) {
            Ok(c) if c == e.co_clone => {}
            Ok(c) => bad.push(format!("{} identified as {c}", e.co_clone)),
            Err(err) => bad.push(format!("{}: {err}", e.co_clone)),
        }
    }
    let passed = bad.is_empty();
    let detail = if passed { format!("{} weak bases identified", entries.len()) } else { bad.join("; ") };
    Check::new(name, passed, detail)
}

/// Closure-test verdicts against lattice position for every ternary relation.
pub fn dichotomy_cross_validation() -> Check {
    let name = "max-ones dichotomy cross-validation";
    let is21 = co_clone("IS1^2");
    let affine = ["IL0", "IL3", "IL2", "IN2"].map(co_clone);
    let mut bad = Vec::new();
    let mut hard = 0;
    let mut checked = 0;
    for set in 1u32..256 {
        let Ok(r) = Relation::new(3, (0..8).filter(|t| set >> t & 1 == 1)) else {
            bad.push(format!("relation {set:#x}"));
            continue;
        };
        let lang = ConstraintLanguage::single(r);
        let (Ok(class), Ok(c)) = (classify_max_ones(&lang), co_clone_of(&lang)) else {
            bad.push(format!("relation {set:#x}"));
            continue;
        };
        let by_position = co_clone_leq(is21, c) || affine.contains(&c);
        if (class.verdict == Complexity::NpHard) != by_position {
            bad.push(format!("relation {set:#x} in {c}: {}", class.verdict));
        }
        hard += (class.verdict == Complexity::NpHard) as usize;
        checked += 1;
    }
    let passed = bad.is_empty();
    let detail = if passed {
        format!("{checked} nonempty ternary relations, {hard} NP-hard, 0 disagreements")
    } else {
        bad.join("; ")
    };
    Check::new(name, passed, detail)
}

pub fn extension_gadget_suite() -> Check {
    let name = "q.p.p. gadget suite";
    let mut bad = Vec::new();
    let gadgets = extension_gadgets();
    for g in &gadgets {
        if !g.is_sound() {
            bad.push(g.name());
        }
    }
    let passed = bad.is_empty();
    let detail = if passed { format!("{} gadgets verified", gadgets.len()) } else { format!("failed: {}", bad.join(", ")) };
    Check::new(name, passed, detail)
}

pub fn argmax_identity_suite() -> Check {
    let name = "argmax identity suite";
    let ids = argmax_identities();
    let bad: Vec<String> = ids.iter().filter(|i| !i.holds()).map(|i| i.name()).collect();
    let passed = bad.is_empty();
    let detail = if passed { format!("{} identities verified", ids.len()) } else { format!("failed: {}", bad.join(", ")) };
    Check::new(name, passed, detail)
}

fn certify_where(name: &str, seed: u64, trials: usize, pick: impl Fn(&str) -> bool) -> Check {
    let mut lines = Vec::new();
    let mut failed = Vec::new();
    for red in registry().into_iter().filter(|r| pick(r.name())) {
        let rep = certify(&red, Sampling::Auto { trials, seed });
        lines.push(format!("{} {}", red.name(), rep.checked()));
        if !rep.passed() {
            failed.push(rep.to_string());
        }
    }
    let passed = failed.is_empty();
    let detail = if passed {
        format!("{} entries, 0 counterexamples ({})", lines.len(), lines.join(", "))
    } else {
        failed.join("")
    };
    Check::new(name, passed, detail)
}

/// Every registered reduction except the weighted family.
pub fn reduction_certification(seed: u64, trials: usize) -> Check {
    certify_where("reduction certification", seed, trials, |n| !n.starts_with("wmo_qwpp_family"))
}

pub fn wpp_composition(seed: u64, trials: usize) -> Check {
    certify_where("w.p.p. composition gate", seed, trials, |n| n.starts_with("wmo_qwpp_family"))
}

/// One to three cost functions of arity 1 to 3 with values in `0..=4`.
pub fn random_delta(rng: &mut ChaCha8Rng) -> Vec<CostFunction> {
    let count = rng.gen_range(1..=3);
    (0..count)
        .map(|_| {
            let arity = rng.gen_range(1..=3);
            let values: Vec<i64> = (0..1 << arity).map(|_| rng.gen_range(0..=4)).collect();
            CostFunction::from_ints(arity, &values).expect("small table")
        })
        .collect()
}

pub fn neq_synthesis(seed: u64, cases: usize) -> Check {
    let name = "f_neq synthesis";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut hard, mut easy) = (0, 0);
    let mut bad = Vec::new();
    while hard < cases {
        let delta = random_delta(&mut rng);
        let class = match classify_vcsp(&delta) {
            Ok(c) => c,
            Err(e) => return failure(name, e),
        };
        if class.verdict == Complexity::NpHard {
            hard += 1;
            match express_neq(&delta) {
                Ok(e) if verify_neq_expression(&e, &delta) => {}
                Ok(_) => bad.push(format!("case {hard}: expression does not verify")),
                Err(e) => bad.push(format!("case {hard}: {e}")),
            }
        } else {
            easy += 1;
            let ok = class.admitted.iter().all(|m| match m.as_str() {
                "(0)" => admits_unary_multimorphism(&delta, &ops::constant(false)),
                "(1)" => admits_unary_multimorphism(&delta, &ops::constant(true)),
                _ => admits_binary_multimorphism(&delta, &ops::min(), &ops::max()),
            });
            if !ok {
                bad.push(format!("tractable set {easy}: multimorphism does not re-verify"));
            }
        }
    }
    let passed = bad.is_empty();
    let detail = if passed {
        format!("{hard} NP-hard sets verified exactly, {easy} tractable sets re-verified")
    } else {
        bad.join("; ")
    };
    Check::new(name, passed, detail)
}

pub fn neq_baseline() -> Check {
    let name = "f_neq baseline";
    let class = match classify_vcsp(&[CostFunction::f_neq()]) {
        Ok(c) => c,
        Err(e) => return failure(name, e),
    };
    let mut triangle = Instance::new(ProblemKind::MaxCut, 3);
    for (u, v) in [(0, 1), (1, 2), (0, 2)] {
        triangle.add("edge", vec![u, v]);
    }
    let reduced = registry()
        .into_iter()
        .find(|r| r.name() == "maxcut_to_vcsp_neq")
        .ok_or("missing maxcut_to_vcsp_neq".to_string())
        .and_then(|r| r.apply(&triangle, &Library::new()).map_err(|e| e.to_string()));
    let a = match reduced {
        Ok(a) => a,
        Err(e) => return failure(name, e),
    };
    let (cut, min) = match (solve(&triangle, &Library::new(), false), solve(&a.instance, &a.library, false)) {
        (Ok(c), Ok(m)) => (c.value().cloned(), m.value().cloned()),
        (Err(e), _) | (_, Err(e)) => return failure(name, e),
    };
    let passed = class.verdict == Complexity::NpHard
        && class.witnesses.len() == 3
        && cut == Some(rational::int(2))
        && min == Some(rational::int(1));
    let fmt_opt = |v: &Option<rational::Rational>| v.as_ref().map(rational::format).unwrap_or_else(|| "none".into());
    let detail = format!(
        "{} with {} witnesses, triangle max cut {}, VCSP minimum {}",
        class.verdict,
        class.witnesses.len(),
        fmt_opt(&cut),
        fmt_opt(&min)
    );
    Check::new(name, passed, detail)
}

/// Checks in report order.
pub fn run(seed: u64, trials: usize) -> Vec<Check> {
    vec![
        weak_base_goldens(),
        coclone_identification(),
        dichotomy_cross_validation(),
        extension_gadget_suite(),
        argmax_identity_suite(),
        reduction_certification(seed, trials),
        wpp_composition(seed, trials),
        neq_synthesis(seed, SYNTHESIS_CASES),
        neq_baseline(),
    ]
}

pub fn report(checks: &[Check]) -> String {
    let mut s: String = checks.iter().map(|c| format!("{c}\n")).collect();
    let passed = checks.iter().filter(|c| c.passed).count();
    s.push_str(&format!("{passed}/{} checks passed\n", checks.len()));
    s
}
