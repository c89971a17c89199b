//! One line per acceptance criterion. Runtime limits are pinned below;
//! value comparisons are exact rationals with no tolerance.

use std::time::{Duration, Instant};

use boolcsp::cli;
use boolcsp::reductions::{certify, registry, BoundKind, Sampling};
use boolcsp::selftest::{self, Check, DEFAULT_SEED, DEFAULT_TRIALS, SYNTHESIS_CASES};

const SEED: u64 = DEFAULT_SEED;
const TRIALS: usize = DEFAULT_TRIALS;

struct Outcome {
    id: usize,
    passed: bool,
    line: String,
}

fn timed(id: usize, limit: Option<Duration>, f: impl FnOnce() -> Check) -> Outcome {
    let start = Instant::now();
    let check = f();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    let passed = check.passed && in_time;
    let budget = limit.map(|l| format!(" (limit {:.0?})", l)).unwrap_or_default();
    let line = format!(
        "criterion {id}: {} {}: {} [{:.2?}{budget}]",
        if passed { "PASS" } else { "FAIL" },
        check.name,
        check.detail,
        elapsed
    );
    Outcome { id, passed, line }
}

fn bound_kinds() -> Check {
    let exact = ["sat2_to_umo_IL2", "umo_IL2_to_IL0", "umo_II2_to_IN2", "umo_IS21_to_ID2", "umo_IL2_to_IL3", "maxones_to_minones"];
    let at_most = ["sat2_to_umo_IS21", "uvcspd_to_minones", "sat2_to_uvcsp2"];
    let regs = registry();
    let kind = |n: &str| regs.iter().find(|r| r.name() == n).map(|r| r.record.bound_kind);
    let ok = exact.iter().all(|n| kind(n) == Some(BoundKind::Exact)) && at_most.iter().all(|n| kind(n) == Some(BoundKind::AtMost));
    Check { name: "declared bounds".into(), passed: ok, detail: String::new() }
}

fn reductions() -> Check {
    let mut c = selftest::reduction_certification(SEED, TRIALS);
    let b = bound_kinds();
    c.passed &= b.passed;
    c.detail = format!("{}; bound kinds {}", c.detail, if b.passed { "as declared" } else { "wrong" });
    c
}

fn composition() -> Check {
    let mut failed = Vec::new();
    let mut count = 0;
    for red in registry().into_iter().filter(|r| r.name().starts_with("wmo_qwpp_family")) {
        let rep = certify(&red, Sampling::Random { trials: TRIALS, seed: SEED });
        count += 1;
        if !rep.passed() || rep.random != TRIALS {
            failed.push(rep.to_string());
        }
    }
    let passed = failed.is_empty() && count == 6;
    let detail = if passed {
        format!("{count} targets x {TRIALS} random instances, 0 counterexamples")
    } else {
        failed.join("")
    };
    Check { name: "w.p.p. composition gate".into(), passed, detail }
}

fn baseline() -> Check {
    selftest::neq_baseline()
}

fn determinism() -> Check {
    let run = |jobs: &str| {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = cli::run(["boolcsp", "selftest", "--jobs", jobs], &mut out, &mut err);
        (code, out)
    };
    let (c1, one) = run("1");
    let (c8, eight) = run("8");
    let passed = c1 == 0 && c8 == 0 && one == eight;
    let detail = format!("exit codes {c1}/{c8}, reports {} bytes, identical: {}", one.len(), one == eight);
    Check { name: "selftest determinism".into(), passed, detail }
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let results = vec![
        timed(1, Some(secs(1)), selftest::weak_base_goldens),
        timed(2, Some(secs(60)), selftest::coclone_identification),
        timed(3, Some(secs(60)), selftest::dichotomy_cross_validation),
        timed(4, None, selftest::extension_gadget_suite),
        timed(5, None, selftest::argmax_identity_suite),
        timed(6, Some(secs(600)), reductions),
        timed(7, None, composition),
        timed(8, Some(secs(300)), || selftest::neq_synthesis(SEED, SYNTHESIS_CASES)),
        timed(9, None, baseline),
        timed(10, None, determinism),
    ];
    for r in &results {
        println!("{}", r.line);
    }
    let failed: Vec<usize> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
