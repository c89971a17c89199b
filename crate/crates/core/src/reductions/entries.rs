//! The registry entries.

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::sample::SourceSpace;
use super::{Applied, BoundKind, Contract, KindTag, Reduction, ReductionRecord, WhenInfeasible};
use crate::error::{Error, Result};
use crate::gadgets::{argmax_identities, co_clone, extension_gadgets, relation_name, xor3_definition, ArgmaxIdentity, ExtensionGadget};
use crate::instance::{Instance, Library, ProblemKind, Threshold};
use crate::lattice::Family;
use crate::rational::{self, int, Rational};
use crate::relation::Relation;
use crate::valued::CostFunction;

use ProblemKind::*;

fn require_names(inst: &Instance, allowed: &[&str]) -> Result<()> {
    match inst.constraints.iter().find(|c| !allowed.contains(&c.name.as_str())) {
        Some(c) => Err(Error::LanguageMismatch(format!("`{}` is not in {{{}}}", c.name, allowed.join(", ")))),
        None => Ok(()),
    }
}

fn require_degree(inst: &Instance, bound: usize) -> Result<()> {
    match inst.degrees().iter().enumerate().find(|(_, &d)| d > bound) {
        Some((var, &count)) => Err(Error::DegreeBound { var, count, bound }),
        None => Ok(()),
    }
}

fn require_unit(inst: &Instance) -> Result<()> {
    if inst.constraints.iter().any(|c| c.weight.as_ref().is_some_and(|w| !w.is_one())) {
        return Err(Error::Invalid("expected unit weights".into()));
    }
    Ok(())
}

fn total_weight(inst: &Instance) -> Rational {
    inst.constraints.iter().map(|c| c.weight_or_one()).sum()
}

struct Spec {
    name: String,
    source: ProblemKind,
    source_language: String,
    target: ProblemKind,
    target_language: String,
    tag: KindTag,
    bound: &'static str,
    bound_kind: BoundKind,
    threshold_map: &'static str,
}

fn make(
    spec: Spec,
    apply: impl Fn(&Instance, &Library) -> Result<Applied> + Send + Sync + 'static,
    space: impl Fn() -> SourceSpace + Send + Sync + 'static,
) -> Reduction {
    Reduction {
        record: ReductionRecord {
            name: spec.name,
            source: spec.source,
            source_language: spec.source_language,
            target: spec.target,
            target_language: spec.target_language,
            tag: spec.tag,
            bound: spec.bound.to_string(),
            bound_kind: spec.bound_kind,
            threshold_map: spec.threshold_map.to_string(),
        },
        apply: Arc::new(apply),
        space: Arc::new(space),
    }
}

fn lv(c: &str) -> KindTag {
    KindTag::Lv(c.to_string())
}

fn spec(
    name: &str,
    source: (ProblemKind, &str),
    target: (ProblemKind, &str),
    tag: KindTag,
    bound: (&'static str, BoundKind),
    threshold_map: &'static str,
) -> Spec {
    Spec {
        name: name.to_string(),
        source: source.0,
        source_language: source.1.to_string(),
        target: target.0,
        target_language: target.1.to_string(),
        tag,
        bound: bound.0,
        bound_kind: bound.1,
        threshold_map,
    }
}

pub(super) fn all() -> Vec<Reduction> {
    use BoundKind::*;
    let mut out = vec![
        make(
            spec(
                "sat2_to_umo_IS21",
                (Sat, "R_II2, degree 2"),
                (UMaxOnes, "R_IS1^2"),
                lv("6"),
                ("6n + 1", AtMost),
                "satisfiable iff optimum >= m",
            ),
            sat2_to_umo_is21,
            || SourceSpace::new(Sat, &[("R_II2", 8)], 6, 3).with_degree_bound(2),
        ),
        make(
            spec(
                "sat2_to_umo_IL2",
                (Sat, "R_II2, degree 2"),
                (UMaxOnes, "R_IL2"),
                lv("8"),
                ("2 + 2n + 3m (<= 2 + 8n)", Exact),
                "satisfiable iff optimum >= n + 1 + 2m",
            ),
            sat2_to_umo_il2,
            || SourceSpace::new(Sat, &[("R_II2", 8)], 6, 3).with_degree_bound(2),
        ),
        make(
            spec(
                "umo_IL2_to_IL0",
                (UMaxOnes, "R_IL2"),
                (UMaxOnes, "R_IL0"),
                lv("2"),
                ("2 + 2n", Exact),
                "k -> n + 1 + k",
            ),
            umo_il2_to_il0,
            || SourceSpace::new(UMaxOnes, &[("R_IL2", 8)], 6, 3),
        ),
        make(
            spec(
                "umo_II2_to_IN2",
                (UMaxOnes, "R_II2"),
                (UMaxOnes, "R_IN2"),
                lv("3"),
                ("2 + 3n", Exact),
                "k -> 1 + 2n + k",
            ),
            umo_ii2_to_in2,
            || SourceSpace::new(UMaxOnes, &[("R_II2", 8)], 6, 3),
        ),
        make(
            spec(
                "umo_IS21_to_ID2",
                (UMaxOnes, "R_IS1^2"),
                (UMaxOnes, "R_ID2"),
                lv("3"),
                ("2 + 3n", Exact),
                "k -> 1 + n + k",
            ),
            umo_is21_to_id2,
            || SourceSpace::new(UMaxOnes, &[("R_IS1^2", 3)], 6, 3),
        ),
        make(
            spec(
                "umo_IL2_to_IL3",
                (UMaxOnes, "R_IL2"),
                (UMaxOnes, "R_IL3"),
                lv("3"),
                ("2 + 3n", Exact),
                "k -> 1 + 2n + k",
            ),
            umo_il2_to_il3,
            || SourceSpace::new(UMaxOnes, &[("R_IL2", 8)], 6, 3),
        ),
    ];
    for g in extension_gadgets() {
        out.push(qpp_entry(g));
    }
    for target in ["IN2", "ID2", "IL2", "IL3", "IL0", "IS1^2"] {
        out.push(qwpp_entry(target));
    }
    out.extend([
        make(
            spec(
                "maxones_to_minones",
                (UMaxOnes, "Γ"),
                (MinOnes, "Γ ∪ {neq}"),
                lv("3"),
                ("3n", Exact),
                "k -> 2n - k",
            ),
            maxones_to_minones,
            || SourceSpace::new(UMaxOnes, &[("OR2", 2), ("NAND2", 2)], 6, 3),
        ),
        make(
            spec(
                "uvcspd_to_minones",
                (Vcsp, "Δ, unit weights, integer costs"),
                (MinOnes, "{eq, neq} ∪ {R_f}"),
                lv("1 + d(2s + t(2^s + 1))"),
                ("|V| + |C|(2s + t(2^s + 1))", AtMost),
                "K -> K + |vars in some term|",
            ),
            uvcspd_to_minones,
            uvcsp_space,
        ),
        make(
            spec(
                "sat2_to_uvcsp2",
                (Sat, "R_II2, degree 2"),
                (Vcsp, "f_R_II2, at most 2n terms"),
                KindTag::Cv,
                ("n", AtMost),
                "satisfiable iff optimum <= 0",
            ),
            sat2_to_uvcsp2,
            || SourceSpace::new(Sat, &[("R_II2", 8)], 6, 3).with_degree_bound(2),
        ),
        make(
            spec("maxcut_to_vcsp_neq", (MaxCut, "edge"), (Vcsp, "f_neq"), KindTag::Cv, ("n", Exact), "k -> W - k"),
            maxcut_to_vcsp_neq,
            || SourceSpace::new(MaxCut, &[("edge", 2)], 6, 6),
        ),
        make(
            spec("vcsp_neq_to_maxcut", (Vcsp, "f_neq"), (MaxCut, "edge"), KindTag::Cv, ("n", Exact), "k -> W - k"),
            vcsp_neq_to_maxcut,
            || SourceSpace::new(Vcsp, &[("f_neq", 2)], 6, 6),
        ),
        make(
            spec(
                "maxcsp_nandTF_to_neq",
                (MaxCsp, "NAND2, T, F"),
                (MaxCsp, "neq"),
                KindTag::Cv,
                ("n + 2", Exact),
                "k -> M + k",
            ),
            maxcsp_nand_tf_to_neq,
            || SourceSpace::new(MaxCsp, &[("NAND2", 2), ("T", 1), ("F", 1)], 6, 6),
        ),
        make(
            spec(
                "maxcutc_to_wmaxones",
                (MaxCut, "edge"),
                (WMaxOnes, "R_II2"),
                lv("10"),
                ("2 + 2n + 8m", Exact),
                "k -> k",
            ),
            |i, l| maxcut_to_wmaxones(i, l, Xor3Encoding::Defined),
            || SourceSpace::new(MaxCut, &[("edge", 2)], 4, 2),
        ),
        make(
            spec(
                "maxcutc_to_wmaxones[XOR3]",
                (MaxCut, "edge"),
                (WMaxOnes, "XOR3"),
                lv("1 + m/n"),
                ("n + m", Exact),
                "k -> k",
            ),
            |i, l| maxcut_to_wmaxones(i, l, Xor3Encoding::Primitive),
            || SourceSpace::new(MaxCut, &[("edge", 2)], 8, 8),
        ),
    ]);
    out
}

// ---------------------------------------------------------------------------
// SAT(R_II2)-2 to U-Max-Ones(R_IS^2_1).

fn sat2_to_umo_is21(inst: &Instance, lib: &Library) -> Result<Applied> {
    require_names(inst, &["R_II2"])?;
    require_degree(inst, 2)?;
    let r = lib.relation("R_II2")?;
    let n = inst.num_vars;
    let m = inst.constraints.len();
    // Vertex 1 + 3i + j assigns the j-th tuple to constraint i; c0 is 0.
    let mut verts: Vec<(usize, Vec<Option<bool>>)> = Vec::with_capacity(3 * m);
    for (i, c) in inst.constraints.iter().enumerate() {
        for &t in r.tuples() {
            let mut assign: Vec<Option<bool>> = vec![None; n];
            let mut ok = true;
            for (j, &v) in c.scope.iter().enumerate() {
                let b = (t >> j) & 1 == 1;
                match assign[v] {
                    Some(old) if old != b => ok = false,
                    _ => assign[v] = Some(b),
                }
            }
            verts.push((i, if ok { assign } else { Vec::new() }));
        }
    }
    let name = "R_IS1^2";
    let mut out = Instance::new(UMaxOnes, 1 + verts.len());
    let c0 = 0;
    for (u, (_, a)) in verts.iter().enumerate() {
        if a.is_empty() {
            out.add(name, vec![u + 1, u + 1, c0]);
        }
    }
    for u in 0..verts.len() {
        for v in u + 1..verts.len() {
            let (ci, a) = &verts[u];
            let (cj, b) = &verts[v];
            let conflict = !a.is_empty()
                && !b.is_empty()
                && a.iter().zip(b).any(|(x, y)| matches!((x, y), (Some(p), Some(q)) if p != q));
            if ci == cj || conflict {
                out.add(name, vec![u + 1, v + 1, c0]);
            }
        }
    }
    let contract = Contract::Decision(Threshold::at_least(int(m as i64)));
    let mut a = Applied::new(out, Library::new(), contract, 6 * n + 1, BoundKind::AtMost);
    a.notes.push(format!("{} vertices for {m} constraints", 3 * m));
    Ok(a)
}

// ---------------------------------------------------------------------------
// SAT(R_II2)-2 to U-Max-Ones(R_IL2).

fn sat2_to_umo_il2(inst: &Instance, _lib: &Library) -> Result<Applied> {
    require_names(inst, &["R_II2"])?;
    require_degree(inst, 2)?;
    let n = inst.num_vars;
    let m = inst.constraints.len();
    if 2 + 2 * n + 3 * m > 2 + 8 * n {
        return Err(Error::VariableBound { actual: 2 + 2 * n + 3 * m, declared: format!("<= {}", 2 + 8 * n) });
    }
    let mut out = Instance::new(UMaxOnes, 2 + 2 * n + 3 * m);
    let (v0, v1) = (n, n + 1);
    let r = "R_IL2";
    out.add(r, vec![v0, v0, v0, v1, v1, v1, v0, v1]);
    for x in 0..n {
        let xp = n + 2 + x;
        out.add(r, vec![xp, x, v1, x, xp, v0, v0, v1]);
    }
    for (i, c) in inst.constraints.iter().enumerate() {
        let s = &c.scope;
        let z = 2 + 2 * n + 3 * i;
        out.add(r, vec![z, z + 1, z + 2, s[0], s[1], s[2], s[6], s[7]]);
        out.add(r, vec![s[3], s[4], s[5], s[0], s[1], s[2], s[6], s[7]]);
    }
    let contract = Contract::Decision(Threshold::at_least(int((n + 1 + 2 * m) as i64)));
    Ok(Applied::new(out, Library::new(), contract, 2 + 2 * n + 3 * m, BoundKind::Exact))
}

// ---------------------------------------------------------------------------
// U-Max-Ones chain reductions.

fn umo_il2_to_il0(inst: &Instance, _lib: &Library) -> Result<Applied> {
    require_names(inst, &["R_IL2"])?;
    let n = inst.num_vars;
    let mut out = Instance::new(UMaxOnes, 2 + 2 * n);
    let (v0, v1) = (n, n + 1);
    let r = "R_IL0";
    out.add(r, vec![v0, v0, v0, v0]);
    for i in 0..n {
        out.add(r, vec![v1, v0, n + 2 + i, v0]);
    }
    for c in &inst.constraints {
        let s = &c.scope;
        out.add(r, vec![s[0], s[1], s[2], v0]);
        out.add(r, vec![v1, s[0], s[3], v0]);
        out.add(r, vec![v1, s[1], s[4], v0]);
        out.add(r, vec![v1, s[2], s[5], v0]);
        out.add(r, vec![v1, s[6], s[7], v0]);
        out.add(r, vec![s[6], s[6], s[6], v0]);
    }
    let contract = Contract::value(Rational::one(), int(n as i64 + 1), WhenInfeasible::BelowOffset);
    Ok(Applied::new(out, Library::new(), contract, 2 + 2 * n, BoundKind::Exact))
}

fn umo_ii2_to_in2(inst: &Instance, _lib: &Library) -> Result<Applied> {
    require_names(inst, &["R_II2"])?;
    let n = inst.num_vars;
    let mut out = Instance::new(UMaxOnes, 2 + 3 * n);
    let (v0, v1) = (n, n + 1);
    let r = "R_IN2";
    out.add(r, vec![v0, v0, v0, v0, v1, v1, v1, v1]);
    for i in 0..2 * n {
        let y = n + 2 + i;
        out.add(r, vec![v0, v0, v0, v0, y, y, y, y]);
    }
    for c in &inst.constraints {
        let s = &c.scope;
        out.add(r, vec![v0, s[0], s[1], s[5], v1, s[3], s[4], s[2]]);
        out.add(r, vec![v0, s[6], s[6], v0, v1, s[7], s[7], v1]);
    }
    let contract = Contract::value(Rational::one(), int(1 + 2 * n as i64), WhenInfeasible::BelowOffset);
    Ok(Applied::new(out, Library::new(), contract, 2 + 3 * n, BoundKind::Exact))
}

fn umo_is21_to_id2(inst: &Instance, _lib: &Library) -> Result<Applied> {
    require_names(inst, &["R_IS1^2"])?;
    let n = inst.num_vars;
    let mut out = Instance::new(UMaxOnes, 2 + 3 * n);
    let (v0, v1) = (n, n + 1);
    let prime = |x: usize| n + 2 + 2 * x;
    let r = "R_ID2";
    out.add(r, vec![v1, v1, v0, v0, v0, v1]);
    for x in 0..n {
        let (p, pp) = (prime(x), prime(x) + 1);
        out.add(r, vec![x, p, p, x, v0, v1]);
        out.add(r, vec![p, pp, pp, p, v0, v1]);
    }
    for c in &inst.constraints {
        let (x, y, c0) = (c.scope[0], c.scope[1], c.scope[2]);
        out.add(r, vec![prime(x), prime(y), x, y, c0, v1]);
    }
    let contract = Contract::value(Rational::one(), int(1 + n as i64), WhenInfeasible::TargetInfeasible);
    Ok(Applied::new(out, Library::new(), contract, 2 + 3 * n, BoundKind::Exact))
}

fn umo_il2_to_il3(inst: &Instance, _lib: &Library) -> Result<Applied> {
    require_names(inst, &["R_IL2"])?;
    let n = inst.num_vars;
    let mut out = Instance::new(UMaxOnes, 2 + 3 * n);
    let (v0, v1) = (n, n + 1);
    let r = "R_IL3";
    out.add(r, vec![v0, v0, v0, v0, v1, v1, v1, v1]);
    for i in 0..2 * n {
        let y = n + 2 + i;
        out.add(r, vec![v0, v0, v0, v0, y, y, y, y]);
    }
    for c in &inst.constraints {
        let s = &c.scope;
        out.add(r, vec![s[6], s[0], s[1], s[2], s[7], s[3], s[4], s[5]]);
        out.add(r, vec![s[6], s[6], s[6], s[6], v1, v1, v1, v1]);
        out.add(r, vec![v0, v0, v0, v0, s[7], s[7], s[7], s[7]]);
    }
    let contract = Contract::value(Rational::one(), int(1 + 2 * n as i64), WhenInfeasible::BelowOffset);
    Ok(Applied::new(out, Library::new(), contract, 2 + 3 * n, BoundKind::Exact))
}

// ---------------------------------------------------------------------------
// Constant-extension gadgets.

fn qpp_entry(g: ExtensionGadget) -> Reduction {
    let src = relation_name(g.source);
    let tgt = relation_name(g.target);
    let name = format!("umo_qpp_family[{}]", g.target);
    let arity = g.source_relation().arity();
    let space_src = src.clone();
    let s = spec(&name, (UMaxOnes, &src), (UMaxOnes, &tgt), KindTag::Cv, ("n + 2", BoundKind::Exact), "k -> k + 1");
    make(
        s,
        move |inst, _lib| {
            require_names(inst, &[src.as_str()])?;
            let n = inst.num_vars;
            let (y0, y1) = (n, n + 1);
            let mut out = Instance::new(UMaxOnes, n + 2);
            for c in &inst.constraints {
                for a in g.instantiate(&c.scope, y0, y1) {
                    out.add(a.relation, a.args);
                }
            }
            let infeasible = if g.target.family() == Family::I0 {
                // Pins y0 when there are no constraints.
                out.add(tgt.clone(), vec![y0; 4]);
                WhenInfeasible::Avoids { var: y1, value: true }
            } else {
                for a in g.instantiate(&vec![y0; arity], y0, y1) {
                    out.add(a.relation, a.args);
                }
                WhenInfeasible::TargetInfeasible
            };
            let contract = Contract::value(Rational::one(), Rational::one(), infeasible);
            Ok(Applied::new(out, Library::new(), contract, n + 2, BoundKind::Exact))
        },
        move || SourceSpace::new(UMaxOnes, &[(space_src.as_str(), arity)], 6, 3),
    )
}

// ---------------------------------------------------------------------------
// Argmax identities composed by big-M weights.

fn identity_chain(target: &str) -> Vec<ArgmaxIdentity> {
    let ids = argmax_identities();
    let find = |s: &str| ids.iter().find(|i| i.source == co_clone(s)).expect("registered identity").clone();
    match target {
        "IL3" | "IL0" => vec![find("IL2"), find(target)],
        _ => vec![find(target)],
    }
}

fn qwpp_entry(target: &'static str) -> Reduction {
    let chain = identity_chain(target);
    let tgt = relation_name(co_clone(target));
    let name = format!("wmo_qwpp_family[{}]", co_clone(target));
    let s = spec(&name, (WMaxOnes, "R_II2"), (WMaxOnes, &tgt), KindTag::Cv, ("n", BoundKind::Exact), "k -> k + B");
    make(
        s,
        move |inst, _lib| {
            require_names(inst, &["R_II2"])?;
            let n = inst.num_vars;
            let mut weights: Vec<Rational> = (0..n).map(|i| inst.var_weight(i)).collect();
            let mut atoms: Vec<Vec<usize>> = inst.constraints.iter().map(|c| c.scope.clone()).collect();
            let mut offset = Rational::zero();
            for id in &chain {
                let big_m = Rational::one() + weights.iter().sum::<Rational>();
                let mut next = Vec::new();
                for args in &atoms {
                    for a in &id.atoms {
                        next.push(a.iter().map(|&p| args[p]).collect());
                    }
                    for (p, &w) in id.weights.iter().enumerate() {
                        weights[args[p]] += &big_m * int(w);
                    }
                }
                offset += &big_m * int(atoms.len() as i64 * id.optimum());
                atoms = next;
            }
            let mut out = Instance::new(WMaxOnes, n);
            for a in atoms {
                out.add(tgt.clone(), a);
            }
            out.var_weights = Some(weights);
            let contract = Contract::value(Rational::one(), offset, WhenInfeasible::BelowOffset);
            Ok(Applied::new(out, Library::new(), contract, n, BoundKind::Exact))
        },
        || SourceSpace::new(WMaxOnes, &[("R_II2", 8)], 8, 3),
    )
}

// ---------------------------------------------------------------------------
// Max-Ones to Min-Ones.

fn maxones_to_minones(inst: &Instance, lib: &Library) -> Result<Applied> {
    let n = inst.num_vars;
    let mut out = Instance::new(MinOnes, 3 * n);
    out.constraints = inst.constraints.clone();
    for v in 0..n {
        out.add("neq", vec![v, n + 2 * v]);
        out.add("neq", vec![v, n + 2 * v + 1]);
    }
    let contract = Contract::value(-Rational::one(), int(2 * n as i64), WhenInfeasible::TargetInfeasible);
    Ok(Applied::new(out, lib.clone(), contract, 3 * n, BoundKind::Exact))
}

// ---------------------------------------------------------------------------
// U-VCSP_d to Min-Ones.

/// `|V| + |C|(2s + t(2^s + 1))`.
pub fn uvcsp_cost_bound(n: usize, m: usize, s: usize, t: usize) -> usize {
    n + m * (2 * s + t * ((1 << s) + 1))
}

/// `R_f`: `(x, y)` with `y` the unit vector at `val(x)` when `f(x) > 0`,
/// and `y = 0` otherwise.
fn r_f(f: &CostFunction) -> Result<Relation> {
    let k = f.arity();
    Relation::new(
        k + (1 << k),
        (0..1u32 << k).map(|x| if f.eval(x).is_zero() { x } else { x | 1 << (k + x as usize) }),
    )
}

fn integer_cost(f: &CostFunction) -> Result<Vec<usize>> {
    f.table()
        .iter()
        .map(|v| {
            if v.is_integer() {
                num_traits::ToPrimitive::to_usize(&v.to_integer())
                    .ok_or_else(|| Error::Invalid(format!("cost {} out of range", rational::format(v))))
            } else {
                Err(Error::Invalid(format!("cost `{}` is not integer valued", f.label())))
            }
        })
        .collect()
}

fn uvcspd_to_minones(inst: &Instance, lib: &Library) -> Result<Applied> {
    require_unit(inst)?;
    let n = inst.num_vars;
    let mut target_lib = Library::new();
    let mut s_max = 0;
    let mut t_max = 0;
    let mut costs = Vec::new();
    for name in inst.names() {
        let f = lib.cost(&name)?;
        if f.arity() > 4 {
            return Err(Error::Arity { arity: f.arity(), max: 4 });
        }
        let ints = integer_cost(&f)?;
        s_max = s_max.max(f.arity());
        t_max = t_max.max(ints.iter().copied().max().unwrap_or(0));
        target_lib.add_relation(format!("R_{name}"), r_f(&f)?)?;
        costs.push((name, ints));
    }
    // Identically zero terms contribute nothing and are dropped.
    let live: Vec<_> = inst
        .constraints
        .iter()
        .filter(|c| costs.iter().any(|(n, ints)| *n == c.name && ints.iter().any(|&v| v > 0)))
        .collect();
    let mut used = vec![false; n];
    for c in &live {
        c.scope.iter().for_each(|&v| used[v] = true);
    }
    let mut out = Instance::new(MinOnes, n);
    let mut offset = 0;
    for v in (0..n).filter(|&v| used[v]) {
        let w = out.fresh();
        out.add("neq", vec![v, w]);
        offset += 1;
    }
    for c in &live {
        let ints = &costs.iter().find(|(n, _)| *n == c.name).expect("collected").1;
        let k = c.scope.len();
        let ys: Vec<usize> = (0..1usize << k).map(|_| out.fresh()).collect();
        let mut args = c.scope.clone();
        args.extend(&ys);
        out.add(format!("R_{}", c.name), args);
        for (x, &cost) in ints.iter().enumerate() {
            let mut prev = ys[x];
            for _ in 1..cost {
                let u = out.fresh();
                out.add("eq", vec![prev, u]);
                prev = u;
            }
        }
    }
    let declared = uvcsp_cost_bound(n, inst.constraints.len(), s_max, t_max);
    let contract = Contract::value(Rational::one(), int(offset), WhenInfeasible::TargetInfeasible);
    Ok(Applied::new(out, target_lib, contract, declared, BoundKind::AtMost))
}

fn random_cost(rng: &mut ChaCha8Rng, name: &str) -> CostFunction {
    let k = rng.gen_range(1..=2);
    let vals: Vec<i64> = (0..1 << k).map(|_| rng.gen_range(0..=2)).collect();
    CostFunction::from_ints(k, &vals).expect("small").named(name)
}

fn uvcsp_space() -> SourceSpace {
    let mut lib = Library::new();
    lib.add_cost("g", CostFunction::from_ints(2, &[0, 2, 1, 0]).expect("binary")).expect("fresh");
    lib.add_cost("h", CostFunction::from_ints(1, &[1, 0]).expect("unary")).expect("fresh");
    let mut space = SourceSpace::new(Vcsp, &[("g", 2), ("h", 1)], 3, 3).with_library(lib);
    space.constraint_weights = false;
    space.with_generator(Arc::new(|rng: &mut ChaCha8Rng| {
        let mut lib = Library::new();
        let fs: Vec<CostFunction> = ["g", "h"].iter().map(|n| random_cost(rng, n)).collect();
        for f in &fs {
            lib.add_cost(f.label(), f.clone()).expect("fresh");
        }
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(0..=3);
        let mut inst = Instance::new(Vcsp, n);
        for _ in 0..m {
            let f = fs.choose(rng).expect("nonempty");
            inst.add(f.label(), (0..f.arity()).map(|_| rng.gen_range(0..n)).collect());
        }
        (inst, lib)
    }))
}

// ---------------------------------------------------------------------------
// SAT(R_II2)-2 to U-VCSP_2.

fn sat2_to_uvcsp2(inst: &Instance, _lib: &Library) -> Result<Applied> {
    require_names(inst, &["R_II2"])?;
    require_degree(inst, 2)?;
    let n = inst.num_vars;
    if inst.constraints.len() > 2 * n {
        return Err(Error::Invalid(format!("{} terms exceed 2n = {}", inst.constraints.len(), 2 * n)));
    }
    let mut out = Instance::new(Vcsp, n);
    for c in &inst.constraints {
        out.add("f_R_II2", c.scope.clone());
    }
    let contract = Contract::Decision(Threshold::at_most(Rational::zero()));
    Ok(Applied::new(out, Library::new(), contract, n, BoundKind::AtMost))
}

// ---------------------------------------------------------------------------
// Max-Cut, VCSP(f_neq), Max-CSP(neq).

fn maxcut_to_vcsp_neq(inst: &Instance, _lib: &Library) -> Result<Applied> {
    let mut out = Instance::new(Vcsp, inst.num_vars);
    for c in &inst.constraints {
        out.constraints.push(crate::instance::Constraint { name: "f_neq".into(), ..c.clone() });
    }
    let contract = Contract::value(-Rational::one(), total_weight(inst), WhenInfeasible::TargetInfeasible);
    Ok(Applied::new(out, Library::new(), contract, inst.num_vars, BoundKind::Exact))
}

fn vcsp_neq_to_maxcut(inst: &Instance, _lib: &Library) -> Result<Applied> {
    require_names(inst, &["f_neq"])?;
    let mut out = Instance::new(MaxCut, inst.num_vars);
    for c in &inst.constraints {
        out.constraints.push(crate::instance::Constraint { name: "edge".into(), ..c.clone() });
    }
    let contract = Contract::value(-Rational::one(), total_weight(inst), WhenInfeasible::TargetInfeasible);
    Ok(Applied::new(out, Library::new(), contract, inst.num_vars, BoundKind::Exact))
}

fn maxcsp_nand_tf_to_neq(inst: &Instance, _lib: &Library) -> Result<Applied> {
    require_names(inst, &["NAND2", "T", "F"])?;
    let n = inst.num_vars;
    let (v0, v1) = (n, n + 1);
    let mut out = Instance::new(MaxCsp, n + 2);
    let half = rational::ratio(1, 2);
    for c in &inst.constraints {
        let w = c.weight_or_one();
        match c.name.as_str() {
            "T" => out.add_weighted("neq", vec![c.scope[0], v0], w),
            "F" => out.add_weighted("neq", vec![c.scope[0], v1], w),
            _ => {
                let (x, y) = (c.scope[0], c.scope[1]);
                let hw = &w * &half;
                out.add_weighted("neq", vec![x, y], hw.clone());
                out.add_weighted("neq", vec![x, v1], hw.clone());
                out.add_weighted("neq", vec![y, v1], hw);
            }
        }
    }
    let big_m = Rational::one() + total_weight(&out);
    out.add_weighted("neq", vec![v0, v1], big_m.clone());
    let contract = Contract::value(Rational::one(), big_m, WhenInfeasible::TargetInfeasible);
    let mut a = Applied::new(out, Library::new(), contract, n + 2, BoundKind::Exact);
    a.optima_differ = Some((v0, v1));
    Ok(a)
}

// ---------------------------------------------------------------------------
// Max-Cut to W-Max-Ones via XOR3.

/// How `XOR3` appears in the output of the Max-Cut reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Xor3Encoding {
    /// Three `R_II2` atoms per edge.
    Defined,
    /// One `XOR3` atom per edge.
    Primitive,
}

fn maxcut_to_wmaxones(inst: &Instance, _lib: &Library, enc: Xor3Encoding) -> Result<Applied> {
    let n = inst.num_vars;
    let m = inst.constraints.len();
    let mut out = Instance::new(WMaxOnes, n);
    out.var_weights = Some(vec![Rational::zero(); n]);
    let declared = match enc {
        Xor3Encoding::Primitive => {
            for c in &inst.constraints {
                let e = out.fresh();
                out.set_var_weight(e, c.weight_or_one());
                out.add("XOR3", vec![c.scope[0], c.scope[1], e]);
            }
            n + m
        }
        Xor3Encoding::Defined => {
            let def = xor3_definition();
            let z0 = out.fresh();
            let z1 = out.fresh();
            let neg: Vec<usize> = (0..n).map(|_| out.fresh()).collect();
            for c in &inst.constraints {
                let (v, w) = (c.scope[0], c.scope[1]);
                let e = out.fresh();
                out.set_var_weight(e, c.weight_or_one());
                let local: Vec<usize> = (0..7).map(|_| out.fresh()).collect();
                // Formula variables: x1, x2, x3, a, b, c, ¬a, ¬b, ¬c, ¬x1, ¬x2, ¬x3, c0, c1.
                let map = [v, w, e, local[0], local[1], local[2], local[3], local[4], local[5], neg[v], neg[w], local[6], z0, z1];
                for a in &def.atoms {
                    out.add(a.relation.clone(), a.args.iter().map(|&i| map[i]).collect());
                }
            }
            2 + 2 * n + 8 * m
        }
    };
    let contract = Contract::value(Rational::one(), Rational::zero(), WhenInfeasible::TargetInfeasible);
    let mut a = Applied::new(out, Library::new(), contract, declared, BoundKind::Exact);
    if enc == Xor3Encoding::Primitive {
        a.notes.push("XOR3 kept as a primitive of the target language".into());
    }
    Ok(a)
}
