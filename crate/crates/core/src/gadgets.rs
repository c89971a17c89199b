//! Fixed gadgets: constant extensions `R'` of `R_IS^2_1` and `R_II2`, and
//! argmax identities defining `R_II2` and `R_IL2` by weighted Max-Ones
//! instances. Each comes in a printed form and a corrected form.

use crate::error::Result;
use crate::formula::{check_constant_extension, eval_formula, eval_wpp, Atom, ConstantExtension, Formula, WppGadget};
use crate::instance::{Instance, Library, ProblemKind};
use crate::lattice::{CoCloneId, Family};
use crate::rational::int;
use crate::relation::{ConstraintLanguage, Relation};
use crate::weak_base::weak_base;

pub fn co_clone(name: &str) -> CoCloneId {
    name.parse().expect("built-in co-clone name")
}

/// Library name of the weak base of `c`, e.g. `R_IS1^2`.
pub fn relation_name(c: CoCloneId) -> String {
    format!("R_{c}")
}

/// The `IS^n_11` and `IS^n_10` rows as printed in the weak base table:
/// `NAND^n ∧ (x → x1⋯xn) ∧ F(c0)`, with `T(c1)` appended for `IS^n_10`.
pub fn printed_s1_row(n: usize, with_c1: bool) -> Relation {
    let arity = n + if with_c1 { 3 } else { 2 };
    Relation::from_bits(arity, |x| {
        let all = x[..n].iter().all(|&b| b);
        !all && (!x[n] || all) && !x[n + 1] && (!with_c1 || x[n + 2])
    })
    .expect("small arity")
}

/// `R'` given as a quantifier-free formula over `R_target`. The free
/// variables are the arguments of `R_source` followed by `y0, y1`.
#[derive(Clone, Debug)]
pub struct ExtensionGadget {
    pub source: CoCloneId,
    pub target: CoCloneId,
    pub formula: Formula,
    /// Atoms refer to the printed table row instead of the weak base.
    pub printed_row: bool,
}

impl ExtensionGadget {
    pub fn name(&self) -> String {
        format!("{}->{}", self.source, self.target)
    }

    pub fn source_relation(&self) -> Relation {
        weak_base(self.source).expect("finite weak base")
    }

    pub fn target_relation(&self) -> Relation {
        if self.printed_row {
            let with_c1 = self.target.family() == Family::S10;
            printed_s1_row(2, with_c1)
        } else {
            weak_base(self.target).expect("finite weak base")
        }
    }

    pub fn language(&self) -> ConstraintLanguage {
        let mut lang = ConstraintLanguage::new();
        lang.insert(relation_name(self.target), self.target_relation()).expect("fresh language");
        lang
    }

    pub fn eval(&self) -> Result<Relation> {
        eval_formula(&self.formula, &self.language())
    }

    pub fn check(&self) -> Result<ConstantExtension> {
        check_constant_extension(&self.source_relation(), &self.eval()?)
    }

    /// Whether the gadget is usable in the U-Max-Ones reduction: both
    /// implications, or only the one conditioned on `y1 = 1` for `II0`.
    pub fn is_sound(&self) -> bool {
        match self.check() {
            Ok(c) if self.target.family() == Family::I0 => c.forward && c.backward_given_y1,
            Ok(c) => c.holds(),
            Err(_) => false,
        }
    }

    /// The atoms for one source constraint over `args`, with globals `y0, y1`.
    pub fn instantiate(&self, args: &[usize], y0: usize, y1: usize) -> Vec<Atom> {
        let k = args.len();
        let map = |v: usize| match v {
            v if v < k => args[v],
            v if v == k => y0,
            _ => y1,
        };
        self.formula
            .atoms
            .iter()
            .map(|a| Atom::new(a.relation.clone(), a.args.iter().map(|&v| map(v)).collect()))
            .collect()
    }
}

fn s21_gadget(target: &str, atoms: &[&[usize]], printed_row: bool) -> ExtensionGadget {
    let target = co_clone(target);
    let name = relation_name(target);
    let atoms = atoms.iter().map(|a| Atom::new(name.clone(), a.to_vec())).collect();
    ExtensionGadget { source: co_clone("IS1^2"), target, formula: Formula::quantifier_free(5, atoms), printed_row }
}

// Variables of the IS^2_1 gadgets.
const X1: usize = 0;
const X2: usize = 1;
const C0: usize = 2;
const Y0: usize = 3;
const Y1: usize = 4;

fn ii0_gadget(first: [usize; 4]) -> ExtensionGadget {
    // x1..x6 = 0..5, c0 = 6, c1 = 7, y0 = 8, y1 = 9.
    let (c0, c1, y0, y1) = (6, 7, 8, 9);
    let target = co_clone("II0");
    let name = relation_name(target);
    let args: [[usize; 4]; 5] = [first, [c0, c1, y1, y0], [0, 3, y1, y0], [1, 4, y1, y0], [2, 5, y1, y0]];
    let atoms = args.iter().map(|a| Atom::new(name.clone(), a.to_vec())).collect();
    ExtensionGadget { source: co_clone("II2"), target, formula: Formula::quantifier_free(10, atoms), printed_row: false }
}

/// The extensions as printed, including the `IS^2_11` and `IS^2_10` bullets
/// that only hold against the printed table rows.
pub fn printed_extension_gadgets() -> Vec<ExtensionGadget> {
    vec![
        s21_gadget("IS12^2", &[&[X1, X2, C0, Y1], &[X1, X2, Y0, Y1]], false),
        s21_gadget("IS11^2", &[&[X1, X2, C0, C0], &[X1, X2, Y0, Y0]], true),
        s21_gadget("IS10^2", &[&[X1, X2, C0, C0, Y1], &[X1, X2, C0, Y0, Y1]], true),
        s21_gadget("IE2", &[&[C0, X1, X2, C0, Y1], &[C0, X1, X2, Y0, Y1]], false),
        s21_gadget("IE0", &[&[C0, X1, X2, Y1, C0], &[Y0, X1, X2, Y1, Y0]], false),
        ii0_gadget([0, 1, 2, 6]),
    ]
}

/// The extensions used by the reductions, all sound against the weak bases.
pub fn extension_gadgets() -> Vec<ExtensionGadget> {
    vec![
        s21_gadget("IS12^2", &[&[X1, X2, C0, Y1], &[X1, X2, Y0, Y1]], false),
        s21_gadget("IS11^2", &[&[X1, X2, Y1, C0], &[X1, X2, Y1, Y0]], false),
        s21_gadget("IS10^2", &[&[X1, X2, Y1, C0, Y1], &[X1, X2, Y1, Y0, Y1]], false),
        s21_gadget("IE2", &[&[C0, X1, X2, C0, Y1], &[C0, X1, X2, Y0, Y1]], false),
        s21_gadget("IE0", &[&[C0, X1, X2, Y1, C0], &[Y0, X1, X2, Y1, Y0]], false),
        ii0_gadget([0, 1, 5, 6]),
    ]
}

/// `R_target` as the optimal solutions of Max-Ones over `R_source` atoms
/// on eight variables.
#[derive(Clone, Debug)]
pub struct ArgmaxIdentity {
    pub source: CoCloneId,
    pub target: CoCloneId,
    /// Zero-based argument tuples.
    pub atoms: Vec<Vec<usize>>,
    pub weights: Vec<i64>,
}

impl ArgmaxIdentity {
    pub fn name(&self) -> String {
        format!("{}->{}", self.source, self.target)
    }

    pub fn gadget(&self) -> WppGadget {
        let mut inst = Instance::new(ProblemKind::WMaxOnes, 8);
        let name = relation_name(self.source);
        for a in &self.atoms {
            inst.add(name.clone(), a.clone());
        }
        for (i, &w) in self.weights.iter().enumerate() {
            inst.set_var_weight(i, int(w));
        }
        WppGadget::new(inst, (0..8).collect()).expect("valid gadget")
    }

    pub fn eval(&self) -> Result<Relation> {
        eval_wpp(&self.gadget(), &Library::new())
    }

    pub fn holds(&self) -> bool {
        self.eval().is_ok_and(|r| r == weak_base(self.target).expect("finite weak base"))
    }

    /// Objective value attained by every optimal solution.
    pub fn optimum(&self) -> i64 {
        let r = weak_base(self.target).expect("finite weak base");
        let t = r.tuples()[0];
        (0..8).filter(|&i| t >> i & 1 == 1).map(|i| self.weights[i]).sum()
    }
}

fn identity(source: &str, target: &str, atoms: &[[usize; 8]], weights: [i64; 8]) -> ArgmaxIdentity {
    ArgmaxIdentity {
        source: co_clone(source),
        target: co_clone(target),
        atoms: atoms.iter().map(|a| a.iter().map(|&v| v - 1).collect()).collect(),
        weights: weights.to_vec(),
    }
}

fn identity4(source: &str, target: &str, atoms: &[&[usize]], weights: [i64; 8]) -> ArgmaxIdentity {
    ArgmaxIdentity {
        source: co_clone(source),
        target: co_clone(target),
        atoms: atoms.iter().map(|a| a.iter().map(|&v| v - 1).collect()).collect(),
        weights: weights.to_vec(),
    }
}

const X8: [i64; 8] = [0, 0, 0, 0, 0, 0, 0, 1];

fn identities(printed: bool) -> Vec<ArgmaxIdentity> {
    let id2_third: [usize; 6] = if printed { [6, 5, 3, 4, 7, 8] } else { [6, 5, 3, 2, 7, 8] };
    let il0_first: [usize; 4] = if printed { [4, 5, 6, 7] } else { [1, 2, 3, 7] };
    let s21_weights = if printed { [1; 8] } else { [2, 2, 2, 1, 1, 1, 1, 1] };
    vec![
        identity("IN2", "II2", &[[7, 1, 2, 6, 8, 4, 5, 3]], X8),
        identity4("ID2", "II2", &[&[5, 4, 2, 1, 7, 8], &[6, 4, 3, 1, 7, 8], &id2_third], [1, 1, 1, 0, 0, 0, 0, 0]),
        identity("IL2", "II2", &[[4, 5, 6, 1, 2, 3, 7, 8]], [0, 0, 0, 1, 1, 1, 0, 0]),
        identity("IL3", "IL2", &[[7, 1, 2, 3, 8, 4, 5, 6]], X8),
        identity4("IL0", "IL2", &[&il0_first, &[8, 1, 4, 7], &[8, 2, 5, 7], &[8, 3, 6, 7]], X8),
        identity4(
            "IS1^2",
            "II2",
            &[&[1, 2, 7], &[1, 3, 7], &[2, 3, 7], &[1, 4, 7], &[2, 5, 7], &[3, 6, 7]],
            s21_weights,
        ),
    ]
}

pub fn printed_argmax_identities() -> Vec<ArgmaxIdentity> {
    identities(true)
}

/// The identities used by the weighted reductions, all verified.
pub fn argmax_identities() -> Vec<ArgmaxIdentity> {
    identities(false)
}

/// `XOR3(x1,x2,x3)` as `∃a,b,c . [¬x1,a,b] ∧ [¬x2,a,c] ∧ [¬x3,b,c]` where
/// `[·]` is one-in-three, each written as one `R_II2` atom. Quantified
/// variables in order: `a, b, c, ¬a, ¬b, ¬c, ¬x1, ¬x2, ¬x3, c0, c1`.
pub fn xor3_definition() -> Formula {
    let (a, b, c, na, nb, nc, n1, n2, n3, c0, c1) = (3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13);
    let atoms = [[n1, a, b, 0, na, nb, c0, c1], [n2, a, c, 1, na, nc, c0, c1], [n3, b, c, 2, nb, nc, c0, c1]];
    Formula::new(3, 11, atoms.iter().map(|x| Atom::new("R_II2", x.to_vec())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xor3_from_ii2() {
        let lib = Library::new();
        let lang = ConstraintLanguage::single(lib.relation("R_II2").unwrap());
        let r = eval_formula(&xor3_definition(), &lang).unwrap();
        assert_eq!(r, lib.relation("XOR3").unwrap());
    }

    #[test]
    fn corrected_extensions_are_sound() {
        for g in extension_gadgets() {
            assert!(g.is_sound(), "{}: {:?}", g.name(), g.check());
        }
    }

    #[test]
    fn printed_extensions() {
        let sound: Vec<bool> = printed_extension_gadgets().iter().map(|g| g.is_sound()).collect();
        assert_eq!(sound, vec![true, true, true, true, true, false]);
        // The printed IS11/IS10 bullets fail against the weak bases.
        for mut g in printed_extension_gadgets().into_iter().skip(1).take(2) {
            g.printed_row = false;
            assert!(!g.is_sound(), "{}", g.name());
        }
    }

    #[test]
    fn ii0_extension_needs_y1() {
        let g = &extension_gadgets()[5];
        let c = g.check().unwrap();
        assert!(c.forward && c.backward_given_y1 && !c.backward);
    }

    #[test]
    fn corrected_identities_hold() {
        for id in argmax_identities() {
            assert!(id.holds(), "{}", id.name());
        }
    }

    #[test]
    fn printed_identities() {
        let held: Vec<bool> = printed_argmax_identities().iter().map(|i| i.holds()).collect();
        assert_eq!(held, vec![true, false, true, true, false, false]);
    }

    #[test]
    fn identity_optima() {
        let opt: Vec<i64> = argmax_identities().iter().map(|i| i.optimum()).collect();
        assert_eq!(opt, vec![1, 1, 2, 1, 1, 5]);
    }
}
