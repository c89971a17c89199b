//! Primitive positive formulas, w.p.p. gadgets and a bounded definition
//! search.

use std::fmt;

use crate::error::{Error, Result};
use crate::instance::{Instance, Library, ProblemKind};
use crate::oracle::{solve, Outcome};
use crate::relation::{gather, make_relation, ConstraintLanguage, DenseSet, Relation, RelationSpec, MAX_RELATION_ARITY};

/// A relation applied to variable indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub relation: String,
    pub args: Vec<usize>,
}

impl Atom {
    pub fn new(relation: impl Into<String>, args: Vec<usize>) -> Self {
        Atom { relation: relation.into(), args }
    }
}

/// `∃ y1..ym . A1 ∧ … ∧ Ak` over `x1..xn`. Variables `0..n` are free and
/// `n..n+m` are quantified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    pub atoms: Vec<Atom>,
    pub total_vars: usize,
    pub aux_vars: usize,
}

impl Formula {
    pub fn new(total_vars: usize, aux_vars: usize, atoms: Vec<Atom>) -> Self {
        Formula { atoms, total_vars, aux_vars }
    }

    pub fn quantifier_free(total_vars: usize, atoms: Vec<Atom>) -> Self {
        Self::new(total_vars, 0, atoms)
    }

    fn var_name(&self, i: usize) -> String {
        if i < self.total_vars {
            format!("x{}", i + 1)
        } else {
            format!("y{}", i - self.total_vars + 1)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.aux_vars > 0 {
            let ys: Vec<String> = (0..self.aux_vars).map(|j| self.var_name(self.total_vars + j)).collect();
            write!(f, "∃{} . ", ys.join(","))?;
        }
        if self.atoms.is_empty() {
            return write!(f, "true");
        }
        let parts: Vec<String> = self
            .atoms
            .iter()
            .map(|a| {
                let args: Vec<String> = a.args.iter().map(|&i| self.var_name(i)).collect();
                format!("{}({})", a.relation, args.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" ∧ "))
    }
}

fn resolve(lang: &ConstraintLanguage, name: &str) -> Result<Relation> {
    if let Some(r) = lang.get(name) {
        return Ok(r.clone());
    }
    if name == "eq" {
        return make_relation(&RelationSpec::Eq);
    }
    Err(Error::UnknownName(name.to_string()))
}

/// Conjunction over all variables, projected onto the free ones.
pub fn eval_formula(f: &Formula, lang: &ConstraintLanguage) -> Result<Relation> {
    let n = f.total_vars + f.aux_vars;
    if n == 0 || n > MAX_RELATION_ARITY {
        return Err(Error::Arity { arity: n, max: MAX_RELATION_ARITY });
    }
    let mut sets = Vec::with_capacity(f.atoms.len());
    let mut close: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, a) in f.atoms.iter().enumerate() {
        let r = resolve(lang, &a.relation)?;
        if r.arity() != a.args.len() {
            return Err(Error::Invalid(format!("{} has arity {} but {} arguments", a.relation, r.arity(), a.args.len())));
        }
        let last = *a.args.iter().max().ok_or_else(|| Error::Invalid("atom without arguments".into()))?;
        if last >= n {
            return Err(Error::Index { index: last, len: n });
        }
        close[last].push(k);
        sets.push(r.dense());
    }
    let mut out = Vec::new();
    let free = crate::relation::full_mask(f.total_vars);
    fn go(
        i: usize,
        mask: u32,
        n: usize,
        atoms: &[Atom],
        sets: &[DenseSet],
        close: &[Vec<usize>],
        free: u32,
        out: &mut Vec<u32>,
    ) {
        if i == n {
            out.push(mask & free);
            return;
        }
        for b in [0u32, 1] {
            let m = mask | (b << i);
            if close[i].iter().all(|&k| sets[k].contains(gather(m, &atoms[k].args))) {
                go(i + 1, m, n, atoms, sets, close, free, out);
            }
        }
    }
    go(0, 0, n, &f.atoms, &sets, &close, free, &mut out);
    Relation::new(f.total_vars, out)
}

/// A quantifier-free formula defining exactly `target`.
pub fn verify_qpp_definition(f: &Formula, target: &Relation, lang: &ConstraintLanguage) -> bool {
    f.aux_vars == 0 && f.total_vars == target.arity() && eval_formula(f, lang).is_ok_and(|r| &r == target)
}

/// The implications relating `R` and `R'` (two extra trailing coordinates
/// `y0, y1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstantExtension {
    /// `R(x) ⇒ R'(x, 0, 1)`.
    pub forward: bool,
    /// `R'(x, y0, y1) ⇒ R(x) ∧ y0 = 0`.
    pub backward: bool,
    /// The backward implication restricted to tuples with `y1 = 1`.
    pub backward_given_y1: bool,
}

impl ConstantExtension {
    pub fn holds(&self) -> bool {
        self.forward && self.backward
    }
}

pub fn check_constant_extension(r: &Relation, r2: &Relation) -> Result<ConstantExtension> {
    let k = r.arity();
    if r2.arity() != k + 2 {
        return Err(Error::Invalid(format!("extension has arity {}, expected {}", r2.arity(), k + 2)));
    }
    let low = crate::relation::full_mask(k);
    let forward = r.tuples().iter().all(|&t| r2.contains(t | (0b10 << k)));
    let ok = |s: u32| r.contains(s & low) && (s >> k) & 1 == 0;
    let backward = r2.tuples().iter().all(|&s| ok(s));
    let backward_given_y1 = r2.tuples().iter().filter(|&&s| (s >> (k + 1)) & 1 == 1).all(|&s| ok(s));
    Ok(ConstantExtension { forward, backward, backward_given_y1 })
}

/// Both implications of a constant extension hold.
pub fn verify_constant_extension(r: &Relation, r2: &Relation) -> bool {
    check_constant_extension(r, r2).is_ok_and(|c| c.holds())
}

/// A weighted Max-Ones instance whose optimal solutions, projected onto
/// `projection`, define a relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WppGadget {
    pub instance: Instance,
    pub projection: Vec<usize>,
}

impl WppGadget {
    pub fn new(instance: Instance, projection: Vec<usize>) -> Result<Self> {
        if !matches!(instance.kind, ProblemKind::WMaxOnes | ProblemKind::UMaxOnes) {
            return Err(Error::Invalid(format!("gadget must be a Max-Ones instance, got {}", instance.kind)));
        }
        if let Some(&i) = projection.iter().find(|&&i| i >= instance.num_vars) {
            return Err(Error::Index { index: i, len: instance.num_vars });
        }
        Ok(WppGadget { instance, projection })
    }

    /// Every variable appears in the projection.
    pub fn is_quantifier_free(&self) -> bool {
        (0..self.instance.num_vars).all(|i| self.projection.contains(&i))
    }
}

pub fn eval_wpp(g: &WppGadget, lib: &Library) -> Result<Relation> {
    match solve(&g.instance, lib, true)? {
        Outcome::Optimal { optimal_set: Some(all), .. } => {
            Relation::new(g.projection.len(), all.iter().map(|&m| gather(m, &g.projection)))
        }
        Outcome::Unsatisfiable => Err(Error::Unsatisfiable),
        other => Err(Error::Invalid(format!("unexpected oracle outcome {other:?}"))),
    }
}

// ---------------------------------------------------------------------------
// Search.

pub const MAX_SEARCH_AUX: usize = 8;
pub const MAX_SEARCH_ATOMS: usize = 6;
pub const MAX_SEARCH_VARS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Formula),
    /// `exhaustive` is false when the node budget ran out first.
    NotFound { exhaustive: bool },
}

struct Bits {
    words: Vec<u64>,
}

impl Bits {
    fn full(n: usize) -> Self {
        let len = 1usize << n;
        let mut words = vec![u64::MAX; len.div_ceil(64)];
        if len < 64 {
            words[0] = (1u64 << len) - 1;
        }
        Bits { words }
    }

    fn get(&self, i: u32) -> bool {
        (self.words[(i >> 6) as usize] >> (i & 63)) & 1 == 1
    }

    fn restrict(&self, n: usize, set: &DenseSet, args: &[usize]) -> Bits {
        let mut words = self.words.clone();
        for m in 0..1u32 << n {
            if self.get(m) && !set.contains(gather(m, args)) {
                words[(m >> 6) as usize] &= !(1u64 << (m & 63));
            }
        }
        Bits { words }
    }
}

struct Search<'a> {
    target: &'a Relation,
    rels: Vec<(String, DenseSet, usize)>,
    total: usize,
    aux: usize,
    atoms: usize,
    budget: u64,
    nodes: u64,
    exhausted: bool,
}

impl Search<'_> {
    fn n(&self) -> usize {
        self.total + self.aux
    }

    /// Target tuples all extend into `bits`, and every member projects into
    /// the target.
    fn covers(&self, bits: &Bits) -> bool {
        let aux_count = 1u32 << self.aux;
        self.target
            .tuples()
            .iter()
            .all(|&t| (0..aux_count).any(|a| bits.get(t | (a << self.total))))
    }

    fn exact(&self, bits: &Bits) -> bool {
        let low = crate::relation::full_mask(self.total);
        (0..1u32 << self.n()).all(|m| !bits.get(m) || self.target.contains(m & low))
    }

    fn dfs(&mut self, chosen: &mut Vec<(usize, Vec<usize>)>, bits: &Bits, used_aux: usize) -> bool {
        if chosen.len() == self.atoms {
            return used_aux == self.aux && self.exact(bits);
        }
        let remaining = self.atoms - chosen.len();
        let start_rel = chosen.last().map(|(r, _)| *r).unwrap_or(0);
        for ri in start_rel..self.rels.len() {
            let k = self.rels[ri].2;
            if (self.aux - used_aux) > remaining * k {
                continue;
            }
            let mut args = vec![0usize; k];
            loop {
                let after_prev = match chosen.last() {
                    Some((pr, pa)) if *pr == ri => args > *pa,
                    _ => true,
                };
                if after_prev {
                    if let Some(next_used) = self.aux_order(&args, used_aux) {
                        if self.nodes >= self.budget {
                            self.exhausted = true;
                            return false;
                        }
                        self.nodes += 1;
                        let nb = bits.restrict(self.n(), &self.rels[ri].1, &args);
                        if self.covers(&nb) {
                            chosen.push((ri, args.clone()));
                            if self.dfs(chosen, &nb, next_used) {
                                return true;
                            }
                            chosen.pop();
                            if self.exhausted {
                                return false;
                            }
                        }
                    }
                }
                if !odometer(&mut args, self.n()) {
                    break;
                }
            }
        }
        false
    }

    /// Aux variables must first appear in increasing order.
    fn aux_order(&self, args: &[usize], used: usize) -> Option<usize> {
        let mut used = used;
        for &a in args {
            if a >= self.total {
                let j = a - self.total;
                if j == used {
                    used += 1;
                } else if j > used {
                    return None;
                }
            }
        }
        Some(used)
    }
}

fn odometer(args: &mut [usize], base: usize) -> bool {
    for i in (0..args.len()).rev() {
        args[i] += 1;
        if args[i] < base {
            return true;
        }
        args[i] = 0;
    }
    false
}

/// Searches for the lexicographically least definition of `target` over the
/// relations of `lang`, trying fewer quantified variables first, then fewer
/// atoms. `budget` caps the number of candidate atoms examined.
pub fn search_definition(
    target: &Relation,
    lang: &ConstraintLanguage,
    max_aux: usize,
    max_atoms: usize,
    budget: u64,
) -> Result<SearchOutcome> {
    if max_aux > MAX_SEARCH_AUX || max_atoms > MAX_SEARCH_ATOMS {
        return Err(Error::Invalid(format!(
            "search bounds exceed {MAX_SEARCH_AUX} quantified variables or {MAX_SEARCH_ATOMS} atoms"
        )));
    }
    if lang.is_empty() {
        return Err(Error::EmptyLanguage);
    }
    let total = target.arity();
    let rels: Vec<(String, DenseSet, usize)> =
        lang.iter().map(|(n, r)| (n.to_string(), r.dense(), r.arity())).collect();
    let mut nodes = 0u64;
    for aux in 0..=max_aux {
        if total + aux > MAX_SEARCH_VARS {
            return Ok(SearchOutcome::NotFound { exhaustive: false });
        }
        for atoms in 1..=max_atoms {
            let mut s = Search { target, rels: rels.clone(), total, aux, atoms, budget, nodes, exhausted: false };
            let mut chosen = Vec::new();
            let found = s.dfs(&mut chosen, &Bits::full(total + aux), 0);
            nodes = s.nodes;
            if found {
                let atoms = chosen.into_iter().map(|(ri, args)| Atom::new(rels[ri].0.clone(), args)).collect();
                return Ok(SearchOutcome::Found(Formula::new(total, aux, atoms)));
            }
            if s.exhausted {
                return Ok(SearchOutcome::NotFound { exhaustive: false });
            }
        }
    }
    Ok(SearchOutcome::NotFound { exhaustive: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational;

    fn rel(spec: RelationSpec) -> Relation {
        make_relation(&spec).unwrap()
    }

    #[test]
    fn eval_examples() {
        let lang = ConstraintLanguage::single(rel(RelationSpec::Or(2)));
        let f = Formula::new(2, 1, vec![Atom::new("OR2", vec![0, 2]), Atom::new("OR2", vec![1, 2])]);
        assert_eq!(eval_formula(&f, &lang).unwrap(), Relation::full(2).unwrap());
        let eq = Formula::quantifier_free(2, vec![Atom::new("eq", vec![0, 1])]);
        assert!(verify_qpp_definition(&eq, &rel(RelationSpec::Eq), &lang));
        assert!(eval_formula(&Formula::quantifier_free(2, vec![Atom::new("nope", vec![0, 1])]), &lang).is_err());
    }

    #[test]
    fn constant_extension_examples() {
        let t = rel(RelationSpec::T);
        let padded = t.product(&Relation::from_rows(&["01"]).unwrap()).unwrap();
        assert!(verify_constant_extension(&t, &padded));
        let wrong = t.product(&Relation::from_rows(&["11"]).unwrap()).unwrap();
        assert!(!verify_constant_extension(&t, &wrong));
    }

    #[test]
    fn wpp_single_variable() {
        let mut i = Instance::new(ProblemKind::WMaxOnes, 1);
        i.var_weights = Some(vec![rational::int(1)]);
        let g = WppGadget::new(i, vec![0]).unwrap();
        assert_eq!(eval_wpp(&g, &Library::new()).unwrap(), rel(RelationSpec::T));
    }

    #[test]
    fn search_examples() {
        let neq = ConstraintLanguage::single(rel(RelationSpec::Neq));
        match search_definition(&rel(RelationSpec::Eq), &neq, 1, 2, 1_000_000).unwrap() {
            SearchOutcome::Found(f) => {
                assert_eq!(f.to_string(), "∃y1 . neq(x1,y1) ∧ neq(x2,y1)");
                assert_eq!(eval_formula(&f, &neq).unwrap(), rel(RelationSpec::Eq));
            }
            other => panic!("{other:?}"),
        }
        let t = ConstraintLanguage::single(rel(RelationSpec::T));
        match search_definition(&rel(RelationSpec::T), &t, 0, 1, 100).unwrap() {
            SearchOutcome::Found(f) => assert_eq!(f.to_string(), "T(x1)"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn even3_from_eq_is_not_quantifier_free() {
        let lang = ConstraintLanguage::single(rel(RelationSpec::Even(2)));
        let out = search_definition(&rel(RelationSpec::Even(3)), &lang, 0, 3, 1_000_000).unwrap();
        assert_eq!(out, SearchOutcome::NotFound { exhaustive: true });
    }
}
