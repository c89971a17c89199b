//! Text formats.
//!
//! A document is a sequence of lines; `#` starts a comment. Blocks:
//!
//! ```text
//! relation NAME ARITY      rows of 0/1, coordinate 1 leftmost
//! costfn NAME ARITY        lines `bits value`, one per tuple
//! ```
//!
//! Instance lines: `problem KIND`, `vars N`, `varweights w…`,
//! `c NAME i… [w p/q]` with 0-based indices, `threshold >= v` or
//! `threshold <= v`, and for gadgets `project i…`. Language files list
//! relation blocks and `use NAME` lines for built-in relations.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::formula::WppGadget;
use crate::instance::{Constraint, Direction, Instance, Library, ProblemKind, Threshold};
use crate::rational::{self, Rational};
use crate::relation::{parse_tuple, tuple_string, ConstraintLanguage, Relation};
use crate::valued::{lex_tuples, CostFunction};

#[derive(Clone, Debug, Default)]
pub struct Document {
    pub relations: Vec<Relation>,
    pub costs: Vec<CostFunction>,
    pub uses: Vec<String>,
    pub kind: Option<ProblemKind>,
    pub vars: Option<usize>,
    pub var_weights: Option<Vec<Rational>>,
    pub constraints: Vec<Constraint>,
    pub threshold: Option<Threshold>,
    pub projection: Option<Vec<usize>>,
}

enum Block {
    None,
    Relation { name: String, arity: usize, rows: Vec<u32> },
    Cost { name: String, arity: usize, values: Vec<Option<Rational>> },
}

fn number<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    tok.and_then(|t| t.parse().ok()).ok_or_else(|| Error::parse(line, format!("expected {what}")))
}

fn rat(tok: &str, line: usize) -> Result<Rational> {
    rational::parse(tok).ok_or_else(|| Error::parse(line, format!("bad rational `{tok}`")))
}

impl Document {
    fn close(&mut self, block: Block, line: usize) -> Result<()> {
        match block {
            Block::None => Ok(()),
            Block::Relation { name, arity, rows } => {
                let r = Relation::new(arity, rows).map_err(|e| Error::parse(line, e.to_string()))?;
                self.relations.push(r.named(name));
                Ok(())
            }
            Block::Cost { name, arity, values } => {
                let table: Option<Vec<Rational>> = values.into_iter().collect();
                let table = table.ok_or_else(|| Error::parse(line, format!("cost function `{name}` misses tuples")))?;
                let f = CostFunction::new(arity, table).map_err(|e| Error::parse(line, e.to_string()))?;
                self.costs.push(f.named(name));
                Ok(())
            }
        }
    }

    pub fn parse(src: &str) -> Result<Document> {
        let mut doc = Document::default();
        let mut block = Block::None;
        let mut last = 0;
        for (i, raw) in src.lines().enumerate() {
            let ln = i + 1;
            last = ln;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let mut toks = text.split_whitespace();
            let head = toks.next().unwrap_or("");
            match head {
                "relation" | "costfn" => {
                    doc.close(std::mem::replace(&mut block, Block::None), ln)?;
                    let name: String = toks.next().ok_or_else(|| Error::parse(ln, "missing name"))?.to_string();
                    let arity: usize = number(toks.next(), ln, "arity")?;
                    block = if head == "relation" {
                        Block::Relation { name, arity, rows: Vec::new() }
                    } else {
                        if arity == 0 || arity > crate::valued::MAX_COST_ARITY {
                            return Err(Error::parse(ln, format!("cost arity {arity} out of range")));
                        }
                        Block::Cost { name, arity, values: vec![None; 1 << arity] }
                    };
                }
                "problem" => {
                    doc.close(std::mem::replace(&mut block, Block::None), ln)?;
                    let k = toks.next().ok_or_else(|| Error::parse(ln, "missing problem kind"))?;
                    doc.kind = Some(k.parse().map_err(|_| Error::parse(ln, format!("unknown problem `{k}`")))?);
                }
                "vars" => {
                    doc.close(std::mem::replace(&mut block, Block::None), ln)?;
                    doc.vars = Some(number(toks.next(), ln, "variable count")?);
                }
                "varweights" => {
                    doc.close(std::mem::replace(&mut block, Block::None), ln)?;
                    doc.var_weights = Some(toks.map(|t| rat(t, ln)).collect::<Result<_>>()?);
                }
                "c" => {
                    doc.close(std::mem::replace(&mut block, Block::None), ln)?;
                    let name = toks.next().ok_or_else(|| Error::parse(ln, "missing constraint name"))?;
                    let rest: Vec<&str> = toks.collect();
                    let (idx, weight) = match rest.iter().position(|&t| t == "w") {
                        Some(p) if p + 2 == rest.len() => (&rest[..p], Some(rat(rest[p + 1], ln)?)),
                        Some(_) => return Err(Error::parse(ln, "weight must be the last item")),
                        None => (&rest[..], None),
                    };
                    let scope = idx.iter().map(|t| number(Some(t), ln, "variable index")).collect::<Result<_>>()?;
                    doc.constraints.push(Constraint { name: name.to_string(), scope, weight });
                }
                "threshold" => {
                    doc.close(std::mem::replace(&mut block, Block::None), ln)?;
                    let dir = match toks.next() {
                        Some(">=") => Direction::AtLeast,
                        Some("<=") => Direction::AtMost,
                        _ => return Err(Error::parse(ln, "threshold needs >= or <=")),
                    };
                    let v = rat(toks.next().ok_or_else(|| Error::parse(ln, "missing threshold value"))?, ln)?;
                    doc.threshold = Some(Threshold { direction: dir, value: v });
                }
                "project" => {
                    doc.close(std::mem::replace(&mut block, Block::None), ln)?;
                    doc.projection =
                        Some(toks.map(|t| number(Some(t), ln, "variable index")).collect::<Result<_>>()?);
                }
                "use" => {
                    doc.close(std::mem::replace(&mut block, Block::None), ln)?;
                    doc.uses.extend(toks.map(str::to_string));
                }
                _ => match &mut block {
                    Block::Relation { arity, rows, .. } => {
                        if head.len() != *arity || toks.next().is_some() {
                            return Err(Error::parse(ln, format!("row `{text}` does not have {arity} bits")));
                        }
                        rows.push(parse_tuple(head).ok_or_else(|| Error::parse(ln, format!("bad row `{head}`")))?);
                    }
                    Block::Cost { arity, values, .. } => {
                        if head.len() != *arity {
                            return Err(Error::parse(ln, format!("tuple `{head}` does not have {arity} bits")));
                        }
                        let t = parse_tuple(head).ok_or_else(|| Error::parse(ln, format!("bad tuple `{head}`")))?;
                        let v = rat(toks.next().ok_or_else(|| Error::parse(ln, "missing cost"))?, ln)?;
                        if values[t as usize].replace(v).is_some() {
                            return Err(Error::parse(ln, format!("tuple `{head}` listed twice")));
                        }
                    }
                    Block::None => return Err(Error::parse(ln, format!("unexpected `{head}`"))),
                },
            }
        }
        doc.close(block, last)?;
        Ok(doc)
    }

    /// Registers the relation and cost blocks.
    pub fn library(&self) -> Result<Library> {
        let mut lib = Library::new();
        for r in &self.relations {
            lib.add_relation(r.label(), r.clone())?;
        }
        for f in &self.costs {
            lib.add_cost(f.label(), f.clone())?;
        }
        Ok(lib)
    }

    pub fn instance(&self) -> Result<Instance> {
        let kind = self.kind.ok_or_else(|| Error::parse(0, "missing `problem` line"))?;
        let n = self.vars.ok_or_else(|| Error::parse(0, "missing `vars` line"))?;
        Ok(Instance {
            kind,
            num_vars: n,
            constraints: self.constraints.clone(),
            var_weights: self.var_weights.clone(),
            threshold: self.threshold.clone(),
        })
    }
}

pub fn write_relation(r: &Relation) -> String {
    let mut s = format!("relation {} {}\n", r.label(), r.arity());
    for row in r.rows() {
        s.push_str(&row);
        s.push('\n');
    }
    s
}

pub fn write_relations(rs: &[Relation]) -> String {
    rs.iter().map(write_relation).collect::<Vec<_>>().join("\n")
}

pub fn parse_relations(src: &str) -> Result<Vec<Relation>> {
    Ok(Document::parse(src)?.relations)
}

pub fn write_cost(f: &CostFunction) -> String {
    let mut s = format!("costfn {} {}\n", f.label(), f.arity());
    for t in lex_tuples(f.arity()) {
        let _ = writeln!(s, "{} {}", tuple_string(t, f.arity()), rational::format(f.eval(t)));
    }
    s
}

pub fn write_costs(fs: &[CostFunction]) -> String {
    fs.iter().map(write_cost).collect::<Vec<_>>().join("\n")
}

pub fn parse_costs(src: &str) -> Result<Vec<CostFunction>> {
    Ok(Document::parse(src)?.costs)
}

fn instance_lines(inst: &Instance) -> String {
    let mut s = format!("problem {}\nvars {}\n", inst.kind, inst.num_vars);
    if let Some(w) = &inst.var_weights {
        let ws: Vec<String> = w.iter().map(rational::format).collect();
        let _ = writeln!(s, "varweights {}", ws.join(" "));
    }
    for c in &inst.constraints {
        s.push_str("c ");
        s.push_str(&c.name);
        for i in &c.scope {
            let _ = write!(s, " {i}");
        }
        if let Some(w) = &c.weight {
            let _ = write!(s, " w {}", rational::format(w));
        }
        s.push('\n');
    }
    if let Some(t) = &inst.threshold {
        let _ = writeln!(s, "threshold {t}");
    }
    s
}

/// The instance preceded by every registered definition in `lib` it uses.
pub fn write_instance(inst: &Instance, lib: &Library) -> String {
    let names = inst.names();
    let mut s = String::new();
    for (n, r) in lib.registered_relations() {
        if names.iter().any(|m| m == n) {
            s.push_str(&write_relation(r));
            s.push('\n');
        }
    }
    for (n, f) in lib.registered_costs() {
        if names.iter().any(|m| m == n) {
            s.push_str(&write_cost(f));
            s.push('\n');
        }
    }
    s.push_str(&instance_lines(inst));
    s
}

/// Parses and validates an instance with its embedded definitions.
pub fn parse_instance(src: &str) -> Result<(Instance, Library)> {
    let doc = Document::parse(src)?;
    let lib = doc.library()?;
    let inst = doc.instance()?;
    inst.validate(&lib)?;
    Ok((inst, lib))
}

pub fn write_gadget(g: &WppGadget, lib: &Library) -> String {
    let mut s = write_instance(&g.instance, lib);
    let p: Vec<String> = g.projection.iter().map(|i| i.to_string()).collect();
    let _ = writeln!(s, "project {}", p.join(" "));
    s
}

/// A gadget file is an instance with a `project` line; without one every
/// variable is projected.
pub fn parse_gadget(src: &str) -> Result<(WppGadget, Library)> {
    let doc = Document::parse(src)?;
    let lib = doc.library()?;
    let inst = doc.instance()?;
    inst.validate(&lib)?;
    let proj = doc.projection.clone().unwrap_or_else(|| (0..inst.num_vars).collect());
    Ok((WppGadget::new(inst, proj)?, lib))
}

pub fn parse_language(src: &str) -> Result<ConstraintLanguage> {
    let doc = Document::parse(src)?;
    let lib = doc.library()?;
    let mut lang = ConstraintLanguage::new();
    for r in &doc.relations {
        lang.insert(r.label(), r.clone())?;
    }
    for n in &doc.uses {
        lang.insert(n.clone(), lib.relation(n)?)?;
    }
    if lang.is_empty() {
        return Err(Error::EmptyLanguage);
    }
    Ok(lang)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_round_trip() {
        let src = "# comment\nrelation NAND2 2\n00\n10\n01\n\nrelation T 1\n1\n";
        let rs = parse_relations(src).unwrap();
        assert_eq!(rs.len(), 2);
        assert_eq!(rs[0].len(), 3);
        assert_eq!(parse_relations(&write_relations(&rs)).unwrap(), rs);
    }

    #[test]
    fn instance_round_trip() {
        let src = "relation half 2\n01\n\nproblem w-max-ones\nvars 3\nvarweights 1 1/2 0\n\
                   c half 0 2\nc NAND2 1 2 w 3/2\nthreshold >= 1\n";
        let (inst, lib) = parse_instance(src).unwrap();
        assert_eq!(inst.constraints[1].weight, Some(rational::ratio(3, 2)));
        let (again, _) = parse_instance(&write_instance(&inst, &lib)).unwrap();
        assert_eq!(again, inst);
    }

    #[test]
    fn cost_round_trip() {
        let src = "costfn g 2\n00 1\n01 0\n10 1/3\n11 2\n";
        let fs = parse_costs(src).unwrap();
        assert_eq!(fs[0].eval(0b10), &rational::int(0));
        assert_eq!(parse_costs(&write_costs(&fs)).unwrap(), fs);
    }

    #[test]
    fn errors_carry_lines() {
        match parse_relations("relation r 2\n011\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_costs("costfn g 1\n0 1\n").is_err());
        assert!(parse_instance("problem sat\nvars 1\nc neq 0 1\n").is_err());
        assert!(parse_instance("vars 1\n").is_err());
    }

    #[test]
    fn language_with_builtins() {
        let lang = parse_language("use R_II2 neq\nrelation r 1\n1\n").unwrap();
        assert_eq!(lang.len(), 3);
    }
}
