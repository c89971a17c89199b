//! Command-line front end. Exit codes: 0 success or positive answer,
//! 1 negative answer, 2 usage or format error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::classify::{classify_max_ones, classify_sat, Complexity};
use crate::error::{Error, Result};
use crate::formula::{eval_wpp, search_definition, SearchOutcome};
use crate::lattice::{co_clone_of, CoCloneId};
use crate::oracle::{decide, solve, Outcome};
use crate::rational;
use crate::reductions::{certify, lookup, names, registry, Sampling};
use crate::relation::{tuple_string, ConstraintLanguage, Relation};
use crate::selftest::{self, DEFAULT_SEED, DEFAULT_TRIALS};
use crate::text::{parse_costs, parse_gadget, parse_instance, parse_language, parse_relations, write_instance, write_relation};
use crate::valued::{classify_vcsp, express_neq, verify_neq_expression, CostFunction};
use crate::weak_base::weak_base_entry;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Node budget for `ppsearch`.
const SEARCH_BUDGET: u64 = 20_000_000;

#[derive(Debug, Parser)]
#[command(name = "boolcsp", version, about = "Boolean co-clones, gadget reductions and exhaustive CSP oracles")]
struct Cli {
    /// Worker threads for oracle and certify runs.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Schaefer classification of a language file.
    ClassifySat { language: PathBuf },
    /// Max-Ones classification of a language file.
    ClassifyMaxones { language: PathBuf },
    /// The co-clone generated by a language file.
    Coclone { language: PathBuf },
    /// The weak base of a co-clone, e.g. `IN2` or `IS1^3`.
    Weakbase {
        coclone: String,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// The projected optimal-solution set of a gadget instance.
    WppEval {
        gadget: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Searches for a q.p.p. definition of the first relation in `target`.
    Ppsearch {
        target: PathBuf,
        language: PathBuf,
        #[arg(long, default_value_t = 2)]
        aux: usize,
        #[arg(long, default_value_t = 4)]
        atoms: usize,
    },
    /// Applies a named reduction.
    Reduce {
        name: String,
        input: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Certifies a named reduction, or `all`, against the oracles.
    Certify {
        name: String,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Solves an instance exactly.
    Solve {
        input: PathBuf,
        /// Also list every optimal assignment.
        #[arg(long)]
        all: bool,
    },
    /// Multimorphism classification of a cost function file.
    VcspClassify { costs: PathBuf },
    /// Expresses f_neq over an NP-hard cost function set.
    ExpressNeq {
        costs: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Runs the golden and certification checks.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Run = std::result::Result<(String, i32), Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn with_file<T>(path: &Path, r: Result<T>) -> std::result::Result<T, Failure> {
    let file = path.display().to_string();
    r.map_err(|e| match e {
        Error::Parse { .. } => Failure(e.in_file(&file).to_string()),
        other => Failure(format!("{file}: {other}")),
    })
}

fn write_file(path: &Option<PathBuf>, contents: &str) -> std::result::Result<(), Failure> {
    if let Some(p) = path {
        std::fs::write(p, contents).map_err(|e| Failure(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn language(path: &Path) -> std::result::Result<ConstraintLanguage, Failure> {
    with_file(path, parse_language(&read(path)?))
}

fn costs(path: &Path) -> std::result::Result<Vec<CostFunction>, Failure> {
    let fs = with_file(path, parse_costs(&read(path)?))?;
    if fs.is_empty() {
        return Err(Failure(format!("{}: expected at least one costfn block", path.display())));
    }
    Ok(fs)
}

fn verdict_code(c: Complexity) -> i32 {
    match c {
        Complexity::P => EXIT_OK,
        Complexity::NpHard => EXIT_NEGATIVE,
    }
}

fn rows(set: &[u32], n: usize) -> String {
    set.iter().map(|&m| format!("{}\n", tuple_string(m, n))).collect()
}

fn execute(command: Command) -> Run {
    match command {
        Command::ClassifySat { language: p } => {
            let c = classify_sat(&language(&p)?)?;
            Ok((c.to_string(), verdict_code(c.verdict)))
        }
        Command::ClassifyMaxones { language: p } => {
            let c = classify_max_ones(&language(&p)?)?;
            Ok((c.to_string(), verdict_code(c.verdict)))
        }
        Command::Coclone { language: p } => Ok((format!("{}\n", co_clone_of(&language(&p)?)?), EXIT_OK)),
        Command::Weakbase { coclone, output } => {
            let id: CoCloneId = coclone.parse()?;
            let e = weak_base_entry(id)?;
            let text = write_relation(&e.relation.named(format!("R_{id}")));
            write_file(&output, &text)?;
            Ok((format!("# {}\n{text}", e.formula), EXIT_OK))
        }
        Command::WppEval { gadget, output } => {
            let (g, lib) = with_file(&gadget, parse_gadget(&read(&gadget)?))?;
            let r = eval_wpp(&g, &lib)?.named("wpp");
            let text = write_relation(&r);
            write_file(&output, &text)?;
            Ok((text, EXIT_OK))
        }
        Command::Ppsearch { target, language: lp, aux, atoms } => {
            let rels = with_file(&target, parse_relations(&read(&target)?))?;
            let goal: &Relation =
                rels.first().ok_or_else(|| Failure(format!("{}: expected a relation block", target.display())))?;
            let lang = language(&lp)?;
            match search_definition(goal, &lang, aux, atoms, SEARCH_BUDGET)? {
                SearchOutcome::Found(f) => Ok((format!("{} = {f}\n", goal.label()), EXIT_OK)),
                SearchOutcome::NotFound { exhaustive } => {
                    let why = if exhaustive { "search space exhausted" } else { "node budget exhausted" };
                    Ok((format!("no definition with <= {aux} quantified variables and <= {atoms} atoms ({why})\n"), EXIT_NEGATIVE))
                }
            }
        }
        Command::Reduce { name, input, output } => {
            let red = lookup(&name)?;
            let (inst, lib) = with_file(&input, parse_instance(&read(&input)?))?;
            let a = red.apply(&inst, &lib)?;
            let text = write_instance(&a.instance, &a.library);
            let mut report = format!("{}\n{}\nvariables: {} -> {}\n", red.record, a.contract, inst.num_vars, a.instance.num_vars);
            for note in &a.notes {
                let _ = writeln!(report, "note: {note}");
            }
            if output.is_some() {
                write_file(&output, &text)?;
            } else {
                report.push('\n');
                report.push_str(&text);
            }
            Ok((report, EXIT_OK))
        }
        Command::Certify { name, trials, seed } => {
            let reds = if name == "all" { registry() } else { vec![lookup(&name)?] };
            let mut out = String::new();
            let mut ok = true;
            for red in &reds {
                let rep = certify(red, Sampling::Auto { trials, seed });
                ok &= rep.passed();
                out.push_str(&rep.to_string());
            }
            Ok((out, if ok { EXIT_OK } else { EXIT_NEGATIVE }))
        }
        Command::Solve { input, all } => {
            let (inst, lib) = with_file(&input, parse_instance(&read(&input)?))?;
            let outcome = solve(&inst, &lib, all)?;
            let n = inst.num_vars;
            let mut out = String::new();
            match &outcome {
                Outcome::Unsatisfiable => out.push_str("unsatisfiable\n"),
                Outcome::Satisfiable { witness, .. } => {
                    let _ = writeln!(out, "satisfiable\nwitness: {}", tuple_string(*witness, n));
                }
                Outcome::Optimal { value, witness, .. } => {
                    let _ = writeln!(out, "optimum: {}\nwitness: {}", rational::format(value), tuple_string(*witness, n));
                }
            }
            if let (true, Some(set)) = (all, outcome.all()) {
                let _ = writeln!(out, "optimal set: {}", set.len());
                out.push_str(&rows(set, n));
            }
            let code = match &inst.threshold {
                Some(t) => {
                    let yes = decide(&inst, &lib, Some(t))?;
                    let _ = writeln!(out, "threshold {t}: {yes}");
                    if yes { EXIT_OK } else { EXIT_NEGATIVE }
                }
                None if outcome.is_satisfiable() => EXIT_OK,
                None => EXIT_NEGATIVE,
            };
            Ok((out, code))
        }
        Command::VcspClassify { costs: p } => {
            let c = classify_vcsp(&costs(&p)?)?;
            Ok((c.to_string(), verdict_code(c.verdict)))
        }
        Command::ExpressNeq { costs: p, output } => {
            let delta = costs(&p)?;
            match express_neq(&delta) {
                Ok(e) => {
                    let verified = verify_neq_expression(&e, &delta);
                    let text = format!("{e}\n");
                    write_file(&output, &text)?;
                    let code = if verified { EXIT_OK } else { EXIT_NEGATIVE };
                    Ok((format!("{text}verified: {verified}\n"), code))
                }
                Err(Error::NotHard(why)) => Ok((format!("not NP-hard: {why}\n"), EXIT_NEGATIVE)),
                Err(e) => Err(e.into()),
            }
        }
        Command::Selftest { trials, seed } => {
            let checks = selftest::run(seed, trials);
            let code = if checks.iter().all(|c| c.passed) { EXIT_OK } else { EXIT_NEGATIVE };
            Ok((selftest::report(&checks), code))
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    if let Command::Reduce { name, .. } | Command::Certify { name, .. } = &cli.command {
        if name != "all" && !names().contains(name) {
            let _ = writeln!(err, "error: unknown reduction `{name}`; known: {}", names().join(", "));
            return EXIT_ERROR;
        }
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_ERROR;
        }
    };
    match pool.install(|| execute(cli.command)) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}
