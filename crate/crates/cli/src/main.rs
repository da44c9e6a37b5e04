use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use paraz2::axioms::{check_group, Group};
use paraz2::diagonal::{berry_in, parse_tables, richard_diagonal, richard_verify};
use paraz2::model::{
    canonical_structure, classify, eval, solve_comprehension, Assignment, ModelError, Scheme,
    Structure,
};
use paraz2::numbers::{eval_rat_expr, real_compare, ParaNat, ParaReal, RatExprValue};
use paraz2::syntax::{godel_number, parse, Constant, EnumPool, Flavor, Formula, GodelCode, Term};
use paraz2::truth::{Relation, TruthValue};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "paraz2",
    version,
    about = "Paraconsistent second-order arithmetic workbench"
)]
struct Cli {
    /// Print machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print its canonical form and syntax tree.
    Parse { formula: String },
    /// Print the Gödel code of a formula.
    Godel { formula: String },
    /// Evaluate a formula over a structure.
    Eval {
        formula: String,
        #[command(flatten)]
        model: ModelArgs,
        /// Bind a number variable, e.g. `n=3_w`. Repeatable.
        #[arg(long = "let", value_name = "VAR=ELEMENT")]
        bindings: Vec<String>,
    },
    /// Axiom catalog operations.
    Axioms {
        #[command(subcommand)]
        command: AxiomsCommand,
    },
    /// Solve a comprehension instance and classify the resulting set.
    Comprehend {
        formula: String,
        #[command(flatten)]
        model: ModelArgs,
        /// `iv`, `v.1`, `v.2(N)` or `v.3[N]`.
        #[arg(long, default_value = "v.1")]
        scheme: String,
    },
    /// Least number not definable under a code bound.
    Berry {
        #[command(flatten)]
        model: ModelArgs,
        /// Code bound.
        #[arg(long)]
        k: String,
        /// Longest formula serialization in the definability pool.
        #[arg(long)]
        max_len: Option<usize>,
        /// Largest number of pool formulas to enumerate.
        #[arg(long, default_value_t = 10_000)]
        cap: usize,
    },
    /// Diagonal real of a list of digit tables.
    Richard {
        /// File with one `0.ddd` line per table.
        #[arg(long)]
        tables: PathBuf,
    },
    /// Rational arithmetic.
    Rat {
        #[command(subcommand)]
        command: RatCommand,
    },
    /// Truncated real comparison.
    Real {
        #[command(subcommand)]
        command: RealCommand,
    },
}

#[derive(Subcommand)]
enum AxiomsCommand {
    /// Check that a group of axioms is designated in a structure.
    Check {
        #[command(flatten)]
        model: ModelArgs,
        /// `i`, `i.1` .. `i.8`, `ii` or `iii`.
        #[arg(long)]
        group: String,
        /// Only check flavors of rank at most this.
        #[arg(long)]
        rank: Option<u32>,
    },
}

#[derive(Subcommand)]
enum RatCommand {
    /// Evaluate an expression such as `1/2@s + 1/3@s` or `|-1/2@w|_w <w 1@w`.
    Eval { expr: String },
}

#[derive(Subcommand)]
enum RealCommand {
    /// Compare two digit files to a fixed depth.
    Cmp {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        depth: usize,
        /// Flavor of the comparison and of both operands.
        #[arg(long, default_value = "s")]
        flavor: String,
        /// `eq` or `lt`.
        #[arg(long, default_value = "eq")]
        rel: String,
    },
}

#[derive(Args)]
struct ModelArgs {
    /// Structure file: `{"bound": N, "max_rank": R, "subsets": [...]}`.
    #[arg(long, conflicts_with_all = ["bound", "max_rank"])]
    model: Option<PathBuf>,
    /// Canonical structure bound, used when no model file is given.
    #[arg(long, default_value_t = 4)]
    bound: u64,
    /// Canonical structure rank, used when no model file is given.
    #[arg(long, default_value_t = 0)]
    max_rank: u32,
}

impl ModelArgs {
    fn load(&self) -> Result<Structure, Failure> {
        match &self.model {
            Some(path) => Structure::from_json(&read(path)?)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
            None => Ok(canonical_structure(self.bound, self.max_rank)),
        }
    }
}

/// Errors ending a run with exit code 2.
enum Failure {
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// What a command produced: text for humans, JSON for scripts, and whether
/// the verdict holds.
struct Outcome {
    text: String,
    json: serde_json::Value,
    ok: bool,
}

impl Outcome {
    fn new(text: String, json: serde_json::Value) -> Outcome {
        Outcome {
            text,
            json,
            ok: true,
        }
    }

    fn verdict(mut self, ok: bool) -> Outcome {
        self.ok = ok;
        self
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn parse_formula(src: &str) -> Result<Formula, Failure> {
    parse(src).map_err(|e| Failure::Usage(e.to_string()))
}

fn term_tree(t: &Term, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match t {
        Term::Var(v) => writeln!(out, "{pad}var {v}"),
        Term::Const(Constant::Zero, fl) => writeln!(out, "{pad}const 0_{fl}"),
        Term::Const(Constant::One, fl) => writeln!(out, "{pad}const 1_{fl}"),
        Term::Add(a, b) | Term::Mul(a, b) => {
            let op = if matches!(t, Term::Add(..)) {
                "add"
            } else {
                "mul"
            };
            writeln!(out, "{pad}{op}").unwrap();
            term_tree(a, depth + 1, out);
            term_tree(b, depth + 1, out);
            Ok(())
        }
    }
    .unwrap();
}

fn formula_tree(f: &Formula, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let binary = |name: &str, a: &Formula, b: &Formula, out: &mut String| {
        writeln!(out, "{pad}{name}").unwrap();
        formula_tree(a, depth + 1, out);
        formula_tree(b, depth + 1, out);
    };
    match f {
        Formula::Eq(a, b, fl) | Formula::Lt(a, b, fl) => {
            let op = if matches!(f, Formula::Eq(..)) {
                "eq"
            } else {
                "lt"
            };
            writeln!(out, "{pad}{op}_{fl}").unwrap();
            term_tree(a, depth + 1, out);
            term_tree(b, depth + 1, out);
        }
        Formula::Mem(t, x, fl) => {
            writeln!(out, "{pad}in_{fl} {x}").unwrap();
            term_tree(t, depth + 1, out);
        }
        Formula::Not(g) => {
            writeln!(out, "{pad}not").unwrap();
            formula_tree(g, depth + 1, out);
        }
        Formula::And(a, b) => binary("and", a, b, out),
        Formula::Or(a, b) => binary("or", a, b, out),
        Formula::Implies(a, b) => binary("implies", a, b, out),
        Formula::Iff(a, b) => binary("iff", a, b, out),
        Formula::ForallNum(v, g) | Formula::ForallSet(v, g) => {
            writeln!(out, "{pad}forall {v}").unwrap();
            formula_tree(g, depth + 1, out);
        }
        Formula::ExistsNum(v, g) | Formula::ExistsSet(v, g) => {
            writeln!(out, "{pad}exists {v}").unwrap();
            formula_tree(g, depth + 1, out);
        }
        Formula::Rank(g, op) => {
            writeln!(out, "{pad}rank {}", op.flavor()).unwrap();
            formula_tree(g, depth + 1, out);
        }
    }
}

fn bindings(list: &[String]) -> Result<Assignment, Failure> {
    let mut a = Assignment::new();
    for b in list {
        let (var, value) = b
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("binding `{b}` is not VAR=ELEMENT")))?;
        a = a.with_num(var.trim(), value.parse::<ParaNat>()?);
    }
    Ok(a)
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    Ok(match &cli.command {
        Command::Parse { formula } => {
            let f = parse_formula(formula)?;
            let mut tree = String::new();
            formula_tree(&f, 0, &mut tree);
            let fv = f.free_vars();
            Outcome::new(
                format!("{f}\n{tree}").trim_end().to_string(),
                json!({"formula": f.to_string(), "tree": tree.lines().collect::<Vec<_>>(),
                       "free_num": fv.num, "free_set": fv.set}),
            )
        }
        Command::Godel { formula } => {
            let f = parse_formula(formula)?;
            let code = godel_number(&f);
            Outcome::new(
                code.to_string(),
                json!({"formula": f.to_string(), "code": code}),
            )
        }
        Command::Eval {
            formula,
            model,
            bindings: list,
        } => {
            let s = model.load()?;
            let f = parse_formula(formula)?;
            let v = eval(&s, &bindings(list)?, &f)?;
            Outcome::new(
                v.to_string(),
                json!({"formula": f.to_string(), "value": v, "designated": v.is_designated()}),
            )
            .verdict(v.is_designated())
        }
        Command::Axioms {
            command: AxiomsCommand::Check { model, group, rank },
        } => {
            let s = model.load()?;
            let group: Group = group.parse().map_err(Failure::Usage)?;
            let report = check_group(&s, group, *rank)?;
            let mut text = String::new();
            for c in &report.schemas {
                writeln!(
                    text,
                    "{:<12} {:>8} checks  {}",
                    c.id.to_string(),
                    c.checks,
                    c.value
                )
                .unwrap();
            }
            for f in &report.failures {
                writeln!(text, "FAIL {f}").unwrap();
            }
            write!(
                text,
                "{}",
                if report.passed() { "sound" } else { "unsound" }
            )
            .unwrap();
            let ok = report.passed();
            Outcome::new(text, serde_json::to_value(&report)?).verdict(ok)
        }
        Command::Comprehend {
            formula,
            model,
            scheme,
        } => {
            let s = model.load()?;
            let f = parse_formula(formula)?;
            let scheme: Scheme = scheme.parse().map_err(Failure::Usage)?;
            match solve_comprehension(&s, &f, scheme) {
                Ok(table) => {
                    let class = classify(&s, &table);
                    let mut text = format!("{class}\n");
                    for e in s.carrier() {
                        writeln!(text, "{e} {}", table.get(e)).unwrap();
                    }
                    Outcome::new(
                        text.trim_end().to_string(),
                        json!({"scheme": scheme.to_string(), "table": table, "classification": class}),
                    )
                }
                Err(e @ ModelError::NoFixpoint { .. }) => Outcome::new(
                    format!("no solution: {e}"),
                    json!({"scheme": scheme.to_string(), "error": e.to_string()}),
                )
                .verdict(false),
                Err(e) => return Err(e.into()),
            }
        }
        Command::Berry {
            model,
            k,
            max_len,
            cap,
        } => {
            let s = model.load()?;
            let k: GodelCode = k
                .parse()
                .map_err(|_| Failure::Usage(format!("bad code bound `{k}`")))?;
            let pool = EnumPool {
                max_len: *max_len,
                cap: *cap,
                ..EnumPool::default()
            };
            let r = berry_in(&s, &pool, &k)?;
            let defined: Vec<String> = r.a_k.iter().map(|e| e.to_string()).collect();
            let text = format!(
                "A_k = {{{}}}\nB_k = {}\ndefining code = {}\ncontradiction = {}\nmembership = {}",
                defined.join(", "),
                r.b_k,
                r.defining_code,
                r.contradiction,
                r.membership_value
            );
            Outcome::new(text, serde_json::to_value(&r)?)
        }
        Command::Richard { tables } => {
            let tables = parse_tables(&read(tables)?)?;
            let d = richard_diagonal(&tables)?;
            let r = richard_verify(&tables, &d);
            let ok = r.mismatches.len() == tables.len();
            let text = format!(
                "diagonal = {}\nmismatches = {:?}\nself membership = {}",
                r.diagonal, r.mismatches, r.self_membership
            );
            Outcome::new(text, serde_json::to_value(&r)?).verdict(ok)
        }
        Command::Rat {
            command: RatCommand::Eval { expr },
        } => match eval_rat_expr(expr)? {
            RatExprValue::Number(q) => Outcome::new(q.to_string(), json!({"value": q})),
            RatExprValue::Truth(v) => Outcome::new(
                v.to_string(),
                json!({"value": v, "designated": v.is_designated()}),
            )
            .verdict(v.is_designated()),
        },
        Command::Real {
            command:
                RealCommand::Cmp {
                    first,
                    second,
                    depth,
                    flavor,
                    rel,
                },
        } => {
            let flavor: Flavor = flavor.parse()?;
            let rel = match rel.as_str() {
                "eq" => Relation::Eq,
                "lt" => Relation::Lt,
                other => {
                    return Err(Failure::Usage(format!(
                        "unknown relation `{other}` (expected eq or lt)"
                    )))
                }
            };
            let x = ParaReal::parse_digits(&read(first)?, flavor)?;
            let y = ParaReal::parse_digits(&read(second)?, flavor)?;
            let v: TruthValue = real_compare(&x, &y, rel, flavor, *depth)?;
            Outcome::new(
                v.to_string(),
                json!({"value": v, "designated": v.is_designated(), "depth": depth}),
            )
            .verdict(v.is_designated())
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("JSON values serialize")
            } else {
                out.text
            };
            // A closed pipe (`paraz2 ... | head`) is not an error.
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
