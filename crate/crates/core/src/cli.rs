//! Command-line front end. [`run`] returns the exit code and both output
//! streams so the binary and the tests share one code path.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exponential::{phi, Direction};
use crate::invariants::generators::{w_generator, y_generator};
use crate::invariants::{
    affine_generators, f_generator, m_count, mu_count, p_generator, q_generator, s_element, t_element,
    u_generator, v_generator,
};
use crate::poly::{parse, VarNames};
use crate::rewrite::{relation_check, relation_text, rewrite_affine, rewrite_graded};
use crate::solver::{dimension_table, solve, Mode};
use crate::verify::verify_all;
use crate::{AffineMap, Poly};

/// Environment variable holding the default worker-thread count.
pub const THREADS_ENV: &str = "UNIPOTENT_THREADS";

#[derive(Parser, Debug)]
#[command(name = "unipotent", version, about = "Exact invariants of unipotent Jordan automorphisms")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for matrix assembly (0 = rayon default).
    #[arg(long, global = true, env = THREADS_ENV, default_value_t = 0)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    /// `x -> J_n(1) x - e_1` on `n` variables.
    Affine,
    /// `x -> J_{n+1}(1) x` on `n + 1` variables.
    #[value(alias = "graded-map")]
    Graded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Filtered,
    Graded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    /// Rising factorial `x(x+1)...(x+i-1)/i!`.
    Plus,
    /// Falling factorial `x(x-1)...(x-i+1)/i!`.
    Minus,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a named generator, or all of them.
    Gen {
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long)]
        n: usize,
        /// u2, v1, w2, y3 (affine); p1, q2, f3, s, t (graded).
        #[arg(long)]
        name: Option<String>,
    },
    /// Basis of the invariants of bounded degree, from the brute-force solver.
    Solve {
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Express a polynomial in the generators.
    Rewrite {
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        expr: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Check the defining relations for n = 3 and n = 4.
    Relations {
        #[arg(long)]
        n: Option<usize>,
    },
    /// Dimensions of the bounded invariant spaces for degrees 0..=max-degree.
    Dims {
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_degree: u32,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Print a factorial basis polynomial in x1.
    Phi {
        #[arg(long)]
        index: i64,
        #[arg(long, value_enum, default_value = "minus")]
        direction: DirectionArg,
    },
    /// Run every check and print a report.
    Verify {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
    },
}

/// Exit status and captured streams of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => return failure(1, &format!("cannot start thread pool: {e}")),
    };
    match pool.install(|| execute(&cli)) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => failure(if e.is_parse() { 2 } else { 1 }, &e.to_string()),
    }
}

fn failure(code: i32, msg: &str) -> Outcome {
    Outcome {
        code,
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
    }
}

fn nvars(case: CaseArg, n: usize) -> usize {
    match case {
        CaseArg::Affine => n,
        CaseArg::Graded => n + 1,
    }
}

fn map_for(case: CaseArg, n: usize) -> Result<AffineMap> {
    match case {
        CaseArg::Affine => AffineMap::make_affine_jordan(n),
        CaseArg::Graded => AffineMap::make_graded_jordan(n + 1),
    }
}

fn mode_for(case: CaseArg, mode: Option<ModeArg>) -> Mode {
    match (mode, case) {
        (Some(ModeArg::Filtered), _) | (None, CaseArg::Affine) => Mode::Filtered,
        (Some(ModeArg::Graded), _) | (None, CaseArg::Graded) => Mode::Graded,
    }
}

fn text(p: &Poly) -> String {
    p.to_string()
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn split_name(name: &str) -> Option<(&str, usize)> {
    let at = name.find(|c: char| c.is_ascii_digit())?;
    let (prefix, digits) = name.split_at(at);
    Some((prefix, digits.parse().ok()?))
}

fn named_generator(case: CaseArg, n: usize, name: &str) -> Result<Poly> {
    match (case, name) {
        (CaseArg::Graded, "s") if n == 3 => return Ok(s_element()),
        (CaseArg::Graded, "t") if n == 4 => return Ok(t_element()),
        (CaseArg::Graded, "s" | "t") => {
            return Err(Error::out_of_range(format!("{name} is defined for n = {} only", if name == "s" { 3 } else { 4 })))
        }
        _ => {}
    }
    let unknown = || Error::out_of_range(format!("unknown generator {name:?} for the {case:?} case").to_lowercase());
    let (prefix, k) = split_name(name).ok_or_else(unknown)?;
    match (case, prefix) {
        (CaseArg::Affine, "u") => u_generator(n, k),
        (CaseArg::Affine, "v") => v_generator(n, k),
        (CaseArg::Affine, "w") => w_generator(n, k),
        (CaseArg::Affine, "y") if k >= 2 => y_generator(n, k - 1),
        (CaseArg::Graded, "p") => p_generator(n, k),
        (CaseArg::Graded, "q") => q_generator(n, k),
        (CaseArg::Graded, "f") if k >= 2 => f_generator(n, k - 1),
        _ => Err(unknown()),
    }
}

fn all_generators(case: CaseArg, n: usize) -> Result<Vec<(String, Poly)>> {
    match case {
        CaseArg::Affine => Ok(affine_generators(n)?
            .members
            .into_iter()
            .map(|g| (g.name, g.poly))
            .collect()),
        CaseArg::Graded => {
            if n < 1 {
                return Err(Error::out_of_range("graded case needs n >= 1"));
            }
            let mut out = vec![("x1".to_string(), crate::poly::Polynomial::var(n + 1, 0))];
            for k in 1..=m_count(n) {
                out.push((format!("p{k}"), p_generator(n, k)?));
            }
            for k in 1..=mu_count(n) {
                out.push((format!("q{k}"), q_generator(n, k)?));
            }
            Ok(out)
        }
    }
}

fn gen_json(name: &str, p: &Poly) -> Value {
    json!({"name": name, "degree": p.degree().finite().unwrap_or(0), "poly": text(p)})
}

fn read_input(expr: &Option<String>, file: &Option<PathBuf>) -> Result<String> {
    match (expr, file) {
        (Some(e), _) => Ok(e.clone()),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Error::out_of_range(format!("cannot read {}: {e}", path.display()))),
        (None, None) => Err(Error::out_of_range("no input polynomial")),
    }
}

fn execute(cli: &Cli) -> Result<String> {
    let mut out = String::new();
    match &cli.command {
        Command::Gen { case, n, name } => {
            let gens = match name {
                Some(name) => vec![(name.clone(), named_generator(*case, *n, name)?)],
                None => all_generators(*case, *n)?,
            };
            if cli.json {
                let items: Vec<Value> = gens.iter().map(|(name, p)| gen_json(name, p)).collect();
                out = pretty(&if name.is_some() { items[0].clone() } else { Value::Array(items) });
            } else if name.is_some() {
                writeln!(out, "{}", text(&gens[0].1)).unwrap();
            } else {
                for (name, p) in &gens {
                    writeln!(out, "{name} = {}", text(p)).unwrap();
                }
            }
        }
        Command::Solve { case, n, degree, mode } => {
            let basis = solve(&map_for(*case, *n)?, *degree, mode_for(*case, *mode))?;
            let polys: Vec<String> = basis.basis.iter().map(text).collect();
            if cli.json {
                out = pretty(&json!(polys));
            } else {
                for p in polys {
                    writeln!(out, "{p}").unwrap();
                }
            }
        }
        Command::Rewrite { case, n, expr, file } => {
            let input = read_input(expr, file)?;
            let f = parse(&input, nvars(*case, *n))?;
            let (expression, residual) = match case {
                CaseArg::Affine => {
                    let r = rewrite_affine(&f, *n)?;
                    (r.to_text(), r.residual_x1_degree)
                }
                CaseArg::Graded => (rewrite_graded(&f)?.to_text(), 0),
            };
            if cli.json {
                out = pretty(&json!({"expression": expression, "residual_x1_degree": residual}));
            } else {
                writeln!(out, "{expression}").unwrap();
            }
        }
        Command::Relations { n } => {
            let ns = match n {
                Some(n) => vec![*n],
                None => vec![3, 4],
            };
            let mut items = Vec::new();
            let mut all_hold = true;
            for n in ns {
                let check = relation_check(n)?;
                let relation = relation_text(n)?;
                all_hold &= check.holds();
                let status = if check.holds() { "OK" } else { "FAIL" };
                if cli.json {
                    items.push(json!({
                        "n": n,
                        "relation": relation,
                        "holds": check.holds(),
                        "difference_sha256": check.difference_hash(),
                    }));
                } else {
                    writeln!(out, "{status}: {relation}").unwrap();
                    writeln!(out, "  sha256(lhs - rhs) = {}", check.difference_hash()).unwrap();
                }
            }
            if cli.json {
                out = pretty(&Value::Array(items));
            }
            if !all_hold {
                return Err(Error::Inconsistent(format!("relation check failed\n{out}")));
            }
        }
        Command::Dims { case, n, max_degree, mode } => {
            let dims = dimension_table(&map_for(*case, *n)?, *max_degree, mode_for(*case, *mode))?;
            if cli.json {
                out = pretty(&json!(dims));
            } else {
                let parts: Vec<String> = dims.iter().map(ToString::to_string).collect();
                writeln!(out, "[{}]", parts.join(", ")).unwrap();
            }
        }
        Command::Phi { index, direction } => {
            let dir = match direction {
                DirectionArg::Plus => Direction::Plus,
                DirectionArg::Minus => Direction::Minus,
            };
            let p = phi(*index, dir)?;
            let body = p.to_text(&VarNames::indexed("x", 1));
            if cli.json {
                out = pretty(&json!({"index": index, "direction": format!("{direction:?}").to_lowercase(), "poly": body}));
            } else {
                writeln!(out, "{body}").unwrap();
            }
        }
        Command::Verify { n_max } => {
            if *n_max < 2 {
                return Err(Error::out_of_range("verify needs --n-max >= 2"));
            }
            let report = verify_all(*n_max);
            if cli.json {
                out = pretty(&report.to_json());
            } else {
                for c in &report.checks {
                    write!(out, "{:<4} {}", c.status.to_string().to_uppercase(), c.id).unwrap();
                    if !c.detail.is_empty() {
                        write!(out, ": {}", c.detail).unwrap();
                    }
                    out.push('\n');
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(args: &[&str]) -> String {
        let o = run(std::iter::once("unipotent").chain(args.iter().copied()));
        assert_eq!(o.code, 0, "{}", o.stderr);
        o.stdout
    }

    #[test]
    fn generator_names() {
        assert_eq!(split_name("u12"), Some(("u", 12)));
        assert_eq!(split_name("s"), None);
        assert!(named_generator(CaseArg::Affine, 4, "p1").is_err());
        assert!(named_generator(CaseArg::Graded, 4, "s").is_err());
        assert_eq!(named_generator(CaseArg::Affine, 4, "y2").unwrap(), y_generator(4, 1).unwrap());
    }

    #[test]
    fn text_outputs() {
        assert_eq!(ok(&["gen", "--case", "affine", "--n", "4", "--name", "u2"]).trim(), text(&u_generator(4, 2).unwrap()));
        assert_eq!(ok(&["dims", "--case", "affine", "--n", "4", "--max-degree", "2"]), "[1, 1, 3]\n");
        assert_eq!(ok(&["phi", "--index", "2", "--direction", "plus"]), "1/2*x1^2 + 1/2*x1\n");
    }

    #[test]
    fn exit_codes() {
        let o = run(["unipotent", "rewrite", "--case", "affine", "--n", "2", "--expr", "x1 +* x2"]);
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("byte"));
        let o = run(["unipotent", "gen", "--case", "affine", "--n", "3", "--name", "u2"]);
        assert_eq!(o.code, 1);
        assert_eq!(o.stderr.lines().count(), 1);
        assert_eq!(run(["unipotent", "relations", "--n", "5"]).code, 1);
        assert_eq!(run(["unipotent", "bogus"]).code, 2);
    }
}
