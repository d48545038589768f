//! The command surface behind the `certlab` binary. Every subcommand is a
//! thin wrapper over library calls: files go in as JSON, results come out
//! as JSON (or a flattened table), and the exit code states the verdict.
//!
//! Exit codes: `0` success, `1` a well-formed request whose answer is a
//! rejection (failed verification, refuted membership, degenerate branch),
//! `2` usage or input errors, `3` an exhausted work budget. The work budget
//! is taken from `--budget`, else the `CERTLAB_BUDGET` environment
//! variable, else one million.

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::circuitcert::Circuit;
use crate::cubecert::{
    moment_matrix, sa_solve, PeError, PseudoExpectation, PseudoExpectationJson, SaError, SaOutcome,
};
use crate::hierarchy::{
    self, Certificate, CertificateJson, ConstraintSystem, ConstraintSystemJson, CpopKind, Shape,
};
use crate::polycore::{Polynomial, PolynomialJson};
use crate::polytope::{
    self, MediatedSetError, PointSet, PointSetJson, SimplexClassifyError, SimplexKind,
};
use crate::ratio::{parse_rational, Rational};

/// Everything a finished invocation produced. The binary prints the two
/// streams verbatim and exits with the code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one invocation, reading `CERTLAB_BUDGET` from the process
/// environment. `args` excludes the binary name.
pub fn run<S: AsRef<str>>(args: &[S]) -> CommandResult {
    let env = std::env::var("CERTLAB_BUDGET").ok();
    run_with_env(args, env.as_deref())
}

/// Like [`run`] but with the environment budget passed explicitly, for
/// callers and tests that must not touch process state.
pub fn run_with_env<S: AsRef<str>>(args: &[S], env_budget: Option<&str>) -> CommandResult {
    let full: Vec<&str> = std::iter::once("certlab")
        .chain(args.iter().map(|a| a.as_ref()))
        .collect();
    let cli = match Cli::try_parse_from(&full) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandResult {
                    exit_code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => CommandResult {
                    exit_code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    let format = cli.format;
    match dispatch(cli.command, env_budget) {
        Ok(Report { value, exit_code }) => CommandResult {
            exit_code,
            stdout: match format {
                Format::Json => format!("{value}\n"),
                Format::Table => render_table(&value),
            },
            stderr: String::new(),
        },
        Err(f) => CommandResult {
            exit_code: f.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message()),
        },
    }
}

#[derive(Parser)]
#[command(
    name = "certlab",
    version,
    about = "Exact nonnegativity certificates: construct, convert, verify"
)]
struct Cli {
    /// Output rendering for results on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ShapeArg {
    Putinar,
    Schmuedgen,
}

impl From<ShapeArg> for Shape {
    fn from(s: ShapeArg) -> Shape {
        match s {
            ShapeArg::Putinar => Shape::Putinar,
            ShapeArg::Schmuedgen => Shape::Schmuedgen,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConvertKind {
    Sonc,
    Sa,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WitnessKind {
    Motzkin,
    Quadric,
    CpopSos,
    CpopSonc,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a polynomial: circuit or not, nonnegative, sum of squares.
    Classify {
        /// Polynomial JSON file.
        #[arg(long)]
        poly: PathBuf,
        /// Work budget override.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Compute the maximal mediated set of an even point configuration.
    Mms {
        /// Point set JSON file.
        #[arg(long)]
        points: PathBuf,
        /// Work budget override.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Verify a certificate for `f - lambda >= 0` on a constrained set.
    Verify {
        /// Polynomial JSON file for the objective `f`.
        #[arg(long)]
        poly: PathBuf,
        /// Constraint system JSON file.
        #[arg(long)]
        system: PathBuf,
        /// Certificate JSON file.
        #[arg(long)]
        cert: PathBuf,
        /// Rational bound to subtract, default `0`.
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Convert a certificate downward: sdsos grams to circuits (`sonc`),
    /// circuits over the cube to junta form (`sa`).
    Convert {
        /// Certificate JSON file.
        #[arg(long)]
        cert: PathBuf,
        /// Target certificate kind.
        #[arg(long, value_enum)]
        kind: ConvertKind,
        /// Constraint system JSON file (required for `sa`).
        #[arg(long)]
        system: Option<PathBuf>,
    },
    /// Maximize `lambda` with `f - lambda` certified by nonnegative juntas
    /// times constraint products over the 0/1 cube.
    SaSolve {
        /// Constraint system JSON file; its `objective` field supplies `f`
        /// unless `--poly` is given.
        #[arg(long)]
        system: PathBuf,
        /// Polynomial JSON file overriding the objective.
        #[arg(long)]
        poly: Option<PathBuf>,
        /// Even certificate degree.
        #[arg(long)]
        degree: usize,
        /// Which constraint products to allow.
        #[arg(long, value_enum, default_value_t = ShapeArg::Putinar)]
        shape: ShapeArg,
        /// Work budget override.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Print the moment matrix of a localizer against a pseudoexpectation.
    Moment {
        /// Pseudoexpectation JSON file.
        #[arg(long)]
        pe: PathBuf,
        /// Polynomial JSON file for the localizer.
        #[arg(long)]
        poly: PathBuf,
        /// Even matrix degree.
        #[arg(long)]
        degree: usize,
    },
    /// Condition a pseudoexpectation on one boolean variable.
    Condition {
        /// Pseudoexpectation JSON file.
        #[arg(long)]
        pe: PathBuf,
        /// Variable index to fix.
        #[arg(long)]
        var: usize,
        /// Value to fix it to.
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        bit: u8,
    },
    /// Emit a stock witness polynomial or constrained problem.
    Witness {
        /// Which family to emit.
        #[arg(long, value_enum)]
        kind: WitnessKind,
        /// Number of variables.
        #[arg(long)]
        n: usize,
        /// Tolerance parameter for the constrained families, default `1`.
        #[arg(long)]
        t: Option<usize>,
    },
    /// Run the separating checks between the certificate families.
    Separation {
        /// Number of variables, at least two.
        #[arg(long)]
        n: usize,
        /// Tolerance parameter for the constrained witnesses, default `1`.
        #[arg(long)]
        t: Option<usize>,
    },
}

struct Report {
    value: Value,
    exit_code: i32,
}

impl Report {
    fn ok(value: Value) -> Result<Report, Failure> {
        Ok(Report {
            value,
            exit_code: 0,
        })
    }

    fn rejected(value: Value) -> Result<Report, Failure> {
        Ok(Report {
            value,
            exit_code: 1,
        })
    }
}

enum Failure {
    Usage(String),
    Domain(String),
    Budget(String),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 1,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Domain(m) | Failure::Budget(m) => m,
        }
    }
}

fn resolve_budget(flag: Option<u64>, env: Option<&str>) -> Result<Budget, Failure> {
    if let Some(limit) = flag {
        return Ok(Budget::new(limit));
    }
    match env {
        Some(text) => text
            .trim()
            .parse::<u64>()
            .map(Budget::new)
            .map_err(|_| Failure::Usage(format!("CERTLAB_BUDGET must be an integer, got {text:?}"))),
        None => Ok(Budget::default()),
    }
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn read_polynomial(path: &PathBuf) -> Result<Polynomial, Failure> {
    let text = read_file(path)?;
    let parsed: PolynomialJson = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Polynomial::from_json(&parsed).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_points(path: &PathBuf) -> Result<PointSet, Failure> {
    let text = read_file(path)?;
    let parsed: PointSetJson = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    PointSet::from_json(&parsed).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_system_json(path: &PathBuf) -> Result<ConstraintSystemJson, Failure> {
    let text = read_file(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_system(path: &PathBuf) -> Result<ConstraintSystem, Failure> {
    let parsed = read_system_json(path)?;
    ConstraintSystem::from_json(&parsed)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_certificate(path: &PathBuf) -> Result<Certificate, Failure> {
    let text = read_file(path)?;
    let parsed: CertificateJson = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Certificate::from_json(&parsed).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_pe(path: &PathBuf) -> Result<PseudoExpectation, Failure> {
    let text = read_file(path)?;
    let parsed: PseudoExpectationJson = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    PseudoExpectation::from_json(&parsed)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn simplex_kind_name(kind: SimplexKind) -> &'static str {
    match kind {
        SimplexKind::H => "h",
        SimplexKind::M => "m",
        SimplexKind::Intermediate => "intermediate",
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable output")
}

fn dispatch(command: Command, env_budget: Option<&str>) -> Result<Report, Failure> {
    match command {
        Command::Classify { poly, budget } => {
            let budget = resolve_budget(budget, env_budget)?;
            let f = read_polynomial(&poly)?;
            classify_cmd(&f, &budget)
        }
        Command::Mms { points, budget } => {
            let budget = resolve_budget(budget, env_budget)?;
            let pts = read_points(&points)?;
            mms_cmd(&pts, &budget)
        }
        Command::Verify {
            poly,
            system,
            cert,
            lambda,
        } => {
            let f = read_polynomial(&poly)?;
            let system = read_system(&system)?;
            let cert = read_certificate(&cert)?;
            let lambda = match lambda {
                Some(text) => parse_rational(&text)
                    .map_err(|e| Failure::Usage(format!("--lambda: {e}")))?,
                None => Rational::zero(),
            };
            let report = hierarchy::verify(&f, &lambda, &system, &cert);
            let value = json!({
                "accepted": report.accepted,
                "failures": report.failures,
                "residual_terms": report.residual.num_terms(),
            });
            if report.accepted {
                Report::ok(value)
            } else {
                Report::rejected(value)
            }
        }
        Command::Convert { cert, kind, system } => {
            let cert = read_certificate(&cert)?;
            let converted = match kind {
                ConvertKind::Sonc => hierarchy::convert_sdsos_to_sonc(&cert),
                ConvertKind::Sa => {
                    let path = system.ok_or_else(|| {
                        Failure::Usage("--system is required when converting to sa".to_string())
                    })?;
                    let system = read_system(&path)?;
                    hierarchy::convert_sonc_to_sa(&cert, &system)
                }
            }
            .map_err(|e| Failure::Domain(e.to_string()))?;
            Report::ok(to_value(&converted.to_json()))
        }
        Command::SaSolve {
            system,
            poly,
            degree,
            shape,
            budget,
        } => {
            let budget = resolve_budget(budget, env_budget)?;
            let system_json = read_system_json(&system)?;
            let parsed_system = ConstraintSystem::from_json(&system_json)
                .map_err(|e| Failure::Usage(format!("{}: {e}", system.display())))?;
            let f = match poly {
                Some(path) => read_polynomial(&path)?,
                None => match &system_json.objective {
                    Some(obj) => Polynomial::from_json(obj).map_err(|e| {
                        Failure::Usage(format!("{}: objective: {e}", system.display()))
                    })?,
                    None => {
                        return Err(Failure::Usage(
                            "no objective: pass --poly or put an objective in the system file"
                                .to_string(),
                        ))
                    }
                },
            };
            sa_solve_cmd(&f, &parsed_system, degree, shape.into(), &budget)
        }
        Command::Moment { pe, poly, degree } => {
            let pe = read_pe(&pe)?;
            let g = read_polynomial(&poly)?;
            let m = moment_matrix(&pe, &g, degree).map_err(pe_failure)?;
            Report::ok(to_value(&m.to_json()))
        }
        Command::Condition { pe, var, bit } => {
            let pe = read_pe(&pe)?;
            let conditioned = pe.condition(var, bit == 1).map_err(pe_failure)?;
            Report::ok(to_value(&conditioned.to_json()))
        }
        Command::Witness { kind, n, t } => witness_cmd(kind, n, t.unwrap_or(1)),
        Command::Separation { n, t } => {
            if n < 2 {
                return Err(Failure::Usage(
                    "separation needs at least two variables".to_string(),
                ));
            }
            let report = hierarchy::separation_report(n, t.unwrap_or(1));
            Report::ok(to_value(&report))
        }
    }
}

fn pe_failure(e: PeError) -> Failure {
    match e {
        PeError::VariableOutOfRange { .. } | PeError::NvarsMismatch { .. } => {
            Failure::Usage(e.to_string())
        }
        _ => Failure::Domain(e.to_string()),
    }
}

fn classify_cmd(f: &Polynomial, budget: &Budget) -> Result<Report, Failure> {
    match Circuit::from_polynomial(f) {
        Ok(c) => {
            let simplex = match polytope::classify_simplex_budgeted(&c.outer_vertex_set(), budget) {
                Ok(kind) => Value::String(simplex_kind_name(kind).to_string()),
                Err(SimplexClassifyError::Budget(e))
                | Err(SimplexClassifyError::Mediated(MediatedSetError::Budget(e))) => {
                    return Err(Failure::Budget(e.to_string()))
                }
                Err(other) => return Err(Failure::Domain(other.to_string())),
            };
            let lambda = c
                .lambda()
                .map(|l| Value::Array(l.iter().map(|r| json!(crate::ratio::format_rational(r))).collect()))
                .unwrap_or(Value::Null);
            let comparison = c
                .inner_versus_bound()
                .map(|o| {
                    Value::String(
                        match o {
                            std::cmp::Ordering::Less => "below",
                            std::cmp::Ordering::Equal => "equal",
                            std::cmp::Ordering::Greater => "above",
                        }
                        .to_string(),
                    )
                })
                .unwrap_or(Value::Null);
            Report::ok(json!({
                "circuit": true,
                "nonnegative": c.is_nonnegative(),
                "sos": c.is_sum_of_squares(),
                "details": {
                    "degenerate": c.is_degenerate(),
                    "lambda": lambda,
                    "inner_versus_theta": comparison,
                    "outer_vertices": c.outer_vertex_set().to_vec(),
                    "simplex": simplex,
                },
            }))
        }
        Err(e) => Report::ok(json!({
            "circuit": false,
            "nonnegative": Value::Null,
            "sos": Value::Null,
            "details": { "reason": e.to_string() },
        })),
    }
}

fn mms_cmd(pts: &PointSet, budget: &Budget) -> Result<Report, Failure> {
    let mms = polytope::maximal_mediated_set_budgeted(pts, budget).map_err(|e| match e {
        MediatedSetError::Budget(b) => Failure::Budget(b.to_string()),
        other => Failure::Domain(other.to_string()),
    })?;
    let kind = match polytope::classify_simplex_budgeted(pts, budget) {
        Ok(k) => Value::String(simplex_kind_name(k).to_string()),
        Err(SimplexClassifyError::NotSimplex) => Value::Null,
        Err(SimplexClassifyError::Budget(e))
        | Err(SimplexClassifyError::Mediated(MediatedSetError::Budget(e))) => {
            return Err(Failure::Budget(e.to_string()))
        }
        Err(other) => return Err(Failure::Domain(other.to_string())),
    };
    Report::ok(json!({
        "kind": kind,
        "size": mms.len(),
        "points": mms.to_vec(),
    }))
}

fn sa_solve_cmd(
    f: &Polynomial,
    system: &ConstraintSystem,
    degree: usize,
    shape: Shape,
    budget: &Budget,
) -> Result<Report, Failure> {
    let outcome = sa_solve(f, system, degree, shape, budget).map_err(|e| match e {
        SaError::Budget(b) => Failure::Budget(b.to_string()),
        SaError::NvarsMismatch { .. } => Failure::Usage(e.to_string()),
        other => Failure::Domain(other.to_string()),
    })?;
    match outcome {
        SaOutcome::Bounded { bound, certificate } => Report::ok(json!({
            "outcome": "bounded",
            "bound": crate::ratio::format_rational(&bound),
            "certificate": to_value(&certificate.to_json()),
        })),
        SaOutcome::Infeasible { outcome, .. } => Report::ok(json!({
            "outcome": "infeasible",
            "lp": to_value(&outcome.to_json()),
        })),
        SaOutcome::Unbounded { outcome, .. } => Report::ok(json!({
            "outcome": "unbounded",
            "lp": to_value(&outcome.to_json()),
        })),
    }
}

fn witness_cmd(kind: WitnessKind, n: usize, t: usize) -> Result<Report, Failure> {
    match kind {
        WitnessKind::Quadric => {
            if n < 1 {
                return Err(Failure::Usage("--n must be at least 1".to_string()));
            }
            Report::ok(to_value(&hierarchy::witness_signed_quadric(n).to_json()))
        }
        WitnessKind::Motzkin => {
            if n < 2 {
                return Err(Failure::Usage("--n must be at least 2".to_string()));
            }
            Report::ok(to_value(
                &hierarchy::witness_generalized_motzkin(n).to_json(),
            ))
        }
        WitnessKind::CpopSos | WitnessKind::CpopSonc => {
            let cpop_kind = match kind {
                WitnessKind::CpopSos => CpopKind::SosFriendly,
                _ => CpopKind::SoncFriendly,
            };
            if cpop_kind == CpopKind::SoncFriendly && n < 2 {
                return Err(Failure::Usage("--n must be at least 2".to_string()));
            }
            if cpop_kind == CpopKind::SosFriendly && n < 1 {
                return Err(Failure::Usage("--n must be at least 1".to_string()));
            }
            let (f, system) = hierarchy::witness_cpop(cpop_kind, n, t);
            let mut out = system.to_json();
            out.objective = Some(f.to_json());
            Report::ok(to_value(&out))
        }
    }
}

/// Flattens a JSON value into `path = value` lines for terminal reading.
fn render_table(value: &Value) -> String {
    fn is_scalar(v: &Value) -> bool {
        !matches!(v, Value::Array(_) | Value::Object(_))
    }
    fn scalar_text(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, val) in map {
                    let path = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&path, val, out);
                }
            }
            Value::Array(items) if items.iter().all(is_scalar) => {
                let joined: Vec<String> = items.iter().map(scalar_text).collect();
                out.push_str(&format!("{prefix} = [{}]\n", joined.join(", ")));
            }
            Value::Array(items) => {
                for (i, item) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), item, out);
                }
            }
            scalar => {
                out.push_str(&format!("{prefix} = {}\n", scalar_text(scalar)));
            }
        }
    }
    let mut out = String::new();
    walk("", value, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_temp(name: &str, content: &str) -> PathBuf {
        let dir = std::env::temp_dir().join("certlab-cli-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        std::fs::write(&path, content).unwrap();
        path
    }

    #[test]
    fn missing_subcommand_is_a_usage_error() {
        let r = run_with_env::<&str>(&[], None);
        assert_eq!(r.exit_code, 2);
        assert!(r.stdout.is_empty());
        assert!(!r.stderr.is_empty());
    }

    #[test]
    fn help_exits_zero() {
        let r = run_with_env(&["--help"], None);
        assert_eq!(r.exit_code, 0);
        assert!(r.stdout.contains("certlab"));
    }

    #[test]
    fn classify_reads_a_polynomial_file() {
        let motzkin = hierarchy::witness_generalized_motzkin(2);
        let path = write_temp(
            "motzkin2.json",
            &serde_json::to_string(&motzkin.to_json()).unwrap(),
        );
        let r = run_with_env(&["classify", "--poly", path.to_str().unwrap()], None);
        assert_eq!(r.exit_code, 0, "stderr: {}", r.stderr);
        let v: Value = serde_json::from_str(&r.stdout).unwrap();
        assert_eq!(v["circuit"], json!(true));
        assert_eq!(v["nonnegative"], json!(true));
        assert_eq!(v["sos"], json!(false));
        assert_eq!(v["details"]["simplex"], json!("m"));
    }

    #[test]
    fn malformed_input_exits_two() {
        let path = write_temp("garbage.json", "{ not json");
        let r = run_with_env(&["classify", "--poly", path.to_str().unwrap()], None);
        assert_eq!(r.exit_code, 2);
        assert!(r.stdout.is_empty());
    }

    #[test]
    fn env_budget_is_honored_and_flag_wins() {
        let motzkin = hierarchy::witness_generalized_motzkin(2);
        let path = write_temp(
            "motzkin2-budget.json",
            &serde_json::to_string(&motzkin.to_json()).unwrap(),
        );
        let tiny = run_with_env(
            &["classify", "--poly", path.to_str().unwrap()],
            Some("1"),
        );
        assert_eq!(tiny.exit_code, 3, "stderr: {}", tiny.stderr);
        let overridden = run_with_env(
            &[
                "classify",
                "--poly",
                path.to_str().unwrap(),
                "--budget",
                "1000000",
            ],
            Some("1"),
        );
        assert_eq!(overridden.exit_code, 0, "stderr: {}", overridden.stderr);
        let bad_env = run_with_env(&["classify", "--poly", path.to_str().unwrap()], Some("many"));
        assert_eq!(bad_env.exit_code, 2);
    }

    #[test]
    fn table_format_flattens_output() {
        let r = run_with_env(&["witness", "--kind", "quadric", "--n", "1", "--format", "table"], None);
        assert_eq!(r.exit_code, 0, "stderr: {}", r.stderr);
        assert!(r.stdout.contains("n = 1"));
        assert!(!r.stdout.contains('{'));
    }
}
