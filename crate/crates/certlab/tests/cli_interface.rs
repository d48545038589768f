//! End-to-end checks of the command-line surface: exit codes, file parsing,
//! the budget environment variable, output formats, and agreement between
//! subcommand output and the underlying library calls.

use std::path::PathBuf;

use certlab::cli::{run_with_env, CommandResult};
use certlab::cubecert::{moment_matrix, PseudoExpectation};
use certlab::hierarchy::{
    motzkin_sonc_certificate, quadric_sos_certificate, witness_cpop, witness_generalized_motzkin,
    witness_signed_quadric, ConstraintSystem, ConstraintSystemJson, CpopKind,
};
use certlab::polycore::{Exponent, Polynomial, PolynomialJson};
use certlab::ratio::{rat, ratio};

fn invoke(args: &[String], env_budget: Option<&str>) -> CommandResult {
    run_with_env(args, env_budget)
}

fn args(parts: &[&str]) -> Vec<String> {
    parts.iter().map(|s| s.to_string()).collect()
}

fn write_temp(name: &str, content: &str) -> String {
    let dir = std::env::temp_dir().join("certlab_cli_interface");
    std::fs::create_dir_all(&dir).unwrap();
    let path: PathBuf = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.to_str().unwrap().to_string()
}

fn json_of<T: serde::Serialize>(t: &T) -> String {
    serde_json::to_string(t).unwrap()
}

#[test]
fn help_and_version_exit_zero_on_stdout() {
    for flag in ["--help", "--version"] {
        let r = invoke(&args(&[flag]), None);
        assert_eq!(r.exit_code, 0, "{flag}");
        assert!(!r.stdout.is_empty());
        assert!(r.stderr.is_empty());
    }
    let sub = invoke(&args(&["classify", "--help"]), None);
    assert_eq!(sub.exit_code, 0);
}

#[test]
fn usage_errors_exit_two_on_stderr() {
    let cases: Vec<Vec<String>> = vec![
        args(&[]),
        args(&["frobnicate"]),
        args(&["classify"]),
        args(&["witness", "--kind", "motzkin", "--n", "1"]),
        args(&["separation", "--n", "1"]),
        args(&["classify", "--poly", "/nonexistent/certlab.json"]),
    ];
    for case in cases {
        let r = invoke(&case, None);
        assert_eq!(r.exit_code, 2, "case {case:?}");
        assert!(r.stdout.is_empty(), "case {case:?}");
        assert!(!r.stderr.is_empty(), "case {case:?}");
    }
}

#[test]
fn classify_reports_circuit_facts_from_a_file() {
    let poly = write_temp(
        "classify_motzkin.json",
        &json_of(&witness_generalized_motzkin(2).to_json()),
    );
    let r = invoke(&args(&["classify", "--poly", &poly]), None);
    assert_eq!(r.exit_code, 0, "stderr: {}", r.stderr);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["circuit"], serde_json::json!(true));
    assert_eq!(v["nonnegative"], serde_json::json!(true));
    assert_eq!(v["sos"], serde_json::json!(false));
    assert_eq!(v["details"]["simplex"], serde_json::json!("m"));
    assert_eq!(v["details"]["inner_versus_theta"], serde_json::json!("equal"));

    let malformed = write_temp("classify_malformed.json", "{\"n\": 2, \"terms\": 7}");
    let bad = invoke(&args(&["classify", "--poly", &malformed]), None);
    assert_eq!(bad.exit_code, 2);
}

#[test]
fn witness_output_matches_the_library() {
    let r = invoke(&args(&["witness", "--kind", "quadric", "--n", "3"]), None);
    assert_eq!(r.exit_code, 0);
    let parsed: PolynomialJson = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(
        Polynomial::from_json(&parsed).unwrap(),
        witness_signed_quadric(3)
    );

    let r = invoke(
        &args(&["witness", "--kind", "cpop-sonc", "--n", "2", "--t", "1"]),
        None,
    );
    assert_eq!(r.exit_code, 0);
    let parsed: ConstraintSystemJson = serde_json::from_str(&r.stdout).unwrap();
    let (f, system) = witness_cpop(CpopKind::SoncFriendly, 2, 1);
    assert_eq!(
        Polynomial::from_json(parsed.objective.as_ref().unwrap()).unwrap(),
        f
    );
    let parsed_system = ConstraintSystem::from_json(&parsed).unwrap();
    assert_eq!(parsed_system.constraints().len(), system.constraints().len());
    assert_eq!(
        parsed_system.constraints()[0].poly,
        system.constraints()[0].poly
    );
}

#[test]
fn verify_accepts_with_zero_and_rejects_with_a_positive_lambda() {
    let poly = write_temp(
        "verify_quadric.json",
        &json_of(&witness_signed_quadric(2).to_json()),
    );
    let system = write_temp(
        "verify_empty_system.json",
        &json_of(&ConstraintSystem::new(2).to_json()),
    );
    let cert = write_temp(
        "verify_quadric_cert.json",
        &json_of(&quadric_sos_certificate(2).to_json()),
    );
    let ok = invoke(
        &args(&["verify", "--poly", &poly, "--system", &system, "--cert", &cert]),
        None,
    );
    assert_eq!(ok.exit_code, 0, "stderr: {}", ok.stderr);
    let v: serde_json::Value = serde_json::from_str(&ok.stdout).unwrap();
    assert_eq!(v["accepted"], serde_json::json!(true));
    assert_eq!(v["residual_terms"], serde_json::json!(0));

    let rejected = invoke(
        &args(&[
            "verify", "--poly", &poly, "--system", &system, "--cert", &cert, "--lambda", "1/2",
        ]),
        None,
    );
    assert_eq!(rejected.exit_code, 1);
    let v: serde_json::Value = serde_json::from_str(&rejected.stdout).unwrap();
    assert_eq!(v["accepted"], serde_json::json!(false));
}

#[test]
fn convert_to_junta_form_requires_a_system() {
    let cert = write_temp(
        "convert_motzkin_cert.json",
        &json_of(&motzkin_sonc_certificate(2).to_json()),
    );
    let missing = invoke(&args(&["convert", "--cert", &cert, "--kind", "sa"]), None);
    assert_eq!(missing.exit_code, 2);
    assert!(missing.stderr.contains("--system"));

    let system = write_temp(
        "convert_cube_system.json",
        &json_of(&ConstraintSystem::new(2).with_hypercube().to_json()),
    );
    let ok = invoke(
        &args(&["convert", "--cert", &cert, "--kind", "sa", "--system", &system]),
        None,
    );
    assert_eq!(ok.exit_code, 0, "stderr: {}", ok.stderr);
    let v: serde_json::Value = serde_json::from_str(&ok.stdout).unwrap();
    assert_eq!(v["kind"], serde_json::json!("sa"));

    let wrong_kind = invoke(&args(&["convert", "--cert", &cert, "--kind", "sonc"]), None);
    assert_eq!(wrong_kind.exit_code, 1, "sonc input cannot convert to sonc");
}

#[test]
fn budget_env_variable_flag_priority_and_exit_code() {
    let poly = write_temp(
        "budget_motzkin.json",
        &json_of(&witness_generalized_motzkin(2).to_json()),
    );
    let starved = invoke(&args(&["classify", "--poly", &poly]), Some("1"));
    assert_eq!(starved.exit_code, 3, "stderr: {}", starved.stderr);
    assert!(!starved.stderr.is_empty());

    let flag_wins = invoke(
        &args(&["classify", "--poly", &poly, "--budget", "1000000"]),
        Some("1"),
    );
    assert_eq!(flag_wins.exit_code, 0, "stderr: {}", flag_wins.stderr);

    let bad_env = invoke(&args(&["classify", "--poly", &poly]), Some("nonsense"));
    assert_eq!(bad_env.exit_code, 2);
}

#[test]
fn condition_degenerate_branch_is_a_domain_rejection() {
    let pe = PseudoExpectation::from_distribution(1, &[vec![true]], &[rat(1)], 2).unwrap();
    let path = write_temp("condition_point_mass.json", &json_of(&pe.to_json()));
    let degenerate = invoke(
        &args(&["condition", "--pe", &path, "--var", "0", "--bit", "0"]),
        None,
    );
    assert_eq!(degenerate.exit_code, 1, "stderr: {}", degenerate.stderr);

    let fine = invoke(
        &args(&["condition", "--pe", &path, "--var", "0", "--bit", "1"]),
        None,
    );
    assert_eq!(fine.exit_code, 0, "stderr: {}", fine.stderr);

    let out_of_range = invoke(
        &args(&["condition", "--pe", &path, "--var", "0", "--bit", "2"]),
        None,
    );
    assert_eq!(out_of_range.exit_code, 2);

    let bad_var = invoke(
        &args(&["condition", "--pe", &path, "--var", "5", "--bit", "1"]),
        None,
    );
    assert_eq!(bad_var.exit_code, 2, "variable out of range is a usage error");
}

#[test]
fn moment_subcommand_matches_the_library_matrix() {
    let n = 2;
    let points: Vec<Vec<bool>> = (0..4).map(|m| vec![m & 1 == 1, m >> 1 & 1 == 1]).collect();
    let weights = vec![ratio(1, 4); 4];
    let pe = PseudoExpectation::from_distribution(n, &points, &weights, 2).unwrap();
    let pe_path = write_temp("moment_uniform_pe.json", &json_of(&pe.to_json()));
    let one = write_temp("moment_one.json", &json_of(&Polynomial::one(n).to_json()));
    let r = invoke(
        &args(&["moment", "--pe", &pe_path, "--poly", &one, "--degree", "2"]),
        None,
    );
    assert_eq!(r.exit_code, 0, "stderr: {}", r.stderr);
    let from_cli: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    let direct = moment_matrix(&pe, &Polynomial::one(n), 2).unwrap();
    assert_eq!(from_cli, serde_json::to_value(direct.to_json()).unwrap());
}

#[test]
fn sa_solve_reads_objective_from_flag_and_reports_outcomes() {
    let n = 2;
    let mut system = ConstraintSystem::new(n).with_hypercube();
    let halfplane = Polynomial::from_terms(
        n,
        vec![
            (Exponent::zeros(n), ratio(3, 2)),
            (Exponent::unit(n, 0), rat(-1)),
            (Exponent::unit(n, 1), rat(-1)),
        ],
    )
    .unwrap();
    system.push("halfplane", halfplane).unwrap();
    let system_path = write_temp("sa_halfplane_system.json", &json_of(&system.to_json()));
    let objective = Polynomial::from_terms(
        n,
        vec![
            (Exponent::unit(n, 0), rat(-1)),
            (Exponent::unit(n, 1), rat(-1)),
        ],
    )
    .unwrap();
    let poly_path = write_temp("sa_objective.json", &json_of(&objective.to_json()));

    let bounded = invoke(
        &args(&[
            "sa-solve", "--system", &system_path, "--poly", &poly_path, "--degree", "2",
        ]),
        None,
    );
    assert_eq!(bounded.exit_code, 0, "stderr: {}", bounded.stderr);
    let v: serde_json::Value = serde_json::from_str(&bounded.stdout).unwrap();
    assert_eq!(v["outcome"], serde_json::json!("bounded"));
    assert_eq!(v["bound"], serde_json::json!("-3/2"));
    assert!(v["certificate"].is_object());

    let no_objective = invoke(
        &args(&["sa-solve", "--system", &system_path, "--degree", "2"]),
        None,
    );
    assert_eq!(no_objective.exit_code, 2, "the system file has no objective");

    let mut contradictory = ConstraintSystem::new(1).with_hypercube();
    contradictory
        .push("impossible", Polynomial::constant(1, rat(-1)))
        .unwrap();
    let bad_path = write_temp(
        "sa_contradictory_system.json",
        &json_of(&contradictory.to_json()),
    );
    let x0 = write_temp(
        "sa_x0.json",
        &json_of(&Polynomial::variable(1, 0).to_json()),
    );
    let unbounded = invoke(
        &args(&[
            "sa-solve", "--system", &bad_path, "--poly", &x0, "--degree", "2",
        ]),
        None,
    );
    assert_eq!(unbounded.exit_code, 0, "stderr: {}", unbounded.stderr);
    let v: serde_json::Value = serde_json::from_str(&unbounded.stdout).unwrap();
    assert_eq!(v["outcome"], serde_json::json!("unbounded"));
    assert!(v["lp"].is_object());
}

#[test]
fn table_format_renders_flat_assignments() {
    let r = invoke(&args(&["separation", "--n", "2", "--format", "table"]), None);
    assert_eq!(r.exit_code, 0);
    assert!(r.stdout.contains("quadric_is_sos = true"));
    assert!(r.stdout.contains("motzkin_not_sos = true"));
    assert!(!r.stdout.trim_start().starts_with('{'));

    let json_run = invoke(&args(&["separation", "--n", "2"]), None);
    let v: serde_json::Value = serde_json::from_str(&json_run.stdout).unwrap();
    assert!(v.is_object(), "default format stays machine readable");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let poly = write_temp(
        "determinism_motzkin.json",
        &json_of(&witness_generalized_motzkin(3).to_json()),
    );
    for case in [
        args(&["classify", "--poly", &poly]),
        args(&["witness", "--kind", "cpop-sos", "--n", "2"]),
        args(&["separation", "--n", "2"]),
    ] {
        let a = invoke(&case, None);
        let b = invoke(&case, None);
        assert_eq!(a.exit_code, b.exit_code);
        assert_eq!(a.stdout, b.stdout, "case {case:?}");
    }
}
