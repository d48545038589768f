//! The `certlab` binary drives the same library through JSON files. This
//! example exercises the command layer in process: it writes a polynomial
//! and a constraint system to disk, then classifies, solves, and verifies
//! through the CLI entry point.

use certlab::cli;
use certlab::hierarchy::{self, ConstraintSystem};
use certlab::polycore::{Exponent, Polynomial};
use certlab::ratio::{rat, ratio};

fn main() {
    let dir = std::env::temp_dir().join("certlab-json-example");
    std::fs::create_dir_all(&dir).unwrap();

    // Classify the circuit witness from a polynomial file.
    let motzkin = hierarchy::witness_generalized_motzkin(2);
    let poly_path = dir.join("motzkin2.json");
    std::fs::write(
        &poly_path,
        serde_json::to_string_pretty(&motzkin.to_json()).unwrap(),
    )
    .unwrap();
    let r = cli::run(&["classify", "--poly", poly_path.to_str().unwrap()]);
    println!("$ certlab classify --poly motzkin2.json");
    println!("exit {}\n{}", r.exit_code, r.stdout);

    // Solve the half-plane cut of the cube from a system file that carries
    // its own objective.
    let n = 2;
    let g = Polynomial::from_terms(
        n,
        vec![
            (Exponent::zeros(n), ratio(3, 2)),
            (Exponent::new(vec![1, 0]), rat(-1)),
            (Exponent::new(vec![0, 1]), rat(-1)),
        ],
    )
    .unwrap();
    let f = Polynomial::from_terms(
        n,
        vec![
            (Exponent::new(vec![1, 0]), rat(-1)),
            (Exponent::new(vec![0, 1]), rat(-1)),
        ],
    )
    .unwrap();
    let mut system = ConstraintSystem::new(n).with_hypercube();
    system.push("half", g).unwrap();
    let mut system_json = system.to_json();
    system_json.objective = Some(f.to_json());
    let system_path = dir.join("cube2_halfplane.json");
    std::fs::write(
        &system_path,
        serde_json::to_string_pretty(&system_json).unwrap(),
    )
    .unwrap();

    for degree in ["2", "4"] {
        let r = cli::run(&[
            "sa-solve",
            "--system",
            system_path.to_str().unwrap(),
            "--degree",
            degree,
        ]);
        let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
        println!("$ certlab sa-solve --system cube2_halfplane.json --degree {degree}");
        println!("exit {}, bound {}", r.exit_code, v["bound"]);
    }
    println!();

    // Emit a witness and read it back through the table renderer.
    let r = cli::run(&["witness", "--kind", "motzkin", "--n", "2", "--format", "table"]);
    println!("$ certlab witness --kind motzkin --n 2 --format table");
    print!("{}", r.stdout);
}
