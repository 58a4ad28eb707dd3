use pinrep::fields::io::write_field;
use pinrep::fields::{band_limited, GridSpec, SpinorFieldGrid};
use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pinrep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn write(field: &SpinorFieldGrid, dir: &Path, name: &str) -> PathBuf {
    let p = dir.join(name);
    write_field(field, std::fs::File::create(&p).unwrap()).unwrap();
    p
}

fn gaussian(grid: GridSpec, mass: f64, width: f64) -> SpinorFieldGrid {
    SpinorFieldGrid::from_fn(1, Some(mass), grid, |x, out| {
        let g = (-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / (2.0 * width * width)).exp();
        out.copy_from_slice(&[g, 0.5 * g, -0.25 * g, 0.0]);
    })
}

#[test]
fn classify_pinor_rotations_is_quaternionic() {
    let v = json(&run(&[
        "classify",
        "--rep",
        "pinor",
        "--subgroup",
        "rotations",
    ]));
    assert_eq!(v["kernel_dim"], 4);
    assert_eq!(v["class"], "QuaternionType");
    assert_eq!(v["dimension"], 4);
    assert_eq!(v["pinrep_version"], pinrep::VERSION);
    assert_eq!(v["seed"], 1);
}

#[test]
fn classify_by_label() {
    let v = json(&run(&["classify", "--2m", "1", "--2n", "1"]));
    assert_eq!(v["class"], "RealType");
    assert_eq!(v["dimension"], 4);
    assert_eq!(
        run(&["classify", "--2m", "0", "--2n", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["classify", "--2m", "1"]).status.code(), Some(2));
}

#[test]
fn cg_example_value() {
    let v = json(&run(&[
        "cg", "--2l", "2", "--2mu", "0", "--2j", "1", "--2n", "1", "--2J", "3", "--2nu", "1",
    ]));
    assert!((v["value"].as_f64().unwrap() - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
    assert!(v["residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn cg_table_is_csv_with_fixed_header() {
    let out = run(&["cg", "--table", "3/2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# pinrep_version="));
    assert_eq!(lines.next().unwrap(), "2l,2mu,2j,2n,2J,2nu,value,residual");
    let body: Vec<&str> = lines.collect();
    assert!(!body.is_empty());
    assert!(body
        .iter()
        .all(|l| l.split(',').count() == 8 && l.split(',').nth(4) == Some("3")));
    assert_eq!(run(&["cg", "--table", "1/3"]).status.code(), Some(1));
}

#[test]
fn cover_and_basis_report_residuals() {
    let v = json(&run(&[
        "cover",
        "--theta",
        "0.3,-0.1,0.7",
        "--b",
        "0.2,0.1,-0.4",
    ]));
    assert!(v["metric_residual"].as_f64().unwrap() < 1e-10);
    assert!(v["conjugation_residual"].as_f64().unwrap() < 1e-10);
    assert!((v["det_lambda"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    let b = json(&run(&["basis"]));
    assert_eq!(b["anticommutator_residual"], 0.0);
    assert_eq!(b["igamma"].as_array().unwrap().len(), 4);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["cover", "--theta", "1,2"]).status.code(), Some(2));
    assert_eq!(
        run(&["propagator", "--ladder", "4-2"]).status.code(),
        Some(2)
    );
    let out = Command::new(env!("CARGO_BIN_EXE_pinrep"))
        .arg("basis")
        .env("PINREP_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let args = ["--seed", "7", "classify", "--rep", "vector"];
    let a = run(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_pinrep"))
        .args(args)
        .env("PINREP_THREADS", "1")
        .output()
        .unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 7);
    let p1 = run(&["propagator", "--radii", "1,2"]);
    let p2 = Command::new(env!("CARGO_BIN_EXE_pinrep"))
        .args(["propagator", "--radii", "1,2"])
        .env("PINREP_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(p1.stdout, p2.stdout);
}

#[test]
fn propagator_csv() {
    let out = run(&["propagator", "--mass", "1", "--radii", "1,2,4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].contains("seed=1"));
    assert_eq!(
        lines[1],
        "radius,rung,p_max,regulator_width,normalized_norm,ratio_to_previous_rung"
    );
    assert_eq!(lines.len(), 2 + 9);
    assert_eq!(run(&["propagator", "--radii", "0"]).status.code(), Some(1));
}

#[test]
fn transform_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let field = band_limited(GridSpec::new(16, 0.25).unwrap(), 1, 1.0, 3, 5);
    let input = write(&field, dir.path(), "psi.bin");
    let hat = dir.path().join("hat.bin");
    let v = json(&run(&[
        "transform",
        "--in",
        input.to_str().unwrap(),
        "--op",
        "fm",
        "--out",
        hat.to_str().unwrap(),
        "--report",
    ]));
    assert!(v["parseval_residual"].as_f64().unwrap() < 1e-8);
    assert!(v["round_trip_residual"].as_f64().unwrap() < 1e-8);
    assert_eq!(v["output_rep"], "mom");
    let back = dir.path().join("back.bin");
    let w = json(&run(&[
        "transform",
        "--in",
        hat.to_str().unwrap(),
        "--op",
        "ifm",
        "--out",
        back.to_str().unwrap(),
    ]));
    assert!(w["parseval_residual"].as_f64().unwrap() < 1e-8);
    let restored = pinrep::fields::io::read_field(std::fs::File::open(&back).unwrap()).unwrap();
    assert!(restored.relative_distance(&field) < 1e-8);

    let e = json(&run(&[
        "transform",
        "--in",
        input.to_str().unwrap(),
        "--op",
        "evolve",
        "--t",
        "0.7",
        "--report",
    ]));
    assert!(e["round_trip_residual"].as_f64().unwrap() < 1e-8);
    // fm needs a coordinate field
    assert_eq!(
        run(&["transform", "--in", hat.to_str().unwrap(), "--op", "fm"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn hankel_report() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        &gaussian(GridSpec::new(16, 0.25).unwrap(), 1.0, 0.5),
        dir.path(),
        "g.bin",
    );
    for op in ["hm", "ihm"] {
        let v = json(&run(&[
            "transform",
            "--in",
            input.to_str().unwrap(),
            "--op",
            op,
            "--report",
        ]));
        assert!(v["parseval_residual"].as_f64().unwrap() < 1e-3, "{op}: {v}");
        assert!(
            v["round_trip_residual"].as_f64().unwrap() < 1e-3,
            "{op}: {v}"
        );
    }
}

#[test]
fn malformed_file_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.bin");
    std::fs::write(&p, b"PINREP1 j2=1 mass=1 rep=coord n=4 dx=0.5\n\x00\x01").unwrap();
    let out = run(&["transform", "--in", p.to_str().unwrap(), "--op", "fm"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("data bytes"));
}

#[test]
fn evolve_via_propagator() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        &gaussian(GridSpec::new(16, 0.3).unwrap(), 1.0, 0.7),
        dir.path(),
        "g.bin",
    );
    let v = json(&run(&[
        "evolve",
        "--in",
        input.to_str().unwrap(),
        "--t",
        "0.5",
        "--via",
        "propagator",
    ]));
    let rungs = v["rungs"].as_array().unwrap();
    assert_eq!(rungs.len(), 3);
    assert_eq!(v["monotone"], true);
    assert!(rungs[2]["relative_error"].as_f64().unwrap() < 5e-2);
    let f = json(&run(&[
        "evolve",
        "--in",
        input.to_str().unwrap(),
        "--t",
        "0.5",
    ]));
    assert!(f["round_trip_residual"].as_f64().unwrap() < 1e-8);
}

#[test]
fn selftest_passes() {
    let v = json(&run(&["selftest"]));
    assert_eq!(v["passed"], true);
}
