use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

fn write_config(dir: &Path, name: &str, cfg: &Value) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(cfg).unwrap()).unwrap();
    path
}

fn spinsurf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinsurf")).args(args).output().expect("binary runs")
}

fn run(config: &Path, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    spinsurf(&args)
}

fn report(out: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap()
}

fn flat_torus(n: usize) -> Value {
    json!({
        "grid": {"nx": n, "ny": n, "extent": [TWO_PI, TWO_PI], "periodic": [true, true]},
        "beta": "2*x",
        "potential": "from_beta",
        "left": {"analytic_family": {"p0": [0.5, 0.0], "a": 0.0, "b": 1.0, "alpha": [1.0, 0.0]}},
        "right": "canonical"
    })
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn generate_flat_torus_writes_exports() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "torus.json", &flat_torus(128));
    let out = dir.path().join("out");
    let o = run(&cfg, &out, &["generate"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = report(&out);
    for key in ["closedness_sup", "conformality_sup", "lagrangian_sup"] {
        assert!(r[key].as_f64().unwrap() <= 1e-8, "{key}: {}", r[key]);
    }
    assert_eq!(r["errors"], json!([]));
    assert!(r["equivalence_distance"].is_null());
    let csv = std::fs::read_to_string(out.join("surface.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 128 * 128);
    let obj = std::fs::read_to_string(out.join("surface.obj")).unwrap();
    assert!(obj.contains("# dropped axis: X4"));
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 2 * 127 * 127);
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "torus.json", &flat_torus(32));
    let out = dir.path().join("out");
    assert!(run(&cfg, &out, &["generate"]).status.success());
    let first: Vec<Vec<u8>> =
        ["surface.csv", "surface.obj", "report.json"].iter().map(|f| std::fs::read(out.join(f)).unwrap()).collect();
    assert!(run(&cfg, &out, &["generate"]).status.success());
    for (f, bytes) in ["surface.csv", "surface.obj", "report.json"].iter().zip(first) {
        assert_eq!(std::fs::read(out.join(f)).unwrap(), bytes, "{f}");
    }
}

#[test]
fn picard_plane_from_zero_beta() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = flat_torus(32);
    cfg["beta"] = json!("0");
    cfg["left"] = json!({"picard": {"seed": {"s1": "1", "s2": "0"}}});
    let path = write_config(dir.path(), "plane.json", &cfg);
    let out = dir.path().join("out");
    let o = run(&path, &out, &["generate"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = report(&out);
    for key in ["closedness_sup", "conformality_sup", "lagrangian_sup", "path_discrepancy"] {
        assert!(r[key].as_f64().unwrap() <= 1e-12, "{key}: {}", r[key]);
    }
    assert_eq!(r["solver_iterations"], json!(1));
}

#[test]
fn strong_potential_diverges_with_history_file() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = flat_torus(32);
    cfg["potential"] = json!({"constant": [10.0, 0.0]});
    cfg["left"] = json!({"picard": {"seed": {"s1": "1", "s2": "cos(x)"}, "max_iter": 200}});
    let path = write_config(dir.path(), "p10.json", &cfg);
    let out = dir.path().join("out");
    let o = run(&path, &out, &["generate"]);
    assert_eq!(o.status.code(), Some(1));
    let history = out.join("residual_history.csv");
    assert!(stderr(&o).contains(&history.display().to_string()), "{}", stderr(&o));
    let text = std::fs::read_to_string(history).unwrap();
    assert!(text.starts_with("iteration,residual\n"));
    let r = report(&out);
    assert_eq!(r["errors"].as_array().unwrap().len(), 1);
}

#[test]
fn compare_gates_on_tolerance() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "torus.json", &flat_torus(64));
    let out = dir.path().join("out");
    let o = run(&cfg, &out, &["compare"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let dist = report(&out)["equivalence_distance"].as_f64().unwrap();
    assert!(dist <= 1e-10);

    let o = run(&cfg, &out, &["--tolerance", "0", "compare"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("equivalence_distance"));
    assert!(stderr(&o).contains("exceeds tolerance"));
}

#[test]
fn verify_reports_residuals_only() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "torus.json", &flat_torus(32));
    let out = dir.path().join("out");
    let o = run(&cfg, &out, &["verify"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = report(&out);
    assert!(r["left_residual"].as_f64().unwrap() <= 1e-12);
    assert!(r["right_residual"].as_f64().unwrap() <= 1e-12);
    assert!(r["closedness_sup"].is_null());
    assert!(!out.join("surface.csv").exists());

    // A spinor that solves nothing.
    let mut bad = flat_torus(32);
    bad["left"] = json!({"analytic_family": {"p0": [0.5, 0.0], "a": 1.0, "b": 0.0, "alpha": [1.0, 0.0]}});
    bad["potential"] = json!({"constant": [0.0, 0.5]});
    let cfg = write_config(dir.path(), "bad.json", &bad);
    assert_eq!(run(&cfg, &out, &["verify"]).status.code(), Some(1));
}

#[test]
fn convergence_commands() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "torus.json", &flat_torus(16));
    let out = dir.path().join("out");

    let o = run(&cfg, &out, &["convergence", "--levels", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("at least 3 levels"));

    let o = run(&cfg, &out, &["convergence"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let table = String::from_utf8_lossy(&o.stdout).into_owned();
    assert!(table.contains("order check: skipped"), "{table}");
    let conv: Value = serde_json::from_str(&std::fs::read_to_string(out.join("convergence.json")).unwrap()).unwrap();
    for level in conv["levels"].as_array().unwrap() {
        assert!(level["defects"].as_array().unwrap().iter().all(|d| d.as_f64().unwrap() <= 1e-8));
    }

    let o = run(&cfg, &out, &["--fd", "convergence"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(String::from_utf8_lossy(&o.stdout).contains("order check: enforced"));
}

#[test]
fn configuration_errors_exit_with_usage_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let mut unknown = flat_torus(16);
    unknown["colour"] = json!("red");
    let cfg = write_config(dir.path(), "unknown.json", &unknown);
    let o = run(&cfg, &out, &["generate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("colour"));

    let mut bad_beta = flat_torus(16);
    bad_beta["beta"] = json!("2*x + sin y");
    let cfg = write_config(dir.path(), "beta.json", &bad_beta);
    let o = run(&cfg, &out, &["generate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("at byte 9"), "{}", stderr(&o));

    let mut open = flat_torus(16);
    open["grid"]["periodic"] = json!([false, false]);
    let cfg = write_config(dir.path(), "open.json", &open);
    assert_eq!(run(&cfg, &out, &["--spectral", "generate"]).status.code(), Some(2));

    assert_eq!(spinsurf(&["generate"]).status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn obj_drop_axis_and_csv_toggle() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = flat_torus(16);
    cfg["export"] = json!({"csv": false, "obj": {"drop_axis": 2}});
    let path = write_config(dir.path(), "torus.json", &cfg);
    let out = dir.path().join("out");
    assert!(run(&path, &out, &["generate"]).status.success());
    assert!(!out.join("surface.csv").exists());
    let obj = std::fs::read_to_string(out.join("surface.obj")).unwrap();
    assert!(obj.contains("# dropped axis: X2") && obj.contains("# vertex axes: X1 X3 X4"));
}
