//! End-to-end runs of the `wignerkit` binary.

use std::f64::consts::PI;
use std::process::Command;

use wignerkit::phase_space::{read_grid, GridFormat, WignerGrid};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wignerkit"))
}

fn read_json_grid(path: &std::path::Path) -> WignerGrid {
    read_grid(std::io::BufReader::new(std::fs::File::open(path).unwrap()), GridFormat::Json).unwrap()
}

#[test]
fn closed_and_transform_grids_agree() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("closed.json"), dir.path().join("transform.json"));
    for (src, path) in [("closed", &a), ("transform", &b)] {
        let st = bin()
            .args(["grid", "--model", "sho", "--n", "1", "--size", "65", "--source", src, "--output"])
            .arg(path)
            .status()
            .unwrap();
        assert_eq!(st.code(), Some(0));
    }
    let (ga, gb) = (read_json_grid(&a), read_json_grid(&b));
    assert!(ga.max_abs_diff(&gb).unwrap() < 1e-6);

    let out = bin().args(["grid", "--model", "sho", "--n", "0", "--size", "65"]).output().unwrap();
    let g: WignerGrid = serde_json::from_slice(&out.stdout).unwrap();
    assert!((g.get(32, 32) - 1.0 / PI).abs() < 1e-15);
}

#[test]
fn csv_export_round_trips() {
    let out = bin().args(["grid", "--model", "sho", "--n", "2", "--size", "9", "--format", "csv"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().nth(1) == Some("x,p,value"), "{text}");
    let g = read_grid(text.as_bytes(), GridFormat::Csv).unwrap();
    let json = bin().args(["grid", "--model", "sho", "--n", "2", "--size", "9"]).output().unwrap();
    let want: WignerGrid = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(g, want);
}

#[test]
fn invalid_model_is_a_usage_error() {
    let out = bin().args(["grid", "--model", "anharmonic"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn verify_su11_passes_and_reports() {
    let out = bin().args(["verify", "su11"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["suite"], "su11");
    let checks = v["checks"].as_array().unwrap();
    for prefix in ["su11.gauss_ldu", "su11.parity_inversion", "su11.char_mat"] {
        let hits: Vec<_> = checks.iter().filter(|c| c["name"].as_str().unwrap().starts_with(prefix)).collect();
        assert!(!hits.is_empty() && hits.iter().all(|c| c["pass"] == true), "{prefix}");
    }
    for c in checks {
        for key in ["name", "params", "value", "expected", "tolerance", "pass"] {
            assert!(c.get(key).is_some(), "{key} missing in {c}");
        }
    }
    let check = bin().args(["su11", "check"]).output().unwrap();
    assert_eq!(check.status.code(), Some(0));
    let w: serde_json::Value = serde_json::from_slice(&check.stdout).unwrap();
    assert_eq!(w["checks"].as_array().unwrap().len(), checks.len());
}

#[test]
fn verify_projection_reports_mixed_entry_and_pure_failure() {
    let out = bin().args(["verify", "projection"]).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let find = |n: &str| v["checks"].as_array().unwrap().iter().find(|c| c["name"] == n).cloned().unwrap();
    let entry = find("projection.mixed_reconstruction.r0.2.11");
    assert_eq!(entry["pass"], true);
    assert!((entry["expected"].as_f64().unwrap() - PI / 2.0 * 1.3).abs() < 1e-15);
    assert_eq!(find("projection.pure_reconstruction_vs_pi_rho")["pass"], false);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn tolerance_override_is_echoed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let st = bin().args(["verify", "star", "--tolerance", "star.residual=1e-4", "--output"]).arg(&path).status().unwrap();
    assert_eq!(st.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["summary"]["tolerance_overrides"]["star.residual"], 1e-4);
    let residual = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "star.residual.sho0.real").unwrap().clone();
    assert_eq!(residual["tolerance"], 1e-4);
}

#[test]
fn config_file_supplies_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "model=sho\nn=0\nsize=33\nformat=json\n").unwrap();
    let out = bin().arg("grid").arg("--config").arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let g: WignerGrid = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(g.spec.nx, 33);
}

#[test]
fn evolve_rotates_and_guards_cfl() {
    let out = bin().args(["evolve", "--t", "1.5707963267948966", "--dt", "0.01", "--size", "97", "--center-x", "1", "--snapshots", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let snaps = v["snapshots"].as_array().unwrap();
    assert_eq!(snaps.len(), 3);
    let last: WignerGrid = serde_json::from_value(snaps[2]["grid"].clone()).unwrap();
    let want = WignerGrid::from_fn(last.spec, |x, p| (-(x * x + (p + 1.0).powi(2))).exp() / PI).unwrap();
    assert!(last.max_abs_diff(&want).unwrap() < 1e-3);

    let bad = bin().args(["evolve", "--t", "1", "--dt", "2", "--size", "33"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("CFL"));
}

#[test]
fn reconstruct_outputs_matrices() {
    let out = bin().args(["project", "reconstruct", "--state", "mixed", "0.5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let r11 = v["reconstruction"][0][0][0].as_f64().unwrap();
    let r22 = v["reconstruction"][1][1][0].as_f64().unwrap();
    assert!((r11 - PI / 2.0 * 1.75).abs() < 1e-10 && (r22 - PI / 2.0 * 0.25).abs() < 1e-10);
}

#[test]
fn thread_cap_is_validated() {
    let ok = bin().env("WIGNERKIT_THREADS", "1").args(["grid", "--model", "sho", "--size", "9"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = bin().env("WIGNERKIT_THREADS", "zero").args(["grid", "--model", "sho", "--size", "9"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let st = bin().args(["grid", "--model", "sho", "--size", "9", "--output", "/nonexistent/dir/out.json"]).status().unwrap();
    assert_eq!(st.code(), Some(3));
}
