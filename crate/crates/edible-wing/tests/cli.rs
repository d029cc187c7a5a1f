use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edible-wing"))
        .args(args)
        .arg("--out-dir")
        .arg(dir)
        .output()
        .expect("binary runs")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn design_defaults_pass_and_write_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["design"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("Wing loading (W/S)"));
    assert!(stdout.contains("Overall verdict: pass"));
    for f in ["design_report.txt", "design_report.json", "tiling.svg"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let json: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("design_report.json")).unwrap())
            .unwrap();
    let ar = json["report"]["wing"]["aspect_ratio"].as_f64().unwrap();
    assert!((4.28..=4.40).contains(&ar));
}

#[test]
fn identical_config_gives_identical_bytes() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        assert!(run(dir.path(), &["design"]).status.success());
    }
    for f in ["design_report.txt", "design_report.json", "tiling.svg"] {
        assert_eq!(
            fs::read(a.path().join(f)).unwrap(),
            fs::read(b.path().join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("wing.cfg");
    fs::write(
        &cfg,
        "# design inputs\nnutrition_kcal = 300\npayload_mass_g = 80\n",
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();
    let out = run(
        dir.path(),
        &[
            "design",
            "--config",
            cfg,
            "--format",
            "json",
            "--set",
            "c_ht=0.3",
            "--payload-mass-g",
            "90",
        ],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let json: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["echo"]["payload_mass_g"]["value"], "90");
    assert_eq!(json["echo"]["payload_mass_g"]["source"], "override");
    assert_eq!(json["echo"]["nutrition_kcal"]["source"], "config");
    assert_eq!(json["echo"]["c_ht"]["value"], "0.3");
    assert_eq!(json["report"]["mass"]["payload_mass"].as_f64(), Some(0.09));
    assert!(!dir.path().join("design_report.txt").exists());
}

#[test]
fn unknown_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "nutrition_kcal = 300\nwing_span_mm = 700\n").unwrap();
    let out = run(dir.path(), &["design", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(
        err.contains("unknown config key `wing_span_mm`") && err.contains("line 2"),
        "{err}"
    );
}

#[test]
fn errors_name_the_stage() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["design", "--nutrition-kcal", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("area stage"), "{}", stderr(&out));

    let out = run(dir.path(), &["design", "--payload-mass-g", "2000"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(
        err.contains("planform stage") && err.contains("AR = 1") && err.contains("AR = 20"),
        "{err}"
    );
}

#[test]
fn failed_strength_check_is_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["structure", "--strength-capacity-n", "1.04"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stdout).contains("Strength verdict"));

    let out = run(
        dir.path(),
        &[
            "structure",
            "--strength-capacity-n",
            "1.56",
            "--format",
            "json",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let json: Value = serde_json::from_slice(&out.stdout).unwrap();
    let margin = json["strength"]["full_span_capacity_in_wg"]
        .as_f64()
        .unwrap();
    assert!((margin - 1.08).abs() < 0.01);
    assert!(dir.path().join("spanwise_load.csv").exists());
}

#[test]
fn map_writes_csv_and_heatmap() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["map", "--map-vc-steps", "2", "--map-ar-steps", "2"],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let csv = fs::read_to_string(dir.path().join("design_map.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 4);
    let svg = fs::read_to_string(dir.path().join("design_map.svg")).unwrap();
    assert!(svg.contains("version=\"1.1\""));
}

#[test]
fn tile_with_explicit_planform() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &[
            "tile",
            "--tile-span-mm",
            "300",
            "--tile-chord-mm",
            "150",
            "--format",
            "json",
        ],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let json: Value = serde_json::from_slice(&out.stdout).unwrap();
    let svg = fs::read_to_string(dir.path().join("tiling.svg")).unwrap();
    let tiles = json["full_hex_count"].as_u64().unwrap() + json["partial_count"].as_u64().unwrap();
    assert_eq!(svg.matches("<path ").count() as u64, tiles);
    assert!(svg.contains("viewBox=\"0 0 300.000 150.000\""));

    let out = run(
        dir.path(),
        &["tile", "--tile-span-mm", "50", "--tile-chord-mm", "20"],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("tiling stage"));
}

#[test]
fn materials_queries() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["materials", "adhesive"]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("gelatin"));

    let out = run(
        dir.path(),
        &[
            "materials",
            "rank",
            "--modulus-mpa",
            "10",
            "--density-kg-m3",
            "100",
        ],
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("rice cookie"));

    let out = run(dir.path(), &["materials", "pareto", "--format", "json"]);
    let json: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json[0]["name"], "rice cookie");

    let db = dir.path().join("bad.csv");
    fs::write(
        &db,
        "name,E_MPa,E_sd_MPa,rho_kg_m3,rho_sd,kcal_per_kg,provenance\nx,1,0,-5,0,1,y\n",
    )
    .unwrap();
    let out = run(
        dir.path(),
        &[
            "materials",
            "list",
            "--set",
            &format!("material_db={}", db.display()),
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}
