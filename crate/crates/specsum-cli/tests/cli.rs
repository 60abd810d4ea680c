use std::path::Path;
use std::process::{Command, Output};

fn specsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specsum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.display().to_string()
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

const LATTICE: &str = r#"
[[operators]]
kind = "multipoint"
a = 0.0
b = 1.0
amplitude = [1.0, 0.0]
"#;

const SHIFT_PLUS_DIAGONAL: &str = r#"
[[operators]]
kind = "shift"

[[operators]]
kind = "diagonal"
scale = 1.0
exponent = 1.0
"#;

const RECIPROCAL_TAIL: &str = r#"
[tail]
generator = "scalar_power"
scale = 1.0
exponent = -1.0
norm_limit = "zero"
resolvent_limit = { inverse_distance = [[0.0, 0.0]] }
first_eigenvalue_limit = "zero"
"#;

const UNDECLARED_TAIL: &str = r#"
[tail]
generator = "scalar_power"
scale = 1.0
exponent = -1.0
"#;

#[test]
fn classify_identifies_a_lattice_eigenvalue() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "f.toml", LATTICE);
    let out = specsum(&["classify", "--config", &config, "--point", "0,6.283185307179586"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out).trim(), "PointSpectrum (witness 1)");
}

#[test]
fn classify_reports_the_resolvent_supremum() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "f.toml", SHIFT_PLUS_DIAGONAL);
    let out = specsum(&["classify", "--config", &config, "--point", "2.5,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "Resolvent, sup=2.0");
}

#[test]
fn classify_finds_residual_spectrum_from_the_shift_block() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "f.toml", SHIFT_PLUS_DIAGONAL);
    let out = specsum(&["classify", "--config", &config, "--point", "0,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "ResidualSpectrum (witness 1)");
}

#[test]
fn classify_flags_the_accumulation_point_without_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "f.toml", RECIPROCAL_TAIL);
    let zero = specsum(&["classify", "--config", &config, "--point", "0,0"]);
    assert_eq!(zero.status.code(), Some(0));
    assert_eq!(stdout(&zero).trim(), "ContinuousSpectrum (divergent resolvent)");
    let quarter = specsum(&["classify", "--config", &config, "--point", "0.25,0"]);
    assert_eq!(stdout(&quarter).trim(), "PointSpectrum (witness 4)");
}

#[test]
fn undeclared_tail_limits_exit_inconclusive() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "f.toml", UNDECLARED_TAIL);
    // membership still settles: 1/4 is an identifiable entry
    let quarter = specsum(&["classify", "--config", &config, "--point", "0.25,0"]);
    assert_eq!(quarter.status.code(), Some(0));
    // but an off-spectrum point needs the undeclared limit
    let out = specsum(&["classify", "--config", &config, "--point", "-5,0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("inconclusive"));
}

#[test]
fn counting_tabulates_a_geometric_ladder() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "f.toml",
        "[[operators]]\nkind = \"diagonal\"\nscale = 1.0\nexponent = 2.0\n",
    );
    let out_path = dir.path().join("counts.csv");
    let out = specsum(&[
        "counting",
        "--config",
        &config,
        "--lambda-grid",
        "1,10,3",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# manifest "));
    assert_eq!(lines[1], "lambda,count,overlap");
    let counts: Vec<&str> = lines[2..]
        .iter()
        .map(|l| l.split(',').nth(1).unwrap())
        .collect();
    assert_eq!(counts, vec!["1", "3", "10"]);
    assert!(out_path.with_file_name("counts.csv.manifest.toml").exists());
}

#[test]
fn counting_on_a_shift_block_is_unsupported() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "f.toml", "[[operators]]\nkind = \"shift\"\n");
    let out_path = dir.path().join("counts.csv");
    let out = specsum(&[
        "counting",
        "--config",
        &config,
        "--lambda-grid",
        "1,10,3",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(5));
    assert!(stderr(&out).contains("unsupported"));
}

#[test]
fn single_cell_scan_agrees_with_classify() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "f.toml", SHIFT_PLUS_DIAGONAL);
    let out_path = dir.path().join("cell.csv");
    let out = specsum(&[
        "scan",
        "--config",
        &config,
        "--region",
        "2.5,9,0,9",
        "--grid",
        "1,1",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let row = text.lines().nth(2).unwrap();
    // a single sample sits at the region start
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[0], "2.5000000000000000e0");
    assert_eq!(fields[1], "0.0000000000000000e0");
    assert_eq!(fields[2], "Resolvent");
    assert_eq!(fields[3], "");
    assert_eq!(fields[4], "2.0000000000000000e0");
}

#[test]
fn fit_prints_the_fitted_exponent() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "f.toml",
        "[[operators]]\nkind = \"diagonal\"\nscale = 2.0\nexponent = 2.0\n",
    );
    let out = specsum(&["fit", "--config", &config, "--count", "64", "--range", "1,64"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    // entries 2 m^2 follow the power law exactly, up to float noise
    let value = |key: &str| -> f64 {
        text.split_whitespace()
            .find_map(|w| w.strip_prefix(key))
            .unwrap_or_else(|| panic!("missing {key} in {text}"))
            .parse()
            .unwrap()
    };
    assert!((value("alpha=") - 2.0).abs() < 1e-9, "stdout: {text}");
    assert!((value("gamma=") - 2.0).abs() < 1e-9, "stdout: {text}");
}

#[test]
fn verify_passes_on_a_faithful_truncation() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "f.toml",
        "[[operators]]\nkind = \"diagonal\"\nscale = 1.0\nexponent = 2.0\n\n[[operators]]\nkind = \"matrix\"\nrows = [[[0.0, 0.0], [1.0, 0.0]], [[-1.0, 0.0], [0.0, 0.0]]]\n",
    );
    let report = dir.path().join("report.csv");
    let out = specsum(&[
        "verify",
        "--config",
        &config,
        "--suite",
        "all",
        "--blocks",
        "2",
        "--size",
        "6",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    for property in ["norm", "union", "resolvent", "counting"] {
        assert!(text.contains(&format!("{property}:")), "missing {property} in {text}");
    }
    assert!(!text.contains("FAIL"));
    let csv = std::fs::read_to_string(&report).unwrap();
    assert!(csv.lines().nth(1).unwrap().starts_with("property,"));
}

#[test]
fn verify_counting_fails_honestly_on_a_short_truncation() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "f.toml",
        r#"
[[operators]]
kind = "diagonal"
entries = [[1.0, 0.0], [1.5, 0.0]]

[[operators]]
kind = "diagonal"
entries = [[2.0, 0.0], [2.5, 0.0]]

[[operators]]
kind = "diagonal"
entries = [[3.0, 0.0], [3.5, 0.0]]
"#,
    );
    let out = specsum(&[
        "verify",
        "--config",
        &config,
        "--suite",
        "counting",
        "--blocks",
        "2",
        "--size",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "f.toml",
        "[[operators]]\nkind = \"shift\"\nbogus = 1\n",
    );
    let out = specsum(&["classify", "--config", &config, "--point", "0,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bogus"), "stderr: {}", stderr(&out));
}

#[test]
fn malformed_toml_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "f.toml", "kind = whoops");
    let out = specsum(&["classify", "--config", &config, "--point", "0,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_config_file_is_an_io_error() {
    let out = specsum(&["classify", "--config", "/nonexistent/f.toml", "--point", "0,0"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn empty_config_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "f.toml", "");
    let out = specsum(&["classify", "--config", &config, "--point", "0,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("no operators"));
}

#[test]
fn seed_resolution_prefers_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "f.toml",
        "seed = 7\n\n[[operators]]\nkind = \"diagonal\"\nscale = 1.0\nexponent = 2.0\n",
    );
    let out_path = dir.path().join("counts.csv");

    // config seed lands in the sidecar
    let out = specsum(&[
        "counting",
        "--config",
        &config,
        "--lambda-grid",
        "1,10,2",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let sidecar = out_path.with_file_name("counts.csv.manifest.toml");
    let manifest = std::fs::read_to_string(&sidecar).unwrap();
    assert!(manifest.contains("seed = 7"), "manifest: {manifest}");
    assert!(manifest.contains("engine_version"));
    assert!(manifest.contains("config_sha256"));
    assert!(manifest.contains("wall_clock_ms"));

    // the environment wins over the config
    let out = Command::new(env!("CARGO_BIN_EXE_specsum"))
        .args([
            "counting",
            "--config",
            &config,
            "--lambda-grid",
            "1,10,2",
            "--out",
            out_path.to_str().unwrap(),
        ])
        .env("SPECSUM_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let manifest = std::fs::read_to_string(&sidecar).unwrap();
    assert!(manifest.contains("seed = 99"), "manifest: {manifest}");
}

#[test]
fn csv_hash_matches_the_sidecar_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "f.toml",
        "[[operators]]\nkind = \"diagonal\"\nscale = 1.0\nexponent = 2.0\n",
    );
    let out_path = dir.path().join("counts.csv");
    let out = specsum(&[
        "counting",
        "--config",
        &config,
        "--lambda-grid",
        "1,10,2",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&out_path).unwrap();
    let hash_in_csv = csv
        .lines()
        .next()
        .unwrap()
        .strip_prefix("# manifest ")
        .unwrap()
        .to_string();
    let manifest = std::fs::read_to_string(out_path.with_file_name("counts.csv.manifest.toml")).unwrap();
    assert!(
        manifest.contains(&format!("manifest_hash = \"{hash_in_csv}\"")),
        "hash {hash_in_csv} not found in sidecar:\n{manifest}"
    );
}

#[test]
fn constant_tail_round_trips_through_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "f.toml",
        r#"
[tail]
generator = "constant"
norm_limit = { bounded_by = 1.0 }
first_eigenvalue_limit = { bounded_by = 1.0 }

[tail.operator]
kind = "matrix"
rows = [[[1.0, 0.0]]]
"#,
    );
    let out = specsum(&["classify", "--config", &config, "--point", "3,0"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out).trim(), "Resolvent, sup=0.5");
}
