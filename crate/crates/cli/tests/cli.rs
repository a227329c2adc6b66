use std::f64::consts::PI;
use std::io::Write;
use std::process::{Command, Output};

fn farfield(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_farfield")).args(args).output().expect("binary runs")
}

fn farfield_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_farfield")).args(args).env(key, value).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).take_while(|l| !l.is_empty()).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn deficit_reproduces_reactor_length() {
    let o = farfield(&["deficit", "--k-eV", "0.783e6", "--sigma-eV", "0.2", "--format", "json"]);
    let rho0 = json(&o)["rho0_m"].as_f64().unwrap();
    assert!((rho0 - 3.86).abs() < 0.01 * 3.86, "{rho0}");
    let doubled = farfield(&["deficit", "--k-eV", "0.783e6", "--sigma-eV", "0.4", "--format", "json"]);
    let quarter = json(&doubled)["rho0_m"].as_f64().unwrap();
    assert!((rho0 / quarter - 4.0).abs() < 1e-10);
}

#[test]
fn deficit_flags_short_baselines() {
    let o = farfield(&["deficit", "--k-eV", "0.783e6", "--sigma-eV", "0.2", "--R-grid", "1,3.5,10", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let curve: Vec<&str> = text.split("\n\n").nth(1).unwrap().lines().skip(1).collect();
    assert_eq!(curve.len(), 3);
    assert!(curve[0].ends_with(",invalid-regime") && curve[1].ends_with(",invalid-regime"));
    assert!(curve[2].ends_with(",valid"));
}

#[test]
fn deficit_from_physical_parameters() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{"delta_m_eV":1.293e6,"m_e_eV":0.511e6,"m_j_eV":0.2,"sigma_e_eV":0.2,
            "W":[511000.0,0,0,0],"K":[1294000.0,0,0,783000.0],"U0_eV":510000.0}}"#
    )
    .unwrap();
    let o = farfield(&["deficit", "--params", f.path().to_str().unwrap(), "--format", "json"]);
    let v = json(&o);
    assert!((v["k_eV"].as_f64().unwrap() - 0.783e6).abs() < 1.0);
    assert!((v["rho0_m"].as_f64().unwrap() - 3.86).abs() < 0.04);
}

#[test]
fn deficit_rejects_non_positive_inputs() {
    let o = farfield(&["deficit", "--k-eV", "0.783e6", "--sigma-eV", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn coeffs_exp_xi_at_pole() {
    let o = farfield(&["coeffs", "--model-json", r#"{"type":"exp_xi","lambda":1}"#, "--smax", "2", "--nmax", "1", "--format", "csv"]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows[1][0], "1");
    assert!((rows[1][3].parse::<f64>().unwrap() - 2.0).abs() < 1e-11);
}

#[test]
fn coeffs_band_limited_dipole() {
    let spec = r#"{"type":"multipole","coeffs":[{"l":1,"m":0,"re":1.0,"im":0.0}]}"#;
    let v = json(&farfield(&["coeffs", "--model-json", spec, "--format", "json", "--theta", "0.3"]));
    let upsilon = v["upsilon_n"][0]["upsilon"].as_f64().unwrap();
    assert!((upsilon - 4.0).abs() < 1e-11);
    assert!(v["c_s"][2]["phi_c"][0].as_f64().unwrap().abs() < 1e-15);
}

#[test]
fn coeffs_constant_model_has_no_corrections() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{"type":"spherically_symmetric","psi":2.5}}"#).unwrap();
    let v = json(&farfield(&["coeffs", "--model", f.path().to_str().unwrap(), "--format", "json"]));
    for s in 1..=4 {
        assert_eq!(v["c_s"][s]["c"][0].as_f64().unwrap(), 0.0);
    }
}

#[test]
fn malformed_specs_exit_two_without_output() {
    for spec in [r#"{"type":"exp_xi"}"#, r#"{"type":"nope"}"#, "not json", r#"{"type":"exp_zeta","lambda":1,"tensor":[[1,0,0],[0,-1,0],[0,0,1]]}"#] {
        let o = farfield(&["coeffs", "--model-json", spec]);
        assert_eq!(o.status.code(), Some(2), "{spec}");
        assert!(o.stdout.is_empty());
    }
    let missing = farfield(&["coeffs", "--model", "/nonexistent/model.json"]);
    assert_eq!(missing.status.code(), Some(2));
    let usage = farfield(&["coeffs"]);
    assert_eq!(usage.status.code(), Some(2));
}

const PACKET: &str = r#"{"type":"gaussian_packet","center":[-0.479425538604203,0,-0.8775825618903728],"sigma":1}"#;

#[test]
fn series_leading_slope() {
    let o = farfield(&["series", "--model-json", PACKET, "--R-list", "20,40,80,160", "--terms", "0", "--slope", "--format", "json"]);
    let slope = json(&o)["slope"]["slope"].as_f64().unwrap();
    assert!((slope + 2.0).abs() < 0.3, "{slope}");
}

#[test]
fn series_symmetric_model_is_exact() {
    let spec = r#"{"type":"spherically_symmetric","psi":1.0,"sigma":1.0}"#;
    let v = json(&farfield(&["series", "--model-json", spec, "--R-list", "10,20,40", "--terms", "0", "--oracle", "--format", "json"]));
    for row in v["rows"].as_array().unwrap() {
        let series = row["series"][0].as_f64().unwrap().hypot(row["series"][1].as_f64().unwrap());
        assert!(row["abs_err"].as_f64().unwrap() < 1e-8 * series);
    }
}

#[test]
fn series_validation_and_numeric_failures() {
    let too_many = farfield(&["series", "--model-json", PACKET, "--R-list", "10", "--terms", "9", "--smax", "8"]);
    assert_eq!(too_many.status.code(), Some(2));
    let no_pair = farfield(&["series", "--model-json", r#"{"type":"exp_xi","lambda":1}"#, "--R-list", "10", "--oracle"]);
    assert_eq!(no_pair.status.code(), Some(2));
    let stuck = farfield(&["series", "--model-json", PACKET, "--R-list", "20", "--oracle", "--oracle-tol", "1e-17", "--oracle-refinements", "0"]);
    assert_eq!(stuck.status.code(), Some(4));
    assert!(stuck.stdout.is_empty());
}

#[test]
fn ndim_matches_spherical_wave() {
    let (k, big_r, r, g) = (1.0f64, 5.0f64, 1.0f64, PI / 3.0);
    let gamma = g.to_string();
    let v = json(&farfield(&["ndim", "--N", "3", "--R", "5", "--r", "1", "--gamma", &gamma, "--format", "json"]));
    let sep = (big_r * big_r + r * r - 2.0 * big_r * r * g.cos()).sqrt();
    let want = (k * sep).cos() / (4.0 * PI * sep);
    assert!((v["closed"][0].as_f64().unwrap() - want).abs() < 1e-12);
    assert!(v["abs_err"].as_f64().unwrap() < 1e-10);
    for n in ["2", "4", "5", "6"] {
        let v = json(&farfield(&["ndim", "--N", n, "--R", "3", "--r", "1", "--gamma", "2.0", "--format", "json"]));
        assert!(v["abs_err"].as_f64().unwrap() < 1e-8 * v["closed"][0].as_f64().unwrap().hypot(v["closed"][1].as_f64().unwrap()));
    }
}

#[test]
fn ndim_rejects_inner_field_point() {
    let o = farfield(&["ndim", "--N", "3", "--R", "1", "--r", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let bad_dim = farfield(&["ndim", "--N", "40", "--R", "2", "--r", "1"]);
    assert_eq!(bad_dim.status.code(), Some(2));
}

#[test]
fn regions_json_default() {
    let v = json(&farfield(&["regions", "--lambda", "2.5"]));
    let last = v["intervals"].as_array().unwrap().last().unwrap();
    assert!(last[0].as_f64().unwrap() <= 3.0 * PI / 4.0 && last[1].as_f64().unwrap() >= PI - 1e-11);
    let mirrored = json(&farfield(&["regions", "--lambda", "-2.5"]));
    let first = &mirrored["intervals"][0];
    assert_eq!(first[0].as_f64().unwrap(), 0.0);
    assert_eq!(farfield(&["regions", "--lambda", "0"]).status.code(), Some(2));
}

#[test]
fn outputs_are_byte_identical_across_runs_and_threads() {
    let args = ["series", "--model-json", PACKET, "--R-list", "20,30", "--terms", "1", "--oracle", "--format", "csv"];
    let a = farfield(&args);
    let b = farfield(&args);
    let single = farfield_env(&args, "FARFIELD_THREADS", "1");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, single.stdout);
    let bad = farfield_env(&args, "FARFIELD_THREADS", "zero");
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn floats_use_fixed_exponent_format() {
    let o = farfield(&["ndim", "--N", "3", "--R", "2", "--r", "1", "--format", "csv"]);
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    let cell = row.split(',').nth(1).unwrap();
    assert_eq!(cell, "1.000000000000e+00");
}
