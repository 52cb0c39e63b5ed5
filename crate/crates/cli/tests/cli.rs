use std::process::{Command, Output};

fn cliffstar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cliffstar")).args(args).env_remove("CLIFFSTAR_OUT_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(o: &Output) -> Vec<Vec<String>> {
    stdout(o).lines().map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn verify_writes_report_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = cliffstar(&["verify", "--suite", "fw,oscillator", "--out-dir", out, "--format", "json,csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["pass"], true);
    let suites: Vec<&str> = report["suites"].as_array().unwrap().iter().map(|s| s["suite"].as_str().unwrap()).collect();
    assert_eq!(suites, ["oscillator", "fw"]);
    let csv = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert!(csv.starts_with("id,suite,check,inputs_hash,lhs,rhs,residual,tolerance,backend,exact,pass"));
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn verify_output_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_cliffstar"))
        .args(["verify", "--suite", "fw"])
        .env("CLIFFSTAR_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("report.json").exists());
    // an explicit flag wins over the environment
    let other = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_cliffstar"))
        .args(["verify", "--suite", "fw", "--out-dir", other.path().to_str().unwrap()])
        .env("CLIFFSTAR_OUT_DIR", dir.path().join("unused"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(other.path().join("report.json").exists() && !dir.path().join("unused").exists());
}

#[test]
fn verify_rep_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let o = cliffstar(&["verify", "--suite", "dirac", "--rep", "d4,d5,d6", "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for rep in ["D4", "D5", "D6"] {
        assert!(s.lines().any(|l| l.trim_start().starts_with(rep) && l.contains("pass")), "{s}");
    }
}

#[test]
fn verify_check_failure_exits_one() {
    // exact identities evaluated in floating point cannot meet this bound
    let dir = tempfile::tempdir().unwrap();
    let o = cliffstar(&[
        "verify",
        "--suite",
        "dirac",
        "--rep",
        "d4",
        "--backend",
        "float",
        "--tolerance=1e-300",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["pass"], false);
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    for args in [
        vec!["verify", "--suite", "bogus", "--out-dir", out],
        vec!["verify", "--suite", "fw", "--backend", "double", "--out-dir", out],
        vec!["verify", "--suite", "fw", "--rep", "d9", "--out-dir", out],
        vec!["verify", "--suite", "fw", "--tolerance=0", "--out-dir", out],
        vec!["spectrum", "oscillator", "--omega", "-1"],
        vec!["spectrum", "landau", "--n", "5..2"],
        vec!["dynamics", "precession", "--grid", "0:1:0"],
        vec!["dynamics", "zitterbewegung", "--times", ""],
        vec!["dynamics", "zitterbewegung", "--p", "1,2"],
        vec!["frobnicate"],
    ] {
        assert_eq!(cliffstar(&args).status.code(), Some(2), "{args:?}");
    }
    // unwritable output location
    let file = dir.path().join("plain-file");
    std::fs::write(&file, "x").unwrap();
    let o = cliffstar(&["verify", "--suite", "fw", "--out-dir", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oscillator_ground_state() {
    let o = cliffstar(&["spectrum", "oscillator", "--n", "0", "--omega", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&o);
    assert_eq!(r[0], ["n", "energy_over_hbar", "energy", "verified"]);
    assert_eq!(r[1], ["0", "1/2", "0.5", "true"]);
    assert_eq!(r.len(), 2);
}

#[test]
fn landau_table() {
    let o = cliffstar(&["spectrum", "landau", "--n", "0..5", "--l", "0..5", "--omega", "2"]);
    let r = rows(&o);
    assert_eq!(r.len(), 37);
    for row in &r[1..] {
        let (n, l): (i64, i64) = (row[0].parse().unwrap(), row[1].parse().unwrap());
        assert_eq!(row[2], format!("{}", 2 * n + 1), "E/ħ = ω(n + 1/2) with ω = 2");
        assert_eq!(row[3], format!("{}", l - n));
        assert_eq!(row[6], "true");
    }
}

#[test]
fn susy_table_pairs_levels() {
    let o = cliffstar(&["spectrum", "susy", "--level", "0..4"]);
    let r = rows(&o);
    // one ground state, then two states per level
    assert_eq!(r.len(), 1 + 1 + 2 * 4);
    assert_eq!(&r[1][..3], ["0", "0", "-1/2"]);
    for level in 1..=4 {
        let at: Vec<&Vec<String>> = r[1..].iter().filter(|x| x[0] == level.to_string()).collect();
        assert_eq!(at.len(), 2);
        assert_eq!(at[0][3], at[1][3]);
        assert!(at.iter().all(|x| x[6] == "true"));
    }
}

#[test]
fn zitterbewegung_drift() {
    let o = cliffstar(&["dynamics", "zitterbewegung", "--m", "3", "--c", "1", "--p", "4,0,0", "--times", "0,1,2.5"]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&o);
    assert_eq!(r[0][0], "t");
    assert_eq!(r.len(), 4);
    for row in &r[1..] {
        let t: f64 = row[0].parse().unwrap();
        let drift: f64 = row[1].parse().unwrap();
        assert!((drift - 0.8 * t).abs() < 1e-12);
        assert!(row[7].parse::<f64>().unwrap() <= 1e-8);
    }
    // the oscillating part starts at zero
    assert!(r[1][4..7].iter().all(|x| x.parse::<f64>().unwrap() == 0.0));
}

#[test]
fn precession_single_point_echoes_initial_values() {
    let o = cliffstar(&["dynamics", "precession", "--omega", "1.3", "--times", "0"]);
    let r = rows(&o);
    assert_eq!(r.len(), 2);
    let header = &r[0];
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    // σ^k(0) = σ^k and S(0) = (ħ/2)σ
    for k in 1..=3 {
        for b in ["1", "s1", "s2", "s3"] {
            let want = if b == format!("s{k}") { 1.0 } else { 0.0 };
            assert_eq!(r[1][col(&format!("sigma{k}_{b}_re"))].parse::<f64>().unwrap(), want);
            assert_eq!(r[1][col(&format!("S{k}_{b}_re"))].parse::<f64>().unwrap(), want / 2.0);
        }
    }
}

#[test]
fn precession_rotates_transverse_spin() {
    let o = cliffstar(&["dynamics", "precession", "--omega", "1.3", "--grid", "0:5:11"]);
    let r = rows(&o);
    let header = &r[0];
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    for row in &r[1..] {
        let t: f64 = row[0].parse().unwrap();
        let get = |name: &str| row[col(name)].parse::<f64>().unwrap();
        // S₁(t) = (ħ/2)(cos ωt σ¹ − sin ωt σ²) up to the sense of rotation; S₃ fixed
        let (c1, c2) = (get("S1_s1_re"), get("S1_s2_re"));
        assert!((c1 * c1 + c2 * c2 - 0.25).abs() < 1e-12);
        assert!((c1 - 0.5 * (1.3 * t).cos()).abs() < 1e-12);
        assert!((get("S3_s3_re") - 0.5).abs() < 1e-12);
        assert!(get("spin_equation_residual") <= 1e-10);
        assert!(get("heisenberg_residual") <= 1e-10);
    }
}
