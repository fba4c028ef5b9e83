use std::fs;
use std::process::{Command, Output};

fn spinlogic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinlogic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn grid_csv_layout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z.csv");
    let o = spinlogic(&["grid", "--grid", "-pi:1/4pi:9", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "phi,beta,Mx,My,Mxy");
    assert_eq!(lines.len(), 1 + 81);
    // phi outermost
    assert!(lines[1].starts_with("-3.14159265359,-3.14159265359,"));
    assert!(lines[2].starts_with("-3.14159265359,-2.35619449019,"));
    let row = lines
        .iter()
        .find(|l| l.starts_with("1.57079632679,1.57079632679,"))
        .unwrap();
    assert_eq!(row.split(',').nth(2), Some("0.25"));
}

#[test]
fn grid_mxy_depends_only_on_flip_angle() {
    let o = spinlogic(&["grid", "--grid", "0:0.37:12"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut by_beta = std::collections::HashMap::new();
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let mxy: f64 = f[4].parse().unwrap();
        let first = *by_beta.entry(f[1].to_string()).or_insert(mxy);
        assert!((first - mxy).abs() < 1e-11, "{line}");
    }
    assert_eq!(by_beta.len(), 12);
}

#[test]
fn grid_output_is_identical_across_workers() {
    let args = ["grid", "--pulses", "2", "--initial", "x", "--inputs", "phi2,beta1", "--fix", "phi1=pi/2"];
    let one = spinlogic(&[&args[..], &["--workers", "1"]].concat());
    let four = spinlogic(&[&args[..], &["--workers", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one).lines().next(), Some("phi2,beta1,Mx,My,Mxy"));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, spinlogic(&args).stdout);
}

#[test]
fn grid_errors() {
    assert_eq!(spinlogic(&["grid", "--grid", "0:1:1"]).status.code(), Some(1));
    assert_eq!(spinlogic(&["grid", "--observable", "mz"]).status.code(), Some(1));
    assert_eq!(spinlogic(&["grid", "--inputs", "phi,phi"]).status.code(), Some(1));
    assert_eq!(spinlogic(&["grid", "--pulses", "3"]).status.code(), Some(1));
    assert_eq!(spinlogic(&["grid", "--bogus"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("missing").join("out.csv");
    assert_eq!(spinlogic(&["grid", "--out", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn classify_reports_class_and_orbit() {
    let o = spinlogic(&["classify", "XOR"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("class 3"));
    assert!(text.contains("canalising values: A 0, B 0"));
    assert!(text.contains("XNOR"));

    let text = stdout(&spinlogic(&["classify", "nand"]));
    assert!(text.contains("class 2"));
    assert!(text.contains("canalising values: A 1, B 1"));
    assert!(text.contains("1 1 | 0"));

    let text = stdout(&spinlogic(&["classify", "10"]));
    assert!(text.contains("gate: B (id 10)"));
    assert!(text.contains("class 1"));

    let o = spinlogic(&["classify", "MAYBE"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("XNOR"));
}

#[test]
fn synthesize_finds_reference_assignments() {
    let o = spinlogic(&["synthesize", "XOR"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l.starts_with("1/2pi,3/2pi,-1/2pi,1/2pi,")));

    let o = spinlogic(&["synthesize", "T", "--initial", "z"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "1/2pi,5/2pi,1/2pi,5/2pi,,0.25"));
}

#[test]
fn synthesize_reports_missing_gate() {
    let o = spinlogic(&["synthesize", "XOR", "--initial", "x"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("none found"));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# superposition start\ninitial = x\ngrid = 0:1/4pi:16\n").unwrap();
    let o = spinlogic(&["synthesize", "XOR", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let o = spinlogic(&["synthesize", "XOR", "--config", cfg.to_str().unwrap(), "--initial", "z"]);
    assert_eq!(o.status.code(), Some(0));

    fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(spinlogic(&["grid", "--config", cfg.to_str().unwrap()]).status.code(), Some(1));
    let missing = dir.path().join("nope.cfg");
    assert_eq!(spinlogic(&["grid", "--config", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_passes_by_default() {
    let o = spinlogic(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.starts_with("# lambda_B=1 "));
    assert!(text.contains("PASS two-pulse/e/sign-flip"));
    assert!(text.contains("PASS two-pulse/f/sign-flip"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_detects_wrong_polarization() {
    let o = spinlogic(&["verify", "--lambda", "2"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("FAIL gate-example/"));
}
