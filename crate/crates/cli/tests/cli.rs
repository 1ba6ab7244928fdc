use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nfmertens"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn mertens_integer_conventions() {
    let right = stdout(&["mertens", "--delta", "-3", "--x", "7", "--right-limit"]);
    assert_eq!(rows(&right)[0][2], "-3");
    let half = stdout(&["mertens", "--delta", "-3", "--x", "7"]);
    assert_eq!(rows(&half)[0][2], "-2");
    let real = stdout(&["mertens", "--delta", "5", "--x", "11", "--right-limit"]);
    assert_eq!(rows(&real)[0][2], "-4");
}

#[test]
fn mertens_table_matches_single_values() {
    let table = rows(&stdout(&["mertens", "--delta", "-4", "--n-max", "30"]));
    assert_eq!(table.len(), 30);
    for n in [1, 7, 19, 30] {
        let single = stdout(&["mertens", "--delta", "-4", "--x", &n.to_string(), "--right-limit"]);
        assert_eq!(table[n - 1][1], rows(&single)[0][2]);
    }
}

#[test]
fn imaginary_table() {
    let t = rows(&stdout(&["tables", "--imaginary", "--dmax", "307", "--paper-parity"]));
    assert_eq!(t.len(), 96);
    let row43 = t.iter().find(|r| r[0] == "43").unwrap();
    assert_eq!(row43[1], "1.3179");
}

#[test]
fn real_table_fields() {
    let t = rows(&stdout(&["tables", "--real", "--dmax", "12"]));
    let ds: Vec<&str> = t.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(ds, ["5", "8", "12"]);
}

#[test]
fn counterexample_real_37() {
    let t = rows(&stdout(&[
        "counterexamples", "--real", "--d", "37", "--n-max", "100", "--paper-parity",
    ]));
    assert_eq!(t, vec![vec!["37".to_string(), "33".into(), "1.4651".into()]]);
}

#[test]
fn counterexample_exit_status() {
    // Q(sqrt(-3)) has no counterexample in a short range.
    let out = run(&[
        "counterexamples", "--imaginary", "--d", "3", "--n-max", "50", "--exit-status",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn zeros_small_height() {
    let text = stdout(&["zeros", "--delta", "-4", "--T", "20"]);
    let t = rows(&text);
    assert_eq!(t.len(), 6);
    assert_eq!(t.iter().filter(|r| r[0] == "zeta").count(), 1);
    let first: f64 = t[0][1].parse().unwrap();
    assert!((first - 6.020948904659).abs() < 1e-8);
}

#[test]
fn hstar_from_saved_zeros_matches_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z.csv");
    let p = path.to_str().unwrap();
    stdout(&["zeros", "--delta", "-4", "--T", "60", "--out", p]);
    let a = stdout(&["hstar", "--delta", "-4", "--T", "60", "--t", "3.5", "--zeros", p]);
    let b = stdout(&["hstar", "--delta", "-4", "--T", "60", "--t", "3.5"]);
    assert_eq!(a, b);
}

#[test]
fn hstar_rejects_zero_file_for_other_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z.csv");
    let p = path.to_str().unwrap();
    stdout(&["zeros", "--delta", "-4", "--T", "30", "--out", p]);
    let out = run(&["hstar", "--delta", "-3", "--T", "30", "--t", "0", "--zeros", p]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let bad = run(&["mertens", "--delta", "7", "--x", "3"]);
    assert_eq!(bad.status.code(), Some(2));
    let missing = run(&[
        "hstar", "--delta", "-4", "--T", "30", "--t", "0", "--zeros", "/nonexistent/z.csv",
    ]);
    assert_eq!(missing.status.code(), Some(4));
}

#[test]
fn dist_masses_sum_to_one() {
    let t = rows(&stdout(&["dist", "--delta", "-4", "--Y", "8", "--bins", "20"]));
    assert_eq!(t.len(), 20);
    let total: f64 = t.iter().map(|r| r[2].parse::<f64>().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn json_output_parses() {
    let text = stdout(&["tables", "--real", "--dmax", "12", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v[0]["D"], 5);
}

#[test]
fn output_independent_of_thread_count() {
    let args = ["tables", "--imaginary", "--dmax", "200"];
    let one = stdout(&[&["--threads", "1"][..], &args].concat());
    let four = stdout(&[&["--threads", "4"][..], &args].concat());
    assert_eq!(one, four);
    let d1 = stdout(&["--threads", "1", "dist", "--delta", "-3", "--Y", "7"]);
    let d4 = stdout(&["--threads", "4", "dist", "--delta", "-3", "--Y", "7"]);
    assert_eq!(d1, d4);
}
