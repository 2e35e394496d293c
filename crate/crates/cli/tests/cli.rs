use std::path::Path;
use std::process::{Command, Output};

fn eaqec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eaqec"))
        .args(args)
        .current_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("../.."))
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = eaqec(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn construct_then_inspect() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("rep4.code");
    let f = file.to_str().unwrap();
    stdout(&["construct", "repetition", "--n", "4", "-o", f]);
    assert_eq!(stdout(&["distance", f]).trim(), "3");
    assert!(stdout(&["validate", f]).starts_with("valid"));
    assert_eq!(stdout(&["enumerator", f, "--group", "logical"]).trim(), "4,logical,1,0,0,1,2");
    assert_eq!(stdout(&["enumerator", f]).trim(), "4,stabilizer,1,1,15,27,20");

    let dual = dir.path().join("acc4.code");
    stdout(&["dual", f, "-o", dual.to_str().unwrap()]);
    assert_eq!(stdout(&["distance", dual.to_str().unwrap()]).trim(), "1");
}

#[test]
fn invalid_code_file_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.code");
    // Two commuting rows cannot be a logical pair.
    std::fs::write(&file, "n=2 k=1 c=0\nS: ZZ\nL: XX ZZ\n").unwrap();
    let out = eaqec(&["validate", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn macwilliams_and_bounds() {
    assert_eq!(stdout(&["macwilliams", "--n", "3", "--log2-order", "4", "--coeffs", "1,0,9,6"]).trim(), "1,0,0,3");
    assert_eq!(stdout(&["bound", "--n", "8", "--k", "3", "--c", "5", "--method", "lp"]).trim(), "5");
    assert_eq!(stdout(&["bound", "--n", "5", "--k", "1", "--c", "4", "--method", "singleton"]).trim(), "5");
    assert_eq!(stdout(&["bound", "--n", "9", "--k", "2", "--c", "7", "--method", "plotkin"]).trim(), "7");
    let all = stdout(&["bound", "--n", "6", "--k", "2", "--c", "4"]);
    assert!(all.contains("upper=4"), "{all}");
}

#[test]
fn nonexistence_search() {
    let out = stdout(&["check-nonexistence", "--n", "4", "--family", "repetition"]);
    assert!(out.contains("exists=false"), "{out}");
    let out = stdout(&["check-nonexistence", "--n", "5", "--family", "accumulator", "--allow-odd"]);
    assert!(out.contains("exists=true"), "{out}");
}

#[test]
fn curves_and_simulation() {
    let csv = stdout(&["error-curve", "--construct", "repetition:3", "--random", "3,1", "--grid", "0.1"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "subject,p,gamma,bound");
    assert!(lines[1].starts_with("repetition3,0.1,4.1307682"), "{csv}");
    assert!(lines[2].starts_with("random[[3,1]],0.1,"), "{csv}");

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("rep3.code");
    stdout(&["construct", "repetition", "--n", "3", "-o", file.to_str().unwrap()]);
    let a = stdout(&["simulate", file.to_str().unwrap(), "--p", "0.1", "--trials", "2000", "--seed", "7"]);
    let b = stdout(&["simulate", file.to_str().unwrap(), "--p", "0.1", "--trials", "2000", "--seed", "7"]);
    assert_eq!(a, b);
    assert!(a.starts_with("trials=2000 failures="), "{a}");
}

#[test]
fn small_table() {
    let csv = stdout(&["table", "--nmax", "5"]);
    assert!(csv.starts_with("n,k,c,lower,upper,lower_provenance,upper_provenance\n"));
    assert!(csv.contains("\n5,2,3,3,4,"), "{csv}");
    assert_eq!(csv.lines().count(), 1 + 2 + 3 + 4);
}

#[test]
fn usage_and_domain_errors() {
    assert_eq!(eaqec(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(eaqec(&["bound", "--n", "3"]).status.code(), Some(2));
    let out = eaqec(&["bound", "--n", "3", "--k", "5", "--c", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    assert_eq!(eaqec(&["check-nonexistence", "--n", "8", "--family", "rep"]).status.code(), Some(1));
    assert_eq!(eaqec(&["distance", "/nonexistent/file"]).status.code(), Some(1));
    assert_eq!(eaqec(&["table", "--nmax", "16"]).status.code(), Some(1));
}
