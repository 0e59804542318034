use std::io::Write;
use std::process::{Command, Output, Stdio};

fn sheafhom(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sheafhom"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(args: &[&str], stdin: &str) -> String {
    let out = sheafhom(args, stdin);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn generate(args: &[&str]) -> String {
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    stdout(&full, "")
}

fn table(complex: &str, args: &[&str]) -> String {
    let mut full = vec!["betti", "--all-p"];
    full.extend_from_slice(args);
    stdout(&full, complex)
}

#[test]
fn tropical_line_tables() {
    let line = generate(&["bergman", "--uniform", "2", "3"]);
    assert_eq!(
        table(&line, &["--sheaf", "f", "--variant", "usual"]),
        "1 0\n2 0\n"
    );
    assert_eq!(
        table(&line, &["--sheaf", "f", "--variant", "bm"]),
        "0 2\n0 1\n"
    );
}

#[test]
fn cube_w_table() {
    let cube = generate(&["cube", "3"]);
    assert_eq!(
        table(&cube, &["--sheaf", "w", "--variant", "cochain"]),
        "1 0 0 0\n0 3 0 0\n0 0 3 0\n0 0 0 1\n"
    );
    assert_eq!(
        stdout(&["print-complex", "--variant", "cochain"], &cube),
        " -1      0       1        2       3       4\nk^0 --> k^8 --> k^12 --> k^6 --> k^1 --> k^0\n"
    );
}

#[test]
fn bergman_fans() {
    let k4 = generate(&["bergman", "--graph", "complete:4"]);
    assert_eq!(
        table(&k4, &["--sheaf", "f", "--variant", "usual"]),
        "1 0 0\n5 0 0\n6 0 0\n"
    );
    assert_eq!(
        table(&k4, &["--sheaf", "f", "--variant", "bm"]),
        "0 0 6\n0 0 5\n0 0 1\n"
    );
    let u36 = generate(&["bergman", "--uniform", "3", "6"]);
    assert_eq!(
        table(&u36, &["--sheaf", "f", "--variant", "usual"]),
        "1 0 0\n5 0 0\n10 0 0\n"
    );
    let u36_min = generate(&["bergman", "--uniform", "3", "6", "--min"]);
    assert_eq!(
        table(&u36_min, &["--sheaf", "f", "--variant", "bm"]),
        "0 0 10\n0 0 5\n0 0 1\n"
    );
}

#[test]
fn conic_info_and_tables() {
    let conic = generate(&["hypersurface", "max(0,x+5,y+3,x+y+9)"]);
    assert_eq!(
        stdout(&["info"], &conic),
        "ambient_dim 2\ndim 1\nf_vector 2 5\nbounded_f_vector 2 1\n\
         far_faces 5\nbounded_faces 3\nunbounded_faces 4\n"
    );
    assert_eq!(
        table(&conic, &["--sheaf", "f", "--variant", "usual"]),
        "1 0\n3 0\n"
    );
    assert_eq!(
        table(&conic, &["--sheaf", "f", "--variant", "bm"]),
        "0 3\n0 1\n"
    );
    assert_eq!(
        stdout(&["betti", "--sheaf", "w", "--variant", "cochain"], &conic),
        "1 0\n"
    );
}

#[test]
fn explicit_variable_order() {
    let a = generate(&["hypersurface", "max(0,x+5,y+3,x+y+9)"]);
    let b = generate(&["hypersurface", "max(0,x+5,y+3,x+y+9)", "--vars", "y,x"]);
    assert_ne!(a, b);
    assert_eq!(stdout(&["info"], &a), stdout(&["info"], &b));
}

#[test]
fn output_is_deterministic() {
    let a = generate(&["bergman", "--graph", "complete:4"]);
    let b = generate(&["bergman", "--graph", "complete:4"]);
    assert_eq!(a, b);
    let sa = stdout(&["sheaf", "--sheaf", "f", "--p", "1"], &a);
    let sb = stdout(&["sheaf", "--sheaf", "f", "--p", "1"], &b);
    assert_eq!(sa, sb);
}

#[test]
fn chain_export_round_trips_through_homology() {
    let cube = generate(&["cube", "2"]);
    let chain = stdout(
        &["chain", "--sheaf", "w", "--p", "1", "--variant", "cochain"],
        &cube,
    );
    assert_eq!(stdout(&["homology"], &chain), "0 2 0\n");
    assert_eq!(
        stdout(
            &["betti", "--sheaf", "w", "--p", "1", "--variant", "cochain"],
            &cube
        ),
        "0 2 0\n"
    );
}

#[test]
fn hand_built_sheaf_file() {
    let dir = std::env::temp_dir().join(format!("sheafhom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cube = generate(&["cube", "1"]);
    let sheaf = stdout(&["sheaf", "--sheaf", "constant"], &cube);
    let path = dir.join("sheaf.json");
    std::fs::write(&path, &sheaf).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(
        stdout(&["betti", "--sheaf-file", p, "--variant", "cs"], &cube),
        "1 0\n"
    );
    assert!(stdout(&["validate", "--sheaf-file", p], &cube).ends_with("ok\n"));

    let mut v: serde_json::Value = serde_json::from_str(&sheaf).unwrap();
    let blocks = v["blocks"].as_object_mut().unwrap();
    let key = blocks.keys().next().unwrap().clone();
    blocks.remove(&key);
    std::fs::write(&path, v.to_string()).unwrap();
    let out = sheafhom(&["validate", "--sheaf-file", p], &cube);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn validate_reports_every_constructor() {
    let line = generate(&["bergman", "--uniform", "2", "3"]);
    let out = stdout(&["validate"], &line);
    assert_eq!(out.lines().count(), 6);
    assert!(out.lines().all(|l| l.ends_with(": ok")));
}

#[test]
fn exit_codes() {
    let bad_poly = sheafhom(&["generate", "hypersurface", "max(0,x"], "");
    assert_eq!(bad_poly.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad_poly.stderr).contains("position"));

    let cube = generate(&["cube", "2"]);
    let wrong = sheafhom(&["betti", "--sheaf", "w", "--variant", "usual"], &cube);
    assert_eq!(wrong.status.code(), Some(1));

    let not_json = sheafhom(&["info"], "{");
    assert_eq!(not_json.status.code(), Some(1));

    let not_complex = sheafhom(
        &["homology"],
        r#"{"direction":"chain","differentials":[[["1"]],[["1"]]]}"#,
    );
    assert_eq!(not_complex.status.code(), Some(1));

    let disconnected = sheafhom(&["generate", "bergman", "--uniform", "3", "3"], "");
    assert_eq!(disconnected.status.code(), Some(1));

    let usage = sheafhom(&["betti", "--variant", "nonsense"], "");
    assert_eq!(usage.status.code(), Some(1));
}
