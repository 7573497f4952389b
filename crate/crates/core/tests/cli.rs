use std::process::{Command, Output};

fn onerel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_onerel")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn classify_prints_the_verdict_record() {
    let o = onerel(&["classify", "aba=ba"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("pattern=xyx=yx prefix=no automatic=no biautomatic=no"));
}

#[test]
fn complete_prints_the_basis() {
    let o = onerel(&["complete", "aa=cc"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "aa->cc\nacc->cca\nstatus=complete\n");
}

#[test]
fn exit_codes() {
    assert_eq!(onerel(&["classify", "ab%=a"]).status.code(), Some(2));
    assert_eq!(onerel(&["classify", "a=a=a"]).status.code(), Some(2));
    assert_eq!(onerel(&["classify", "abab=a"]).status.code(), Some(3));
    assert_eq!(onerel(&["structure", "aba=ba", "--out", "/nonexistent/x"]).status.code(), Some(4));
    assert_eq!(onerel(&["verify", "ab=a", "--flavor", "ll"]).status.code(), Some(4));
}

#[test]
fn verify_passes_for_a_commuting_pair() {
    let o = onerel(&["verify", "ab=ba", "--depth", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("overall=pass\n"));
}

#[test]
fn structure_round_trip_reports_the_same() {
    let dir = std::env::temp_dir().join(format!("onerel-cli-{}", std::process::id()));
    let out = dir.to_str().unwrap();
    assert_eq!(onerel(&["structure", "xyy=yx", "--out", out, "--format", "dot"]).status.code(), Some(0));
    assert!(dir.join("acceptor.dot").exists());
    let fresh = onerel(&["verify", "xyy=yx", "--depth", "6"]);
    let loaded = onerel(&["verify", "--from", out, "--depth", "6"]);
    assert_eq!(loaded.status.code(), Some(0));
    assert_eq!(stdout(&fresh), stdout(&loaded));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn normal_forms_and_enumeration() {
    let o = onerel(&["nf", "aa=c", "aaaaa", "--seed", "7"]);
    assert_eq!(stdout(&o), "word=aaaaa nf=cca seed=7 random_nf=cca\n");
    let o = onerel(&["enumerate", "aa=c", "--depth", "2"]);
    assert_eq!(stdout(&o), "c\na\ncc\nca\n");
}

#[test]
fn nerode_prints_one_line_per_depth() {
    let o = onerel(&["nerode", "aba=ba", "--depth", "6", "--flavor", "rr"]);
    let lines: Vec<String> = stdout(&o).lines().filter(|l| l.starts_with("mult=a")).map(String::from).collect();
    assert_eq!(lines.len(), 7);
    assert!(lines[6].starts_with("mult=a flavor=rr depth=6 bound="));
}

#[test]
fn table_has_every_pattern() {
    let o = onerel(&["table"]);
    let rows = stdout(&o);
    assert_eq!(rows.lines().count(), 56);
    assert_eq!(rows.lines().filter(|l| l.contains(" automatic=no ")).count(), 3);
}
