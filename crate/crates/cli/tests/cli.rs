use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use cohowork_core::chern16::MergedClassFunction;
use cohowork_core::cochain::Coefficients;
use cohowork_core::datasets;
use cohowork_core::groupkit::table;
use cohowork_core::tdual::TDualityDatum;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohowork"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn bundled_presentations_verify() {
    let o = run(&["verify-presentation"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("48 of 48 relators hold"));
    let o = run(&["verify-presentation", "--dataset", "s3", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn corrupted_matrix_fails_a_relator() {
    let dir = tempfile::tempdir().unwrap();
    let mut lines: Vec<String> = datasets::CO1_GENERATORS.text.lines().map(String::from).collect();
    let flipped = if lines[2].starts_with('0') { "1" } else { "0" };
    lines[2].replace_range(0..1, flipped);
    let gens = write(dir.path(), "gens.txt", &(lines.join("\n") + "\n"));
    let pres = write(dir.path(), "pres.txt", datasets::CO1_PRESENTATION.text);
    let o = run(&[
        "verify-presentation",
        "--presentation",
        &pres,
        "--generators",
        &gens,
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().any(|l| l.ends_with(",false")));
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let pres = write(dir.path(), "pres.txt", "gens: s t\nrel: s^2\nrel: u^2\n");
    let gens = write(dir.path(), "gens.txt", datasets::S3_GENERATORS.text);
    let o = run(&["verify-presentation", "--presentation", &pres, "--generators", &gens]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn h1_of_co1_modules() {
    for module in ["alt2", "quotient-by-invariant"] {
        let o = run(&["h1", "--module", module, "--format", "csv"]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(stdout(&o).lines().nth(1).unwrap().ends_with(",Z2"), "{}", stdout(&o));
    }
}

#[test]
fn bar_and_budget() {
    let o = run(&["bar", "--group", "Z3", "--degree", "3", "--format", "csv"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("Z3,3,3,U(1),Z3"));
    let o = run(&[
        "bar",
        "--group",
        "Z2^2",
        "--degree",
        "2",
        "--modulus",
        "2",
        "--format",
        "csv",
    ]);
    assert!(stdout(&o).contains("Z2 x Z2 x Z2"));
    let o = run(&["bar", "--group", "Q16", "--degree", "3", "--budget-seconds", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reproduce_suites() {
    let o = run(&["reproduce", "co1-h1", "--format", "csv"]);
    assert!(o.status.success());
    let rows: Vec<String> = stdout(&o).lines().skip(1).map(String::from).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.ends_with(",Z2,Z2,match")));

    let o = run(&["reproduce", "large-primes", "--format", "csv"]);
    let rows: Vec<String> = stdout(&o).lines().skip(1).map(String::from).collect();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r.ends_with(",0,0,match")));

    let o = run(&["reproduce", "chern"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("quoted inputs:"));
    assert!(stdout(&o).contains("q16_monster_class_fusion"));

    let o = run(&["reproduce", "all", "--budget-seconds", "0"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 mismatches, 1 skipped"));
}

#[test]
fn chern_commands() {
    let o = run(&["chern", "c2", "--traces", "4,-4,0,0", "--format", "csv"]);
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with(",10"));
    let o = run(&["chern", "divisibility", "--traces", "128,0,0,0"]);
    assert!(o.status.success());
    let o = run(&["chern", "divisibility", "--traces", "16,0,0,0"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["chern", "decompose", "--traces", "1,0,0,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("non-integral"));
    let o = run(&["chern", "constants"]);
    assert!(stdout(&o).contains("c2(V5) = 9"));
}

#[test]
fn character_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (values, expect) in [
        ([1, 1, 1, 1], "V0"),
        ([4, -4, 0, 0], "V5 + V6"),
        ([16, 0, 0, 0], "2 V6"),
    ] {
        let chi = MergedClassFunction::new(values);
        let text = chi.to_csv();
        assert_eq!(MergedClassFunction::from_csv(&text).unwrap(), chi);
        let f = write(dir.path(), "chi.csv", &text);
        let o = run(&["chern", "decompose", "--file", &f]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(stdout(&o).contains(expect), "{}", stdout(&o));
    }
    let f = write(
        dir.path(),
        "bad.csv",
        "class,order,value\n1A,1,1\n2A,2,1\n4D,4,1\n8F,8,1\n",
    );
    assert_eq!(run(&["chern", "c2", "--file", &f]).status.code(), Some(2));
}

#[test]
fn tdual_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let mut d = TDualityDatum::zero(table::cyclic(2), Coefficients::trivial(2, 2, 1)).unwrap();
    d.kappa.set(&[1, 1], &[1]).unwrap();
    let f = write(dir.path(), "d.txt", &d.to_text());
    let o = run(&["tdual", "validate", &f]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("valid"));
    let once = dir.path().join("dual.txt");
    let o = run(&["tdual", "dualize", &f, "-o", once.to_str().unwrap()]);
    assert!(o.status.success());
    let o = run(&["tdual", "dualize", once.to_str().unwrap()]);
    assert_eq!(TDualityDatum::from_text(&stdout(&o)).unwrap(), d);

    let mut bad = d.clone();
    bad.beta.set(&[1, 1, 1], &[1]).unwrap();
    let f = write(dir.path(), "bad.txt", &bad.to_text());
    let o = run(&["tdual", "validate", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("invalid"));
}

#[test]
fn kunneth_check() {
    let o = run(&["kunneth", "--left", "Z2", "--right", "Z2", "--check"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("= Z2 x Z2 x Z2"));
}
