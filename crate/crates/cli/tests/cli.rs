//! End-to-end runs of the `kurosh` binary.

use std::path::Path;
use std::process::{Command, Output};

const ASS: &str = "[generators]\nm : 2\n\n[relations]\nm(m(1,2),3) - m(1,m(2,3))\n";
const TWO: &str = "[generators]\na : 2\nb : 2\n";

fn kurosh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kurosh"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn free_dim_tsv() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "m.txt", "[generators]\nm : 2\n");
    let o = kurosh(&["free-dim", "--input", &f, "--order", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\t1\n2\t2\n3\t12\n4\t120\n5\t1680\n");
}

#[test]
fn quotient_dim_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "ass.txt", ASS);
    let o = kurosh(&["quotient-dim", "--input", &f, "--arity", "3"]);
    assert_eq!(stdout(&o), "3\t12\t6\t6\n");
    let o = kurosh(&["quotient-dim", "--input", &f, "--max-degree", "4"]);
    assert_eq!(
        stdout(&o),
        "1\t1\t0\t1\n2\t2\t0\t2\n3\t12\t6\t6\n4\t120\t96\t24\n"
    );
}

#[test]
fn gs_check_json() {
    let o = kurosh(&[
        "gs-check",
        "--generators",
        "0,0,1",
        "--relations",
        "0,0,0,1",
        "--order",
        "8",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "NegativeAt(3)");
    assert_eq!(v["first_negative"], 3);
    assert_eq!(v["criterion"][3], "-1");
    assert!(v["euler_defect"].is_null());
    assert_eq!(v["bound"].as_array().unwrap().len(), 9);
}

#[test]
fn gs_check_with_presentation_reports_defect() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "ass.txt", ASS);
    let o = kurosh(&["gs-check", "--input", &f, "--order", "6"]);
    let out = stdout(&o);
    assert!(out.contains("verdict\tNegativeAt(3)\n"), "{out}");
    assert!(out.contains("euler_defect\t0, 0, 0, 0, 1, 3, 6\n"), "{out}");
}

#[test]
fn gs_root_bracket() {
    let o = kurosh(&[
        "gs-root",
        "--generators",
        "0,0,2",
        "--relations",
        "0",
        "--interval",
        "0,1",
    ]);
    assert_eq!(stdout(&o), "127/256\t129/256\ttrue\n");
    let o = kurosh(&["gs-root", "--generators", "0,0,1", "--relations", "0,0,0,1"]);
    assert_eq!(stdout(&o), "none\n");
}

#[test]
fn reduce_and_closure() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "ass.txt", ASS);
    let o = kurosh(&["reduce", "--input", &f, "--element", "m(m(1,2),3)"]);
    assert_eq!(stdout(&o), "m(1,m(2,3))\n");
    let o = kurosh(&[
        "reduce",
        "--input",
        &f,
        "--element",
        "m(m(1,2),3) - m(1,m(2,3))",
    ]);
    assert_eq!(stdout(&o), "0\n");
    let o = kurosh(&[
        "closure",
        "--input",
        &f,
        "--element",
        "m(1,2)",
        "--max-degree",
        "4",
    ]);
    assert_eq!(stdout(&o), "2\t1\n3\t1\n4\t1\nnilpotent_by\tnone\n");
}

#[test]
fn series_arithmetic() {
    let o = kurosh(&[
        "series",
        "--op",
        "reciprocal",
        "--series",
        "1,-1",
        "--order",
        "3",
    ]);
    assert_eq!(stdout(&o), "0\t1\n1\t1\n2\t1\n3\t1\n");
    let o = kurosh(&[
        "series", "--op", "mul", "--series", "1/2,1", "--with", "2", "--order", "1", "--format",
        "json",
    ]);
    assert_eq!(
        stdout(&o),
        "{\n  \"coefficients\": [\n    \"1\",\n    \"2\"\n  ]\n}\n"
    );
}

#[test]
fn input_errors_exit_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "ass.txt", ASS);
    let o = kurosh(&["reduce", "--input", &f, "--element", "m(m(1,2),3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("syntax error at 10"), "{}", stderr(&o));
    let bad = write(
        dir.path(),
        "bad.txt",
        "[generators]\nm : 2\n[relations]\nm(1,2 - m(2,1)\n",
    );
    let o = kurosh(&["quotient-dim", "--input", &bad, "--arity", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("line 4: syntax error at"),
        "{}",
        stderr(&o)
    );
    let o = kurosh(&["gs-check", "--generators", "0,1", "--relations", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = kurosh(&["free-dim", "--input", "/nonexistent/file"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn budget_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "m.txt", "[generators]\nm : 2\n");
    let o = kurosh(&[
        "quotient-dim",
        "--input",
        &f,
        "--arity",
        "6",
        "--budget",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let o = kurosh(&["quotient-dim", "--input", &f, "--arity", "9"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn strong_round_trip_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let sig = write(dir.path(), "ab.txt", TWO);
    let pres = dir.path().join("burnside.txt");
    let cert = dir.path().join("burnside.json");
    let (pres, cert) = (pres.to_str().unwrap(), cert.to_str().unwrap());
    let o = kurosh(&[
        "kurosh-strong",
        "--input",
        &sig,
        "--order",
        "4",
        "--presentation-out",
        pres,
        "--certificate-out",
        cert,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "a(1,2)\t3\t4\nverdict\tNonNegativeUpToOrder\n");
    let o = kurosh(&[
        "burnside-verify",
        "--input",
        pres,
        "--certificate",
        cert,
        "--max-degree",
        "6",
        "--element",
        "b(1,2)",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "clause\ta\tpass\tcomponents 1..=6 are nonzero\n\
         clause\tc\tpass\tnilpotent by arities [5]\n\
         clause\tgs\tpass\tcriterion recomputes non-negative up to order 4\n\
         sample\tb(1,2)\tnilpotent_by\tnone\n\
         verdict\tpass\n"
    );
    // a tampered certificate is rejected
    let text = std::fs::read_to_string(cert)
        .unwrap()
        .replace("NonNegativeUpToOrder", "NegativeAt(2)");
    let tampered = write(dir.path(), "tampered.json", &text);
    let o = kurosh(&[
        "burnside-verify",
        "--input",
        pres,
        "--certificate",
        &tampered,
        "--max-degree",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn weak_emits_reparseable_presentation() {
    let dir = tempfile::tempdir().unwrap();
    let sig = write(dir.path(), "m.txt", "[generators]\nm : 2\n");
    let pres = dir.path().join("weak.txt");
    let cert = dir.path().join("weak.json");
    let (pres, cert) = (pres.to_str().unwrap(), cert.to_str().unwrap());
    let o = kurosh(&[
        "kurosh-weak",
        "--input",
        &sig,
        "--elements",
        "2",
        "--presentation-out",
        pres,
        "--certificate-out",
        cert,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "m(1,2)\t2\t3\nm(2,1)\t3\t4\nverdict\tNonNegativeUpToOrder\n"
    );
    let o = kurosh(&[
        "burnside-verify",
        "--input",
        pres,
        "--certificate",
        cert,
        "--max-degree",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("clause\tb\tpass"));
}

#[test]
fn over_related_presentation_fails_clause_a() {
    let dir = tempfile::tempdir().unwrap();
    let pres = write(
        dir.path(),
        "dead.txt",
        "[generators]\nm : 2\n[relations]\nm(1,2)\nm(2,1)\n",
    );
    let cert = write(
        dir.path(),
        "dead.json",
        r#"{"kind":"weak","processed":[],"relation_count":2,"gs":{"order":4,"criterion":["1","0","0","0","0"],"verdict":"NonNegativeUpToOrder","first_negative":null,"euler_defect":null,"euler_defect_nonnegative":null,"bound":["0","1","0","0","0"],"note":"certified only up to order 4; conditional on minimal generators and relations"},"verified_up_to":null}"#,
    );
    let o = kurosh(&[
        "burnside-verify",
        "--input",
        &pres,
        "--certificate",
        &cert,
        "--max-degree",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(
        stdout(&o).contains("clause\ta\tfail\tcomponent of arity 2 is zero"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "ass.txt", ASS);
    let args = [
        "gs-check", "--input", &f, "--order", "6", "--format", "json",
    ];
    assert_eq!(kurosh(&args).stdout, kurosh(&args).stdout);
}
