use std::path::PathBuf;
use std::process::{Command, Output};

use mcalg::spec_file::parse_spec;
use mcalg::suites::build;

fn spec_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mcalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn mcalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcalg")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn exit_codes() {
    let good = spec_file("good.spec", "kind=multicube\nsizes=1,1\n");
    let o = mcalg(&["check", good.to_str().unwrap(), "--suite", "basicGD"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let a4 = spec_file("a4.spec", "kind=presented atoms=2 elements=0,1,2,3 T=1:2");
    let o = mcalg(&["check", a4.to_str().unwrap(), "--suite", "delta-operator"]);
    assert_eq!(o.status.code(), Some(1));

    let bad = spec_file("bad.spec", "kind=multicube\nsizes=1,-1\n");
    let o = mcalg(&["check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2"), "{err}");

    let o = mcalg(&["decompose", a4.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_report() {
    let a4 = spec_file("a4-json.spec", "kind=presented atoms=2 elements=0,1,2,3 T=1:2");
    let o = mcalg(&["check", a4.to_str().unwrap(), "--suite", "delta-operator", "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["suite"], "delta-operator");
    assert_eq!(v["size"], 4);
    assert_eq!(v["passed"], false);
    assert_eq!(v["witness"]["rule"], "c");
    assert!(v["elapsed_ms"].is_number());
}

#[test]
fn dot_is_stable() {
    let p = spec_file("dot.spec", "kind=multicube sizes=1,1");
    let a = mcalg(&["export-dot", p.to_str().unwrap()]);
    let b = mcalg(&["export-dot", p.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("graph "));
}

#[test]
fn envelope_output_reads_back() {
    let p = spec_file("env.spec", "kind=presented atoms=2 elements=1,2,3 T=1:2");
    let o = mcalg(&["envelope", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let spec = parse_spec(&stdout(&o)).unwrap();
    assert_eq!(build(&spec).unwrap().len(), 3);
}

#[test]
fn decompose_and_fixedpoints() {
    let p = spec_file("fp.spec", "kind=multicube sizes=1");
    let o = mcalg(&["decompose", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains(" -> ")).count(), 4);
    let o = mcalg(&["fixedpoints", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("nucleus:"));
}
