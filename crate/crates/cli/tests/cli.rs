use std::path::PathBuf;
use std::process::{Command, Output};

fn dmr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dmr")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_input(name: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("dmr-cli-{}-{}.json", std::process::id(), name));
    std::fs::write(&p, body).unwrap();
    p
}

const MEMBER: &str = r#"{"N":3,"alphabet":"X","max_degree":1,"rational":true,"terms":[
  {"word":[1],"coeff":["1","0"]},{"word":[2],"coeff":["1","0"]}]}"#;
const NON_MEMBER: &str = r#"{"N":3,"alphabet":"X","max_degree":1,"rational":true,"terms":[
  {"word":[0],"coeff":["1","0"]}]}"#;
const CONGRUENT: &str = r#"{"N":4,"alphabet":"Xt","max_degree":2,"rational":true,"terms":[
  {"word":[1],"coeff":["1","0"]},{"word":[0,3],"coeff":["-1/2","0"]}]}"#;

#[test]
fn verify_all_passes() {
    let o = dmr(&["verify", "--suite", "all", "--n", "3", "--degree", "3", "--trials", "5", "--seed", "7"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("[descent] PASS"));
}

#[test]
fn verify_hopf_at_level_four() {
    let o = dmr(&["verify", "--suite", "hopf", "--n", "4", "--degree", "4", "--trials", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn sabotaged_qtilde_fails_diagrams_with_witness() {
    let o = dmr(&["verify", "--suite", "diagrams", "--fault", "qtilde"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("FAIL N=3 F q~ = p F"), "{}", out);
    assert!(out.contains("witness: input"), "{}", out);
}

#[test]
fn verify_json_is_reproducible() {
    let args = ["verify", "--suite", "bracket", "--n", "3", "--trials", "4", "--seed", "3", "--json"];
    let (a, b) = (dmr(&args), dmr(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let j: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(j["suites"][0]["suite"], "bracket");
}

#[test]
fn verify_rejects_bad_arguments() {
    assert_eq!(code(&dmr(&["verify", "--suite", "nope"])), 2);
    assert_eq!(code(&dmr(&["verify", "--suite", "iso", "--n", "2"])), 2);
    assert!(stdout(&dmr(&["verify", "--list"])).contains("dmr-transport"));
}

#[test]
fn dim_examples() {
    let o = dmr(&["dim", "--algebra", "dmr0-N", "--n", "3", "--degree", "1", "--field", "Q"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "1");
    let o = dmr(&["dim", "--algebra", "dmr0-muN", "--n", "4", "--degree", "1", "--field", "QmuN"]);
    assert_eq!(stdout(&o).trim(), "2");
    let o = dmr(&["dim", "--algebra", "dmr0-muN", "--n", "3", "--degree", "2", "--basis"]);
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["dim"], 1);
    assert_eq!(code(&dmr(&["dim", "--algebra", "dmr0-N", "--n", "3", "--degree", "1", "--field", "R"])), 2);
    assert_eq!(code(&dmr(&["dim", "--algebra", "dmr9", "--n", "3", "--degree", "1"])), 2);
}

#[test]
fn dim_resource_cap() {
    let o = dmr(&["dim", "--algebra", "dmr0-muN", "--n", "12", "--degree", "9"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn invariants_example() {
    let o = dmr(&["invariants", "--n", "3", "--degree", "1"]);
    assert_eq!(code(&o), 0);
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["invariant_dim"], 1);
    assert_eq!(j["basis"].as_array().unwrap().len(), 1);
}

#[test]
fn numeric_checks() {
    let o = dmr(&["numeric", "--check", "distribution", "--n", "4", "--d", "2", "--k", "2", "--alpha", "0", "--terms", "1000000", "--tol", "1e-6"]);
    assert_eq!(code(&o), 0);
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["pass"], true);
    for key in ["value", "bound", "residual"] {
        assert!(j.get(key).is_some());
    }
    let o = dmr(&["numeric", "--check", "bridge", "--n", "3", "--k", "2,1", "--alpha", "1,2", "--terms", "100000", "--tol", "1e-4"]);
    assert_eq!(code(&o), 0);
    let o = dmr(&["numeric", "--check", "stuffle", "--n", "4", "--roots", "1,3", "--terms", "100000", "--tol", "1e-5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&dmr(&["numeric", "--check", "bridge", "--n", "3", "--k", "1", "--alpha", "1"])), 2);
    assert_eq!(code(&dmr(&["numeric", "--check", "distribution", "--n", "4", "--d", "2", "--alpha", "1"])), 2);
}

#[test]
fn check_reports() {
    let m = write_input("member", MEMBER);
    let o = dmr(&["check", "--algebra", "dmr0-muN", "--input", m.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let bad = write_input("nonmember", NON_MEMBER);
    let o = dmr(&["check", "--algebra", "dmr0-muN", "--input", bad.to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 1);
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["i"]["pass"], false);
    let o = dmr(&["check", "--algebra", "dmr0-N", "--input", m.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let junk = write_input("junk", "{not json");
    assert_eq!(code(&dmr(&["check", "--algebra", "dmr0-muN", "--input", junk.to_str().unwrap()])), 2);
}

#[test]
fn eval_maps() {
    let f = write_input("congruent", CONGRUENT);
    let o = dmr(&["eval", "--map", "F", "--input", f.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["alphabet"], "X");
    assert_eq!(j["rational"], false);
    let o = dmr(&["eval", "--map", "T-tilde:1", "--input", f.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&dmr(&["eval", "--map", "T-tilde", "--input", f.to_str().unwrap()])), 2);
    assert_eq!(code(&dmr(&["eval", "--map", "p", "--input", f.to_str().unwrap()])), 2);
    assert!(stdout(&dmr(&["eval", "--list"])).contains("galois-delta-tilde"));
}

#[test]
fn dist_check_residuals() {
    let f = write_input("dist", CONGRUENT);
    let o = dmr(&["dist-check", "--n", "4", "--input", f.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["divisors"].as_array().unwrap().len(), 3);
    assert_eq!(code(&dmr(&["dist-check", "--n", "3", "--input", f.to_str().unwrap()])), 2);
}
