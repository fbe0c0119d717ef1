mod common;

use std::path::Path;

use pseudochar::cli::docs::{parse_document, pseudochar_json, representation_json, Document, GroupSpec};
use pseudochar::cli::run;
use pseudochar::conjugacy::build_rho_2n;
use pseudochar::rep::{trace_function, DEFAULT_MAX_ORDER};
use pseudochar::GroupElement;

fn z4z4() -> GroupSpec {
    GroupSpec::Product {
        factors: vec![GroupSpec::Cyclic { m: 4 }, GroupSpec::Cyclic { m: 4 }],
    }
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn rho6_file(dir: &Path) -> String {
    let rho = build_rho_2n(3).unwrap();
    let v = representation_json(&z4z4(), &rho, &[GroupElement(4), GroupElement(1)]);
    write(dir, "rho6.json", &v.to_string())
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let rho = rho6_file(dir.path());
    let ok = run(["pseudochar", "verify", &rho, "--family", "o"]);
    assert_eq!(ok.code, 0, "{}{}", ok.stdout, ok.stderr);
    assert!(ok.stdout.contains("verdict: PASS"));
    let wrong = run(["pseudochar", "verify", &rho, "--family", "gl", "--dim", "5"]);
    assert_eq!(wrong.code, 1);
    assert!(wrong.stdout.contains("T(1)=n at (0): 1"));
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"kind":"pseudocharacter","group":{"kind":"cyclic","m":2},"dim":1,"T":["1","1/0"]}"#,
    );
    let b = run(["pseudochar", "verify", &bad, "--family", "gl"]);
    assert_eq!(b.code, 2);
    assert!(b.stderr.contains("zero denominator"));
    let missing = run(["pseudochar", "verify", "/nonexistent/file.json", "--family", "gl"]);
    assert_eq!(missing.code, 2);
}

#[test]
fn verify_so_even_with_pl_table() {
    let dir = tempfile::tempdir().unwrap();
    let rho = rho6_file(dir.path());
    let out = run(["pseudochar", "verify", &rho, "--family", "so", "--json"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "pass");
    let axioms: Vec<&str> = v["tallies"].as_array().unwrap().iter().map(|t| t["axiom"].as_str().unwrap()).collect();
    assert!(axioms.contains(&"P.model") && axioms.contains(&"det(T)=1"));
}

#[test]
fn pseudocharacter_document_with_sampling_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let d = trace_function(&build_rho_2n(3).unwrap()).unwrap();
    let path = write(dir.path(), "t.json", &pseudochar_json(&z4z4(), &d).to_string());
    let args = ["pseudochar", "verify", &path, "--family", "gl", "--budget", "50000", "--seed", "11"];
    let a = run(args);
    let b = run(args);
    assert_eq!(a, b);
    assert_eq!(a.code, 0);
    assert!(a.stdout.contains("sampled"));
    assert!(a.stdout.contains("(seed "));
}

#[test]
fn conjugacy_compare_against_trivial() {
    let dir = tempfile::tempdir().unwrap();
    let rho = rho6_file(dir.path());
    let triv = write(
        dir.path(),
        "triv.json",
        &serde_json::json!({
            "kind": "representation",
            "group": {"kind": "product", "factors": [{"kind": "cyclic", "m": 4}, {"kind": "cyclic", "m": 4}]},
            "generators": [
                {"element": 4, "matrix": identity(6)},
                {"element": 1, "matrix": identity(6)},
            ]
        })
        .to_string(),
    );
    let out = run(["pseudochar", "conjugacy-compare", &rho, &triv, "--family", "so"]);
    assert_eq!(out.code, 1, "{}{}", out.stdout, out.stderr);
    assert!(out.stdout.contains("not element-conjugate"));
}

fn identity(n: usize) -> Vec<Vec<String>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { "1" } else { "0" }.to_string()).collect())
        .collect()
}

#[test]
fn counterexample_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let o = run(["pseudochar", "so-counterexample", "--n", "3", "--out", out_dir.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("witness: pl((1,0), (0,1), (0,1)) = 16"));
    let text = std::fs::read_to_string(out_dir.join("rho_6.json")).unwrap();
    let Document::Representation(back) = parse_document(&text, DEFAULT_MAX_ORDER).unwrap() else {
        panic!("not a representation")
    };
    assert_eq!(back, build_rho_2n(3).unwrap());
    let crit: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("criterion_6.json")).unwrap()).unwrap();
    assert_eq!(crit["holds"], true);
    assert_eq!(crit["witness"]["value"], "16");
    let conj = out_dir.join("rho_6_conjugate.json");
    let cmp = run([
        "pseudochar",
        "conjugacy-compare",
        out_dir.join("rho_6.json").to_str().unwrap(),
        conj.to_str().unwrap(),
        "--family",
        "so",
    ]);
    assert_eq!(cmp.code, 3);

    let o4 = run(["pseudochar", "so-counterexample", "--n", "4", "--json"]);
    assert_eq!(o4.code, 0);
    let v: serde_json::Value = serde_json::from_str(&o4.stdout).unwrap();
    assert_eq!(v["witness"]["tuple"], serde_json::json!([4, 1, 1, 1]));
    assert_ne!(v["witness"]["value"], "0");
    assert_eq!(run(["pseudochar", "so-counterexample", "--n", "2"]).code, 2);
}

#[test]
fn emit_relations_matches_between_families() {
    let gl = run(["pseudochar", "emit-relations", "--family", "gl", "--n", "2"]);
    let o = run(["pseudochar", "emit-relations", "--family", "o", "--n", "2", "--j", "0"]);
    assert_eq!(gl.code, 0);
    // same terms, T in place of U
    assert_eq!(o.stdout.replace("T[", "U["), gl.stdout);
    let again = run(["pseudochar", "emit-relations", "--family", "go", "--n", "3"]);
    assert_eq!(again, run(["pseudochar", "emit-relations", "--family", "go", "--n", "3"]));
    assert_eq!(again.stdout.lines().count(), 3);
}

#[test]
fn closure_documents_respect_max_order() {
    let dir = tempfile::tempdir().unwrap();
    let shear = write(dir.path(), "shear.json", r#"{"generators":[{"matrix":[["1","1"],["0","1"]]}]}"#);
    let o = run(["pseudochar", "verify", &shear, "--family", "gl", "--max-order", "20"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("exceeded 20"));
}
