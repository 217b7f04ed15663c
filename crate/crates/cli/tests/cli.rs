use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn wphom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wphom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8")
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

#[test]
fn integral_homology_of_the_weight_four_triangle() {
    let o = wphom(&["homology", path_str(&fixture("triangle4.json"))]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "H0 = Z ⊕ Z/4 ⊕ Z/4; H1 = Z");
}

#[test]
fn coefficient_systems() {
    let f = fixture("triangle4.json");
    let run = |c: &str| stdout(&wphom(&["homology", path_str(&f), "--coeff", c])).trim().to_string();
    assert_eq!(run("q"), "H0 = Q; H1 = Q");
    assert_eq!(run("fp:2"), "H0 = Z/2 ⊕ Z/2 ⊕ Z/2; H1 = Z/2 ⊕ Z/2 ⊕ Z/2");
    assert_eq!(run("fp:3"), "H0 = Z/3; H1 = Z/3");
    let bad = wphom(&["homology", path_str(&f), "--coeff", "fp:4"]);
    assert_eq!(bad.status.code(), Some(1));
    let wrong_ring = wphom(&["homology", path_str(&f), "--coeff", "polymod:x"]);
    assert_eq!(wrong_ring.status.code(), Some(1));
}

#[test]
fn polynomial_weights() {
    let f = fixture("poly.json");
    let o = wphom(&["homology", path_str(&f)]);
    assert_eq!(stdout(&o).trim(), "H0 = Q[x] ⊕ Q[x]/(x^2); H1 = 0");
    let o = wphom(&["homology", path_str(&f), "--coeff", "polymod:x^2"]);
    assert_eq!(stdout(&o).trim(), "H0 = Q[x]/(x^2) ⊕ Q[x]/(x^2); H1 = Q[x]/(x^2)");
}

#[test]
fn validate_empty_and_broken_complexes() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    fs::write(&empty, r#"{"ring":"int","vertices":[],"simplices":[]}"#).unwrap();
    let o = wphom(&["validate", path_str(&empty)]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("valid: 0 simplices"));
    let h = wphom(&["homology", path_str(&empty)]);
    assert!(h.status.success());
    assert!(stdout(&h).contains("all homology vanishes"));

    let broken = dir.path().join("broken.json");
    fs::write(
        &broken,
        r#"{"ring":"int","vertices":["a","b"],"simplices":[
            {"vertices":["a"],"weight":"2"},
            {"vertices":["b"],"weight":"1"},
            {"vertices":["a","b"],"weight":"3"}]}"#,
    )
    .unwrap();
    let o = wphom(&["validate", path_str(&broken)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with(|c: char| c != 'v'));
    assert!(stdout(&o).contains("invalid"));
}

#[test]
fn parse_errors_exit_two_with_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"ring\": \"int\",\n  \"vertices\": [\"a\"],\n  \"simplices\": [{\"vertices\": [\"a\"], \"weight\": \"2y\"}]}").unwrap();
    let o = wphom(&["homology", path_str(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let graph = dir.path().join("g.txt");
    fs::write(&graph, "a b 1\nb c\n").unwrap();
    let o = wphom(&["graph2filtration", path_str(&graph)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"));

    let o = wphom(&["homology", path_str(&fixture("triangle4.json")), "--coeff", "zz"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_file_is_a_semantic_failure() {
    let o = wphom(&["homology", "/nonexistent/complex.json"]);
    assert_eq!(o.status.code(), Some(1));
}

/// The equal-weight triangle yields vertices of weight 1, edges of weight 2
/// and a 2-simplex of weight 8; the 2-simplex's boundary has coefficient
/// 8/2 = 4 on each edge, so the loop born at step 2 becomes Z/4 at step 3.
#[test]
fn graph_filtration_is_reingested() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tri.json");
    let o = wphom(&["graph2filtration", path_str(&fixture("triangle.txt")), "--out", path_str(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["steps"], 4);
    let weights: Vec<&str> = v["simplices"].as_array().unwrap().iter().map(|s| s["weight"].as_str().unwrap()).collect();
    assert_eq!(weights, ["1", "1", "1", "2", "2", "2", "8"]);
    let births: Vec<u64> = v["simplices"].as_array().unwrap().iter().map(|s| s["birth"].as_u64().unwrap()).collect();
    assert_eq!(births, [1, 1, 1, 2, 2, 2, 3]);

    let group = |k: &str, i: &str, q: &str| {
        let o = wphom(&["persist", path_str(&out), "--k", k, "--i", i, "--q", q]);
        assert!(o.status.success(), "{}", stderr(&o));
        stdout(&o).lines().last().unwrap().to_string()
    };
    assert_eq!(group("1", "2", "0"), "1 2 0 Z");
    assert_eq!(group("1", "2", "1"), "1 2 1 Z/4");
    assert_eq!(group("1", "3", "0"), "1 3 0 Z/4");
    assert_eq!(group("0", "1", "0"), "0 1 0 Z^3");
    assert_eq!(group("0", "1", "1"), "0 1 1 Z ⊕ Z/2 ⊕ Z/2");
}

#[test]
fn wrs_and_ideal_chain_filtrations_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let wrs = dir.path().join("wrs.json");
    assert!(wphom(&["filtration", "wrs", path_str(&fixture("triangle4.json")), "--out", path_str(&wrs)]).status.success());
    let ideal = dir.path().join("ideal.json");
    let o = wphom(&["filtration", "ideal-chain", path_str(&fixture("triangle4.json")), "--chain", "4", "--out", path_str(&ideal)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let a = stdout(&wphom(&["persist", path_str(&wrs), "--all"]));
    let b = stdout(&wphom(&["persist", path_str(&ideal), "--all"]));
    assert_eq!(a, b);
    assert!(a.contains("1 2 0 Z\n"));

    let bad = wphom(&["filtration", "ideal-chain", path_str(&fixture("triangle4.json")), "--chain", "4,2"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn stanley_reisner_filtration_is_persistent_over_z() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sr.json");
    let o = wphom(&["filtration", "stanley-reisner", path_str(&fixture("sr.json")), "--out", path_str(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = wphom(&["persist", path_str(&out), "--k", "1", "--i", "0", "--q", "0"]);
    assert_eq!(stdout(&o).lines().last().unwrap(), "1 0 0 Z");
}

#[test]
fn bockstein_recovers_integral_homology() {
    let o = wphom(&["bockstein", path_str(&fixture("triangle4.json")), "--recover"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("prime 2"));
    assert!(text.contains("H0 = Z ⊕ Z/4 ⊕ Z/4; H1 = Z"));
    assert!(text.contains("matches"));
    let o = wphom(&["bockstein", path_str(&fixture("triangle4.json")), "--prime", "3"]);
    assert!(stdout(&o).contains("page 1: E0=1, E1=1"));
}

#[test]
fn mayer_vietoris_is_exact_and_reported() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("mv.json");
    let f = fixture("triangle4.json");
    for coeff in ["z", "q", "fp:2", "zmod:4"] {
        let o = wphom(&[
            "--report",
            path_str(&report),
            "mv",
            path_str(&f),
            "--k0",
            path_str(&fixture("k0.txt")),
            "--k1",
            path_str(&fixture("k1.txt")),
            "--coeff",
            coeff,
        ]);
        assert!(o.status.success(), "{coeff}: {}", stderr(&o));
        let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
        assert_eq!(v["exact"], true);
    }
}

#[test]
fn ptop2_report() {
    let dir = tempfile::tempdir().unwrap();
    let wrs = dir.path().join("wrs.json");
    assert!(wphom(&["filtration", "wrs", path_str(&fixture("triangle4.json")), "--out", path_str(&wrs)]).status.success());
    let report = dir.path().join("p.json");
    let o = wphom(&["--report", path_str(&report), "ptop2", path_str(&wrs), "--prime", "2", "--k", "1", "--i", "1", "--q", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["consistent"], true);
    assert!(v["theta_k"]["matrix"].is_array());
}

#[test]
fn corpus_and_persistence_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let o = wphom(&["gen-corpus", "--seed", "42", "--count", "4", "--out", path_str(d.path())]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let mut names: Vec<_> = fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 12);
    for n in &names {
        assert_eq!(fs::read(a.path().join(n)).unwrap(), fs::read(b.path().join(n)).unwrap());
    }
    for n in 0..4 {
        let f = a.path().join(format!("filtration-{n:03}.json"));
        let first = wphom(&["persist", path_str(&f), "--all"]);
        assert!(first.status.success(), "{}", stderr(&first));
        assert_eq!(stdout(&first), stdout(&wphom(&["persist", path_str(&f), "--all"])));
        let c = a.path().join(format!("complex-{n:03}.json"));
        assert!(wphom(&["validate", path_str(&c)]).status.success());
        let g = a.path().join(format!("graph-{n:03}.txt"));
        assert!(wphom(&["graph2filtration", path_str(&g)]).status.success());
    }
}

/// Descending ranks put 0.9 first: the edge a-c gets exponent 1, the two
/// 0.5 edges exponent 2, and the 2-simplex 1 + 2 + 2 = 5. The thresholds
/// 1 < 2 < 4 < 32 then give births 1, 2, 3, 4.
#[test]
fn graph_filtration_follows_edge_ranks() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    fs::write(&graph, "a b 1/2\nb c 0.5\na c 0.9\n").unwrap();
    let o = wphom(&["graph2filtration", path_str(&graph), "--order", "desc", "--max-dim", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["steps"], 5);
    let rows: Vec<(String, String, u64)> = v["simplices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| {
            let verts: Vec<&str> = s["vertices"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
            (verts.join(""), s["weight"].as_str().unwrap().to_string(), s["birth"].as_u64().unwrap())
        })
        .collect();
    let expect = [("a", "1", 1), ("b", "1", 1), ("c", "1", 1), ("ab", "4", 3), ("ac", "2", 2), ("bc", "4", 3), ("abc", "32", 4)];
    assert_eq!(rows.len(), expect.len());
    for (got, want) in rows.iter().zip(expect) {
        assert_eq!((got.0.as_str(), got.1.as_str(), got.2), want);
    }

    let asc = wphom(&["graph2filtration", path_str(&graph), "--order", "asc", "--max-dim", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&asc)).unwrap();
    assert_eq!(v["simplices"].as_array().unwrap().len(), 6);
}
