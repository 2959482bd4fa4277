use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_operadlab"));
    c.env_remove("OPERADLAB_CACHE");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

fn reliable_h(r: &Value) -> Vec<u64> {
    r["tables"][0]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|row| row["reliable"].as_bool().unwrap())
        .map(|row| row["h_dim"].as_u64().unwrap())
        .collect()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).display().to_string()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("operadlab-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

#[test]
fn soul_examples() {
    let out = run(&["soul", "ass", "--cap", "5"]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(reliable_h(&r), vec![0, 0, 0, 0]);
    assert!(r["wall_clock_s"].is_number());
    assert_eq!(r["command"], "operadlab soul ass --cap 5");

    let r = json(&run(&["soul", "d", "--cap", "4"]));
    assert_eq!(reliable_h(&r)[..2], [0, 1]);
    assert_eq!(r["config"]["cap"], 4);

    let r = json(&run(&["soul", "mag", "--non-sigma", "--cap", "5"]));
    assert_eq!(r["results"]["operad"], "uMag");
    assert!(reliable_h(&r).iter().all(|h| *h == 0));
}

#[test]
fn every_row_carries_a_reliability_flag() {
    let out = run(&["soul", "com", "--cap", "5", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("table,arity,degree,dim,rank_out,rank_in,h_dim,reliable"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    assert!(rows[..4].iter().all(|l| l.ends_with(",true")));
    assert!(rows[4].ends_with(",false"));
}

#[test]
fn zp_examples() {
    for (op, n, dim) in [("lie", "2", 1), ("ass", "3", 6), ("d", "2", 4)] {
        let r = json(&run(&["zp", op, "-n", n]));
        assert_eq!(r["results"]["dim"], dim, "{op}");
        assert_eq!(r["results"]["basis"].as_array().unwrap().len(), dim);
        assert_eq!(r["pass"], true);
    }
}

#[test]
fn perm_blocks_have_binomial_sizes() {
    let out = run(&["perm", "--arity", "5", "--blocks"]);
    assert!(out.status.success());
    let r = json(&out);
    for b in r["results"]["blocks"].as_array().unwrap() {
        let n = b["first_arity"].as_u64().unwrap() as u64;
        let sizes: Vec<u64> = serde_json::from_value(b["sizes"].clone()).unwrap();
        for (g, s) in sizes.iter().enumerate() {
            let g = g as u64;
            // C(g+n+1, n+1)
            let want = if n == 1 { 1 } else { (1..=n + 1).fold(1, |acc, j| acc * (g + j) / j) };
            assert_eq!(*s, want, "{}", b["kappa"]);
        }
    }
}

#[test]
fn cochain_of_dual_numbers() {
    let r = json(&run(&["cochain", "--operad", "ass", "--algebra", &data("dual_numbers.json")]));
    assert_eq!(reliable_h(&r)[0], 1);
    assert_eq!(r["pass"], true);
}

#[test]
fn reports_are_deterministic() {
    let args = ["soul", "lie", "--cap", "5", "--seed", "3", "--no-timing"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a).get("wall_clock_s").is_none());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["soul", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["soul", "ass", "--cap", "9"]).status.code(), Some(2));
    assert_eq!(run(&["cochain", "--algebra", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["soul", "ass", "--cap", "8", "--limit-mb", "1"]).status.code(), Some(3));
    let out = run(&["verify", "--suite", "2", "--cap", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["failures"][0]["id"], 2);
    assert!(!r["failures"][0]["reasons"].as_array().unwrap().is_empty());
}

#[test]
fn verify_subset_passes() {
    let out = run(&["verify", "--suite", "5,6,8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["assertions"].as_array().unwrap().len(), 3);
}

#[test]
fn presentation_files_and_cache() {
    let dir = scratch("cache");
    std::fs::create_dir_all(&dir).unwrap();
    let pres = dir.join("ass.json");
    std::fs::write(
        &pres,
        r#"{"generators":[{"name":"mu","arity":2,"degree":0,"action":"regular"}],
            "relations":[[{"tree":"mu(mu(1,2),3)","coeff":1},{"tree":"mu(1,mu(2,3))","coeff":-1}]]}"#,
    )
    .unwrap();
    let cache = dir.join("tables");
    let args = ["soul", pres.to_str().unwrap(), "--cap", "4", "--no-timing"];
    let first = bin().args(args).env("OPERADLAB_CACHE", &cache).output().unwrap();
    assert!(first.status.success());
    assert_eq!(reliable_h(&json(&first)), vec![0, 0, 0]);
    let entries: Vec<_> = std::fs::read_dir(&cache).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let second = bin().args(args).env("OPERADLAB_CACHE", &cache).output().unwrap();
    assert_eq!(first.stdout, second.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}
