//! One PASS/FAIL line per acceptance criterion. Each line combines the
//! library check from `operadlab::verify` with an oracle computed here.
//!
//! Failures are printed but only turn into a nonzero exit status with
//! `OPERADLAB_ACCEPTANCE_STRICT=1`, so that a workspace test run still
//! reaches the remaining test binaries. `operadlab verify` always exits 1.

mod common;

use std::process::ExitCode;

use common::{Multi, Product};
use operadlab::cochain::{sample_algebra, CochainComplex};
use operadlab::linalg::SparseVec;
use operadlab::verify::{run_criterion, SuiteConfig, TITLES};
use operadlab::{Perm, Scalar};

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn choose(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn mobius(n: usize) -> i64 {
    let (mut n, mut k, mut p) = (n, 0, 2);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            k += 1;
        }
        p += 1;
    }
    if n > 1 {
        k += 1;
    }
    if k % 2 == 0 { 1 } else { -1 }
}

fn cycle_type(p: &Perm) -> Vec<usize> {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        let (mut j, mut len) = (s, 0);
        while !seen[j] {
            seen[j] = true;
            j = p.apply(j + 1) - 1;
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out
}

/// Multiplicity of the sign representation in `Lie(m)`, from the character
/// `χ(d^{m/d}) = μ(d) (m/d − 1)! d^{m/d − 1}` and zero off those classes.
fn sign_in_lie(m: usize) -> usize {
    let mut total: i64 = 0;
    for p in Perm::all(m) {
        let ct = cycle_type(&p);
        let d = ct[0];
        if ct.iter().any(|c| *c != d) {
            continue;
        }
        let k = m / d;
        let chi = mobius(d) * factorial(k - 1) as i64 * (d as i64).pow(k as u32 - 1);
        total += chi * p.sign() as i64;
    }
    (total / factorial(m) as i64) as usize
}

/// Disagreements with the oracle, and notes printed either way.
fn oracle(id: usize, details: &serde_json::Value) -> (Vec<String>, Vec<String>) {
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    match id {
        1 => {
            let rows = details["table"]["rows"].as_array().unwrap();
            for r in rows {
                let m = r["degree"].as_u64().unwrap() as usize + 1;
                if r["dim"].as_u64().unwrap() as usize != factorial(m) {
                    bad.push(format!("Ass soul dim in arity {m} is not {m}!"));
                }
            }
        }
        2 => {
            for name in ["Com", "Lie"] {
                let dims: Vec<usize> = serde_json::from_value(details[name]["dims"].clone()).unwrap();
                let want: Vec<usize> = (1..=dims.len()).map(sign_in_lie).collect();
                if dims != want {
                    bad.push(format!("{name} soul dims {dims:?} disagree with the Lie character {want:?}"));
                } else {
                    notes.push(format!("oracle: multiplicity of sgn in Lie(m) is {want:?}, equal to the {name} soul dims"));
                }
            }
        }
        6 => {
            let want: Vec<usize> = (1..=4).map(factorial).collect();
            let lie: Vec<usize> = (1..=4).map(|n| factorial(n - 1)).collect();
            if details["Ass"] != serde_json::json!(want) || details["Lie"] != serde_json::json!(lie) {
                bad.push("Z_P dimensions disagree with factorials".into());
            }
        }
        7 => {
            for m in 2..=6 {
                for (kappa, members) in operadlab::permcplx::block_decompose(m) {
                    let n = kappa.len();
                    if n >= 2 && members.len() != choose(m + 1, n + 1) {
                        bad.push(format!("block {kappa:?} in Σ_{m} has {} members", members.len()));
                    }
                }
            }
        }
        9 => {
            // classical cup in positive arities against the multilinear oracle
            for seed in 0..2 {
                let a = sample_algebra("Ass", 2, seed).unwrap();
                let mu = Product::of(&a, "mu");
                let cx = CochainComplex::new(&a, 4).unwrap();
                for (m, n) in [(1, 1), (1, 2), (2, 1)] {
                    let (f, g) = (Multi::sample(2, m, 3 + seed as usize), Multi::sample(2, n, 7 + seed as usize));
                    let cf = cx.lin_to_cochain(m, &f.to_end(), 0).unwrap();
                    let cg = cx.lin_to_cochain(n, &g.to_end(), 0).unwrap();
                    let got = cx.cup_act(2, &SparseVec::unit(0), &[cf, cg]).unwrap();
                    let s = Scalar::sign(if (m - 1) % 2 == 0 { 1 } else { -1 });
                    let want = cx.lin_to_cochain(m + n, &f.cup(&g, &mu).to_end(), 0).unwrap().scale(&s);
                    if got != want {
                        bad.push(format!("cup ({m},{n}) disagrees with f·g (seed {seed})"));
                    }
                }
            }
        }
        _ => {}
    }
    (bad, notes)
}

fn main() -> ExitCode {
    let cfg = SuiteConfig::default();
    let mut failed = 0;
    for id in 1..=12 {
        match run_criterion(id, &cfg) {
            Ok(r) => {
                let mut reasons = r.failures.clone();
                let (bad, notes) = oracle(id, &r.details);
                reasons.extend(bad);
                let verdict = if reasons.is_empty() { "PASS" } else { "FAIL" };
                if !reasons.is_empty() {
                    failed += 1;
                }
                println!("criterion {id:>2} {verdict} {} ({:.1}s)", TITLES[id - 1], r.seconds);
                for line in reasons.iter().chain(&notes) {
                    println!("    {line}");
                }
            }
            Err(e) => {
                failed += 1;
                println!("criterion {id:>2} FAIL {}: {e}", TITLES[id - 1]);
            }
        }
    }
    println!("{} of 12 passed", 12 - failed);
    let strict = std::env::var("OPERADLAB_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if failed > 0 && strict { ExitCode::FAILURE } else { ExitCode::SUCCESS }
}
