//! The verification suite: one check per stated result, each returning a
//! pass flag and the numbers behind it.

use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cochain::{delta_of_circle_is_chi, induced_structure, sample_algebra, check_mn_algebra, CochainComplex, PAlgebra};
use crate::cupnat::{h0_binary_evidence, module_endo_space, sym_b1_fixture, zp_solve};
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::liecplx::{canonical_chi, nonsigma_soul_cohomology, soul_cohomology, TAlgebra};
use crate::operads::{catalog, catalog_names};
use crate::perm::{factorial_usize, Perm};
use crate::permcplx::{block_acyclicity, block_decompose, compare_with_ass_soul, expected_block_size, grade, perm_differential_basis, primitives};
use crate::scalar::Scalar;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub title: String,
    pub pass: bool,
    pub details: Value,
    /// Failed clauses, empty on a pass.
    pub failures: Vec<String>,
    #[serde(skip)]
    pub seconds: f64,
}

pub const TITLES: [&str; 12] = [
    "soul of Ass is acyclic",
    "souls of Com and Lie",
    "soul of D",
    "Mag and uMag souls",
    "canonical element",
    "cup-product spaces",
    "grade machinery",
    "permutation differential equals the Ass soul differential",
    "cochain complexes",
    "unary operations",
    "induced structure on cohomology",
    "binary degree-0 closed operations (truncation evidence)",
];

/// Caps used by the suite. `soul_cap` applies to criteria 1 and 2.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SuiteConfig {
    pub soul_cap: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { soul_cap: 7, seed: 0 }
    }
}

/// Parses `all`, a group name, or a comma-separated list of criterion numbers.
pub fn suite_ids(spec: &str) -> Result<Vec<usize>> {
    let ids = match spec {
        "all" => (1..=12).collect(),
        "soul" => vec![1, 2, 3, 4],
        "chi" => vec![5],
        "zp" => vec![6],
        "perm" => vec![7, 8],
        "cochain" => vec![9, 11],
        "unary" => vec![10],
        "natural" => vec![12],
        list => list
            .split(',')
            .map(|s| match s.trim().parse::<usize>() {
                Ok(k) if (1..=12).contains(&k) => Ok(k),
                _ => Err(Error::Invalid(format!("unknown suite `{s}`"))),
            })
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(ids)
}

struct Clauses(Vec<String>);

impl Clauses {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.0.push(what());
        }
    }
}

pub fn run_criterion(id: usize, cfg: &SuiteConfig) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut c = Clauses(Vec::new());
    let details = match id {
        1 => c1(&mut c, cfg)?,
        2 => c2(&mut c, cfg)?,
        3 => c3(&mut c)?,
        4 => c4(&mut c)?,
        5 => c5(&mut c)?,
        6 => c6(&mut c)?,
        7 => c7(&mut c)?,
        8 => c8(&mut c)?,
        9 => c9(&mut c, cfg)?,
        10 => c10(&mut c)?,
        11 => c11(&mut c)?,
        12 => c12(&mut c)?,
        _ => return Err(Error::Invalid(format!("no criterion {id}"))),
    };
    Ok(CriterionResult {
        id,
        title: TITLES[id - 1].to_string(),
        pass: c.0.is_empty(),
        details,
        failures: c.0,
        seconds: start.elapsed().as_secs_f64(),
    })
}

pub fn run_suite(ids: &[usize], cfg: &SuiteConfig) -> Result<Vec<CriterionResult>> {
    ids.iter().map(|id| run_criterion(*id, cfg)).collect()
}

fn c1(c: &mut Clauses, cfg: &SuiteConfig) -> Result<Value> {
    let r = soul_cohomology("Ass", cfg.soul_cap)?;
    let reliable: Vec<usize> = r.table.rows.iter().filter(|r| r.reliable).map(|r| r.degree).collect();
    c.check(reliable == (0..cfg.soul_cap - 1).collect::<Vec<_>>(), || format!("reliable degrees {reliable:?}"));
    c.check(r.table.acyclic(), || format!("H = {:?}", r.table.reliable_dims()));
    Ok(json!({ "cap": cfg.soul_cap, "table": r.table }))
}

fn c2(c: &mut Clauses, cfg: &SuiteConfig) -> Result<Value> {
    let mut out = serde_json::Map::new();
    for name in ["Com", "Lie"] {
        let r = soul_cohomology(name, cfg.soul_cap)?;
        let dims: Vec<usize> = r.table.rows.iter().map(|r| r.dim).collect();
        c.check(dims.iter().all(|d| *d == 1), || format!("{name} soul dims {dims:?}, not all 1"));
        c.check(r.table.acyclic(), || format!("{name} H = {:?}", r.table.reliable_dims()));
        out.insert(name.into(), json!({ "dims": dims, "h": r.table.reliable_dims() }));
    }
    Ok(Value::Object(out))
}

fn c3(c: &mut Clauses) -> Result<Value> {
    let r = soul_cohomology("D", 4)?;
    c.check(r.table.h(0) == Some(0), || format!("H^0 = {:?}", r.table.h(0)));
    c.check(r.table.h(1) == Some(1), || format!("H^1 = {:?}", r.table.h(1)));
    Ok(json!({ "table": r.table }))
}

fn c4(c: &mut Clauses) -> Result<Value> {
    let sym = soul_cohomology("Mag", 4)?;
    let non = nonsigma_soul_cohomology("Mag", 4)?;
    c.check(sym.table.h(1) == Some(1), || format!("Mag H^1 = {:?}", sym.table.h(1)));
    c.check(non.table.acyclic(), || format!("uMag H = {:?}", non.table.reliable_dims()));
    Ok(json!({ "Mag": sym.table, "uMag": non.table }))
}

fn c5(c: &mut Clauses) -> Result<Value> {
    let mut checked = Vec::new();
    for name in catalog_names() {
        let e = catalog(name, 4)?;
        let alg = TAlgebra::from_entry(&e)?;
        let chi = canonical_chi(&e)?;
        if e.is_symmetric() {
            c.check(alg.is_invariant(&chi), || format!("{name}: χτ ≠ χ"));
            c.check(alg.class_is_zero(&alg.bracket(&chi, &chi))?, || format!("{name}: [χ,χ] ≠ 0"));
        } else {
            let (p, w) = (alg.plain(), chi.component(2));
            let r = p.compose_vec(2, &w, 1, 2, &w).sub(&p.compose_vec(2, &w, 2, 2, &w));
            c.check(r.is_zero(), || format!("{name}: χ̲∘_1χ̲ ≠ χ̲∘_2χ̲"));
        }
        checked.push(*name);
    }
    Ok(json!({ "operads": checked }))
}

fn c6(c: &mut Clauses) -> Result<Value> {
    let mut dims = serde_json::Map::new();
    for (name, f) in [("Ass", 0usize), ("Lie", 1), ("Com", 1)] {
        let mut got = Vec::new();
        for n in 1..=4 {
            let d = zp_solve(name, n)?.dim;
            let want = factorial_usize(n - f.min(n - 1));
            c.check(d == want, || format!("dim Z_{name}({n}) = {d}, expected {want}"));
            got.push(d);
        }
        dims.insert(name.into(), json!(got));
    }
    let d2 = zp_solve("D", 2)?.dim;
    c.check(d2 == 4, || format!("dim Z_D(2) = {d2}"));
    c.check(dims["Com"] == dims["Lie"], || "Z_Com and Z_Lie dims differ".into());
    dims.insert("D(2)".into(), json!(d2));
    Ok(Value::Object(dims))
}

fn c7(c: &mut Clauses) -> Result<Value> {
    let max = 6;
    let mut terms = 0;
    for m in 1..=max {
        for s in Perm::all(m) {
            let g = grade(&s);
            for (idx, _) in perm_differential_basis(&s).entries() {
                let t = grade(&Perm::from_index(m + 1, *idx));
                terms += 1;
                c.check(t.grade == g.grade + 1 && t.primitive == g.primitive, || format!("δ({s}) has a term of grade {}", t.grade));
            }
        }
    }
    let mut sizes_checked = 0;
    for m in 2..=max {
        for (kappa, members) in block_decompose(m) {
            let n = kappa.len();
            if n >= 2 {
                sizes_checked += 1;
                let want = expected_block_size(n, m - n);
                c.check(members.len() == want, || format!("block {kappa:?} in Σ_{m}: {} ≠ {want}", members.len()));
            }
        }
    }
    let mut blocks = 0;
    for n in 1..=max {
        for kappa in primitives(n) {
            let r = block_acyclicity(&kappa, max)?;
            blocks += 1;
            c.check(r.table.acyclic(), || format!("block of {kappa} has H = {:?}", r.table.reliable_dims()));
        }
    }
    Ok(json!({ "max_arity": max, "differential_terms": terms, "block_sizes_checked": sizes_checked, "blocks": blocks }))
}

fn c8(c: &mut Clauses) -> Result<Value> {
    let r = compare_with_ass_soul(6)?;
    c.check(r.mismatches.is_empty(), || format!("mismatches at {:?}", r.mismatches));
    Ok(json!(r))
}

/// Classical `(f ∪ g)(a ⊗ b) = f(a)·g(b)` on `Lin(A,A) ⊗ Lin(A,A)`, as an
/// element of `End_A(2)`.
fn classical_cup0(a: &PAlgebra, f: &[Vec<Scalar>], g: &[Vec<Scalar>]) -> SparseVec {
    let d = a.dim;
    let mu = &a.structure["mu"];
    let mut entries = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let mut s = Scalar::zero();
                for x in 0..d {
                    for y in 0..d {
                        s += &(&(&f[x][i] * &g[y][j]) * &mu[x][y][k]);
                    }
                }
                if !s.is_zero() {
                    entries.push(((k * d + i) * d + j, s));
                }
            }
        }
    }
    SparseVec::from_entries(entries)
}

fn c9(c: &mut Clauses, cfg: &SuiteConfig) -> Result<Value> {
    let mut algebras = 0;
    for op in ["Ass", "Com", "Lie", "Sym", "D"] {
        for dim in 1..=3 {
            for seed in 0..2 {
                let a = sample_algebra(op, dim, cfg.seed + seed)?;
                let cx = CochainComplex::new(&a, 5)?;
                algebras += 1;
                let sq = cx.complex().check_square_zero();
                c.check(sq.is_ok(), || format!("{op} dim {dim} seed {seed}: d² ≠ 0"));
            }
        }
    }
    // f(a)·g(b) on C^0 ⊗ C^0 with f, g the matrix units
    let mut cups = 0;
    for dim in 1..=3 {
        let a = sample_algebra("Ass", dim, cfg.seed)?;
        let cx = CochainComplex::new(&a, 3)?;
        let unit = |k: usize| -> Vec<Vec<Scalar>> {
            (0..dim).map(|r| (0..dim).map(|s| Scalar::from_int((r * dim + s == k) as i64)).collect()).collect()
        };
        for kf in 0..dim * dim {
            for kg in 0..dim * dim {
                let (f, g) = (unit(kf), unit(kg));
                let fe = SparseVec::from_entries(vec![(kf, Scalar::one())]);
                let ge = SparseVec::from_entries(vec![(kg, Scalar::one())]);
                let cf = cx.lin_to_cochain(1, &fe, 0)?;
                let cg = cx.lin_to_cochain(1, &ge, 0)?;
                let got = cx.cup_act(2, &SparseVec::unit(0), &[cf, cg])?;
                let want = cx.lin_to_cochain(2, &classical_cup0(&a, &f, &g), 0)?;
                cups += 1;
                c.check(got == want, || format!("cup on C^0 ⊗ C^0 differs (dim {dim}, {kf}, {kg})"));
            }
        }
    }
    let mut pairs = 0;
    for op in ["Ass", "Com", "Lie", "Sym", "D"] {
        for dim in 1..=2 {
            let cx = CochainComplex::new(&sample_algebra(op, dim, cfg.seed)?, 5)?;
            let r = delta_of_circle_is_chi(&cx)?;
            pairs += r.pairs;
            c.check(r.failures.is_empty(), || format!("{op} dim {dim}: δ(∘) ≠ χ on {} pairs", r.failures.len()));
        }
    }
    Ok(json!({ "algebras": algebras, "cup_pairs": cups, "circle_pairs": pairs }))
}

fn c10(c: &mut Clauses) -> Result<Value> {
    let mut dims = serde_json::Map::new();
    for name in catalog_names() {
        let s = module_endo_space(name, 5)?;
        c.check(s.dim == 1, || format!("End of {name}^! has dim {}", s.dim));
        dims.insert((*name).into(), json!(s.dim));
    }
    let f = sym_b1_fixture()?;
    c.check(f.h0 == 1 && f.h1 == 1, || format!("Sym fixture H = ({}, {})", f.h0, f.h1));
    c.check(f.b0_dim == 2, || format!("dim B⁰_Sym(1) = {}", f.b0_dim));
    c.check(f.d_squared_zero, || "Sym fixture δ² ≠ 0".into());
    Ok(json!({ "module_endo": dims, "sym_fixture": f }))
}

fn c11(c: &mut Clauses) -> Result<Value> {
    let a = PAlgebra::new("Ass", 2).with_product("mu", |i, j| match (i, j) {
        (0, 0) => vec![1, 0],
        (0, 1) | (1, 0) => vec![0, 1],
        _ => vec![0, 0],
    });
    let cx = CochainComplex::new(&a, 5)?;
    let (split, h) = induced_structure(&cx, &SparseVec::unit(0), 3)?;
    let results = check_mn_algebra(&h, 1, 0);
    for r in &results {
        c.check(r.checked > 0, || format!("axiom {} had nothing to check", r.axiom));
        c.check(r.passed(), || format!("axiom {} fails at {:?}", r.axiom, r.witness));
    }
    let axioms: Vec<Value> = results.iter().map(|r| json!({ "axiom": r.axiom, "checked": r.checked, "passed": r.passed() })).collect();
    Ok(json!({ "h_dims": split.dims(), "axioms": axioms }))
}

fn c12(c: &mut Clauses) -> Result<Value> {
    let r = h0_binary_evidence("Lie", 4)?;
    c.check(r.dim == 1, || format!("dimension {}", r.dim));
    c.check(r.spanned_by_bracket, || "not spanned by the intrinsic bracket".into());
    c.check(r.transposition_eigenvalue == Some(Scalar::from_int(-1)), || format!("transposition acts by {:?}", r.transposition_eigenvalue));
    Ok(json!(r))
}
