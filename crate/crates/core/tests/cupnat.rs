mod common;

use common::*;
use operadlab::cochain::*;
use operadlab::cupnat::*;
use operadlab::linalg::{rank_of, SparseVec};
use operadlab::Scalar;

fn all_tuples(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut v = vec![vec![]];
    for &d in dims {
        v = v.into_iter().flat_map(|t: Vec<usize>| (0..d).map(move |x| [t.clone(), vec![x]].concat())).collect();
    }
    v
}

#[test]
fn closed_elements_act_by_chain_maps() {
    for a in [upper_triangular(), dual_numbers("Com"), sample_algebra("Lie", 2, 0).unwrap()] {
        let cx = CochainComplex::new(&a, 5).unwrap();
        let name = cx.structure.operad_name.clone();
        let z = CupOperad::new(&name, 4).unwrap();
        for n in [2, 3] {
            for t in z.solve(n).unwrap() {
                for arities in all_tuples(&vec![2; n]) {
                    let ar: Vec<usize> = arities.iter().map(|x| x + 1).collect();
                    if ar.iter().sum::<usize>() + 1 > cx.cap() {
                        continue;
                    }
                    let fs: Vec<Cochain> = ar.iter().map(|&m| cx.basis_cochain(m, (m * 5) % cx.dim(m).max(1))).collect();
                    if fs.iter().any(|f| cx.dim(f.arity) == 0) {
                        continue;
                    }
                    assert!(cup_defect(&cx, n, &t, &fs).unwrap().is_zero(), "{name} n={n} {ar:?}");
                }
            }
        }
    }
}

#[test]
fn a_non_closed_element_is_not_a_chain_map() {
    let a = upper_triangular();
    let cx = CochainComplex::new(&a, 4).unwrap();
    let z = CupOperad::new("Ass", 3).unwrap();
    // a single basis vector of ↑(Ass ⊗ Ass)(2) off the diagonal
    let t = SparseVec::unit(1);
    assert!(!z.is_closed(2, &t).unwrap());
    let mut seen = false;
    for i in 0..cx.dim(1) {
        for j in 0..cx.dim(1) {
            let fs = [cx.basis_cochain(1, i), cx.basis_cochain(1, j)];
            seen |= !cup_defect(&cx, 2, &t, &fs).unwrap().is_zero();
        }
    }
    assert!(seen);
}

#[test]
fn a_map_is_the_suspended_diagonal() {
    let z = CupOperad::new("Ass", 4).unwrap();
    assert_eq!(z.a_map("mu(1,2)").unwrap(), z.chi_underline().unwrap());
    let two: Vec<SparseVec> = ["mu(1,2)", "mu(2,1)"].iter().map(|w| z.a_map(w).unwrap()).collect();
    assert_eq!(rank_of(&two), 2);
    assert!(two.iter().all(|t| z.is_closed(2, t).unwrap()));
    let mut three = Vec::new();
    for p in [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]] {
        three.push(z.a_map(&format!("mu(mu({},{}),{})", p[0], p[1], p[2])).unwrap());
    }
    assert_eq!(rank_of(&three), 6);
    assert!(three.iter().all(|t| z.is_closed(3, t).unwrap()));
    // associativity in ↑Ass maps to an identity
    assert_eq!(z.a_map("mu(mu(1,2),3)").unwrap(), z.a_map("mu(1,mu(2,3))").unwrap().scale(&Scalar::from_int(-1)));
}

/// Expands a word in `lambda` into its anti-commutator words in `mu`.
fn anticommutator(w: &str) -> Vec<String> {
    if !w.starts_with("lambda(") {
        return vec![w.to_string()];
    }
    let inner = &w[7..w.len() - 1];
    let mut depth = 0;
    let split = inner
        .char_indices()
        .find(|&(_, c)| {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            c == ',' && depth == 0
        })
        .unwrap()
        .0;
    let (l, r) = (&inner[..split], &inner[split + 1..]);
    let mut out = Vec::new();
    for x in anticommutator(l) {
        for y in anticommutator(r) {
            out.push(format!("mu({x},{y})"));
            out.push(format!("mu({y},{x})"));
        }
    }
    out
}

#[test]
fn l_factors_through_the_anticommutator() {
    for name in ["Ass", "D"] {
        let z = CupOperad::new(name, 4).unwrap();
        for w in ["lambda(1,2)", "lambda(lambda(1,2),3)", "lambda(3,lambda(1,2))", "lambda(lambda(lambda(1,4),2),3)"] {
            let mut sum = SparseVec::new();
            for m in anticommutator(w) {
                sum = sum.add(&z.a_map(&m).unwrap());
            }
            assert_eq!(z.l_map(w).unwrap(), sum, "{name} {w}");
        }
    }
}

#[test]
fn nonsigma_and_sigma_criteria_agree() {
    let planar = CupOperad::new("uD", 4).unwrap();
    let sym = CupOperad::new("D", 4).unwrap();
    let mut outcomes = [false; 2];
    for n in [2, 3] {
        let q = planar.entry.dual_or_err().unwrap().dim(n);
        let dim = planar.dim(n);
        for seed in 0..12usize {
            let t = SparseVec::from_entries(
                (0..dim)
                    .filter_map(|k| {
                        let c = ((k * 7 + seed * 3) % 5) as i64 - 2;
                        (c != 0 && (seed % 3 != 0 || k == 0)).then(|| (k, Scalar::from_int(c)))
                    })
                    .collect(),
            );
            let ns = nonsigma_cup_check("uD", n, &t).unwrap();
            outcomes[ns.holds as usize] = true;
            assert_eq!(ns.holds, sym.is_closed(n, &sym.embed_planar(n, &t, q)).unwrap(), "n={n} seed={seed}");
        }
    }
    assert_eq!(outcomes, [true, true]);
    let bad = SparseVec::unit(0).add(&SparseVec::unit(1));
    let r = nonsigma_cup_check("uD", 2, &bad).unwrap();
    assert!(!r.holds && r.witness.is_some());
}

#[test]
fn self_duality_of_cup_operads() {
    for n in 1..=3 {
        assert_eq!(zp_solve("Com", n).unwrap().dim, zp_solve("Lie", n).unwrap().dim);
    }
    assert_eq!(zp_solve("Ass", 4).unwrap().dim, 24);
    assert_eq!(zp_solve("Lie", 4).unwrap().dim, 6);
}

#[test]
fn image_of_l_is_exact() {
    let lie = PAlgebra::new("Lie", 2).with_product("lambda", |i, j| match (i, j) {
        (0, 1) => vec![0, 1],
        (1, 0) => vec![0, -1],
        _ => vec![0, 0],
    });
    for a in [dual_numbers("Ass"), lie] {
        for r in image_exactness_evidence(&a, 5).unwrap() {
            assert!(r.tuples > 0, "{}", r.element);
            assert_eq!(r.non_exact, 0, "{}", r.element);
        }
    }
}

#[test]
fn documented_spec_parses_and_evaluates() {
    let spec = NaturalOpSpec::from_json(
        r#"{"tree": "b1(w1(1),w2(2))", "orders": [[1],[1]], "black": [[1,0]], "phi": [[1],[0]]}"#,
    )
    .unwrap();
    let cx = CochainComplex::new(&upper_triangular(), 4).unwrap();
    let e = operadlab::operads::catalog("Ass", 4).unwrap();
    spec.validate(&e.operad, e.dual.as_ref().unwrap()).unwrap();
    assert_eq!(op_degree(&spec).unwrap(), 1);
    let f = cx.basis_cochain(1, 0);
    let out = eval_natural_op(&spec, &cx, &[f.clone(), f]).unwrap();
    assert_eq!(out.arity, 2);
}
