//! `(m, n)`-algebras: a graded space with a product of degree `m` and a
//! bracket of degree `n`, the five axioms, and the structure induced on
//! `H*_P(A;A)` by a cup element and the intrinsic bracket.

use std::collections::BTreeMap;

use serde::Serialize;

use super::algebra::LinearExtension;
use super::complex::{Cochain, CochainComplex};
use crate::error::{Error, Result};
use crate::linalg::{Accumulator, SparseVec};
use crate::scalar::Scalar;

/// Finite graded space with two bilinear products on basis pairs. A missing
/// table entry means the product lands outside the computed range.
#[derive(Clone, Debug, Serialize)]
pub struct GradedProducts {
    pub degrees: Vec<usize>,
    pub cup: BTreeMap<(usize, usize), SparseVec>,
    pub bracket: BTreeMap<(usize, usize), SparseVec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: &'static str,
    pub checked: usize,
    /// First basis tuple where the identity fails, with the residual.
    pub witness: Option<(Vec<usize>, SparseVec)>,
}

impl AxiomResult {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

fn sign(e: usize) -> Scalar {
    Scalar::sign(if e % 2 == 0 { 1 } else { -1 })
}

impl GradedProducts {
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    fn apply(table: &BTreeMap<(usize, usize), SparseVec>, x: &SparseVec, y: &SparseVec) -> Option<SparseVec> {
        let mut acc = Accumulator::new();
        for (i, a) in x.entries() {
            for (j, b) in y.entries() {
                acc.add_vec(table.get(&(*i, *j))?, &(a * b));
            }
        }
        Some(acc.finish())
    }

    pub fn cup_of(&self, x: &SparseVec, y: &SparseVec) -> Option<SparseVec> {
        Self::apply(&self.cup, x, y)
    }

    pub fn bracket_of(&self, x: &SparseVec, y: &SparseVec) -> Option<SparseVec> {
        Self::apply(&self.bracket, x, y)
    }
}

/// Evaluates axioms (i)–(v) on all basis pairs and triples whose terms are
/// all defined.
pub fn check_mn_algebra(h: &GradedProducts, m: usize, n: usize) -> Vec<AxiomResult> {
    let d = h.dim();
    let e = |i: usize| SparseVec::unit(i);
    let deg = |i: usize| h.degrees[i];
    let mut out = Vec::new();
    let mut record = |axiom: &'static str, cases: &mut dyn Iterator<Item = (Vec<usize>, Option<SparseVec>)>| {
        let mut r = AxiomResult { axiom, checked: 0, witness: None };
        for (t, res) in cases {
            let Some(res) = res else { continue };
            r.checked += 1;
            if !res.is_zero() && r.witness.is_none() {
                r.witness = Some((t, res));
            }
        }
        out.push(r);
    };
    let pairs = || (0..d).flat_map(move |a| (0..d).map(move |b| (a, b)));
    let triples = || (0..d).flat_map(move |a| (0..d).flat_map(move |b| (0..d).map(move |c| (a, b, c))));

    // (i) a∪b = (−1)^{|a||b|+m} b∪a
    record(
        "i",
        &mut pairs().map(|(a, b)| {
            let r = (|| Some(h.cup_of(&e(a), &e(b))?.add_scaled(&h.cup_of(&e(b), &e(a))?, &-sign(deg(a) * deg(b) + m))))();
            (vec![a, b], r)
        }),
    );
    // (ii) [a,b] = −(−1)^{|a||b|+n} [b,a]
    record(
        "ii",
        &mut pairs().map(|(a, b)| {
            let r = (|| Some(h.bracket_of(&e(a), &e(b))?.add_scaled(&h.bracket_of(&e(b), &e(a))?, &sign(deg(a) * deg(b) + n))))();
            (vec![a, b], r)
        }),
    );
    // (iii) a∪(b∪c) = (−1)^{m(|a|+1)} (a∪b)∪c
    record(
        "iii",
        &mut triples().map(|(a, b, c)| {
            let r = (|| {
                let l = h.cup_of(&e(a), &h.cup_of(&e(b), &e(c))?)?;
                let r = h.cup_of(&h.cup_of(&e(a), &e(b))?, &e(c))?;
                Some(l.add_scaled(&r, &-sign(m * (deg(a) + 1))))
            })();
            (vec![a, b, c], r)
        }),
    );
    // (iv) Σ_cyclic (−1)^{|a|(|c|+n)} [a,[b,c]] = 0
    record(
        "iv",
        &mut triples().map(|(a, b, c)| {
            let r = (|| {
                let term = |x: usize, y: usize, z: usize| -> Option<SparseVec> {
                    Some(h.bracket_of(&e(x), &h.bracket_of(&e(y), &e(z))?)?.scale(&sign(deg(x) * (deg(z) + n))))
                };
                Some(term(a, b, c)?.add(&term(b, c, a)?).add(&term(c, a, b)?))
            })();
            (vec![a, b, c], r)
        }),
    );
    // (v) (−1)^{m|a|} [a, b∪c] = [a,b]∪c + (−1)^{|b||c|+m} [a,c]∪b
    record(
        "v",
        &mut triples().map(|(a, b, c)| {
            let r = (|| {
                let l = h.bracket_of(&e(a), &h.cup_of(&e(b), &e(c))?)?.scale(&sign(m * deg(a)));
                let r1 = h.cup_of(&h.bracket_of(&e(a), &e(b))?, &e(c))?;
                let r2 = h.cup_of(&h.bracket_of(&e(a), &e(c))?, &e(b))?;
                Some(l.sub(&r1).add_scaled(&r2, &-sign(deg(b) * deg(c) + m)))
            })();
            (vec![a, b, c], r)
        }),
    );
    out
}

/// Cohomology with chosen representatives: degree `p` classes are
/// `reps[p]`, and `project` writes a cocycle in that basis.
pub struct CohomologySplitting {
    pub reps: Vec<Vec<Cochain>>,
    ext: Vec<LinearExtension>,
    offsets: Vec<usize>,
}

impl CohomologySplitting {
    /// Degrees `0..=max_degree`; each needs its outgoing differential.
    pub fn new(cx: &CochainComplex, max_degree: usize) -> Result<Self> {
        if max_degree + 2 > cx.cap() {
            return Err(Error::ResourceBound(format!(
                "degree {max_degree} needs cap at least {}",
                max_degree + 2
            )));
        }
        let c = cx.complex();
        let mut reps = Vec::new();
        let mut ext = Vec::new();
        let mut offsets = Vec::new();
        let mut offset = 0;
        for p in 0..=max_degree {
            let mut e = LinearExtension::default();
            if p > 0 {
                for b in c.differential(p - 1).columns() {
                    e.insert(b, &SparseVec::new())?;
                }
            }
            let mut r = Vec::new();
            for z in c.differential(p).kernel() {
                if e.express(&z).is_none() {
                    e.insert(&z, &SparseVec::unit(offset + r.len()))?;
                    r.push(Cochain::new(p + 1, z));
                }
            }
            offsets.push(offset);
            offset += r.len();
            reps.push(r);
            ext.push(e);
        }
        Ok(CohomologySplitting { reps, ext, offsets })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.reps.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.reps.len() - 1
    }

    /// Class of a cocycle in the global basis; `None` above the computed range.
    pub fn project(&self, z: &Cochain) -> Result<Option<SparseVec>> {
        let p = z.degree();
        if p > self.max_degree() {
            return Ok(None);
        }
        self.ext[p]
            .express(&z.coords)
            .map(Some)
            .ok_or_else(|| Error::Invalid(format!("not a cocycle in degree {p}")))
    }

    /// All representatives with their global index.
    pub fn basis(&self) -> Vec<(usize, &Cochain)> {
        self.reps
            .iter()
            .zip(&self.offsets)
            .flat_map(|(r, &o)| r.iter().enumerate().map(move |(i, c)| (o + i, c)))
            .collect()
    }
}

/// Products induced on cohomology by the action of `t ∈ ↑(P ⊗ P^!)(2)` and
/// by the intrinsic bracket.
pub fn induced_structure(cx: &CochainComplex, t: &SparseVec, max_degree: usize) -> Result<(CohomologySplitting, GradedProducts)> {
    let split = CohomologySplitting::new(cx, max_degree)?;
    let basis = split.basis();
    let degrees = basis.iter().map(|(_, c)| c.degree()).collect();
    let mut cup = BTreeMap::new();
    let mut bracket = BTreeMap::new();
    for &(i, f) in &basis {
        for &(j, g) in &basis {
            if f.degree() + g.degree() + 1 <= max_degree {
                if let Some(v) = split.project(&cx.cup_act(2, t, &[f.clone(), g.clone()])?)? {
                    cup.insert((i, j), v);
                }
            }
            if f.degree() + g.degree() <= max_degree {
                if let Some(v) = split.project(&cx.bracket(f, g)?)? {
                    bracket.insert((i, j), v);
                }
            }
        }
    }
    Ok((split, GradedProducts { degrees, cup, bracket }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::PAlgebra;

    fn dual_numbers() -> PAlgebra {
        PAlgebra::new("Ass", 2).with_product("mu", |i, j| match (i, j) {
            (0, 0) => vec![1, 0],
            (0, 1) | (1, 0) => vec![0, 1],
            _ => vec![0, 0],
        })
    }

    #[test]
    fn zero_products_pass() {
        let degrees = vec![0, 1, 1, 2];
        let mut cup = BTreeMap::new();
        let mut bracket = BTreeMap::new();
        for a in 0..4 {
            for b in 0..4 {
                cup.insert((a, b), SparseVec::new());
                bracket.insert((a, b), SparseVec::new());
            }
        }
        let h = GradedProducts { degrees, cup, bracket };
        let r = check_mn_algebra(&h, 1, 0);
        assert_eq!(r.len(), 5);
        assert!(r.iter().all(|a| a.passed() && a.checked > 0));
    }

    #[test]
    fn induced_structure_on_dual_numbers() {
        let cx = CochainComplex::new(&dual_numbers(), 5).unwrap();
        let (split, h) = induced_structure(&cx, &SparseVec::unit(0), 3).unwrap();
        assert_eq!(split.dims(), vec![1, 1, 1, 1]);
        assert!(h.cup.values().any(|v| !v.is_zero()));
        assert!(h.bracket.values().any(|v| !v.is_zero()));
        for r in check_mn_algebra(&h, 1, 0) {
            assert!(r.checked > 0, "{}", r.axiom);
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn flipped_bracket_fails_antisymmetry() {
        let cx = CochainComplex::new(&dual_numbers(), 5).unwrap();
        let (_, mut h) = induced_structure(&cx, &SparseVec::unit(0), 3).unwrap();
        // a bracket that is graded symmetric instead
        for ((a, b), v) in h.bracket.iter_mut() {
            if a > b {
                *v = v.scale(&Scalar::from_int(-1));
            }
        }
        let r = check_mn_algebra(&h, 1, 0);
        assert!(!r[1].passed());
    }
}
