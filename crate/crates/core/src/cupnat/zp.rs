//! The operad `Z_P ⊂ ↑(P ⊗ P^!)` of closed cup operations, the maps
//! `L: ↑Lie → Z_P` and `A: ↑Ass → Z_P`, and the non-Σ criterion.
//!
//! In the conventions of the suspension used here the closedness equation
//! in arity `n + 1` reads
//! `(−1)^n χ ∘_2 t + t ∘_1 χ + Σ_{i≥2} (t ∘_i χ)·(12…i)^{−1} = 0`.

use serde::Serialize;

use crate::cochain::{Cochain, CochainComplex, CohomologySplitting, PAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, transpose, SparseVec};
use crate::liecplx::{canonical_chi, TAlgebra};
use crate::operads::{catalog, parse_tree, CatalogEntry, Operad, Tree};
use crate::perm::{factorial_usize, Perm};
use crate::scalar::Scalar;

fn sign(odd: bool) -> Scalar {
    Scalar::sign(if odd { -1 } else { 1 })
}

/// `↑(P ⊗ P^!)` with its canonical element.
pub struct CupOperad {
    pub entry: CatalogEntry,
    alg: TAlgebra,
    chi: SparseVec,
}

impl CupOperad {
    pub fn new(name: &str, cap: usize) -> Result<Self> {
        Self::from_entry(catalog(name, cap)?)
    }

    pub fn from_entry(entry: CatalogEntry) -> Result<Self> {
        let alg = TAlgebra::from_entry(&entry)?;
        let chi = canonical_chi(&entry)?.component(2);
        Ok(CupOperad { entry, alg, chi })
    }

    pub fn cap(&self) -> usize {
        self.alg.cap()
    }

    pub fn symmetric(&self) -> bool {
        self.alg.symmetric()
    }

    /// `↑(P ⊗ P^!)`.
    pub fn operad(&self) -> &Operad {
        self.alg.suspended()
    }

    pub fn chi(&self) -> &SparseVec {
        &self.chi
    }

    pub fn dim(&self, n: usize) -> usize {
        self.operad().dim(n)
    }

    fn need(&self, arity: usize) -> Result<()> {
        if arity > self.cap() {
            return Err(Error::ResourceBound(format!("arity {arity} needs cap ≥ {arity}, have {}", self.cap())));
        }
        Ok(())
    }

    /// Left-hand side of the closedness equation, in arity `n + 1`.
    pub fn residual(&self, n: usize, t: &SparseVec) -> Result<SparseVec> {
        if !self.symmetric() {
            return Err(Error::Unsupported("the Σ closedness equation needs a symmetric operad".into()));
        }
        self.need(n + 1)?;
        let o = self.operad();
        let mut r = o.compose_vec(2, &self.chi, 2, n, t).scale(&sign(n % 2 == 1));
        r = r.add(&o.compose_vec(n, t, 1, 2, &self.chi));
        for i in 2..=n {
            let c = Perm::cycle(i, n)?.inverse();
            r = r.add(&o.act_vec(n + 1, &o.compose_vec(n, t, i, 2, &self.chi), &c));
        }
        Ok(r)
    }

    pub fn is_closed(&self, n: usize, t: &SparseVec) -> Result<bool> {
        Ok(self.residual(n, t)?.is_zero())
    }

    /// Basis of `Z_P(n)`: the nullspace of the residual map, in RREF order.
    pub fn solve(&self, n: usize) -> Result<Vec<SparseVec>> {
        let cols: Result<Vec<SparseVec>> = (0..self.dim(n)).map(|k| self.residual(n, &SparseVec::unit(k))).collect();
        Ok(nullspace(&transpose(&cols?, self.dim(n + 1)), self.dim(n)))
    }

    /// Value of a labelled binary tree whose vertices are all `gen`.
    pub fn eval_tree(&self, tree: &Tree, gen: &SparseVec) -> Result<SparseVec> {
        let n = tree.arity();
        self.need(n)?;
        let planar = self.eval_planar(tree, gen);
        let mut leaves = Vec::new();
        tree.leaves(&mut leaves);
        let sigma = Perm::from_one_line(&leaves)?.inverse();
        Ok(self.operad().act_vec(n, &planar, &sigma))
    }

    fn eval_planar(&self, tree: &Tree, gen: &SparseVec) -> SparseVec {
        match tree {
            Tree::Leaf(_) => self.operad().unit(),
            Tree::Node(_, ch) => {
                let o = self.operad();
                let (l, r) = (&ch[0], &ch[1]);
                let (a, b) = (l.arity(), r.arity());
                let x = o.compose_vec(2, gen, 2, b, &self.eval_planar(r, gen));
                o.compose_vec(1 + b, &x, 1, a, &self.eval_planar(l, gen))
            }
        }
    }

    /// `L(w)` for a word in `lambda`, e.g. `lambda(lambda(1,3),2)`.
    pub fn l_map(&self, word: &str) -> Result<SparseVec> {
        let t = parse_tree(word, &|g| (g == "lambda").then_some(0))?;
        self.eval_tree(&t, &self.chi)
    }

    /// `χ̲`: the identity component of `χ` for a symmetrized operad.
    pub fn chi_underline(&self) -> Result<SparseVec> {
        let planar = planar_name(&self.entry.name)?;
        let pe = catalog(planar, 2)?;
        let c = canonical_chi(&pe)?.component(2);
        Ok(self.embed_planar(2, &c, pe.dual_or_err()?.dim(2)))
    }

    /// `A(w)` for a word in `mu`, e.g. `mu(mu(1,2),3)`.
    pub fn a_map(&self, word: &str) -> Result<SparseVec> {
        let t = parse_tree(word, &|g| (g == "mu").then_some(0))?;
        self.eval_tree(&t, &self.chi_underline()?)
    }

    /// Image of `↑(P̲ ⊗ P̲^!)(n)` (planar dual dimension `q`) in `↑(P ⊗ P^!)(n)`.
    pub fn embed_planar(&self, n: usize, t: &SparseVec, q: usize) -> SparseVec {
        let f = factorial_usize(n);
        let id = Perm::identity(n).index();
        let qs = self.entry.dual_or_err().map(|d| d.dim(n)).unwrap_or(q * f);
        t.map_indices(|k| {
            let (a, b) = (k / q, k % q);
            (a * f + id) * qs + b * f + id
        })
    }
}

fn planar_name(name: &str) -> Result<&'static str> {
    match name {
        "Ass" => Ok("uAss"),
        "Mag" => Ok("uMag"),
        "D" => Ok("uD"),
        other => Err(Error::Unsupported(format!("{other} is not a symmetrization in the catalog"))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ZpBasis {
    pub operad: String,
    pub arity: usize,
    pub dim: usize,
    pub basis: Vec<SparseVec>,
}

/// `Z_P(n)` computed at cap `n + 1`.
pub fn zp_solve(name: &str, n: usize) -> Result<ZpBasis> {
    zp_solve_in(&CupOperad::new(name, n + 1)?, n)
}

pub fn zp_solve_in(z: &CupOperad, n: usize) -> Result<ZpBasis> {
    let basis = z.solve(n)?;
    Ok(ZpBasis { operad: z.entry.name.clone(), arity: n, dim: basis.len(), basis })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub checked: usize,
    /// `(m, a, i, n, b)`: `z_a ∘_i z_b` with `z_a ∈ Z(m)`, `z_b ∈ Z(n)` is not closed.
    pub failures: Vec<(usize, usize, usize, usize, usize)>,
}

/// Composes basis elements of `Z_P` with total arity `< bound` and tests
/// the results.
pub fn zp_closed_under_composition(name: &str, bound: usize) -> Result<ClosureReport> {
    let z = CupOperad::new(name, bound)?;
    let bases: Vec<Vec<SparseVec>> = (1..bound).map(|n| z.solve(n)).collect::<Result<_>>()?;
    let mut r = ClosureReport { checked: 0, failures: Vec::new() };
    for m in 2..bound {
        for n in 2..bound {
            if m + n - 1 >= bound {
                continue;
            }
            for (a, x) in bases[m - 1].iter().enumerate() {
                for (b, y) in bases[n - 1].iter().enumerate() {
                    for i in 1..=m {
                        r.checked += 1;
                        if !z.is_closed(m + n - 1, &z.operad().compose_vec(m, x, i, n, y))? {
                            r.failures.push((m, a, i, n, b));
                        }
                    }
                }
            }
        }
    }
    Ok(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct NonSigmaReport {
    pub holds: bool,
    /// Indices of two expressions that differ: `0` is `χ̲ ∘_2 t`, `i` is
    /// `t ∘_i χ̲`, `n + 1` is `χ̲ ∘_1 t`.
    pub witness: Option<(usize, usize)>,
}

/// The non-Σ criterion for `t ∈ ↑(P̲ ⊗ P̲^!)(n)` (`name` a non-Σ catalog
/// operad). With the suspension signs the expressions compared are
/// `χ̲ ∘_2 t`, `(−1)^{n+i} t ∘_i χ̲` and `(−1)^{n−1} χ̲ ∘_1 t`.
pub fn nonsigma_cup_check(name: &str, n: usize, t: &SparseVec) -> Result<NonSigmaReport> {
    let z = CupOperad::new(name, n + 1)?;
    if z.symmetric() {
        return Err(Error::Unsupported(format!("{name} is symmetric; use the Σ equation")));
    }
    let o = z.operad();
    let chi = z.chi();
    let mut exprs = vec![o.compose_vec(2, chi, 2, n, t)];
    for i in 1..=n {
        exprs.push(o.compose_vec(n, t, i, 2, chi).scale(&sign((n + i) % 2 == 1)));
    }
    exprs.push(o.compose_vec(2, chi, 1, n, t).scale(&sign(n % 2 == 0)));
    let witness = (1..exprs.len()).find(|&j| exprs[j] != exprs[0]).map(|j| (0, j));
    Ok(NonSigmaReport { holds: witness.is_none(), witness })
}

/// `δ_P` of the cup operation of `t` on given cochains:
/// `d(t(f)) − (−1)^{n−1} Σ_i (−1)^{|f_1|+…+|f_{i−1}|} t(…, d f_i, …)`.
pub fn cup_defect(cx: &CochainComplex, n: usize, t: &SparseVec, fs: &[Cochain]) -> Result<Cochain> {
    let mut out = cx.d(&cx.cup_act(n, t, fs)?)?;
    let mut shift = 0;
    for i in 0..fs.len() {
        let mut gs = fs.to_vec();
        gs[i] = cx.d(&fs[i])?;
        let s = sign((n - 1 + shift) % 2 == 1);
        out = out.add_scaled(&cx.cup_act(n, t, &gs)?, &-s);
        shift += fs[i].degree();
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub element: String,
    pub arity: usize,
    pub tuples: usize,
    /// Tuples of cocycle representatives whose image is not a coboundary.
    pub non_exact: usize,
}

/// For the `L`-images `λ(1,2)`, `λ(λ(1,2),3)`: acts on all tuples of
/// cohomology representatives within the cap and tests coboundary
/// membership of the result.
pub fn image_exactness_evidence(algebra: &PAlgebra, cap: usize) -> Result<Vec<ExactnessReport>> {
    let cx = CochainComplex::new(algebra, cap)?;
    let name = cx.structure.operad_name.clone();
    let z = CupOperad::new(&name, 3.min(cap))?;
    let split = CohomologySplitting::new(&cx, cap - 2)?;
    let basis: Vec<Cochain> = split.basis().into_iter().map(|(_, c)| c.clone()).collect();
    let mut out = Vec::new();
    for (word, n) in [("lambda(1,2)", 2), ("lambda(lambda(1,2),3)", 3)] {
        if n > z.cap() {
            continue;
        }
        let t = z.l_map(word)?;
        let mut rep = ExactnessReport { element: word.to_string(), arity: n, tuples: 0, non_exact: 0 };
        let mut idx = vec![0; n];
        'outer: loop {
            let fs: Vec<Cochain> = idx.iter().map(|&k| basis[k].clone()).collect();
            let total: usize = fs.iter().map(|f| f.arity).sum();
            if total + 1 < cap {
                rep.tuples += 1;
                let v = cx.cup_act(n, &t, &fs)?;
                if split.project(&v)?.is_some_and(|c| !c.is_zero()) {
                    rep.non_exact += 1;
                }
            }
            for p in (0..n).rev() {
                idx[p] += 1;
                if idx[p] < basis.len() {
                    continue 'outer;
                }
                idx[p] = 0;
            }
            break;
        }
        out.push(rep);
    }
    Ok(out)
}
