//! The cochain complex `C*_P(A;A) = ((End_A ⊗ P^!)^Σ, d_P)` realized inside
//! the Lie algebra of `↑(End_A ⊗ P^!)`, with `d_P = [φ, −]` for
//! `φ = (α ⊗ id)(χ)`.

use serde::Serialize;

use super::algebra::{AlgebraStructure, PAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{cohomology_dims, Accumulator, CohomologyTable, ComplexRep, SparseVec};
use crate::liecplx::{build_lie_complex, canonical_chi_with, LieElement, TAlgebra};
use crate::perm::factorial_usize;
use crate::scalar::Scalar;

/// An invariant cochain of degree `arity − 1`, stored in coinvariant
/// coordinates (coordinate `k` stands for `Aver` of the `k`-th representative).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cochain {
    pub arity: usize,
    pub coords: SparseVec,
}

impl Cochain {
    pub fn new(arity: usize, coords: SparseVec) -> Self {
        Cochain { arity, coords }
    }

    pub fn zero(arity: usize) -> Self {
        Cochain::new(arity, SparseVec::new())
    }

    pub fn degree(&self) -> usize {
        self.arity - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn add_scaled(&self, other: &Cochain, c: &Scalar) -> Cochain {
        assert_eq!(self.arity, other.arity, "adding cochains of different arity");
        Cochain::new(self.arity, self.coords.add_scaled(&other.coords, c))
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add_scaled(other, &Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        Cochain::new(self.arity, self.coords.scale(c))
    }
}

fn sign(odd: bool) -> Scalar {
    Scalar::sign(if odd { -1 } else { 1 })
}

pub struct CochainComplex {
    pub structure: AlgebraStructure,
    alg: TAlgebra,
    chi: LieElement,
    phi: LieElement,
    complex: ComplexRep,
}

impl CochainComplex {
    pub fn new(algebra: &PAlgebra, cap: usize) -> Result<Self> {
        let structure = AlgebraStructure::new(algebra, cap)?;
        let chi = canonical_chi_with(&structure.operad, &structure.dual, &structure.pairing)?;
        let alg = TAlgebra::new(&structure.end, &structure.dual)?;
        let lifted = {
            let q = structure.dual.dim(2);
            let mut acc = Accumulator::new();
            for (idx, c) in chi.component(2).entries() {
                let (a, b) = (idx / q, idx % q);
                for (e, ce) in structure.alpha(2, &SparseVec::unit(a)).entries() {
                    acc.add(alg.index(2, *e, b), &(c * ce));
                }
            }
            acc.finish()
        };
        let phi = LieElement::homogeneous(2, lifted);
        let complex = build_lie_complex(&alg, &phi)?;
        Ok(CochainComplex { structure, alg, chi, phi, complex })
    }

    pub fn cap(&self) -> usize {
        self.alg.cap()
    }

    pub fn complex(&self) -> &ComplexRep {
        &self.complex
    }

    pub fn cohomology(&self) -> Result<CohomologyTable> {
        cohomology_dims(&self.complex)
    }

    pub fn t_algebra(&self) -> &TAlgebra {
        &self.alg
    }

    /// `χ ∈ ↑(P ⊗ P^!)(2)`.
    pub fn chi(&self) -> &LieElement {
        &self.chi
    }

    /// `φ = (α ⊗ id)(χ)`.
    pub fn phi(&self) -> &LieElement {
        &self.phi
    }

    /// `dim C^{m−1}`.
    pub fn dim(&self, m: usize) -> usize {
        self.complex.dims().get(m - 1).copied().unwrap_or(0)
    }

    /// The invariant element of `↑(End_A ⊗ P^!)(m)` represented by `c`.
    pub fn invariant(&self, c: &Cochain) -> Result<SparseVec> {
        let co = self.alg.coinvariants(c.arity)?;
        let mut acc = Accumulator::new();
        for (k, x) in c.coords.entries() {
            acc.add_vec(&co.representative(*k), x);
        }
        let raw = LieElement::homogeneous(c.arity, acc.finish());
        Ok(self.alg.average(&raw).component(c.arity))
    }

    /// Class of an arbitrary element of `↑(End_A ⊗ P^!)(m)` in `C^{m−1}`,
    /// i.e. the coordinates of its average.
    pub fn cochain_of(&self, m: usize, x: &SparseVec) -> Result<Cochain> {
        Ok(Cochain::new(m, self.alg.coinvariants(m)?.reduce(x)))
    }

    pub fn basis_cochain(&self, m: usize, k: usize) -> Cochain {
        Cochain::new(m, SparseVec::unit(k))
    }

    fn check_room(&self, arity: usize) -> Result<()> {
        if arity > self.cap() {
            return Err(Error::ResourceBound(format!("arity {arity} exceeds cap {}", self.cap())));
        }
        Ok(())
    }

    /// `d_P f = Aver[φ, f]`.
    pub fn d(&self, f: &Cochain) -> Result<Cochain> {
        self.check_room(f.arity + 1)?;
        let x = LieElement::homogeneous(f.arity, self.invariant(f)?);
        let b = self.alg.bracket(&self.phi, &x);
        self.cochain_of(f.arity + 1, &b.component(f.arity + 1))
    }

    /// Pre-Lie product `−½ Aver(f ∘ g)`; the factor makes `δ_P(∘) = χ`.
    pub fn circle(&self, f: &Cochain, g: &Cochain) -> Result<Cochain> {
        let n = f.arity + g.arity - 1;
        self.check_room(n)?;
        let x = LieElement::homogeneous(f.arity, self.invariant(f)?);
        let y = LieElement::homogeneous(g.arity, self.invariant(g)?);
        Ok(self.cochain_of(n, &self.alg.circ(&x, &y).component(n))?.scale(&Scalar::ratio(-1, 2)))
    }

    /// Intrinsic bracket `f ∘ g − (−1)^{|f||g|} g ∘ f` of the pre-Lie product.
    pub fn bracket(&self, f: &Cochain, g: &Cochain) -> Result<Cochain> {
        let s = sign(f.degree() * g.degree() % 2 == 1);
        Ok(self.circle(f, g)?.add_scaled(&self.circle(g, f)?, &-s))
    }

    /// `(α ⊗ id)(t)` for `t ∈ ↑(P ⊗ P^!)(n)`.
    pub fn lift(&self, n: usize, t: &SparseVec) -> SparseVec {
        let q = self.structure.dual.dim(n);
        let mut acc = Accumulator::new();
        for (idx, c) in t.entries() {
            let (a, b) = (idx / q, idx % q);
            for (e, ce) in self.structure.alpha(n, &SparseVec::unit(a)).entries() {
                acc.add(self.alg.index(n, *e, b), &(c * ce));
            }
        }
        acc.finish()
    }

    /// `Aver γ(x; ι f_1, …, ι f_n)` for `x ∈ ↑(End_A ⊗ P^!)(n)`.
    pub fn act_end(&self, n: usize, x: &SparseVec, fs: &[Cochain]) -> Result<Cochain> {
        if fs.len() != n {
            return Err(Error::SizeMismatch { left: n, right: fs.len() });
        }
        let total: usize = fs.iter().map(|f| f.arity).sum();
        self.check_room(total.max(n))?;
        let t = self.alg.suspended();
        let mut cur = x.clone();
        let mut arity = n;
        let mut pos = 1;
        for f in fs {
            cur = t.compose_vec(arity, &cur, pos, f.arity, &self.invariant(f)?);
            arity += f.arity - 1;
            pos += f.arity;
        }
        self.cochain_of(arity, &cur)
    }

    /// Cup action of `t ∈ ↑(P ⊗ P^!)(n)`.
    pub fn cup_act(&self, n: usize, t: &SparseVec, fs: &[Cochain]) -> Result<Cochain> {
        self.act_end(n, &self.lift(n, t), fs)
    }

    /// `χ(f, g)`.
    pub fn chi_cup(&self, f: &Cochain, g: &Cochain) -> Result<Cochain> {
        self.act_end(2, &self.phi.component(2), &[f.clone(), g.clone()])
    }

    /// `δ_P(∘)(f, g) = d(f∘g) − (df)∘g − (−1)^{|f|} f∘(dg)`.
    pub fn delta_of_circle(&self, f: &Cochain, g: &Cochain) -> Result<Cochain> {
        let a = self.d(&self.circle(f, g)?)?;
        let b = self.circle(&self.d(f)?, g)?;
        let c = self.circle(f, &self.d(g)?)?;
        Ok(a.sub(&b).add_scaled(&c, &-sign(f.degree() % 2 == 1)))
    }

    /// Component of the invariant element along the basis vector `j` of
    /// `P^!(m)`, as an element of `End_A(m)`.
    pub fn component(&self, c: &Cochain, j: usize) -> Result<SparseVec> {
        let q = self.structure.dual.dim(c.arity);
        Ok(SparseVec::from_entries(
            self.invariant(c)?
                .into_entries()
                .into_iter()
                .filter(|(i, _)| i % q == j)
                .map(|(i, x)| (i / q, x))
                .collect(),
        ))
    }

    /// `Ψ(F) = 2^m (−1)^{(m−1)(m−2)/2} Aver(F ⊗ f_j)`. For `P^! = Ass` and
    /// `j = 0` (the identity permutation) this identifies `Lin(A^{⊗m}, A)`
    /// with `C^{m−1}` so that `d_P` is the Hochschild differential and `χ̲`
    /// acts by `f(a)·g(b)`.
    pub fn lin_to_cochain(&self, m: usize, f: &SparseVec, j: usize) -> Result<Cochain> {
        let q = self.structure.dual.dim(m);
        let x = SparseVec::from_entries(f.entries().iter().map(|(a, c)| (a * q + j, c.clone())).collect());
        Ok(self.cochain_of(m, &x)?.scale(&lin_scale(m)))
    }

    /// Inverse of [`Self::lin_to_cochain`] when `P^!(m)` is the regular
    /// representation and `j` its identity.
    pub fn cochain_to_lin(&self, c: &Cochain, j: usize) -> Result<SparseVec> {
        let k = Scalar::from_int(factorial_usize(c.arity) as i64) / lin_scale(c.arity);
        Ok(self.component(c, j)?.scale(&k))
    }
}

/// `2^m (−1)^{(m−1)(m−2)/2}`.
pub fn lin_scale(m: usize) -> Scalar {
    let s = if ((m - 1) * m.saturating_sub(2) / 2) % 2 == 0 { 1 } else { -1 };
    Scalar::from_int(s * (1i64 << m))
}

/// `H*_P(A;A)` in reliable degrees.
pub fn cohomology_of_algebra(algebra: &PAlgebra, cap: usize) -> Result<CohomologyTable> {
    CochainComplex::new(algebra, cap)?.cohomology()
}

#[derive(Clone, Debug, Serialize)]
pub struct CircleReport {
    pub pairs: usize,
    /// Pairs `(f, g)` of basis cochains where `δ_P(∘)(f,g) ≠ χ(f,g)`.
    pub failures: Vec<(usize, usize, usize, usize)>,
}

/// Compares `δ_P(∘)` with the action of `χ` on all pairs of basis cochains
/// with `f.arity + g.arity + 1 ≤ cap`.
pub fn delta_of_circle_is_chi(cx: &CochainComplex) -> Result<CircleReport> {
    let mut pairs = 0;
    let mut failures = Vec::new();
    for m in 1..cx.cap() {
        for n in 1..cx.cap() {
            if m + n + 1 > cx.cap() {
                continue;
            }
            for a in 0..cx.dim(m) {
                for b in 0..cx.dim(n) {
                    let (f, g) = (cx.basis_cochain(m, a), cx.basis_cochain(n, b));
                    pairs += 1;
                    if cx.delta_of_circle(&f, &g)? != cx.chi_cup(&f, &g)? {
                        failures.push((m, a, n, b));
                    }
                }
            }
        }
    }
    Ok(CircleReport { pairs, failures })
}
