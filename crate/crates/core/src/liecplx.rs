//! The graded Lie algebra `T_* = ⊕ ↑^{m−1}T(m)` for `T = X ⊗ Y`, canonical
//! elements, and the soul complexes.
//!
//! Components are stored as plain vectors of `T(m)`. The composition `f ∘ g`
//! is computed in the suspension `↑T`, which carries the signs
//! `(−1)^{(n−1)(i−1)}` and the sign twist of the action. An element of
//! `T(m)` sits in degree `m − 1`.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use crate::coinv::Coinvariants;
use crate::error::{Error, Result};
use crate::linalg::{average, cohomology_dims, BasedSpace, CohomologyTable, ComplexRep, LinMap, SparseVec};
use crate::operads::catalog::planar_counterpart;
use crate::operads::{catalog, suspension, tensor, CatalogEntry, Operad, Pairing};
use crate::perm::Perm;
use crate::scalar::Scalar;

/// Finite sum of homogeneous components, keyed by arity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LieElement {
    comps: BTreeMap<usize, SparseVec>,
}

impl LieElement {
    pub fn zero() -> Self {
        LieElement::default()
    }

    pub fn homogeneous(arity: usize, v: SparseVec) -> Self {
        let mut e = LieElement::zero();
        e.add_component(arity, &v, &Scalar::one());
        e
    }

    pub fn component(&self, arity: usize) -> SparseVec {
        self.comps.get(&arity).cloned().unwrap_or_default()
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &SparseVec)> {
        self.comps.iter().map(|(m, v)| (*m, v))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Degree `m − 1` when the element is homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        match self.comps.len() {
            1 => self.comps.keys().next().map(|m| m - 1),
            _ => None,
        }
    }

    pub fn add_component(&mut self, arity: usize, v: &SparseVec, c: &Scalar) {
        let cur = self.comps.remove(&arity).unwrap_or_default();
        let next = cur.add_scaled(v, c);
        if !next.is_zero() {
            self.comps.insert(arity, next);
        }
    }

    pub fn add_scaled(&self, other: &LieElement, c: &Scalar) -> LieElement {
        let mut out = self.clone();
        for (m, v) in &other.comps {
            out.add_component(*m, v, c);
        }
        out
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        self.add_scaled(other, &Scalar::one())
    }

    pub fn sub(&self, other: &LieElement) -> LieElement {
        self.add_scaled(other, &Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> LieElement {
        LieElement::zero().add_scaled(self, c)
    }
}

/// `T = X ⊗ Y` with its suspension and cached coinvariants.
pub struct TAlgebra {
    left: Operad,
    right: Operad,
    plain: Operad,
    susp: Operad,
    coinv: Mutex<BTreeMap<usize, Arc<Coinvariants>>>,
}

impl TAlgebra {
    pub fn new(left: &Operad, right: &Operad) -> Result<Self> {
        let plain = tensor(left, right)?;
        let susp = suspension(&plain);
        Ok(TAlgebra {
            left: left.clone(),
            right: right.clone(),
            plain,
            susp,
            coinv: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn from_entry(entry: &CatalogEntry) -> Result<Self> {
        TAlgebra::new(&entry.operad, entry.dual_or_err()?)
    }

    pub fn cap(&self) -> usize {
        self.plain.cap()
    }

    pub fn symmetric(&self) -> bool {
        self.plain.symmetric()
    }

    pub fn left(&self) -> &Operad {
        &self.left
    }

    pub fn right(&self) -> &Operad {
        &self.right
    }

    /// The unsuspended tensor operad.
    pub fn plain(&self) -> &Operad {
        &self.plain
    }

    pub fn suspended(&self) -> &Operad {
        &self.susp
    }

    pub fn index(&self, m: usize, a: usize, b: usize) -> usize {
        a * self.right.dim(m) + b
    }

    /// `f ∘ g = Σ_i (−1)^{(n−1)(i−1)} f ∘_i g`; terms above the cap are dropped.
    pub fn circ(&self, f: &LieElement, g: &LieElement) -> LieElement {
        let mut out = LieElement::zero();
        for (m, x) in f.components() {
            for (n, y) in g.components() {
                if m + n - 1 > self.cap() {
                    continue;
                }
                for i in 1..=m {
                    out.add_component(m + n - 1, &self.susp.compose_vec(m, x, i, n, y), &Scalar::one());
                }
            }
        }
        out
    }

    /// `[f, g] = f ∘ g − (−1)^{(m−1)(n−1)} g ∘ f`, extended bilinearly.
    pub fn bracket(&self, f: &LieElement, g: &LieElement) -> LieElement {
        let mut out = LieElement::zero();
        for (m, x) in f.components() {
            for (n, y) in g.components() {
                let fx = LieElement::homogeneous(m, x.clone());
                let gy = LieElement::homogeneous(n, y.clone());
                let s = Scalar::sign(if (m - 1) * (n - 1) % 2 == 1 { -1 } else { 1 });
                out = out.add(&self.circ(&fx, &gy)).add_scaled(&self.circ(&gy, &fx), &-s);
            }
        }
        out
    }

    /// Twisted action `x ↦ x·σ` on the arity-`m` component.
    pub fn act(&self, m: usize, x: &SparseVec, sigma: &Perm) -> SparseVec {
        self.susp.act_vec(m, x, sigma)
    }

    pub fn is_invariant(&self, f: &LieElement) -> bool {
        !self.symmetric()
            || f.components()
                .all(|(m, x)| Perm::generators(m).iter().all(|g| &self.act(m, x, g) == x))
    }

    /// Componentwise averaging over `Σ_m`; enumerates the group.
    pub fn average(&self, f: &LieElement) -> LieElement {
        if !self.symmetric() {
            return f.clone();
        }
        let mut out = LieElement::zero();
        for (m, x) in f.components() {
            out.add_component(m, &average(m, x, &|v, g| self.act(m, v, g)), &Scalar::one());
        }
        out
    }

    pub fn coinvariants(&self, m: usize) -> Result<Arc<Coinvariants>> {
        if let Some(c) = self.coinv.lock().unwrap().get(&m) {
            return Ok(c.clone());
        }
        let c = Arc::new(Coinvariants::new(&self.left, &self.right, m, true)?);
        self.coinv.lock().unwrap().insert(m, c.clone());
        Ok(c)
    }

    /// Whether `f` vanishes in the coinvariants (equivalently `Aver(f) = 0`).
    pub fn class_is_zero(&self, f: &LieElement) -> Result<bool> {
        for (m, x) in f.components() {
            if !self.coinvariants(m)?.reduce(x).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `χ = Σ_k e_k ⊗ e^k` in arity 2, from the pairing of `P(2)` with `P^!(2)`.
pub fn canonical_chi_with(p: &Operad, dual: &Operad, pairing: &Pairing) -> Result<LieElement> {
    let (dp, dq) = (p.dim(2), dual.dim(2));
    if dp == 0 {
        return Err(Error::Precondition(format!("{}(2) = 0: the operad is trivial", p.name())));
    }
    if dp != dq || pairing.matrix.len() != dp {
        return Err(Error::SizeMismatch { left: dp, right: dq });
    }
    let v = SparseVec::from_entries(
        pairing
            .canonical_coefficients()
            .into_iter()
            .map(|(k, j, c)| (k * dq + j, c))
            .collect(),
    );
    Ok(LieElement::homogeneous(2, v))
}

pub fn canonical_chi(entry: &CatalogEntry) -> Result<LieElement> {
    canonical_chi_with(&entry.operad, entry.dual_or_err()?, entry.pairing_or_err()?)
}

/// `δ_ω(t) = Σ_i (−1)^{i−1} t ∘_i ω + (−1)^m ω ∘_1 t − ω ∘_2 t` for `t` of
/// arity `m`, computed in the unsuspended operad. Requires
/// `ω ∘_1 ω = ω ∘_2 ω`.
pub fn delta_omega(alg: &TAlgebra, omega: &SparseVec, t: &LieElement) -> Result<LieElement> {
    let p = alg.plain();
    if alg.cap() >= 3 {
        let residual = p.compose_vec(2, omega, 1, 2, omega).sub(&p.compose_vec(2, omega, 2, 2, omega));
        if !residual.is_zero() {
            return Err(Error::Precondition(format!(
                "ω ∘_1 ω ≠ ω ∘_2 ω; residual has {} terms",
                residual.len()
            )));
        }
    }
    let mut out = LieElement::zero();
    for (m, x) in t.components() {
        if m + 1 > alg.cap() {
            continue;
        }
        let mut v = SparseVec::new();
        for i in 1..=m {
            let s = Scalar::sign(if i % 2 == 1 { 1 } else { -1 });
            v = v.add_scaled(&p.compose_vec(m, x, i, 2, omega), &s);
        }
        let s = Scalar::sign(if m % 2 == 0 { 1 } else { -1 });
        v = v.add_scaled(&p.compose_vec(2, omega, 1, m, x), &s);
        v = v.sub(&p.compose_vec(2, omega, 2, m, x));
        out.add_component(m + 1, &v, &Scalar::one());
    }
    Ok(out)
}

/// `δ^Σ_φ(t) = Aver([φ, t])` on invariant elements; enumerates `Σ_{m+1}`.
pub fn delta_sigma(alg: &TAlgebra, phi: &LieElement, t: &LieElement) -> Result<LieElement> {
    check_phi(alg, phi)?;
    if !alg.is_invariant(t) {
        return Err(Error::Precondition("argument is not an invariant element".into()));
    }
    Ok(alg.average(&alg.bracket(phi, t)))
}

fn check_phi(alg: &TAlgebra, phi: &LieElement) -> Result<()> {
    if phi.is_zero() {
        return Ok(());
    }
    if phi.degree() != Some(1) {
        return Err(Error::Precondition("φ must be an element of arity 2".into()));
    }
    if !alg.is_invariant(phi) {
        return Err(Error::Precondition("φ is not invariant".into()));
    }
    if alg.cap() >= 3 && !alg.class_is_zero(&alg.bracket(phi, phi))? {
        return Err(Error::Precondition("[φ, φ] ≠ 0".into()));
    }
    Ok(())
}

/// Complex in degrees `0..cap−1`, degree `d` being arity `d + 1`.
///
/// Symmetric case: spaces are the twisted coinvariants (identified with the
/// invariants by averaging) and the differential is `t ↦ [φ, t]`. Non-Σ case:
/// all of `T(m)` with `δ_φ`.
pub fn build_lie_complex(alg: &TAlgebra, phi: &LieElement) -> Result<ComplexRep> {
    let cap = alg.cap();
    let mut spaces = Vec::new();
    let mut coinv = Vec::new();
    for m in 1..=cap {
        let c = alg.coinvariants(m)?;
        spaces.push(BasedSpace::standard(c.dim()));
        coinv.push(c);
    }
    if alg.symmetric() {
        check_phi(alg, phi)?;
    }
    let omega = phi.component(2);
    let mut diffs = Vec::new();
    for m in 1..cap {
        let (src, tgt) = (&coinv[m - 1], &coinv[m]);
        let cols: Result<Vec<SparseVec>> = (0..src.dim())
            .into_par_iter()
            .map(|k| {
                let t = LieElement::homogeneous(m, src.representative(k));
                let image = if alg.symmetric() {
                    alg.bracket(phi, &t)
                } else {
                    delta_omega(alg, &omega, &t)?
                };
                Ok(tgt.reduce(&image.component(m + 1)))
            })
            .collect();
        diffs.push(LinMap::from_columns(spaces[m - 1].clone(), spaces[m].clone(), cols?)?);
    }
    ComplexRep::new(spaces, diffs)
}

/// `((P ⊗ P^!)^Σ, δ^Σ_χ)` up to arity `cap` of the entry.
pub fn soul_complex(entry: &CatalogEntry) -> Result<ComplexRep> {
    let alg = TAlgebra::from_entry(entry)?;
    let chi = canonical_chi(entry)?;
    build_lie_complex(&alg, &chi)
}

#[derive(Clone, Debug, Serialize)]
pub struct SoulReport {
    pub operad: String,
    pub cap: usize,
    pub symmetric: bool,
    pub table: CohomologyTable,
}

pub fn soul_cohomology(name: &str, cap: usize) -> Result<SoulReport> {
    let entry = catalog(name, cap)?;
    let table = cohomology_dims(&soul_complex(&entry)?)?;
    Ok(SoulReport {
        operad: entry.name.clone(),
        cap,
        symmetric: entry.is_symmetric(),
        table,
    })
}

/// Soul of the non-Σ counterpart (`Ass → uAss`, `Mag → uMag`, `D → uD`).
pub fn nonsigma_soul_cohomology(name: &str, cap: usize) -> Result<SoulReport> {
    soul_cohomology(&planar_counterpart(name, cap)?.name, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operads::catalog_names;

    fn setup(name: &str, cap: usize) -> (TAlgebra, LieElement) {
        let e = catalog(name, cap).unwrap();
        (TAlgebra::from_entry(&e).unwrap(), canonical_chi(&e).unwrap())
    }

    #[test]
    fn chi_is_invariant_and_maurer_cartan() {
        for name in catalog_names() {
            let (alg, chi) = setup(name, 4);
            assert!(alg.is_invariant(&chi), "{name}");
            let sq = alg.bracket(&chi, &chi);
            assert!(alg.class_is_zero(&sq).unwrap(), "[χ,χ] ≠ 0 for {name}: {sq:?}");
            // Before averaging the square only vanishes when P^!(3) is small
            // or the operad is non-Σ.
            let on_the_nose = ["Sym", "Mag", "uAss", "uMag", "uD"].contains(name);
            assert_eq!(sq.is_zero(), on_the_nose, "{name}");
        }
    }

    #[test]
    fn nonsigma_chi_is_associative() {
        for name in ["uAss", "uMag", "uD"] {
            let (alg, chi) = setup(name, 3);
            let w = chi.component(2);
            let p = alg.plain();
            assert_eq!(p.compose_vec(2, &w, 1, 2, &w), p.compose_vec(2, &w, 2, 2, &w), "{name}");
        }
    }

    #[test]
    fn graded_antisymmetry_and_jacobi() {
        let (alg, _) = setup("Ass", 5);
        let basis = |m: usize, k: usize| LieElement::homogeneous(m, SparseVec::unit(k));
        let (f, g, h) = (basis(2, 1), basis(2, 3), basis(3, 7));
        assert_eq!(alg.bracket(&f, &g), alg.bracket(&g, &f));
        assert_eq!(alg.bracket(&f, &h), alg.bracket(&h, &f).scale(&Scalar::from_int(-1)));
        let j = alg
            .bracket(&f, &alg.bracket(&g, &h))
            .sub(&alg.bracket(&alg.bracket(&f, &g), &h))
            .add(&alg.bracket(&g, &alg.bracket(&f, &h)));
        assert!(j.is_zero());
    }

    #[test]
    fn delta_omega_squares_to_zero() {
        let (alg, chi) = setup("uAss", 5);
        let w = chi.component(2);
        for m in 1..=3 {
            for k in 0..alg.plain().dim(m) {
                let t = LieElement::homogeneous(m, SparseVec::unit(k));
                let dd = delta_omega(&alg, &w, &delta_omega(&alg, &w, &t).unwrap()).unwrap();
                assert!(dd.is_zero());
            }
        }
    }

    #[test]
    fn delta_sigma_of_chi_vanishes() {
        let (alg, chi) = setup("Ass", 4);
        assert!(delta_sigma(&alg, &chi, &chi).unwrap().is_zero());
    }

    #[test]
    fn small_souls() {
        // sgn occurs in Lie(m) only for m ≤ 2
        let com = soul_cohomology("Com", 5).unwrap();
        assert_eq!(com.table.rows.iter().map(|r| r.dim).collect::<Vec<_>>(), vec![1, 1, 0, 0, 0]);
        assert!(com.table.acyclic());
        let ass = soul_cohomology("Ass", 5).unwrap();
        assert_eq!(ass.table.rows.iter().map(|r| r.dim).collect::<Vec<_>>(), vec![1, 2, 6, 24, 120]);
        assert!(ass.table.acyclic());
        let sym = soul_cohomology("Sym", 4).unwrap();
        assert_eq!(sym.table.rows.iter().map(|r| r.dim).collect::<Vec<_>>(), vec![1, 1, 0, 0]);
    }
}
