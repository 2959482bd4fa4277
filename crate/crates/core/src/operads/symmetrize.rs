//! Symmetrization `P(n) = P̲(n) ⊗ k[Σ_n]` of a non-Σ operad.

use super::{Operad, OperadModel};
use crate::linalg::{Accumulator, SparseVec};
use crate::perm::{factorial_usize, Perm};

/// Basis element `(t, σ)` stands for `t·σ` and has index `t·n! + index(σ)`.
#[derive(Clone)]
pub struct Symmetrization {
    inner: Operad,
    name: String,
}

pub fn symmetrization(inner: Operad, name: impl Into<String>) -> Operad {
    Operad::new(Symmetrization::new(inner, name))
}

impl Symmetrization {
    pub fn new(inner: Operad, name: impl Into<String>) -> Self {
        assert!(!inner.symmetric(), "symmetrization expects a non-Σ operad");
        Symmetrization {
            inner,
            name: name.into(),
        }
    }

    pub fn planar(&self) -> &Operad {
        &self.inner
    }

    pub fn split(n: usize, b: usize) -> (usize, Perm) {
        let f = factorial_usize(n);
        (b / f, Perm::from_index(n, b % f))
    }

    pub fn join(n: usize, t: usize, sigma: &Perm) -> usize {
        t * factorial_usize(n) + sigma.index()
    }
}

impl OperadModel for Symmetrization {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn cap(&self) -> usize {
        self.inner.cap()
    }
    fn dim(&self, n: usize) -> usize {
        self.inner.dim(n) * factorial_usize(n)
    }
    fn label(&self, n: usize, b: usize) -> String {
        let (t, s) = Self::split(n, b);
        if s.is_identity() {
            self.inner.label(n, t)
        } else {
            format!("{}·{}", self.inner.label(n, t), s)
        }
    }
    fn degree(&self, n: usize, b: usize) -> i32 {
        self.inner.degree(n, Self::split(n, b).0)
    }
    fn compose(&self, m: usize, a: usize, i: usize, n: usize, b: usize) -> SparseVec {
        let (t, sigma) = Self::split(m, a);
        let (s, tau) = Self::split(n, b);
        let planar = self.inner.compose(m, t, sigma.apply(i), n, s);
        let shift = Perm::identity(i - 1).block_sum(&tau).block_sum(&Perm::identity(m - i));
        let g = sigma.expand_block(i, n).mul(&shift);
        let k = m + n - 1;
        let mut acc = Accumulator::new();
        for (u, c) in planar.entries() {
            acc.add(Self::join(k, *u, &g), c);
        }
        acc.finish()
    }
    fn act(&self, n: usize, b: usize, sigma: &Perm) -> SparseVec {
        let (t, s) = Self::split(n, b);
        SparseVec::unit(Self::join(n, t, &s.mul(sigma)))
    }
    fn monomial(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operads::{PlanarAss, PlanarMag};

    #[test]
    fn dimension_law() {
        let ua = Operad::new(PlanarAss::new(5));
        let um = Operad::new(PlanarMag::new(5));
        let a = symmetrization(ua.clone(), "Ass");
        let m = symmetrization(um.clone(), "Mag");
        for n in 1..=5 {
            assert_eq!(a.dim(n), ua.dim(n) * factorial_usize(n));
            assert_eq!(m.dim(n), um.dim(n) * factorial_usize(n));
        }
    }

    #[test]
    fn symmetrized_models_satisfy_axioms() {
        let a = symmetrization(Operad::new(PlanarAss::new(5)), "Ass");
        a.check_axioms(5, Some((6, 1))).unwrap();
        a.check_axioms(4, None).unwrap();
        let m = symmetrization(Operad::new(PlanarMag::new(4)), "Mag");
        m.check_axioms(4, Some((6, 2))).unwrap();
    }
}
