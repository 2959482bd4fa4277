//! Arity-truncated operads.
//!
//! Every operad is a lazy model: it knows the dimension of each arity, how to
//! compose two basis elements and how `Σ_n` acts on a basis element. Arity 0
//! is never used. Models are immutable and shared through [`Operad`].

pub mod catalog;
mod classic;
mod construct;
mod free;
mod planar;
mod symmetrize;

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{Accumulator, SparseVec};
use crate::perm::Perm;
use crate::scalar::Scalar;

pub use catalog::{catalog, catalog_names, entry_from_presentation, CatalogEntry, Pairing};
pub use classic::{Com, EndOperad, Lie, PermOperad, TruncatedBinary};
pub use construct::{suspension, tensor, Suspension, Tensor};
pub use free::{
    free_operad, parse_tree, presented_operad, quadratic_dual, FreeOperad, GeneratorAction, GeneratorSpec,
    Presentation, PresentedOperad, RelationTerm, Tree,
};
pub use planar::{PlanarAss, PlanarCoproduct, PlanarFreeProduct, PlanarMag, PlanarTruncated};
pub use symmetrize::{symmetrization, Symmetrization};

/// Hard ceiling on arity caps.
pub const MAX_CAP: usize = 8;

pub trait OperadModel: Send + Sync {
    fn name(&self) -> String;

    fn cap(&self) -> usize;

    /// Whether `Σ_n` acts; non-Σ models only accept the identity.
    fn symmetric(&self) -> bool {
        true
    }

    /// Dimension in arity `n`; zero outside `1..=cap`.
    fn dim(&self, n: usize) -> usize;

    fn label(&self, n: usize, b: usize) -> String {
        format!("b{n}_{b}")
    }

    /// Internal degree of a basis element.
    fn degree(&self, _n: usize, _b: usize) -> i32 {
        0
    }

    /// The unit in arity 1.
    fn unit(&self) -> SparseVec {
        SparseVec::unit(0)
    }

    /// `e_a ∘_i e_b` with `e_a` in arity `m`, `e_b` in arity `n`, `m+n−1 ≤ cap`.
    fn compose(&self, m: usize, a: usize, i: usize, n: usize, b: usize) -> SparseVec;

    /// Right action `e_b · σ`.
    fn act(&self, n: usize, b: usize, sigma: &Perm) -> SparseVec;

    /// True when every basis element is sent to a multiple of a basis element
    /// by every permutation.
    fn monomial(&self) -> bool {
        false
    }

    fn compose_vec(&self, m: usize, x: &SparseVec, i: usize, n: usize, y: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (a, ca) in x.entries() {
            for (b, cb) in y.entries() {
                acc.add_vec(&self.compose(m, *a, i, n, *b), &(ca * cb));
            }
        }
        acc.finish()
    }

    fn act_vec(&self, n: usize, x: &SparseVec, sigma: &Perm) -> SparseVec {
        if sigma.is_identity() {
            return x.clone();
        }
        let mut acc = Accumulator::new();
        for (b, c) in x.entries() {
            acc.add_vec(&self.act(n, *b, sigma), c);
        }
        acc.finish()
    }
}

/// Shared handle to an operad model.
#[derive(Clone)]
pub struct Operad(Arc<dyn OperadModel>);

impl Operad {
    pub fn new(model: impl OperadModel + 'static) -> Self {
        Operad(Arc::new(model))
    }

    pub fn dims(&self) -> Vec<usize> {
        (1..=self.cap()).map(|n| self.dim(n)).collect()
    }

    /// `x ∘_i y` with range checks.
    pub fn try_compose(&self, m: usize, x: &SparseVec, i: usize, n: usize, y: &SparseVec) -> Result<SparseVec> {
        if m + n - 1 > self.cap() {
            return Err(Error::ResourceBound(format!(
                "arity {} exceeds cap {} of {}",
                m + n - 1,
                self.cap(),
                self.name()
            )));
        }
        if i == 0 || i > m {
            return Err(Error::IndexOutOfRange { index: i, bound: m });
        }
        Ok(self.compose_vec(m, x, i, n, y))
    }

    /// Monomial action `e_b·σ = c·e_{b'}`; panics for non-monomial models.
    pub fn act_mono(&self, n: usize, b: usize, sigma: &Perm) -> (usize, Scalar) {
        let v = self.act(n, b, sigma);
        assert_eq!(v.len(), 1, "{} is not monomial", self.name());
        v.entries()[0].clone()
    }

    /// Dense matrix of `σ` on arity `n`, as columns.
    pub fn action_columns(&self, n: usize, sigma: &Perm) -> Vec<SparseVec> {
        (0..self.dim(n)).map(|b| self.act(n, b, sigma)).collect()
    }

    /// Character of the `Σ_n`-module in arity `n`, listed over `Perm::all(n)`.
    pub fn character(&self, n: usize) -> Vec<Scalar> {
        Perm::all(n)
            .map(|g| {
                let mut tr = Scalar::zero();
                for b in 0..self.dim(n) {
                    tr += &self.act(n, b, &g).get(b);
                }
                tr
            })
            .collect()
    }

    pub fn check_axioms(&self, bound: usize, samples: Option<(usize, u64)>) -> Result<()> {
        check_axioms(self, bound, samples)
    }
}

impl Deref for Operad {
    type Target = dyn OperadModel;
    fn deref(&self) -> &Self::Target {
        &*self.0
    }
}

impl fmt::Debug for Operad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Operad({}, cap {}, dims {:?})", self.name(), self.cap(), self.dims())
    }
}

fn sign_of(exp: i64) -> Scalar {
    if exp.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        Scalar::from_int(-1)
    }
}

pub(crate) fn koszul(a: i32, b: i32) -> Scalar {
    sign_of(a as i64 * b as i64)
}

/// Description of a failed axiom instance.
fn violation(what: &str, detail: String) -> Error {
    Error::Precondition(format!("operad axiom `{what}` fails: {detail}"))
}

/// Checks unit, associativity (sequential and parallel, with Koszul signs),
/// action and equivariance laws. With `samples = Some((k, seed))` only `k`
/// random basis tuples per arity combination are tested.
pub fn check_axioms(p: &Operad, bound: usize, samples: Option<(usize, u64)>) -> Result<()> {
    use rand::SeedableRng;
    let bound = bound.min(p.cap());
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(samples.map_or(0, |s| s.1));
    let mut pick = |dim: usize, count: usize| -> Vec<usize> {
        match samples {
            Some((k, _)) if dim > k => (0..k.min(count)).map(|_| rng.gen_range(0..dim)).collect(),
            _ => (0..dim).collect(),
        }
    };
    let unit = p.unit();
    if p.dim(1) == 0 {
        return Err(violation("unit", "arity 1 is zero".into()));
    }
    for n in 1..=bound {
        for b in pick(p.dim(n), usize::MAX) {
            let e = SparseVec::unit(b);
            if p.compose_vec(1, &unit, 1, n, &e) != e {
                return Err(violation("e∘_1 p = p", p.label(n, b)));
            }
            for i in 1..=n {
                if p.compose_vec(n, &e, i, 1, &unit) != e {
                    return Err(violation("p∘_i e = p", format!("{} at {i}", p.label(n, b))));
                }
            }
            if p.symmetric() {
                let gens = Perm::generators(n);
                if p.act(n, b, &Perm::identity(n)) != e {
                    return Err(violation("p·id = p", p.label(n, b)));
                }
                for g in &gens {
                    for h in &gens {
                        let lhs = p.act_vec(n, &p.act(n, b, g), h);
                        if lhs != p.act(n, b, &g.mul(h)) {
                            return Err(violation("(p·g)·h = p·(gh)", format!("{} {g} {h}", p.label(n, b))));
                        }
                    }
                }
            }
        }
    }
    for m in 1..=bound {
        for n in 1..=bound {
            if m + n - 1 > bound {
                continue;
            }
            for r in 1..=bound {
                if m + n + r - 2 > bound {
                    continue;
                }
                for a in pick(p.dim(m), 3) {
                    for b in pick(p.dim(n), 3) {
                        for c in pick(p.dim(r), 3) {
                            check_assoc(p, (m, a), (n, b), (r, c))?;
                        }
                    }
                }
            }
            if p.symmetric() {
                for a in pick(p.dim(m), 4) {
                    for b in pick(p.dim(n), 4) {
                        check_equivariance(p, (m, a), (n, b))?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_assoc(p: &Operad, (m, a): (usize, usize), (n, b): (usize, usize), (r, c): (usize, usize)) -> Result<()> {
    let (x, y, z) = (SparseVec::unit(a), SparseVec::unit(b), SparseVec::unit(c));
    let (dy, dz) = (p.degree(n, b), p.degree(r, c));
    for i in 1..=m {
        let xy = p.compose_vec(m, &x, i, n, &y);
        for j in 1..=n {
            let lhs = p.compose_vec(m + n - 1, &xy, i + j - 1, r, &z);
            let rhs = p.compose_vec(m, &x, i, n + r - 1, &p.compose_vec(n, &y, j, r, &z));
            if lhs != rhs {
                return Err(violation(
                    "sequential associativity",
                    format!("{} ∘_{i} {} ∘_{j} {}", p.label(m, a), p.label(n, b), p.label(r, c)),
                ));
            }
        }
        for k in i + 1..=m {
            let lhs = p.compose_vec(m + n - 1, &xy, k + n - 1, r, &z);
            let xz = p.compose_vec(m, &x, k, r, &z);
            let rhs = p.compose_vec(m + r - 1, &xz, i, n, &y).scale(&koszul(dy, dz));
            if lhs != rhs {
                return Err(violation(
                    "parallel associativity",
                    format!("{} with {} at {i}, {} at {k}", p.label(m, a), p.label(n, b), p.label(r, c)),
                ));
            }
        }
    }
    Ok(())
}

fn check_equivariance(p: &Operad, (m, a): (usize, usize), (n, b): (usize, usize)) -> Result<()> {
    let (x, y) = (SparseVec::unit(a), SparseVec::unit(b));
    for sigma in Perm::generators(m) {
        let xs = p.act(m, a, &sigma);
        for i in 1..=m {
            let lhs = p.compose_vec(m, &xs, i, n, &y);
            let rhs = p.act_vec(
                m + n - 1,
                &p.compose_vec(m, &x, sigma.apply(i), n, &y),
                &sigma.expand_block(i, n),
            );
            if lhs != rhs {
                return Err(violation(
                    "(p·σ)∘_i q = (p∘_σ(i) q)·σ'",
                    format!("{} σ={sigma} i={i} q={}", p.label(m, a), p.label(n, b)),
                ));
            }
        }
    }
    for tau in Perm::generators(n) {
        let yt = p.act(n, b, &tau);
        for i in 1..=m {
            let lhs = p.compose_vec(m, &x, i, n, &yt);
            let shift = Perm::identity(i - 1).block_sum(&tau).block_sum(&Perm::identity(m - i));
            let rhs = p.act_vec(m + n - 1, &p.compose_vec(m, &x, i, n, &y), &shift);
            if lhs != rhs {
                return Err(violation(
                    "p∘_i(q·τ) = (p∘_i q)·τ'",
                    format!("{} i={i} q={} τ={tau}", p.label(m, a), p.label(n, b)),
                ));
            }
        }
    }
    Ok(())
}

pub(crate) fn check_cap(cap: usize) -> Result<()> {
    if cap == 0 {
        return Err(Error::Invalid("arity cap must be at least 1".into()));
    }
    if cap > MAX_CAP {
        return Err(Error::ResourceBound(format!("arity cap {cap} exceeds {MAX_CAP}")));
    }
    Ok(())
}
