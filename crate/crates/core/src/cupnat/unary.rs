//! Unary natural operations: module endomorphisms of `P^!` and the explicit
//! dg-algebra of unary operations for `Sym`.

use serde::Serialize;

use crate::cochain::algebra::LinearExtension;
use crate::error::{Error, Result};
use crate::linalg::{nullspace, Accumulator, SparseVec};
use crate::operads::{catalog, Operad};
use crate::perm::Perm;
use crate::scalar::Scalar;

/// A family `α_m : Q(m) → Q(m)`, `m ≤ cap`, stored column by column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleEndo {
    pub maps: Vec<Vec<SparseVec>>,
}

impl ModuleEndo {
    pub fn apply(&self, m: usize, x: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (j, c) in x.entries() {
            acc.add_vec(&self.maps[m - 1][*j], c);
        }
        acc.finish()
    }

    pub fn identity(q: &Operad) -> ModuleEndo {
        ModuleEndo {
            maps: (1..=q.cap()).map(|m| (0..q.dim(m)).map(SparseVec::unit).collect()).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleEndoSpace {
    pub operad: String,
    pub cap: usize,
    pub dim: usize,
    pub basis: Vec<ModuleEndo>,
}

/// Values of `α` in arity `m` as vectors over the parameters: coordinate
/// `p·dim Q(m) + o` is the coefficient of parameter `p` on `e_o`.
type Param = Vec<SparseVec>;

fn at_param(v: &SparseVec, dim: usize, p: usize) -> SparseVec {
    SparseVec::from_entries(v.entries().iter().filter(|(i, _)| i / dim == p).map(|(i, c)| (i % dim, c.clone())).collect())
}

fn param_map(v: &SparseVec, from: usize, to: usize, f: impl Fn(&SparseVec) -> SparseVec) -> SparseVec {
    let params: std::collections::BTreeSet<usize> = v.entries().iter().map(|(i, _)| i / from).collect();
    let mut acc = Accumulator::new();
    for p in params {
        for (o, c) in f(&at_param(v, from, p)).entries() {
            acc.add(p * to + o, c);
        }
    }
    acc.finish()
}

/// Solves equivariance and `α(p ∘_i q) = p ∘_i α(q)` for all basis `p`, `q`
/// within the cap. The unknowns are the entries of `α_1`; higher `α_m` are
/// forced by `p ∘_i 1 = p`, and every remaining equation becomes a linear
/// condition on the parameters.
pub fn module_endo_space_of(q: &Operad, cap: usize) -> Result<ModuleEndoSpace> {
    let d1 = q.dim(1);
    let np = d1 * d1;
    let mut values: Vec<Param> = Vec::new();
    values.push((0..d1).map(|a| SparseVec::from_entries((0..d1).map(|b| ((a * d1 + b) * d1 + b, Scalar::one())).collect())).collect());
    let mut constraints: Vec<SparseVec> = Vec::new();
    let mut add_residual = |r: &SparseVec, dim: usize| {
        for o in 0..dim {
            let row = SparseVec::from_entries(r.entries().iter().filter(|(i, _)| i % dim == o).map(|(i, c)| (i / dim, c.clone())).collect());
            if !row.is_zero() {
                constraints.push(row);
            }
        }
    };
    for m in 1..=cap {
        let dm = q.dim(m);
        let mut ext = LinearExtension::default();
        if m == 1 {
            for (a, v) in values[0].iter().enumerate() {
                ext.insert_or_residual(&SparseVec::unit(a), v);
            }
        }
        // k = 1 involves α_m on both sides and is checked after solving
        for k in (if m == 1 { 1 } else { 2 })..=m {
            let l = m + 1 - k;
            for a in 0..q.dim(k) {
                for b in 0..q.dim(l) {
                    let pa = SparseVec::unit(a);
                    let vb = &values[l - 1][b];
                    for i in 1..=k {
                        let x = q.compose_vec(k, &pa, i, l, &SparseVec::unit(b));
                        let y = param_map(vb, q.dim(l), dm, |w| q.compose_vec(k, &pa, i, l, w));
                        if let Some(r) = ext.insert_or_residual(&x, &y) {
                            add_residual(&r, dm);
                        }
                    }
                }
            }
        }
        let cols = if m == 1 {
            values[0].clone()
        } else {
            ext.solve(dm).map_err(|_| Error::Unsupported(format!("{} is not generated below arity {m}", q.name())))?
        };
        let apply = |x: &SparseVec| {
            let mut acc = Accumulator::new();
            for (k, c) in x.entries() {
                acc.add_vec(&cols[*k], c);
            }
            acc.finish()
        };
        if m > 1 {
            for a in 0..d1 {
                let pa = SparseVec::unit(a);
                for b in 0..dm {
                    let x = q.compose_vec(1, &pa, 1, m, &SparseVec::unit(b));
                    let y = param_map(&cols[b], dm, dm, |w| q.compose_vec(1, &pa, 1, m, w));
                    add_residual(&apply(&x).sub(&y), dm);
                }
            }
        }
        if q.symmetric() {
            for g in Perm::generators(m) {
                for (j, col) in cols.iter().enumerate() {
                    let lhs = apply(&q.act_vec(m, &SparseVec::unit(j), &g));
                    let rhs = param_map(col, dm, dm, |w| q.act_vec(m, w, &g));
                    add_residual(&lhs.sub(&rhs), dm);
                }
            }
        }
        if m > 1 {
            values.push(cols);
        }
    }
    let sols = nullspace(&constraints, np);
    let basis = sols
        .iter()
        .map(|s| ModuleEndo {
            maps: values
                .iter()
                .enumerate()
                .map(|(m, cols)| {
                    let dm = q.dim(m + 1);
                    cols.iter()
                        .map(|v| {
                            let mut acc = Accumulator::new();
                            for (p, c) in s.entries() {
                                acc.add_vec(&at_param(v, dm, *p), c);
                            }
                            acc.finish()
                        })
                        .collect()
                })
                .collect(),
        })
        .collect::<Vec<_>>();
    Ok(ModuleEndoSpace { operad: q.name(), cap, dim: basis.len(), basis })
}

/// Module endomorphisms of the dual of a catalog operad.
pub fn module_endo_space(name: &str, cap: usize) -> Result<ModuleEndoSpace> {
    let e = catalog(name, cap)?;
    module_endo_space_of(e.dual_or_err()?, cap)
}

/// `Σ_m dim End_{Σ_m}(Q(m))`: the equivariant collections without the
/// module condition.
pub fn equivariant_collection_dim(q: &Operad, cap: usize) -> usize {
    (1..=cap)
        .map(|m| {
            let d = q.dim(m);
            if d == 0 {
                return 0;
            }
            // unknown M[o][j] at index o·d + j; condition M·g = g·M
            let mut rows = Vec::new();
            if q.symmetric() {
                for g in Perm::generators(m) {
                    let act: Vec<SparseVec> = (0..d).map(|j| q.act_vec(m, &SparseVec::unit(j), &g)).collect();
                    for o in 0..d {
                        for j in 0..d {
                            let mut acc = Accumulator::new();
                            for (k, c) in act[j].entries() {
                                acc.add(o * d + k, c);
                            }
                            for (o2, c) in act.iter().enumerate().flat_map(|(k, col)| {
                                col.entries().iter().filter(move |(r, _)| *r == o).map(move |(_, c)| (k, c.clone()))
                            }) {
                                acc.add(o2 * d + j, &-c);
                            }
                            let r = acc.finish();
                            if !r.is_zero() {
                                rows.push(r);
                            }
                        }
                    }
                }
            }
            nullspace(&rows, d * d).len()
        })
        .sum()
}

/// The dg-algebra of unary operations for `Sym`: basis `α, β` in degree 0
/// and `u, v` in degree 1.
#[derive(Clone, Debug, Serialize)]
pub struct SymFixture {
    pub names: [&'static str; 4],
    pub degrees: [usize; 4],
    /// `d(e_j)` as dense rows.
    pub differential: [[i64; 4]; 4],
    /// `e_i · e_j`.
    pub products: Vec<Vec<[i64; 4]>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymFixtureReport {
    pub h0: usize,
    pub h1: usize,
    pub d_squared_zero: bool,
    pub leibniz: bool,
    /// `dim B⁰_Sym(1)` as equivariant self-maps of `Sym^!`.
    pub b0_dim: usize,
}

impl SymFixture {
    pub fn new() -> Self {
        const A: usize = 0;
        const B: usize = 1;
        let mut products = vec![vec![[0i64; 4]; 4]; 4];
        let e = |k: usize| {
            let mut v = [0i64; 4];
            v[k] = 1;
            v
        };
        products[A][A] = e(A);
        products[B][B] = e(B);
        for b in [2, 3] {
            // αb = 0 = bβ, bα = b = βb
            products[b][A] = e(b);
            products[B][b] = e(b);
        }
        let mut differential = [[0i64; 4]; 4];
        differential[A] = [0, 0, 1, -1];
        differential[B] = [0, 0, -1, 1];
        SymFixture { names: ["alpha", "beta", "u", "v"], degrees: [0, 0, 1, 1], differential, products }
    }

    fn d(&self, x: &[i64; 4]) -> [i64; 4] {
        let mut out = [0; 4];
        for (j, c) in x.iter().enumerate() {
            for k in 0..4 {
                out[k] += c * self.differential[j][k];
            }
        }
        out
    }

    fn mul(&self, x: &[i64; 4], y: &[i64; 4]) -> [i64; 4] {
        let mut out = [0; 4];
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    out[k] += x[i] * y[j] * self.products[i][j][k];
                }
            }
        }
        out
    }

    pub fn report(&self) -> Result<SymFixtureReport> {
        let unit = |k: usize| {
            let mut v = [0i64; 4];
            v[k] = 1;
            v
        };
        let d_squared_zero = (0..4).all(|j| self.d(&self.d(&unit(j))) == [0; 4]);
        let mut leibniz = true;
        for i in 0..4 {
            for j in 0..4 {
                let (x, y) = (unit(i), unit(j));
                let lhs = self.d(&self.mul(&x, &y));
                let a = self.mul(&self.d(&x), &y);
                let b = self.mul(&x, &self.d(&y));
                let s = if self.degrees[i] % 2 == 0 { 1 } else { -1 };
                leibniz &= (0..4).all(|k| lhs[k] == a[k] + s * b[k]);
            }
        }
        // degree 0 → degree 1 block of d
        let rows: Vec<SparseVec> = (2..4)
            .map(|k| SparseVec::from_dense(&[Scalar::from_int(self.differential[0][k]), Scalar::from_int(self.differential[1][k])]))
            .collect();
        let rank = 2 - nullspace(&rows, 2).len();
        let sym = catalog("Sym", 3)?;
        Ok(SymFixtureReport {
            h0: 2 - rank,
            h1: 2 - rank,
            d_squared_zero,
            leibniz,
            b0_dim: equivariant_collection_dim(sym.dual_or_err()?, 3),
        })
    }
}

impl Default for SymFixture {
    fn default() -> Self {
        SymFixture::new()
    }
}

pub fn sym_b1_fixture() -> Result<SymFixtureReport> {
    SymFixture::new().report()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_duals_have_scalar_endomorphisms() {
        for name in ["Ass", "Com", "Lie", "Sym", "Mag", "preLie", "D", "uAss"] {
            let s = module_endo_space(name, 4).unwrap();
            assert_eq!(s.dim, 1, "{name}");
            let q = catalog(name, 4).unwrap();
            let id = ModuleEndo::identity(q.dual_or_err().unwrap());
            // the solution is a multiple of the identity
            let b = &s.basis[0];
            let c = b.apply(1, &SparseVec::unit(0)).get(0);
            for m in 1..=4 {
                for j in 0..id.maps[m - 1].len() {
                    assert_eq!(b.apply(m, &SparseVec::unit(j)), id.maps[m - 1][j].scale(&c));
                }
            }
        }
    }

    #[test]
    fn sym_fixture() {
        let r = sym_b1_fixture().unwrap();
        assert_eq!((r.h0, r.h1), (1, 1));
        assert!(r.d_squared_zero && r.leibniz);
        assert_eq!(r.b0_dim, 2);
    }
}
