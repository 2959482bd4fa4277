//! Direct multilinear-map oracles: Hochschild and Harrison differentials,
//! the classical cup product and Gerstenhaber partial compositions, written
//! from their defining formulas on basis tuples.
#![allow(dead_code)]

use std::collections::BTreeMap;

use operadlab::cochain::PAlgebra;
use operadlab::linalg::SparseVec;
use operadlab::Scalar;

/// Multilinear map `A^{⊗m} → A`: image of each basis tuple.
#[derive(Clone, Debug, PartialEq)]
pub struct Multi {
    pub dim: usize,
    pub arity: usize,
    pub values: BTreeMap<Vec<usize>, Vec<Scalar>>,
}

pub fn tuples(d: usize, m: usize) -> Vec<Vec<usize>> {
    let mut v = vec![vec![]];
    for _ in 0..m {
        v = v
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                (0..d).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    v
}

fn axpy(acc: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
    for (a, b) in acc.iter_mut().zip(x) {
        *a += &(c * b);
    }
}

/// Product table `μ(e_i, e_j)` of a one-generator algebra.
pub struct Product {
    pub dim: usize,
    table: Vec<Vec<Vec<Scalar>>>,
}

impl Product {
    pub fn of(a: &PAlgebra, gen: &str) -> Product {
        Product { dim: a.dim, table: a.structure[gen].clone() }
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                axpy(&mut out, &(xi * yj), &self.table[i][j]);
            }
        }
        out
    }
}

pub fn unit(d: usize, a: usize) -> Vec<Scalar> {
    (0..d).map(|k| Scalar::from_int((k == a) as i64)).collect()
}

impl Multi {
    pub fn from_fn(dim: usize, arity: usize, mut f: impl FnMut(&[usize]) -> Vec<Scalar>) -> Multi {
        let values = tuples(dim, arity).into_iter().map(|t| { let v = f(&t); (t, v) }).collect();
        Multi { dim, arity, values }
    }

    /// Small deterministic integer entries.
    pub fn sample(dim: usize, arity: usize, seed: usize) -> Multi {
        let mut n = 0usize;
        Multi::from_fn(dim, arity, |_| {
            n += 1;
            (0..dim).map(|k| Scalar::from_int(((n * 7 + k * 5 + seed * 11) % 5) as i64 - 2)).collect()
        })
    }

    pub fn eval(&self, args: &[Vec<Scalar>]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (ins, v) in &self.values {
            let mut c = Scalar::one();
            for (a, &i) in args.iter().zip(ins) {
                c = &c * &a[i];
                if c.is_zero() {
                    break;
                }
            }
            if !c.is_zero() {
                axpy(&mut out, &c, v);
            }
        }
        out
    }

    /// Coordinates in `End_A(m)`: index `((k·d + i_1)·d + …)`.
    pub fn to_end(&self) -> SparseVec {
        let d = self.dim;
        let mut v = Vec::new();
        for (ins, out) in &self.values {
            for (k, c) in out.iter().enumerate() {
                if !c.is_zero() {
                    v.push((ins.iter().fold(k, |a, &x| a * d + x), c.clone()));
                }
            }
        }
        v.sort_by_key(|x| x.0);
        SparseVec::from_entries(v)
    }

    pub fn from_end(dim: usize, arity: usize, x: &SparseVec) -> Multi {
        let mut m = Multi::from_fn(dim, arity, |_| vec![Scalar::zero(); dim]);
        for (idx, c) in x.entries() {
            let mut r = *idx;
            let mut ins = vec![0; arity];
            for p in (0..arity).rev() {
                ins[p] = r % dim;
                r /= dim;
            }
            m.values.get_mut(&ins).unwrap()[r] = c.clone();
        }
        m
    }

    fn basis_args(&self, t: &[usize]) -> Vec<Vec<Scalar>> {
        t.iter().map(|&x| unit(self.dim, x)).collect()
    }

    /// `a_1 f(a_2, …) + Σ (−1)^i f(…, a_i a_{i+1}, …) + (−1)^{m+1} f(…) a_{m+1}`.
    pub fn hochschild(&self, mu: &Product) -> Multi {
        let m = self.arity;
        Multi::from_fn(self.dim, m + 1, |t| {
            let a = self.basis_args(t);
            let mut acc = mu.mul(&a[0], &self.eval(&a[1..]));
            for i in 0..m {
                let mut b = a[..i].to_vec();
                b.push(mu.mul(&a[i], &a[i + 1]));
                b.extend_from_slice(&a[i + 2..]);
                axpy(&mut acc, &Scalar::sign(if i % 2 == 0 { -1 } else { 1 }), &self.eval(&b));
            }
            let last = mu.mul(&self.eval(&a[..m]), &a[m]);
            axpy(&mut acc, &Scalar::sign(if m % 2 == 0 { -1 } else { 1 }), &last);
            acc
        })
    }

    /// `(f ∪ g)(a_1, …, a_{m+n}) = f(a_1, …, a_m) · g(a_{m+1}, …)`.
    pub fn cup(&self, g: &Multi, mu: &Product) -> Multi {
        let m = self.arity;
        Multi::from_fn(self.dim, m + g.arity, |t| {
            let a = self.basis_args(t);
            mu.mul(&self.eval(&a[..m]), &g.eval(&a[m..]))
        })
    }

    /// `(u ∘_i v)(a_1, …) = u(a_1, …, v(a_i, …, a_{i+n−1}), …)`, `i` 1-based.
    pub fn compose(&self, i: usize, v: &Multi) -> Multi {
        let n = v.arity;
        Multi::from_fn(self.dim, self.arity + n - 1, |t| {
            let a = self.basis_args(t);
            let mut b = a[..i - 1].to_vec();
            b.push(v.eval(&a[i - 1..i - 1 + n]));
            b.extend_from_slice(&a[i - 1 + n..]);
            self.eval(&b)
        })
    }

    pub fn add_scaled(&self, other: &Multi, c: &Scalar) -> Multi {
        let mut out = self.clone();
        for (t, v) in out.values.iter_mut() {
            axpy(v, c, &other.values[t]);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|v| v.iter().all(Scalar::is_zero))
    }
}

/// Harrison differential on 1-cochains of a commutative algebra:
/// `(dφ)(a, b) = a·φ(b) − φ(a·b) + φ(a)·b`.
pub fn harrison0(phi: &Multi, mu: &Product) -> Multi {
    Multi::from_fn(phi.dim, 2, |t| {
        let (a, b) = (unit(phi.dim, t[0]), unit(phi.dim, t[1]));
        let mut acc = mu.mul(&a, &phi.eval(&[b.clone()]));
        axpy(&mut acc, &Scalar::from_int(-1), &phi.eval(&[mu.mul(&a, &b)]));
        axpy(&mut acc, &Scalar::one(), &mu.mul(&phi.eval(&[a]), &b));
        acc
    })
}

pub fn dual_numbers(op: &str) -> PAlgebra {
    PAlgebra::new(op, 2).with_product("mu", |i, j| match (i, j) {
        (0, 0) => vec![1, 0],
        (0, 1) | (1, 0) => vec![0, 1],
        _ => vec![0, 0],
    })
}

/// Upper triangular 2×2 matrices on `E11, E12, E22`.
pub fn upper_triangular() -> PAlgebra {
    PAlgebra::new("Ass", 3).with_product("mu", |i, j| match (i, j) {
        (0, 0) => vec![1, 0, 0],
        (0, 1) | (1, 2) => vec![0, 1, 0],
        (2, 2) => vec![0, 0, 1],
        _ => vec![0, 0, 0],
    })
}
