//! Arity-wise tensor product and operadic suspension.

use std::collections::BTreeMap;

use super::{koszul, Operad, OperadModel};
use crate::error::{Error, Result};
use crate::linalg::{Accumulator, SparseVec};
use crate::perm::Perm;
use crate::scalar::Scalar;

/// `(P⊗Q)(n) = P(n)⊗Q(n)`; basis `(a, b)` has index `a·dim Q(n) + b`.
#[derive(Clone)]
pub struct Tensor {
    p: Operad,
    q: Operad,
}

pub fn tensor(p: &Operad, q: &Operad) -> Result<Operad> {
    Ok(Operad::new(Tensor::new(p.clone(), q.clone())?))
}

impl Tensor {
    pub fn new(p: Operad, q: Operad) -> Result<Self> {
        if p.cap() != q.cap() {
            return Err(Error::SizeMismatch {
                left: p.cap(),
                right: q.cap(),
            });
        }
        if p.symmetric() != q.symmetric() {
            return Err(Error::Invalid("cannot tensor a Σ-operad with a non-Σ operad".into()));
        }
        Ok(Tensor { p, q })
    }

    pub fn left(&self) -> &Operad {
        &self.p
    }

    pub fn right(&self) -> &Operad {
        &self.q
    }

    pub fn split(&self, n: usize, idx: usize) -> (usize, usize) {
        let dq = self.q.dim(n);
        (idx / dq, idx % dq)
    }

    pub fn join(&self, n: usize, a: usize, b: usize) -> usize {
        a * self.q.dim(n) + b
    }

    /// Groups `x` by its left factor: `x = Σ_a e_a ⊗ x_a`.
    pub fn group_left(&self, n: usize, x: &SparseVec) -> BTreeMap<usize, SparseVec> {
        let mut groups: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (idx, c) in x.entries() {
            let (a, b) = self.split(n, *idx);
            groups.entry(a).or_default().push((b, c.clone()));
        }
        groups.into_iter().map(|(a, v)| (a, SparseVec::from_entries(v))).collect()
    }

    fn parity_split(&self, n: usize, v: &SparseVec) -> [SparseVec; 2] {
        let mut parts = [Vec::new(), Vec::new()];
        for (b, c) in v.entries() {
            parts[(self.q.degree(n, *b).rem_euclid(2)) as usize].push((*b, c.clone()));
        }
        parts.map(SparseVec::from_entries)
    }
}

impl OperadModel for Tensor {
    fn name(&self) -> String {
        format!("{}⊗{}", self.p.name(), self.q.name())
    }
    fn cap(&self) -> usize {
        self.p.cap()
    }
    fn symmetric(&self) -> bool {
        self.p.symmetric()
    }
    fn dim(&self, n: usize) -> usize {
        self.p.dim(n) * self.q.dim(n)
    }
    fn label(&self, n: usize, idx: usize) -> String {
        let (a, b) = self.split(n, idx);
        format!("{}⊗{}", self.p.label(n, a), self.q.label(n, b))
    }
    fn degree(&self, n: usize, idx: usize) -> i32 {
        let (a, b) = self.split(n, idx);
        self.p.degree(n, a) + self.q.degree(n, b)
    }
    fn unit(&self) -> SparseVec {
        let (up, uq) = (self.p.unit(), self.q.unit());
        let mut out = Vec::new();
        for (a, x) in up.entries() {
            for (b, y) in uq.entries() {
                out.push((self.join(1, *a, *b), x * y));
            }
        }
        SparseVec::from_entries(out)
    }
    fn compose(&self, m: usize, a: usize, i: usize, n: usize, b: usize) -> SparseVec {
        self.compose_vec(m, &SparseVec::unit(a), i, n, &SparseVec::unit(b))
    }
    fn act(&self, n: usize, b: usize, sigma: &Perm) -> SparseVec {
        self.act_vec(n, &SparseVec::unit(b), sigma)
    }
    fn monomial(&self) -> bool {
        self.p.monomial() && self.q.monomial()
    }
    fn compose_vec(&self, m: usize, x: &SparseVec, i: usize, n: usize, y: &SparseVec) -> SparseVec {
        let k = m + n - 1;
        let gx = self.group_left(m, x);
        let gy = self.group_left(n, y);
        let mut acc = Accumulator::new();
        for (a, xa) in &gx {
            let [even, odd] = self.parity_split(m, xa);
            for (c, yc) in &gy {
                let pc = self.p.compose(m, *a, i, n, *c);
                if pc.is_zero() {
                    continue;
                }
                let mut qpart = if even.is_zero() {
                    SparseVec::new()
                } else {
                    self.q.compose_vec(m, &even, i, n, yc)
                };
                if !odd.is_zero() {
                    let s = koszul(1, self.p.degree(n, *c));
                    qpart = qpart.add_scaled(&self.q.compose_vec(m, &odd, i, n, yc), &s);
                }
                for (u, cu) in pc.entries() {
                    for (v, cv) in qpart.entries() {
                        acc.add(self.join(k, *u, *v), &(cu * cv));
                    }
                }
            }
        }
        acc.finish()
    }
    fn act_vec(&self, n: usize, x: &SparseVec, sigma: &Perm) -> SparseVec {
        if sigma.is_identity() {
            return x.clone();
        }
        let mut acc = Accumulator::new();
        for (a, xa) in self.group_left(n, x) {
            let pa = self.p.act(n, a, sigma);
            let qa = self.q.act_vec(n, &xa, sigma);
            for (u, cu) in pa.entries() {
                for (v, cv) in qa.entries() {
                    acc.add(self.join(n, *u, *v), &(cu * cv));
                }
            }
        }
        acc.finish()
    }
}

/// `↑P(n) = ↑^{n−1}P(n) ⊗ sgn_n`, with
/// `↑p ∘_i ↑q = (−1)^{(n−1)(i−1) + (n−1)|p|} ↑(p ∘_i q)` for `q` of arity `n`.
/// For `P = End_V` this reproduces `End_{↓V}`.
#[derive(Clone)]
pub struct Suspension {
    p: Operad,
}

pub fn suspension(p: &Operad) -> Operad {
    Operad::new(Suspension { p: p.clone() })
}

impl OperadModel for Suspension {
    fn name(&self) -> String {
        format!("↑{}", self.p.name())
    }
    fn cap(&self) -> usize {
        self.p.cap()
    }
    fn symmetric(&self) -> bool {
        self.p.symmetric()
    }
    fn dim(&self, n: usize) -> usize {
        self.p.dim(n)
    }
    fn label(&self, n: usize, b: usize) -> String {
        format!("↑{}", self.p.label(n, b))
    }
    fn degree(&self, n: usize, b: usize) -> i32 {
        self.p.degree(n, b) + n as i32 - 1
    }
    fn unit(&self) -> SparseVec {
        self.p.unit()
    }
    fn compose(&self, m: usize, a: usize, i: usize, n: usize, b: usize) -> SparseVec {
        let e = (n as i64 - 1) * (i as i64 - 1) + (n as i64 - 1) * self.p.degree(m, a) as i64;
        let s = koszul(1, (e.rem_euclid(2)) as i32);
        self.p.compose(m, a, i, n, b).scale(&s)
    }
    fn act(&self, n: usize, b: usize, sigma: &Perm) -> SparseVec {
        self.p.act(n, b, sigma).scale(&Scalar::sign(sigma.sign()))
    }
    fn monomial(&self) -> bool {
        self.p.monomial()
    }
    fn compose_vec(&self, m: usize, x: &SparseVec, i: usize, n: usize, y: &SparseVec) -> SparseVec {
        // Split by the parity of the internal degree of the outer factor.
        let mut parts = [Vec::new(), Vec::new()];
        for (a, c) in x.entries() {
            parts[(self.p.degree(m, *a).rem_euclid(2)) as usize].push((*a, c.clone()));
        }
        let base = koszul(1, ((n as i64 - 1) * (i as i64 - 1)).rem_euclid(2) as i32);
        let odd_extra = koszul(1, ((n as i64 - 1).rem_euclid(2)) as i32);
        let mut out = SparseVec::new();
        for (parity, entries) in parts.into_iter().enumerate() {
            if entries.is_empty() {
                continue;
            }
            let v = self.p.compose_vec(m, &SparseVec::from_entries(entries), i, n, y);
            let s = if parity == 1 { &base * &odd_extra } else { base.clone() };
            out = out.add_scaled(&v, &s);
        }
        out
    }
    fn act_vec(&self, n: usize, x: &SparseVec, sigma: &Perm) -> SparseVec {
        self.p.act_vec(n, x, sigma).scale(&Scalar::sign(sigma.sign()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operads::{check_axioms, symmetrization, Com, EndOperad, Lie, PlanarAss};

    #[test]
    fn tensor_dims() {
        let ass = symmetrization(Operad::new(PlanarAss::new(3)), "Ass");
        let t = tensor(&ass, &ass).unwrap();
        assert_eq!(t.dim(3), 36);
        check_axioms(&t, 3, Some((5, 3))).unwrap();
    }

    #[test]
    fn suspension_of_com_is_sign() {
        let s = suspension(&Operad::new(Com::new(4)));
        assert_eq!(s.dims(), vec![1, 1, 1, 1]);
        let t = Perm::from_one_line(&[2, 1, 3]).unwrap();
        assert_eq!(s.act(3, 0, &t), SparseVec::single(0, Scalar::from_int(-1)));
        check_axioms(&s, 4, None).unwrap();
        let ss = suspension(&s);
        check_axioms(&ss, 4, None).unwrap();
        assert_eq!(ss.character(3), Operad::new(Com::new(4)).character(3));
    }

    #[test]
    fn suspended_end_matches_end_of_desuspension() {
        let up = suspension(&Operad::new(EndOperad::ungraded(1, 3).unwrap()));
        let down = Operad::new(EndOperad::new(vec![-1], 3).unwrap());
        for m in 1..=3 {
            for n in 1..=(4 - m) {
                for i in 1..=m {
                    let (x, y) = (SparseVec::unit(0), SparseVec::unit(0));
                    assert_eq!(up.compose_vec(m, &x, i, n, &y), down.compose_vec(m, &x, i, n, &y));
                }
            }
            for g in Perm::all(m) {
                assert_eq!(up.act(m, 0, &g), down.act(m, 0, &g));
            }
        }
    }

    #[test]
    fn tensor_and_suspension_commute_on_characters() {
        let com = Operad::new(Com::new(4));
        let lie = Operad::new(Lie::new(4));
        let a = suspension(&tensor(&com, &lie).unwrap());
        let b = tensor(&suspension(&com), &lie).unwrap();
        let c = tensor(&com, &suspension(&lie)).unwrap();
        for n in 1..=4 {
            assert_eq!(a.character(n), b.character(n));
            assert_eq!(a.character(n), c.character(n));
        }
        assert_eq!(tensor(&com, &lie).unwrap().character(4), lie.character(4));
    }
}
