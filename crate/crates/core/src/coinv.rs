//! Twisted coinvariants of `X(m) ⊗ Y(m)` under the diagonal `Σ_m` action.
//!
//! `X` must act monomially. Its basis splits into orbits; the orbit of `x_0`
//! contributes `Y` modulo the relations `y − ε(h)·tw(h)·(y·h)` for `h` in
//! the stabilizer of `x_0`, where `x_0·h = ε(h)x_0` and `tw` is the sign
//! character when the action is twisted. Stabilizer generators come from
//! Schreier's lemma on the orbit search tree.
//!
//! Coordinates on the coinvariants double as coordinates on the invariants
//! through averaging: coordinate `k` stands for `Aver(x_0 ⊗ y_k)`.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::linalg::{Accumulator, Echelon, SparseVec};
use crate::operads::Operad;
use crate::perm::Perm;
use crate::scalar::Scalar;

/// Which factor of the tensor product carries the monomial action.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Quotient of `k^dim` by a subspace given in reduced echelon form.
#[derive(Clone, Debug, Default)]
pub struct Quotient {
    rows: HashMap<usize, SparseVec>,
    basis: Vec<usize>,
    position: HashMap<usize, usize>,
}

impl Quotient {
    pub fn new(rref_rows: Vec<SparseVec>, dim: usize) -> Self {
        let rows: HashMap<usize, SparseVec> = rref_rows.into_iter().map(|r| (r.entries()[0].0, r)).collect();
        let basis: Vec<usize> = (0..dim).filter(|c| !rows.contains_key(c)).collect();
        let position = basis.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        Quotient { rows, basis, position }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Original coordinates of the quotient basis.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (c, x) in v.entries() {
            match self.rows.get(c) {
                Some(row) => {
                    for (d, y) in &row.entries()[1..] {
                        acc.add(*d, &-(x * y));
                    }
                }
                None => acc.add(*c, x),
            }
        }
        acc.finish().map_indices(|c| self.position[&c])
    }
}

struct Block {
    rep: usize,
    offset: usize,
    quotient: Quotient,
}

enum Kind {
    /// Non-Σ: nothing to divide by.
    Plain,
    Orbits {
        orbit_of: Vec<u32>,
        sign_of: Vec<Scalar>,
        /// `g_x^{-1}` where `x_0·g_x = ±x`.
        back: Vec<Perm>,
        blocks: Vec<Block>,
    },
    /// Neither factor is monomial: the quotient of the whole tensor space.
    Dense(Quotient),
}

pub struct Coinvariants {
    m: usize,
    left: Operad,
    right: Operad,
    side: Side,
    twisted: bool,
    dim: usize,
    kind: Kind,
}

/// Upper bound on `dim X(m)` for the orbit search.
pub const ORBIT_LIMIT: usize = 2_000_000;

/// Upper bound on `dim X(m)·dim Y(m)` when neither factor is monomial.
pub const DENSE_LIMIT: usize = 40_000;

impl Coinvariants {
    /// Coinvariants of `left(m) ⊗ right(m)`, with tensor index `a·dim right + b`.
    pub fn new(left: &Operad, right: &Operad, m: usize, twisted: bool) -> Result<Self> {
        let (dl, dr) = (left.dim(m), right.dim(m));
        if !left.symmetric() || m <= 1 || dl * dr == 0 {
            return Ok(Coinvariants {
                m,
                left: left.clone(),
                right: right.clone(),
                side: Side::Left,
                twisted,
                dim: dl * dr,
                kind: Kind::Plain,
            });
        }
        let side = if left.monomial() {
            Side::Left
        } else if right.monomial() {
            Side::Right
        } else {
            if dl * dr > DENSE_LIMIT {
                return Err(Error::ResourceBound(format!(
                    "coinvariants of {}⊗{} in arity {m} without a monomial factor",
                    left.name(),
                    right.name()
                )));
            }
            let mut c = Coinvariants {
                m,
                left: left.clone(),
                right: right.clone(),
                side: Side::Left,
                twisted,
                dim: 0,
                kind: Kind::Plain,
            };
            let q = c.dense();
            c.dim = q.dim();
            c.kind = Kind::Dense(q);
            return Ok(c);
        };
        let (x, y) = match side {
            Side::Left => (left, right),
            Side::Right => (right, left),
        };
        if x.dim(m) > ORBIT_LIMIT {
            return Err(Error::ResourceBound(format!("{} in arity {m} is too large", x.name())));
        }
        let mut c = Coinvariants {
            m,
            left: left.clone(),
            right: right.clone(),
            side,
            twisted,
            dim: 0,
            kind: Kind::Plain,
        };
        c.kind = c.orbits(x, y)?;
        if let Kind::Orbits { blocks, .. } = &c.kind {
            c.dim = blocks.last().map_or(0, |b| b.offset + b.quotient.dim());
        }
        Ok(c)
    }

    fn twist(&self, g: &Perm) -> Scalar {
        if self.twisted {
            Scalar::sign(g.sign())
        } else {
            Scalar::one()
        }
    }

    /// `k^{dl·dr}` modulo `v − tw(g)·v·g` for the Coxeter generators `g`.
    fn dense(&self) -> Quotient {
        let m = self.m;
        let (dl, dr) = (self.left.dim(m), self.right.dim(m));
        let mut e = Echelon::new();
        for g in Perm::generators(m) {
            let t = self.twist(&g);
            let rows: Vec<SparseVec> = (0..dr).map(|b| self.right.act(m, b, &g)).collect();
            for a in 0..dl {
                let la = self.left.act(m, a, &g);
                for (b, rb) in rows.iter().enumerate() {
                    let mut acc = Accumulator::new();
                    acc.add(self.join(a, b), &Scalar::one());
                    for (a2, x) in la.entries() {
                        for (b2, y) in rb.entries() {
                            acc.add(self.join(*a2, *b2), &-&(&(x * y) * &t));
                        }
                    }
                    let row = acc.finish();
                    if !row.is_zero() {
                        e.insert(&row);
                    }
                }
            }
        }
        Quotient::new(e.into_rref(), dl * dr)
    }

    fn orbits(&self, x: &Operad, y: &Operad) -> Result<Kind> {
        let m = self.m;
        let dx = x.dim(m);
        let dy = y.dim(m);
        let gens = Perm::generators(m);
        let unvisited = u32::MAX;
        let mut orbit_of = vec![unvisited; dx];
        let mut sign_of = vec![Scalar::zero(); dx];
        let mut fwd: Vec<Option<Perm>> = vec![None; dx];
        let mut blocks = Vec::new();
        let mut offset = 0;
        for start in 0..dx {
            if orbit_of[start] != unvisited {
                continue;
            }
            let o = blocks.len() as u32;
            orbit_of[start] = o;
            sign_of[start] = Scalar::one();
            fwd[start] = Some(Perm::identity(m));
            let mut queue = vec![start];
            let mut schreier: HashSet<(Perm, bool)> = HashSet::new();
            let mut head = 0;
            while head < queue.len() {
                let cur = queue[head];
                head += 1;
                let gc = fwd[cur].clone().unwrap();
                for g in &gens {
                    let (nx, s) = x.act_mono(m, cur, g);
                    let step = gc.mul(g);
                    let sign = &sign_of[cur] * &s;
                    if orbit_of[nx] == unvisited {
                        orbit_of[nx] = o;
                        sign_of[nx] = sign;
                        fwd[nx] = Some(step);
                        queue.push(nx);
                    } else {
                        let h = step.mul(&fwd[nx].as_ref().unwrap().inverse());
                        let eps = &sign * &sign_of[nx];
                        if !h.is_identity() {
                            schreier.insert((h, eps.is_negative()));
                        } else if eps.is_negative() {
                            // x_0 = −x_0: the whole orbit dies.
                            schreier.insert((h, true));
                        }
                    }
                }
            }
            let mut hs: Vec<(Perm, bool)> = schreier.into_iter().collect();
            hs.sort_by(|a, b| a.0.one_line().cmp(&b.0.one_line()).then(a.1.cmp(&b.1)));
            let mut e = Echelon::new();
            'outer: for (h, neg) in &hs {
                let c = if *neg { -self.twist(h) } else { self.twist(h) };
                for b in 0..dy {
                    if e.rank() == dy {
                        break 'outer;
                    }
                    let row = SparseVec::unit(b).add_scaled(&y.act(m, b, h), &-&c);
                    e.insert(&row);
                }
            }
            let quotient = Quotient::new(e.into_rref(), dy);
            let qd = quotient.dim();
            blocks.push(Block {
                rep: start,
                offset,
                quotient,
            });
            offset += qd;
        }
        let back = fwd.into_iter().map(|g| g.unwrap().inverse()).collect();
        Ok(Kind::Orbits {
            orbit_of,
            sign_of,
            back,
            blocks,
        })
    }

    pub fn arity(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn split(&self, idx: usize) -> (usize, usize) {
        let dr = self.right.dim(self.m);
        (idx / dr, idx % dr)
    }

    fn join(&self, a: usize, b: usize) -> usize {
        a * self.right.dim(self.m) + b
    }

    /// Coordinates of the class of a tensor vector.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        if let Kind::Dense(q) = &self.kind {
            return q.reduce(v);
        }
        let Kind::Orbits {
            orbit_of,
            sign_of,
            back,
            blocks,
        } = &self.kind
        else {
            return v.clone();
        };
        let y_op = match self.side {
            Side::Left => &self.right,
            Side::Right => &self.left,
        };
        let mut per_orbit: HashMap<u32, Accumulator> = HashMap::new();
        for (idx, c) in v.entries() {
            let (a, b) = self.split(*idx);
            let (xi, yi) = match self.side {
                Side::Left => (a, b),
                Side::Right => (b, a),
            };
            let o = orbit_of[xi];
            let ginv = &back[xi];
            let coeff = &(c * &sign_of[xi]) * &self.twist(ginv);
            per_orbit
                .entry(o)
                .or_default()
                .add_vec(&y_op.act(self.m, yi, ginv), &coeff);
        }
        let mut out = Vec::new();
        let mut keys: Vec<u32> = per_orbit.keys().copied().collect();
        keys.sort_unstable();
        for o in keys {
            let acc = per_orbit.remove(&o).unwrap().finish();
            let block = &blocks[o as usize];
            for (k, x) in block.quotient.reduce(&acc).into_entries() {
                out.push((block.offset + k, x));
            }
        }
        SparseVec::from_entries(out)
    }

    /// A tensor vector whose class is coordinate `k`.
    pub fn representative(&self, k: usize) -> SparseVec {
        match &self.kind {
            Kind::Plain => SparseVec::unit(k),
            Kind::Dense(q) => SparseVec::unit(q.basis()[k]),
            Kind::Orbits { blocks, .. } => {
                let o = blocks.partition_point(|b| b.offset <= k) - 1;
                let block = &blocks[o];
                let yi = block.quotient.basis()[k - block.offset];
                let idx = match self.side {
                    Side::Left => self.join(block.rep, yi),
                    Side::Right => self.join(yi, block.rep),
                };
                SparseVec::unit(idx)
            }
        }
    }

    /// Labels `x⊗y` of the representatives.
    pub fn label(&self, k: usize) -> String {
        let idx = self.representative(k).entries()[0].0;
        let (a, b) = self.split(idx);
        format!("{}⊗{}", self.left.label(self.m, a), self.right.label(self.m, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::average;
    use crate::operads::{catalog, suspension, tensor};

    /// Dimension of twisted invariants by brute-force averaging.
    fn invariant_dim(s: &Operad, m: usize) -> usize {
        let avg: Vec<SparseVec> = (0..s.dim(m))
            .map(|b| average(m, &SparseVec::unit(b), &|v, g| s.act_vec(m, v, g)))
            .collect();
        crate::linalg::rank_of(&avg)
    }

    #[test]
    fn dimensions_match_averaging() {
        for name in ["Ass", "Com", "Lie", "Sym", "Mag", "D", "preLie"] {
            let e = catalog(name, 4).unwrap();
            let dual = e.dual.clone().unwrap();
            let s = suspension(&tensor(&e.operad, &dual).unwrap());
            for m in 1..=4 {
                if s.dim(m) > 3000 {
                    continue;
                }
                let c = Coinvariants::new(&e.operad, &dual, m, true).unwrap();
                assert_eq!(c.dim(), invariant_dim(&s, m), "{name} arity {m}");
            }
        }
    }

    #[test]
    fn reduce_is_invariant_and_hits_representatives() {
        let e = catalog("Lie", 4).unwrap();
        let dual = e.dual.clone().unwrap();
        let s = suspension(&tensor(&e.operad, &dual).unwrap());
        let c = Coinvariants::new(&e.operad, &dual, 4, true).unwrap();
        for b in 0..s.dim(4) {
            let v = SparseVec::unit(b);
            for g in Perm::generators(4) {
                assert_eq!(c.reduce(&s.act_vec(4, &v, &g)), c.reduce(&v));
            }
        }
        for k in 0..c.dim() {
            assert_eq!(c.reduce(&c.representative(k)), SparseVec::unit(k));
        }
    }

    #[test]
    fn ass_coinvariants_have_factorial_dimension() {
        let e = catalog("Ass", 6).unwrap();
        let dual = e.dual.clone().unwrap();
        for m in 1..=6 {
            let c = Coinvariants::new(&e.operad, &dual, m, true).unwrap();
            assert_eq!(c.dim(), crate::perm::factorial_usize(m));
        }
    }
}
