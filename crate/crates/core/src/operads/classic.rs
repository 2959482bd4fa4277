//! Commutative, Lie, truncated binary and endomorphism operads.

use std::sync::OnceLock;

use super::symmetrize::Symmetrization;
use super::{koszul, Operad, OperadModel, PlanarAss};
use crate::error::{Error, Result};
use crate::linalg::{Accumulator, SparseVec};
use crate::perm::{factorial_usize, Perm};
use crate::scalar::Scalar;

/// `Com`: one operation per arity, trivial action.
#[derive(Clone, Debug)]
pub struct Com {
    cap: usize,
}

impl Com {
    pub fn new(cap: usize) -> Self {
        Com { cap }
    }
}

impl OperadModel for Com {
    fn name(&self) -> String {
        "Com".into()
    }
    fn cap(&self) -> usize {
        self.cap
    }
    fn dim(&self, n: usize) -> usize {
        usize::from((1..=self.cap).contains(&n))
    }
    fn label(&self, n: usize, _b: usize) -> String {
        if n == 1 {
            "1".into()
        } else {
            format!("mu{n}")
        }
    }
    fn compose(&self, _m: usize, _a: usize, _i: usize, _n: usize, _b: usize) -> SparseVec {
        SparseVec::unit(0)
    }
    fn act(&self, _n: usize, _b: usize, _sigma: &Perm) -> SparseVec {
        SparseVec::unit(0)
    }
    fn monomial(&self) -> bool {
        true
    }
}

/// `Lie` as the suboperad of `Ass` spanned by brackets.
///
/// The basis of `Lie(n)` is the left-normed brackets `[x_1, x_{w_2}, …, x_{w_n}]`.
/// Expanded into words, such a bracket contains exactly one word starting
/// with `x_1`, namely `x_1 x_{w_2} ⋯ x_{w_n}`, with coefficient one. So the
/// coordinates of a Lie element are read off from its words starting with
/// `x_1`. All operations expand into `Ass`, compute there and project back.
pub struct Lie {
    cap: usize,
    ass: Symmetrization,
    expansions: Vec<OnceLock<Vec<SparseVec>>>,
}

impl Lie {
    pub fn new(cap: usize) -> Self {
        Lie {
            cap,
            ass: Symmetrization::new(Operad::new(PlanarAss::new(cap)), "Ass"),
            expansions: (0..=cap).map(|_| OnceLock::new()).collect(),
        }
    }

    /// The word (1-based letters) of basis element `k` of `Lie(n)`.
    pub fn word(n: usize, k: usize) -> Vec<usize> {
        let mut w = vec![1];
        if n > 1 {
            w.extend(Perm::from_index(n - 1, k).one_line().into_iter().map(|x| x + 1));
        }
        w
    }

    /// Index in `Ass(n)` of the monomial `x_{w_1} ⋯ x_{w_n}`.
    pub fn ass_index_of_word(w: &[usize]) -> usize {
        Perm::from_one_line(w).expect("word is a permutation").inverse().index()
    }

    pub fn word_of_ass_index(n: usize, idx: usize) -> Vec<usize> {
        Perm::from_index(n, idx).inverse().one_line()
    }

    fn expand_basis(n: usize, k: usize) -> SparseVec {
        let w = Self::word(n, k);
        let mut words: Vec<(Vec<usize>, i64)> = vec![(vec![w[0]], 1)];
        for &letter in &w[1..] {
            let mut next = Vec::with_capacity(words.len() * 2);
            for (u, c) in words {
                let mut right = u.clone();
                right.push(letter);
                next.push((right, c));
                let mut left = vec![letter];
                left.extend(u);
                next.push((left, -c));
            }
            words = next;
        }
        SparseVec::from_entries(
            words
                .into_iter()
                .map(|(u, c)| (Self::ass_index_of_word(&u), Scalar::from_int(c)))
                .collect(),
        )
    }

    fn expansions(&self, n: usize) -> &[SparseVec] {
        self.expansions[n].get_or_init(|| (0..self.dim(n)).map(|k| Self::expand_basis(n, k)).collect())
    }

    /// Lie element to its expansion in `Ass(n)`.
    pub fn expand(&self, n: usize, x: &SparseVec) -> SparseVec {
        let ex = self.expansions(n);
        let mut acc = Accumulator::new();
        for (k, c) in x.entries() {
            acc.add_vec(&ex[*k], c);
        }
        acc.finish()
    }

    /// Coordinates of an `Ass(n)` vector that is known to be a Lie element.
    pub fn project(&self, n: usize, v: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for (idx, c) in v.entries() {
            let w = Self::word_of_ass_index(n, *idx);
            if w[0] == 1 {
                let rest: Vec<usize> = w[1..].iter().map(|x| x - 1).collect();
                let k = if n == 1 {
                    0
                } else {
                    Perm::from_one_line(&rest).unwrap().index()
                };
                out.push((k, c.clone()));
            }
        }
        SparseVec::from_entries(out)
    }
}

impl OperadModel for Lie {
    fn name(&self) -> String {
        "Lie".into()
    }
    fn cap(&self) -> usize {
        self.cap
    }
    fn dim(&self, n: usize) -> usize {
        if (1..=self.cap).contains(&n) {
            factorial_usize(n - 1)
        } else {
            0
        }
    }
    fn label(&self, n: usize, k: usize) -> String {
        let w = Self::word(n, k);
        if n == 1 {
            return "1".into();
        }
        let mut s = format!("[{},{}]", w[0], w[1]);
        for x in &w[2..] {
            s = format!("[{s},{x}]");
        }
        s
    }
    fn compose(&self, m: usize, a: usize, i: usize, n: usize, b: usize) -> SparseVec {
        self.compose_vec(m, &SparseVec::unit(a), i, n, &SparseVec::unit(b))
    }
    fn act(&self, n: usize, b: usize, sigma: &Perm) -> SparseVec {
        self.act_vec(n, &SparseVec::unit(b), sigma)
    }
    fn compose_vec(&self, m: usize, x: &SparseVec, i: usize, n: usize, y: &SparseVec) -> SparseVec {
        if m == 1 {
            return y.scale(&x.get(0));
        }
        if n == 1 {
            return x.scale(&y.get(0));
        }
        let v = self.ass.compose_vec(m, &self.expand(m, x), i, n, &self.expand(n, y));
        self.project(m + n - 1, &v)
    }
    fn act_vec(&self, n: usize, x: &SparseVec, sigma: &Perm) -> SparseVec {
        if sigma.is_identity() {
            return x.clone();
        }
        self.project(n, &self.ass.act_vec(n, &self.expand(n, x), sigma))
    }
}

/// Arity 1 the unit, arity 2 a line on which the transposition acts by
/// `sign`, nothing above. With `sign = −1` this is the dual of `Sym`.
#[derive(Clone, Debug)]
pub struct TruncatedBinary {
    cap: usize,
    sign: i32,
    name: String,
}

impl TruncatedBinary {
    pub fn new(cap: usize, sign: i32, name: impl Into<String>) -> Self {
        TruncatedBinary {
            cap,
            sign,
            name: name.into(),
        }
    }
}

impl OperadModel for TruncatedBinary {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn cap(&self) -> usize {
        self.cap
    }
    fn dim(&self, n: usize) -> usize {
        usize::from(n >= 1 && n <= 2 && n <= self.cap)
    }
    fn label(&self, n: usize, _b: usize) -> String {
        if n == 1 {
            "1".into()
        } else {
            "mu".into()
        }
    }
    fn compose(&self, m: usize, a: usize, _i: usize, n: usize, b: usize) -> SparseVec {
        match (m, n) {
            (1, _) => SparseVec::unit(b),
            (_, 1) => SparseVec::unit(a),
            _ => SparseVec::new(),
        }
    }
    fn act(&self, _n: usize, b: usize, sigma: &Perm) -> SparseVec {
        let s = if sigma.sign() < 0 { self.sign } else { 1 };
        SparseVec::single(b, Scalar::sign(s))
    }
    fn monomial(&self) -> bool {
        true
    }
}

/// `Perm`: arity `n` is spanned by `e_1, …, e_n`, where `e_j` singles out
/// the `j`-th input. The dual of `preLie`.
#[derive(Clone, Debug)]
pub struct PermOperad {
    cap: usize,
}

impl PermOperad {
    pub fn new(cap: usize) -> Self {
        PermOperad { cap }
    }
}

impl OperadModel for PermOperad {
    fn name(&self) -> String {
        "Perm".into()
    }
    fn cap(&self) -> usize {
        self.cap
    }
    fn dim(&self, n: usize) -> usize {
        if (1..=self.cap).contains(&n) {
            n
        } else {
            0
        }
    }
    fn label(&self, n: usize, b: usize) -> String {
        format!("e{}/{n}", b + 1)
    }
    fn compose(&self, _m: usize, a: usize, i: usize, n: usize, b: usize) -> SparseVec {
        let j = a + 1;
        let out = match j.cmp(&i) {
            std::cmp::Ordering::Less => j,
            std::cmp::Ordering::Equal => i + b,
            std::cmp::Ordering::Greater => j + n - 1,
        };
        SparseVec::unit(out - 1)
    }
    fn act(&self, _n: usize, b: usize, sigma: &Perm) -> SparseVec {
        SparseVec::unit(sigma.inverse().apply(b + 1) - 1)
    }
    fn monomial(&self) -> bool {
        true
    }
}

/// `End_V` for a graded vector space `V` with homogeneous basis.
///
/// Basis: matrix units `E_{o; a_1…a_n}` sending `e_{a_1}⊗⋯⊗e_{a_n}` to `e_o`.
/// Composition and action carry Koszul signs.
#[derive(Clone, Debug)]
pub struct EndOperad {
    cap: usize,
    degrees: Vec<i32>,
}

/// Largest arity component we are willing to enumerate.
pub const END_DIM_LIMIT: usize = 1 << 20;

impl EndOperad {
    pub fn new(degrees: Vec<i32>, cap: usize) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::Invalid("End_V needs dim V ≥ 1".into()));
        }
        let d = degrees.len();
        let mut size: usize = 1;
        for _ in 0..=cap {
            size = size.saturating_mul(d);
        }
        if size > END_DIM_LIMIT {
            return Err(Error::ResourceBound(format!(
                "End_V(cap) has dimension {d}^{} > {END_DIM_LIMIT}",
                cap + 1
            )));
        }
        Ok(EndOperad { cap, degrees })
    }

    /// Ungraded `End_V` with `dim V = d`.
    pub fn ungraded(d: usize, cap: usize) -> Result<Self> {
        Self::new(vec![0; d], cap)
    }

    pub fn space_dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn encode(&self, out: usize, inputs: &[usize]) -> usize {
        let d = self.degrees.len();
        inputs.iter().fold(out, |acc, &x| acc * d + x)
    }

    pub fn decode(&self, n: usize, mut idx: usize) -> (usize, Vec<usize>) {
        let d = self.degrees.len();
        let mut inputs = vec![0; n];
        for k in (0..n).rev() {
            inputs[k] = idx % d;
            idx /= d;
        }
        (idx, inputs)
    }

    fn koszul_perm_sign(&self, seq: &[usize], sigma: &Perm) -> Scalar {
        let mut odd = 0i64;
        for j in 0..seq.len() {
            for k in j + 1..seq.len() {
                if sigma.at(j) > sigma.at(k) {
                    odd += (self.degrees[seq[j]] * self.degrees[seq[k]]) as i64;
                }
            }
        }
        Scalar::sign(if odd % 2 == 0 { 1 } else { -1 })
    }
}

impl OperadModel for EndOperad {
    fn name(&self) -> String {
        format!("End(dim {})", self.degrees.len())
    }
    fn cap(&self) -> usize {
        self.cap
    }
    fn dim(&self, n: usize) -> usize {
        if (1..=self.cap).contains(&n) {
            self.degrees.len().pow(n as u32 + 1)
        } else {
            0
        }
    }
    fn label(&self, n: usize, b: usize) -> String {
        let (o, ins) = self.decode(n, b);
        let ins: Vec<String> = ins.iter().map(|x| x.to_string()).collect();
        format!("E[{o};{}]", ins.join(","))
    }
    fn degree(&self, n: usize, b: usize) -> i32 {
        let (o, ins) = self.decode(n, b);
        self.degrees[o] - ins.iter().map(|&x| self.degrees[x]).sum::<i32>()
    }
    fn unit(&self) -> SparseVec {
        let d = self.degrees.len();
        SparseVec::from_entries((0..d).map(|x| (x * d + x, Scalar::one())).collect())
    }
    fn compose(&self, m: usize, a: usize, i: usize, n: usize, b: usize) -> SparseVec {
        let (o, ins) = self.decode(m, a);
        let (o2, ins2) = self.decode(n, b);
        if ins[i - 1] != o2 {
            return SparseVec::new();
        }
        let g_deg = self.degree(n, b);
        let before: i32 = ins[..i - 1].iter().map(|&x| self.degrees[x]).sum();
        let mut all = ins[..i - 1].to_vec();
        all.extend(&ins2);
        all.extend(&ins[i..]);
        SparseVec::single(self.encode(o, &all), koszul(g_deg, before))
    }
    fn act(&self, n: usize, b: usize, sigma: &Perm) -> SparseVec {
        let (o, ins) = self.decode(n, b);
        let permuted: Vec<usize> = (0..n).map(|j| ins[sigma.at(j)]).collect();
        let s = self.koszul_perm_sign(&permuted, sigma);
        SparseVec::single(self.encode(o, &permuted), s)
    }
    fn monomial(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operads::check_axioms;

    #[test]
    fn lie_dims_and_axioms() {
        let l = Operad::new(Lie::new(5));
        assert_eq!(l.dims(), vec![1, 1, 2, 6, 24]);
        check_axioms(&l, 4, None).unwrap();
        check_axioms(&l, 5, Some((3, 7))).unwrap();
    }

    #[test]
    fn lie_bracket_is_antisymmetric() {
        let l = Lie::new(3);
        assert_eq!(l.act(2, 0, &Perm::transposition(2, 1)), SparseVec::single(0, Scalar::from_int(-1)));
    }

    #[test]
    fn lie_jacobi_holds() {
        // [[1,2],3] + [[2,3],1] + [[3,1],2] = 0 expanded in Ass
        let l = Lie::new(3);
        let b = SparseVec::unit(0);
        let mut total = SparseVec::new();
        for rho in [vec![1, 2, 3], vec![2, 3, 1], vec![3, 1, 2]] {
            let inv = Perm::from_one_line(&rho).unwrap().inverse();
            let x = l.compose_vec(2, &b, 1, 2, &b);
            total = total.add(&l.expand(3, &l.act_vec(3, &x, &inv)));
        }
        assert!(total.is_zero());
    }

    #[test]
    fn end_dims_and_axioms() {
        let e = Operad::new(EndOperad::ungraded(2, 3).unwrap());
        assert_eq!(e.dims(), vec![4, 8, 16]);
        check_axioms(&e, 3, None).unwrap();
        let g = Operad::new(EndOperad::new(vec![0, 1], 3).unwrap());
        check_axioms(&g, 3, None).unwrap();
        let odd = Operad::new(EndOperad::new(vec![-1], 4).unwrap());
        check_axioms(&odd, 4, None).unwrap();
    }

    #[test]
    fn end_identity_composes_to_identity() {
        let e = EndOperad::ungraded(2, 3).unwrap();
        let u = e.unit();
        assert_eq!(e.compose_vec(1, &u, 1, 1, &u), u);
    }

    #[test]
    fn end_too_large_is_a_resource_error() {
        assert!(matches!(EndOperad::ungraded(4, 12), Err(Error::ResourceBound(_))));
    }

    #[test]
    fn truncated_binary_axioms() {
        let s = Operad::new(TruncatedBinary::new(4, -1, "Sym!"));
        assert_eq!(s.dims(), vec![1, 1, 0, 0]);
        check_axioms(&s, 4, None).unwrap();
    }
}
