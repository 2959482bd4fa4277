//! Permutations of `{1..n}` in one-line notation.
//!
//! Composition follows `(a * b)(i) = a(b(i))`. Operads in this crate carry the
//! right action `(f·σ)(v_1,…,v_n) = f(v_{σ⁻¹(1)},…,v_{σ⁻¹(n)})`, so that
//! `(f·σ)·τ = f·(σ*τ)`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u8).collect())
    }

    /// Builds a permutation from 1-based one-line notation.
    pub fn from_one_line(values: &[usize]) -> Result<Perm> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in values {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(values.to_vec()));
            }
            seen[v - 1] = true;
        }
        Ok(Perm(values.iter().map(|&v| (v - 1) as u8).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Image of `i` (1-based).
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1] as usize + 1
    }

    /// Zero-based image of a zero-based point.
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|&v| v as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(self.mul(other))
    }

    pub(crate) fn mul(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&j| self.0[j as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Perm(inv)
    }

    /// +1 or −1.
    pub fn sign(&self) -> i32 {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut parity = 0usize;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.0[j] as usize;
                len += 1;
            }
            parity += len - 1;
        }
        if parity % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `a × b`: `a` on the first block, `b` shifted onto the second.
    pub fn block_sum(&self, other: &Perm) -> Perm {
        let k = self.len() as u8;
        let mut v = self.0.clone();
        v.extend(other.0.iter().map(|&x| x + k));
        Perm(v)
    }

    /// Replaces input `i` (1-based) by `k ≥ 1` adjacent inputs that travel
    /// together to adjacent outputs starting at `σ(i)`; other values are
    /// renumbered order-preservingly. This is the permutation that appears in
    /// the equivariance law `(p·σ) ∘_i q = (p ∘_{σ(i)} q)·σ'`.
    pub fn expand_block(&self, i: usize, k: usize) -> Perm {
        debug_assert!(k >= 1 && (1..=self.len()).contains(&i));
        let m = self.len();
        let target = self.0[i - 1] as usize;
        let shift = |v: usize| if v > target { v + k - 1 } else { v };
        let mut out = Vec::with_capacity(m + k - 1);
        for x in 0..i - 1 {
            out.push(shift(self.0[x] as usize) as u8);
        }
        for r in 0..k {
            out.push((target + r) as u8);
        }
        for x in i..m {
            out.push(shift(self.0[x] as usize) as u8);
        }
        Perm(out)
    }

    /// The cosimplicial coface `d_i` on `Σ_m`, `0 ≤ i ≤ m+1`: `d_0 = id_1 × σ`,
    /// `d_{m+1} = σ × id_1`, otherwise the `i`-th input strand is doubled.
    pub fn doubling(&self, i: usize) -> Result<Perm> {
        let m = self.len();
        if i > m + 1 {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: m + 1,
            });
        }
        Ok(if i == 0 {
            Perm::identity(1).block_sum(self)
        } else if i == m + 1 {
            self.block_sum(&Perm::identity(1))
        } else {
            self.expand_block(i, 2)
        })
    }

    /// The cycle `(12…k) ∈ Σ_{n+1}` with one-line notation `(2,3,…,k,1,k+1,…,n+1)`.
    pub fn cycle(k: usize, n: usize) -> Result<Perm> {
        if k == 0 || k > n + 1 {
            return Err(Error::IndexOutOfRange {
                index: k,
                bound: n + 1,
            });
        }
        let mut v: Vec<u8> = (0..=n as u8).collect();
        for j in 0..k {
            v[j] = ((j + 1) % k) as u8;
        }
        Ok(Perm(v))
    }

    /// The adjacent transposition `(j j+1)` in `Σ_n`, `1 ≤ j < n`.
    pub fn transposition(n: usize, j: usize) -> Perm {
        let mut v: Vec<u8> = (0..n as u8).collect();
        v.swap(j - 1, j);
        Perm(v)
    }

    /// Lexicographic rank in `Σ_n` (Lehmer code).
    pub fn index(&self) -> usize {
        let n = self.len();
        let mut idx = 0usize;
        for i in 0..n {
            let smaller = self.0[i + 1..].iter().filter(|&&v| v < self.0[i]).count();
            idx = idx * (n - i) + smaller;
        }
        idx
    }

    /// Inverse of [`Perm::index`].
    pub fn from_index(n: usize, mut idx: usize) -> Perm {
        let mut digits = vec![0usize; n];
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = idx % base;
            idx /= base;
        }
        let mut avail: Vec<u8> = (0..n as u8).collect();
        Perm(digits.into_iter().map(|d| avail.remove(d)).collect())
    }

    /// All of `Σ_n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Perm> {
        let count = factorial_usize(n);
        (0..count).map(move |i| Perm::from_index(n, i))
    }

    /// Generators `(12)` and `(12…n)` of `Σ_n` (empty for `n < 2`).
    pub fn generators(n: usize) -> Vec<Perm> {
        match n {
            0 | 1 => vec![],
            2 => vec![Perm::transposition(2, 1)],
            _ => vec![Perm::transposition(n, 1), Perm::cycle(n, n - 1).unwrap()],
        }
    }
}

pub fn factorial_usize(n: usize) -> usize {
    (1..=n).product()
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, ")")
    }
}

/// Serialized as 1-based one-line notation.
impl serde::Serialize for Perm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.one_line())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[usize]) -> Perm {
        Perm::from_one_line(v).unwrap()
    }

    #[test]
    fn signs() {
        assert_eq!(Perm::identity(5).sign(), 1);
        assert_eq!(p(&[2, 1]).sign(), -1);
        assert_eq!(p(&[2, 3, 1]).sign(), 1);
    }

    #[test]
    fn block_sum_example() {
        assert_eq!(Perm::identity(1).block_sum(&p(&[2, 1])), p(&[1, 3, 2]));
    }

    #[test]
    fn doubling_examples() {
        assert_eq!(Perm::identity(1).doubling(0).unwrap(), Perm::identity(2));
        assert_eq!(p(&[2, 1]).doubling(1).unwrap(), p(&[2, 3, 1]));
        assert_eq!(p(&[2, 1]).doubling(2).unwrap(), p(&[3, 1, 2]));
        assert_eq!(p(&[2, 1]).doubling(0).unwrap(), p(&[1, 3, 2]));
        assert_eq!(p(&[2, 1]).doubling(3).unwrap(), p(&[2, 1, 3]));
        assert!(p(&[2, 1]).doubling(4).is_err());
    }

    #[test]
    fn cycles() {
        assert_eq!(Perm::cycle(1, 3).unwrap(), Perm::identity(4));
        assert_eq!(Perm::cycle(2, 2).unwrap(), p(&[2, 1, 3]));
        assert_eq!(Perm::cycle(3, 2).unwrap(), p(&[2, 3, 1]));
        assert!(Perm::cycle(4, 2).is_err());
        assert!(Perm::cycle(0, 2).is_err());
    }

    #[test]
    fn bad_input() {
        assert!(Perm::from_one_line(&[1, 1]).is_err());
        assert!(Perm::from_one_line(&[0, 1]).is_err());
        assert!(p(&[1, 2]).compose(&p(&[1, 2, 3])).is_err());
    }

    #[test]
    fn index_roundtrip_small() {
        for n in 0..6 {
            for (i, q) in Perm::all(n).enumerate() {
                assert_eq!(q.index(), i);
            }
        }
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Perm> {
        (0..factorial_usize(n)).prop_map(move |i| Perm::from_index(n, i))
    }

    proptest! {
        #[test]
        fn sign_is_multiplicative((a, b) in (1usize..=7).prop_flat_map(|n| (perm_strategy(n), perm_strategy(n)))) {
            let ab = a.compose(&b).unwrap();
            prop_assert_eq!(ab.sign(), a.sign() * b.sign());
            prop_assert!(a.mul(&a.inverse()).is_identity());
        }

        #[test]
        fn doubling_matches_block_expansion(a in (1usize..=6).prop_flat_map(perm_strategy)) {
            for i in 1..=a.len() {
                prop_assert_eq!(a.doubling(i).unwrap(), a.expand_block(i, 2));
            }
        }
    }
}
