//! Non-Σ models: associative, magmatic, the free product of two associative
//! operads, its dual (the coproduct) and the truncated magmatic dual.

use std::collections::HashMap;

use super::OperadModel;
use crate::linalg::SparseVec;
use crate::perm::Perm;

fn planar_act(name: &str, b: usize, sigma: &Perm) -> SparseVec {
    assert!(sigma.is_identity(), "{name} is non-Σ: no action by {sigma}");
    SparseVec::unit(b)
}

/// `uAss`: one operation in each arity.
#[derive(Clone, Debug)]
pub struct PlanarAss {
    cap: usize,
}

impl PlanarAss {
    pub fn new(cap: usize) -> Self {
        PlanarAss { cap }
    }
}

impl OperadModel for PlanarAss {
    fn name(&self) -> String {
        "uAss".into()
    }
    fn cap(&self) -> usize {
        self.cap
    }
    fn symmetric(&self) -> bool {
        false
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
    fn act(&self, _n: usize, b: usize, sigma: &Perm) -> SparseVec {
        planar_act("uAss", b, sigma)
    }
    fn monomial(&self) -> bool {
        true
    }
}

/// Planar trees in preorder: `0` a leaf, `1` a binary vertex.
fn planar_binary_trees(n: usize) -> Vec<Vec<u8>> {
    if n == 1 {
        return vec![vec![0]];
    }
    let mut out = Vec::new();
    for k in 1..n {
        for l in planar_binary_trees(k) {
            for r in planar_binary_trees(n - k) {
                let mut code = vec![1];
                code.extend(&l);
                code.extend(&r);
                out.push(code);
            }
        }
    }
    out
}

fn binary_code_label(code: &[u8]) -> String {
    fn go(code: &[u8], pos: &mut usize, leaf: &mut usize, out: &mut String) {
        let c = code[*pos];
        *pos += 1;
        if c == 0 {
            *leaf += 1;
            out.push_str(&leaf.to_string());
        } else {
            out.push('(');
            go(code, pos, leaf, out);
            out.push(',');
            go(code, pos, leaf, out);
            out.push(')');
        }
    }
    let mut s = String::new();
    go(code, &mut 0, &mut 0, &mut s);
    s
}

/// Splices `inner` in place of the `i`-th leaf (1-based) of a preorder code
/// where leaves are the bytes equal to `leaf`.
fn splice(outer: &[u8], i: usize, inner: &[u8], is_leaf: impl Fn(u8) -> bool) -> Vec<u8> {
    let mut seen = 0;
    let mut out = Vec::with_capacity(outer.len() + inner.len());
    for &c in outer {
        if is_leaf(c) {
            seen += 1;
            if seen == i {
                out.extend_from_slice(inner);
                continue;
            }
        }
        out.push(c);
    }
    out
}

/// `uMag`: planar binary trees.
#[derive(Clone, Debug)]
pub struct PlanarMag {
    cap: usize,
    trees: Vec<Vec<Vec<u8>>>,
    index: Vec<HashMap<Vec<u8>, usize>>,
}

impl PlanarMag {
    pub fn new(cap: usize) -> Self {
        let mut trees = vec![Vec::new()];
        let mut index = vec![HashMap::new()];
        for n in 1..=cap {
            let t = planar_binary_trees(n);
            index.push(t.iter().enumerate().map(|(k, c)| (c.clone(), k)).collect());
            trees.push(t);
        }
        PlanarMag { cap, trees, index }
    }
}

impl OperadModel for PlanarMag {
    fn name(&self) -> String {
        "uMag".into()
    }
    fn cap(&self) -> usize {
        self.cap
    }
    fn symmetric(&self) -> bool {
        false
    }
    fn dim(&self, n: usize) -> usize {
        self.trees.get(n).map_or(0, |t| t.len())
    }
    fn label(&self, n: usize, b: usize) -> String {
        binary_code_label(&self.trees[n][b])
    }
    fn compose(&self, m: usize, a: usize, i: usize, n: usize, b: usize) -> SparseVec {
        let code = splice(&self.trees[m][a], i, &self.trees[n][b], |c| c == 0);
        SparseVec::unit(self.index[m + n - 1][&code])
    }
    fn act(&self, _n: usize, b: usize, sigma: &Perm) -> SparseVec {
        planar_act("uMag", b, sigma)
    }
    fn monomial(&self) -> bool {
        true
    }
}

/// Planar tree with coloured vertices of arity at least two.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Coloured {
    Leaf,
    Vertex(u8, Vec<Coloured>),
}

impl Coloured {
    fn encode(&self, out: &mut Vec<u8>) {
        match self {
            Coloured::Leaf => out.push(0),
            Coloured::Vertex(c, ch) => {
                out.push(c * 16 + ch.len() as u8);
                for x in ch {
                    x.encode(out);
                }
            }
        }
    }

    fn decode(code: &[u8], pos: &mut usize) -> Coloured {
        let c = code[*pos];
        *pos += 1;
        if c == 0 {
            return Coloured::Leaf;
        }
        let ch = (0..c % 16).map(|_| Coloured::decode(code, pos)).collect();
        Coloured::Vertex(c / 16, ch)
    }

    fn label(&self, leaf: &mut usize, out: &mut String) {
        match self {
            Coloured::Leaf => {
                *leaf += 1;
                out.push_str(&leaf.to_string());
            }
            Coloured::Vertex(c, ch) => {
                out.push_str(if *c == 1 { "mu(" } else { "nu(" });
                for (k, x) in ch.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    x.label(leaf, out);
                }
                out.push(')');
            }
        }
    }

    /// Grafts `t` at the `i`-th leaf (counter runs from 1), merging with the
    /// parent when the colours agree.
    fn graft(&mut self, i: usize, t: &Coloured, seen: &mut usize) -> bool {
        let Coloured::Vertex(colour, children) = self else {
            unreachable!()
        };
        let colour = *colour;
        for k in 0..children.len() {
            if matches!(children[k], Coloured::Leaf) {
                *seen += 1;
                if *seen == i {
                    match t {
                        Coloured::Vertex(c2, ch2) if *c2 == colour => {
                            children.splice(k..k + 1, ch2.iter().cloned());
                        }
                        _ => children[k] = t.clone(),
                    }
                    return true;
                }
            } else if children[k].graft(i, t, seen) {
                return true;
            }
        }
        false
    }
}

fn coloured_trees(n: usize, parent: Option<u8>) -> Vec<Coloured> {
    if n == 1 {
        return vec![Coloured::Leaf];
    }
    let mut out = Vec::new();
    for colour in [1u8, 2] {
        if parent == Some(colour) {
            continue;
        }
        for parts in compositions(n) {
            if parts.len() < 2 {
                continue;
            }
            let mut partial: Vec<Vec<Coloured>> = vec![Vec::new()];
            for &p in &parts {
                let subs = coloured_trees(p, Some(colour));
                partial = partial
                    .into_iter()
                    .flat_map(|pre| {
                        subs.iter().map(move |s| {
                            let mut v = pre.clone();
                            v.push(s.clone());
                            v
                        })
                    })
                    .collect();
            }
            out.extend(partial.into_iter().map(|ch| Coloured::Vertex(colour, ch)));
        }
    }
    out
}

/// Ordered compositions of `n` into positive parts.
fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `uAss ∗ uAss`: planar trees whose vertices carry one of two colours,
/// adjacent vertices coloured differently.
#[derive(Clone, Debug)]
pub struct PlanarFreeProduct {
    cap: usize,
    codes: Vec<Vec<Vec<u8>>>,
    index: Vec<HashMap<Vec<u8>, usize>>,
}

impl PlanarFreeProduct {
    pub fn new(cap: usize) -> Self {
        let mut codes = vec![Vec::new()];
        let mut index = vec![HashMap::new()];
        for n in 1..=cap {
            let c: Vec<Vec<u8>> = coloured_trees(n, None)
                .iter()
                .map(|t| {
                    let mut v = Vec::new();
                    t.encode(&mut v);
                    v
                })
                .collect();
            index.push(c.iter().enumerate().map(|(k, x)| (x.clone(), k)).collect());
            codes.push(c);
        }
        PlanarFreeProduct { cap, codes, index }
    }

    fn tree(&self, n: usize, b: usize) -> Coloured {
        Coloured::decode(&self.codes[n][b], &mut 0)
    }
}

impl OperadModel for PlanarFreeProduct {
    fn name(&self) -> String {
        "uD".into()
    }
    fn cap(&self) -> usize {
        self.cap
    }
    fn symmetric(&self) -> bool {
        false
    }
    fn dim(&self, n: usize) -> usize {
        self.codes.get(n).map_or(0, |c| c.len())
    }
    fn label(&self, n: usize, b: usize) -> String {
        let mut s = String::new();
        self.tree(n, b).label(&mut 0, &mut s);
        s
    }
    fn compose(&self, m: usize, a: usize, i: usize, n: usize, b: usize) -> SparseVec {
        if m == 1 {
            return SparseVec::unit(b);
        }
        let mut outer = self.tree(m, a);
        outer.graft(i, &self.tree(n, b), &mut 0);
        let mut code = Vec::new();
        outer.encode(&mut code);
        SparseVec::unit(self.index[m + n - 1][&code])
    }
    fn act(&self, _n: usize, b: usize, sigma: &Perm) -> SparseVec {
        planar_act("uD", b, sigma)
    }
    fn monomial(&self) -> bool {
        true
    }
}

/// `uAss ∨ uAss`: arity 1 is the unit, arity `m ≥ 2` has one operation of
/// each colour; compositions of different colours vanish.
#[derive(Clone, Debug)]
pub struct PlanarCoproduct {
    cap: usize,
}

impl PlanarCoproduct {
    pub fn new(cap: usize) -> Self {
        PlanarCoproduct { cap }
    }
}

impl OperadModel for PlanarCoproduct {
    fn name(&self) -> String {
        "uD!".into()
    }
    fn cap(&self) -> usize {
        self.cap
    }
    fn symmetric(&self) -> bool {
        false
    }
    fn dim(&self, n: usize) -> usize {
        match n {
            1 if self.cap >= 1 => 1,
            n if (2..=self.cap).contains(&n) => 2,
            _ => 0,
        }
    }
    fn label(&self, n: usize, b: usize) -> String {
        if n == 1 {
            "1".into()
        } else {
            format!("{}{n}", if b == 0 { "mu" } else { "nu" })
        }
    }
    fn compose(&self, m: usize, a: usize, _i: usize, n: usize, b: usize) -> SparseVec {
        if m == 1 {
            SparseVec::unit(b)
        } else if n == 1 || a == b {
            SparseVec::unit(a)
        } else {
            SparseVec::new()
        }
    }
    fn act(&self, _n: usize, b: usize, sigma: &Perm) -> SparseVec {
        planar_act("uD!", b, sigma)
    }
    fn monomial(&self) -> bool {
        true
    }
}

/// Arity 1 and 2 are one-dimensional, everything above vanishes; the dual
/// of `uMag`.
#[derive(Clone, Debug)]
pub struct PlanarTruncated {
    cap: usize,
}

impl PlanarTruncated {
    pub fn new(cap: usize) -> Self {
        PlanarTruncated { cap }
    }
}

impl OperadModel for PlanarTruncated {
    fn name(&self) -> String {
        "uMag!".into()
    }
    fn cap(&self) -> usize {
        self.cap
    }
    fn symmetric(&self) -> bool {
        false
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
        planar_act("uMag!", b, sigma)
    }
    fn monomial(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operads::Operad;

    #[test]
    fn magmatic_counts_are_catalan() {
        let m = PlanarMag::new(6);
        assert_eq!((1..=6).map(|n| m.dim(n)).collect::<Vec<_>>(), vec![1, 1, 2, 5, 14, 42]);
        assert_eq!(m.label(3, 0), "(1,(2,3))");
    }

    #[test]
    fn free_product_small_dims() {
        let d = PlanarFreeProduct::new(4);
        assert_eq!(d.dim(2), 2);
        assert_eq!(d.dim(3), 6);
    }

    #[test]
    fn free_product_merges_equal_colours() {
        let d = PlanarFreeProduct::new(3);
        let mu = (0..2).find(|&b| d.label(2, b) == "mu(1,2)").unwrap();
        let nu = 1 - mu;
        let v = d.compose(2, mu, 1, 2, mu);
        assert_eq!(d.label(3, v.entries()[0].0), "mu(1,2,3)");
        let w = d.compose(2, mu, 2, 2, nu);
        assert_eq!(d.label(3, w.entries()[0].0), "mu(1,nu(2,3))");
    }

    #[test]
    fn planar_models_satisfy_axioms() {
        for p in [
            Operad::new(PlanarAss::new(5)),
            Operad::new(PlanarMag::new(5)),
            Operad::new(PlanarFreeProduct::new(5)),
            Operad::new(PlanarCoproduct::new(5)),
            Operad::new(PlanarTruncated::new(5)),
        ] {
            p.check_axioms(5, None).unwrap();
        }
    }
}
