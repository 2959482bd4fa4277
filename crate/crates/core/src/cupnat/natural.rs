//! Natural multilinear operations on `C*_P(A;A)` given by decorated trees.
//!
//! A tree string uses `w<i>(…)` for white vertices, `b<j>(…)` for black
//! vertices and bare integers for the input legs, e.g. `b1(w1(1,2),w2(3,4))`.
//! The children of a black vertex feed its inputs in the written order; the
//! children of white vertex `i` feed the inputs listed in `orders[i−1]`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::cochain::{Cochain, CochainComplex, PAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, Accumulator, Echelon, SparseVec};
use crate::liecplx::{delta_sigma, LieElement, TAlgebra};
use crate::operads::{suspension, Operad};
use crate::perm::Perm;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Leaf(usize),
    White(usize, Vec<Node>),
    Black(usize, Vec<Node>),
}

impl Node {
    fn children(&self) -> &[Node] {
        match self {
            Node::Leaf(_) => &[],
            Node::White(_, c) | Node::Black(_, c) => c,
        }
    }

    fn leaves(&self, out: &mut Vec<usize>) {
        match self {
            Node::Leaf(l) => out.push(*l),
            _ => self.children().iter().for_each(|c| c.leaves(out)),
        }
    }

    fn min_leaf(&self) -> usize {
        let mut v = Vec::new();
        self.leaves(&mut v);
        v.into_iter().min().unwrap_or(0)
    }

    fn render(&self, out: &mut String) {
        let (tag, i, children) = match self {
            Node::Leaf(l) => {
                out.push_str(&l.to_string());
                return;
            }
            Node::White(i, c) => ('w', i, c),
            Node::Black(i, c) => ('b', i, c),
        };
        out.push(tag);
        out.push_str(&i.to_string());
        out.push('(');
        for (k, c) in children.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            c.render(out);
        }
        out.push(')');
    }

    pub fn to_string_canonical(&self) -> String {
        let mut s = String::new();
        self.render(&mut s);
        s
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {} of tree", self.pos))
    }

    fn skip(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().map_err(|_| self.err("expected a number"))
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn node(&mut self) -> Result<Node> {
        self.skip();
        let tag = *self.s.get(self.pos).ok_or_else(|| self.err("unexpected end"))?;
        if tag.is_ascii_digit() {
            return Ok(Node::Leaf(self.number()?));
        }
        if tag != b'w' && tag != b'b' {
            return Err(self.err("expected `w`, `b` or a leg label"));
        }
        self.pos += 1;
        let i = self.number()?;
        self.expect(b'(')?;
        let mut children = vec![self.node()?];
        loop {
            self.skip();
            match self.s.get(self.pos) {
                Some(b',') => {
                    self.pos += 1;
                    children.push(self.node()?);
                }
                Some(b')') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.err("expected `,` or `)`")),
            }
        }
        Ok(if tag == b'w' { Node::White(i, children) } else { Node::Black(i, children) })
    }
}

pub fn parse_op_tree(s: &str) -> Result<Node> {
    let mut p = Parser { s: s.as_bytes(), pos: 0 };
    let node = p.node()?;
    p.skip();
    if p.pos != s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(node)
}

/// The data `(T, orders, black decorations, Φ)` of a natural operation.
///
/// `black[j−1]` is a vector of `P(ar(b_j))` and `phi` is the matrix of
/// `Φ : ↑P^!(a_1) ⊗ … ⊗ ↑P^!(a_n) → ↑P^!(a)`, one row per basis vector of
/// `P^!(a)` and one column per basis tuple in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NaturalOpSpec {
    pub tree: String,
    #[serde(default)]
    pub orders: Vec<Vec<usize>>,
    #[serde(default)]
    pub black: Vec<Vec<Scalar>>,
    pub phi: Vec<Vec<Scalar>>,
    #[serde(default)]
    pub planar: bool,
}

/// Arity data read off a tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub root: Node,
    pub white: Vec<usize>,
    pub black: Vec<usize>,
    pub output: usize,
}

impl Shape {
    pub fn of(root: Node) -> Result<Shape> {
        let mut white = BTreeMap::new();
        let mut black = BTreeMap::new();
        let mut legs = Vec::new();
        fn walk(n: &Node, w: &mut BTreeMap<usize, usize>, b: &mut BTreeMap<usize, usize>, legs: &mut Vec<usize>) -> Result<()> {
            match n {
                Node::Leaf(l) => legs.push(*l),
                Node::White(i, c) | Node::Black(i, c) => {
                    let map = if matches!(n, Node::White(..)) { &mut *w } else { &mut *b };
                    if map.insert(*i, c.len()).is_some() {
                        return Err(Error::Invalid(format!("vertex index {i} used twice")));
                    }
                    for child in c {
                        walk(child, w, b, legs)?;
                    }
                }
            }
            Ok(())
        }
        walk(&root, &mut white, &mut black, &mut legs)?;
        let numbered = |m: &BTreeMap<usize, usize>, what: &str| -> Result<Vec<usize>> {
            if m.keys().copied().ne(1..=m.len()) {
                return Err(Error::Invalid(format!("{what} vertices must be numbered 1..{}", m.len())));
            }
            Ok(m.values().copied().collect())
        };
        let white = numbered(&white, "white")?;
        let black = numbered(&black, "black")?;
        if let Some(r) = black.iter().find(|r| **r < 2) {
            return Err(Error::Invalid(format!("black vertex of arity {r}; black vertices are at least binary")));
        }
        let mut sorted = legs.clone();
        sorted.sort_unstable();
        if sorted.iter().copied().ne(1..=legs.len()) {
            return Err(Error::Invalid(format!("legs must be labelled 1..{} exactly once", legs.len())));
        }
        Ok(Shape { root, white, black, output: legs.len() })
    }
}

impl NaturalOpSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    pub fn shape(&self) -> Result<Shape> {
        Shape::of(parse_op_tree(&self.tree)?)
    }

    /// Input orders, defaulting to the written order.
    fn orders_for(&self, shape: &Shape) -> Result<Vec<Vec<usize>>> {
        if self.orders.is_empty() {
            return Ok(shape.white.iter().map(|a| (1..=*a).collect()).collect());
        }
        if self.orders.len() != shape.white.len() {
            return Err(Error::SizeMismatch { left: shape.white.len(), right: self.orders.len() });
        }
        for (o, a) in self.orders.iter().zip(&shape.white) {
            Perm::from_one_line(o)?;
            if o.len() != *a {
                return Err(Error::SizeMismatch { left: *a, right: o.len() });
            }
        }
        Ok(self.orders.clone())
    }

    /// Checks every datum against `P` and `P^!`.
    pub fn validate(&self, p: &Operad, dual: &Operad) -> Result<Shape> {
        let shape = self.shape()?;
        let orders = self.orders_for(&shape)?;
        if shape.output > p.cap() {
            return Err(Error::ResourceBound(format!("output arity {} exceeds cap {}", shape.output, p.cap())));
        }
        if self.black.len() != shape.black.len() {
            return Err(Error::SizeMismatch { left: shape.black.len(), right: self.black.len() });
        }
        for (v, r) in self.black.iter().zip(&shape.black) {
            if v.len() != p.dim(*r) {
                return Err(Error::Invalid(format!("decoration of a {r}-ary black vertex needs {} coordinates", p.dim(*r))));
            }
        }
        let cols: usize = shape.white.iter().map(|a| dual.dim(*a)).product();
        if self.phi.len() != dual.dim(shape.output) || self.phi.iter().any(|r| r.len() != cols) {
            return Err(Error::Invalid(format!("Φ must be a {}×{cols} matrix", dual.dim(shape.output))));
        }
        if self.planar {
            let mut legs = Vec::new();
            shape.root.leaves(&mut legs);
            let ordered = legs.iter().copied().eq(1..=legs.len());
            if !ordered || orders.iter().any(|o| o.iter().copied().ne(1..=o.len())) {
                return Err(Error::Invalid("planar spec needs legs and input orders in planar order".into()));
            }
            if p.symmetric() {
                return Err(Error::Invalid("planar spec over a symmetric operad".into()));
            }
        }
        Ok(shape)
    }

    pub fn input_arities(&self) -> Result<Vec<usize>> {
        Ok(self.shape()?.white)
    }
}

/// `deg U = Σ_j ar(b_j) − k`.
pub fn op_degree(spec: &NaturalOpSpec) -> Result<usize> {
    Ok(spec.shape()?.black.iter().map(|r| r - 1).sum())
}

/// A multilinear map on `A` in the variables `vars`, as sparse terms
/// `(output, values of vars, coefficient)`.
struct Partial {
    vars: Vec<usize>,
    terms: HashMap<(usize, Vec<usize>), Scalar>,
}

fn decode(d: usize, r: usize, mut idx: usize) -> (usize, Vec<usize>) {
    let mut ins = vec![0; r];
    for k in (0..r).rev() {
        ins[k] = idx % d;
        idx /= d;
    }
    (idx, ins)
}

/// Composite along the tree of the `End_A` decorations.
fn compose_along(root: &Node, d: usize, white: &[SparseVec], black: &[SparseVec], orders: &[Vec<usize>]) -> SparseVec {
    fn eval(n: &Node, d: usize, white: &[SparseVec], black: &[SparseVec], orders: &[Vec<usize>]) -> Option<Partial> {
        let (deco, children, slots): (&SparseVec, &[Node], Vec<usize>) = match n {
            Node::Leaf(_) => return None,
            Node::White(i, c) => (&white[i - 1], c, orders[i - 1].iter().map(|s| s - 1).collect()),
            Node::Black(j, c) => (&black[j - 1], c, (0..c.len()).collect()),
        };
        let subs: Vec<Option<Partial>> = children.iter().map(|c| eval(c, d, white, black, orders)).collect();
        let by_out: Vec<HashMap<usize, Vec<(&Vec<usize>, &Scalar)>>> = subs
            .iter()
            .map(|s| {
                let mut m: HashMap<usize, Vec<(&Vec<usize>, &Scalar)>> = HashMap::new();
                if let Some(p) = s {
                    for ((o, v), c) in &p.terms {
                        m.entry(*o).or_default().push((v, c));
                    }
                }
                m
            })
            .collect();
        let mut vars = Vec::new();
        for (c, s) in children.iter().zip(&subs) {
            match (c, s) {
                (Node::Leaf(l), _) => vars.push(*l),
                (_, Some(p)) => vars.extend(&p.vars),
                _ => unreachable!(),
            }
        }
        let mut terms: HashMap<(usize, Vec<usize>), Scalar> = HashMap::new();
        for (idx, c) in deco.entries() {
            let (out, ins) = decode(d, children.len(), *idx);
            let mut partial: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), c.clone())];
            for (k, child) in children.iter().enumerate() {
                let want = ins[slots[k]];
                let mut next = Vec::new();
                if let Node::Leaf(_) = child {
                    for (v, x) in &partial {
                        let mut v = v.clone();
                        v.push(want);
                        next.push((v, x.clone()));
                    }
                } else if let Some(options) = by_out[k].get(&want) {
                    for (v, x) in &partial {
                        for (w, y) in options {
                            let mut v = v.clone();
                            v.extend(w.iter());
                            next.push((v, x * *y));
                        }
                    }
                }
                partial = next;
                if partial.is_empty() {
                    break;
                }
            }
            for (v, x) in partial {
                *terms.entry((out, v)).or_insert_with(Scalar::zero) += &x;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Some(Partial { vars, terms })
    }
    let p = match eval(root, d, white, black, orders) {
        Some(p) => p,
        None => return SparseVec::new(),
    };
    let a = p.vars.len();
    let mut acc = Accumulator::new();
    for ((out, vals), c) in &p.terms {
        let mut x = vec![0; a];
        for (var, val) in p.vars.iter().zip(vals) {
            x[var - 1] = *val;
        }
        acc.add(x.iter().fold(*out, |s, v| s * d + v), c);
    }
    acc.finish()
}

/// `U(f_1, …, f_n) = Aver(Σ T(φ_1, …, φ_n) ⊗ Φ(q_1, …, q_n))`.
pub fn eval_natural_op(spec: &NaturalOpSpec, cx: &CochainComplex, fs: &[Cochain]) -> Result<Cochain> {
    let st = &cx.structure;
    let shape = spec.validate(&st.operad, &st.dual)?;
    let orders = spec.orders_for(&shape)?;
    if fs.len() != shape.white.len() {
        return Err(Error::SizeMismatch { left: shape.white.len(), right: fs.len() });
    }
    for (f, a) in fs.iter().zip(&shape.white) {
        if f.arity != *a {
            return Err(Error::Invalid(format!("input of arity {} at a white vertex of arity {a}", f.arity)));
        }
    }
    let a = shape.output;
    if a > cx.cap() {
        return Err(Error::ResourceBound(format!("output arity {a} exceeds cap {}", cx.cap())));
    }
    let d = st.dim();
    let black: Vec<SparseVec> =
        spec.black.iter().zip(&shape.black).map(|(v, r)| st.alpha(*r, &SparseVec::from_dense(v))).collect();
    // f_i = Σ_b F_{i,b} ⊗ e_b
    let mut parts: Vec<Vec<(usize, SparseVec)>> = Vec::new();
    for f in fs {
        let q = st.dual.dim(f.arity);
        let mut by_b: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (idx, c) in cx.invariant(f)?.into_entries() {
            by_b.entry(idx % q).or_default().push((idx / q, c));
        }
        parts.push(by_b.into_iter().map(|(b, e)| (b, SparseVec::from_entries(e))).collect());
    }
    let dims: Vec<usize> = shape.white.iter().map(|a| st.dual.dim(*a)).collect();
    let qa = st.dual.dim(a);
    let alg = cx.t_algebra();
    let mut acc = Accumulator::new();
    let mut choice = vec![0usize; fs.len()];
    'outer: loop {
        if parts.iter().all(|p| !p.is_empty()) || fs.is_empty() {
            let col = choice.iter().zip(&parts).zip(&dims).fold(0, |s, ((k, p), q)| s * q + p[*k].0);
            let image: Vec<(usize, Scalar)> =
                (0..qa).filter(|r| !spec.phi[*r][col].is_zero()).map(|r| (r, spec.phi[r][col].clone())).collect();
            if !image.is_empty() {
                let white: Vec<SparseVec> = choice.iter().zip(&parts).map(|(k, p)| p[*k].1.clone()).collect();
                let comp = compose_along(&shape.root, d, &white, &black, &orders);
                for (e, ce) in comp.entries() {
                    for (b, cb) in &image {
                        acc.add(alg.index(a, *e, *b), &(ce * cb));
                    }
                }
            }
        } else {
            break;
        }
        for k in (0..fs.len()).rev() {
            choice[k] += 1;
            if choice[k] < parts[k].len() {
                continue 'outer;
            }
            choice[k] = 0;
        }
        break;
    }
    cx.cochain_of(a, &acc.finish())
}

/// The corolla with one white vertex, legs in order and `Φ = id`.
pub fn identity_spec(a: usize, dual: &Operad) -> NaturalOpSpec {
    let q = dual.dim(a);
    let legs: Vec<String> = (1..=a).map(|l| l.to_string()).collect();
    NaturalOpSpec {
        tree: format!("w1({})", legs.join(",")),
        orders: vec![(1..=a).collect()],
        black: vec![],
        phi: (0..q).map(|r| (0..q).map(|c| Scalar::from_int((r == c) as i64)).collect()).collect(),
        planar: !dual.symmetric(),
    }
}

fn phi_from_columns(rows: usize, cols: &[SparseVec]) -> Vec<Vec<Scalar>> {
    let mut m = vec![vec![Scalar::zero(); cols.len()]; rows];
    for (c, v) in cols.iter().enumerate() {
        for (r, x) in v.entries() {
            m[*r][c] = x.clone();
        }
    }
    m
}

fn tuples(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for d in dims {
        out = out.into_iter().flat_map(|t| (0..*d).map(move |k| [t.clone(), vec![k]].concat())).collect();
    }
    out
}

/// The cup-product tree for `t ∈ ↑(P ⊗ P^!)(n)` on inputs of the given
/// arities: a black root decorated by the `P`-part of `t`, white vertices on
/// its inputs, and `Φ` the composition in `↑P^!`. One spec per basis vector
/// of `P^!(n)` met in `t`; the operation is their sum.
pub fn cup_specs(p: &Operad, dual: &Operad, t: &SparseVec, arities: &[usize]) -> Result<Vec<NaturalOpSpec>> {
    let n = arities.len();
    let q = dual.dim(n);
    let sq = suspension(dual);
    let a: usize = arities.iter().sum();
    if a > dual.cap() {
        return Err(Error::ResourceBound(format!("output arity {a} exceeds cap {}", dual.cap())));
    }
    let mut by_b: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
    for (idx, c) in t.entries() {
        by_b.entry(idx % q).or_default().push((idx / q, c.clone()));
    }
    let mut leg = 0;
    let whites: Vec<String> = arities
        .iter()
        .enumerate()
        .map(|(i, ai)| {
            let legs: Vec<String> = (0..*ai).map(|_| {
                leg += 1;
                leg.to_string()
            }).collect();
            format!("w{}({})", i + 1, legs.join(","))
        })
        .collect();
    let tree = format!("b1({})", whites.join(","));
    let dims: Vec<usize> = arities.iter().map(|x| dual.dim(*x)).collect();
    let mut out = Vec::new();
    for (b, pv) in by_b {
        let cols: Vec<SparseVec> = tuples(&dims)
            .into_iter()
            .map(|tup| {
                let mut cur = SparseVec::unit(b);
                let (mut arity, mut pos) = (n, 1);
                for (k, ai) in tup.iter().zip(arities) {
                    cur = sq.compose_vec(arity, &cur, pos, *ai, &SparseVec::unit(*k));
                    arity += ai - 1;
                    pos += ai;
                }
                cur
            })
            .collect();
        out.push(NaturalOpSpec {
            tree: tree.clone(),
            orders: arities.iter().map(|ai| (1..=*ai).collect()).collect(),
            black: vec![SparseVec::from_entries(pv).to_dense(p.dim(n))],
            phi: phi_from_columns(dual.dim(a), &cols),
            planar: !p.symmetric(),
        });
    }
    Ok(out)
}

/// Constants: the corolla `b1(1,…,a)` decorated by `p` with `Φ(1) = e_b`.
pub fn constant_spec(p: &Operad, dual: &Operad, a: usize, pv: &SparseVec, b: usize) -> NaturalOpSpec {
    let legs: Vec<String> = (1..=a).map(|l| l.to_string()).collect();
    NaturalOpSpec {
        tree: format!("b1({})", legs.join(",")),
        orders: vec![],
        black: vec![pv.to_dense(p.dim(a))],
        phi: (0..dual.dim(a)).map(|r| vec![Scalar::from_int((r == b) as i64)]).collect(),
        planar: !p.symmetric(),
    }
}

/// `(↑α ⊗ id)(t)` for a `δ^Σ_χ`-closed invariant `t ∈ ↑(P ⊗ P^!)(m)`.
pub fn soul_realize(cx: &CochainComplex, m: usize, t: &SparseVec) -> Result<Cochain> {
    let st = &cx.structure;
    let soul = TAlgebra::new(&st.operad, &st.dual)?;
    let chi = LieElement::homogeneous(2, cx.chi().component(2));
    let dt = delta_sigma(&soul, &chi, &LieElement::homogeneous(m, t.clone()))?;
    if !dt.is_zero() {
        return Err(Error::Precondition("soul element is not δ^Σ_χ-closed".into()));
    }
    cx.cochain_of(m, &cx.lift(m, t))
}

/// A natural operation evaluated on concrete cochains.
pub trait NaturalOp {
    fn inputs(&self) -> usize;
    fn degree(&self) -> usize;
    fn eval(&self, cx: &CochainComplex, fs: &[Cochain]) -> Result<Cochain>;
}

impl NaturalOp for NaturalOpSpec {
    fn inputs(&self) -> usize {
        self.shape().map(|s| s.white.len()).unwrap_or(0)
    }
    fn degree(&self) -> usize {
        op_degree(self).unwrap_or(0)
    }
    fn eval(&self, cx: &CochainComplex, fs: &[Cochain]) -> Result<Cochain> {
        eval_natural_op(self, cx, fs)
    }
}

/// The projection `p_m` onto `C^m`, realized through the identity corolla.
pub struct Projection(pub usize);

impl NaturalOp for Projection {
    fn inputs(&self) -> usize {
        1
    }
    fn degree(&self) -> usize {
        0
    }
    fn eval(&self, cx: &CochainComplex, fs: &[Cochain]) -> Result<Cochain> {
        let f = &fs[0];
        if f.arity == self.0 + 1 {
            eval_natural_op(&identity_spec(f.arity, &cx.structure.dual), cx, fs)
        } else {
            Ok(Cochain::zero(f.arity))
        }
    }
}

/// The pre-Lie product of the complex.
pub struct Circle;

impl NaturalOp for Circle {
    fn inputs(&self) -> usize {
        2
    }
    fn degree(&self) -> usize {
        0
    }
    fn eval(&self, cx: &CochainComplex, fs: &[Cochain]) -> Result<Cochain> {
        cx.circle(&fs[0], &fs[1])
    }
}

/// The intrinsic bracket.
pub struct Bracket;

impl NaturalOp for Bracket {
    fn inputs(&self) -> usize {
        2
    }
    fn degree(&self) -> usize {
        0
    }
    fn eval(&self, cx: &CochainComplex, fs: &[Cochain]) -> Result<Cochain> {
        cx.bracket(&fs[0], &fs[1])
    }
}

/// Cup action of `t ∈ ↑(P ⊗ P^!)(n)`.
pub struct Cup {
    pub n: usize,
    pub t: SparseVec,
}

impl NaturalOp for Cup {
    fn inputs(&self) -> usize {
        self.n
    }
    fn degree(&self) -> usize {
        self.n - 1
    }
    fn eval(&self, cx: &CochainComplex, fs: &[Cochain]) -> Result<Cochain> {
        cx.cup_act(self.n, &self.t, fs)
    }
}

/// `δ_P(U)(f_1,…,f_n) = d U(f_1,…,f_n) − (−1)^{|U|} Σ_i (−1)^{|f_1|+…+|f_{i−1}|} U(…, d f_i, …)`.
pub fn delta_on_op(op: &dyn NaturalOp, cx: &CochainComplex, fs: &[Cochain]) -> Result<Cochain> {
    let mut out = cx.d(&op.eval(cx, fs)?)?;
    let su = if op.degree() % 2 == 0 { 1 } else { -1 };
    let mut shift = 0;
    for i in 0..fs.len() {
        let mut args = fs.to_vec();
        args[i] = cx.d(&fs[i])?;
        let s = su * if shift % 2 == 0 { 1 } else { -1 };
        out = out.add_scaled(&op.eval(cx, &args)?, &Scalar::from_int(-s));
        shift += fs[i].degree();
    }
    Ok(out)
}

/// `δ_P(U)` as an operation of degree `|U| + 1`.
pub struct Delta<'a>(pub &'a dyn NaturalOp);

impl NaturalOp for Delta<'_> {
    fn inputs(&self) -> usize {
        self.0.inputs()
    }
    fn degree(&self) -> usize {
        self.0.degree() + 1
    }
    fn eval(&self, cx: &CochainComplex, fs: &[Cochain]) -> Result<Cochain> {
        delta_on_op(self.0, cx, fs)
    }
}

fn compositions(c: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 1 {
        return vec![vec![c]];
    }
    (0..=c)
        .flat_map(|k| compositions(c - k, r - 1).into_iter().map(move |rest| [vec![k], rest].concat()))
        .collect()
}

/// Partitions of `d` into parts `≥ 1`, non-increasing.
fn partitions(d: usize, max: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![vec![]];
    }
    (1..=d.min(max)).rev().flat_map(|k| partitions(d - k, k).into_iter().map(move |r| [vec![k], r].concat())).collect()
}

/// Planar trees on the given white vertices `(index, arity)` and black
/// arities (a multiset as counts), with every leg labelled 0.
fn planar_terms(whites: &[(usize, usize)], blacks: &BTreeMap<usize, usize>) -> Vec<Node> {
    if whites.is_empty() && blacks.values().all(|c| *c == 0) {
        return vec![Node::Leaf(0)];
    }
    let mut out = Vec::new();
    let mut roots: Vec<(bool, usize, usize)> = whites.iter().map(|(i, a)| (true, *i, *a)).collect();
    roots.extend(blacks.iter().filter(|(_, c)| **c > 0).map(|(r, _)| (false, 0, *r)));
    for (is_white, idx, r) in roots {
        let rest_w: Vec<(usize, usize)> = whites.iter().copied().filter(|(i, _)| !is_white || *i != idx).collect();
        let mut rest_b = blacks.clone();
        if !is_white {
            *rest_b.get_mut(&r).unwrap() -= 1;
        }
        // every white goes to some slot; black counts are split per arity
        let mut dists: Vec<(Vec<Vec<(usize, usize)>>, Vec<BTreeMap<usize, usize>>)> =
            vec![(vec![Vec::new(); r], vec![BTreeMap::new(); r])];
        for w in &rest_w {
            dists = dists
                .into_iter()
                .flat_map(|(ws, bs)| {
                    (0..r).map(move |s| {
                        let mut ws = ws.clone();
                        ws[s].push(*w);
                        (ws, bs.clone())
                    })
                })
                .collect();
        }
        for (ar, c) in rest_b.iter().filter(|(_, c)| **c > 0) {
            dists = dists
                .into_iter()
                .flat_map(|(ws, bs)| {
                    compositions(*c, r).into_iter().map(move |comp| {
                        let mut bs = bs.clone();
                        for (s, k) in comp.into_iter().enumerate() {
                            bs[s].insert(*ar, k);
                        }
                        (ws.clone(), bs)
                    })
                })
                .collect();
        }
        for (ws, bs) in dists {
            let mut children: Vec<Vec<Node>> = vec![Vec::new()];
            for s in 0..r {
                let subs = planar_terms(&ws[s], &bs[s]);
                children = children
                    .into_iter()
                    .flat_map(|ch| subs.iter().map(move |t| [ch.clone(), vec![t.clone()]].concat()))
                    .collect();
            }
            for ch in children {
                out.push(if is_white { Node::White(idx, ch) } else { Node::Black(0, ch) });
            }
        }
    }
    out
}

fn label(n: &Node, labels: &[usize], next: &mut usize) -> Node {
    match n {
        Node::Leaf(_) => {
            *next += 1;
            Node::Leaf(labels[*next - 1])
        }
        Node::White(i, c) => Node::White(*i, c.iter().map(|x| label(x, labels, next)).collect()),
        Node::Black(i, c) => Node::Black(*i, c.iter().map(|x| label(x, labels, next)).collect()),
    }
}

/// Children sorted by minimal leg; white input orders recorded, black
/// vertices numbered in reading order.
fn canonicalize(n: &Node, orders: &mut BTreeMap<usize, Vec<usize>>, nblack: &mut usize) -> Node {
    match n {
        Node::Leaf(l) => Node::Leaf(*l),
        Node::White(i, c) | Node::Black(i, c) => {
            let mut idx: Vec<usize> = (0..c.len()).collect();
            idx.sort_by_key(|k| c[*k].min_leaf());
            let is_white = matches!(n, Node::White(..));
            let j = if is_white {
                orders.insert(*i, idx.iter().map(|k| k + 1).collect());
                *i
            } else {
                *nblack += 1;
                *nblack
            };
            let ch = idx.iter().map(|k| canonicalize(&c[*k], orders, nblack)).collect();
            if is_white {
                Node::White(j, ch)
            } else {
                Node::Black(j, ch)
            }
        }
    }
}

fn number_blacks(n: &Node, next: &mut usize) -> Node {
    match n {
        Node::Leaf(l) => Node::Leaf(*l),
        Node::White(i, c) => Node::White(*i, c.iter().map(|x| number_blacks(x, next)).collect()),
        Node::Black(_, c) => {
            *next += 1;
            let j = *next;
            Node::Black(j, c.iter().map(|x| number_blacks(x, next)).collect())
        }
    }
}

/// Distinct labelled trees with input orders, up to isomorphism.
pub fn enumerate_trees(inputs: &[usize], degree: usize, planar: bool, max_arity: usize) -> Vec<(Node, Vec<Vec<usize>>)> {
    let whites: Vec<(usize, usize)> = inputs.iter().enumerate().map(|(i, a)| (i + 1, *a)).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for part in partitions(degree, max_arity.saturating_sub(1).max(1)) {
        let mut blacks = BTreeMap::new();
        for k in part {
            *blacks.entry(k + 1).or_insert(0) += 1;
        }
        for t in planar_terms(&whites, &blacks) {
            let mut legs = Vec::new();
            t.leaves(&mut legs);
            let a = legs.len();
            let labellings: Vec<Vec<usize>> =
                if planar { vec![(1..=a).collect()] } else { Perm::all(a).map(|p| p.one_line()).collect() };
            for lab in labellings {
                let labelled = label(&t, &lab, &mut 0);
                let (tree, orders) = if planar {
                    let tree = number_blacks(&labelled, &mut 0);
                    (tree, inputs.iter().map(|ai| (1..=*ai).collect()).collect::<Vec<_>>())
                } else {
                    let mut orders = BTreeMap::new();
                    let tree = canonicalize(&labelled, &mut orders, &mut 0);
                    (tree, orders.into_values().collect())
                };
                let key = (tree.to_string_canonical(), orders.clone());
                if seen.insert(key) {
                    out.push((tree, orders));
                }
            }
        }
    }
    out
}

/// All specs with the given white arities, output arity and degree: every
/// tree, every basis decoration of the black vertices and every elementary
/// `Φ`. Fails when more than `limit` specs would be produced.
pub fn enumerate_tree_ops(
    inputs: &[usize],
    output: usize,
    degree: usize,
    p: &Operad,
    dual: &Operad,
    limit: usize,
) -> Result<Vec<NaturalOpSpec>> {
    if inputs.is_empty() && degree == 0 {
        return Err(Error::Invalid("an operation without white vertices needs a black vertex".into()));
    }
    let expect = inputs.iter().map(|a| a - 1).sum::<usize>() + degree + 1;
    if output != expect {
        return Err(Error::Invalid(format!("inputs {inputs:?} in degree {degree} give output arity {expect}, not {output}")));
    }
    if output > p.cap() {
        return Err(Error::ResourceBound(format!("output arity {output} exceeds cap {}", p.cap())));
    }
    let planar = !p.symmetric();
    let trees = enumerate_trees(inputs, degree, planar, output);
    let cols: usize = inputs.iter().map(|a| dual.dim(*a)).product();
    let rows = dual.dim(output);
    let mut out = Vec::new();
    for (tree, orders) in trees {
        let shape = Shape::of(tree.clone())?;
        let decos = tuples(&shape.black.iter().map(|r| p.dim(*r)).collect::<Vec<_>>());
        let count = out.len() + decos.len() * rows * cols;
        if count > limit {
            return Err(Error::ResourceBound(format!("more than {limit} tree operations")));
        }
        let tree_s = tree.to_string_canonical();
        for deco in &decos {
            let black: Vec<Vec<Scalar>> =
                deco.iter().zip(&shape.black).map(|(k, r)| SparseVec::unit(*k).to_dense(p.dim(*r))).collect();
            for r in 0..rows {
                for c in 0..cols {
                    let mut phi = vec![vec![Scalar::zero(); cols]; rows];
                    phi[r][c] = Scalar::one();
                    out.push(NaturalOpSpec {
                        tree: tree_s.clone(),
                        orders: orders.clone(),
                        black: black.clone(),
                        phi,
                        planar,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Truncated evidence for `H^0(B_P(2))`.
#[derive(Clone, Debug, Serialize)]
pub struct H0BinaryReport {
    pub operad: String,
    pub cap: usize,
    pub algebras: usize,
    pub unknowns: usize,
    pub conditions: usize,
    /// Dimension of the closed operations restricted to the multidegrees
    /// whose closedness condition is fully imposed.
    pub dim: usize,
    pub contains_bracket: bool,
    pub spanned_by_bracket: bool,
    /// Eigenvalue of the transposition on the generator, when `dim = 1`.
    pub transposition_eigenvalue: Option<Scalar>,
    pub caveat: String,
}

/// Degree-0 binary tree operations on inputs of arities `(a_1, a_2)`,
/// `a_1 + a_2 − 1 ≤ cap`, tested on sample algebras. The closedness
/// conditions `d U(f,g) = U(df,g) + (−1)^{|f|} U(f,dg)` are imposed wherever
/// all terms lie within the cap; the answer is the dimension of the solutions
/// restricted to multidegrees of output arity `< cap`.
pub fn h0_binary_evidence_on(name: &str, algebras: &[PAlgebra], cap: usize) -> Result<H0BinaryReport> {
    let cxs: Vec<CochainComplex> = algebras.iter().map(|a| CochainComplex::new(a, cap)).collect::<Result<_>>()?;
    let first = cxs.first().ok_or_else(|| Error::Invalid("no sample algebras".into()))?;
    let (p, dual) = (first.structure.operad.clone(), first.structure.dual.clone());
    let mds: Vec<(usize, usize)> =
        (1..=cap).flat_map(|a1| (1..=cap).map(move |a2| (a1, a2))).filter(|(a1, a2)| a1 + a2 - 1 <= cap).collect();
    let mut offset = BTreeMap::new();
    let mut specs: BTreeMap<(usize, usize), Vec<NaturalOpSpec>> = BTreeMap::new();
    let mut unknowns = 0;
    for md in &mds {
        let s = enumerate_tree_ops(&[md.0, md.1], md.0 + md.1 - 1, 0, &p, &dual, 100_000)?;
        offset.insert(*md, unknowns);
        unknowns += s.len();
        specs.insert(*md, s);
    }
    // evaluation[(alg, md)][(k, l)] = per-spec values
    type Values = Vec<Vec<Cochain>>;
    let mut values: BTreeMap<(usize, (usize, usize)), Values> = BTreeMap::new();
    for (ai, cx) in cxs.iter().enumerate() {
        for md in &mds {
            let mut v = Vec::new();
            for k in 0..cx.dim(md.0) {
                for l in 0..cx.dim(md.1) {
                    let fs = [cx.basis_cochain(md.0, k), cx.basis_cochain(md.1, l)];
                    v.push(specs[md].iter().map(|s| eval_natural_op(s, cx, &fs)).collect::<Result<Vec<_>>>()?);
                }
            }
            values.insert((ai, *md), v);
        }
    }
    // a row vector over the unknowns, for each output coordinate
    let mut conditions: Vec<SparseVec> = Vec::new();
    for (ai, cx) in cxs.iter().enumerate() {
        for md in mds.iter().filter(|(a1, a2)| a1 + a2 <= cap) {
            let (n1, n2) = (cx.dim(md.0), cx.dim(md.1));
            let s1 = if (md.0 - 1) % 2 == 0 { 1 } else { -1 };
            for k in 0..n1 {
                for l in 0..n2 {
                    let mut rows: BTreeMap<usize, Accumulator> = BTreeMap::new();
                    let mut push = |v: &Cochain, unknown: usize, c: &Scalar| {
                        for (j, x) in v.coords.entries() {
                            rows.entry(*j).or_default().add(unknown, &(x * c));
                        }
                    };
                    for (s, u) in values[&(ai, *md)][k * n2 + l].iter().enumerate() {
                        push(&cx.d(u)?, offset[md] + s, &Scalar::one());
                    }
                    let df = cx.d(&cx.basis_cochain(md.0, k))?;
                    let up = (md.0 + 1, md.1);
                    for (kk, c) in df.coords.entries() {
                        for (s, u) in values[&(ai, up)][kk * n2 + l].iter().enumerate() {
                            push(u, offset[&up] + s, &-c.clone());
                        }
                    }
                    let dg = cx.d(&cx.basis_cochain(md.1, l))?;
                    let up = (md.0, md.1 + 1);
                    let n2up = cx.dim(md.1 + 1);
                    for (ll, c) in dg.coords.entries() {
                        for (s, u) in values[&(ai, up)][k * n2up + ll].iter().enumerate() {
                            push(u, offset[&up] + s, &(c * &Scalar::from_int(-s1)));
                        }
                    }
                    conditions.extend(rows.into_values().map(|a| a.finish()).filter(|r| !r.is_zero()));
                }
            }
        }
    }
    let solutions = nullspace(&conditions, unknowns);
    // restriction to low multidegrees, as a vector of all low values
    let low: Vec<(usize, (usize, usize))> = (0..cxs.len())
        .flat_map(|ai| mds.iter().filter(|(a1, a2)| a1 + a2 <= cap).map(move |md| (ai, *md)))
        .collect();
    let mut layout = BTreeMap::new();
    let mut width = 0;
    for key in &low {
        layout.insert(*key, width);
        let n_out = cxs[key.0].dim(key.1 .0 + key.1 .1 - 1);
        width += values[key].len() * n_out;
    }
    let restrict = |c: &SparseVec| -> SparseVec {
        let mut acc = Accumulator::new();
        for key in &low {
            let n_out = cxs[key.0].dim(key.1 .0 + key.1 .1 - 1);
            for (pair, per_spec) in values[key].iter().enumerate() {
                for (u, x) in c.entries() {
                    let s = match u.checked_sub(offset[&key.1]) {
                        Some(s) if s < per_spec.len() => s,
                        _ => continue,
                    };
                    for (j, y) in per_spec[s].coords.entries() {
                        acc.add(layout[key] + pair * n_out + j, &(x * y));
                    }
                }
            }
        }
        acc.finish()
    };
    let mut image = Echelon::new();
    for s in &solutions {
        image.insert(&restrict(s));
    }
    let bracket = {
        let mut acc = Accumulator::new();
        for key in &low {
            let cx = &cxs[key.0];
            let (n2, n_out) = (cx.dim(key.1 .1), cx.dim(key.1 .0 + key.1 .1 - 1));
            for k in 0..cx.dim(key.1 .0) {
                for l in 0..n2 {
                    let b = cx.bracket(&cx.basis_cochain(key.1 .0, k), &cx.basis_cochain(key.1 .1, l))?;
                    for (j, y) in b.coords.entries() {
                        acc.add(layout[key] + (k * n2 + l) * n_out + j, y);
                    }
                }
            }
        }
        acc.finish()
    };
    let dim = image.rank();
    let contains_bracket = !bracket.is_zero() && image.contains(&bracket);
    let spanned_by_bracket = contains_bracket && dim == 1;
    // (U·τ)(f, g) = (−1)^{|f||g|} U(g, f), computed on the bracket generator
    let transposition_eigenvalue = if spanned_by_bracket {
        let mut acc = Accumulator::new();
        for key in &low {
            let cx = &cxs[key.0];
            let (a1, a2) = key.1;
            let swapped = (key.0, (a2, a1));
            let (n1, n2, n_out) = (cx.dim(a1), cx.dim(a2), cx.dim(a1 + a2 - 1));
            let s = Scalar::from_int(if (a1 - 1) * (a2 - 1) % 2 == 0 { 1 } else { -1 });
            for k in 0..n1 {
                for l in 0..n2 {
                    for j in 0..n_out {
                        let y = bracket.get(layout[&swapped] + (l * n1 + k) * n_out + j);
                        acc.add(layout[key] + (k * n2 + l) * n_out + j, &(&y * &s));
                    }
                }
            }
        }
        let moved = acc.finish();
        let (i, c) = bracket.leading().expect("nonzero bracket").clone();
        let lambda = &moved.get(i) / &c;
        (moved == bracket.scale(&lambda)).then_some(lambda)
    } else {
        None
    };
    Ok(H0BinaryReport {
        operad: name.to_string(),
        cap,
        algebras: cxs.len(),
        unknowns,
        conditions: conditions.len(),
        dim,
        contains_bracket,
        spanned_by_bracket,
        transposition_eigenvalue,
        caveat: "upper-bound evidence only: conditions coupling multidegrees beyond the cap are dropped".into(),
    })
}

/// [`h0_binary_evidence_on`] over three-dimensional sample algebras.
pub fn h0_binary_evidence(name: &str, cap: usize) -> Result<H0BinaryReport> {
    let algebras: Vec<PAlgebra> =
        (1..=3).map(|seed| crate::cochain::sample_algebra(name, 3, seed)).collect::<Result<_>>()?;
    h0_binary_evidence_on(name, &algebras, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::sample_algebra;
    use crate::linalg::rank_of;

    fn dual_numbers(op: &str) -> PAlgebra {
        PAlgebra::new(op, 2).with_product("mu", |i, j| match (i, j) {
            (0, 0) => vec![1, 0],
            (0, 1) | (1, 0) => vec![0, 1],
            _ => vec![0, 0],
        })
    }

    fn spec(tree: &str, black: Vec<Vec<i64>>) -> NaturalOpSpec {
        NaturalOpSpec {
            tree: tree.into(),
            orders: vec![],
            black: black.into_iter().map(|v| v.into_iter().map(Scalar::from_int).collect()).collect(),
            phi: vec![],
            planar: false,
        }
    }

    #[test]
    fn tree_strings_round_trip() {
        for s in ["w1(1,2)", "b1(w1(1,2),w2(3,4))", "w2(b1(3,1),w1(2))"] {
            assert_eq!(parse_op_tree(s).unwrap().to_string_canonical(), s);
        }
        assert!(parse_op_tree("w1(1,2").is_err());
        assert!(spec("w1(1,1)", vec![]).shape().is_err());
        assert!(spec("b1(1)", vec![]).shape().is_err());
    }

    #[test]
    fn degree_formula() {
        assert_eq!(op_degree(&spec("w1(w2(1,2),3)", vec![])).unwrap(), 0);
        assert_eq!(op_degree(&spec("b1(w1(1),w2(2))", vec![])).unwrap(), 1);
        assert_eq!(op_degree(&spec("b1(b2(1,2,3),4)", vec![])).unwrap(), 3);
    }

    #[test]
    fn identity_corolla_is_identity() {
        let cx = CochainComplex::new(&sample_algebra("Ass", 2, 5).unwrap(), 4).unwrap();
        for m in 1..=3 {
            let id = identity_spec(m, &cx.structure.dual);
            for k in 0..cx.dim(m) {
                let f = cx.basis_cochain(m, k);
                assert_eq!(eval_natural_op(&id, &cx, &[f.clone()]).unwrap(), f);
            }
        }
    }

    #[test]
    fn cup_tree_is_cup_action() {
        for op in ["Ass", "Com"] {
            let cx = CochainComplex::new(&dual_numbers(op), 4).unwrap();
            let st = &cx.structure;
            let chi = cx.chi().component(2);
            for (a1, a2) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
                let specs = cup_specs(&st.operad, &st.dual, &chi, &[a1, a2]).unwrap();
                for k in 0..cx.dim(a1) {
                    for l in 0..cx.dim(a2) {
                        let fs = [cx.basis_cochain(a1, k), cx.basis_cochain(a2, l)];
                        let mut sum = Cochain::zero(a1 + a2);
                        for s in &specs {
                            sum = sum.add_scaled(&eval_natural_op(s, &cx, &fs).unwrap(), &Scalar::one());
                        }
                        assert_eq!(sum, cx.cup_act(2, &chi, &fs).unwrap(), "{op} {a1} {a2}");
                    }
                }
            }
        }
    }

    #[test]
    fn constant_tree_is_soul_realization() {
        let cx = CochainComplex::new(&sample_algebra("D", 2, 3).unwrap(), 4).unwrap();
        let st = &cx.structure;
        let chi = cx.chi().component(2);
        let q = st.dual.dim(2);
        let mut sum = Cochain::zero(2);
        for b in 0..q {
            let pv = SparseVec::from_entries(
                chi.entries().iter().filter(|(i, _)| i % q == b).map(|(i, c)| (i / q, c.clone())).collect(),
            );
            if !pv.is_zero() {
                let s = constant_spec(&st.operad, &st.dual, 2, &pv, b);
                sum = sum.add_scaled(&eval_natural_op(&s, &cx, &[]).unwrap(), &Scalar::one());
            }
        }
        let realized = soul_realize(&cx, 2, &chi).unwrap();
        assert_eq!(sum, realized);
        assert!(cx.d(&realized).unwrap().is_zero());
        assert!(soul_realize(&cx, 2, &SparseVec::new()).unwrap().is_zero());
    }

    #[test]
    fn realization_commutes_with_differentials() {
        let cx = CochainComplex::new(&sample_algebra("Ass", 2, 7).unwrap(), 4).unwrap();
        let st = &cx.structure;
        let soul = TAlgebra::new(&st.operad, &st.dual).unwrap();
        let chi = LieElement::homogeneous(2, cx.chi().component(2));
        let co = soul.coinvariants(2).unwrap();
        let mut rejected = false;
        for k in 0..co.dim() {
            let t = soul.average(&LieElement::homogeneous(2, co.representative(k)));
            let dt = delta_sigma(&soul, &chi, &t).unwrap();
            let lhs = soul_realize(&cx, 3, &dt.component(3)).unwrap();
            rejected |= !dt.is_zero() && soul_realize(&cx, 2, &t.component(2)).is_err();
            let rt = cx.cochain_of(2, &cx.lift(2, &t.component(2))).unwrap();
            assert_eq!(lhs, cx.d(&rt).unwrap());
        }
        assert!(rejected);
    }

    #[test]
    fn delta_of_operations() {
        let cx = CochainComplex::new(&dual_numbers("Ass"), 5).unwrap();
        let chi = cx.chi().component(2);
        let cup = Cup { n: 2, t: chi.clone() };
        for (a1, a2) in [(1, 1), (1, 2), (2, 2)] {
            for k in 0..cx.dim(a1) {
                for l in 0..cx.dim(a2) {
                    let fs = [cx.basis_cochain(a1, k), cx.basis_cochain(a2, l)];
                    let circ = delta_on_op(&Circle, &cx, &fs).unwrap();
                    assert_eq!(circ, cx.delta_of_circle(&fs[0], &fs[1]).unwrap());
                    assert_eq!(circ, cx.chi_cup(&fs[0], &fs[1]).unwrap());
                    assert!(Delta(&cup).eval(&cx, &fs).unwrap().is_zero());
                    assert!(delta_on_op(&Bracket, &cx, &fs).unwrap().is_zero());
                }
            }
        }
        let witness = (1..=3).any(|m| {
            (1..=3).any(|a| (0..cx.dim(a)).any(|k| !delta_on_op(&Projection(m), &cx, &[cx.basis_cochain(a, k)]).unwrap().is_zero()))
        });
        assert!(witness);
    }

    fn op_vectors(cx: &CochainComplex, ops: &[Box<dyn Fn(&Cochain, &Cochain) -> Cochain + '_>], a1: usize, a2: usize) -> Vec<SparseVec> {
        let n_out = cx.dim(a1 + a2 - 1);
        ops.iter()
            .map(|op| {
                let mut acc = Accumulator::new();
                for k in 0..cx.dim(a1) {
                    for l in 0..cx.dim(a2) {
                        let v = op(&cx.basis_cochain(a1, k), &cx.basis_cochain(a2, l));
                        for (j, c) in v.coords.entries() {
                            acc.add((k * cx.dim(a2) + l) * n_out + j, c);
                        }
                    }
                }
                acc.finish()
            })
            .collect()
    }

    #[test]
    fn hochschild_binary_operations_are_spanned() {
        let cx = &CochainComplex::new(&sample_algebra("Ass", 2, 11).unwrap(), 3).unwrap();
        let st = &cx.structure;
        let specs = enumerate_tree_ops(&[2, 2], 3, 0, &st.operad, &st.dual, 10_000).unwrap();
        assert!(specs.iter().all(|s| op_degree(s).unwrap() == 0 && s.black.is_empty()));
        let tree_ops: Vec<Box<dyn Fn(&Cochain, &Cochain) -> Cochain + '_>> = specs
            .iter()
            .map(|s| Box::new(move |f: &Cochain, g: &Cochain| eval_natural_op(s, cx, &[f.clone(), g.clone()]).unwrap()) as Box<dyn Fn(&Cochain, &Cochain) -> Cochain>)
            .collect();
        let end = &st.end;
        let mut classical: Vec<Box<dyn Fn(&Cochain, &Cochain) -> Cochain + '_>> = Vec::new();
        for swap in [false, true] {
            for i in 1..=2 {
                for sigma in Perm::all(3) {
                    classical.push(Box::new(move |f: &Cochain, g: &Cochain| {
                        let (u, v) = if swap { (g, f) } else { (f, g) };
                        let x = end.compose_vec(2, &cx.cochain_to_lin(u, 0).unwrap(), i, 2, &cx.cochain_to_lin(v, 0).unwrap());
                        cx.lin_to_cochain(3, &end.act_vec(3, &x, &sigma), 0).unwrap()
                    }));
                }
            }
        }
        let a = op_vectors(cx, &tree_ops, 2, 2);
        let b = op_vectors(cx, &classical, 2, 2);
        let joint: Vec<SparseVec> = a.iter().chain(&b).cloned().collect();
        let (ra, rb) = (rank_of(&a), rank_of(&b));
        assert!(ra > 0);
        assert_eq!(ra, rb);
        assert_eq!(rank_of(&joint), ra);
    }

    #[test]
    fn constants_of_arity_two() {
        let e = crate::operads::catalog("Ass", 3).unwrap();
        let dual = e.dual_or_err().unwrap();
        let specs = enumerate_tree_ops(&[], 2, 1, &e.operad, dual, 1000).unwrap();
        assert!(specs.iter().all(|s| s.tree == "b1(1,2)" && op_degree(s).unwrap() == 1));
        let soul = TAlgebra::from_entry(&e).unwrap();
        let co = soul.coinvariants(2).unwrap();
        let classes: Vec<SparseVec> = specs
            .iter()
            .map(|s| {
                let p = SparseVec::from_dense(&s.black[0]);
                let b = s.phi.iter().position(|r| !r[0].is_zero()).unwrap();
                let t = SparseVec::from_entries(p.entries().iter().map(|(a, c)| (soul.index(2, *a, b), c.clone())).collect());
                co.reduce(&t)
            })
            .collect();
        assert_eq!(rank_of(&classes), co.dim());
        assert_eq!(co.dim(), 2);
    }

    #[test]
    fn unary_operations_match_equivariant_maps() {
        let a = 3;
        let zero = PAlgebra::new("Ass", 3).with_product("mu", |_, _| vec![0, 0, 0]);
        let cx = CochainComplex::new(&zero, a).unwrap();
        let st = &cx.structure;
        let specs = enumerate_tree_ops(&[a], a, 0, &st.operad, &st.dual, 10_000).unwrap();
        let n = cx.dim(a);
        let matrices: Vec<SparseVec> = specs
            .iter()
            .map(|s| {
                let mut acc = Accumulator::new();
                for k in 0..n {
                    for (j, c) in eval_natural_op(s, &cx, &[cx.basis_cochain(a, k)]).unwrap().coords.entries() {
                        acc.add(k * n + j, c);
                    }
                }
                acc.finish()
            })
            .collect();
        let expected =
            super::super::unary::equivariant_collection_dim(&st.dual, a) - super::super::unary::equivariant_collection_dim(&st.dual, a - 1);
        assert_eq!(expected, 6);
        assert_eq!(rank_of(&matrices), expected);
    }

    #[test]
    fn lie_binary_evidence() {
        let r = h0_binary_evidence("Lie", 4).unwrap();
        assert!(r.contains_bracket, "{r:?}");
        assert_eq!(r.dim, 1, "{r:?}");
        assert_eq!(r.transposition_eigenvalue, Some(Scalar::from_int(-1)));
    }
}
