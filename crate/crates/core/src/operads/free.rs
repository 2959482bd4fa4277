//! Free operads on binary generators, quotients by quadratic relations, and
//! the JSON presentation format.
//!
//! A tree monomial is stored in canonical form: the two subtrees of every
//! vertex are ordered by their smallest leaf. Writing a vertex the other way
//! round is rewritten through the generator's `Σ_2` action,
//! `g(L, R) = (g·(12))(R, L)`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{check_cap, Operad, OperadModel};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, Echelon, SparseVec};
use crate::perm::Perm;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf(usize),
    /// Vertex decorated by a generator basis element (global index).
    Node(usize, Vec<Tree>),
}

impl Tree {
    pub fn arity(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(_, ch) => ch.iter().map(Tree::arity).sum(),
        }
    }

    pub fn min_leaf(&self) -> usize {
        match self {
            Tree::Leaf(l) => *l,
            Tree::Node(_, ch) => ch.iter().map(Tree::min_leaf).min().unwrap(),
        }
    }

    pub fn leaves(&self, out: &mut Vec<usize>) {
        match self {
            Tree::Leaf(l) => out.push(*l),
            Tree::Node(_, ch) => ch.iter().for_each(|c| c.leaves(out)),
        }
    }

    fn encode(&self, out: &mut Vec<u8>) {
        match self {
            Tree::Leaf(l) => out.push(*l as u8),
            Tree::Node(g, ch) => {
                out.push(128 + *g as u8);
                ch.iter().for_each(|c| c.encode(out));
            }
        }
    }

    fn decode(code: &[u8], pos: &mut usize) -> Tree {
        let c = code[*pos];
        *pos += 1;
        if c < 128 {
            Tree::Leaf(c as usize)
        } else {
            let l = Tree::decode(code, pos);
            let r = Tree::decode(code, pos);
            Tree::Node((c - 128) as usize, vec![l, r])
        }
    }

    fn relabel(&self, f: &impl Fn(usize) -> usize) -> Tree {
        match self {
            Tree::Leaf(l) => Tree::Leaf(f(*l)),
            Tree::Node(g, ch) => Tree::Node(*g, ch.iter().map(|c| c.relabel(f)).collect()),
        }
    }

    fn graft(&self, i: usize, inner: &Tree) -> Tree {
        match self {
            Tree::Leaf(l) if *l == i => inner.clone(),
            Tree::Leaf(l) => Tree::Leaf(*l),
            Tree::Node(g, ch) => Tree::Node(*g, ch.iter().map(|c| c.graft(i, inner)).collect()),
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        match self {
            Tree::Leaf(l) => l.to_string(),
            Tree::Node(g, ch) => {
                let parts: Vec<String> = ch.iter().map(|c| c.render(names)).collect();
                format!("{}({})", names[*g], parts.join(","))
            }
        }
    }
}

/// Parses `mu(mu(1,2),3)`; `lookup` resolves generator names.
pub fn parse_tree(s: &str, lookup: &dyn Fn(&str) -> Option<usize>) -> Result<Tree> {
    struct P<'a> {
        s: &'a [u8],
        pos: usize,
    }
    impl P<'_> {
        fn ws(&mut self) {
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
        }
        fn err(&self, msg: &str) -> Error {
            Error::Parse(format!("{msg} at byte {} of tree string", self.pos))
        }
    }
    fn node(p: &mut P, lookup: &dyn Fn(&str) -> Option<usize>) -> Result<Tree> {
        p.ws();
        let start = p.pos;
        if p.pos < p.s.len() && p.s[p.pos].is_ascii_digit() {
            while p.pos < p.s.len() && p.s[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
            let n: usize = std::str::from_utf8(&p.s[start..p.pos]).unwrap().parse().unwrap();
            return Ok(Tree::Leaf(n));
        }
        while p.pos < p.s.len() && (p.s[p.pos].is_ascii_alphanumeric() || b"_.'!".contains(&p.s[p.pos])) {
            p.pos += 1;
        }
        if start == p.pos {
            return Err(p.err("expected generator name or leaf"));
        }
        let name = std::str::from_utf8(&p.s[start..p.pos]).unwrap();
        let g = lookup(name).ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))?;
        p.ws();
        if p.s.get(p.pos) != Some(&b'(') {
            return Err(p.err("expected `(`"));
        }
        p.pos += 1;
        let mut ch = vec![node(p, lookup)?];
        loop {
            p.ws();
            match p.s.get(p.pos) {
                Some(b',') => {
                    p.pos += 1;
                    ch.push(node(p, lookup)?);
                }
                Some(b')') => {
                    p.pos += 1;
                    break;
                }
                _ => return Err(p.err("expected `,` or `)`")),
            }
        }
        Ok(Tree::Node(g, ch))
    }
    let mut p = P { s: s.as_bytes(), pos: 0 };
    let t = node(&mut p, lookup)?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(t)
}

/// How `Σ_2` acts on the span of a binary generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorAction {
    /// `"regular"`, `"trivial"` or `"sign"`.
    Named(String),
    /// Matrices of the Coxeter generators of `Σ_arity` (one for arity 2);
    /// column `k` is the image of basis element `k`.
    Matrices(Vec<Vec<Vec<Scalar>>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub arity: usize,
    #[serde(default)]
    pub degree: i32,
    pub action: GeneratorAction,
}

impl GeneratorSpec {
    pub fn new(name: &str, action: &str) -> Self {
        GeneratorSpec {
            name: name.into(),
            arity: 2,
            degree: 0,
            action: GeneratorAction::Named(action.into()),
        }
    }

    /// Matrix of the transposition on the generator's span, row-major
    /// `m[h][k]` = coefficient of basis `h` in `(basis k)·(12)`.
    fn swap_matrix(&self) -> Result<Vec<Vec<Scalar>>> {
        let (o, z, m) = (Scalar::one(), Scalar::zero(), Scalar::from_int(-1));
        let mat = match &self.action {
            GeneratorAction::Named(s) => match s.as_str() {
                "regular" => vec![vec![z.clone(), o.clone()], vec![o, z]],
                "trivial" => vec![vec![o]],
                "sign" => vec![vec![m]],
                other => return Err(Error::Invalid(format!("unknown action `{other}`"))),
            },
            GeneratorAction::Matrices(list) => {
                if list.len() != 1 {
                    return Err(Error::Invalid(format!(
                        "generator `{}` needs exactly one matrix for Σ_2",
                        self.name
                    )));
                }
                list[0].clone()
            }
        };
        let d = mat.len();
        if d == 0 || mat.iter().any(|r| r.len() != d) {
            return Err(Error::Invalid(format!("action of `{}` is not a square matrix", self.name)));
        }
        for i in 0..d {
            for j in 0..d {
                let mut s = Scalar::zero();
                for k in 0..d {
                    s += &(&mat[i][k] * &mat[k][j]);
                }
                if s != Scalar::from_int(i64::from(i == j)) {
                    return Err(Error::Invalid(format!(
                        "action of `{}` does not square to the identity",
                        self.name
                    )));
                }
            }
        }
        Ok(mat)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTerm {
    pub tree: String,
    pub coeff: Scalar,
}

/// Binary quadratic presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub relations: Vec<Vec<RelationTerm>>,
}

fn rel(terms: &[(&str, i64)]) -> Vec<RelationTerm> {
    terms
        .iter()
        .map(|(t, c)| RelationTerm {
            tree: t.to_string(),
            coeff: Scalar::from_int(*c),
        })
        .collect()
}

impl Presentation {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("presentation serializes")
    }

    pub fn ass() -> Self {
        Presentation {
            name: Some("Ass".into()),
            generators: vec![GeneratorSpec::new("mu", "regular")],
            relations: vec![rel(&[("mu(mu(1,2),3)", 1), ("mu(1,mu(2,3))", -1)])],
        }
    }

    pub fn com() -> Self {
        Presentation {
            name: Some("Com".into()),
            generators: vec![GeneratorSpec::new("mu", "trivial")],
            relations: vec![rel(&[("mu(mu(1,2),3)", 1), ("mu(1,mu(2,3))", -1)])],
        }
    }

    pub fn lie() -> Self {
        Presentation {
            name: Some("Lie".into()),
            generators: vec![GeneratorSpec::new("lambda", "sign")],
            relations: vec![rel(&[
                ("lambda(lambda(1,2),3)", 1),
                ("lambda(lambda(2,3),1)", 1),
                ("lambda(lambda(3,1),2)", 1),
            ])],
        }
    }

    pub fn pre_lie() -> Self {
        Presentation {
            name: Some("preLie".into()),
            generators: vec![GeneratorSpec::new("mu", "regular")],
            relations: vec![rel(&[
                ("mu(mu(1,2),3)", 1),
                ("mu(1,mu(2,3))", -1),
                ("mu(mu(1,3),2)", -1),
                ("mu(1,mu(3,2))", 1),
            ])],
        }
    }

    pub fn sym() -> Self {
        Presentation {
            name: Some("Sym".into()),
            generators: vec![GeneratorSpec::new("mu", "trivial")],
            relations: vec![],
        }
    }

    pub fn mag() -> Self {
        Presentation {
            name: Some("Mag".into()),
            generators: vec![GeneratorSpec::new("mu", "regular")],
            relations: vec![],
        }
    }

    pub fn d() -> Self {
        Presentation {
            name: Some("D".into()),
            generators: vec![GeneratorSpec::new("mu", "regular"), GeneratorSpec::new("nu", "regular")],
            relations: vec![
                rel(&[("mu(mu(1,2),3)", 1), ("mu(1,mu(2,3))", -1)]),
                rel(&[("nu(nu(1,2),3)", 1), ("nu(1,nu(2,3))", -1)]),
            ],
        }
    }

    /// Generator basis: for each generator `(name, offset, swap matrix)`.
    fn generator_basis(&self) -> Result<GeneratorBasis> {
        let mut names = Vec::new();
        let mut swap: Vec<Vec<(usize, Scalar)>> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for g in &self.generators {
            if !seen.insert(g.name.clone()) {
                return Err(Error::Invalid(format!("duplicate generator `{}`", g.name)));
            }
            if g.arity != 2 {
                return Err(Error::Unsupported(format!(
                    "generator `{}` has arity {}; only binary generators are supported",
                    g.name, g.arity
                )));
            }
            if g.degree != 0 {
                return Err(Error::Unsupported(format!(
                    "generator `{}` has degree {}; only degree 0 is supported",
                    g.name, g.degree
                )));
            }
            let m = g.swap_matrix()?;
            let off = names.len();
            for k in 0..m.len() {
                names.push(if k == 0 {
                    g.name.clone()
                } else {
                    format!("{}.{k}", g.name)
                });
                swap.push(
                    (0..m.len())
                        .filter(|&h| !m[h][k].is_zero())
                        .map(|h| (off + h, m[h][k].clone()))
                        .collect(),
                );
            }
        }
        if names.len() > 120 {
            return Err(Error::ResourceBound("too many generator basis elements".into()));
        }
        Ok(GeneratorBasis { names, swap })
    }
}

#[derive(Clone, Debug)]
struct GeneratorBasis {
    names: Vec<String>,
    swap: Vec<Vec<(usize, Scalar)>>,
}

impl GeneratorBasis {
    fn lookup(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Canonical form of a tree as a combination of canonical trees.
    fn canonicalize(&self, t: &Tree) -> Vec<(Tree, Scalar)> {
        match t {
            Tree::Leaf(l) => vec![(Tree::Leaf(*l), Scalar::one())],
            Tree::Node(g, ch) => {
                let cl = self.canonicalize(&ch[0]);
                let cr = self.canonicalize(&ch[1]);
                let swapped = ch[0].min_leaf() > ch[1].min_leaf();
                let mut out = Vec::new();
                for (a, ca) in &cl {
                    for (b, cb) in &cr {
                        let c = ca * cb;
                        if swapped {
                            for (h, m) in &self.swap[*g] {
                                out.push((Tree::Node(*h, vec![b.clone(), a.clone()]), &c * m));
                            }
                        } else {
                            out.push((Tree::Node(*g, vec![a.clone(), b.clone()]), c));
                        }
                    }
                }
                out
            }
        }
    }
}

/// Free operad on binary generators, truncated at `cap`.
#[derive(Clone, Debug)]
pub struct FreeOperad {
    cap: usize,
    name: String,
    gens: GeneratorBasis,
    codes: Vec<Vec<Vec<u8>>>,
    index: Vec<HashMap<Vec<u8>, usize>>,
}

/// Upper bound on the number of tree monomials enumerated per arity.
pub const FREE_DIM_LIMIT: usize = 400_000;

pub fn free_operad(gens: &[GeneratorSpec], cap: usize) -> Result<Operad> {
    let p = Presentation {
        name: None,
        generators: gens.to_vec(),
        relations: vec![],
    };
    Ok(Operad::new(FreeOperad::new(&p, cap)?))
}

impl FreeOperad {
    pub fn new(p: &Presentation, cap: usize) -> Result<Self> {
        check_cap(cap)?;
        let gens = p.generator_basis()?;
        let g = gens.names.len();
        let mut count: usize = 1;
        for n in 2..=cap {
            count = count.saturating_mul((2 * n - 3) * g);
            if count > FREE_DIM_LIMIT {
                return Err(Error::ResourceBound(format!(
                    "free operad has more than {FREE_DIM_LIMIT} monomials in arity {n}"
                )));
            }
        }
        let mut codes = vec![Vec::new()];
        let mut index = vec![HashMap::new()];
        for n in 1..=cap {
            let leaves: Vec<usize> = (1..=n).collect();
            let trees = enumerate(&leaves, g);
            let c: Vec<Vec<u8>> = trees
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
        Ok(FreeOperad {
            cap,
            name: p.name.clone().unwrap_or_else(|| "Free".into()),
            gens,
            codes,
            index,
        })
    }

    pub fn tree(&self, n: usize, b: usize) -> Tree {
        Tree::decode(&self.codes[n][b], &mut 0)
    }

    pub fn generator_names(&self) -> &[String] {
        &self.gens.names
    }

    pub fn index_of(&self, t: &Tree) -> usize {
        let mut code = Vec::new();
        t.encode(&mut code);
        self.index[t.arity()][&code]
    }

    /// Vector of an arbitrary (not necessarily canonical) tree.
    pub fn vector_of(&self, t: &Tree) -> Result<SparseVec> {
        let n = t.arity();
        if n == 0 || n > self.cap {
            return Err(Error::Invalid(format!("tree arity {n} outside 1..={}", self.cap)));
        }
        let mut leaves = Vec::new();
        t.leaves(&mut leaves);
        let mut sorted = leaves.clone();
        sorted.sort_unstable();
        if sorted != (1..=n).collect::<Vec<_>>() {
            return Err(Error::Invalid(format!("tree leaves {leaves:?} are not 1..{n}")));
        }
        check_binary(t)?;
        Ok(SparseVec::from_entries(
            self.gens
                .canonicalize(t)
                .into_iter()
                .map(|(c, x)| (self.index_of(&c), x))
                .collect(),
        ))
    }

    pub fn parse(&self, s: &str) -> Result<SparseVec> {
        let t = parse_tree(s, &|name| self.gens.lookup(name))?;
        self.vector_of(&t)
    }
}

fn check_binary(t: &Tree) -> Result<()> {
    match t {
        Tree::Leaf(_) => Ok(()),
        Tree::Node(_, ch) if ch.len() == 2 => ch.iter().try_for_each(check_binary),
        Tree::Node(_, ch) => Err(Error::Invalid(format!("vertex with {} inputs on a binary generator", ch.len()))),
    }
}

fn enumerate(leaves: &[usize], g: usize) -> Vec<Tree> {
    if leaves.len() == 1 {
        return vec![Tree::Leaf(leaves[0])];
    }
    let rest = &leaves[1..];
    let mut out = Vec::new();
    // subsets of `rest` joining the minimum on the left; the right side is nonempty
    for mask in 0u32..(1 << rest.len()) - 1 {
        let mut left = vec![leaves[0]];
        let mut right = Vec::new();
        for (k, &l) in rest.iter().enumerate() {
            if mask & (1 << k) != 0 {
                left.push(l);
            } else {
                right.push(l);
            }
        }
        let lt = enumerate(&left, g);
        let rt = enumerate(&right, g);
        for h in 0..g {
            for a in &lt {
                for b in &rt {
                    out.push(Tree::Node(h, vec![a.clone(), b.clone()]));
                }
            }
        }
    }
    out
}

impl OperadModel for FreeOperad {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn cap(&self) -> usize {
        self.cap
    }
    fn dim(&self, n: usize) -> usize {
        self.codes.get(n).map_or(0, |c| c.len())
    }
    fn label(&self, n: usize, b: usize) -> String {
        self.tree(n, b).render(&self.gens.names)
    }
    fn compose(&self, m: usize, a: usize, i: usize, n: usize, b: usize) -> SparseVec {
        let outer = self.tree(m, a).relabel(&|l| if l > i { l + n - 1 } else { l });
        let inner = self.tree(n, b).relabel(&|l| l + i - 1);
        SparseVec::unit(self.index_of(&outer.graft(i, &inner)))
    }
    fn act(&self, n: usize, b: usize, sigma: &Perm) -> SparseVec {
        let inv = sigma.inverse();
        let t = self.tree(n, b).relabel(&|l| inv.apply(l));
        SparseVec::from_entries(
            self.gens
                .canonicalize(&t)
                .into_iter()
                .map(|(c, x)| (self.index_of(&c), x))
                .collect(),
        )
    }
    fn monomial(&self) -> bool {
        self.gens.swap.iter().all(|s| s.len() == 1)
    }
}

/// Quotient of a free operad by the operadic ideal generated by relations.
pub struct PresentedOperad {
    free: FreeOperad,
    presentation: Presentation,
    /// Per arity: reduced rows of the ideal, keyed by pivot column.
    ideal: Vec<HashMap<usize, SparseVec>>,
    basis: Vec<Vec<usize>>,
    position: Vec<HashMap<usize, usize>>,
}

pub fn presented_operad(p: &Presentation, cap: usize) -> Result<Operad> {
    Ok(Operad::new(PresentedOperad::new(p, cap)?))
}

impl PresentedOperad {
    pub fn new(p: &Presentation, cap: usize) -> Result<Self> {
        let free = FreeOperad::new(p, cap)?;
        let free_op = Operad::new(free.clone());
        let mut rel_vecs = Vec::new();
        for r in &p.relations {
            let mut v = SparseVec::new();
            for term in r {
                let t = parse_tree(&term.tree, &|name| free.gens.lookup(name))?;
                if t.arity() != 3 {
                    return Err(Error::Invalid(format!(
                        "relation term `{}` is not quadratic (arity {})",
                        term.tree,
                        t.arity()
                    )));
                }
                v = v.add_scaled(&free.vector_of(&t)?, &term.coeff);
            }
            if !v.is_zero() {
                rel_vecs.push(v);
            }
        }
        let gens_count = free.gens.names.len();
        let mut ideal_rows: Vec<Vec<SparseVec>> = vec![Vec::new(); cap + 1];
        for n in 3..=cap {
            let mut seeds = Vec::new();
            if n == 3 {
                seeds = rel_vecs.clone();
            } else {
                for x in &ideal_rows[n - 1] {
                    for g in 0..gens_count {
                        let gv = SparseVec::unit(g);
                        for j in 1..n {
                            seeds.push(free_op.compose_vec(n - 1, x, j, 2, &gv));
                        }
                        for j in 1..=2 {
                            seeds.push(free_op.compose_vec(2, &gv, j, n - 1, x));
                        }
                    }
                }
            }
            ideal_rows[n] = sigma_closure(&free_op, n, seeds);
        }
        let mut ideal = vec![HashMap::new(); cap + 1];
        let mut basis = vec![Vec::new(); cap + 1];
        let mut position = vec![HashMap::new(); cap + 1];
        for n in 1..=cap {
            for r in &ideal_rows[n] {
                ideal[n].insert(r.entries()[0].0, r.clone());
            }
            basis[n] = (0..free.dim(n)).filter(|c| !ideal[n].contains_key(c)).collect();
            position[n] = basis[n].iter().enumerate().map(|(k, &c)| (c, k)).collect();
        }
        if basis[1].len() != 1 {
            return Err(Error::Invalid("presentation kills the unit".into()));
        }
        Ok(PresentedOperad {
            free,
            presentation: p.clone(),
            ideal,
            basis,
            position,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn free(&self) -> &FreeOperad {
        &self.free
    }

    /// Image in the quotient of a vector of the free operad.
    pub fn reduce(&self, n: usize, v: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        let mut acc = SparseVec::new();
        for (c, x) in v.entries() {
            match self.ideal[n].get(c) {
                Some(row) => acc = acc.add_scaled(&SparseVec::from_entries(row.entries()[1..].to_vec()), &-x),
                None => out.push((*c, x.clone())),
            }
        }
        SparseVec::from_entries(out)
            .add(&acc)
            .map_indices(|c| self.position[n][&c])
    }

    pub fn parse(&self, s: &str) -> Result<SparseVec> {
        let v = self.free.parse(s)?;
        let n = parse_tree(s, &|name| self.free.gens.lookup(name))?.arity();
        Ok(self.reduce(n, &v))
    }
}

/// Reduced basis of the `Σ_n`-submodule generated by `seeds`.
fn sigma_closure(op: &Operad, n: usize, seeds: Vec<SparseVec>) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    let mut queue = Vec::new();
    for s in seeds {
        if e.insert(&s) {
            queue.push(s);
        }
    }
    let gens = Perm::generators(n);
    while let Some(v) = queue.pop() {
        for g in &gens {
            let w = op.act_vec(n, &v, g);
            if e.insert(&w) {
                queue.push(w);
            }
        }
    }
    e.into_rref()
}

impl OperadModel for PresentedOperad {
    fn name(&self) -> String {
        self.free.name.clone()
    }
    fn cap(&self) -> usize {
        self.free.cap
    }
    fn dim(&self, n: usize) -> usize {
        self.basis.get(n).map_or(0, |b| b.len())
    }
    fn label(&self, n: usize, b: usize) -> String {
        self.free.label(n, self.basis[n][b])
    }
    fn compose(&self, m: usize, a: usize, i: usize, n: usize, b: usize) -> SparseVec {
        let v = self.free.compose(m, self.basis[m][a], i, n, self.basis[n][b]);
        self.reduce(m + n - 1, &v)
    }
    fn act(&self, n: usize, b: usize, sigma: &Perm) -> SparseVec {
        let v = self.free.act(n, self.basis[n][b], sigma);
        self.reduce(n, &v)
    }
}

/// Quadratic dual presentation.
///
/// Dual generators carry the transposed action twisted by the sign. The
/// weight-two monomials of both free operads are paired diagonally, with
/// sign `+1` on `g(h(1,2),3)` and `−1` on `g(1,h(2,3))` and `g(h(1,3),2)`. Dual relations are the annihilator of the
/// `Σ_3`-module spanned by the relations.
pub fn quadratic_dual(p: &Presentation) -> Result<Presentation> {
    let free = FreeOperad::new(p, 3)?;
    let free_op = Operad::new(free.clone());
    let mut dual_gens = Vec::new();
    for g in &p.generators {
        let m = g.swap_matrix()?;
        let d = m.len();
        let twisted: Vec<Vec<Scalar>> = (0..d).map(|h| (0..d).map(|k| -&m[k][h]).collect()).collect();
        dual_gens.push(GeneratorSpec {
            name: format!("{}_dual", g.name),
            arity: 2,
            degree: 0,
            action: GeneratorAction::Matrices(vec![twisted]),
        });
    }
    let dual_p = Presentation {
        name: p.name.as_ref().map(|n| format!("{n}!")),
        generators: dual_gens,
        relations: vec![],
    };
    let dual_free = FreeOperad::new(&dual_p, 3)?;
    let mut seeds = Vec::new();
    for r in &p.relations {
        let mut v = SparseVec::new();
        for term in r {
            v = v.add_scaled(&free.parse(&term.tree)?, &term.coeff);
        }
        seeds.push(v);
    }
    let span = sigma_closure(&free_op, 3, seeds);
    let pairing_sign = |t: &Tree| -> Scalar {
        match t {
            Tree::Node(_, ch) if matches!(ch[0], Tree::Leaf(1)) || matches!(ch[1], Tree::Leaf(2)) => {
                Scalar::from_int(-1)
            }
            Tree::Node(..) => Scalar::one(),
            _ => unreachable!(),
        }
    };
    // The bases of both free operads list the same shapes in the same order.
    let dim = free.dim(3);
    let rows: Vec<SparseVec> = span
        .iter()
        .map(|r| {
            SparseVec::from_entries(
                r.entries()
                    .iter()
                    .map(|(k, x)| (*k, x * &pairing_sign(&free.tree(3, *k))))
                    .collect(),
            )
        })
        .collect();
    let ann = nullspace(&rows, dim);
    let names = dual_free.generator_names().to_vec();
    let relations = ann
        .iter()
        .map(|v| {
            v.entries()
                .iter()
                .map(|(k, x)| RelationTerm {
                    tree: dual_free.tree(3, *k).render(&names),
                    coeff: x.clone(),
                })
                .collect()
        })
        .collect();
    Ok(Presentation {
        relations,
        ..dual_p
    })
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operads::check_axioms;

    fn dims(p: &Presentation, cap: usize) -> Vec<usize> {
        presented_operad(p, cap).unwrap().dims()
    }

    #[test]
    fn free_counts() {
        let planar_like = free_operad(&[GeneratorSpec::new("mu", "trivial")], 5).unwrap();
        assert_eq!(planar_like.dims(), vec![1, 1, 3, 15, 105]);
        let mag = free_operad(&[GeneratorSpec::new("mu", "regular")], 4).unwrap();
        assert_eq!(mag.dim(3), 12);
        assert_eq!(mag.dim(4), 120);
    }

    #[test]
    fn free_axioms() {
        let f = free_operad(&[GeneratorSpec::new("mu", "regular")], 4).unwrap();
        check_axioms(&f, 4, Some((4, 9))).unwrap();
        let s = free_operad(&[GeneratorSpec::new("l", "sign")], 4).unwrap();
        check_axioms(&s, 4, None).unwrap();
    }

    #[test]
    fn presented_catalog_dims() {
        assert_eq!(dims(&Presentation::ass(), 5), vec![1, 2, 6, 24, 120]);
        assert_eq!(dims(&Presentation::com(), 5), vec![1, 1, 1, 1, 1]);
        assert_eq!(dims(&Presentation::lie(), 5), vec![1, 1, 2, 6, 24]);
        assert_eq!(dims(&Presentation::pre_lie(), 5), vec![1, 2, 9, 64, 625]);
        assert_eq!(dims(&Presentation::d(), 3), vec![1, 4, 36]);
    }

    #[test]
    fn presented_axioms() {
        let lie = presented_operad(&Presentation::lie(), 4).unwrap();
        check_axioms(&lie, 4, None).unwrap();
        let pl = presented_operad(&Presentation::pre_lie(), 4).unwrap();
        check_axioms(&pl, 4, Some((4, 5))).unwrap();
    }

    #[test]
    fn parse_errors() {
        let f = FreeOperad::new(&Presentation::ass(), 3).unwrap();
        assert!(f.parse("mu(mu(1,2),3").is_err());
        assert!(f.parse("nu(1,2)").is_err());
        assert!(f.parse("mu(1,1)").is_err());
        assert_eq!(f.parse("mu(2,1)").unwrap(), f.parse("mu.1(1,2)").unwrap());
    }

    #[test]
    fn json_roundtrip_and_rejections() {
        let p = Presentation::lie();
        assert_eq!(Presentation::from_json(&p.to_json()).unwrap(), p);
        let ternary = r#"{"generators":[{"name":"t","arity":3,"degree":0,"action":"trivial"}],"relations":[]}"#;
        let t = Presentation::from_json(ternary).unwrap();
        assert!(matches!(presented_operad(&t, 3), Err(Error::Unsupported(_))));
        let bad = r#"{"generators":[{"name":"m","arity":2,"action":[[["1","1"],["0","1"]]]}]}"#;
        assert!(presented_operad(&Presentation::from_json(bad).unwrap(), 3).is_err());
    }

    #[test]
    fn quadratic_duals() {
        let ass_dual = quadratic_dual(&Presentation::ass()).unwrap();
        assert_eq!(dims(&ass_dual, 4), vec![1, 2, 6, 24]);
        let com_dual = quadratic_dual(&Presentation::com()).unwrap();
        assert_eq!(dims(&com_dual, 4), vec![1, 1, 2, 6]);
        let lie_dual = quadratic_dual(&Presentation::lie()).unwrap();
        assert_eq!(dims(&lie_dual, 4), vec![1, 1, 1, 1]);
        let sym_dual = quadratic_dual(&Presentation::sym()).unwrap();
        let sd = presented_operad(&sym_dual, 3).unwrap();
        assert_eq!(sd.dims(), vec![1, 1, 0]);
        let t = Perm::transposition(2, 1);
        assert_eq!(sd.act(2, 0, &t), SparseVec::single(0, Scalar::from_int(-1)));
    }
}
