//! Finite-dimensional algebras over an operad and the structure map
//! `α : P → End_A`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::operads::catalog::catalog;
use crate::operads::{
    presented_operad, quadratic_dual, EndOperad, FreeOperad, Operad, OperadModel, Pairing, Presentation,
    PresentedOperad,
};
use crate::perm::Perm;
use crate::scalar::Scalar;

/// Catalog name or an explicit presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperadRef {
    Name(String),
    Presentation(Presentation),
}

/// `structure[g][i][j][k]` is the coefficient of `e_k` in `g(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PAlgebra {
    pub operad: OperadRef,
    pub dim: usize,
    pub structure: BTreeMap<String, Vec<Vec<Vec<Scalar>>>>,
}

impl PAlgebra {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("algebra serializes")
    }

    pub fn new(operad: &str, dim: usize) -> Self {
        PAlgebra {
            operad: OperadRef::Name(operad.to_string()),
            dim,
            structure: BTreeMap::new(),
        }
    }

    /// Adds a product from a closure `(i, j) ↦ g(e_i, e_j)` as dense coordinates.
    pub fn with_product(mut self, name: &str, f: impl Fn(usize, usize) -> Vec<i64>) -> Self {
        let d = self.dim;
        let table = (0..d)
            .map(|i| (0..d).map(|j| f(i, j).into_iter().map(Scalar::from_int).collect()).collect())
            .collect();
        self.structure.insert(name.to_string(), table);
        self
    }

    /// Same algebra written in the basis `e'_j = Σ_i g[i][j] e_i`; `g` must be
    /// invertible with inverse `ginv`.
    pub fn transport(&self, g: &[Vec<Scalar>], ginv: &[Vec<Scalar>]) -> PAlgebra {
        let d = self.dim;
        let mut out = self.clone();
        for (name, t) in &self.structure {
            let mut nt = vec![vec![vec![Scalar::zero(); d]; d]; d];
            for (a, row) in nt.iter_mut().enumerate() {
                for (b, cell) in row.iter_mut().enumerate() {
                    // g(e'_a, e'_b) = Σ g[i][a] g[j][b] t[i][j][k] e_k, then back to e'
                    let mut v = vec![Scalar::zero(); d];
                    for i in 0..d {
                        if g[i][a].is_zero() {
                            continue;
                        }
                        for j in 0..d {
                            let c = &g[i][a] * &g[j][b];
                            if c.is_zero() {
                                continue;
                            }
                            for k in 0..d {
                                v[k] += &(&c * &t[i][j][k]);
                            }
                        }
                    }
                    for (l, x) in cell.iter_mut().enumerate() {
                        for (k, vk) in v.iter().enumerate() {
                            *x += &(&ginv[l][k] * vk);
                        }
                    }
                }
            }
            out.structure.insert(name.clone(), nt);
        }
        out
    }
}

/// Rows `(x, y)` in echelon form on the `x` part; solves for the linear map
/// with `x ↦ y`.
#[derive(Default)]
pub struct LinearExtension {
    rows: Vec<(SparseVec, SparseVec)>,
    pivots: BTreeMap<usize, usize>,
}

impl LinearExtension {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut x: SparseVec, mut y: SparseVec) -> (SparseVec, SparseVec) {
        while let Some((p, c)) = x
            .entries()
            .iter()
            .find(|(i, _)| self.pivots.contains_key(i))
            .cloned()
        {
            let (rx, ry) = &self.rows[self.pivots[&p]];
            x = x.add_scaled(rx, &-c.clone());
            y = y.add_scaled(ry, &-c);
        }
        (x, y)
    }

    /// `Σ c_i y_i` when `x = Σ c_i x_i`, `None` outside the span.
    pub fn express(&self, x: &SparseVec) -> Option<SparseVec> {
        let (r, y) = self.reduce(x.clone(), SparseVec::new());
        r.is_zero().then(|| y.scale(&Scalar::from_int(-1)))
    }

    /// Inserts the row, or returns the nonzero residual of `y` when `x` is
    /// already in the span but the values disagree.
    pub fn insert_or_residual(&mut self, x: &SparseVec, y: &SparseVec) -> Option<SparseVec> {
        let (rx, ry) = self.reduce(x.clone(), y.clone());
        match rx.leading().cloned() {
            None => (!ry.is_zero()).then_some(ry),
            Some((p, c)) => {
                let inv = c.recip();
                self.pivots.insert(p, self.rows.len());
                self.rows.push((rx.scale(&inv), ry.scale(&inv)));
                None
            }
        }
    }

    /// Returns whether the row was new; a dependent row must map to zero.
    pub fn insert(&mut self, x: &SparseVec, y: &SparseVec) -> Result<bool> {
        let (x, y) = self.reduce(x.clone(), y.clone());
        match x.leading().cloned() {
            None if y.is_zero() => Ok(false),
            None => Err(Error::RelationViolated(
                "the prescribed values are not compatible with the linear relations of the source".into(),
            )),
            Some((p, c)) => {
                let inv = c.recip();
                self.pivots.insert(p, self.rows.len());
                self.rows.push((x.scale(&inv), y.scale(&inv)));
                Ok(true)
            }
        }
    }

    /// Images of the basis vectors `0..dim`; fails unless they are all determined.
    pub fn solve(&self, dim: usize) -> Result<Vec<SparseVec>> {
        if self.rank() < dim {
            return Err(Error::Invalid(format!(
                "structure determines only {} of {dim} basis images",
                self.rank()
            )));
        }
        let mut out: Vec<Option<SparseVec>> = vec![None; dim];
        let mut order: Vec<usize> = self.pivots.keys().copied().collect();
        order.reverse();
        for p in order {
            let (x, y) = &self.rows[self.pivots[&p]];
            let mut v = y.clone();
            for (i, c) in x.entries() {
                if *i != p {
                    v = v.add_scaled(out[*i].as_ref().expect("higher pivots solved first"), &-c.clone());
                }
            }
            out[p] = Some(v);
        }
        Ok(out.into_iter().map(|v| v.expect("full rank")).collect())
    }
}

/// Extends a morphism given on arities `< n` to arity `n` of a binary
/// generated operad, using compositions with arity 2 and the action.
pub(crate) fn extend_morphism(
    src: &Operad,
    tgt: &Operad,
    lower: &BTreeMap<usize, Vec<SparseVec>>,
    n: usize,
) -> Result<Vec<SparseVec>> {
    let dim = src.dim(n);
    let mut ext = LinearExtension::default();
    let mut queue = Vec::new();
    let (m, k) = (n - 1, 2);
    for a in 0..src.dim(m) {
        for i in 1..=m {
            for b in 0..src.dim(k) {
                if ext.rank() == dim {
                    break;
                }
                let x = src.compose(m, a, i, k, b);
                let y = tgt.compose_vec(m, &lower[&m][a], i, k, &lower[&k][b]);
                if ext.insert(&x, &y)? {
                    queue.push((x, y));
                }
            }
        }
    }
    if src.symmetric() {
        let gens = Perm::generators(n);
        while ext.rank() < dim {
            let Some((x, y)) = queue.pop() else { break };
            for g in &gens {
                let (gx, gy) = (src.act_vec(n, &x, g), tgt.act_vec(n, &y, g));
                if ext.insert(&gx, &gy)? {
                    queue.push((gx, gy));
                }
            }
        }
    }
    ext.solve(dim)
}

/// An algebra with its operad data resolved and validated.
pub struct AlgebraStructure {
    pub algebra: PAlgebra,
    pub operad_name: String,
    pub operad: Operad,
    pub dual: Operad,
    pub pairing: Pairing,
    pub end: Operad,
    /// `α` on the bases of `P(1..=cap)`.
    alpha: BTreeMap<usize, Vec<SparseVec>>,
}

fn end_element(d: usize, table: &[Vec<Vec<Scalar>>]) -> Result<SparseVec> {
    if table.len() != d || table.iter().any(|r| r.len() != d || r.iter().any(|c| c.len() != d)) {
        return Err(Error::Invalid(format!("structure table must be {d}×{d}×{d}")));
    }
    let mut entries = Vec::new();
    for (i, row) in table.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            for (k, c) in cell.iter().enumerate() {
                if !c.is_zero() {
                    // E[k; i, j]
                    entries.push(((k * d + i) * d + j, c.clone()));
                }
            }
        }
    }
    Ok(SparseVec::from_entries(entries))
}

/// Renders an `End_A(n)` basis element for error messages.
fn end_witness(d: usize, n: usize, idx: usize) -> String {
    let mut ins = vec![0; n];
    let mut r = idx;
    for k in (0..n).rev() {
        ins[k] = r % d;
        r /= d;
    }
    let ins: Vec<String> = ins.iter().map(|x| format!("e{x}")).collect();
    format!("coefficient of e{r} on ({})", ins.join(", "))
}

impl AlgebraStructure {
    pub fn new(algebra: &PAlgebra, cap: usize) -> Result<Self> {
        let d = algebra.dim;
        if d == 0 {
            return Err(Error::Invalid("algebra dimension must be positive".into()));
        }
        let end = Operad::new(EndOperad::ungraded(d, cap)?);
        // generator basis names with their vectors in P(2)
        let (name, operad, dual, pairing, presentation, gens): (String, Operad, Operad, Pairing, Presentation, Vec<(String, SparseVec)>) =
            match &algebra.operad {
                OperadRef::Name(n) => {
                    let e = catalog(n, cap)?;
                    let dual = e.dual_or_err()?.clone();
                    let pairing = e.pairing_or_err()?.clone();
                    (e.name.clone(), e.operad.clone(), dual, pairing, e.presentation.clone(), e.generators.clone())
                }
                OperadRef::Presentation(p) => {
                    let op = PresentedOperad::new(p, cap)?;
                    let names = op.free().generator_names().to_vec();
                    let gens = names
                        .iter()
                        .map(|g| Ok((g.clone(), op.parse(&format!("{g}(1,2)"))?)))
                        .collect::<Result<Vec<_>>>()?;
                    let dual = presented_operad(&quadratic_dual(p)?, cap)?;
                    let pairing = Pairing::diagonal(&vec![1; op.dim(2)]);
                    let label = p.name.clone().unwrap_or_else(|| "presented".into());
                    (label, Operad::new(op), dual, pairing, p.clone(), gens)
                }
            };
        for key in algebra.structure.keys() {
            if !presentation.generators.iter().any(|g| &g.name == key) && !gens.iter().any(|(g, _)| g == key) {
                return Err(Error::Invalid(format!("structure names unknown generator `{key}`")));
            }
        }
        let fm = FreeOperad::new(&presentation, 3)?;
        let relations = presentation
            .relations
            .iter()
            .map(|rel| {
                let mut v = SparseVec::new();
                for term in rel {
                    v = v.add_scaled(&fm.parse(&term.tree)?, &term.coeff);
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        let free = Operad::new(FreeOperad::new(&presentation, 3)?);
        // α on the free operad in arity 2, propagated along Σ_2
        let mut ext = LinearExtension::default();
        for (key, table) in &algebra.structure {
            let x = fm.parse(&format!("{key}(1,2)"))?;
            let y = end_element(d, table)?;
            for s in Perm::all(2) {
                ext.insert(&free.act_vec(2, &x, &s), &end.act_vec(2, &y, &s)).map_err(|_| {
                    Error::RelationViolated(format!(
                        "structure of `{key}` does not have the symmetry of the generator"
                    ))
                })?;
            }
        }
        let mut free_alpha = BTreeMap::new();
        free_alpha.insert(1, vec![end.unit()]);
        free_alpha.insert(2, ext.solve(free.dim(2)).map_err(|_| {
            Error::Invalid("structure does not specify every generator".into())
        })?);
        if !relations.is_empty() {
            let end3 = Operad::new(EndOperad::ungraded(d, 3)?);
            free_alpha.insert(3, extend_morphism(&free, &end3, &free_alpha, 3)?);
            for (r, v) in relations.iter().enumerate() {
                let image = apply(&free_alpha[&3], v);
                if let Some((idx, c)) = image.leading() {
                    return Err(Error::RelationViolated(format!(
                        "relation {r} evaluates to {c} as the {}",
                        end_witness(d, 3, *idx)
                    )));
                }
            }
        }
        // α on P(2) through the generators
        let mut ext = LinearExtension::default();
        let perms: Vec<Perm> = if operad.symmetric() { Perm::all(2).collect() } else { vec![Perm::identity(2)] };
        for (g, v) in &gens {
            let y = apply(&free_alpha[&2], &fm.parse(&format!("{g}(1,2)"))?);
            for s in &perms {
                ext.insert(&operad.act_vec(2, v, s), &end.act_vec(2, &y, s))?;
            }
        }
        let mut alpha = BTreeMap::new();
        alpha.insert(1, vec![end.unit()]);
        alpha.insert(2, ext.solve(operad.dim(2))?);
        for n in 3..=cap {
            let a = extend_morphism(&operad, &end, &alpha, n)?;
            alpha.insert(n, a);
        }
        Ok(AlgebraStructure {
            algebra: algebra.clone(),
            operad_name: name,
            operad,
            dual,
            pairing,
            end,
            alpha,
        })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim
    }

    pub fn cap(&self) -> usize {
        self.end.cap()
    }

    /// `α(x)` for `x ∈ P(n)`.
    pub fn alpha(&self, n: usize, x: &SparseVec) -> SparseVec {
        apply(&self.alpha[&n], x)
    }
}

pub(crate) fn apply(images: &[SparseVec], x: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (i, c) in x.entries() {
        out = out.add_scaled(&images[*i], c);
    }
    out
}

/// `validate_algebra`: resolves the operad and checks every relation on `A`.
pub fn validate_algebra(algebra: &PAlgebra) -> Result<()> {
    AlgebraStructure::new(algebra, 3).map(|_| ())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn dual_numbers(op: &str) -> PAlgebra {
        PAlgebra::new(op, 2).with_product("mu", |i, j| match (i, j) {
            (0, 0) => vec![1, 0],
            (0, 1) | (1, 0) => vec![0, 1],
            _ => vec![0, 0],
        })
    }

    #[test]
    fn dual_numbers_are_associative_and_commutative() {
        validate_algebra(&dual_numbers("Ass")).unwrap();
        validate_algebra(&dual_numbers("Com")).unwrap();
        validate_algebra(&PAlgebra::new("Ass", 1).with_product("mu", |_, _| vec![1])).unwrap();
    }

    #[test]
    fn non_associative_table_is_rejected() {
        let a = PAlgebra::new("Ass", 2).with_product("mu", |i, j| match (i, j) {
            (0, 0) => vec![0, 1],
            (1, 1) => vec![1, 0],
            _ => vec![0, 0],
        });
        let err = validate_algebra(&a).unwrap_err();
        assert!(matches!(err, Error::RelationViolated(ref s) if s.contains("on (e")), "{err}");
    }

    #[test]
    fn symmetry_of_generators_is_enforced() {
        let a = PAlgebra::new("Com", 2).with_product("mu", |i, j| if (i, j) == (0, 1) { vec![1, 0] } else { vec![0, 0] });
        assert!(matches!(validate_algebra(&a), Err(Error::RelationViolated(_))));
        let lie = PAlgebra::new("Lie", 2).with_product("lambda", |i, j| match (i, j) {
            (0, 1) => vec![0, 1],
            (1, 0) => vec![0, -1],
            _ => vec![0, 0],
        });
        validate_algebra(&lie).unwrap();
    }

    #[test]
    fn missing_generator_is_an_input_error() {
        let a = PAlgebra::new("D", 1).with_product("mu", |_, _| vec![1]);
        assert!(matches!(validate_algebra(&a), Err(Error::Invalid(_))));
        let b = PAlgebra::new("Ass", 1).with_product("nu", |_, _| vec![1]);
        assert!(matches!(validate_algebra(&b), Err(Error::Invalid(_))));
    }

    #[test]
    fn alpha_is_a_morphism_up_to_cap() {
        let s = AlgebraStructure::new(&dual_numbers("Ass"), 4).unwrap();
        let p = &s.operad;
        for (m, n) in [(2, 2), (3, 2), (2, 3)] {
            for a in 0..p.dim(m) {
                for b in 0..p.dim(n) {
                    for i in 1..=m {
                        let lhs = s.alpha(m + n - 1, &p.compose(m, a, i, n, b));
                        let rhs = s.end.compose_vec(m, &s.alpha(m, &SparseVec::unit(a)), i, n, &s.alpha(n, &SparseVec::unit(b)));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn presentation_operads_are_accepted() {
        let mut a = dual_numbers("Ass");
        a.operad = OperadRef::Presentation(Presentation::ass());
        let s = AlgebraStructure::new(&a, 3).unwrap();
        assert_eq!(s.operad.dims(), vec![1, 2, 6]);
        let json = a.to_json();
        assert_eq!(PAlgebra::from_json(&json).unwrap(), a);
    }

    #[test]
    fn transport_preserves_validity() {
        let g = vec![vec![Scalar::from_int(1), Scalar::from_int(1)], vec![Scalar::zero(), Scalar::from_int(1)]];
        let ginv = vec![vec![Scalar::from_int(1), Scalar::from_int(-1)], vec![Scalar::zero(), Scalar::from_int(1)]];
        let t = dual_numbers("Ass").transport(&g, &ginv);
        validate_algebra(&t).unwrap();
        assert_ne!(t, dual_numbers("Ass"));
    }
}
