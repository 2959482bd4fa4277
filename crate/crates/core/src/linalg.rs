//! Sparse exact linear algebra: vectors, maps between based spaces, ranks,
//! kernels and cohomology of finite cochain complexes.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::scalar::{factorial, int_gcd, Scalar};

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
#[derive(serde::Serialize)]
pub struct SparseVec(Vec<(usize, Scalar)>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(Vec::new())
    }

    pub fn unit(i: usize) -> Self {
        SparseVec(vec![(i, Scalar::one())])
    }

    pub fn single(i: usize, c: Scalar) -> Self {
        if c.is_zero() {
            SparseVec::new()
        } else {
            SparseVec(vec![(i, c)])
        }
    }

    /// Sums duplicate indices and drops zeros.
    pub fn from_entries(mut entries: Vec<(usize, Scalar)>) -> Self {
        entries.sort_by_key(|e| e.0);
        let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(entries.len());
        for (i, c) in entries {
            match out.last_mut() {
                Some((j, acc)) if *j == i => *acc += &c,
                _ => out.push((i, c)),
            }
        }
        out.retain(|e| !e.1.is_zero());
        SparseVec(out)
    }

    pub fn from_map(map: BTreeMap<usize, Scalar>) -> Self {
        SparseVec(map.into_iter().filter(|e| !e.1.is_zero()).collect())
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        SparseVec(
            values
                .iter()
                .enumerate()
                .filter(|e| !e.1.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        )
    }

    pub fn to_dense(&self, len: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); len];
        for (i, c) in &self.0 {
            out[*i] = c.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.0.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.0[k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn leading(&self) -> Option<&(usize, Scalar)> {
        self.0.first()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().map(|e| e.0)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec(self.0.iter().map(|(i, x)| (*i, x * c)).collect())
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, other: &SparseVec, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut p, mut q) = (0, 0);
        while p < a.len() || q < b.len() {
            if q == b.len() || (p < a.len() && a[p].0 < b[q].0) {
                out.push(a[p].clone());
                p += 1;
            } else if p == a.len() || b[q].0 < a[p].0 {
                out.push((b[q].0, &b[q].1 * c));
                q += 1;
            } else {
                let v = &a[p].1 + &(&b[q].1 * c);
                if !v.is_zero() {
                    out.push((a[p].0, v));
                }
                p += 1;
                q += 1;
            }
        }
        SparseVec(out)
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(other, &Scalar::one())
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(other, &Scalar::from_int(-1))
    }

    pub fn dot(&self, other: &SparseVec) -> Scalar {
        let (a, b) = (&self.0, &other.0);
        let (mut p, mut q) = (0, 0);
        let mut acc = Scalar::zero();
        while p < a.len() && q < b.len() {
            match a[p].0.cmp(&b[q].0) {
                std::cmp::Ordering::Less => p += 1,
                std::cmp::Ordering::Greater => q += 1,
                std::cmp::Ordering::Equal => {
                    acc += &(&a[p].1 * &b[q].1);
                    p += 1;
                    q += 1;
                }
            }
        }
        acc
    }

    /// Scales to a primitive integer vector with positive leading entry.
    pub fn primitive(&self) -> SparseVec {
        if self.0.is_empty() {
            return SparseVec::new();
        }
        let mut den = Scalar::one();
        for (_, c) in &self.0 {
            if !c.is_integer() {
                let d = Scalar::from_bigint(c.denom_big());
                let g = int_gcd(&den, &d);
                den = &(&den * &d) / &g;
            }
        }
        let ints: Vec<Scalar> = self.0.iter().map(|(_, c)| c * &den).collect();
        let mut g = Scalar::zero();
        for c in &ints {
            g = int_gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        if self.0[0].1.is_negative() {
            g = -g;
        }
        SparseVec(
            self.0
                .iter()
                .zip(ints)
                .map(|((i, _), c)| (*i, &c / &g))
                .collect(),
        )
    }

    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_entries(self.0.iter().map(|(i, c)| (f(*i), c.clone())).collect())
    }
}

/// Accumulates `(index, coefficient)` contributions.
#[derive(Default)]
pub struct Accumulator(HashMap<usize, Scalar>);

impl Accumulator {
    pub fn new() -> Self {
        Accumulator(HashMap::new())
    }

    pub fn add(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        *self.0.entry(i).or_insert_with(Scalar::zero) += c;
    }

    pub fn add_vec(&mut self, v: &SparseVec, c: &Scalar) {
        for (i, x) in v.entries() {
            self.add(*i, &(x * c));
        }
    }

    pub fn finish(self) -> SparseVec {
        SparseVec::from_entries(self.0.into_iter().collect())
    }
}

/// Incremental row echelon form with fraction-free integer rows.
///
/// Rows are kept primitive. A new vector is reduced by its leading column;
/// when both candidates share a leading column the one with the shorter
/// leading numerator stays as pivot.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    fn eliminate(v: &SparseVec, pivot: &SparseVec) -> SparseVec {
        let a = &pivot.entries()[0].1;
        let b = &v.entries()[0].1;
        v.scale(a).add_scaled(pivot, &-b).primitive()
    }

    /// Reduces `v` against the current pivots; zero iff `v` is in the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.primitive();
        while let Some(&(c, _)) = v.leading() {
            match self.pivot_row.get(&c) {
                Some(&r) => v = Self::eliminate(&v, &self.rows[r]),
                None => break,
            }
        }
        v
    }

    /// A leading column without a pivot certifies non-membership, since every
    /// nonzero combination of rows leads with a pivot column.
    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let mut v = v.primitive();
        loop {
            let Some((c, lead)) = v.leading().cloned() else {
                return false;
            };
            match self.pivot_row.get(&c) {
                Some(&r) => {
                    if lead.numer_bits() < self.rows[r].entries()[0].1.numer_bits() {
                        std::mem::swap(&mut self.rows[r], &mut v);
                    }
                    v = Self::eliminate(&v, &self.rows[r]);
                }
                None => {
                    self.pivot_row.insert(c, self.rows.len());
                    self.rows.push(v);
                    return true;
                }
            }
        }
    }

    /// Reduced row echelon form: pivots normalized to 1, pivot columns
    /// cleared in every other row. Returned sorted by pivot column.
    pub fn into_rref(self) -> Vec<SparseVec> {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r.entries()[0].0);
        let n = rows.len();
        for k in (0..n).rev() {
            let lead = rows[k].entries()[0].1.clone();
            rows[k] = rows[k].scale(&lead.recip());
            let (p, pr) = (rows[k].entries()[0].0, rows[k].clone());
            for row in rows.iter_mut().take(k) {
                let x = row.get(p);
                if !x.is_zero() {
                    *row = row.add_scaled(&pr, &-x);
                }
            }
        }
        rows
    }
}

/// Reduced row echelon form of the span of `rows`.
pub fn rref(rows: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.into_rref()
}

pub fn rank_of(vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Basis of `{x ∈ k^ncols : r·x = 0 for every row r}`, one vector per free
/// column, in increasing order of that column.
pub fn nullspace(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let r = rref(rows);
    let pivots: Vec<usize> = r.iter().map(|row| row.entries()[0].0).collect();
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut cols: HashMap<usize, Vec<(usize, Scalar)>> = HashMap::new();
    for (row, &p) in r.iter().zip(&pivots) {
        for (j, x) in &row.entries()[1..] {
            cols.entry(*j).or_default().push((p, -x));
        }
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut e = cols.remove(&f).unwrap_or_default();
            e.push((f, Scalar::one()));
            SparseVec::from_entries(e)
        })
        .collect()
}

/// Transposes a list of sparse columns of height `nrows` into rows.
pub fn transpose(cols: &[SparseVec], nrows: usize) -> Vec<SparseVec> {
    let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); nrows];
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c.entries() {
            rows[*i].push((j, x.clone()));
        }
    }
    rows.into_iter().map(SparseVec).collect()
}

/// Small dense rational matrices (row-major).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += &(a * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k).clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + &(&a * b);
                    }
                }
            }
        }
        out
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<DenseMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = DenseMatrix::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                    inv.data.swap(piv * n + j, col * n + j);
                }
            }
            let s = a.get(col, col).recip();
            for j in 0..n {
                a.data[col * n + j] = &a.data[col * n + j] * &s;
                inv.data[col * n + j] = &inv.data[col * n + j] * &s;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let x = &a.data[col * n + j] * &f;
                    a.data[r * n + j] = &a.data[r * n + j] - &x;
                    let y = &inv.data[col * n + j] * &f;
                    inv.data[r * n + j] = &inv.data[r * n + j] - &y;
                }
            }
        }
        Some(inv)
    }
}

/// A vector space with a named basis and optional degree tags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasedSpace {
    labels: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    degrees: Option<Vec<i32>>,
}

impl BasedSpace {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Invalid(format!("duplicate basis label `{l}`")));
            }
        }
        Ok(BasedSpace {
            labels,
            degrees: None,
        })
    }

    /// Basis `e0, e1, …`.
    pub fn standard(dim: usize) -> Self {
        BasedSpace {
            labels: (0..dim).map(|i| format!("e{i}")).collect(),
            degrees: None,
        }
    }

    pub fn with_degrees(mut self, degrees: Vec<i32>) -> Result<Self> {
        if degrees.len() != self.labels.len() {
            return Err(Error::SizeMismatch {
                left: self.labels.len(),
                right: degrees.len(),
            });
        }
        self.degrees = Some(degrees);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self, i: usize) -> Option<i32> {
        self.degrees.as_ref().map(|d| d[i])
    }
}

/// A linear map stored as the sparse images of the source basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    pub source: BasedSpace,
    pub target: BasedSpace,
    cols: Vec<SparseVec>,
}

impl LinMap {
    pub fn from_columns(source: BasedSpace, target: BasedSpace, cols: Vec<SparseVec>) -> Result<Self> {
        if cols.len() != source.dim() {
            return Err(Error::SizeMismatch {
                left: source.dim(),
                right: cols.len(),
            });
        }
        if let Some(bad) = cols.iter().filter_map(|c| c.max_index()).find(|&i| i >= target.dim()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                bound: target.dim(),
            });
        }
        Ok(LinMap { source, target, cols })
    }

    pub fn zero(source: BasedSpace, target: BasedSpace) -> Self {
        let cols = vec![SparseVec::new(); source.dim()];
        LinMap { source, target, cols }
    }

    pub fn identity(space: BasedSpace) -> Self {
        let cols = (0..space.dim()).map(SparseVec::unit).collect();
        LinMap {
            source: space.clone(),
            target: space,
            cols,
        }
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (j, x) in v.entries() {
            acc.add_vec(&self.cols[*j], x);
        }
        acc.finish()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &LinMap) -> Result<LinMap> {
        if self.target.dim() != other.source.dim() {
            return Err(Error::SizeMismatch {
                left: self.target.dim(),
                right: other.source.dim(),
            });
        }
        let cols = self.cols.iter().map(|c| other.apply(c)).collect();
        Ok(LinMap {
            source: self.source.clone(),
            target: other.target.clone(),
            cols,
        })
    }

    pub fn rows(&self) -> Vec<SparseVec> {
        transpose(&self.cols, self.target.dim())
    }

    /// Exact rank, eliminating along the shorter side.
    pub fn rank(&self) -> usize {
        if self.cols.len() <= self.target.dim() {
            rank_of(&self.cols)
        } else {
            rank_of(&self.rows())
        }
    }

    pub fn kernel(&self) -> Vec<SparseVec> {
        nullspace(&self.rows(), self.source.dim())
    }
}

pub fn rank(m: &LinMap) -> usize {
    m.rank()
}

/// A cochain complex `C^0 → C^1 → … → C^top`.
#[derive(Clone, Debug)]
pub struct ComplexRep {
    spaces: Vec<BasedSpace>,
    diffs: Vec<LinMap>,
}

impl ComplexRep {
    pub fn new(spaces: Vec<BasedSpace>, diffs: Vec<LinMap>) -> Result<Self> {
        if spaces.is_empty() || diffs.len() + 1 != spaces.len() {
            return Err(Error::Invalid(format!(
                "{} spaces need {} differentials, got {}",
                spaces.len(),
                spaces.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (d, m) in diffs.iter().enumerate() {
            if m.source.dim() != spaces[d].dim() || m.target.dim() != spaces[d + 1].dim() {
                return Err(Error::SizeMismatch {
                    left: m.source.dim(),
                    right: spaces[d].dim(),
                });
            }
        }
        Ok(ComplexRep { spaces, diffs })
    }

    pub fn top_degree(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn space(&self, d: usize) -> &BasedSpace {
        &self.spaces[d]
    }

    pub fn differential(&self, d: usize) -> &LinMap {
        &self.diffs[d]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.dim()).collect()
    }

    /// Exact check of `d_{d+1} ∘ d_d = 0`, reporting the first offender.
    pub fn check_square_zero(&self) -> Result<()> {
        for d in 0..self.diffs.len().saturating_sub(1) {
            for (j, c) in self.diffs[d].columns().iter().enumerate() {
                if !self.diffs[d + 1].apply(c).is_zero() {
                    return Err(Error::NotAComplex { degree: d, basis: j });
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRow {
    pub degree: usize,
    pub dim: usize,
    /// Rank of the outgoing differential; unknown at the top degree.
    pub rank_out: Option<usize>,
    pub rank_in: usize,
    /// At an unreliable degree this is only an upper bound.
    pub h_dim: usize,
    pub reliable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub rows: Vec<DegreeRow>,
}

impl CohomologyTable {
    /// Cohomology dimensions in reliable degrees.
    pub fn reliable_dims(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| r.reliable).map(|r| r.h_dim).collect()
    }

    pub fn h(&self, degree: usize) -> Option<usize> {
        self.rows
            .iter()
            .find(|r| r.degree == degree && r.reliable)
            .map(|r| r.h_dim)
    }

    pub fn acyclic(&self) -> bool {
        self.reliable_dims().iter().all(|&h| h == 0)
    }
}

/// Cohomology of a complex. The top degree has no outgoing differential in
/// the truncation and is flagged unreliable.
pub fn cohomology_dims(c: &ComplexRep) -> Result<CohomologyTable> {
    c.check_square_zero()?;
    let ranks: Vec<usize> = c.diffs.iter().map(|m| m.rank()).collect();
    let rows = (0..=c.top_degree())
        .map(|d| {
            let dim = c.spaces[d].dim();
            let rank_in = if d == 0 { 0 } else { ranks[d - 1] };
            let rank_out = ranks.get(d).copied();
            DegreeRow {
                degree: d,
                dim,
                rank_out,
                rank_in,
                h_dim: dim - rank_out.unwrap_or(0) - rank_in,
                reliable: rank_out.is_some(),
            }
        })
        .collect();
    Ok(CohomologyTable { rows })
}

/// Checks that `action` is a right action of `Σ_n` on `k^dim` on generator
/// pairs: `(v·g)·h = v·(gh)` and `v·id = v` for basis vectors `v`.
pub fn check_right_action(
    n: usize,
    dim: usize,
    action: &dyn Fn(&SparseVec, &Perm) -> SparseVec,
) -> Result<()> {
    let gens = Perm::generators(n);
    let id = Perm::identity(n);
    for b in 0..dim {
        let v = SparseVec::unit(b);
        if action(&v, &id) != v {
            return Err(Error::Precondition(format!("identity acts nontrivially on e{b}")));
        }
        for g in &gens {
            for h in &gens {
                if action(&action(&v, g), h) != action(&v, &g.mul(h)) {
                    return Err(Error::Precondition(format!(
                        "not a right action: e{b}·{g}·{h} ≠ e{b}·({g}{h})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// `Aver(v) = (1/n!) Σ_{g ∈ Σ_n} v·g`.
pub fn average(n: usize, v: &SparseVec, action: &dyn Fn(&SparseVec, &Perm) -> SparseVec) -> SparseVec {
    let mut acc = Accumulator::new();
    for g in Perm::all(n) {
        acc.add_vec(&action(v, &g), &Scalar::one());
    }
    acc.finish().scale(&factorial(n).recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sv(v: &[i64]) -> SparseVec {
        SparseVec::from_dense(&v.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>())
    }

    fn space(n: usize) -> BasedSpace {
        BasedSpace::standard(n)
    }

    #[test]
    fn trivial_ranks() {
        assert_eq!(LinMap::zero(space(3), space(3)).rank(), 0);
        assert_eq!(LinMap::identity(space(4)).rank(), 4);
    }

    #[test]
    fn two_term_identity_complex_is_acyclic() {
        let c = ComplexRep::new(vec![space(1), space(1)], vec![LinMap::identity(space(1))]).unwrap();
        let t = cohomology_dims(&c).unwrap();
        assert_eq!(t.rows[0].h_dim, 0);
        assert!(t.rows[0].reliable);
        assert!(!t.rows[1].reliable);
        assert_eq!(t.rows[1].h_dim, 0);
    }

    #[test]
    fn square_nonzero_is_rejected() {
        let id = LinMap::identity(space(1));
        let c = ComplexRep::new(vec![space(1), space(1), space(1)], vec![id.clone(), id]).unwrap();
        assert_eq!(
            cohomology_dims(&c).unwrap_err(),
            Error::NotAComplex { degree: 0, basis: 0 }
        );
    }

    #[test]
    fn nullspace_small() {
        let rows = vec![sv(&[1, 2, 3]), sv(&[2, 4, 6])];
        let k = nullspace(&rows, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(rows[0].dot(v).is_zero());
        }
    }

    #[test]
    fn contains_checks_membership() {
        let mut e = Echelon::new();
        e.insert(&sv(&[1, 1, 0]));
        e.insert(&sv(&[0, 1, 1]));
        assert!(e.contains(&sv(&[1, 0, -1])));
        assert!(!e.contains(&sv(&[1, 0, 0])));
    }

    #[test]
    fn average_regular_sigma2() {
        // right regular action of Σ_2 on k[Σ_2], basis indexed by Perm::index
        let act = |v: &SparseVec, g: &Perm| {
            v.map_indices(|i| Perm::from_index(2, i).mul(g).index())
        };
        check_right_action(2, 2, &act).unwrap();
        let a = average(2, &SparseVec::unit(0), &act);
        assert_eq!(a, SparseVec::from_dense(&[Scalar::ratio(1, 2), Scalar::ratio(1, 2)]));
        assert_eq!(average(2, &a, &act), a);
    }

    #[test]
    fn average_free_orbit_sigma3() {
        let act = |v: &SparseVec, g: &Perm| v.map_indices(|i| Perm::from_index(3, i).mul(g).index());
        let a = average(3, &SparseVec::unit(4), &act);
        assert_eq!(a.len(), 6);
        assert!(a.entries().iter().all(|e| e.1 == Scalar::ratio(1, 6)));
    }

    #[test]
    fn dense_inverse() {
        let mut m = DenseMatrix::zeros(2, 2);
        m.set(0, 0, Scalar::from_int(2));
        m.set(0, 1, Scalar::from_int(1));
        m.set(1, 0, Scalar::from_int(1));
        m.set(1, 1, Scalar::from_int(1));
        assert_eq!(m.mul(&m.inverse().unwrap()), DenseMatrix::identity(2));
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r)
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let ncols = m[0].len();
            let rows: Vec<SparseVec> = m.iter().map(|r| sv(r)).collect();
            let r = rank_of(&rows);
            let k = nullspace(&rows, ncols);
            prop_assert_eq!(r + k.len(), ncols);
            for v in &k {
                for row in &rows {
                    prop_assert!(row.dot(v).is_zero());
                }
            }
            prop_assert_eq!(rank_of(&transpose(&rows, ncols)), r);
        }
    }
}
