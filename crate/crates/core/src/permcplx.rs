//! The permutation complex `k → k[Σ_2] → k[Σ_3] → ⋯` and its decomposition
//! into blocks indexed by primitive permutations.
//!
//! Chains in `k[Σ_m]` are sparse vectors indexed by `Perm::index`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{cohomology_dims, Accumulator, BasedSpace, CohomologyTable, ComplexRep, LinMap, SparseVec};
use crate::liecplx::{soul_complex, TAlgebra};
use crate::operads::catalog::catalog;
use crate::operads::MAX_CAP;
use crate::perm::{factorial_usize, Perm};
use crate::scalar::Scalar;

/// `δ(σ) = Σ_{i=0}^{m+1} (−1)^i d_i(σ)`.
pub fn perm_differential_basis(sigma: &Perm) -> SparseVec {
    let m = sigma.len();
    let mut acc = Accumulator::new();
    for i in 0..=m + 1 {
        let s = Scalar::sign(if i % 2 == 0 { 1 } else { -1 });
        acc.add(sigma.doubling(i).expect("index in range").index(), &s);
    }
    acc.finish()
}

/// Linear extension of [`perm_differential_basis`] to `k[Σ_m]`.
pub fn perm_differential(m: usize, x: &SparseVec) -> SparseVec {
    let mut acc = Accumulator::new();
    for (idx, c) in x.entries() {
        acc.add_vec(&perm_differential_basis(&Perm::from_index(m, *idx)), c);
    }
    acc.finish()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradeData {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// `σ = id_a × ω × id_c`.
    pub core: Perm,
    pub primitive: Perm,
    pub grade: usize,
}

fn perm_of(values: Vec<usize>) -> Perm {
    Perm::from_one_line(&values).expect("valid permutation")
}

/// Grade data; the unit `id_n` has grade `n − 1` and contracts to `id_1`.
pub fn grade(sigma: &Perm) -> GradeData {
    let n = sigma.len();
    if sigma.is_identity() {
        return GradeData {
            a: n,
            b: 0,
            c: 0,
            core: Perm::identity(0),
            primitive: Perm::identity(1),
            grade: n.saturating_sub(1),
        };
    }
    let line = sigma.one_line();
    let a = (0..n).take_while(|&j| line[j] == j + 1).count();
    let c = (0..n).rev().take_while(|&j| line[j] == j + 1).count();
    let core: Vec<usize> = line[a..n - c].iter().map(|v| v - a).collect();
    let k = core.len();
    let b = (0..k - 1).filter(|&s| core[s + 1] == core[s] + 1).count();
    // keep the first strand of every run, then renumber the surviving values
    let kept: Vec<usize> = (0..k)
        .filter(|&s| s == 0 || core[s] != core[s - 1] + 1)
        .map(|s| core[s])
        .collect();
    let mut sorted = kept.clone();
    sorted.sort_unstable();
    let primitive = kept
        .iter()
        .map(|v| sorted.binary_search(v).unwrap() + 1)
        .collect();
    GradeData {
        a,
        b,
        c,
        core: perm_of(core),
        primitive: perm_of(primitive),
        grade: a + b + c,
    }
}

pub fn primitive_contraction(sigma: &Perm) -> Perm {
    grade(sigma).primitive
}

pub fn is_primitive(sigma: &Perm) -> bool {
    grade(sigma).grade == 0 || (sigma.len() == 1)
}

/// Partition of `Σ_m` by primitive contraction, keyed by the one-line
/// notation of `κ`.
pub fn block_decompose(m: usize) -> BTreeMap<Vec<usize>, Vec<Perm>> {
    let mut out: BTreeMap<Vec<usize>, Vec<Perm>> = BTreeMap::new();
    for s in Perm::all(m) {
        out.entry(primitive_contraction(&s).one_line()).or_default().push(s);
    }
    out
}

/// `C(g+n+1, n+1)`: permutations in `Σ_{n+g}` contracting to a primitive
/// `κ ∈ Σ_n`, `n ≥ 2`.
pub fn expected_block_size(n: usize, g: usize) -> usize {
    binomial(g + n + 1, n + 1)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, j| acc * (n - j) / (j + 1))
}

fn check_cap(cap: usize) -> Result<()> {
    if cap == 0 {
        return Err(Error::Invalid("cap must be at least 1".into()));
    }
    if cap > MAX_CAP {
        return Err(Error::ResourceBound(format!("cap {cap} exceeds {MAX_CAP}")));
    }
    Ok(())
}

fn labels_of(perms: &[Perm]) -> BasedSpace {
    BasedSpace::new(perms.iter().map(|p| p.to_string()).collect()).expect("distinct permutations")
}

/// Subcomplex spanned by `members(m)` in each `Σ_m`, `m = low..=cap`;
/// degree `d` is `Σ_{low+d}`.
fn subcomplex(low: usize, cap: usize, members: &dyn Fn(usize) -> Vec<Perm>) -> Result<ComplexRep> {
    let sets: Vec<Vec<Perm>> = (low..=cap).map(members).collect();
    let spaces: Vec<BasedSpace> = sets.iter().map(|s| labels_of(s)).collect();
    let mut diffs = Vec::new();
    for d in 0..sets.len().saturating_sub(1) {
        let m = low + d;
        let position: BTreeMap<usize, usize> =
            sets[d + 1].iter().enumerate().map(|(k, p)| (p.index(), k)).collect();
        let mut cols = Vec::new();
        for s in &sets[d] {
            let img = perm_differential_basis(s);
            let mut entries = Vec::new();
            for (idx, c) in img.entries() {
                match position.get(idx) {
                    Some(&k) => entries.push((k, c.clone())),
                    None => {
                        return Err(Error::Precondition(format!(
                            "δ({s}) leaves the subcomplex at {}",
                            Perm::from_index(m + 1, *idx)
                        )))
                    }
                }
            }
            cols.push(SparseVec::from_entries(entries));
        }
        diffs.push(LinMap::from_columns(spaces[d].clone(), spaces[d + 1].clone(), cols)?);
    }
    ComplexRep::new(spaces, diffs)
}

/// The complex `k[Σ_1] → ⋯ → k[Σ_cap]`.
pub fn perm_complex(cap: usize) -> Result<ComplexRep> {
    check_cap(cap)?;
    subcomplex(1, cap, &|m| Perm::all(m).collect())
}

/// The block of a primitive `κ ∈ Σ_n`, from `Σ_n` up to `Σ_cap`.
pub fn block_complex(kappa: &Perm, cap: usize) -> Result<ComplexRep> {
    check_cap(cap)?;
    if primitive_contraction(kappa) != *kappa {
        return Err(Error::Precondition(format!("{kappa} is not primitive")));
    }
    let n = kappa.len();
    if n > cap {
        return Err(Error::Invalid(format!("{kappa} does not fit below cap {cap}")));
    }
    let low = if kappa.len() == 1 { 1 } else { n };
    subcomplex(low, cap, &|m| {
        Perm::all(m).filter(|s| primitive_contraction(s) == *kappa).collect()
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockReport {
    pub kappa: String,
    /// Arity of the first space of the block.
    pub first_arity: usize,
    pub sizes: Vec<usize>,
    pub table: CohomologyTable,
}

pub fn block_acyclicity(kappa: &Perm, cap: usize) -> Result<BlockReport> {
    let c = block_complex(kappa, cap)?;
    Ok(BlockReport {
        kappa: kappa.to_string(),
        first_arity: kappa.len(),
        sizes: c.dims(),
        table: cohomology_dims(&c)?,
    })
}

/// All primitive permutations in `Σ_n`.
pub fn primitives(n: usize) -> Vec<Perm> {
    Perm::all(n).filter(|s| primitive_contraction(s) == *s).collect()
}

/// `k → k → ⋯` with `cap` terms, `d_{2i} = id` and `d_{2i+1} = 0`.
pub fn andulka(cap: usize) -> Result<ComplexRep> {
    check_cap(cap)?;
    let one = BasedSpace::standard(1);
    let spaces = vec![one.clone(); cap];
    let diffs = (0..cap - 1)
        .map(|d| {
            if d % 2 == 0 {
                LinMap::identity(one.clone())
            } else {
                LinMap::zero(one.clone(), one.clone())
            }
        })
        .collect();
    ComplexRep::new(spaces, diffs)
}

/// Image of `ρ ∈ Σ_m` in the degree `m−1` term of the soul of `Ass`:
/// `2^m (−1)^{(m−1)(m−2)/2} [id ⊗ ρ]` in coinvariant coordinates.
pub fn ass_soul_coordinate(alg: &TAlgebra, rho: &Perm) -> Result<SparseVec> {
    let m = rho.len();
    let c = alg.coinvariants(m)?;
    let sign = if ((m - 1) * m.saturating_sub(2) / 2) % 2 == 0 { 1 } else { -1 };
    let scale = Scalar::from_int(sign * (1i64 << m));
    let x = SparseVec::single(alg.index(m, Perm::identity(m).index(), rho.index()), scale);
    Ok(c.reduce(&x))
}

#[derive(Clone, Debug, Serialize)]
pub struct SoulComparison {
    pub cap: usize,
    /// Permutations `σ` checked, over all `m < cap`.
    pub checked: usize,
    /// Those with `δ_soul Φ(σ) ≠ Φ(δσ)`.
    pub mismatches: Vec<String>,
}

/// Compares [`perm_differential`] with the soul differential of `Ass` through
/// [`ass_soul_coordinate`], for `σ ∈ Σ_m`, `m < cap`.
pub fn compare_with_ass_soul(cap: usize) -> Result<SoulComparison> {
    check_cap(cap)?;
    let entry = catalog("Ass", cap)?;
    let alg = TAlgebra::from_entry(&entry)?;
    let soul = soul_complex(&entry)?;
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for m in 1..cap {
        for sigma in Perm::all(m) {
            let lhs = soul.differential(m - 1).apply(&ass_soul_coordinate(&alg, &sigma)?);
            let mut acc = Accumulator::new();
            for (idx, c) in perm_differential_basis(&sigma).entries() {
                acc.add_vec(&ass_soul_coordinate(&alg, &Perm::from_index(m + 1, *idx))?, c);
            }
            checked += 1;
            if lhs != acc.finish() {
                mismatches.push(sigma.to_string());
            }
        }
    }
    Ok(SoulComparison { cap, checked, mismatches })
}

/// Dimension check helper: `|Σ_m|`.
pub fn sigma_dim(m: usize) -> usize {
    factorial_usize(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Perm {
        Perm::from_one_line(v).unwrap()
    }

    #[test]
    fn differential_examples() {
        assert_eq!(perm_differential_basis(&p(&[1])), SparseVec::unit(0));
        for m in 1..=5 {
            for s in Perm::all(m) {
                let d = perm_differential_basis(&s);
                assert!(perm_differential(m + 1, &d).is_zero(), "δ² ≠ 0 at {s}");
            }
        }
    }

    #[test]
    fn grade_examples() {
        assert_eq!(grade(&Perm::identity(4)).grade, 3);
        let g = grade(&p(&[2, 1]));
        assert_eq!((g.a, g.b, g.c, g.grade), (0, 0, 0, 0));
        let g = grade(&p(&[1, 3, 2]));
        assert_eq!((g.a, g.b, g.c, g.grade), (1, 0, 0, 1));
        assert_eq!(primitive_contraction(&Perm::identity(5)), Perm::identity(1));
        assert_eq!(primitive_contraction(&p(&[2, 3, 1])), p(&[2, 1]));
        assert_eq!(primitive_contraction(&p(&[3, 1, 2])), p(&[2, 1]));
    }

    #[test]
    fn differential_raises_grade_and_preserves_blocks() {
        for m in 1..=6 {
            for s in Perm::all(m) {
                let g = grade(&s);
                for (idx, _) in perm_differential_basis(&s).entries() {
                    let t = Perm::from_index(m + 1, *idx);
                    let h = grade(&t);
                    assert_eq!(h.grade, g.grade + 1, "{s} → {t}");
                    assert_eq!(h.primitive, g.primitive, "{s} → {t}");
                }
            }
        }
    }

    #[test]
    fn block_sizes_are_binomial() {
        for m in 1..=7 {
            let blocks = block_decompose(m);
            assert_eq!(blocks.values().map(Vec::len).sum::<usize>(), sigma_dim(m));
            for (kappa, members) in &blocks {
                let n = kappa.len();
                if n == 1 {
                    assert_eq!(members.len(), 1);
                } else {
                    assert_eq!(members.len(), expected_block_size(n, m - n), "κ = {kappa:?}");
                }
            }
        }
        let b2 = block_decompose(2);
        assert_eq!(b2.len(), 2);
    }

    #[test]
    fn matches_ass_soul_differential() {
        let r = compare_with_ass_soul(5).unwrap();
        assert_eq!(r.checked, 1 + 2 + 6 + 24);
        assert!(r.mismatches.is_empty(), "{:?}", r.mismatches);
    }

    #[test]
    fn andulka_is_acyclic() {
        let t = cohomology_dims(&andulka(5).unwrap()).unwrap();
        assert_eq!(t.reliable_dims(), vec![0, 0, 0, 0]);
        assert!(block_acyclicity(&Perm::identity(1), 5).unwrap().table.acyclic());
        assert!(block_acyclicity(&p(&[2, 1]), 6).unwrap().table.acyclic());
    }

    #[test]
    fn full_complex_is_acyclic_and_sums_blocks() {
        let full = cohomology_dims(&perm_complex(6).unwrap()).unwrap();
        assert!(full.acyclic());
        let mut per_degree = vec![0usize; 6];
        for n in 1..=6 {
            for kappa in primitives(n) {
                let r = block_acyclicity(&kappa, 6).unwrap();
                for row in &r.table.rows {
                    if row.reliable {
                        per_degree[n - 1 + row.degree] += row.h_dim;
                    }
                }
            }
        }
        assert!(per_degree.iter().all(|&h| h == 0));
    }
}
