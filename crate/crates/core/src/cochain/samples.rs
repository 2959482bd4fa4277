//! Seeded random valid algebras: a known algebra of the requested dimension
//! written in a random integer basis (elementary moves, so the inverse stays
//! integral), or random structure constants where every table is valid.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::PAlgebra;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

type Table = fn(usize, usize) -> Vec<i64>;

fn ass_tables(dim: usize) -> Vec<Table> {
    match dim {
        1 => vec![|_, _| vec![1], |_, _| vec![0]],
        2 => vec![
            // k[ε]
            |i, j| match (i, j) {
                (0, 0) => vec![1, 0],
                (0, 1) | (1, 0) => vec![0, 1],
                _ => vec![0, 0],
            },
            // k × k
            |i, j| if i == j { (0..2).map(|k| (k == i) as i64).collect() } else { vec![0, 0] },
            // e_0 e_j = e_j
            |i, j| if i == 0 { (0..2).map(|k| (k == j) as i64).collect() } else { vec![0, 0] },
        ],
        3 => vec![
            // upper triangular 2×2
            |i, j| match (i, j) {
                (0, 0) => vec![1, 0, 0],
                (0, 1) | (1, 2) => vec![0, 1, 0],
                (2, 2) => vec![0, 0, 1],
                _ => vec![0, 0, 0],
            },
            // k[x]/x³
            |i, j| (0..3).map(|k| (i + j == k) as i64).collect(),
            // k[ε] × k
            |i, j| match (i, j) {
                (0, 0) => vec![1, 0, 0],
                (0, 1) | (1, 0) => vec![0, 1, 0],
                (2, 2) => vec![0, 0, 1],
                _ => vec![0, 0, 0],
            },
        ],
        _ => vec![],
    }
}

fn com_tables(dim: usize) -> Vec<Table> {
    let mut t = ass_tables(dim);
    // drop the noncommutative ones
    t.retain(|f| (0..dim).all(|i| (0..dim).all(|j| f(i, j) == f(j, i))));
    t
}

fn lie_tables(dim: usize) -> Vec<Table> {
    match dim {
        1 => vec![|_, _| vec![0]],
        2 => vec![
            |i, j| match (i, j) {
                (0, 1) => vec![0, 1],
                (1, 0) => vec![0, -1],
                _ => vec![0, 0],
            },
            |_, _| vec![0, 0],
        ],
        3 => vec![
            // sl2 on h, e, f
            |i, j| match (i, j) {
                (0, 1) => vec![0, 2, 0],
                (1, 0) => vec![0, -2, 0],
                (0, 2) => vec![0, 0, -2],
                (2, 0) => vec![0, 0, 2],
                (1, 2) => vec![1, 0, 0],
                (2, 1) => vec![-1, 0, 0],
                _ => vec![0, 0, 0],
            },
            // Heisenberg
            |i, j| match (i, j) {
                (0, 1) => vec![0, 0, 1],
                (1, 0) => vec![0, 0, -1],
                _ => vec![0, 0, 0],
            },
            // two-dimensional nonabelian ⊕ k
            |i, j| match (i, j) {
                (0, 1) => vec![0, 1, 0],
                (1, 0) => vec![0, -1, 0],
                _ => vec![0, 0, 0],
            },
        ],
        _ => vec![],
    }
}

/// Random invertible integer matrix with its inverse.
fn random_basis(dim: usize, rng: &mut ChaCha8Rng) -> (Vec<Vec<Scalar>>, Vec<Vec<Scalar>>) {
    let id = |n: usize| -> Vec<Vec<Scalar>> {
        (0..n).map(|i| (0..n).map(|j| Scalar::from_int((i == j) as i64)).collect()).collect()
    };
    let mut perm: Vec<usize> = (0..dim).collect();
    perm.shuffle(rng);
    let identity = id(dim);
    let mut g: Vec<Vec<Scalar>> = perm.iter().map(|&p| identity[p].clone()).collect();
    // the inverse of a permutation matrix is its transpose
    let mut ginv: Vec<Vec<Scalar>> = (0..dim).map(|i| (0..dim).map(|j| g[j][i].clone()).collect()).collect();
    if dim < 2 {
        return (g, ginv);
    }
    for _ in 0..3 {
        let i = rng.gen_range(0..dim);
        let j = (i + rng.gen_range(1..dim)) % dim;
        let c = Scalar::from_int([-1, 1, 2][rng.gen_range(0..3)]);
        // g ← g·(I + c E_ij): column j += c·column i
        for row in g.iter_mut() {
            let add = &row[i] * &c;
            row[j] += &add;
        }
        // ginv ← (I − c E_ij)·ginv: row i −= c·row j
        let rj = ginv[j].clone();
        for (x, y) in ginv[i].iter_mut().zip(&rj) {
            *x -= &(&c * y);
        }
    }
    (g, ginv)
}

fn random_table(dim: usize, rng: &mut ChaCha8Rng, symmetric: bool) -> Vec<Vec<Vec<i64>>> {
    let mut t = vec![vec![vec![0; dim]; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            if symmetric && j < i {
                t[i][j] = t[j][i].clone();
                continue;
            }
            t[i][j] = (0..dim).map(|_| rng.gen_range(-1..=1)).collect();
        }
    }
    t
}

/// A valid `operad`-algebra of dimension `dim ≤ 3` determined by `seed`.
pub fn sample_algebra(operad: &str, dim: usize, seed: u64) -> Result<PAlgebra> {
    if !(1..=3).contains(&dim) {
        return Err(Error::Invalid(format!("sample algebras have dimension 1..=3, got {dim}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |tables: Vec<Table>, rng: &mut ChaCha8Rng| tables[rng.gen_range(0..tables.len())];
    let base = match operad {
        "Ass" | "uAss" | "preLie" => PAlgebra::new(operad, dim).with_product("mu", pick(ass_tables(dim), &mut rng)),
        "Com" => PAlgebra::new(operad, dim).with_product("mu", pick(com_tables(dim), &mut rng)),
        "Lie" => PAlgebra::new(operad, dim).with_product("lambda", pick(lie_tables(dim), &mut rng)),
        "D" | "uD" => {
            let (f, g) = (pick(ass_tables(dim), &mut rng), pick(ass_tables(dim), &mut rng));
            let nu = PAlgebra::new(operad, dim).with_product("nu", g);
            let (b, binv) = random_basis(dim, &mut rng);
            let nu = nu.transport(&b, &binv);
            let mut a = PAlgebra::new(operad, dim).with_product("mu", f);
            a.structure.insert("nu".into(), nu.structure["nu"].clone());
            a
        }
        "Sym" | "Mag" | "uMag" => {
            let t = random_table(dim, &mut rng, operad == "Sym");
            PAlgebra::new(operad, dim).with_product("mu", |i, j| t[i][j].clone())
        }
        other => return Err(Error::UnknownOperad(other.to_string())),
    };
    let (g, ginv) = random_basis(dim, &mut rng);
    Ok(base.transport(&g, &ginv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::validate_algebra;

    #[test]
    fn basis_change_is_inverted() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for dim in 1..=3 {
            let (g, ginv) = random_basis(dim, &mut rng);
            for i in 0..dim {
                for j in 0..dim {
                    let mut s = Scalar::zero();
                    for k in 0..dim {
                        s += &(&g[i][k] * &ginv[k][j]);
                    }
                    assert_eq!(s, Scalar::from_int((i == j) as i64));
                }
            }
        }
    }

    #[test]
    fn samples_are_valid_and_deterministic() {
        for op in ["Ass", "Com", "Lie", "Sym", "D", "Mag", "preLie"] {
            for dim in 1..=3 {
                for seed in 0..4 {
                    let a = sample_algebra(op, dim, seed).unwrap();
                    validate_algebra(&a).unwrap_or_else(|e| panic!("{op} {dim} {seed}: {e}"));
                    assert_eq!(a, sample_algebra(op, dim, seed).unwrap());
                }
            }
        }
    }
}
