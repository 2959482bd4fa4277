//! Named operads with their hard-coded Koszul duals.

use super::classic::{Com, Lie, PermOperad, TruncatedBinary};
use super::free::{presented_operad, quadratic_dual, FreeOperad, Presentation, PresentedOperad};
use super::planar::{PlanarAss, PlanarCoproduct, PlanarFreeProduct, PlanarMag, PlanarTruncated};
use super::symmetrize::symmetrization;
use super::{check_cap, Operad, OperadModel};
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, SparseVec};
use crate::scalar::Scalar;

/// Nondegenerate pairing `P(2) ⊗ P^!(2) → k`, entry `[k][l] = ⟨e_k, f_l⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub matrix: Vec<Vec<Scalar>>,
}

impl Pairing {
    pub fn diagonal(signs: &[i32]) -> Self {
        let n = signs.len();
        Pairing {
            matrix: (0..n)
                .map(|k| {
                    (0..n)
                        .map(|l| if k == l { Scalar::sign(signs[k]) } else { Scalar::zero() })
                        .collect()
                })
                .collect(),
        }
    }

    /// Coefficients `c_{kj}` of the canonical element `Σ c_{kj} e_k ⊗ f_j`:
    /// `f^k = Σ_j c_{kj} f_j` is the basis dual to `e_k`.
    pub fn canonical_coefficients(&self) -> Vec<(usize, usize, Scalar)> {
        let n = self.matrix.len();
        let mut g = DenseMatrix::zeros(n, n);
        for (k, row) in self.matrix.iter().enumerate() {
            for (l, x) in row.iter().enumerate() {
                g.set(k, l, x.clone());
            }
        }
        let inv = g.inverse().expect("pairing is nondegenerate");
        let mut out = Vec::new();
        for k in 0..n {
            for j in 0..n {
                let c = inv.get(j, k);
                if !c.is_zero() {
                    out.push((k, j, c.clone()));
                }
            }
        }
        out
    }
}

/// A catalog operad `P` together with its dual and the binary generators used
/// by algebra structures.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub operad: Operad,
    pub dual: Option<Operad>,
    pub pairing: Option<Pairing>,
    /// Quadratic presentation of the symmetric version; used to validate algebras.
    pub presentation: Presentation,
    /// Generator names with their vectors in `P(2)`.
    pub generators: Vec<(String, SparseVec)>,
}

impl CatalogEntry {
    pub fn is_symmetric(&self) -> bool {
        self.operad.symmetric()
    }

    pub fn cap(&self) -> usize {
        self.operad.cap()
    }

    pub fn dual_or_err(&self) -> Result<&Operad> {
        self.dual
            .as_ref()
            .ok_or_else(|| Error::Unsupported(format!("no hard-coded dual for {}", self.name)))
    }

    pub fn pairing_or_err(&self) -> Result<&Pairing> {
        self.pairing
            .as_ref()
            .ok_or_else(|| Error::Unsupported(format!("no pairing for {}", self.name)))
    }

    pub fn generator(&self, name: &str) -> Option<&SparseVec> {
        self.generators.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

pub fn catalog_names() -> &'static [&'static str] {
    &["Ass", "uAss", "Com", "Lie", "Sym", "Mag", "uMag", "preLie", "D", "uD"]
}

/// Symmetric pairing induced from a planar one: `⟨t·σ, s·ρ⟩ = δ_{σρ} sgn(σ) ⟨t, s⟩`.
fn symmetrized_pairing(planar: &[i32]) -> Pairing {
    let mut signs = Vec::new();
    for &p in planar {
        signs.push(p);
        signs.push(-p);
    }
    Pairing::diagonal(&signs)
}

fn gen(name: &str, idx: usize) -> (String, SparseVec) {
    (name.to_string(), SparseVec::unit(idx))
}

/// Looks up `name` (case-insensitive) and builds the models up to `cap`.
pub fn catalog(name: &str, cap: usize) -> Result<CatalogEntry> {
    check_cap(cap)?;
    let key = catalog_names()
        .iter()
        .find(|n| n.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownOperad(name.to_string()))?;
    let entry = |operad: Operad, dual: Operad, pairing: Pairing, presentation: Presentation, generators| {
        CatalogEntry {
            name: key.to_string(),
            operad,
            dual: Some(dual),
            pairing: Some(pairing),
            presentation,
            generators,
        }
    };
    let ua = || Operad::new(PlanarAss::new(cap));
    let um = || Operad::new(PlanarMag::new(cap));
    let umd = || Operad::new(PlanarTruncated::new(cap));
    let ud = || Operad::new(PlanarFreeProduct::new(cap));
    let udd = || Operad::new(PlanarCoproduct::new(cap));
    // colour order of the free product in arity 2
    let d_gens = |stride: usize| {
        let d = PlanarFreeProduct::new(cap.max(2));
        let mu = (0..2).find(|&b| d.label(2, b).starts_with("mu")).unwrap();
        vec![gen("mu", mu * stride), gen("nu", (1 - mu) * stride)]
    };
    Ok(match *key {
        "Ass" => entry(
            symmetrization(ua(), "Ass"),
            symmetrization(ua(), "Ass!"),
            symmetrized_pairing(&[1]),
            Presentation::ass(),
            vec![gen("mu", 0)],
        ),
        "uAss" => entry(ua(), ua(), Pairing::diagonal(&[1]), Presentation::ass(), vec![gen("mu", 0)]),
        "Com" => entry(
            Operad::new(Com::new(cap)),
            Operad::new(Lie::new(cap)),
            Pairing::diagonal(&[1]),
            Presentation::com(),
            vec![gen("mu", 0)],
        ),
        "Lie" => entry(
            Operad::new(Lie::new(cap)),
            Operad::new(Com::new(cap)),
            Pairing::diagonal(&[1]),
            Presentation::lie(),
            vec![gen("lambda", 0)],
        ),
        "Sym" => entry(
            Operad::new(FreeOperad::new(&Presentation::sym(), cap)?),
            Operad::new(TruncatedBinary::new(cap, -1, "Sym!")),
            Pairing::diagonal(&[1]),
            Presentation::sym(),
            vec![gen("mu", 0)],
        ),
        "Mag" => entry(
            symmetrization(um(), "Mag"),
            symmetrization(umd(), "Mag!"),
            symmetrized_pairing(&[1]),
            Presentation::mag(),
            vec![gen("mu", 0)],
        ),
        "uMag" => entry(um(), umd(), Pairing::diagonal(&[1]), Presentation::mag(), vec![gen("mu", 0)]),
        "preLie" => {
            let p = PresentedOperad::new(&Presentation::pre_lie(), cap)?;
            let mu = p.parse("mu(1,2)")?.entries()[0].0;
            entry(
                Operad::new(p),
                Operad::new(PermOperad::new(cap)),
                Pairing::diagonal(&[1, -1]),
                Presentation::pre_lie(),
                vec![gen("mu", mu)],
            )
        }
        "D" => entry(
            symmetrization(ud(), "D"),
            symmetrization(udd(), "D!"),
            symmetrized_pairing(&[1, 1]),
            Presentation::d(),
            d_gens(2),
        ),
        "uD" => entry(ud(), udd(), Pairing::diagonal(&[1, 1]), Presentation::d(), d_gens(1)),
        _ => unreachable!(),
    })
}

/// Entry for a user presentation: the dual comes from [`quadratic_dual`] and
/// the pairing is the identity on the generator bases, which the dual's
/// sign-twisted transposed action makes equivariant. Rejected with
/// `Precondition` if the resulting `χ` is not a Maurer–Cartan element.
pub fn entry_from_presentation(p: &Presentation, cap: usize) -> Result<CatalogEntry> {
    check_cap(cap)?;
    let operad = PresentedOperad::new(p, cap)?;
    let dual = presented_operad(&quadratic_dual(p)?, cap)?;
    let generators = p
        .generators
        .iter()
        .map(|g| Ok((g.name.clone(), operad.parse(&format!("{}(1,2)", g.name))?)))
        .collect::<Result<Vec<_>>>()?;
    let n = operad.dim(2);
    if dual.dim(2) != n {
        return Err(Error::Invalid("dual has a different arity-2 dimension".into()));
    }
    let entry = CatalogEntry {
        name: p.name.clone().unwrap_or_else(|| "P".into()),
        operad: Operad::new(operad),
        dual: Some(dual),
        pairing: Some(Pairing::diagonal(&vec![1; n])),
        presentation: p.clone(),
        generators,
    };
    if cap >= 3 {
        let alg = crate::liecplx::TAlgebra::from_entry(&entry)?;
        let chi = crate::liecplx::canonical_chi(&entry)?;
        if !alg.is_invariant(&chi) || !alg.class_is_zero(&alg.bracket(&chi, &chi))? {
            return Err(Error::Precondition(format!("χ is not Maurer–Cartan for {}", entry.name)));
        }
    }
    Ok(entry)
}

/// Non-Σ counterpart used by the non-Σ soul: `Ass → uAss`, `Mag → uMag`,
/// `D → uD`; non-Σ names map to themselves.
pub fn planar_counterpart(name: &str, cap: usize) -> Result<CatalogEntry> {
    let e = catalog(name, cap)?;
    let planar = match e.name.as_str() {
        "Ass" | "uAss" => "uAss",
        "Mag" | "uMag" => "uMag",
        "D" | "uD" => "uD",
        other => {
            return Err(Error::Unsupported(format!("{other} has no non-Σ counterpart in the catalog")))
        }
    };
    catalog(planar, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve_case_insensitively() {
        assert_eq!(catalog("lie", 3).unwrap().name, "Lie");
        assert!(matches!(catalog("Foo", 3), Err(Error::UnknownOperad(_))));
        assert!(matches!(catalog("Ass", 9), Err(Error::ResourceBound(_))));
    }

    #[test]
    fn dual_dimensions() {
        let expect: &[(&str, &[usize], &[usize])] = &[
            ("Ass", &[1, 2, 6, 24], &[1, 2, 6, 24]),
            ("Com", &[1, 1, 1, 1], &[1, 1, 2, 6]),
            ("Lie", &[1, 1, 2, 6], &[1, 1, 1, 1]),
            ("Sym", &[1, 1, 3, 15], &[1, 1, 0, 0]),
            ("Mag", &[1, 2, 12, 120], &[1, 2, 0, 0]),
            ("preLie", &[1, 2, 9, 64], &[1, 2, 3, 4]),
            ("D", &[1, 4, 36, 24 * 22], &[1, 4, 12, 48]),
        ];
        for (name, p, d) in expect {
            let e = catalog(name, 4).unwrap();
            assert_eq!(&e.operad.dims(), p, "{name}");
            assert_eq!(&e.dual.unwrap().dims(), d, "{name}!");
        }
    }

    #[test]
    fn duals_match_quadratic_dual_presentations() {
        use crate::operads::{presented_operad, quadratic_dual};
        for name in ["Ass", "Com", "Lie", "Sym", "Mag", "preLie", "D"] {
            let e = catalog(name, 4).unwrap();
            let q = presented_operad(&quadratic_dual(&e.presentation).unwrap(), 4).unwrap();
            assert_eq!(q.dims(), e.dual.unwrap().dims(), "{name}");
        }
    }

    #[test]
    fn presentations_reproduce_catalog_souls() {
        use crate::liecplx::soul_complex;
        use crate::linalg::cohomology_dims;
        for name in ["Ass", "Com", "Lie", "Sym", "Mag", "preLie", "D"] {
            let cap = if name == "D" || name == "preLie" { 4 } else { 5 };
            let e = catalog(name, cap).unwrap();
            let f = entry_from_presentation(&e.presentation, cap).unwrap();
            let a = cohomology_dims(&soul_complex(&e).unwrap()).unwrap();
            let b = cohomology_dims(&soul_complex(&f).unwrap()).unwrap();
            assert_eq!(a, b, "{name}");
        }
    }

    #[test]
    fn canonical_coefficients_invert_the_pairing() {
        let p = Pairing {
            matrix: vec![
                vec![Scalar::from_int(0), Scalar::from_int(1)],
                vec![Scalar::from_int(1), Scalar::from_int(0)],
            ],
        };
        let c = p.canonical_coefficients();
        assert_eq!(c, vec![(0, 1, Scalar::one()), (1, 0, Scalar::one())]);
    }
}
