//! Operadic cochain complexes of concrete algebras and the operations on them.

pub mod algebra;
pub mod complex;
pub mod mn;
pub mod samples;

pub use algebra::{validate_algebra, AlgebraStructure, OperadRef, PAlgebra};
pub use complex::{cohomology_of_algebra, delta_of_circle_is_chi, CircleReport, Cochain, CochainComplex};
pub use samples::sample_algebra;
pub use mn::{check_mn_algebra, induced_structure, AxiomResult, CohomologySplitting, GradedProducts};
