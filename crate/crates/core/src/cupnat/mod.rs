//! Natural operations on operadic cochains: closed cup operations, unary
//! operations, and operations described by decorated trees.

pub mod natural;
pub mod unary;
pub mod zp;

pub use natural::{
    cup_specs, delta_on_op, enumerate_tree_ops, eval_natural_op, h0_binary_evidence, h0_binary_evidence_on,
    identity_spec, constant_spec, op_degree, parse_op_tree, soul_realize, Bracket, Circle, Cup, Delta,
    H0BinaryReport, NaturalOp, NaturalOpSpec, Node, Projection, Shape,
};
pub use zp::{
    cup_defect, image_exactness_evidence, nonsigma_cup_check, zp_closed_under_composition, zp_solve, zp_solve_in, ClosureReport,
    CupOperad, ExactnessReport, NonSigmaReport, ZpBasis,
};
pub use unary::{module_endo_space, module_endo_space_of, sym_b1_fixture, ModuleEndo, ModuleEndoSpace, SymFixture};
