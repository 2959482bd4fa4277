//! Exact, arity-truncated computations with operads, their soul complexes,
//! operadic cochain complexes and natural cochain operations.

pub mod cochain;
pub mod cupnat;
pub mod coinv;
pub mod error;
pub mod liecplx;
pub mod linalg;
pub mod operads;
pub mod perm;
pub mod permcplx;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use perm::Perm;
pub use scalar::Scalar;
