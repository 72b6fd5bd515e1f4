//! Exact computations with twisted generalized Verma modules W_p(λ,α).
//!
//! The crate builds root systems and Chevalley bases, normal-orders elements of the
//! enveloping algebra, localizes at a root vector, realizes the twisted modules on an
//! explicit basis and again through polynomial differential operators, and checks the
//! two realizations against each other.

pub mod error;
pub mod jobs;
pub mod lattice;
pub mod linalg;
pub mod modules;
pub mod ore;
pub mod pbw;
pub mod rat;
pub mod rootsys;
pub mod weyl;

pub use error::{Error, Result};
pub use rat::Rat;
