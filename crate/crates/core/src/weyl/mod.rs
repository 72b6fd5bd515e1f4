//! Free-field realization: the Weyl algebra of ū, the homomorphism π_λ, the operators
//! p_α, q_α, φ_α and the Fock-type modules.

pub mod fock;
pub mod freefield;
pub mod op;
pub mod realize;
pub mod series;

pub use fock::{FockMode, FockVector};
pub use freefield::{ad_u_matrix, FreeField, PolyMatrix};
pub use op::{Coef, MatrixOperator, Op, WeylOperator};
pub use realize::{realize_and_compare, RealizationReport};
pub use series::{bernoulli, series_apply, SeriesKind};
