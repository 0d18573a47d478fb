//! The group ring ℚ[ℤⁿ], matrices over it, and push-forward to finite quotients.

pub mod cyclotomic;
pub mod laurent;
pub mod matrix;
pub mod quotient;

pub use cyclotomic::exact_rank_regular;
pub use laurent::{parse_poly, LaurentPoly};
pub use matrix::GroupRingMatrix;
pub use quotient::{push, trace_pushed, PushedMatrix, Quotient};
