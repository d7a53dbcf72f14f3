//! Skew polynomial rings over finite fields, semilinear maps and the
//! invariant codes they define.

pub mod cli;
pub mod codec;
pub mod codes;
pub mod construct;
pub mod duals;
pub mod embed;
pub mod error;
pub mod field;
pub mod matrix;
pub mod replicate;
pub mod semilinear;
pub mod skew_poly;
mod text;

pub use codes::{LinearCode, ModuleThetaCode, ProductTCode};
pub use embed::EmbeddingData;
pub use error::{Error, Result};
pub use field::{Automorphism, Elem, Field, FieldElement};
pub use matrix::{Matrix, Vector};
pub use semilinear::{Decomposition, SemiLinearMap};
pub use skew_poly::{PeriodData, SkewPoly};
