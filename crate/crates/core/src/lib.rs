//! Zero counts and explicit roots of `x^(2^l+1) + x + a`, its affine
//! companion `a^(2^l) x^(2^(2l)) + x^(2^l) + a x + c`, and a related
//! linearized polynomial over GF(2^(2k)), with exhaustive cross-checks.

pub mod affine;
pub mod cli;
pub mod cnz;
pub mod dobbertin;
pub mod error;
pub mod field;
pub mod formulas;
pub mod linalg;
pub mod linearized;
pub mod oracle;
pub mod psolver;
pub mod rootset;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Fe, FieldCtx, FieldSpec, SubfieldParams};
pub use rootset::{Provenance, RootSet};
