//! Iso-dual algebraic geometry codes over finite fields.
//!
//! Field and matrix arithmetic, divisors on function field extensions,
//! concrete curve families, code builders with iso-dual certification, and
//! Carlitz cyclotomic numerology.

pub mod checks;
pub mod codes;
pub mod curves;
pub mod cyclotomic;
pub mod divisor;
pub mod field;
pub mod linalg;
pub mod poly;

pub use codes::{
    certify_isodual, min_distance, param_report, CodeError, DistanceMode, DistanceReport,
    IsoDualCertificate, LinearCode, ParamReport, Provenance, Verdict,
};
pub use curves::{CurveError, CurveModel, Family};
pub use cyclotomic::{CarlitzPoly, CyclotomicError};
pub use divisor::{Divisor, DivisorError, ExtensionDescriptor, Place};
pub use field::{Field, FieldError};
pub use linalg::{LinalgError, MatGF};
pub use poly::Poly;
