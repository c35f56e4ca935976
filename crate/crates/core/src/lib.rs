//! Rational points on genus-4 hyperelliptic supersingular curves
//! `y^2 + y = f x^9 + a x^5 + b x^3 + c x + d` over GF(2^n), n odd.
//!
//! * [`field`]: GF(2^n) arithmetic, trace and Frobenius.
//! * [`quadform`]: the quadratic form behind the character sum, its radical
//!   and the predicted magnitude of the sum.
//! * [`curve_count`]: character sums and direct point counts.
//! * [`weil_enum`]: supersingular Weil polynomials and their products.
//! * [`survey`]: scans, golden examples and reports used by the CLI.

pub mod arith;
pub mod curve_count;
pub mod field;
pub mod gf2;
pub mod quadform;
pub mod survey;
pub mod weil_enum;

pub use curve_count::{CurveError, CurveParams, RankZeroForm, SpectrumRecord};
pub use field::{Fe, FieldConfig, FieldError, FieldSpec};
pub use quadform::{FormProfile, QuadraticFormSpec};
pub use weil_enum::{FactorMultiset, IntPoly, WeilError, WeilPoly};
