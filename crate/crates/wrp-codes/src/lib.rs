//! Ternary self-orthogonal and LCD codes from weakly regular plateaued
//! functions.
//!
//! The crate builds augmented trace codes over GF(3) whose defining sets
//! come from pairs of plateaued functions, predicts their parameters and
//! weight distributions in closed form, and verifies every prediction
//! against direct enumeration. All spectral arithmetic is exact in the
//! Eisenstein ring Z[zeta_3].

pub mod charsums;
pub mod codes;
pub mod constructions;
pub mod field;
pub mod spectrum;

pub use codes::{CodeReport, Gf3Matrix, LinearCode, WeightDistribution};
pub use field::{Field, FieldElement, Gf3};
pub use spectrum::{analyze, Analysis, Eisenstein, SpectrumProfile, TernaryFunction};
