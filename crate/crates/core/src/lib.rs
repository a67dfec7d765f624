//! Exact elementary-group calculus over graded polynomial rings.
//!
//! The crate works in `A = R[x_1..x_k]` graded by total degree, with `R` one of
//! the integers, the rationals or a prime field, and provides:
//!
//! * graded arithmetic and the homotopy evaluation `b ↦ b⁺(t)` ([`ring`]);
//! * matrices, the standard symplectic and orthogonal forms and group
//!   membership ([`matrix`], [`forms`]);
//! * words in elementary generators with constructive factorizations
//!   ([`elementary`]);
//! * localization at a constant, dilation, unimodular completion and
//!   local-global patching witnesses ([`local`]).

pub mod element;
pub mod elementary;
pub mod error;
pub mod forms;
pub mod json;
pub mod local;
pub mod matrix;
pub mod ring;
pub mod sample;
pub mod suites;

pub use element::Element;
pub use error::{Error, Result};
pub use forms::{FormKind, FormMatrix, GroupCase};
pub use matrix::{Matrix, MatrixG};
pub use ring::{Coeff, CoefficientRing, GradeDecomposition, GradedPoly, Monomial, PolyRing};
