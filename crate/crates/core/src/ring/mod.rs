//! The graded coefficient machinery: `A = R[x_1..x_k]` with `R ∈ {ℤ, ℚ, F_p}`.

pub mod coeff;
pub mod parse;
pub mod poly;

pub use coeff::{Coeff, CoefficientRing};
pub use poly::{GradeDecomposition, GradedPoly, Monomial, PolyRing, SwanWeibelPoly};
