//! Ring-element abstraction shared by global polynomials and their localizations,
//! so matrices and elementary words are written once for both.

use std::fmt;

use crate::error::Result;
use crate::matrix::Matrix;
use crate::ring::Coeff;

pub trait Element: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    /// Ambient ring descriptor; carried by zeros so arity checks still work.
    type Ctx: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_int(ctx: &Self::Ctx, v: i64) -> Self;

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    /// `b⁺(t)` for a degree-zero `t`.
    fn plus_eval(&self, t: &Coeff) -> Self;

    /// True when the element lies in `A_0` (or its localization).
    fn is_degree_zero(&self) -> bool;

    fn is_unit(&self) -> bool;

    fn det(m: &Matrix<Self>) -> Self;
    fn inverse(m: &Matrix<Self>) -> Result<Matrix<Self>>;

    fn degree_zero_part(&self) -> Self {
        self.plus_eval(&Coeff::from_integer(0.into()))
    }

    /// `a - a⁺(0)`.
    fn positive_part(&self) -> Self {
        self.sub(&self.degree_zero_part())
    }
}
