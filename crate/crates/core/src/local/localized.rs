//! The localization `A_s` at a nonzero constant `s`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::matrix::{det_bareiss, scaled_inverse, Matrix, MatrixG};
use crate::ring::coeff::as_integer;
use crate::ring::{Coeff, CoefficientRing, GradedPoly, PolyRing};

/// `A_s`: the ambient polynomial ring together with the inverted constant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocRing {
    pub ring: PolyRing,
    pub s: Coeff,
}

impl LocRing {
    pub fn new(ring: PolyRing, s: &Coeff) -> Result<Self> {
        let s = ring
            .coeffs
            .reduce(s)
            .map_err(|_| Error::BadLocalization(format!("{s} is not in {}", ring.coeffs)))?;
        if s.is_zero() {
            return Err(Error::BadLocalization("cannot invert zero".into()));
        }
        Ok(LocRing { ring, s })
    }

    pub fn from_int(ring: PolyRing, s: i64) -> Result<Self> {
        Self::new(ring, &Coeff::from_integer(s.into()))
    }

    pub fn s_power(&self, k: u32) -> Coeff {
        self.ring.coeffs.pow(&self.s, k)
    }

    pub fn element(&self, num: GradedPoly, k: u32) -> LocalizedPoly {
        LocalizedPoly::normalized(self.clone(), num, k)
    }

    pub fn localize(&self, p: &GradedPoly) -> Result<LocalizedPoly> {
        if p.ring() != self.ring {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                p.ring(),
                self.ring
            )));
        }
        Ok(self.element(p.clone(), 0))
    }

    pub fn localize_matrix(&self, a: &MatrixG) -> Result<Matrix<LocalizedPoly>> {
        if *a.ctx() != self.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", a.ctx(), self.ring)));
        }
        Ok(a.map(self, |e| self.element(e.clone(), 0)))
    }

    /// Whether the constant `c` becomes a unit after inverting `s`.
    pub fn is_unit_constant(&self, c: &Coeff) -> bool {
        if c.is_zero() {
            return false;
        }
        match self.ring.coeffs {
            CoefficientRing::Integers => {
                let (Some(c), Some(s)) = (as_integer(c), as_integer(&self.s)) else {
                    return false;
                };
                strip_common(c.abs(), s).is_one()
            }
            _ => true,
        }
    }

    /// `1 / c` for a constant unit of `A_s`.
    pub fn invert_constant(&self, c: &Coeff) -> Option<LocalizedPoly> {
        if !self.is_unit_constant(c) {
            return None;
        }
        match self.ring.coeffs {
            CoefficientRing::Integers => {
                // c | s^k for some k; then 1/c = (s^k / c) / s^k
                let ci = as_integer(c)?;
                let s = as_integer(&self.s)?;
                let mut k = 0u32;
                let mut sk = BigInt::one();
                while !sk.is_multiple_of(ci) {
                    sk *= s;
                    k += 1;
                }
                let q = Coeff::from_integer(sk / ci);
                Some(self.element(self.ring.constant(&q), k))
            }
            cr => Some(self.element(self.ring.constant(&cr.inverse(c)?), 0)),
        }
    }
}

/// Removes from `c` every prime factor it shares with `s`.
fn strip_common(mut c: BigInt, s: &BigInt) -> BigInt {
    loop {
        let g = c.gcd(s);
        if g.is_one() || c.is_zero() {
            return c;
        }
        c /= g;
    }
}

impl fmt::Display for LocRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[1/{}]", self.ring, self.s)
    }
}

/// `num / s^k`, normalized so that `s` does not divide `num` when `k > 0`.
/// Over a field `s` is already a unit, so `k` is always zero there.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalizedPoly {
    ctx: LocRing,
    num: GradedPoly,
    k: u32,
}

impl LocalizedPoly {
    fn normalized(ctx: LocRing, mut num: GradedPoly, mut k: u32) -> Self {
        if num.is_zero() {
            return LocalizedPoly { ctx, num, k: 0 };
        }
        if k > 0 && ctx.ring.coeffs.is_field() {
            let inv = ctx
                .ring
                .coeffs
                .inverse(&ctx.s_power(k))
                .expect("nonzero in a field");
            return LocalizedPoly {
                num: num.scale(&inv),
                ctx,
                k: 0,
            };
        }
        while k > 0 {
            match num.div_coeff(&ctx.s) {
                Some(q) => {
                    num = q;
                    k -= 1;
                }
                None => break,
            }
        }
        LocalizedPoly { ctx, num, k }
    }

    pub fn loc_ring(&self) -> &LocRing {
        &self.ctx
    }

    pub fn num(&self) -> &GradedPoly {
        &self.num
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn s(&self) -> &Coeff {
        &self.ctx.s
    }

    /// The element as a polynomial over `A`, if it has no denominator.
    pub fn to_global(&self) -> Option<GradedPoly> {
        (self.k == 0).then(|| self.num.clone())
    }

    /// `num · s^(target - k)`, the numerator over the common denominator `s^target`.
    pub fn lift_to(&self, target: u32) -> GradedPoly {
        debug_assert!(target >= self.k);
        self.num.scale(&self.ctx.s_power(target - self.k))
    }

    /// Per term, the exponent of `s` left in the denominator after cancelling
    /// what divides the coefficient: `(degree, remaining exponent)`.
    pub fn term_denominators(&self) -> Vec<(u32, u32)> {
        self.num
            .terms()
            .map(|(m, c)| {
                let single = self.ctx.ring.constant(c);
                let v = single.s_adic_content(&self.ctx.s, self.k);
                (m.degree(), self.k - v)
            })
            .collect()
    }

    /// `b⁺(t)` for a degree-zero `t ∈ A_s`.
    pub fn plus_eval_local(&self, t: &LocalizedPoly) -> Result<LocalizedPoly> {
        let tc = t
            .num
            .constant_value()
            .ok_or_else(|| Error::NotDegreeZero(t.to_string()))?;
        if t.k == 0 {
            return Ok(self.ctx.element(self.num.plus_eval_coeff(&tc), self.k));
        }
        // Σ num_d (c / s^j)^d / s^k over the common denominator s^(k + j·top)
        let top = self.num.degree().unwrap_or(0);
        let mut acc = self.ctx.ring.zero();
        let cr = self.ctx.ring.coeffs;
        for (d, part) in self.num.grade_decompose().parts {
            let scale = cr.mul(&cr.pow(&tc, d), &self.ctx.s_power(t.k * (top - d)));
            acc = acc.add(&part.scale(&scale));
        }
        Ok(self.ctx.element(acc, self.k + t.k * top))
    }
}

impl fmt::Display for LocalizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 0 {
            write!(f, "{}", self.num)
        } else if self.num.num_terms() == 1 {
            write!(f, "{}/{}^{}", self.num, self.ctx.s, self.k)
        } else {
            write!(f, "({})/{}^{}", self.num, self.ctx.s, self.k)
        }
    }
}

/// Common-denominator lift of a localized matrix: `(N, K)` with `α = N / s^K`.
pub fn common_denominator(a: &Matrix<LocalizedPoly>) -> (MatrixG, u32) {
    let big_k = a.entries().iter().map(|e| e.k).max().unwrap_or(0);
    (a.map(&a.ctx().ring, |e| e.lift_to(big_k)), big_k)
}

impl Element for LocalizedPoly {
    type Ctx = LocRing;

    fn ctx(&self) -> LocRing {
        self.ctx.clone()
    }

    fn zero(ctx: &LocRing) -> Self {
        ctx.element(ctx.ring.zero(), 0)
    }

    fn one(ctx: &LocRing) -> Self {
        ctx.element(ctx.ring.one(), 0)
    }

    fn from_int(ctx: &LocRing, v: i64) -> Self {
        ctx.element(ctx.ring.int(v), 0)
    }

    fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx, "arithmetic across localizations");
        let k = self.k.max(other.k);
        self.ctx.element(self.lift_to(k).add(&other.lift_to(k)), k)
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx, "arithmetic across localizations");
        self.ctx.element(self.num.mul(&other.num), self.k + other.k)
    }

    fn neg(&self) -> Self {
        LocalizedPoly {
            ctx: self.ctx.clone(),
            num: self.num.neg(),
            k: self.k,
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.k == 0 && self.num.is_one()
    }

    fn plus_eval(&self, t: &Coeff) -> Self {
        if let Some(ti) = as_integer(t) {
            let t = Coeff::from_integer(ti.clone());
            return self.ctx.element(self.num.plus_eval_coeff(&t), self.k);
        }
        // a fraction whose denominator is a power of s
        let mut j = 0u32;
        let mut scaled = t.clone();
        while !scaled.is_integer() {
            scaled *= &self.ctx.s;
            j += 1;
            assert!(j < 4096, "{t} is not an element of {}", self.ctx);
        }
        let local = self.ctx.element(self.ctx.ring.constant(&scaled), j);
        self.plus_eval_local(&local).expect("constant argument")
    }

    fn is_degree_zero(&self) -> bool {
        self.num.is_constant()
    }

    fn is_unit(&self) -> bool {
        self.num
            .constant_value()
            .is_some_and(|c| self.ctx.is_unit_constant(&c))
    }

    fn det(m: &Matrix<Self>) -> Self {
        let (num, big_k) = common_denominator(m);
        m.ctx().element(det_bareiss(&num), big_k * m.n() as u32)
    }

    fn inverse(m: &Matrix<Self>) -> Result<Matrix<Self>> {
        // (N / s^K)⁻¹ = s^K N⁻¹ = s^K R / d
        let ctx = m.ctx().clone();
        let (num, big_k) = common_denominator(m);
        let (d, r) = scaled_inverse(&num)
            .ok_or_else(|| Error::NotInvertible("matrix is singular".into()))?;
        let d_inv = d
            .constant_value()
            .and_then(|c| ctx.invert_constant(&c))
            .ok_or_else(|| Error::NotInvertible(format!("determinant {d} is not a unit")))?;
        let scale = ctx
            .element(ctx.ring.constant(&ctx.s_power(big_k)), 0)
            .mul(&d_inv);
        Ok(r.map(&ctx, |e| ctx.element(e.clone(), 0).mul(&scale)))
    }
}

/// `a_s = b_s ⇔ a = b` for this instance. The rings here are domains, so the
/// localization map is injective; a mismatch means an arithmetic bug.
pub fn injectivity_check(a: &MatrixG, b: &MatrixG, s: &Coeff) -> Result<bool> {
    let loc = LocRing::new(*a.ctx(), s)?;
    let same_local = loc.localize_matrix(a)? == loc.localize_matrix(b)?;
    let same_global = a == b;
    if same_local != same_global {
        return Err(Error::Internal(format!(
            "localization at {s} identified distinct matrices"
        )));
    }
    Ok(true)
}
