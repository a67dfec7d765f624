//! Denominator clearing: `α_s⁺(sˡ)` and `α_s⁺(b + d) α_s⁺(d)⁻¹` pulled back to `A`.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, MatrixG};
use crate::ring::{Coeff, PolyRing};

use super::localized::{LocRing, LocalizedPoly};

fn ceil_div(a: u32, b: u32) -> u32 {
    a.div_ceil(b)
}

fn check_level(a: &Matrix<LocalizedPoly>) -> Result<()> {
    if !a.is_level_plus() {
        return Err(Error::NotInCongruenceSubgroup);
    }
    Ok(())
}

/// Smallest `l` such that `α⁺(sˡ)` has no denominators: a degree-`d` term with
/// denominator `s^k` (after cancelling its coefficient) needs `l·d ≥ k`.
pub fn dilation_exponent(a: &Matrix<LocalizedPoly>) -> Result<u32> {
    check_level(a)?;
    let mut l = 0;
    for e in a.entries() {
        for (d, k) in e.term_denominators() {
            if k == 0 {
                continue;
            }
            if d == 0 {
                return Err(Error::NotInCongruenceSubgroup);
            }
            l = l.max(ceil_div(k, d));
        }
    }
    Ok(l)
}

/// Converts a localized matrix with every denominator cleared back to `A`.
pub fn pull_back(a: &Matrix<LocalizedPoly>) -> Result<MatrixG> {
    let ring = a.ctx().ring;
    let mut rows = Vec::with_capacity(a.n());
    for r in 0..a.n() {
        let mut row = Vec::with_capacity(a.n());
        for c in 0..a.n() {
            let e = a.get(r, c);
            row.push(e.to_global().ok_or_else(|| {
                Error::DenominatorNotCleared(format!("entry ({}, {}) = {e}", r + 1, c + 1))
            })?);
        }
        rows.push(row);
    }
    Matrix::from_rows(&ring, rows)
}

/// The matrix `β` over `A` with `β_s = α_s⁺(sˡ)`.
pub fn dilate_pullback(a: &Matrix<LocalizedPoly>, l: u32) -> Result<MatrixG> {
    let s_l = a.ctx().s_power(l);
    let beta = pull_back(&a.plus_eval(&s_l))?;
    if a.ctx().localize_matrix(&beta)? != a.plus_eval(&s_l) {
        return Err(Error::Internal("pullback does not re-localize".into()));
    }
    Ok(beta)
}

/// `α⁺(X + d) α⁺(d)⁻¹` as a matrix over `A_s[X]`, the extra variable last.
pub fn difference_matrix(a: &Matrix<LocalizedPoly>, d: &Coeff) -> Result<Matrix<LocalizedPoly>> {
    check_level(a)?;
    let ctx = a.ctx();
    let ring = PolyRing::new(ctx.ring.coeffs, ctx.ring.num_vars + 1);
    let ext = LocRing::new(ring, &ctx.s)?;
    let shift = ring.var(ring.num_vars - 1).add(&ring.constant(d));
    let shifted = a.map(&ext, |e| {
        ext.element(e.num().extend_vars(1).plus_eval_poly(&shift), e.k())
    });
    let at_d = a
        .plus_eval(d)
        .map(&ext, |e| ext.element(e.num().extend_vars(1), e.k()));
    shifted.mul(&at_d.inverse()?)
}

/// Smallest `l` such that `α⁺(b + d) α⁺(d)⁻¹` clears every denominator for
/// all `b ∈ (sˡ)`, read off term by term from the power of the extra variable.
pub fn difference_exponent(a: &Matrix<LocalizedPoly>, d: &Coeff) -> Result<u32> {
    let beta = difference_matrix(a, d)?;
    let x = beta.ctx().ring.num_vars - 1;
    let mut l = 0;
    for e in beta.entries() {
        for ((_, k), (m, _)) in e.term_denominators().into_iter().zip(e.num().terms()) {
            if k == 0 {
                continue;
            }
            let deg_x = m.exponents()[x];
            if deg_x == 0 {
                return Err(Error::Internal(
                    "difference matrix is not the identity at X = 0".into(),
                ));
            }
            l = l.max(ceil_div(k, deg_x));
        }
    }
    Ok(l)
}

/// Pulls `α_s⁺(b + d) α_s⁺(d)⁻¹` back to `A`.
pub fn dilate_difference(a: &Matrix<LocalizedPoly>, b: &Coeff, d: &Coeff) -> Result<MatrixG> {
    check_level(a)?;
    let cr = a.ctx().ring.coeffs;
    let local = a.plus_eval(&cr.add(b, d)).mul(&a.plus_eval(d).inverse()?)?;
    let beta = pull_back(&local).map_err(|e| match e {
        Error::DenominatorNotCleared(msg) => Error::DenominatorNotCleared(format!(
            "b = {b} is not deep enough in the ideal of s: {msg}"
        )),
        other => other,
    })?;
    if a.ctx().localize_matrix(&beta)? != local {
        return Err(Error::Internal("pullback does not re-localize".into()));
    }
    Ok(beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elementary::{word_eval, ElemWord};
    use crate::forms::{is_in_g, GroupCase};
    use crate::ring::CoefficientRing;

    fn int(v: i64) -> Coeff {
        Coeff::from_integer(v.into())
    }

    fn e12(loc: &LocRing, num: &str, k: u32) -> Matrix<LocalizedPoly> {
        let mut m = Matrix::identity(loc, 3);
        m.set(0, 1, loc.element(loc.ring.parse(num).unwrap(), k));
        m
    }

    fn zx_at(s: i64) -> LocRing {
        LocRing::from_int(PolyRing::new(CoefficientRing::Integers, 1), s).unwrap()
    }

    #[test]
    fn exponent_examples() {
        let loc = zx_at(2);
        assert_eq!(dilation_exponent(&e12(&loc, "x", 1)).unwrap(), 1);
        assert_eq!(dilation_exponent(&e12(&loc, "x", 3)).unwrap(), 3);
        assert_eq!(dilation_exponent(&Matrix::identity(&loc, 3)).unwrap(), 0);
        assert_eq!(
            dilation_exponent(&e12(&loc, "1 + x", 1)),
            Err(Error::NotInCongruenceSubgroup)
        );
    }

    #[test]
    fn pullback_examples() {
        let loc = zx_at(2);
        let beta = dilate_pullback(&e12(&loc, "x", 1), 1).unwrap();
        let mut want = MatrixG::identity(&loc.ring, 3);
        want.set(0, 1, loc.ring.var(0));
        assert_eq!(beta, want);
        assert!(dilate_pullback(&Matrix::identity(&loc, 3), 4)
            .unwrap()
            .is_identity());
        assert!(matches!(
            dilate_pullback(&e12(&loc, "x", 3), 2),
            Err(Error::DenominatorNotCleared(_))
        ));
    }

    #[test]
    fn symplectic_pullback() {
        let ring = PolyRing::new(CoefficientRing::Integers, 2);
        let loc = LocRing::from_int(ring, 3).unwrap();
        let arg = loc.element(ring.parse("x*y").unwrap(), 2);
        let w = ElemWord::from_triples(GroupCase::Symplectic, 6, &loc, [(1, 3, arg)]).unwrap();
        let a = word_eval(&w);
        assert_eq!(dilation_exponent(&a).unwrap(), 1);
        let beta = dilate_pullback(&a, 1).unwrap();
        let gw = ElemWord::from_triples(
            GroupCase::Symplectic,
            6,
            &ring,
            [(1, 3, ring.parse("x*y").unwrap())],
        )
        .unwrap();
        assert_eq!(beta, word_eval(&gw));
        assert!(is_in_g(GroupCase::Symplectic, &beta));
    }

    #[test]
    fn difference_examples() {
        let loc = zx_at(2);
        let a = e12(&loc, "x", 1);
        // (5x/2) - (x/2) = 2x
        let beta = dilate_difference(&a, &int(4), &int(1)).unwrap();
        let mut want = MatrixG::identity(&loc.ring, 3);
        want.set(0, 1, loc.ring.parse("2*x").unwrap());
        assert_eq!(beta, want);
        assert_eq!(
            dilate_difference(&a, &int(2), &int(0)).unwrap(),
            dilate_pullback(&a, 1).unwrap()
        );
        let i = Matrix::identity(&loc, 3);
        assert!(dilate_difference(&i, &int(8), &int(3))
            .unwrap()
            .is_identity());
        assert_eq!(difference_exponent(&a, &int(1)).unwrap(), 1);
        assert!(dilate_difference(&e12(&loc, "x", 2), &int(2), &int(0)).is_err());
    }

    #[test]
    fn difference_exponent_sees_cross_terms() {
        // α = E12(x/2) E23(y/2): α⁺(X+d)α⁺(d)⁻¹ has an entry quadratic in X
        let ring = PolyRing::new(CoefficientRing::Integers, 2);
        let loc = LocRing::from_int(ring, 2).unwrap();
        let w = ElemWord::from_triples(
            GroupCase::Linear,
            3,
            &loc,
            [
                (1, 2, loc.element(ring.var(0), 1)),
                (2, 3, loc.element(ring.var(1), 1)),
            ],
        )
        .unwrap();
        let a = word_eval(&w);
        for d in [0, 1, 3] {
            let l = difference_exponent(&a, &int(d)).unwrap();
            let b = loc.s_power(l);
            assert!(dilate_difference(&a, &b, &int(d)).is_ok());
            if l > 0 {
                assert!(dilate_difference(&a, &loc.s_power(l - 1), &int(d)).is_err());
            }
        }
    }
}
