//! The three classical cases, their standard forms `ψ_m` / `ψ̃_m`, the bilinear
//! pairing `⟨v, w⟩`, the rank-two matrices `M(v, w)` and group membership.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, MatrixG};
use crate::ring::{GradedPoly, PolyRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupCase {
    Linear,
    Symplectic,
    Orthogonal,
}

impl GroupCase {
    pub const ALL: [GroupCase; 3] = [
        GroupCase::Linear,
        GroupCase::Symplectic,
        GroupCase::Orthogonal,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            GroupCase::Linear => "linear",
            GroupCase::Symplectic => "symplectic",
            GroupCase::Orthogonal => "orthogonal",
        }
    }

    /// Smallest size accepted by the lemma-level entry points.
    pub fn min_size(&self) -> usize {
        match self {
            GroupCase::Linear => 3,
            _ => 6,
        }
    }

    /// Shape check for any matrix of this case: even size for the form cases.
    pub fn check_shape(&self, n: usize) -> Result<()> {
        match self {
            GroupCase::Linear if n >= 1 => Ok(()),
            GroupCase::Linear => Err(Error::InvalidForm("size 0".into())),
            _ if n >= 2 && n.is_multiple_of(2) => Ok(()),
            _ => Err(Error::InvalidForm(format!(
                "the {} case needs an even size, got {n}",
                self.name()
            ))),
        }
    }

    pub fn check_lemma_size(&self, n: usize) -> Result<()> {
        self.check_shape(n)?;
        if n < self.min_size() {
            return Err(Error::SizeBelowMinimum {
                case: self.name().into(),
                n,
                min: self.min_size(),
            });
        }
        Ok(())
    }

    /// The form kind preserved by this case, if any.
    pub fn form_kind(&self) -> Option<FormKind> {
        match self {
            GroupCase::Linear => None,
            GroupCase::Symplectic => Some(FormKind::Psi),
            GroupCase::Orthogonal => Some(FormKind::PsiTilde),
        }
    }
}

impl fmt::Display for GroupCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "linear" | "gl" | "sl" => Ok(GroupCase::Linear),
            "symplectic" | "sp" => Ok(GroupCase::Symplectic),
            "orthogonal" | "o" => Ok(GroupCase::Orthogonal),
            other => Err(Error::Malformed(format!("unknown case `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormKind {
    Psi,
    PsiTilde,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FormMatrix {
    pub m: usize,
    pub kind: FormKind,
    pub matrix: MatrixG,
}

/// The pairing `σ(2i-1) = 2i`, `σ(2i) = 2i-1` on `1..=n`.
pub fn sigma(i: usize, n: usize) -> Result<usize> {
    if i == 0 || i > n || !n.is_multiple_of(2) {
        return Err(Error::IndexOutOfRange(i, n));
    }
    Ok(if i % 2 == 1 { i + 1 } else { i - 1 })
}

/// 0-based `σ` for internal index arithmetic.
pub(crate) fn sigma0(i: usize) -> usize {
    i ^ 1
}

/// Block-diagonal form with `m` copies of the 2x2 block.
pub fn form_matrix<E: Element>(ctx: &E::Ctx, m: usize, kind: FormKind) -> Matrix<E> {
    let lower = match kind {
        FormKind::Psi => -1,
        FormKind::PsiTilde => 1,
    };
    let (zero, one, low) = (E::zero(ctx), E::one(ctx), E::from_int(ctx, lower));
    Matrix::from_fn(ctx, 2 * m, |r, c| {
        if r / 2 != c / 2 || r == c {
            zero.clone()
        } else if r % 2 == 0 {
            one.clone()
        } else {
            low.clone()
        }
    })
}

pub fn form(ring: &PolyRing, m: usize, kind: FormKind) -> Result<FormMatrix> {
    if m == 0 {
        return Err(Error::InvalidForm("m must be at least 1".into()));
    }
    Ok(FormMatrix {
        m,
        kind,
        matrix: form_matrix(ring, m, kind),
    })
}

fn case_form<E: Element>(ctx: &E::Ctx, case: GroupCase, n: usize) -> Result<Option<Matrix<E>>> {
    case.check_shape(n)?;
    Ok(case.form_kind().map(|k| form_matrix(ctx, n / 2, k)))
}

fn check_len<E>(n: usize, v: &[E], w: &[E]) -> Result<()> {
    if v.len() != n || w.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "vectors of length {} and {}, expected {n}",
            v.len(),
            w.len()
        )));
    }
    Ok(())
}

fn dot<E: Element>(ctx: &E::Ctx, v: &[E], w: &[E]) -> E {
    v.iter()
        .zip(w)
        .fold(E::zero(ctx), |acc, (a, b)| acc.add(&a.mul(b)))
}

/// `ṽ`: `vᵗ` in the linear case, `vᵗψ` or `vᵗψ̃` otherwise (as a row).
pub fn twisted<E: Element>(ctx: &E::Ctx, case: GroupCase, v: &[E]) -> Result<Vec<E>> {
    match case_form::<E>(ctx, case, v.len())? {
        None => Ok(v.to_vec()),
        Some(f) => f.vec_mul(v),
    }
}

pub fn inner_product<E: Element>(ctx: &E::Ctx, case: GroupCase, v: &[E], w: &[E]) -> Result<E> {
    check_len(v.len(), v, w)?;
    Ok(dot(ctx, &twisted(ctx, case, v)?, w))
}

/// `M(v, w)`: `v wᵗ`, `v w̃ + w ṽ` or `v w̃ - w ṽ` by case.
pub fn m_of<E: Element>(ctx: &E::Ctx, case: GroupCase, v: &[E], w: &[E]) -> Result<Matrix<E>> {
    check_len(v.len(), v, w)?;
    let wt = twisted(ctx, case, w)?;
    let first = Matrix::outer(ctx, v, &wt)?;
    match case {
        GroupCase::Linear => Ok(first),
        GroupCase::Symplectic => first.add(&Matrix::outer(ctx, w, &twisted(ctx, case, v)?)?),
        GroupCase::Orthogonal => first.sub(&Matrix::outer(ctx, w, &twisted(ctx, case, v)?)?),
    }
}

/// `I + M(v, w)`.
pub fn transvection_matrix<E: Element>(
    ctx: &E::Ctx,
    case: GroupCase,
    v: &[E],
    w: &[E],
) -> Result<Matrix<E>> {
    Matrix::identity(ctx, v.len()).add(&m_of(ctx, case, v, w)?)
}

/// Invertible, and fixing the form in the symplectic and orthogonal cases.
pub fn is_in_g<E: Element>(case: GroupCase, a: &Matrix<E>) -> bool {
    let Ok(form) = case_form::<E>(a.ctx(), case, a.n()) else {
        return false;
    };
    if let Some(f) = form {
        let fixed = a
            .transpose()
            .mul(&f)
            .and_then(|t| t.mul(a))
            .is_ok_and(|t| t == f);
        if !fixed {
            return false;
        }
    }
    a.is_invertible()
}

pub fn is_in_s<E: Element>(case: GroupCase, a: &Matrix<E>) -> bool {
    is_in_g(case, a) && a.det().is_one()
}

/// `α⁺(0) = I`: the congruence subgroup modulo the positive ideal.
pub fn is_level_plus<E: Element>(a: &Matrix<E>) -> bool {
    a.is_level_plus()
}

/// Entrywise `α⁺(t)` for a constant `t`.
pub fn mat_plus_eval(a: &MatrixG, t: &GradedPoly) -> Result<MatrixG> {
    let c = t
        .constant_value()
        .ok_or_else(|| Error::NotDegreeZero(t.to_string()))?;
    if t.ring() != *a.ctx() {
        return Err(Error::RingMismatch(format!("{} vs {}", t.ring(), a.ctx())));
    }
    Ok(a.plus_eval(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::CoefficientRing;

    fn zx(k: usize) -> PolyRing {
        PolyRing::new(CoefficientRing::Integers, k)
    }

    fn unit_vec(r: &PolyRing, n: usize, i: usize) -> Vec<GradedPoly> {
        (0..n)
            .map(|j| if j == i { r.one() } else { r.zero() })
            .collect()
    }

    #[test]
    fn sigma_pairs_neighbours() {
        assert_eq!(sigma(1, 4).unwrap(), 2);
        assert_eq!(sigma(4, 4).unwrap(), 3);
        for i in 1..=12 {
            assert_eq!(sigma(sigma(i, 12).unwrap(), 12).unwrap(), i);
        }
        assert!(sigma(0, 4).is_err());
        assert!(sigma(5, 4).is_err());
    }

    #[test]
    fn base_blocks() {
        let r = zx(1);
        let psi = form(&r, 1, FormKind::Psi).unwrap().matrix;
        assert_eq!(
            psi.rows(),
            vec![vec![r.zero(), r.one()], vec![r.int(-1), r.zero()]]
        );
        let tilde = form(&r, 1, FormKind::PsiTilde).unwrap().matrix;
        assert_eq!(
            tilde.rows(),
            vec![vec![r.zero(), r.one()], vec![r.one(), r.zero()]]
        );
        assert!(form(&r, 0, FormKind::Psi).is_err());
    }

    #[test]
    fn psi_two_is_block_diagonal() {
        let r = zx(1);
        let psi = form(&r, 2, FormKind::Psi).unwrap().matrix;
        let one = form(&r, 1, FormKind::Psi).unwrap().matrix;
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(psi.get(i, j), one.get(i, j));
                assert_eq!(psi.get(i + 2, j + 2), one.get(i, j));
                assert!(psi.get(i, j + 2).is_zero());
                assert!(psi.get(i + 2, j).is_zero());
            }
        }
        assert!(psi.det().is_one());
        let neg = psi.neg();
        assert_eq!(psi.inverse().unwrap(), neg);
    }

    #[test]
    fn form_symmetry_and_invertibility() {
        let r = zx(0);
        for m in 1..=6 {
            let psi = form(&r, m, FormKind::Psi).unwrap().matrix;
            assert_eq!(psi.transpose(), psi.neg());
            assert!(psi.is_invertible());
            let t = form(&r, m, FormKind::PsiTilde).unwrap().matrix;
            assert_eq!(t.transpose(), t);
            assert!(t.is_invertible());
        }
    }

    #[test]
    fn pairings_on_basis_vectors() {
        let r = zx(1);
        let e = |i| unit_vec(&r, 4, i);
        assert!(inner_product(&r, GroupCase::Linear, &e(0), &e(0))
            .unwrap()
            .is_one());
        assert!(inner_product(&r, GroupCase::Symplectic, &e(0), &e(1))
            .unwrap()
            .is_one());
        assert_eq!(
            inner_product(&r, GroupCase::Symplectic, &e(1), &e(0)).unwrap(),
            r.int(-1)
        );
        assert!(inner_product(&r, GroupCase::Orthogonal, &e(0), &e(0))
            .unwrap()
            .is_zero());
        assert!(inner_product(&r, GroupCase::Linear, &e(0), &unit_vec(&r, 3, 0)).is_err());
    }

    #[test]
    fn m_of_examples() {
        let r = zx(2);
        let e = |i| unit_vec(&r, 4, i);
        let m = m_of(&r, GroupCase::Linear, &e(0), &e(1)).unwrap();
        assert_eq!(m, Matrix::unit(&r, 4, 0, 1, r.one()));
        let v = vec![r.var(0), r.one(), r.zero(), r.var(1)];
        let w = vec![r.int(2), r.var(1), r.var(0), r.zero()];
        let sym = GroupCase::Symplectic;
        assert_eq!(
            m_of(&r, sym, &v, &w).unwrap(),
            m_of(&r, sym, &w, &v).unwrap()
        );
        assert_eq!(
            m_of(&r, GroupCase::Orthogonal, &v, &v).unwrap(),
            Matrix::zero(&r, 4)
        );
    }

    #[test]
    fn membership_predicates() {
        let q = PolyRing::new(CoefficientRing::Rationals, 1);
        for case in GroupCase::ALL {
            let i = Matrix::<GradedPoly>::identity(&q, 6);
            assert!(is_in_g(case, &i) && is_in_s(case, &i) && is_level_plus(&i));
        }
        let mut d = Matrix::<GradedPoly>::identity(&q, 3);
        d.set(0, 0, q.int(2));
        assert!(is_in_g(GroupCase::Linear, &d));
        assert!(!is_in_s(GroupCase::Linear, &d));
        // odd sizes cannot carry a form
        assert!(!is_in_g(GroupCase::Symplectic, &MatrixG::identity(&q, 3)));
    }

    #[test]
    fn plus_eval_on_matrices() {
        let r = zx(1);
        let e = Matrix::identity(&r, 3);
        let mut a = e.clone();
        a.set(0, 1, r.parse("2 + x").unwrap());
        assert_eq!(mat_plus_eval(&a, &r.one()).unwrap(), a);
        let mut want = e.clone();
        want.set(0, 1, r.parse("2 + 3*x").unwrap());
        assert_eq!(mat_plus_eval(&a, &r.int(3)).unwrap(), want);
        assert!(mat_plus_eval(&a, &r.var(0)).is_err());
        let mut ex = e.clone();
        ex.set(0, 1, r.var(0));
        assert!(mat_plus_eval(&ex, &r.zero()).unwrap().is_identity());
    }

    #[test]
    fn lemma_size_bounds() {
        assert!(GroupCase::Linear.check_lemma_size(3).is_ok());
        assert!(matches!(
            GroupCase::Linear.check_lemma_size(2),
            Err(Error::SizeBelowMinimum { .. })
        ));
        assert!(GroupCase::Symplectic.check_lemma_size(4).is_err());
        assert!(GroupCase::Orthogonal.check_lemma_size(7).is_err());
        assert!(GroupCase::Orthogonal.check_lemma_size(8).is_ok());
    }
}
