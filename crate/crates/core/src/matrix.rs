//! Dense square matrices over an [`Element`] ring.
//!
//! Column-vector convention throughout: `Matrix::mul_vec` multiplies a column,
//! `Matrix::vec_mul` a row.

use std::fmt;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::ring::{Coeff, GradedPoly, PolyRing};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E: Element> {
    ctx: E::Ctx,
    n: usize,
    entries: Vec<E>,
}

pub type MatrixG = Matrix<GradedPoly>;

impl<E: Element> Matrix<E> {
    pub fn from_fn(ctx: &E::Ctx, n: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(f(r, c));
            }
        }
        Matrix {
            ctx: ctx.clone(),
            n,
            entries,
        }
    }

    pub fn identity(ctx: &E::Ctx, n: usize) -> Self {
        let (zero, one) = (E::zero(ctx), E::one(ctx));
        Self::from_fn(
            ctx,
            n,
            |r, c| if r == c { one.clone() } else { zero.clone() },
        )
    }

    pub fn zero(ctx: &E::Ctx, n: usize) -> Self {
        let zero = E::zero(ctx);
        Self::from_fn(ctx, n, |_, _| zero.clone())
    }

    pub fn from_rows(ctx: &E::Ctx, rows: Vec<Vec<E>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} entries, expected {n}",
                    r + 1,
                    row.len()
                )));
            }
            for e in row {
                if e.ctx() != *ctx {
                    return Err(Error::RingMismatch(format!("{} vs {}", e.ctx(), ctx)));
                }
                entries.push(e);
            }
        }
        Ok(Matrix {
            ctx: ctx.clone(),
            n,
            entries,
        })
    }

    /// `e_ij` scaled: a single `value` at 0-based `(r, c)`.
    pub fn unit(ctx: &E::Ctx, n: usize, r: usize, c: usize, value: E) -> Self {
        let mut m = Self::zero(ctx, n);
        m.set(r, c, value);
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> &E::Ctx {
        &self.ctx
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.entries[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.entries[r * self.n + c] = v;
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<E>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.n).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn map<F: Element>(&self, ctx: &F::Ctx, f: impl Fn(&E) -> F) -> Matrix<F> {
        Matrix {
            ctx: ctx.clone(),
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.n, self.n, other.n, other.n
            )));
        }
        if self.ctx != other.ctx {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.ctx, other.ctx
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.n;
        let mut out = Self::zero(&self.ctx, n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * n + c;
                    out.entries[idx] = out.entries[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Matrix {
            ctx: self.ctx.clone(),
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Matrix {
            ctx: self.ctx.clone(),
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        self.map(&self.ctx, E::neg)
    }

    pub fn scale(&self, s: &E) -> Self {
        self.map(&self.ctx, |e| e.mul(s))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.n, |r, c| self.get(c, r).clone())
    }

    /// Product of a sequence of matrices; the identity when empty.
    pub fn product<'a>(
        ctx: &E::Ctx,
        n: usize,
        factors: impl IntoIterator<Item = &'a Self>,
    ) -> Result<Self>
    where
        E: 'a,
    {
        factors
            .into_iter()
            .try_fold(Self::identity(ctx, n), |acc, f| acc.mul(f))
    }

    /// Column vector `self · v`.
    pub fn mul_vec(&self, v: &[E]) -> Result<Vec<E>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {}x{}",
                v.len(),
                self.n,
                self.n
            )));
        }
        Ok((0..self.n)
            .map(|r| {
                (0..self.n).fold(E::zero(&self.ctx), |acc, c| {
                    acc.add(&self.get(r, c).mul(&v[c]))
                })
            })
            .collect())
    }

    /// Row vector `v · self`.
    pub fn vec_mul(&self, v: &[E]) -> Result<Vec<E>> {
        self.transpose().mul_vec(v)
    }

    /// Outer product `v wᵗ`.
    pub fn outer(ctx: &E::Ctx, v: &[E], w: &[E]) -> Result<Self> {
        if v.len() != w.len() {
            return Err(Error::DimensionMismatch(format!(
                "vectors of length {} and {}",
                v.len(),
                w.len()
            )));
        }
        Ok(Self::from_fn(ctx, v.len(), |r, c| v[r].mul(&w[c])))
    }

    /// Entrywise `α⁺(t)`.
    pub fn plus_eval(&self, t: &Coeff) -> Self {
        self.map(&self.ctx, |e| e.plus_eval(t))
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|r| {
            (0..self.n).all(|c| {
                let e = self.get(r, c);
                if r == c {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    /// `α⁺(0) = I`: congruent to the identity modulo the positive ideal.
    pub fn is_level_plus(&self) -> bool {
        self.plus_eval(&Coeff::from_integer(0.into())).is_identity()
    }

    pub fn det(&self) -> E {
        E::det(self)
    }

    pub fn inverse(&self) -> Result<Self> {
        E::inverse(self)
    }

    pub fn is_invertible(&self) -> bool {
        self.det().is_unit()
    }
}

impl<E: Element> fmt::Display for Matrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .chunks(self.n.max(1))
            .map(|row| {
                row.iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl Element for GradedPoly {
    type Ctx = PolyRing;

    fn ctx(&self) -> PolyRing {
        self.ring()
    }

    fn zero(ctx: &PolyRing) -> Self {
        ctx.zero()
    }

    fn one(ctx: &PolyRing) -> Self {
        ctx.one()
    }

    fn from_int(ctx: &PolyRing, v: i64) -> Self {
        ctx.int(v)
    }

    fn add(&self, other: &Self) -> Self {
        GradedPoly::add(self, other)
    }

    fn sub(&self, other: &Self) -> Self {
        GradedPoly::sub(self, other)
    }

    fn mul(&self, other: &Self) -> Self {
        GradedPoly::mul(self, other)
    }

    fn neg(&self) -> Self {
        GradedPoly::neg(self)
    }

    fn is_zero(&self) -> bool {
        GradedPoly::is_zero(self)
    }

    fn is_one(&self) -> bool {
        GradedPoly::is_one(self)
    }

    fn plus_eval(&self, t: &Coeff) -> Self {
        self.plus_eval_coeff(t)
    }

    fn is_degree_zero(&self) -> bool {
        self.is_constant()
    }

    fn is_unit(&self) -> bool {
        self.constant_value()
            .is_some_and(|c| self.coeff_ring().is_unit(&c))
    }

    fn det(m: &Matrix<Self>) -> Self {
        det_bareiss(m)
    }

    fn inverse(m: &Matrix<Self>) -> Result<Matrix<Self>> {
        if let Some(inv) = unit_pivot_inverse(m) {
            return Ok(inv);
        }
        let (d, adj) =
            scaled_inverse(m).ok_or_else(|| Error::NotInvertible("matrix is singular".into()))?;
        let c = d
            .constant_value()
            .filter(|c| m.ctx().coeffs.is_unit(c))
            .ok_or_else(|| Error::NotInvertible(format!("determinant {d} is not a unit")))?;
        let inv = m.ctx().coeffs.inverse(&c).expect("unit");
        Ok(adj.map(m.ctx(), |e| e.scale(&inv)))
    }
}

/// Gauss-Jordan with full pivoting restricted to unit constants. Elementary
/// matrices almost always admit such a pivot sequence, which avoids the
/// degree growth of fraction-free elimination; `None` when it gets stuck.
pub fn unit_pivot_inverse(m: &MatrixG) -> Option<MatrixG> {
    let n = m.n();
    let ring = *m.ctx();
    let cr = ring.coeffs;
    let mut a: Vec<Vec<GradedPoly>> = m
        .rows()
        .into_iter()
        .enumerate()
        .map(|(r, mut row)| {
            row.extend((0..n).map(|c| if c == r { ring.one() } else { ring.zero() }));
            row
        })
        .collect();
    let mut row_done = vec![false; n];
    let mut col_done = vec![false; n];
    let mut col_of = vec![0; n];
    for _ in 0..n {
        let (r, c, u) = (0..n)
            .filter(|&r| !row_done[r])
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .filter(|&(_, c)| !col_done[c])
            .find_map(|(r, c)| {
                let v = a[r][c].constant_value()?;
                cr.inverse(&v).map(|inv| (r, c, inv))
            })?;
        for e in a[r].iter_mut() {
            *e = e.scale(&u);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in 0..2 * n {
                if !pivot_row[j].is_zero() {
                    row[j] = row[j].sub(&f.mul(&pivot_row[j]));
                }
            }
        }
        row_done[r] = true;
        col_done[c] = true;
        col_of[r] = c;
    }
    // row r of the reduced left block is e_{col_of[r]}
    let mut inv = MatrixG::zero(&ring, n);
    for r in 0..n {
        for j in 0..n {
            inv.set(col_of[r], j, a[r][n + j].clone());
        }
    }
    Some(inv)
}

fn pick_pivot(rows: &[Vec<GradedPoly>], from: usize, col: usize) -> Option<usize> {
    (from..rows.len())
        .filter(|&r| !rows[r][col].is_zero())
        .min_by_key(|&r| rows[r][col].num_terms())
}

fn exact(num: &GradedPoly, den: &GradedPoly) -> GradedPoly {
    num.exact_div(den)
        .expect("fraction-free elimination divides exactly")
}

/// Determinant by fraction-free (Bareiss) elimination. Every division is exact
/// in the polynomial ring, so no fractions are ever formed.
pub fn det_bareiss(m: &MatrixG) -> GradedPoly {
    let n = m.n();
    let ring = *m.ctx();
    if n == 0 {
        return ring.one();
    }
    let mut a = m.rows();
    let mut prev = ring.one();
    let mut negate = false;
    for k in 0..n {
        let Some(p) = pick_pivot(&a, k, k) else {
            return ring.zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        if k + 1 == n {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = exact(&num, &prev);
            }
            a[i][k] = ring.zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Determinant by Laplace expansion along the first row; exponential, used to
/// cross-check [`det_bareiss`] on small matrices.
pub fn det_cofactor(m: &MatrixG) -> GradedPoly {
    fn rec(rows: &[Vec<GradedPoly>], ring: PolyRing) -> GradedPoly {
        let n = rows.len();
        match n {
            0 => ring.one(),
            1 => rows[0][0].clone(),
            _ => {
                let mut acc = ring.zero();
                for c in 0..n {
                    if rows[0][c].is_zero() {
                        continue;
                    }
                    let minor: Vec<Vec<GradedPoly>> = rows[1..]
                        .iter()
                        .map(|r| {
                            r.iter()
                                .enumerate()
                                .filter(|(j, _)| *j != c)
                                .map(|(_, e)| e.clone())
                                .collect()
                        })
                        .collect();
                    let term = rows[0][c].mul(&rec(&minor, ring));
                    acc = if c % 2 == 0 {
                        acc.add(&term)
                    } else {
                        acc.sub(&term)
                    };
                }
                acc
            }
        }
    }
    rec(&m.rows(), *m.ctx())
}

/// Fraction-free Gauss-Jordan on `[M | I]`. Returns `(d, R)` with `R = d·M⁻¹`
/// where `d = ±det M`, or `None` if `M` is singular.
pub fn scaled_inverse(m: &MatrixG) -> Option<(GradedPoly, MatrixG)> {
    let n = m.n();
    let ring = *m.ctx();
    let mut a: Vec<Vec<GradedPoly>> = m
        .rows()
        .into_iter()
        .enumerate()
        .map(|(r, mut row)| {
            row.extend((0..n).map(|c| if c == r { ring.one() } else { ring.zero() }));
            row
        })
        .collect();
    let mut prev = ring.one();
    for k in 0..n {
        let p = pick_pivot(&a, k, k)?;
        a.swap(p, k);
        let pivot_row = a[k].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let factor = row[k].clone();
            for j in 0..2 * n {
                if j == k {
                    continue;
                }
                let num = pivot_row[k].mul(&row[j]).sub(&factor.mul(&pivot_row[j]));
                row[j] = exact(&num, &prev);
            }
            row[k] = ring.zero();
        }
        prev = pivot_row[k].clone();
    }
    let right = Matrix::from_fn(&ring, n, |r, c| a[r][n + c].clone());
    Some((prev, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::CoefficientRing;

    fn zx() -> PolyRing {
        PolyRing::new(CoefficientRing::Integers, 1)
    }

    fn mat(ring: PolyRing, text: &str) -> MatrixG {
        let rows = text
            .split(';')
            .map(|r| r.split(',').map(|e| ring.parse(e).unwrap()).collect())
            .collect();
        Matrix::from_rows(&ring, rows).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let r = zx();
        let a = mat(r, "1,x,2;x^2,0,1;3,x,x");
        let i = Matrix::identity(&r, 3);
        assert_eq!(i.mul(&a).unwrap(), a);
        assert_eq!(a.mul(&i).unwrap(), a);
    }

    #[test]
    fn size_mismatch_is_reported() {
        let r = zx();
        let a = Matrix::<GradedPoly>::identity(&r, 3);
        let b = Matrix::identity(&r, 2);
        assert!(matches!(a.mul(&b), Err(Error::DimensionMismatch(_))));
        let q = PolyRing::new(CoefficientRing::Rationals, 1);
        assert!(matches!(
            a.add(&Matrix::identity(&q, 3)),
            Err(Error::RingMismatch(_))
        ));
    }

    #[test]
    fn determinants_agree() {
        let r = PolyRing::new(CoefficientRing::Integers, 2);
        let a = mat(r, "x,1,y,0;2,x*y,1,1;0,y,x,3;1,1,1,x+y");
        assert_eq!(det_bareiss(&a), det_cofactor(&a));
        let zero_pivot = mat(r, "0,1,0;1,0,0;0,0,x");
        assert_eq!(det_bareiss(&zero_pivot), r.parse("-x").unwrap());
        assert_eq!(det_cofactor(&zero_pivot), r.parse("-x").unwrap());
        let singular = mat(r, "x,y;x,y");
        assert!(det_bareiss(&singular).is_zero());
    }

    #[test]
    fn unitriangular_det_is_one() {
        let r = zx();
        assert!(mat(r, "1,0,x^2;0,1,0;0,0,1").det().is_one());
        assert!(Matrix::<GradedPoly>::identity(&r, 5).det().is_one());
    }

    #[test]
    fn inverse_of_elementary() {
        let r = zx();
        let e = mat(r, "1,x,0;0,1,0;0,0,1");
        let inv = e.inverse().unwrap();
        assert_eq!(inv, mat(r, "1,-x,0;0,1,0;0,0,1"));
        assert_eq!(
            Matrix::<GradedPoly>::identity(&r, 4).inverse().unwrap(),
            Matrix::identity(&r, 4)
        );
    }

    #[test]
    fn non_unit_determinant_is_rejected() {
        let r = zx();
        let d = mat(r, "2,0;0,1");
        assert!(matches!(d.inverse(), Err(Error::NotInvertible(_))));
        let q = PolyRing::new(CoefficientRing::Rationals, 1);
        let d = mat(q, "2,0;0,1");
        assert_eq!(d.inverse().unwrap(), mat(q, "1/2,0;0,1"));
        let sing = mat(r, "x,x;1,1");
        assert!(sing.inverse().is_err());
    }

    #[test]
    fn inverse_with_pivoting() {
        let r = PolyRing::new(CoefficientRing::Integers, 2);
        // product of elementary matrices with a zero leading entry
        let a = mat(r, "0,1,0;1,0,0;0,0,1")
            .mul(&mat(r, "1,x,y;0,1,x*y;0,0,1"))
            .unwrap();
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn unit_pivots_agree_with_fraction_free() {
        let r = PolyRing::new(CoefficientRing::Integers, 2);
        // [[1 + x^2, x], [x, 1]] has no unit in its first column
        let a = mat(r, "1 + x^2, x, 0; x, 1, y; 0, 0, 1");
        let fast = unit_pivot_inverse(&a).unwrap();
        let (d, adj) = scaled_inverse(&a).unwrap();
        assert_eq!(
            adj.map(&r, |e| e.scale(&d.constant_value().unwrap().recip())),
            fast
        );
        assert!(a.mul(&fast).unwrap().is_identity());
        assert!(unit_pivot_inverse(&mat(r, "x, 1; 1, 0")).is_some());
        assert!(unit_pivot_inverse(&mat(r, "1 + x, x; x, 1 - x")).is_none());
    }
}
