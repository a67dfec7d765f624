//! Elementary generators `E_ij`, `se_ij`, `oe_ij` and words in them.

use std::fmt;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::forms::{sigma0, GroupCase};
use crate::matrix::Matrix;
use crate::ring::Coeff;

/// One elementary generator. Indices are 1-based and stored canonically: the
/// symplectic and orthogonal constructors rewrite `i > j` into the `i < j`
/// form that denotes the same matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ElemGen<E: Element> {
    case: GroupCase,
    i: usize,
    j: usize,
    arg: E,
}

impl<E: Element> ElemGen<E> {
    pub fn new(case: GroupCase, n: usize, i: usize, j: usize, arg: E) -> Result<Self> {
        case.check_shape(n)?;
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange(i, n));
        }
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange(j, n));
        }
        if i == j {
            return Err(Error::InvalidGenerator(format!("i = j = {i}")));
        }
        let (si, sj) = (sigma0(i - 1) + 1, sigma0(j - 1) + 1);
        let (i, j, arg) = match case {
            GroupCase::Linear => (i, j, arg),
            GroupCase::Symplectic if i == sj || i < j => (i, j, arg),
            GroupCase::Symplectic => {
                // se_ij(z) = se_{σj,σi}(-(-1)^{i+j} z)
                let arg = if (i + j).is_multiple_of(2) {
                    arg.neg()
                } else {
                    arg
                };
                (sj, si, arg)
            }
            GroupCase::Orthogonal if i == sj => {
                return Err(Error::InvalidGenerator(format!(
                    "oe_{i}{j} is undefined since {i} = σ({j})"
                )))
            }
            GroupCase::Orthogonal if i < j => (i, j, arg),
            GroupCase::Orthogonal => (sj, si, arg.neg()),
        };
        Ok(ElemGen { case, i, j, arg })
    }

    pub fn case(&self) -> GroupCase {
        self.case
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn arg(&self) -> &E {
        &self.arg
    }

    pub fn with_arg(&self, arg: E) -> Self {
        ElemGen {
            case: self.case,
            i: self.i,
            j: self.j,
            arg,
        }
    }

    /// Off-diagonal entries `(row, col, value)`, 0-based, of `gen - I`.
    pub fn offsets(&self) -> Vec<(usize, usize, E)> {
        let (i, j) = (self.i - 1, self.j - 1);
        let z = self.arg.clone();
        match self.case {
            GroupCase::Linear => vec![(i, j, z)],
            GroupCase::Symplectic if i == sigma0(j) => vec![(i, j, z)],
            GroupCase::Symplectic => {
                // I + z e_ij - (-1)^{i+j} z e_{σj σi}; parity of 0-based sum is the same
                let second = if (i + j) % 2 == 0 { z.neg() } else { z.clone() };
                vec![(i, j, z), (sigma0(j), sigma0(i), second)]
            }
            GroupCase::Orthogonal => {
                let second = z.neg();
                vec![(i, j, z), (sigma0(j), sigma0(i), second)]
            }
        }
    }

    pub fn matrix(&self, ctx: &E::Ctx, n: usize) -> Matrix<E> {
        let mut m = Matrix::identity(ctx, n);
        for (r, c, v) in self.offsets() {
            m.set(r, c, v);
        }
        m
    }

    pub fn inverse(&self) -> Self {
        self.with_arg(self.arg.neg())
    }

    /// `m · gen` as column operations; the two offsets of a paired generator
    /// read and write disjoint columns, so the update is done in place.
    pub fn right_apply(&self, m: &mut Matrix<E>) {
        for (r, c, v) in self.offsets() {
            if v.is_zero() {
                continue;
            }
            for row in 0..m.n() {
                let src = m.get(row, r);
                if src.is_zero() {
                    continue;
                }
                let updated = m.get(row, c).add(&src.mul(&v));
                m.set(row, c, updated);
            }
        }
    }
}

impl<E: Element> fmt::Display for ElemGen<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.case {
            GroupCase::Linear => "E",
            GroupCase::Symplectic => "se",
            GroupCase::Orthogonal => "oe",
        };
        write!(f, "{prefix}_{},{}({})", self.i, self.j, self.arg)
    }
}

/// An ordered product of generators sharing case, size and ring.
#[derive(Clone, Debug, PartialEq)]
pub struct ElemWord<E: Element> {
    case: GroupCase,
    n: usize,
    ctx: E::Ctx,
    gens: Vec<ElemGen<E>>,
}

impl<E: Element> ElemWord<E> {
    pub fn empty(case: GroupCase, n: usize, ctx: &E::Ctx) -> Result<Self> {
        case.check_shape(n)?;
        Ok(ElemWord {
            case,
            n,
            ctx: ctx.clone(),
            gens: Vec::new(),
        })
    }

    pub fn new(case: GroupCase, n: usize, ctx: &E::Ctx, gens: Vec<ElemGen<E>>) -> Result<Self> {
        let mut w = Self::empty(case, n, ctx)?;
        for g in gens {
            w.push(g)?;
        }
        Ok(w)
    }

    /// Builds a word from raw 1-based `(i, j, arg)` triples.
    pub fn from_triples(
        case: GroupCase,
        n: usize,
        ctx: &E::Ctx,
        triples: impl IntoIterator<Item = (usize, usize, E)>,
    ) -> Result<Self> {
        let mut w = Self::empty(case, n, ctx)?;
        for (i, j, a) in triples {
            w.push(ElemGen::new(case, n, i, j, a)?)?;
        }
        Ok(w)
    }

    pub fn push(&mut self, g: ElemGen<E>) -> Result<()> {
        if g.case != self.case {
            return Err(Error::InvalidGenerator(format!(
                "{} generator in a {} word",
                g.case, self.case
            )));
        }
        if g.i > self.n || g.j > self.n {
            return Err(Error::IndexOutOfRange(g.i.max(g.j), self.n));
        }
        if g.arg.ctx() != self.ctx {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                g.arg.ctx(),
                self.ctx
            )));
        }
        self.gens.push(g);
        Ok(())
    }

    pub fn case(&self) -> GroupCase {
        self.case
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> &E::Ctx {
        &self.ctx
    }

    pub fn gens(&self) -> &[ElemGen<E>] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.case != other.case || self.n != other.n {
            return Err(Error::InvalidGenerator(format!(
                "cannot combine a {} word of size {} with a {} word of size {}",
                self.case, self.n, other.case, other.n
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

    pub fn concat(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.gens.extend(other.gens.iter().cloned());
        Ok(out)
    }

    fn map_gens(&self, f: impl Fn(&ElemGen<E>) -> ElemGen<E>) -> Self {
        ElemWord {
            case: self.case,
            n: self.n,
            ctx: self.ctx.clone(),
            gens: self.gens.iter().map(f).collect(),
        }
    }

    /// Generators with zero arguments removed.
    pub fn pruned(&self) -> Self {
        let mut out = self.clone();
        out.gens.retain(|g| !g.arg.is_zero());
        out
    }

    /// Applies a ring map to every argument.
    pub fn map_args<F: Element>(&self, ctx: &F::Ctx, f: impl Fn(&E) -> F) -> ElemWord<F> {
        ElemWord {
            case: self.case,
            n: self.n,
            ctx: ctx.clone(),
            gens: self
                .gens
                .iter()
                .map(|g| ElemGen {
                    case: g.case,
                    i: g.i,
                    j: g.j,
                    arg: f(&g.arg),
                })
                .collect(),
        }
    }
}

impl<E: Element> fmt::Display for ElemWord<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "I_{}", self.n);
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

pub fn gen_matrix<E: Element>(g: &ElemGen<E>, ctx: &E::Ctx, n: usize) -> Matrix<E> {
    g.matrix(ctx, n)
}

pub fn word_eval<E: Element>(w: &ElemWord<E>) -> Matrix<E> {
    let mut m = Matrix::identity(&w.ctx, w.n);
    for g in &w.gens {
        g.right_apply(&mut m);
    }
    m
}

/// `ge(a)⁻¹ = ge(-a)` read right to left.
pub fn word_inverse<E: Element>(w: &ElemWord<E>) -> ElemWord<E> {
    let mut out = w.map_gens(ElemGen::inverse);
    out.gens.reverse();
    out
}

/// `c w c⁻¹` as a word.
pub fn word_conjugate<E: Element>(w: &ElemWord<E>, by: &ElemWord<E>) -> Result<ElemWord<E>> {
    by.concat(w)?.concat(&word_inverse(by))
}

pub fn word_plus_eval<E: Element>(w: &ElemWord<E>, t: &Coeff) -> ElemWord<E> {
    w.map_gens(|g| g.with_arg(g.arg.plus_eval(t)))
}

/// Replaces each `ge(a)` by `ge(a_0) ge(a_+)`.
pub fn split_word<E: Element>(w: &ElemWord<E>) -> ElemWord<E> {
    let mut out = w.map_gens(|g| g.clone());
    out.gens = w
        .gens
        .iter()
        .flat_map(|g| {
            let a0 = g.arg.degree_zero_part();
            let ap = g.arg.sub(&a0);
            [g.with_arg(a0), g.with_arg(ap)]
        })
        .collect();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{is_in_g, is_in_s};
    use crate::matrix::MatrixG;
    use crate::ring::{CoefficientRing, GradedPoly, PolyRing};

    fn zxy() -> PolyRing {
        PolyRing::new(CoefficientRing::Integers, 2)
    }

    fn p(r: &PolyRing, s: &str) -> GradedPoly {
        r.parse(s).unwrap()
    }

    fn unit(r: &PolyRing, n: usize, pos: &[(usize, usize, &str)]) -> MatrixG {
        let mut m = MatrixG::identity(r, n);
        for &(i, j, s) in pos {
            m.set(i - 1, j - 1, p(r, s));
        }
        m
    }

    #[test]
    fn printed_generator_matrices() {
        let r = zxy();
        let e12 = ElemGen::new(GroupCase::Linear, 3, 1, 2, r.var(0)).unwrap();
        assert_eq!(e12.matrix(&r, 3), unit(&r, 3, &[(1, 2, "x")]));
        let se12 = ElemGen::new(GroupCase::Symplectic, 4, 1, 2, r.var(1)).unwrap();
        assert_eq!(se12.matrix(&r, 4), unit(&r, 4, &[(1, 2, "y")]));
        let oe13 = ElemGen::new(GroupCase::Orthogonal, 6, 1, 3, r.var(1)).unwrap();
        assert_eq!(
            oe13.matrix(&r, 6),
            unit(&r, 6, &[(1, 3, "y"), (4, 2, "-y")])
        );
        // se_13(z) = I + z e13 - (-1)^4 z e42
        let se13 = ElemGen::new(GroupCase::Symplectic, 6, 1, 3, r.var(0)).unwrap();
        assert_eq!(
            se13.matrix(&r, 6),
            unit(&r, 6, &[(1, 3, "x"), (4, 2, "-x")])
        );
        // se_14(z) = I + z e14 + z e32
        let se14 = ElemGen::new(GroupCase::Symplectic, 6, 1, 4, r.var(0)).unwrap();
        assert_eq!(se14.matrix(&r, 6), unit(&r, 6, &[(1, 4, "x"), (3, 2, "x")]));
    }

    #[test]
    fn invalid_index_patterns() {
        let r = zxy();
        assert!(ElemGen::new(GroupCase::Linear, 3, 2, 2, r.one()).is_err());
        assert!(ElemGen::new(GroupCase::Linear, 3, 1, 4, r.one()).is_err());
        assert!(ElemGen::new(GroupCase::Orthogonal, 6, 1, 2, r.one()).is_err());
        assert!(ElemGen::new(GroupCase::Symplectic, 5, 1, 2, r.one()).is_err());
    }

    #[test]
    fn reversed_indices_canonicalize_to_the_same_matrix() {
        let r = zxy();
        let z = p(&r, "x + 2*y");
        for case in [GroupCase::Symplectic, GroupCase::Orthogonal] {
            for i in 1..=6 {
                for j in 1..i {
                    let Ok(g) = ElemGen::new(case, 6, i, j, z.clone()) else {
                        assert_eq!(case, GroupCase::Orthogonal);
                        continue;
                    };
                    assert!(g.i() < g.j() || g.i() == sigma0(g.j() - 1) + 1);
                    // the printed formula applied verbatim to (i, j)
                    let (i0, j0) = (i - 1, j - 1);
                    let mut want = MatrixG::identity(&r, 6);
                    want.set(i0, j0, z.clone());
                    if i0 != sigma0(j0) {
                        let coef = match case {
                            GroupCase::Symplectic if (i + j) % 2 == 0 => z.neg(),
                            GroupCase::Symplectic => z.clone(),
                            _ => z.neg(),
                        };
                        want.set(sigma0(j0), sigma0(i0), coef);
                    }
                    assert_eq!(g.matrix(&r, 6), want, "{case} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn generators_lie_in_their_groups() {
        let r = zxy();
        let z = p(&r, "1 + x*y - 3*y^2");
        for case in GroupCase::ALL {
            for i in 1..=6 {
                for j in 1..=6 {
                    if let Ok(g) = ElemGen::new(case, 6, i, j, z.clone()) {
                        let m = g.matrix(&r, 6);
                        assert!(is_in_g(case, &m) && is_in_s(case, &m), "{g}");
                    }
                }
            }
        }
    }

    #[test]
    fn eval_inverse_and_conjugate() {
        let r = zxy();
        let lin = GroupCase::Linear;
        let empty = ElemWord::<GradedPoly>::empty(lin, 3, &r).unwrap();
        assert!(word_eval(&empty).is_identity());
        let w = ElemWord::from_triples(lin, 3, &r, [(1, 2, r.var(0))]).unwrap();
        let inv = word_inverse(&w);
        assert_eq!(inv.gens()[0].arg(), &p(&r, "-x"));
        assert!(word_eval(&w).mul(&word_eval(&inv)).unwrap().is_identity());
        let by = ElemWord::from_triples(lin, 3, &r, [(1, 2, r.one())]).unwrap();
        let core = ElemWord::from_triples(lin, 3, &r, [(1, 3, r.var(1))]).unwrap();
        let conj = word_conjugate(&core, &by).unwrap();
        let want = word_eval(&by)
            .mul(&word_eval(&core))
            .unwrap()
            .mul(&unit(&r, 3, &[(1, 2, "-1")]))
            .unwrap();
        assert_eq!(word_eval(&conj), want);
    }

    #[test]
    fn right_apply_matches_matrix_product() {
        let r = zxy();
        for case in GroupCase::ALL {
            let w = ElemWord::from_triples(
                case,
                6,
                &r,
                [
                    (1, 3, p(&r, "x")),
                    (4, 6, p(&r, "2 + y")),
                    (5, 1, p(&r, "x*y")),
                ],
            )
            .unwrap();
            let slow = MatrixG::product(
                &r,
                6,
                &w.gens().iter().map(|g| g.matrix(&r, 6)).collect::<Vec<_>>(),
            )
            .unwrap();
            assert_eq!(word_eval(&w), slow);
        }
    }

    #[test]
    fn plus_eval_of_words() {
        let r = PolyRing::new(CoefficientRing::Integers, 1);
        let w = ElemWord::from_triples(
            GroupCase::Linear,
            3,
            &r,
            [(1, 2, p(&r, "2 + x")), (2, 3, p(&r, "x^2"))],
        )
        .unwrap();
        let three = word_plus_eval(&w, &Coeff::from_integer(3.into()));
        assert_eq!(three.gens()[0].arg(), &p(&r, "2 + 3*x"));
        assert_eq!(three.gens()[1].arg(), &p(&r, "9*x^2"));
        assert_eq!(word_plus_eval(&w, &Coeff::from_integer(1.into())), w);
        let x = ElemWord::from_triples(GroupCase::Linear, 3, &r, [(1, 2, r.var(0))]).unwrap();
        let zero = word_plus_eval(&x, &Coeff::from_integer(0.into()));
        assert!(zero.gens()[0].arg().is_zero());
        assert!(word_eval(&zero).is_identity());
    }

    #[test]
    fn splitting_examples() {
        let r = zxy();
        let w = ElemWord::from_triples(GroupCase::Linear, 3, &r, [(1, 2, r.var(0))]).unwrap();
        let s = split_word(&w);
        assert!(s.gens()[0].arg().is_zero());
        assert_eq!(s.gens()[1].arg(), &r.var(0));
        let w = ElemWord::from_triples(GroupCase::Linear, 3, &r, [(1, 2, p(&r, "2 + x"))]).unwrap();
        let s = split_word(&w);
        assert_eq!(s.gens()[0].arg(), &r.int(2));
        assert_eq!(s.gens()[1].arg(), &r.var(0));
        let w = ElemWord::from_triples(GroupCase::Symplectic, 6, &r, [(1, 3, p(&r, "1 + x*y"))])
            .unwrap();
        let s = split_word(&w);
        assert_eq!(s.gens()[0].arg(), &r.one());
        assert_eq!(s.gens()[1].arg(), &p(&r, "x*y"));
        assert_eq!(word_eval(&s), word_eval(&w));
    }

    #[test]
    fn mixed_words_are_rejected() {
        let r = zxy();
        let a = ElemWord::<GradedPoly>::empty(GroupCase::Linear, 3, &r).unwrap();
        let b = ElemWord::<GradedPoly>::empty(GroupCase::Linear, 4, &r).unwrap();
        assert!(a.concat(&b).is_err());
        let mut c = a.clone();
        let g = ElemGen::new(GroupCase::Symplectic, 6, 1, 2, r.one()).unwrap();
        assert!(c.push(g).is_err());
    }
}
