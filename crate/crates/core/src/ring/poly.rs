//! Sparse multivariate polynomials graded by total degree.
//!
//! `A = R[x_1, ..., x_k]` with `A_i` the span of monomials of total degree `i`.
//! Terms live in a `BTreeMap` keyed by graded-lexicographic monomial order, so
//! two polynomials are equal exactly when their term maps are equal.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::coeff::{Coeff, CoefficientRing};
use crate::error::{Error, Result};

/// Exponent vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn var(num_vars: usize, idx: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Coefficient ring plus number of variables: the ambient ring `R[x_1..x_k]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub coeffs: CoefficientRing,
    pub num_vars: usize,
}

impl PolyRing {
    pub fn new(coeffs: CoefficientRing, num_vars: usize) -> Self {
        PolyRing { coeffs, num_vars }
    }

    pub fn zero(&self) -> GradedPoly {
        GradedPoly::zero(*self)
    }

    pub fn one(&self) -> GradedPoly {
        GradedPoly::one(*self)
    }

    pub fn constant(&self, c: &Coeff) -> GradedPoly {
        GradedPoly::constant(*self, c)
    }

    pub fn int(&self, v: i64) -> GradedPoly {
        GradedPoly::constant(*self, &self.coeffs.from_int(v))
    }

    pub fn var(&self, idx: usize) -> GradedPoly {
        GradedPoly::var(*self, idx)
    }

    pub fn var_name(&self, idx: usize) -> String {
        if self.num_vars <= 3 {
            ["x", "y", "z"][idx].to_string()
        } else {
            format!("x{}", idx + 1)
        }
    }

    pub fn parse(&self, text: &str) -> Result<GradedPoly> {
        super::parse::parse_poly(*self, text)
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{} vars]", self.coeffs, self.num_vars)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedPoly {
    ring: PolyRing,
    terms: BTreeMap<Monomial, Coeff>,
}

/// Homogeneous parts of a polynomial, degrees strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradeDecomposition {
    pub parts: Vec<(u32, GradedPoly)>,
}

impl GradeDecomposition {
    pub fn reassemble(&self, ring: PolyRing) -> GradedPoly {
        self.parts
            .iter()
            .fold(ring.zero(), |acc, (_, p)| acc.add(p))
    }
}

impl GradedPoly {
    pub fn zero(ring: PolyRing) -> Self {
        GradedPoly {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: PolyRing) -> Self {
        Self::constant(ring, &Coeff::one())
    }

    pub fn constant(ring: PolyRing, c: &Coeff) -> Self {
        Self::monomial(ring, Monomial::one(ring.num_vars), c.clone())
    }

    pub fn var(ring: PolyRing, idx: usize) -> Self {
        assert!(idx < ring.num_vars, "variable index out of range");
        Self::monomial(ring, Monomial::var(ring.num_vars, idx), Coeff::one())
    }

    pub fn monomial(ring: PolyRing, m: Monomial, c: Coeff) -> Self {
        assert_eq!(m.0.len(), ring.num_vars, "monomial arity");
        let c = ring.coeffs.fix(c);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        GradedPoly { ring, terms }
    }

    /// Builds a polynomial from raw terms, validating coefficients and arity and
    /// merging repeated monomials.
    pub fn from_terms(
        ring: PolyRing,
        terms: impl IntoIterator<Item = (Vec<u32>, Coeff)>,
    ) -> Result<Self> {
        let mut out = GradedPoly::zero(ring);
        for (exps, c) in terms {
            if exps.len() != ring.num_vars {
                return Err(Error::DimensionMismatch(format!(
                    "exponent vector of length {} in a ring with {} variables",
                    exps.len(),
                    ring.num_vars
                )));
            }
            let c = ring.coeffs.reduce(&c)?;
            out.add_term(Monomial(exps), &c);
        }
        Ok(out)
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn coeff_ring(&self) -> CoefficientRing {
        self.ring.coeffs
    }

    pub fn num_vars(&self) -> usize {
        self.ring.num_vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// The value of a degree-zero polynomial.
    pub fn constant_value(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(Coeff::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coeff_of(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        let cr = self.ring.coeffs;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = cr.add(e.get(), c);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    fn assert_same_ring(&self, other: &Self) {
        assert_eq!(
            self.ring, other.ring,
            "polynomial arithmetic across different rings"
        );
    }

    pub fn check_same_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.ring, other.ring
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let cr = self.ring.coeffs;
        GradedPoly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), cr.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let cr = self.ring.coeffs;
        let integral = |p: &Self| p.terms.values().all(|c| c.is_integer());
        if integral(self) && integral(other) {
            // accumulate plain integers; normalizing a rational per term dominates otherwise
            let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
            for (m1, c1) in &self.terms {
                for (m2, c2) in &other.terms {
                    *acc.entry(m1.mul(m2)).or_default() += c1.numer() * c2.numer();
                }
            }
            let terms = acc
                .into_iter()
                .filter_map(|(m, v)| {
                    let c = cr.fix(Coeff::from_integer(v));
                    (!c.is_zero()).then_some((m, c))
                })
                .collect();
            return GradedPoly {
                ring: self.ring,
                terms,
            };
        }
        let mut out = GradedPoly::zero(self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &cr.mul(c1, c2));
            }
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        Ok(self.add(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        Ok(self.sub(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        Ok(self.mul(other))
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let cr = self.ring.coeffs;
        let mut out = GradedPoly::zero(self.ring);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &cr.mul(v, c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = GradedPoly::one(self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder (or needs a non-unit coefficient division over the integers).
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.assert_same_ring(divisor);
        let (lead_m, lead_c) = divisor.leading_term()?;
        let cr = self.ring.coeffs;
        let mut rem = self.clone();
        let mut quot = GradedPoly::zero(self.ring);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lead_m)?;
            let qc = cr.div_exact(c, lead_c)?;
            let t = GradedPoly::monomial(self.ring, qm, qc);
            rem = rem.sub(&t.mul(divisor));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// Divides every coefficient by `c` when all divisions are exact.
    pub fn div_coeff(&self, c: &Coeff) -> Option<Self> {
        let cr = self.ring.coeffs;
        let mut terms = BTreeMap::new();
        for (m, v) in &self.terms {
            terms.insert(m.clone(), cr.div_exact(v, c)?);
        }
        Some(GradedPoly {
            ring: self.ring,
            terms,
        })
    }

    /// The degree-`i` part `a_i`.
    pub fn homogeneous_component(&self, i: u32) -> Self {
        GradedPoly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == i)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// `a_0`, which equals `a⁺(0)`.
    pub fn degree_zero_part(&self) -> Self {
        self.homogeneous_component(0)
    }

    /// `a - a_0`, the part in the positive ideal.
    pub fn positive_part(&self) -> Self {
        GradedPoly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() > 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn grade_decompose(&self) -> GradeDecomposition {
        let mut parts: Vec<(u32, GradedPoly)> = Vec::new();
        // BTreeMap order is graded, so equal degrees are contiguous.
        for (m, c) in &self.terms {
            let d = m.degree();
            match parts.last_mut() {
                Some((deg, p)) if *deg == d => {
                    p.terms.insert(m.clone(), c.clone());
                }
                _ => {
                    let mut p = GradedPoly::zero(self.ring);
                    p.terms.insert(m.clone(), c.clone());
                    parts.push((d, p));
                }
            }
        }
        GradeDecomposition { parts }
    }

    /// `ε(b) = b_0 + b_1 X + b_2 X^2 + ...`.
    pub fn swan_weibel_extend(&self) -> SwanWeibelPoly {
        let top = self.degree().unwrap_or(0);
        let coeffs = (0..=top).map(|i| self.homogeneous_component(i)).collect();
        SwanWeibelPoly::new(self.ring, coeffs)
    }

    /// `b⁺(t) = Σ b_i t^i` for a degree-zero coefficient `t`.
    pub fn plus_eval_coeff(&self, t: &Coeff) -> Self {
        let cr = self.ring.coeffs;
        let t = cr.fix(t.clone());
        let mut out = GradedPoly::zero(self.ring);
        let mut powers: Vec<Coeff> = vec![Coeff::one()];
        for (m, c) in &self.terms {
            let d = m.degree() as usize;
            while powers.len() <= d {
                let next = cr.mul(powers.last().unwrap(), &t);
                powers.push(next);
            }
            out.add_term(m.clone(), &cr.mul(c, &powers[d]));
        }
        out
    }

    /// `b⁺(t)` where `t` must be a constant polynomial of the same ring.
    pub fn plus_eval(&self, t: &GradedPoly) -> Result<Self> {
        self.check_same_ring(t)?;
        let c = t
            .constant_value()
            .ok_or_else(|| Error::NotDegreeZero(t.to_string()))?;
        Ok(self.plus_eval_coeff(&c))
    }

    /// `Σ b_i t^i` for an arbitrary `t` (the composite `A → A[X] → A`, `X ↦ t`).
    pub fn plus_eval_poly(&self, t: &GradedPoly) -> Self {
        self.grade_decompose()
            .parts
            .iter()
            .fold(GradedPoly::zero(self.ring), |acc, (d, p)| {
                acc.add(&p.mul(&t.pow(*d)))
            })
    }

    /// Embeds into a ring with `extra` more variables appended.
    pub fn extend_vars(&self, extra: usize) -> Self {
        let ring = PolyRing::new(self.ring.coeffs, self.ring.num_vars + extra);
        GradedPoly {
            ring,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(ring.num_vars, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Splits off variable `idx`: returns `(e, c·m')` triples grouped by its
    /// exponent, with the variable removed from the monomials.
    pub fn split_var(&self, idx: usize) -> BTreeMap<u32, GradedPoly> {
        let ring = PolyRing::new(self.ring.coeffs, self.ring.num_vars - 1);
        let mut out: BTreeMap<u32, GradedPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e.remove(idx);
            out.entry(k)
                .or_insert_with(|| GradedPoly::zero(ring))
                .add_term(Monomial(e), c);
        }
        out
    }

    /// Largest `j <= cap` with `s^j` dividing every coefficient.
    pub fn s_adic_content(&self, s: &Coeff, cap: u32) -> u32 {
        let mut p = self.clone();
        let mut j = 0;
        while j < cap && !p.is_zero() {
            match p.div_coeff(s) {
                Some(q) => {
                    p = q;
                    j += 1;
                }
                None => break,
            }
        }
        if p.is_zero() {
            cap
        } else {
            j
        }
    }
}

/// `ε(b)`: a polynomial in a fresh variable `X` whose coefficients are the
/// homogeneous components of `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwanWeibelPoly {
    ring: PolyRing,
    coeffs: Vec<GradedPoly>,
}

impl SwanWeibelPoly {
    fn new(ring: PolyRing, mut coeffs: Vec<GradedPoly>) -> Self {
        while coeffs.last().is_some_and(GradedPoly::is_zero) {
            coeffs.pop();
        }
        SwanWeibelPoly { ring, coeffs }
    }

    /// Coefficient of `X^i`.
    pub fn coeff(&self, i: usize) -> GradedPoly {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn coeffs(&self) -> &[GradedPoly] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        SwanWeibelPoly::new(
            self.ring,
            (0..len)
                .map(|i| self.coeff(i).add(&other.coeff(i)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return SwanWeibelPoly::new(self.ring, vec![]);
        }
        let mut out = vec![self.ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        SwanWeibelPoly::new(self.ring, out)
    }

    /// Evaluates at `X = t` for a degree-zero `t`.
    pub fn eval(&self, t: &Coeff) -> GradedPoly {
        let mut acc = self.ring.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(t).add(c);
        }
        acc
    }
}

fn write_coeff_term(
    f: &mut fmt::Formatter<'_>,
    ring: &PolyRing,
    m: &Monomial,
    c: &Coeff,
    first: bool,
) -> fmt::Result {
    let negative = c < &Coeff::zero();
    let abs = if negative { -c.clone() } else { c.clone() };
    if first {
        if negative {
            write!(f, "-")?;
        }
    } else if negative {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    let mut factors: Vec<String> = Vec::new();
    for (idx, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => factors.push(ring.var_name(idx)),
            _ => factors.push(format!("{}^{}", ring.var_name(idx), e)),
        }
    }
    if factors.is_empty() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        write!(f, "{}", factors.join("*"))
    } else {
        write!(f, "{abs}*{}", factors.join("*"))
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            write_coeff_term(f, &self.ring, m, c, k == 0)?;
        }
        Ok(())
    }
}

impl std::ops::Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: Self) -> GradedPoly {
        GradedPoly::add(self, rhs)
    }
}

impl std::ops::Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: Self) -> GradedPoly {
        GradedPoly::sub(self, rhs)
    }
}

impl std::ops::Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: Self) -> GradedPoly {
        GradedPoly::mul(self, rhs)
    }
}

impl std::ops::Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        GradedPoly::neg(self)
    }
}
