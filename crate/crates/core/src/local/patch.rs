//! Partitions of unity from comaximal constants and the telescoping
//! factorization `α = Π α⁺(Bᵢ) α⁺(B_{i+1})⁻¹`, `Bᵢ = bᵢ + ⋯ + b_r`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::elementary::{word_eval, word_inverse, word_plus_eval, ElemWord};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, MatrixG};
use crate::ring::coeff::{as_integer, extended_gcd};
use crate::ring::{Coeff, CoefficientRing};

use super::dilation::{difference_exponent, dilate_difference};
use super::localized::{LocRing, LocalizedPoly};

/// `bᵢ = cᵢ sᵢ^{lᵢ}` with `Σ bᵢ = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComaximalData {
    pub coeffs: CoefficientRing,
    pub s: Vec<Coeff>,
    pub l: Vec<u32>,
    pub c: Vec<Coeff>,
    pub b: Vec<Coeff>,
}

impl ComaximalData {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// `Bᵢ = bᵢ + ⋯ + b_r` for `i = 1..=r+1` (the last is zero).
    pub fn partial_sums(&self) -> Vec<Coeff> {
        let cr = self.coeffs;
        let mut out = vec![Coeff::zero(); self.b.len() + 1];
        for i in (0..self.b.len()).rev() {
            out[i] = cr.add(&out[i + 1], &self.b[i]);
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.s.len();
        if r == 0 || self.l.len() != r || self.c.len() != r || self.b.len() != r {
            return Err(Error::Malformed(
                "comaximal data with inconsistent lengths".into(),
            ));
        }
        let cr = self.coeffs;
        for i in 0..r {
            if cr.mul(&self.c[i], &cr.pow(&self.s[i], self.l[i])) != self.b[i] {
                return Err(Error::Malformed(format!("b{} != c{0} s{0}^l{0}", i + 1)));
            }
        }
        let total = self.partial_sums()[0].clone();
        if !total.is_one() {
            return Err(Error::NotComaximal(format!("Σ b = {total}")));
        }
        Ok(())
    }
}

/// Extended-gcd multipliers making the powers `sᵢ^{lᵢ}` sum to one.
pub fn comaximal_powers(coeffs: CoefficientRing, s: &[Coeff], l: &[u32]) -> Result<ComaximalData> {
    if s.is_empty() || s.len() != l.len() {
        return Err(Error::Malformed("need one exponent per element".into()));
    }
    let s: Vec<Coeff> = s.iter().map(|c| coeffs.reduce(c)).collect::<Result<_>>()?;
    let powers: Vec<Coeff> = s.iter().zip(l).map(|(c, &e)| coeffs.pow(c, e)).collect();
    let ints: Option<Vec<BigInt>> = powers.iter().map(|p| as_integer(p).cloned()).collect();
    let c = match ints {
        Some(ints) => {
            let mut g = ints[0].clone();
            let mut mult = vec![BigInt::one()];
            for p in &ints[1..] {
                let (g2, x, y) = extended_gcd(&g, p);
                for m in &mut mult {
                    *m *= &x;
                }
                mult.push(y);
                g = g2;
            }
            let g = Coeff::from_integer(g);
            let g_inv = coeffs
                .inverse(&coeffs.fix(g.clone()))
                .ok_or_else(|| Error::NotComaximal(g.to_string()))?;
            mult.into_iter()
                .map(|m| coeffs.mul(&Coeff::from_integer(m), &g_inv))
                .collect::<Vec<_>>()
        }
        None => {
            // a field element that is not an integer is already a unit
            let i = powers
                .iter()
                .position(|p| coeffs.is_unit(p))
                .ok_or_else(|| Error::NotComaximal("no unit".into()))?;
            let mut c = vec![Coeff::zero(); s.len()];
            c[i] = coeffs.inverse(&powers[i]).expect("unit");
            c
        }
    };
    let b = c
        .iter()
        .zip(&powers)
        .map(|(c, p)| coeffs.mul(c, p))
        .collect();
    let data = ComaximalData {
        coeffs,
        s,
        l: l.to_vec(),
        c,
        b,
    };
    data.validate()?;
    Ok(data)
}

/// How a telescoping factor is certified over `A_{sᵢ}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorCertificate {
    pub s: Coeff,
    /// Exponent that the dilation argument needs for this factor.
    pub required_l: u32,
    /// The factor re-localized at `sᵢ` equals `α_s⁺(bᵢ + d) α_s⁺(d)⁻¹`, and the
    /// pullback of the latter is the factor itself.
    pub dilation_matches: bool,
    /// A word over `A_{sᵢ}` for the factor, when a local word for `α` was given.
    pub local_word: Option<ElemWord<LocalizedPoly>>,
    /// Expansion of the factor into dilated commutators and an
    /// elementary tail, for commutator patching.
    pub expansion: Option<Vec<(String, Matrix<LocalizedPoly>)>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PatchFactor {
    pub matrix: MatrixG,
    pub certificate: Option<FactorCertificate>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PatchWitness {
    pub target: MatrixG,
    pub data: ComaximalData,
    pub partials: Vec<Coeff>,
    pub factors: Vec<PatchFactor>,
    pub checked: bool,
}

impl PatchWitness {
    pub fn product(&self) -> Result<MatrixG> {
        Matrix::product(
            self.target.ctx(),
            self.target.n(),
            self.factors.iter().map(|f| &f.matrix),
        )
    }

    /// Every certificate present is consistent.
    pub fn certificates_hold(&self) -> bool {
        self.factors.iter().all(|f| {
            f.certificate
                .as_ref()
                .is_none_or(|c| c.dilation_matches && c.required_l <= c_l(self, &c.s))
        })
    }
}

fn c_l(w: &PatchWitness, s: &Coeff) -> u32 {
    w.data
        .s
        .iter()
        .position(|x| x == s)
        .map_or(0, |i| w.data.l[i])
}

fn check_patch_input(a: &MatrixG, cd: &ComaximalData) -> Result<()> {
    cd.validate()?;
    if cd.coeffs != a.ctx().coeffs {
        return Err(Error::RingMismatch(format!(
            "{} vs {}",
            cd.coeffs,
            a.ctx().coeffs
        )));
    }
    if !a.is_level_plus() {
        return Err(Error::NotInCongruenceSubgroup);
    }
    if !a.is_invertible() {
        return Err(Error::NotInvertible(format!("determinant {}", a.det())));
    }
    Ok(())
}

/// The telescoping factors `Fᵢ = α⁺(Bᵢ) α⁺(B_{i+1})⁻¹`.
fn telescoping_factors(a: &MatrixG, partials: &[Coeff]) -> Result<Vec<MatrixG>> {
    // (α⁻¹)⁺(t) = (α⁺(t))⁻¹ since ⁺ is a ring map
    let a_inv = a.inverse()?;
    (0..partials.len() - 1)
        .into_par_iter()
        .map(|i| {
            a.plus_eval(&partials[i])
                .mul(&a_inv.plus_eval(&partials[i + 1]))
        })
        .collect()
}

fn dilation_certificate(
    a: &MatrixG,
    factor: &MatrixG,
    s: &Coeff,
    b: &Coeff,
    d: &Coeff,
) -> Result<FactorCertificate> {
    let loc = LocRing::new(*a.ctx(), s)?;
    let a_s = loc.localize_matrix(a)?;
    let required_l = difference_exponent(&a_s, d)?;
    let local = a_s
        .plus_eval(&loc.ring.coeffs.add(b, d))
        .mul(&a_s.plus_eval(d).inverse()?)?;
    let dilation_matches = loc.localize_matrix(factor)? == local
        && dilate_difference(&a_s, b, d).is_ok_and(|m| m == *factor);
    Ok(FactorCertificate {
        s: s.clone(),
        required_l,
        dilation_matches,
        local_word: None,
        expansion: None,
    })
}

fn finish(
    a: &MatrixG,
    cd: &ComaximalData,
    partials: Vec<Coeff>,
    factors: Vec<PatchFactor>,
) -> Result<PatchWitness> {
    let mut w = PatchWitness {
        target: a.clone(),
        data: cd.clone(),
        partials,
        factors,
        checked: false,
    };
    w.checked = w.product()? == *a;
    Ok(w)
}

/// Telescoping patch of a level-plus matrix along the partition of unity
/// `cd`. When `local_words` is given, entry `i` must be a word over `A_{sᵢ}`
/// evaluating to `α`, and each factor additionally carries a local word.
pub fn telescoping_patch(
    a: &MatrixG,
    cd: &ComaximalData,
    local_words: Option<&[ElemWord<LocalizedPoly>]>,
) -> Result<PatchWitness> {
    check_patch_input(a, cd)?;
    if let Some(words) = local_words {
        if words.len() != cd.len() {
            return Err(Error::BadLocalData(format!(
                "{} local words for {} elements",
                words.len(),
                cd.len()
            )));
        }
        for (w, s) in words.iter().zip(&cd.s) {
            let loc = LocRing::new(*a.ctx(), s)?;
            if *w.ctx() != loc || word_eval(w) != loc.localize_matrix(a)? {
                return Err(Error::BadLocalData(format!(
                    "word at s = {s} does not evaluate to α"
                )));
            }
        }
    }
    let partials = cd.partial_sums();
    let mats = telescoping_factors(a, &partials)?;
    let factors = (0..cd.len())
        .into_par_iter()
        .map(|i| {
            let mut cert = dilation_certificate(a, &mats[i], &cd.s[i], &cd.b[i], &partials[i + 1])?;
            if let Some(words) = local_words {
                let w = &words[i];
                let word = word_plus_eval(w, &partials[i])
                    .concat(&word_inverse(&word_plus_eval(w, &partials[i + 1])))?
                    .pruned();
                if word_eval(&word) != w.ctx().localize_matrix(&mats[i])? {
                    return Err(Error::Internal(
                        "local word does not match the factor".into(),
                    ));
                }
                cert.local_word = Some(word);
            }
            Ok(PatchFactor {
                matrix: mats[i].clone(),
                certificate: Some(cert),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    finish(a, cd, partials, factors)
}

/// Local data at one `sᵢ`: `α_{sᵢ} = Π [β_k, γ_k] · ε` with every matrix
/// congruent to the identity modulo the positive ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalCommutatorData {
    pub pairs: Vec<(Matrix<LocalizedPoly>, Matrix<LocalizedPoly>)>,
    pub eps: Matrix<LocalizedPoly>,
}

fn commutator(
    a: &Matrix<LocalizedPoly>,
    b: &Matrix<LocalizedPoly>,
) -> Result<Matrix<LocalizedPoly>> {
    a.mul(b)?.mul(&a.inverse()?)?.mul(&b.inverse()?)
}

impl LocalCommutatorData {
    pub fn eval_at(&self, t: &Coeff) -> Result<Matrix<LocalizedPoly>> {
        let mut acc = Matrix::identity(self.eps.ctx(), self.eps.n());
        for (b, g) in &self.pairs {
            acc = acc.mul(&commutator(&b.plus_eval(t), &g.plus_eval(t))?)?;
        }
        acc.mul(&self.eps.plus_eval(t))
    }

    /// `[β⁺(b+d), γ⁺(b+d)]… · ε⁺(b+d) ε⁺(d)⁻¹ · ([β⁺(d), γ⁺(d)]…)⁻¹`.
    pub fn expansion(&self, b: &Coeff, d: &Coeff) -> Result<Vec<(String, Matrix<LocalizedPoly>)>> {
        let cr = self.eps.ctx().ring.coeffs;
        let bd = cr.add(b, d);
        let mut out = Vec::with_capacity(2 * self.pairs.len() + 1);
        for (k, (beta, gamma)) in self.pairs.iter().enumerate() {
            out.push((
                format!("[β{0}⁺(b+d), γ{0}⁺(b+d)]", k + 1),
                commutator(&beta.plus_eval(&bd), &gamma.plus_eval(&bd))?,
            ));
        }
        out.push((
            "ε⁺(b+d) ε⁺(d)^-1".into(),
            self.eps
                .plus_eval(&bd)
                .mul(&self.eps.plus_eval(d).inverse()?)?,
        ));
        for (k, (beta, gamma)) in self.pairs.iter().enumerate().rev() {
            // [β, γ]⁻¹ = [γ, β]
            out.push((
                format!("[β{0}⁺(d), γ{0}⁺(d)]^-1", k + 1),
                commutator(&gamma.plus_eval(d), &beta.plus_eval(d))?,
            ));
        }
        Ok(out)
    }
}

/// Telescoping patch where each factor is expanded, over `A_{sᵢ}`, into
/// dilated commutators and an elementary tail from the local data.
pub fn commutator_patch(
    a: &MatrixG,
    cd: &ComaximalData,
    local_data: &[LocalCommutatorData],
) -> Result<PatchWitness> {
    check_patch_input(a, cd)?;
    let d = a.det();
    if !d.is_one() {
        return Err(Error::DeterminantNotOne(d.to_string()));
    }
    if local_data.len() != cd.len() {
        return Err(Error::BadLocalData(format!(
            "{} local decompositions for {} elements",
            local_data.len(),
            cd.len()
        )));
    }
    let one = Coeff::one();
    let zero = Coeff::zero();
    for (data, s) in local_data.iter().zip(&cd.s) {
        let loc = LocRing::new(*a.ctx(), s)?;
        let all_level = data
            .pairs
            .iter()
            .all(|(b, g)| b.is_level_plus() && g.is_level_plus())
            && data.eps.is_level_plus();
        if *data.eps.ctx() != loc || !all_level {
            return Err(Error::BadLocalData(format!(
                "decomposition at s = {s} is not over A_s or not congruent to I"
            )));
        }
        if data.eval_at(&one)? != loc.localize_matrix(a)? {
            return Err(Error::BadLocalData(format!(
                "decomposition at s = {s} does not give α"
            )));
        }
        debug_assert!(data.eval_at(&zero)?.is_identity());
    }
    let partials = cd.partial_sums();
    let mats = telescoping_factors(a, &partials)?;
    let factors = (0..cd.len())
        .into_par_iter()
        .map(|i| {
            let mut cert = dilation_certificate(a, &mats[i], &cd.s[i], &cd.b[i], &partials[i + 1])?;
            let expansion = local_data[i].expansion(&cd.b[i], &partials[i + 1])?;
            let loc = local_data[i].eps.ctx();
            let product = Matrix::product(loc, a.n(), expansion.iter().map(|(_, m)| m))?;
            if product != loc.localize_matrix(&mats[i])? {
                return Err(Error::BadLocalData(format!(
                    "expansion at s = {} does not reproduce the factor",
                    cd.s[i]
                )));
            }
            cert.expansion = Some(expansion);
            Ok(PatchFactor {
                matrix: mats[i].clone(),
                certificate: Some(cert),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    finish(a, cd, partials, factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::GroupCase;
    use crate::ring::{GradedPoly, PolyRing};

    fn ints(v: &[i64]) -> Vec<Coeff> {
        v.iter().map(|&x| Coeff::from_integer(x.into())).collect()
    }

    #[test]
    fn comaximal_examples() {
        let z = CoefficientRing::Integers;
        let d = comaximal_powers(z, &ints(&[2, 3]), &[1, 1]).unwrap();
        assert_eq!(d.c, ints(&[-1, 1]));
        assert_eq!(d.b, ints(&[-2, 3]));
        let d = comaximal_powers(z, &ints(&[2, 3]), &[2, 2]).unwrap();
        assert_eq!(d.c, ints(&[-2, 1]));
        assert_eq!(d.b, ints(&[-8, 9]));
        let d = comaximal_powers(z, &ints(&[1]), &[5]).unwrap();
        assert_eq!(d.b, ints(&[1]));
        assert!(matches!(
            comaximal_powers(z, &ints(&[2, 4]), &[1, 1]),
            Err(Error::NotComaximal(_))
        ));
        let d = comaximal_powers(z, &ints(&[2, 3, 5]), &[1, 2, 1]).unwrap();
        assert!(d.partial_sums()[0].is_one());
        let q = comaximal_powers(CoefficientRing::Rationals, &ints(&[2, 4]), &[1, 1]).unwrap();
        assert!(q.partial_sums()[0].is_one());
    }

    fn e12_e21(r: &PolyRing) -> MatrixG {
        let w = ElemWord::from_triples(
            GroupCase::Linear,
            3,
            r,
            [(1, 2, r.var(0)), (2, 1, r.var(0))],
        )
        .unwrap();
        word_eval(&w)
    }

    #[test]
    fn single_element_patch_is_the_target() {
        let r = PolyRing::new(CoefficientRing::Integers, 1);
        let a = e12_e21(&r);
        let cd = comaximal_powers(r.coeffs, &ints(&[1]), &[1]).unwrap();
        let w = telescoping_patch(&a, &cd, None).unwrap();
        assert!(w.checked);
        assert_eq!(w.factors.len(), 1);
        assert_eq!(w.factors[0].matrix, a);
    }

    #[test]
    fn two_prime_patch_over_rationals() {
        let r = PolyRing::new(CoefficientRing::Rationals, 1);
        let a = e12_e21(&r);
        let cd = comaximal_powers(r.coeffs, &ints(&[2, 3]), &[1, 1]).unwrap();
        let w = telescoping_patch(&a, &cd, None).unwrap();
        assert!(w.checked && w.certificates_hold());
        assert_eq!(w.factors.len(), 2);
    }

    #[test]
    fn patch_with_local_words() {
        let r = PolyRing::new(CoefficientRing::Integers, 1);
        let a = e12_e21(&r);
        let cd = comaximal_powers(r.coeffs, &ints(&[2, 3]), &[1, 1]).unwrap();
        let global = ElemWord::from_triples(
            GroupCase::Linear,
            3,
            &r,
            [(1, 2, r.var(0)), (2, 1, r.var(0))],
        )
        .unwrap();
        let words: Vec<_> =
            cd.s.iter()
                .map(|s| {
                    let loc = LocRing::new(r, s).unwrap();
                    global.map_args(&loc, |e: &GradedPoly| loc.localize(e).unwrap())
                })
                .collect();
        let w = telescoping_patch(&a, &cd, Some(&words)).unwrap();
        assert!(w.checked && w.certificates_hold());
        assert!(w
            .factors
            .iter()
            .all(|f| f.certificate.as_ref().unwrap().local_word.is_some()));
        let mut bad = words.clone();
        bad.swap(0, 1);
        assert!(matches!(
            telescoping_patch(&a, &cd, Some(&bad)),
            Err(Error::BadLocalData(_))
        ));
    }

    #[test]
    fn patch_rejects_non_level_input() {
        let r = PolyRing::new(CoefficientRing::Integers, 1);
        let w = ElemWord::from_triples(
            GroupCase::Linear,
            3,
            &r,
            [(1, 2, r.parse("1 + x").unwrap())],
        )
        .unwrap();
        let cd = comaximal_powers(r.coeffs, &ints(&[2, 3]), &[1, 1]).unwrap();
        assert_eq!(
            telescoping_patch(&word_eval(&w), &cd, None),
            Err(Error::NotInCongruenceSubgroup)
        );
    }

    #[test]
    fn identity_patch() {
        let r = PolyRing::new(CoefficientRing::Integers, 1);
        let cd = comaximal_powers(r.coeffs, &ints(&[2, 3]), &[1, 1]).unwrap();
        let i = MatrixG::identity(&r, 3);
        let w = telescoping_patch(&i, &cd, None).unwrap();
        assert!(w.factors.iter().all(|f| f.matrix.is_identity()));
    }

    fn local_e(loc: &LocRing, i: usize, j: usize, text: &str, k: u32) -> Matrix<LocalizedPoly> {
        let arg = loc.element(loc.ring.parse(text).unwrap(), k);
        word_eval(&ElemWord::from_triples(GroupCase::Linear, 3, loc, [(i, j, arg)]).unwrap())
    }

    #[test]
    fn commutator_patch_with_denominators() {
        // E13(xy) = [E12(x/2), E23(2y)] over A_2 and [E12(x/3), E23(3y)] over A_3
        let r = PolyRing::new(CoefficientRing::Integers, 2);
        let mut a = MatrixG::identity(&r, 3);
        a.set(0, 2, r.parse("x*y").unwrap());
        let cd = comaximal_powers(r.coeffs, &ints(&[2, 3]), &[1, 1]).unwrap();
        let data: Vec<_> = [2i64, 3]
            .iter()
            .map(|&s| {
                let loc = LocRing::from_int(r, s).unwrap();
                LocalCommutatorData {
                    pairs: vec![(
                        local_e(&loc, 1, 2, "x", 1),
                        local_e(&loc, 2, 3, &format!("{s}*y"), 0),
                    )],
                    eps: Matrix::identity(&loc, 3),
                }
            })
            .collect();
        let w = commutator_patch(&a, &cd, &data).unwrap();
        assert!(w.checked);
        assert!(w.factors.iter().all(|f| f
            .certificate
            .as_ref()
            .unwrap()
            .expansion
            .as_ref()
            .unwrap()
            .len()
            == 3));
        let mut wrong = data.clone();
        wrong[0].eps = local_e(&wrong[0].eps.ctx().clone(), 1, 3, "x", 0);
        assert!(matches!(
            commutator_patch(&a, &cd, &wrong),
            Err(Error::BadLocalData(_))
        ));
    }

    #[test]
    fn commutator_patch_of_identity() {
        let r = PolyRing::new(CoefficientRing::Integers, 1);
        let cd = comaximal_powers(r.coeffs, &ints(&[2, 3]), &[1, 1]).unwrap();
        let data: Vec<_> = [2i64, 3]
            .iter()
            .map(|&s| {
                let loc = LocRing::from_int(r, s).unwrap();
                LocalCommutatorData {
                    pairs: vec![],
                    eps: Matrix::identity(&loc, 3),
                }
            })
            .collect();
        let w = commutator_patch(&MatrixG::identity(&r, 3), &cd, &data).unwrap();
        assert!(w.checked);
        assert!(w.factors.iter().all(|f| f.matrix.is_identity()));
    }
}
