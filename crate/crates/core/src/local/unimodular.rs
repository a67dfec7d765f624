//! Completing unimodular rows over (semi)local degree-zero rings: a prime
//! field, or the integers localized away from a finite set of primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::elementary::{word_eval, ElemWord};
use crate::error::{Error, Result};
use crate::forms::GroupCase;
use crate::ring::coeff::mod_inverse;
use crate::ring::{Coeff, CoefficientRing, GradedPoly, PolyRing};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemilocalInstance {
    /// `F_p`.
    PrimeField(u64),
    /// `ℤ_S`: rationals whose denominators avoid every prime in `S`.
    LocalizedIntegers(Vec<u64>),
}

impl SemilocalInstance {
    pub fn prime_field(p: u64) -> Result<Self> {
        CoefficientRing::prime_field(p)?;
        Ok(SemilocalInstance::PrimeField(p))
    }

    pub fn localized_integers(primes: &[u64]) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::Malformed("need at least one prime".into()));
        }
        for &p in primes {
            CoefficientRing::prime_field(p)?;
        }
        let mut primes = primes.to_vec();
        primes.sort_unstable();
        primes.dedup();
        Ok(SemilocalInstance::LocalizedIntegers(primes))
    }

    /// The 0-variable polynomial ring in which words are written.
    pub fn ring(&self) -> PolyRing {
        let coeffs = match self {
            SemilocalInstance::PrimeField(p) => CoefficientRing::PrimeField(*p),
            SemilocalInstance::LocalizedIntegers(_) => CoefficientRing::Rationals,
        };
        PolyRing::new(coeffs, 0)
    }

    fn primes(&self) -> Vec<u64> {
        match self {
            SemilocalInstance::PrimeField(p) => vec![*p],
            SemilocalInstance::LocalizedIntegers(ps) => ps.clone(),
        }
    }

    pub fn contains(&self, c: &Coeff) -> bool {
        match self {
            SemilocalInstance::PrimeField(_) => true,
            SemilocalInstance::LocalizedIntegers(ps) => ps
                .iter()
                .all(|&p| !c.denom().is_multiple_of(&BigInt::from(p))),
        }
    }

    /// Residue of `c` modulo `p`, for `p` one of the instance's primes.
    fn residue(c: &Coeff, p: u64) -> BigInt {
        let p = BigInt::from(p);
        let inv = mod_inverse(c.denom(), &p).expect("denominator is prime to p");
        (c.numer() * inv).mod_floor(&p)
    }

    pub fn is_unit(&self, c: &Coeff) -> bool {
        self.primes()
            .into_iter()
            .all(|p| !Self::residue(c, p).is_zero())
    }

    fn reduce(&self, c: &Coeff) -> Coeff {
        self.ring().coeffs.fix(c.clone())
    }

    fn inverse(&self, c: &Coeff) -> Coeff {
        self.ring().coeffs.inverse(c).expect("unit")
    }
}

/// Row operation bookkeeping: `v ↦ v · E_ij(c)` adds `c·v_i` to `v_j`.
struct Row<'a> {
    inst: &'a SemilocalInstance,
    v: Vec<Coeff>,
    ops: Vec<(usize, usize, Coeff)>,
}

impl Row<'_> {
    fn apply(&mut self, i: usize, j: usize, c: Coeff) {
        let c = self.inst.reduce(&c);
        if c.is_zero() {
            return;
        }
        let cr = self.inst.ring().coeffs;
        self.v[j] = cr.add(&self.v[j], &cr.mul(&c, &self.v[i]));
        self.ops.push((i + 1, j + 1, c));
    }
}

/// An elementary word `ε` with `v · ε = e_1ᵗ`.
///
/// A unit coordinate at `j ≥ 2` moves `1` into the first slot with one column
/// operation; a unit only at `1` takes two. Without any unit coordinate the
/// first entry is first made a unit by a CRT combination of the others.
pub fn complete_unimodular(inst: &SemilocalInstance, v: &[Coeff]) -> Result<ElemWord<GradedPoly>> {
    let n = v.len();
    if n < 2 {
        return Err(Error::DimensionMismatch(
            "rows need at least two entries".into(),
        ));
    }
    let ring = inst.ring();
    let mut row = Row {
        inst,
        v: Vec::with_capacity(n),
        ops: Vec::new(),
    };
    for c in v {
        if !inst.contains(c) {
            return Err(Error::NotInRing(c.to_string(), format!("{inst:?}")));
        }
        row.v.push(ring.coeffs.reduce(c)?);
    }
    for p in inst.primes() {
        if row
            .v
            .iter()
            .all(|c| SemilocalInstance::residue(c, p).is_zero())
        {
            return Err(Error::NotUnimodular(format!(
                "every entry vanishes modulo {p}"
            )));
        }
    }
    let cr = ring.coeffs;
    let one = Coeff::one();
    if !row.v[0].is_one() {
        if let Some(j) = (1..n).find(|&j| inst.is_unit(&row.v[j])) {
            let c = cr.mul(&inst.inverse(&row.v[j]), &cr.sub(&one, &row.v[0]));
            row.apply(j, 0, c);
        } else {
            if !inst.is_unit(&row.v[0]) {
                make_first_unit(&mut row);
            }
            let u = row.v[0].clone();
            let c = cr.mul(&inst.inverse(&u), &cr.sub(&one, &row.v[1]));
            row.apply(0, 1, c);
            row.apply(1, 0, cr.sub(&one, &u));
        }
    }
    debug_assert!(row.v[0].is_one());
    for j in 1..n {
        let c = cr.neg(&row.v[j]);
        row.apply(0, j, c);
    }
    let word = ElemWord::from_triples(
        GroupCase::Linear,
        n,
        &ring,
        row.ops.iter().map(|(i, j, c)| (*i, *j, ring.constant(c))),
    )?;
    let image = word_eval(&word).vec_mul(
        &v.iter()
            .map(|c| ring.constant(&cr.fix(c.clone())))
            .collect::<Vec<_>>(),
    )?;
    let done = image[0].is_one() && image[1..].iter().all(GradedPoly::is_zero);
    if !done {
        return Err(Error::Internal("completion does not reach e1".into()));
    }
    Ok(word)
}

/// Adds integer multiples of later entries to `v_1` so that it avoids every
/// prime of the instance (chosen prime by prime and glued with CRT).
fn make_first_unit(row: &mut Row<'_>) {
    let n = row.v.len();
    let primes = row.inst.primes();
    let mut mults = vec![BigInt::zero(); n];
    let mut modulus = BigInt::one();
    for &p in &primes {
        let pb = BigInt::from(p);
        let mut local = vec![BigInt::zero(); n];
        if SemilocalInstance::residue(&row.v[0], p).is_zero() {
            let j = (1..n)
                .find(|&j| !SemilocalInstance::residue(&row.v[j], p).is_zero())
                .expect("unimodular modulo p");
            local[j] = BigInt::one();
        }
        // x ≡ mults (mod modulus), x ≡ local (mod p)
        let inv = mod_inverse(&modulus, &pb).expect("distinct primes");
        for j in 1..n {
            let diff = (&local[j] - &mults[j]).mod_floor(&pb);
            mults[j] = &mults[j] + &modulus * ((diff * &inv).mod_floor(&pb));
        }
        modulus *= &pb;
    }
    for (j, m) in mults.into_iter().enumerate().skip(1) {
        row.apply(j, 0, Coeff::from_integer(m));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Coeff> {
        v.iter().map(|&x| Coeff::from_integer(x.into())).collect()
    }

    fn apply(word: &ElemWord<GradedPoly>, v: &[Coeff]) -> Vec<GradedPoly> {
        let ring = *word.ctx();
        word_eval(word)
            .vec_mul(
                &v.iter()
                    .map(|c| ring.constant(&ring.coeffs.fix(c.clone())))
                    .collect::<Vec<_>>(),
            )
            .unwrap()
    }

    #[test]
    fn basis_row_needs_no_word() {
        let f = SemilocalInstance::prime_field(5).unwrap();
        assert!(complete_unimodular(&f, &ints(&[1, 0, 0]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn row_over_f5() {
        let f = SemilocalInstance::prime_field(5).unwrap();
        let v = ints(&[2, 3, 4]);
        let w = complete_unimodular(&f, &v).unwrap();
        let image = apply(&w, &v);
        assert!(image[0].is_one() && image[1].is_zero() && image[2].is_zero());
    }

    #[test]
    fn two_step_word_over_z_localized_at_3() {
        let z3 = SemilocalInstance::localized_integers(&[3]).unwrap();
        let w = complete_unimodular(&z3, &ints(&[2, 5])).unwrap();
        assert_eq!(w.len(), 2);
        assert!(w
            .gens()
            .iter()
            .all(|g| z3.contains(&g.arg().constant_value().unwrap())));
    }

    #[test]
    fn no_unit_coordinate_uses_crt() {
        let s = SemilocalInstance::localized_integers(&[2, 3]).unwrap();
        let v = ints(&[6, 4, 9]);
        let w = complete_unimodular(&s, &v).unwrap();
        let image = apply(&w, &v);
        assert!(image[0].is_one() && image[1..].iter().all(GradedPoly::is_zero));
        assert!(w
            .gens()
            .iter()
            .all(|g| s.contains(&g.arg().constant_value().unwrap())));
    }

    #[test]
    fn non_unimodular_rows_are_rejected() {
        let f = SemilocalInstance::prime_field(3).unwrap();
        assert!(matches!(
            complete_unimodular(&f, &ints(&[0, 3, 6])),
            Err(Error::NotUnimodular(_))
        ));
        let z3 = SemilocalInstance::localized_integers(&[3]).unwrap();
        assert!(matches!(
            complete_unimodular(&z3, &ints(&[3, 6])),
            Err(Error::NotUnimodular(_))
        ));
        let half = vec![Coeff::new(1.into(), 3.into()), Coeff::one()];
        assert!(matches!(
            complete_unimodular(&z3, &half),
            Err(Error::NotInRing(..))
        ));
    }
}
