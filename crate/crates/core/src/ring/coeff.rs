//! Degree-zero coefficient rings: the integers, the rationals and prime fields.
//!
//! Every coefficient is stored as a [`BigRational`]; the ring descriptor decides
//! which values are legal and how results are reduced. Over `F_p` the stored
//! value is the integer representative in `0..p`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Coeff = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    Integers,
    Rationals,
    PrimeField(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Integer value of `c`, if it has denominator one.
pub fn as_integer(c: &Coeff) -> Option<&BigInt> {
    c.is_integer().then(|| c.numer())
}

pub fn int(v: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(v))
}

impl CoefficientRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(CoefficientRing::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientRing::Integers)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientRing::PrimeField(p) => *p,
            _ => 0,
        }
    }

    /// Brings an arbitrary rational into canonical form for this ring.
    pub fn reduce(&self, c: &Coeff) -> Result<Coeff> {
        match self {
            CoefficientRing::Rationals => Ok(c.clone()),
            CoefficientRing::Integers => {
                if c.is_integer() {
                    Ok(c.clone())
                } else {
                    Err(Error::NotInRing(c.to_string(), self.to_string()))
                }
            }
            CoefficientRing::PrimeField(p) => {
                let p = BigInt::from(*p);
                let den = c.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(Error::NotInRing(c.to_string(), self.to_string()));
                }
                let inv = mod_inverse(&den, &p).expect("nonzero residue mod prime");
                Ok(Coeff::from_integer((c.numer() * inv).mod_floor(&p)))
            }
        }
    }

    /// Reduction for values that are known to lie in the ring up to the
    /// modulus (sums and products of canonical elements).
    pub(crate) fn fix(&self, c: Coeff) -> Coeff {
        match self {
            CoefficientRing::PrimeField(p) => {
                debug_assert!(c.is_integer());
                Coeff::from_integer(c.numer().mod_floor(&BigInt::from(*p)))
            }
            _ => c,
        }
    }

    pub fn from_int(&self, v: i64) -> Coeff {
        self.fix(int(v))
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.fix(a + b)
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.fix(a - b)
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.fix(a * b)
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        self.fix(-a)
    }

    pub fn pow(&self, a: &Coeff, e: u32) -> Coeff {
        let mut acc = Coeff::one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn is_unit(&self, a: &Coeff) -> bool {
        match self {
            CoefficientRing::Integers => a.is_integer() && a.numer().abs().is_one(),
            _ => !a.is_zero(),
        }
    }

    pub fn inverse(&self, a: &Coeff) -> Option<Coeff> {
        if !self.is_unit(a) {
            return None;
        }
        match self {
            CoefficientRing::PrimeField(p) => {
                let p = BigInt::from(*p);
                mod_inverse(a.numer(), &p).map(Coeff::from_integer)
            }
            _ => Some(a.recip()),
        }
    }

    /// `a / b` when the quotient lies in the ring.
    pub fn div_exact(&self, a: &Coeff, b: &Coeff) -> Option<Coeff> {
        if b.is_zero() {
            return None;
        }
        match self {
            CoefficientRing::Integers => {
                let (q, r) = a.numer().div_rem(b.numer());
                r.is_zero().then(|| Coeff::from_integer(q))
            }
            CoefficientRing::Rationals => Some(a / b),
            CoefficientRing::PrimeField(_) => self.inverse(b).map(|inv| self.mul(a, &inv)),
        }
    }

    /// Canonical decimal text, e.g. `-3/4`.
    pub fn format(&self, c: &Coeff) -> String {
        c.to_string()
    }

    pub fn parse_coeff(&self, text: &str) -> Result<Coeff> {
        let text = text.trim();
        let value = if let Some((n, d)) = text.split_once('/') {
            let n = BigInt::from_str(n.trim())
                .map_err(|_| Error::Malformed(format!("bad coefficient `{text}`")))?;
            let d = BigInt::from_str(d.trim())
                .map_err(|_| Error::Malformed(format!("bad coefficient `{text}`")))?;
            if d.is_zero() {
                return Err(Error::Malformed(format!("zero denominator in `{text}`")));
            }
            Coeff::new(n, d)
        } else {
            Coeff::from_integer(
                BigInt::from_str(text)
                    .map_err(|_| Error::Malformed(format!("bad coefficient `{text}`")))?,
            )
        };
        self.reduce(&value)
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "int"),
            CoefficientRing::Rationals => write!(f, "rat"),
            CoefficientRing::PrimeField(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for CoefficientRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "int" | "Z" | "ZZ" => Ok(CoefficientRing::Integers),
            "rat" | "Q" | "QQ" => Ok(CoefficientRing::Rationals),
            other => {
                let p = other
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::Malformed(format!("unknown ring `{other}`")))?;
                CoefficientRing::prime_field(p)
            }
        }
    }
}

/// Extended Euclid over the integers: returns `(g, x, y)` with `a x + b y = g`.
pub fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let (g, x, _) = extended_gcd(&a.mod_floor(m), m);
    g.is_one().then(|| x.mod_floor(m))
}

/// Small integer view of a coefficient, used by samplers and index arithmetic.
pub fn to_i64(c: &Coeff) -> Option<i64> {
    as_integer(c).and_then(|n| n.to_i64())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_composites() {
        assert!(CoefficientRing::prime_field(7).is_ok());
        assert_eq!(CoefficientRing::prime_field(9), Err(Error::NotPrime(9)));
        assert!(CoefficientRing::prime_field(1).is_err());
    }

    #[test]
    fn reduce_mod_p_handles_fractions() {
        let f5 = CoefficientRing::PrimeField(5);
        // 1/2 = 3 in F_5
        assert_eq!(f5.reduce(&Coeff::new(1.into(), 2.into())).unwrap(), int(3));
        assert!(f5.reduce(&Coeff::new(1.into(), 5.into())).is_err());
        assert_eq!(f5.from_int(-1), int(4));
    }

    #[test]
    fn integers_reject_fractions_and_divide_exactly() {
        let z = CoefficientRing::Integers;
        assert!(z.parse_coeff("1/2").is_err());
        assert_eq!(z.div_exact(&int(6), &int(3)), Some(int(2)));
        assert_eq!(z.div_exact(&int(6), &int(4)), None);
        assert!(z.is_unit(&int(-1)));
        assert!(!z.is_unit(&int(2)));
    }

    #[test]
    fn extended_gcd_matches_known_multipliers() {
        let (g, x, y) = extended_gcd(&BigInt::from(2), &BigInt::from(3));
        assert_eq!((g, x, y), (1.into(), (-1).into(), 1.into()));
        let (g, x, y) = extended_gcd(&BigInt::from(4), &BigInt::from(9));
        assert_eq!((g, x, y), (1.into(), (-2).into(), 1.into()));
    }

    #[test]
    fn ring_names_round_trip() {
        for r in [
            CoefficientRing::Integers,
            CoefficientRing::Rationals,
            CoefficientRing::PrimeField(13),
        ] {
            assert_eq!(r.to_string().parse::<CoefficientRing>().unwrap(), r);
        }
        assert!("fp:4".parse::<CoefficientRing>().is_err());
    }
}
