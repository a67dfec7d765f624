//! Text grammar for polynomials:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' unary) | ('/' unary))*
//! unary := '-' unary | power
//! power := atom ('^' integer)?
//! atom  := integer | variable | '(' expr ')'
//! ```
//!
//! Variables are `x1..xk`, with the aliases `x, y, z` when `k <= 3`. Division is
//! only allowed by nonzero constants, which gives rational literals like `3/4`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::coeff::Coeff;
use super::poly::{GradedPoly, PolyRing};
use crate::error::{Error, Result};

struct Parser<'a> {
    ring: PolyRing,
    src: &'a [u8],
    pos: usize,
}

pub fn parse_poly(ring: PolyRing, text: &str) -> Result<GradedPoly> {
    let mut p = Parser {
        ring,
        src: text.as_bytes(),
        pos: 0,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::parse(p.pos, "unexpected trailing input"));
    }
    Ok(out)
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<GradedPoly> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' {
                acc.add(&rhs)
            } else {
                acc.sub(&rhs)
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<GradedPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    let c = d
                        .constant_value()
                        .ok_or_else(|| Error::parse(at, "division by a non-constant"))?;
                    if c.is_zero() {
                        return Err(Error::parse(at, "division by zero"));
                    }
                    acc = acc.div_coeff(&c).ok_or_else(|| {
                        Error::parse(at, format!("not divisible by {c} in {}", self.ring.coeffs))
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<GradedPoly> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        if self.peek() == Some(b'+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<GradedPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let digits = self.digits();
            let e: u32 = digits
                .parse()
                .map_err(|_| Error::parse(at, "expected a small nonnegative exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<GradedPoly> {
        let at = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::parse(self.pos, "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let n: BigInt = digits.parse().expect("digit run");
                let c = self.ring.coeffs.reduce(&Coeff::from_integer(n))?;
                Ok(self.ring.constant(&c))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let idx = self.variable_index(name).ok_or_else(|| {
                    Error::parse(
                        start,
                        format!(
                            "unknown variable `{name}` for {} variables",
                            self.ring.num_vars
                        ),
                    )
                })?;
                Ok(self.ring.var(idx))
            }
            Some(_) => Err(Error::parse(at, "unexpected character")),
            None => Err(Error::parse(at, "unexpected end of input")),
        }
    }

    fn variable_index(&self, name: &str) -> Option<usize> {
        let k = self.ring.num_vars;
        let alias = match name {
            "x" => Some(0),
            "y" => Some(1),
            "z" => Some(2),
            _ => None,
        };
        if let Some(i) = alias {
            return (k <= 3 && i < k).then_some(i);
        }
        let i: usize = name.strip_prefix('x')?.parse().ok()?;
        (1..=k).contains(&i).then(|| i - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::coeff::{int, CoefficientRing};

    #[test]
    fn parses_the_reference_example() {
        let r = PolyRing::new(CoefficientRing::Integers, 1);
        let p = parse_poly(r, "2 + 3*x + x^2").unwrap();
        assert_eq!(p.homogeneous_component(1), r.var(0).scale(&int(3)));
        assert_eq!(p.num_terms(), 3);
    }

    #[test]
    fn indexed_variables_and_aliases() {
        let r = PolyRing::new(CoefficientRing::Integers, 4);
        let p = parse_poly(r, "x1*x4 - (x2 + x3)^2").unwrap();
        assert_eq!(p.degree(), Some(2));
        assert!(parse_poly(r, "x").is_err(), "aliases only for k <= 3");
        assert!(parse_poly(r, "x5").is_err());
        let r3 = PolyRing::new(CoefficientRing::Integers, 3);
        assert_eq!(parse_poly(r3, "x2").unwrap(), parse_poly(r3, "y").unwrap());
    }

    #[test]
    fn rational_literals_respect_the_ring() {
        let q = PolyRing::new(CoefficientRing::Rationals, 1);
        let p = parse_poly(q, "3/4*x").unwrap();
        assert_eq!(p.leading_term().unwrap().1, &Coeff::new(3.into(), 4.into()));
        let z = PolyRing::new(CoefficientRing::Integers, 1);
        assert!(parse_poly(z, "x/2").is_err());
        assert_eq!(
            parse_poly(z, "(4*x)/2").unwrap(),
            parse_poly(z, "2*x").unwrap()
        );
        let f5 = PolyRing::new(CoefficientRing::PrimeField(5), 1);
        assert_eq!(parse_poly(f5, "1/2").unwrap(), f5.int(3));
    }

    #[test]
    fn reports_positions() {
        let r = PolyRing::new(CoefficientRing::Integers, 2);
        assert!(matches!(parse_poly(r, "x + "), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(r, "(x"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_poly(r, "x ? y"),
            Err(Error::Parse { pos: 2, .. })
        ));
        assert!(matches!(parse_poly(r, "x/y"), Err(Error::Parse { .. })));
    }
}
