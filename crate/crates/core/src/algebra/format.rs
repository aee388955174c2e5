//! Text form of scalars.
//!
//! Scalars print in a canonical, context-free way: integers and rationals
//! in decimal (`-3`, `3/4`), elements of Z[t] and Q(t) as expressions in `t`
//! (`t^2+2*t+1/3`, `(t+1)/(t^2-3)`), F_p elements as their representative in
//! `[0, p)`, and F_{p^k} elements as polynomials in the generator `x`
//! (`x^2+x+1`). Parsing goes through the ring, which accepts arbitrary
//! `+ - * / ^ ( )` expressions over integer literals and the ring's variable,
//! with an optional trailing ` mod p` on finite-field elements.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::ring::{Ring, Scalar};
use crate::error::{Error, Result};

fn term_string(coef: &str, var: &str, exp: usize) -> String {
    match (coef, exp) {
        (c, 0) => c.to_string(),
        ("1", 1) => var.to_string(),
        ("1", e) => format!("{var}^{e}"),
        (c, 1) => format!("{c}*{var}"),
        (c, e) => format!("{c}*{var}^{e}"),
    }
}

/// Joins `(sign_negative, magnitude_string, exponent)` terms, highest degree first.
fn join_terms(terms: Vec<(bool, String, usize)>, var: &str) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, mag, e)) in terms.into_iter().enumerate() {
        if neg {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        out.push_str(&term_string(&mag, var, e));
    }
    out
}

fn rational_poly_string(coeffs: &[BigRational], var: &str) -> String {
    let terms = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (c.is_negative(), c.abs().to_string(), e))
        .collect();
    join_terms(terms, var)
}

fn int_poly_string(coeffs: &[BigInt], var: &str) -> String {
    let terms = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (c.is_negative(), c.abs().to_string(), e))
        .collect();
    join_terms(terms, var)
}

pub(crate) fn fp_poly_string(coeffs: &[u64], var: &str) -> String {
    let terms = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| **c != 0)
        .map(|(e, c)| (false, c.to_string(), e))
        .collect();
    join_terms(terms, var)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(x) => write!(f, "{x}"),
            Scalar::Rat(x) => write!(f, "{x}"),
            Scalar::IntPoly(v) => f.write_str(&int_poly_string(v, "t")),
            Scalar::RatFn(r) => {
                if r.is_polynomial() {
                    f.write_str(&rational_poly_string(r.num(), "t"))
                } else {
                    write!(f, "({})/({})", rational_poly_string(r.num(), "t"), rational_poly_string(r.den(), "t"))
                }
            }
            Scalar::Fp(x) => write!(f, "{x}"),
            Scalar::Fq(v) => f.write_str(&fp_poly_string(v, "x")),
        }
    }
}

impl Ring {
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let mut body = text.trim();
        if let Some(idx) = body.find(" mod ") {
            let p: u64 = body[idx + 5..]
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad modulus suffix in {text:?}")))?;
            if !self.is_finite() || self.characteristic() != p {
                return Err(Error::Parse(format!("suffix `mod {p}` does not match {self}")));
            }
            body = body[..idx].trim();
        }
        let mut parser = Parser { ring: self, src: body.as_bytes(), pos: 0, text, var_override: None };
        let value = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(value)
    }

    pub fn format(&self, a: &Scalar) -> String {
        debug_assert!(self.contains(a));
        a.to_string()
    }

    /// Parse a ring descriptor: `Z`, `Z[t]`, `Q`, `Q(t)`, `GF(p)`, `GF(p^k)`,
    /// or `GF(p^k; <monic modulus in x>)`.
    pub fn parse_descriptor(text: &str) -> Result<Ring> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        match s.as_str() {
            "Z" => return Ok(Ring::Integers),
            "Z[t]" => return Ok(Ring::IntPoly),
            "Q" => return Ok(Ring::Rationals),
            "Q(t)" => return Ok(Ring::RationalFunctions),
            _ => {}
        }
        let bad = || Error::InvalidRing(text.to_string());
        let inner = s
            .strip_prefix("GF(")
            .or_else(|| s.strip_prefix("F("))
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (size, modulus) = match inner.split_once(';') {
            Some((a, b)) => (a, Some(b)),
            None => (inner, None),
        };
        let (p, k) = match size.split_once('^') {
            Some((p, k)) => (p.parse::<u64>().map_err(|_| bad())?, k.parse::<usize>().map_err(|_| bad())?),
            None => split_prime_power(size.parse::<u64>().map_err(|_| bad())?).ok_or_else(bad)?,
        };
        match modulus {
            None => Ring::galois_field(p, k),
            Some(m) => {
                let coeffs = parse_fp_poly(m, p)?;
                if coeffs.len() != k + 1 {
                    return Err(Error::InvalidRing(format!("modulus degree does not match k = {k}")));
                }
                Ring::extension_field(p, coeffs)
            }
        }
    }
}

/// `q = p^k` with `p` prime, for `q` below the primality bound.
fn split_prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let p = *crate::algebra::primes::prime_divisors(q).first()?;
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// Parse a polynomial in `x` with coefficients reduced mod `p`.
fn parse_fp_poly(text: &str, p: u64) -> Result<Vec<u64>> {
    // Parse in the auxiliary ring Z[t] with `x` accepted as the variable.
    let mut parser = Parser { ring: &Ring::IntPoly, src: text.as_bytes(), pos: 0, text, var_override: Some(b'x') };
    let v = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error("trailing input"));
    }
    let Scalar::IntPoly(c) = v else { unreachable!() };
    let mut out: Vec<u64> = c.iter().map(|x| super::ring::mod_u64(x, p)).collect();
    super::fp_poly::trim(&mut out);
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    src: &'a [u8],
    pos: usize,
    text: &'a str,
    var_override: Option<u8>,
}

impl<'a> Parser<'a> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?} for ring {}", self.pos, self.text, self.ring))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Scalar> {
        let r = self.ring;
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                let t = self.term()?;
                r.neg(&t)
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = r.add(&acc, &t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = r.sub(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let r = self.ring;
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = r.mul(&acc, &f);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    if r.is_zero(&f) {
                        return Err(self.error("division by zero"));
                    }
                    acc = match r.div(&acc, &f) {
                        Some(q) => q,
                        None if !r.is_field() => {
                            return Err(Error::Integrality(format!("{:?} is not an element of {r}", self.text)))
                        }
                        None => return Err(self.error("division failed")),
                    };
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u64 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.error("expected exponent"))?;
            return Ok(self.ring.pow(&base, e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap();
                Ok(self.ring.from_bigint(&n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                let expected = self.var_override.unwrap_or(match self.ring {
                    Ring::Extension(_) => b'x',
                    _ => b't',
                });
                if c != expected {
                    return Err(self.error("unknown variable"));
                }
                self.ring.generator().ok_or_else(|| self.error("ring has no variable"))
            }
            _ => Err(self.error("unexpected token")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(ring: &Ring, text: &str, canonical: &str) {
        let a = ring.parse(text).unwrap();
        assert!(ring.contains(&a));
        assert_eq!(a.to_string(), canonical);
        assert_eq!(ring.parse(canonical).unwrap(), a);
    }

    #[test]
    fn canonical_strings() {
        roundtrip(&Ring::Rationals, "3/4", "3/4");
        roundtrip(&Ring::Rationals, "-6/8", "-3/4");
        roundtrip(&Ring::Integers, "-12", "-12");
        roundtrip(&Ring::RationalFunctions, "t^2+2*t+1/3", "t^2+2*t+1/3");
        roundtrip(&Ring::RationalFunctions, "(t^2-1)/(t-1)", "t+1");
        roundtrip(&Ring::RationalFunctions, "1/(2*t)", "(1/2)/(t)");
        roundtrip(&Ring::IntPoly, "(t+1)^2", "t^2+2*t+1");
        roundtrip(&Ring::Prime(5), "-1", "4");
        roundtrip(&Ring::Prime(5), "1/2", "3");
        let f4 = Ring::parse_descriptor("GF(2^2; x^2+x+1)").unwrap();
        roundtrip(&f4, "x^2+x+1 mod 2", "0");
        roundtrip(&f4, "x^2", "x+1");
    }

    #[test]
    fn descriptors_roundtrip() {
        for d in ["Z", "Z[t]", "Q", "Q(t)", "GF(7)", "GF(3^2; x^2+1)", "GF(2^3; x^3+x+1)"] {
            let r = Ring::parse_descriptor(d).unwrap();
            assert_eq!(r.to_string(), d);
        }
        assert_eq!(Ring::parse_descriptor("GF(4)").unwrap().to_string(), "GF(2^2; x^2+x+1)");
        assert!(Ring::parse_descriptor("GF(6)").is_err());
        assert!(Ring::parse_descriptor("GF(5^2; x^2+1)").is_err());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Ring::Integers.parse("3/4"), Err(Error::Integrality(_))));
        assert!(Ring::Rationals.parse("1/0").is_err());
        assert!(Ring::Rationals.parse("t").is_err());
        assert!(Ring::Prime(3).parse("1 mod 5").is_err());
        assert!(Ring::Rationals.parse("1 2").is_err());
    }
}
