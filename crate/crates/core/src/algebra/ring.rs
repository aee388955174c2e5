//! Ring descriptors and their elements.
//!
//! A [`Ring`] is a small runtime descriptor (Z, Z[t], Q, Q(t), F_p, F_{p^k});
//! a [`Scalar`] is a tagged value in canonical form. All arithmetic goes
//! through the descriptor, in the style `ring.add(&a, &b)`. Passing a scalar
//! that belongs to a different ring is a programming error and panics; the
//! boundaries (parsing, matrix construction) validate membership.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::fp_poly;
use super::primes::{inv_mod, mul_mod, require_prime};
use super::qpoly::{self, RatFn, ZPoly};
use crate::error::{Error, Result};

/// Largest characteristic accepted for extension fields.
pub const MAX_EXTENSION_CHAR: u64 = 1 << 31;
/// Largest extension degree accepted.
pub const MAX_EXTENSION_DEGREE: usize = 8;

/// F_p[x]/(f) with f monic irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtField {
    p: u64,
    modulus: Vec<u64>,
}

impl ExtField {
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Self> {
        require_prime(p)?;
        if p > MAX_EXTENSION_CHAR {
            return Err(Error::InvalidRing(format!("extension characteristic {p} exceeds 2^31")));
        }
        let mut modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        fp_poly::trim(&mut modulus);
        let k = modulus.len().saturating_sub(1);
        if !(1..=MAX_EXTENSION_DEGREE).contains(&k) {
            return Err(Error::InvalidRing(format!("extension degree {k} outside 1..=8")));
        }
        if modulus[k] != 1 {
            return Err(Error::InvalidRing("extension modulus must be monic".into()));
        }
        if !fp_poly::is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus(p));
        }
        Ok(ExtField { p, modulus })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn reduce(&self, a: &[u64]) -> Vec<u64> {
        fp_poly::rem(a, &self.modulus, self.p)
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        fp_poly::mulmod(a, b, &self.modulus, self.p)
    }

    fn inv(&self, a: &[u64]) -> Option<Vec<u64>> {
        if a.is_empty() {
            return None;
        }
        let (g, s) = fp_poly::ext_gcd(a, &self.modulus, self.p);
        debug_assert_eq!(g, vec![1]);
        Some(self.reduce(&s))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    /// Z
    Integers,
    /// Z[t]
    IntPoly,
    /// Q
    Rationals,
    /// Q(t)
    RationalFunctions,
    /// F_p
    Prime(u64),
    /// F_{p^k}
    Extension(Arc<ExtField>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    IntPoly(ZPoly),
    RatFn(RatFn),
    Fp(u64),
    Fq(Vec<u64>),
}

fn mismatch(ring: &Ring, a: &Scalar) -> ! {
    panic!("scalar {a:?} does not belong to {ring}")
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Ring> {
        require_prime(p)?;
        Ok(Ring::Prime(p))
    }

    pub fn extension_field(p: u64, modulus: Vec<u64>) -> Result<Ring> {
        let f = ExtField::new(p, modulus)?;
        if f.degree() == 1 {
            return Ok(Ring::Prime(p));
        }
        Ok(Ring::Extension(Arc::new(f)))
    }

    /// F_{p^k} with the lexicographically first monic irreducible modulus.
    pub fn galois_field(p: u64, k: usize) -> Result<Ring> {
        require_prime(p)?;
        if k == 0 || k > MAX_EXTENSION_DEGREE {
            return Err(Error::InvalidRing(format!("extension degree {k} outside 1..=8")));
        }
        if k == 1 {
            return Ok(Ring::Prime(p));
        }
        if p > MAX_EXTENSION_CHAR {
            return Err(Error::InvalidRing(format!("extension characteristic {p} exceeds 2^31")));
        }
        Self::extension_field(p, fp_poly::first_irreducible(p, k))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Integers | Ring::IntPoly)
    }

    /// Every supported ring is an integral domain.
    pub fn is_domain(&self) -> bool {
        true
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Ring::Prime(_) | Ring::Extension(_))
    }

    pub fn fraction_field(&self) -> Ring {
        match self {
            Ring::Integers => Ring::Rationals,
            Ring::IntPoly => Ring::RationalFunctions,
            other => other.clone(),
        }
    }

    /// 0 for characteristic zero.
    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::Prime(p) => *p,
            Ring::Extension(f) => f.p,
            _ => 0,
        }
    }

    /// Field size for finite fields.
    pub fn order(&self) -> Option<BigUint> {
        match self {
            Ring::Prime(p) => Some(BigUint::from(*p)),
            Ring::Extension(f) => Some(BigUint::from(f.p).pow(f.degree() as u32)),
            _ => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Ring::Integers => Scalar::Int(BigInt::zero()),
            Ring::Rationals => Scalar::Rat(BigRational::zero()),
            Ring::IntPoly => Scalar::IntPoly(Vec::new()),
            Ring::RationalFunctions => Scalar::RatFn(RatFn::zero()),
            Ring::Prime(_) => Scalar::Fp(0),
            Ring::Extension(_) => Scalar::Fq(Vec::new()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, c: i64) -> Scalar {
        self.from_bigint(&BigInt::from(c))
    }

    pub fn from_bigint(&self, c: &BigInt) -> Scalar {
        match self {
            Ring::Integers => Scalar::Int(c.clone()),
            Ring::Rationals => Scalar::Rat(BigRational::from_integer(c.clone())),
            Ring::IntPoly => {
                let mut v = vec![c.clone()];
                qpoly::trim(&mut v);
                Scalar::IntPoly(v)
            }
            Ring::RationalFunctions => {
                Scalar::RatFn(RatFn::from_poly(vec![BigRational::from_integer(c.clone())]))
            }
            Ring::Prime(p) => Scalar::Fp(mod_u64(c, *p)),
            Ring::Extension(f) => {
                let mut v = vec![mod_u64(c, f.p)];
                fp_poly::trim(&mut v);
                Scalar::Fq(v)
            }
        }
    }

    /// Rational constant, when it lies in this ring.
    pub fn from_rational(&self, c: &BigRational) -> Option<Scalar> {
        match self {
            Ring::Rationals => Some(Scalar::Rat(c.clone())),
            Ring::RationalFunctions => Some(Scalar::RatFn(RatFn::from_poly(vec![c.clone()]))),
            Ring::Integers | Ring::IntPoly => c.is_integer().then(|| self.from_bigint(&c.to_integer())),
            Ring::Prime(_) | Ring::Extension(_) => {
                let n = self.from_bigint(c.numer());
                let d = self.from_bigint(c.denom());
                self.div(&n, &d)
            }
        }
    }

    /// `t` for Z[t] and Q(t), `x` for F_{p^k}.
    pub fn generator(&self) -> Option<Scalar> {
        match self {
            Ring::IntPoly => Some(Scalar::IntPoly(vec![BigInt::zero(), BigInt::one()])),
            Ring::RationalFunctions => {
                Some(Scalar::RatFn(RatFn::from_poly(vec![BigRational::zero(), BigRational::one()])))
            }
            Ring::Extension(f) => Some(Scalar::Fq(f.reduce(&[0, 1]))),
            _ => None,
        }
    }

    pub fn contains(&self, a: &Scalar) -> bool {
        match (self, a) {
            (Ring::Integers, Scalar::Int(_)) => true,
            (Ring::Rationals, Scalar::Rat(_)) => true,
            (Ring::IntPoly, Scalar::IntPoly(v)) => v.last().is_none_or(|c| !c.is_zero()),
            (Ring::RationalFunctions, Scalar::RatFn(_)) => true,
            (Ring::Prime(p), Scalar::Fp(x)) => x < p,
            (Ring::Extension(f), Scalar::Fq(v)) => {
                v.len() <= f.degree() && v.iter().all(|&c| c < f.p) && v.last() != Some(&0)
            }
            _ => false,
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Int(x) => x.is_zero(),
            Scalar::Rat(x) => x.is_zero(),
            Scalar::IntPoly(v) => v.is_empty(),
            Scalar::RatFn(f) => f.is_zero(),
            Scalar::Fp(x) => *x == 0,
            Scalar::Fq(v) => v.is_empty(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Ring::Integers, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x + y),
            (Ring::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Ring::IntPoly, Scalar::IntPoly(x), Scalar::IntPoly(y)) => Scalar::IntPoly(qpoly::padd(x, y)),
            (Ring::RationalFunctions, Scalar::RatFn(x), Scalar::RatFn(y)) => Scalar::RatFn(x.add(y)),
            (Ring::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(((*x as u128 + *y as u128) % *p as u128) as u64),
            (Ring::Extension(f), Scalar::Fq(x), Scalar::Fq(y)) => Scalar::Fq(fp_poly::add(x, y, f.p)),
            _ => mismatch(self, if self.contains(a) { b } else { a }),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Ring::Integers, Scalar::Int(x)) => Scalar::Int(-x),
            (Ring::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (Ring::IntPoly, Scalar::IntPoly(x)) => Scalar::IntPoly(qpoly::pneg(x)),
            (Ring::RationalFunctions, Scalar::RatFn(x)) => Scalar::RatFn(x.neg()),
            (Ring::Prime(p), Scalar::Fp(x)) => Scalar::Fp((p - x) % p),
            (Ring::Extension(f), Scalar::Fq(x)) => Scalar::Fq(fp_poly::sub(&[], x, f.p)),
            _ => mismatch(self, a),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Ring::Integers, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x * y),
            (Ring::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Ring::IntPoly, Scalar::IntPoly(x), Scalar::IntPoly(y)) => Scalar::IntPoly(qpoly::pmul(x, y)),
            (Ring::RationalFunctions, Scalar::RatFn(x), Scalar::RatFn(y)) => Scalar::RatFn(x.mul(y)),
            (Ring::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(mul_mod(*x, *y, *p)),
            (Ring::Extension(f), Scalar::Fq(x), Scalar::Fq(y)) => Scalar::Fq(f.mul(x, y)),
            _ => mismatch(self, if self.contains(a) { b } else { a }),
        }
    }

    /// Multiplicative inverse within this ring (units only for Z and Z[t]).
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (Ring::Integers, Scalar::Int(x)) => (x.abs().is_one()).then(|| Scalar::Int(x.clone())),
            (Ring::Rationals, Scalar::Rat(x)) => (!x.is_zero()).then(|| Scalar::Rat(x.recip())),
            (Ring::IntPoly, Scalar::IntPoly(x)) => {
                (x.len() == 1 && x[0].abs().is_one()).then(|| Scalar::IntPoly(x.clone()))
            }
            (Ring::RationalFunctions, Scalar::RatFn(x)) => x.inv().map(Scalar::RatFn),
            (Ring::Prime(p), Scalar::Fp(x)) => inv_mod(*x, *p).map(Scalar::Fp),
            (Ring::Extension(f), Scalar::Fq(x)) => f.inv(x).map(Scalar::Fq),
            _ => mismatch(self, a),
        }
    }

    /// Exact quotient `a / b` when it exists in this ring.
    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        match (self, a, b) {
            (Ring::Integers, Scalar::Int(x), Scalar::Int(y)) => {
                if y.is_zero() {
                    return None;
                }
                let (q, r) = x.div_rem(y);
                r.is_zero().then_some(Scalar::Int(q))
            }
            (Ring::IntPoly, Scalar::IntPoly(x), Scalar::IntPoly(y)) => {
                if y.is_empty() {
                    return None;
                }
                let (q, r) = qpoly::qdivrem(&qpoly::to_qpoly(x), &qpoly::to_qpoly(y));
                if !r.is_empty() {
                    return None;
                }
                qpoly::to_zpoly(&q).map(Scalar::IntPoly)
            }
            _ => self.inv(b).map(|bi| self.mul(a, &bi)),
        }
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Image of `a ∈ from` under the canonical map into `self`.
    pub fn embed(&self, a: &Scalar, from: &Ring) -> Result<Scalar> {
        if from == self {
            return Ok(a.clone());
        }
        let fail = || Error::InvalidRing(format!("no canonical map {from} -> {self}"));
        match (from, a) {
            (Ring::Integers, Scalar::Int(x)) => match self {
                Ring::Prime(_) | Ring::Extension(_) | Ring::Rationals | Ring::IntPoly | Ring::RationalFunctions => {
                    Ok(self.from_bigint(x))
                }
                _ => Err(fail()),
            },
            (Ring::Rationals, Scalar::Rat(x)) => match self {
                Ring::RationalFunctions => Ok(self.from_rational(x).unwrap()),
                _ => Err(fail()),
            },
            (Ring::IntPoly, Scalar::IntPoly(v)) => match self {
                Ring::RationalFunctions => Ok(Scalar::RatFn(RatFn::from_poly(qpoly::to_qpoly(v)))),
                _ => Err(fail()),
            },
            (Ring::Prime(p), Scalar::Fp(x)) => match self {
                Ring::Extension(f) if f.p == *p => {
                    let mut v = vec![*x];
                    fp_poly::trim(&mut v);
                    Ok(Scalar::Fq(v))
                }
                _ => Err(fail()),
            },
            _ => Err(fail()),
        }
    }

    /// Inverse of [`Ring::embed`] from the fraction field: `Some` when the
    /// element already lies in this ring.
    pub fn retract(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (Ring::Integers, Scalar::Rat(x)) => x.is_integer().then(|| Scalar::Int(x.to_integer())),
            (Ring::IntPoly, Scalar::RatFn(f)) => {
                if !f.is_polynomial() {
                    return None;
                }
                qpoly::to_zpoly(f.num()).map(Scalar::IntPoly)
            }
            _ if self.contains(a) => Some(a.clone()),
            _ => None,
        }
    }

    /// Every element of a finite field, ordered by [`Ring::element_index`].
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        let q = self.order()?.to_u64()?;
        Some((0..q).map(|i| self.element_from_index(i)).collect())
    }

    /// Base-p digit encoding of a finite-field element.
    pub fn element_index(&self, a: &Scalar) -> u64 {
        match (self, a) {
            (Ring::Prime(_), Scalar::Fp(x)) => *x,
            (Ring::Extension(f), Scalar::Fq(v)) => v.iter().rev().fold(0u64, |acc, &c| acc * f.p + c),
            _ => panic!("element_index on infinite ring {self}"),
        }
    }

    pub fn element_from_index(&self, mut i: u64) -> Scalar {
        match self {
            Ring::Prime(p) => Scalar::Fp(i % p),
            Ring::Extension(f) => {
                let mut v = Vec::with_capacity(f.degree());
                for _ in 0..f.degree() {
                    v.push(i % f.p);
                    i /= f.p;
                }
                fp_poly::trim(&mut v);
                Scalar::Fq(v)
            }
            _ => panic!("element_from_index on infinite ring {self}"),
        }
    }

    /// Uniform element for finite fields; a small integer in [-3, 3] otherwise.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            Ring::Prime(p) => Scalar::Fp(rng.gen_range(0..*p)),
            Ring::Extension(f) => {
                let mut v: Vec<u64> = (0..f.degree()).map(|_| rng.gen_range(0..f.p)).collect();
                fp_poly::trim(&mut v);
                Scalar::Fq(v)
            }
            _ => self.from_i64(rng.gen_range(-3..=3)),
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let a = self.random(rng);
            if !self.is_zero(&a) {
                return a;
            }
        }
    }

    /// `a^{1/p}` in a finite field of characteristic p (Frobenius is bijective).
    pub fn pth_root(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Ring::Prime(_), Scalar::Fp(_)) => a.clone(),
            (Ring::Extension(f), Scalar::Fq(_)) => {
                // a^{p^{k-1}}
                let mut r = a.clone();
                for _ in 0..f.degree() - 1 {
                    r = self.pow(&r, f.p);
                }
                r
            }
            _ => panic!("pth_root outside finite fields"),
        }
    }
}

pub(crate) fn mod_u64(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::IntPoly => write!(f, "Z[t]"),
            Ring::Rationals => write!(f, "Q"),
            Ring::RationalFunctions => write!(f, "Q(t)"),
            Ring::Prime(p) => write!(f, "GF({p})"),
            Ring::Extension(e) => {
                write!(f, "GF({}^{}; {})", e.p, e.degree(), super::format::fp_poly_string(&e.modulus, "x"))
            }
        }
    }
}
