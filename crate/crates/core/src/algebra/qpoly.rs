//! Polynomials in `t` over Z and Q, and reduced rational functions in Q(t).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type ZPoly = Vec<BigInt>;
pub type QPoly = Vec<BigRational>;

pub(crate) fn trim<T: Zero>(a: &mut Vec<T>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

pub(crate) fn padd<T: Zero + Clone>(a: &[T], b: &[T]) -> Vec<T> {
    let n = a.len().max(b.len());
    let mut out: Vec<T> = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.clone() + y.clone(),
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => T::zero(),
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn pneg<T: Zero + Clone + std::ops::Neg<Output = T>>(a: &[T]) -> Vec<T> {
    a.iter().map(|x| -x.clone()).collect()
}

pub(crate) fn psub<T: Zero + Clone + std::ops::Neg<Output = T>>(a: &[T], b: &[T]) -> Vec<T> {
    padd(a, &pneg(b))
}

pub(crate) fn pmul<T: Zero + Clone + std::ops::Mul<Output = T>>(a: &[T], b: &[T]) -> Vec<T> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn pscale<T: Zero + Clone + std::ops::Mul<Output = T>>(a: &[T], c: &T) -> Vec<T> {
    let mut out: Vec<T> = a.iter().map(|x| x.clone() * c.clone()).collect();
    trim(&mut out);
    out
}

pub(crate) fn peval<T: Zero + Clone + std::ops::Mul<Output = T>>(a: &[T], x: &T) -> T {
    a.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
}

pub(crate) fn to_qpoly(a: &[BigInt]) -> QPoly {
    a.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

/// `Some` when every coefficient is an integer.
pub(crate) fn to_zpoly(a: &[BigRational]) -> Option<ZPoly> {
    a.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
}

pub(crate) fn qdivrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let db = b.len().checked_sub(1).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() > db {
        let shift = rem.len() - 1 - db;
        let c = rem.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] = &rem[shift + j] - &c * bj;
        }
        quot[shift] = c;
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

pub(crate) fn qmonic(a: &[BigRational]) -> QPoly {
    match a.last() {
        None => Vec::new(),
        Some(lc) => {
            let inv = lc.recip();
            pscale(a, &inv)
        }
    }
}

pub(crate) fn qgcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = qdivrem(&x, &y).1;
        x = std::mem::replace(&mut y, r);
    }
    qmonic(&x)
}

/// Scale a rational polynomial to a primitive integer polynomial with
/// positive leading coefficient.
pub(crate) fn primitive_integer(a: &[BigRational]) -> ZPoly {
    let den = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = a.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    primitive_part(&ints)
}

pub(crate) fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

pub(crate) fn primitive_part(a: &[BigInt]) -> ZPoly {
    let mut g = content(a);
    if g.is_zero() {
        return Vec::new();
    }
    if a.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    let mut out: ZPoly = a.iter().map(|c| c / &g).collect();
    trim(&mut out);
    out
}

pub(crate) fn qderivative(a: &[BigRational]) -> QPoly {
    let mut out: QPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    trim(&mut out);
    out
}

/// Element of Q(t) as `num/den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: QPoly,
    den: QPoly,
}

impl RatFn {
    pub fn new(num: QPoly, den: QPoly) -> Option<Self> {
        let mut num = num;
        let mut den = den;
        trim(&mut num);
        trim(&mut den);
        if den.is_empty() {
            return None;
        }
        if num.is_empty() {
            return Some(Self::zero());
        }
        let g = qgcd(&num, &den);
        if g.len() > 1 {
            num = qdivrem(&num, &g).0;
            den = qdivrem(&den, &g).0;
        }
        let lc = den.last().unwrap().recip();
        Some(RatFn { num: pscale(&num, &lc), den: pscale(&den, &lc) })
    }

    pub fn zero() -> Self {
        RatFn { num: Vec::new(), den: vec![BigRational::one()] }
    }

    pub fn from_poly(num: QPoly) -> Self {
        let mut num = num;
        trim(&mut num);
        RatFn { num, den: vec![BigRational::one()] }
    }

    pub fn num(&self) -> &[BigRational] {
        &self.num
    }

    pub fn den(&self) -> &[BigRational] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.len() == 1
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(padd(&self.num, &o.num), self.den.clone()).unwrap();
        }
        Self::new(
            padd(&pmul(&self.num, &o.den), &pmul(&o.num, &self.den)),
            pmul(&self.den, &o.den),
        )
        .unwrap()
    }

    pub fn neg(&self) -> Self {
        RatFn { num: pneg(&self.num), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_polynomial() && o.is_polynomial() {
            return Self::from_poly(pmul(&self.num, &o.num));
        }
        Self::new(pmul(&self.num, &o.num), pmul(&self.den, &o.den)).unwrap()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Self::new(self.den.clone(), self.num.clone())
        }
    }

    /// Value at `t = c`, or `None` when the denominator vanishes there.
    pub fn eval(&self, c: &BigRational) -> Option<BigRational> {
        let d = peval(&self.den, c);
        if d.is_zero() {
            None
        } else {
            Some(peval(&self.num, c) / d)
        }
    }
}
