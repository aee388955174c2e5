//! Univariate polynomials over a [`Ring`], coefficients constant term first.

use num_bigint::BigUint;
use num_traits::Zero;

use super::matrix::Matrix;
use super::ring::{Ring, Scalar};

pub type Poly = Vec<Scalar>;

pub fn trim(ring: &Ring, a: &mut Poly) {
    while a.last().is_some_and(|c| ring.is_zero(c)) {
        a.pop();
    }
}

pub fn degree(a: &[Scalar]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn constant(ring: &Ring, c: Scalar) -> Poly {
    let mut v = vec![c];
    trim(ring, &mut v);
    v
}

/// `x − c`
pub fn linear(ring: &Ring, c: &Scalar) -> Poly {
    vec![ring.neg(c), ring.one()]
}

pub fn add(ring: &Ring, a: &[Scalar], b: &[Scalar]) -> Poly {
    let n = a.len().max(b.len());
    let zero = ring.zero();
    let mut out: Poly = (0..n).map(|i| ring.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero))).collect();
    trim(ring, &mut out);
    out
}

pub fn sub(ring: &Ring, a: &[Scalar], b: &[Scalar]) -> Poly {
    let n = a.len().max(b.len());
    let zero = ring.zero();
    let mut out: Poly = (0..n).map(|i| ring.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero))).collect();
    trim(ring, &mut out);
    out
}

pub fn scale(ring: &Ring, a: &[Scalar], c: &Scalar) -> Poly {
    let mut out: Poly = a.iter().map(|x| ring.mul(x, c)).collect();
    trim(ring, &mut out);
    out
}

pub fn mul(ring: &Ring, a: &[Scalar], b: &[Scalar]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ring.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if ring.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
        }
    }
    trim(ring, &mut out);
    out
}

/// Division with remainder over a field; `b` nonzero.
pub fn divrem(ring: &Ring, a: &[Scalar], b: &[Scalar]) -> (Poly, Poly) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = ring.inv(&b[db]).expect("leading coefficient must be a unit");
    let mut rem = a.to_vec();
    trim(ring, &mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![ring.zero(); rem.len() - db];
    while rem.len() > db {
        let shift = rem.len() - 1 - db;
        let c = ring.mul(rem.last().unwrap(), &lead_inv);
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] = ring.sub(&rem[shift + j], &ring.mul(&c, bj));
        }
        quot[shift] = c;
        rem.pop();
        trim(ring, &mut rem);
    }
    trim(ring, &mut quot);
    (quot, rem)
}

pub fn rem(ring: &Ring, a: &[Scalar], b: &[Scalar]) -> Poly {
    divrem(ring, a, b).1
}

pub fn monic(ring: &Ring, a: &[Scalar]) -> Poly {
    match a.last() {
        None => Vec::new(),
        Some(lc) => scale(ring, a, &ring.inv(lc).expect("field coefficient")),
    }
}

pub fn gcd(ring: &Ring, a: &[Scalar], b: &[Scalar]) -> Poly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(ring, &mut x);
    trim(ring, &mut y);
    while !y.is_empty() {
        let r = rem(ring, &x, &y);
        x = std::mem::replace(&mut y, r);
    }
    monic(ring, &x)
}

pub fn derivative(ring: &Ring, a: &[Scalar]) -> Poly {
    let mut out: Poly = a.iter().enumerate().skip(1).map(|(i, c)| ring.mul(c, &ring.from_i64(i as i64))).collect();
    trim(ring, &mut out);
    out
}

pub fn eval(ring: &Ring, a: &[Scalar], x: &Scalar) -> Scalar {
    a.iter().rev().fold(ring.zero(), |acc, c| ring.add(&ring.mul(&acc, x), c))
}

/// `f(m)` by Horner's rule.
pub fn eval_matrix(f: &[Scalar], m: &Matrix) -> Matrix {
    let ring = m.ring();
    let n = m.rows();
    let mut acc = Matrix::zeros(ring, n, n);
    for c in f.iter().rev() {
        acc = acc.mul(m).add(&Matrix::identity(ring, n).scale(c));
    }
    acc
}

pub fn mulmod(ring: &Ring, a: &[Scalar], b: &[Scalar], m: &[Scalar]) -> Poly {
    rem(ring, &mul(ring, a, b), m)
}

pub fn powmod(ring: &Ring, base: &[Scalar], e: &BigUint, m: &[Scalar]) -> Poly {
    let mut acc = rem(ring, &[ring.one()], m);
    if e.is_zero() {
        return acc;
    }
    let b = rem(ring, base, m);
    for i in (0..e.bits()).rev() {
        acc = mulmod(ring, &acc, &acc, m);
        if e.bit(i) {
            acc = mulmod(ring, &acc, &b, m);
        }
    }
    acc
}

/// Human-readable form in the variable `x`.
pub fn to_string(a: &[Scalar]) -> String {
    if a.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (e, c) in a.iter().enumerate().rev() {
        let s = c.to_string();
        if s == "0" {
            continue;
        }
        let compound = s[1..].contains(['+', '-', '/']) || s.starts_with('(');
        let (neg, mag) = match s.strip_prefix('-') {
            Some(rest) if !compound => (true, rest.to_string()),
            _ => (false, if compound { format!("({s})") } else { s.clone() }),
        };
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let term = match (mag.as_str(), e) {
            (m, 0) => m.to_string(),
            ("1", 1) => "x".into(),
            ("1", e) => format!("x^{e}"),
            (m, 1) => format!("{m}*x"),
            (m, e) => format!("{m}*x^{e}"),
        };
        out.push_str(&term);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}
