//! Deterministic primality for word-sized integers.

use crate::error::{Error, Result};

/// Miller–Rabin with bases 2..=17 is exact below 341_550_071_728_321;
/// we stop a little earlier.
pub const PRIMALITY_BOUND: u64 = 330_000_000_000_000;

const BASES: [u64; 7] = [2, 3, 5, 7, 11, 13, 17];

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> Result<bool> {
    if n >= PRIMALITY_BOUND {
        return Err(Error::PrimeOutOfRange(n));
    }
    if n < 2 {
        return Ok(false);
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return Ok(n == b);
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// Errors unless `p` is a verified prime.
pub fn require_prime(p: u64) -> Result<()> {
    if is_prime(p)? {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Ascending primes starting at 2.
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| is_prime(n).unwrap_or(false))
}

/// Distinct prime divisors by trial division (small inputs only).
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            out.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}
