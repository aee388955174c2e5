//! Polynomial factorization for the MeatAxe.
//!
//! * Finite fields: squarefree split, distinct-degree and Cantor–Zassenhaus
//!   equal-degree factorization. Complete.
//! * Q: Zassenhaus (factor mod a good prime, multifactor Hensel lifting,
//!   recombination by trial division). Complete.
//! * Q(t): only what can be proved cheaply. A monic polynomial whose
//!   specialization at some `t = c` stays irreducible over Q is irreducible
//!   over Q(t); linear factors with constant roots are found the same way.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use super::fp_poly;
use super::poly::{self, Poly};
use super::primes::primes;
use super::qpoly::{self, QPoly, ZPoly};
use super::ring::{mod_u64, Ring, Scalar};

/// Distinct monic irreducible factors, ascending by degree.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub factors: Vec<Poly>,
    /// False when some irreducible factors may be missing (Q(t) only).
    pub complete: bool,
}

pub fn distinct_irreducible_factors<R: Rng + ?Sized>(ring: &Ring, f: &[Scalar], rng: &mut R) -> Factorization {
    let mut out = match ring {
        Ring::Prime(_) | Ring::Extension(_) => Factorization { factors: finite_field_factors(ring, f, rng), complete: true },
        Ring::Rationals => Factorization { factors: rational_factors(f), complete: true },
        Ring::RationalFunctions => rational_function_factors(f),
        other => panic!("factorization requested over non-field {other}"),
    };
    out.factors.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| poly::to_string(a).cmp(&poly::to_string(b))));
    out.factors.dedup();
    out
}

// ---------------------------------------------------------------------------
// finite fields
// ---------------------------------------------------------------------------

fn pth_root_poly(ring: &Ring, f: &[Scalar]) -> Poly {
    let p = ring.characteristic() as usize;
    let mut out: Poly = f.iter().step_by(p).map(|c| ring.pth_root(c)).collect();
    poly::trim(ring, &mut out);
    out
}

/// Squarefree polynomials whose irreducible factors are exactly those of `f`.
fn squarefree_parts(ring: &Ring, f: &[Scalar]) -> Vec<Poly> {
    let f = poly::monic(ring, f);
    if f.len() <= 1 {
        return Vec::new();
    }
    let d = poly::derivative(ring, &f);
    if d.is_empty() {
        return squarefree_parts(ring, &pth_root_poly(ring, &f));
    }
    let g = poly::gcd(ring, &f, &d);
    let w = poly::divrem(ring, &f, &g).0;
    let mut out = Vec::new();
    if w.len() > 1 {
        // w = f / gcd(f, f') is squarefree
        out.push(w);
    }
    out.extend(squarefree_parts(ring, &g));
    out
}

fn distinct_degree(ring: &Ring, f: &[Scalar]) -> Vec<(Poly, usize)> {
    let q = ring.order().unwrap();
    let x = vec![ring.zero(), ring.one()];
    let mut f = f.to_vec();
    let mut h = poly::rem(ring, &x, &f);
    let mut out = Vec::new();
    let mut i = 1;
    while f.len() > 2 * i {
        h = poly::powmod(ring, &h, &q, &f);
        let g = poly::gcd(ring, &poly::sub(ring, &h, &x), &f);
        if g.len() > 1 {
            f = poly::divrem(ring, &f, &g).0;
            h = poly::rem(ring, &h, &f);
            out.push((g, i));
        }
        i += 1;
    }
    if f.len() > 1 {
        let d = f.len() - 1;
        out.push((f, d));
    }
    out
}

fn equal_degree<R: Rng + ?Sized>(ring: &Ring, g: &[Scalar], d: usize, rng: &mut R) -> Vec<Poly> {
    let n = g.len() - 1;
    if n == d {
        return vec![g.to_vec()];
    }
    let q = ring.order().unwrap();
    let p = ring.characteristic();
    loop {
        let mut a: Poly = (0..n).map(|_| ring.random(rng)).collect();
        poly::trim(ring, &mut a);
        if a.len() < 2 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^{2^{k d − 1}}
            let bits = q.bits() as usize - 1;
            let mut acc = a.clone();
            let mut term = a.clone();
            for _ in 1..bits * d {
                term = poly::mulmod(ring, &term, &term, g);
                acc = poly::add(ring, &acc, &term);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            poly::sub(ring, &poly::powmod(ring, &a, &e, g), &[ring.one()])
        };
        let c = poly::gcd(ring, &b, g);
        if c.len() > 1 && c.len() < g.len() {
            let other = poly::divrem(ring, g, &c).0;
            let mut out = equal_degree(ring, &c, d, rng);
            out.extend(equal_degree(ring, &other, d, rng));
            return out;
        }
    }
}

pub fn finite_field_factors<R: Rng + ?Sized>(ring: &Ring, f: &[Scalar], rng: &mut R) -> Vec<Poly> {
    let mut out = Vec::new();
    for part in squarefree_parts(ring, f) {
        for (g, d) in distinct_degree(ring, &part) {
            out.extend(equal_degree(ring, &g, d, rng));
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| poly::to_string(a).cmp(&poly::to_string(b))));
    out.dedup();
    out
}

// ---------------------------------------------------------------------------
// Q via Zassenhaus
// ---------------------------------------------------------------------------

fn as_qpoly(f: &[Scalar]) -> QPoly {
    f.iter()
        .map(|c| match c {
            Scalar::Rat(x) => x.clone(),
            other => panic!("expected rational coefficient, got {other}"),
        })
        .collect()
}

fn from_qpoly(f: &[BigRational]) -> Poly {
    f.iter().map(|c| Scalar::Rat(c.clone())).collect()
}

/// Distinct monic irreducible factors over Q.
pub fn rational_factors(f: &[Scalar]) -> Vec<Poly> {
    let f = as_qpoly(f);
    if f.len() <= 1 {
        return Vec::new();
    }
    let d = qpoly::qderivative(&f);
    let g = qpoly::qgcd(&f, &d);
    let sqf = qpoly::qdivrem(&f, &g).0;
    let prim = qpoly::primitive_integer(&sqf);
    let mut out: Vec<Poly> = zassenhaus(&prim)
        .into_iter()
        .map(|z| from_qpoly(&qpoly::qmonic(&qpoly::to_qpoly(&z))))
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| poly::to_string(a).cmp(&poly::to_string(b))));
    out
}

fn zpoly_mod(f: &[BigInt], p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = f.iter().map(|c| mod_u64(c, p)).collect();
    fp_poly::trim(&mut v);
    v
}

fn sym_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

fn zmod(f: &[BigInt], m: &BigInt) -> ZPoly {
    let mut v: ZPoly = f.iter().map(|c| c.mod_floor(m)).collect();
    qpoly::trim(&mut v);
    v
}

fn u64_to_z(f: &[u64]) -> ZPoly {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

/// Exact quotient over Z, if `g` divides `f`.
fn zdivide(f: &[BigInt], g: &[BigInt]) -> Option<ZPoly> {
    let (q, r) = qpoly::qdivrem(&qpoly::to_qpoly(f), &qpoly::to_qpoly(g));
    if !r.is_empty() {
        return None;
    }
    qpoly::to_zpoly(&q)
}

/// Lift `f ≡ g0·h0 (mod p)` to `f ≡ g·h (mod p^k)` with `g` monic.
fn hensel_lift(f: &[BigInt], g0: &[u64], h0: &[u64], p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (one, s) = fp_poly::ext_gcd(g0, h0, p);
    debug_assert_eq!(one, vec![1]);
    // s·g0 ≡ 1 (mod h0)  ⇒  t = (1 − s·g0)/h0
    let t = fp_poly::divrem(&fp_poly::sub(&[1], &fp_poly::mul(&s, g0, p), p), h0, p).0;
    let pz = BigInt::from(p);
    let pk = pz.pow(k);
    let lc = f.last().unwrap().mod_floor(&pk);
    let mut g = u64_to_z(g0);
    let mut h = u64_to_z(h0);
    *h.last_mut().unwrap() = lc;
    let mut pj = pz.clone();
    for _ in 1..k {
        let pj1 = &pj * &pz;
        let e = zmod(&qpoly::psub(f, &qpoly::pmul(&g, &h)), &pj1);
        let e: Vec<BigInt> = e.iter().map(|c| c / &pj).collect();
        let e = zpoly_mod(&e, p);
        let (q, r) = fp_poly::divrem(&fp_poly::mul(&e, &t, p), g0, p);
        let dg = r;
        let dh = fp_poly::add(&fp_poly::mul(&e, &s, p), &fp_poly::mul(&q, h0, p), p);
        g = zmod(&qpoly::padd(&g, &qpoly::pscale(&u64_to_z(&dg), &pj)), &pj1);
        h = zmod(&qpoly::padd(&h, &qpoly::pscale(&u64_to_z(&dh), &pj)), &pj1);
        pj = pj1;
    }
    (g, h)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors over Z of a primitive squarefree `f` with positive
/// leading coefficient.
pub(crate) fn zassenhaus(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    let mut rng = Xoshiro256StarStar::seed_from_u64(0x5a55e);
    let (p, modp) = primes()
        .skip(1)
        .find_map(|p| {
            if (&lc % BigInt::from(p)).is_zero() {
                return None;
            }
            let fp = zpoly_mod(f, p);
            let der: Vec<u64> = {
                let mut v: Vec<u64> = fp.iter().enumerate().skip(1).map(|(i, &c)| (c * (i as u64 % p)) % p).collect();
                fp_poly::trim(&mut v);
                v
            };
            (fp_poly::gcd(&fp, &der, p) == vec![1]).then_some((p, fp))
        })
        .expect("a squarefree-preserving prime exists");
    let fp_ring = Ring::Prime(p);
    let fp_scalars: Poly = modp.iter().map(|&c| Scalar::Fp(c)).collect();
    let modular: Vec<Vec<u64>> = finite_field_factors(&fp_ring, &fp_scalars, &mut rng)
        .into_iter()
        .map(|g| g.iter().map(|c| fp_ring.element_index(c)).collect())
        .collect();
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }

    // bound on lc·g/lc(g) for any factor g
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + BigInt::one();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm;
    let pz = BigInt::from(p);
    let mut k = 1u32;
    while pz.pow(k) <= bound {
        k += 1;
    }
    let pk = pz.pow(k);

    // multifactor lift by peeling one factor at a time
    let lc_p = mod_u64(&lc, p);
    let mut lifted: Vec<ZPoly> = Vec::new();
    let mut rest_target: ZPoly = zmod(f, &pk);
    for i in 0..modular.len() - 1 {
        let g0 = &modular[i];
        let mut h0 = vec![lc_p];
        for u in &modular[i + 1..] {
            h0 = fp_poly::mul(&h0, u, p);
        }
        let (g, h) = hensel_lift(&rest_target, g0, &h0, p, k);
        lifted.push(g);
        rest_target = h;
    }
    // last factor: make monic
    let lc_inv = {
        let e = lc.extended_gcd(&pk);
        e.x.mod_floor(&pk)
    };
    lifted.push(zmod(&qpoly::pscale(&rest_target, &lc_inv), &pk));

    let mut remaining = f.to_vec();
    let mut pool = lifted;
    let mut result = Vec::new();
    let mut size = 1;
    while 2 * size <= pool.len() {
        let mut found = None;
        for subset in combinations(pool.len(), size) {
            let lcr = remaining.last().unwrap().clone();
            let mut g: ZPoly = vec![lcr];
            for &i in &subset {
                g = zmod(&qpoly::pmul(&g, &pool[i]), &pk);
            }
            let g: ZPoly = g.iter().map(|c| sym_mod(c, &pk)).collect();
            let g = qpoly::primitive_part(&g);
            if let Some(q) = zdivide(&remaining, &g) {
                found = Some((subset, g, q));
                break;
            }
        }
        match found {
            Some((subset, g, q)) => {
                result.push(g);
                remaining = qpoly::primitive_part(&q);
                pool = pool.into_iter().enumerate().filter(|(i, _)| !subset.contains(i)).map(|(_, u)| u).collect();
            }
            None => size += 1,
        }
    }
    if remaining.len() > 1 {
        result.push(remaining);
    }
    result
}

// ---------------------------------------------------------------------------
// Q(t)
// ---------------------------------------------------------------------------

const SPECIALIZATION_POINTS: [i64; 8] = [0, 1, -1, 2, -2, 3, -3, 5];

fn specialize(f: &[Scalar], c: &BigRational) -> Option<QPoly> {
    f.iter()
        .map(|a| match a {
            Scalar::RatFn(r) => r.eval(c),
            other => panic!("expected Q(t) coefficient, got {other}"),
        })
        .collect()
}

pub fn rational_function_factors(f: &[Scalar]) -> Factorization {
    let k = Ring::RationalFunctions;
    let f = poly::monic(&k, f);
    if f.len() <= 1 {
        return Factorization { factors: Vec::new(), complete: true };
    }
    let sqf = poly::divrem(&k, &f, &poly::gcd(&k, &f, &poly::derivative(&k, &f))).0;
    if sqf.len() == 2 {
        return Factorization { factors: vec![sqf], complete: true };
    }
    let mut linear: Vec<Poly> = Vec::new();
    for c in SPECIALIZATION_POINTS {
        let c = BigRational::from_integer(BigInt::from(c));
        let Some(spec) = specialize(&sqf, &c) else { continue };
        let factors = rational_factors(&from_qpoly(&spec));
        if factors.len() == 1 && factors[0].len() == sqf.len() {
            return Factorization { factors: vec![sqf], complete: true };
        }
        for lf in factors.iter().filter(|g| g.len() == 2) {
            let Scalar::Rat(c0) = &lf[0] else { unreachable!() };
            let root = k.from_rational(&(-c0.clone())).unwrap();
            if k.is_zero(&poly::eval(&k, &sqf, &root)) {
                let cand = poly::linear(&k, &root);
                if !linear.contains(&cand) {
                    linear.push(cand);
                }
            }
        }
    }
    let total: usize = linear.iter().map(|g| g.len() - 1).sum();
    let complete = total == sqf.len() - 1;
    Factorization { factors: linear, complete }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn qp(c: &[i64]) -> Poly {
        c.iter().map(|&x| Ring::Rationals.from_i64(x)).collect()
    }

    fn prod(ring: &Ring, fs: &[Poly]) -> Poly {
        fs.iter().fold(vec![ring.one()], |acc, f| poly::mul(ring, &acc, f))
    }

    #[test]
    fn finite_field_factorization_multiplies_back() {
        let mut rng = Xoshiro256StarStar::seed_from_u64(1);
        for ring in [Ring::Prime(2), Ring::Prime(3), Ring::Prime(5), Ring::galois_field(2, 2).unwrap(), Ring::galois_field(3, 2).unwrap()] {
            for _ in 0..30 {
                let mut f: Poly = (0..7).map(|_| ring.random(&mut rng)).collect();
                f.push(ring.one());
                let fs = finite_field_factors(&ring, &f, &mut rng);
                // radical of f equals the product of the distinct factors
                for g in &fs {
                    assert!(poly::rem(&ring, &f, g).is_empty());
                    assert!(fp_check_irreducible(&ring, g), "{} not irreducible over {ring}", poly::to_string(g));
                }
                let rad = prod(&ring, &fs);
                // every root multiplicity is absorbed: f divides rad^deg(f)
                let mut pw = vec![ring.one()];
                for _ in 0..f.len() {
                    pw = poly::mul(&ring, &pw, &rad);
                }
                assert!(poly::rem(&ring, &pw, &f).is_empty());
            }
        }
    }

    /// Independent check: no factor of degree ≤ deg/2 by exhaustive search
    /// over monic polynomials (tiny fields only).
    fn fp_check_irreducible(ring: &Ring, g: &[Scalar]) -> bool {
        let n = g.len() - 1;
        let q = ring.order().unwrap().to_u64().unwrap();
        for d in 1..=n / 2 {
            let count = q.pow(d as u32);
            for idx in 0..count {
                let mut cand: Poly = Vec::new();
                let mut i = idx;
                for _ in 0..d {
                    cand.push(ring.element_from_index(i % q));
                    i /= q;
                }
                cand.push(ring.one());
                if poly::rem(ring, g, &cand).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn rational_factorization() {
        // (x^2 + x + 1)(x - 2)(3x + 1)^2
        let f = poly::mul(
            &Ring::Rationals,
            &poly::mul(&Ring::Rationals, &qp(&[1, 1, 1]), &qp(&[-2, 1])),
            &poly::mul(&Ring::Rationals, &qp(&[1, 3]), &qp(&[1, 3])),
        );
        let fs = rational_factors(&f);
        let names: Vec<String> = fs.iter().map(|g| poly::to_string(g)).collect();
        assert_eq!(names, vec!["x+(1/3)", "x-2", "x^2+x+1"]);
        // x^4 + 1 is irreducible over Q but splits mod every prime
        assert_eq!(rational_factors(&qp(&[1, 0, 0, 0, 1])).len(), 1);
        // x^4 - 10x^2 + 1 likewise
        assert_eq!(rational_factors(&qp(&[1, 0, -10, 0, 1])).len(), 1);
        // x^6 - 1 = (x-1)(x+1)(x^2+x+1)(x^2-x+1)
        assert_eq!(rational_factors(&qp(&[-1, 0, 0, 0, 0, 0, 1])).len(), 4);
        assert_eq!(rational_factors(&qp(&[2, 0, 1])).len(), 1);
    }

    #[test]
    fn rational_function_specialization() {
        let k = Ring::RationalFunctions;
        let t = k.generator().unwrap();
        // x^2 - t is irreducible over Q(t): specialization at t = 2 gives x^2 - 2
        let f = vec![k.neg(&t), k.zero(), k.one()];
        let r = rational_function_factors(&f);
        assert!(r.complete);
        assert_eq!(r.factors.len(), 1);
        // (x - 1)(x - 2) over Q(t)
        let g: Poly = [2, -3, 1].iter().map(|&c| k.from_i64(c)).collect();
        let r = rational_function_factors(&g);
        assert!(r.complete);
        assert_eq!(r.factors.len(), 2);
    }
}
