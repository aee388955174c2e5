//! Dense Gaussian elimination for large rank computations.
//!
//! [`rank`] works over any [`DenseField`]. Prime fields get an unboxed `u64`
//! representation; other fields go through [`Ring`] scalars. Elimination
//! below the pivot is row-parallel under [`Exec::Parallel`].

use super::matrix::Matrix;
use super::primes::{inv_mod, mul_mod};
use super::ring::{Ring, Scalar};
use crate::exec::Exec;

pub trait DenseField: Sync {
    type Elem: Clone + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn lift(&self, a: &Scalar) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// `a - c·b`
    fn sub_mul(&self, a: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

/// Below this modulus products fit in a `u64`.
const SMALL: u64 = 1 << 32;

/// F_p with elements in `[0, p)`.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField(pub u64);

impl DenseField for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    fn lift(&self, a: &Scalar) -> u64 {
        match a {
            Scalar::Fp(x) => *x,
            other => panic!("expected GF({}) entry, got {other}", self.0),
        }
    }

    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.0).expect("nonzero element of a prime field")
    }

    fn sub_mul(&self, a: &u64, c: &u64, b: &u64) -> u64 {
        let p = self.0;
        let cb = if p < SMALL { c * b % p } else { mul_mod(*c, *b, p) };
        if *a >= cb {
            a - cb
        } else {
            a + (p - cb)
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        if self.0 < SMALL {
            a * b % self.0
        } else {
            mul_mod(*a, *b, self.0)
        }
    }
}

/// Any field implemented by [`Ring`].
#[derive(Clone, Debug)]
pub struct RingField(pub Ring);

impl DenseField for RingField {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        self.0.zero()
    }

    fn is_zero(&self, a: &Scalar) -> bool {
        self.0.is_zero(a)
    }

    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.0.add(a, b)
    }

    fn lift(&self, a: &Scalar) -> Scalar {
        a.clone()
    }

    fn inv(&self, a: &Scalar) -> Scalar {
        self.0.inv(a).expect("nonzero field element")
    }

    fn sub_mul(&self, a: &Scalar, c: &Scalar, b: &Scalar) -> Scalar {
        self.0.sub(a, &self.0.mul(c, b))
    }

    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.0.mul(a, b)
    }
}

/// Rank of the matrix with the given rows. Consumes the rows.
pub fn rank<F: DenseField>(field: &F, mut rows: Vec<Vec<F::Elem>>, exec: Exec) -> usize {
    let Some(ncols) = rows.first().map(Vec::len) else { return 0 };
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][col])) else { continue };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][col]);
        let pivot: Vec<F::Elem> = rows[r].iter().map(|x| field.mul(x, &inv)).collect();
        exec.for_each_mut(&mut rows[r + 1..], |row| {
            if field.is_zero(&row[col]) {
                return;
            }
            let c = row[col].clone();
            for j in col..ncols {
                if !field.is_zero(&pivot[j]) {
                    row[j] = field.sub_mul(&row[j], &c, &pivot[j]);
                }
            }
        });
        r += 1;
    }
    r
}

/// Rank of a matrix over a field, dispatching to the fastest representation.
pub fn matrix_rank(m: &Matrix, exec: Exec) -> usize {
    let ring = m.ring().fraction_field();
    match ring {
        Ring::Prime(p) => {
            let f = PrimeField(p);
            let rows = (0..m.rows()).map(|i| m.row(i).iter().map(|a| f.lift(a)).collect()).collect();
            rank(&f, rows, exec)
        }
        _ => {
            let m = m.over_fraction_field();
            let rows = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
            rank(&RingField(ring), rows, exec)
        }
    }
}
