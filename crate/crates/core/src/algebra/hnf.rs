//! Hermite and Smith normal forms over Z.
//!
//! The Hermite form is column-style: `m · U = H` with `U` unimodular and `H`
//! lower triangular in column-echelon shape. Pivots are positive, entries
//! right of a pivot are zero and entries left of a pivot in the pivot row lie
//! in `[0, pivot)`. That makes `H` a canonical basis of the column lattice
//! (zero columns trail when the rank is deficient).

use num_bigint::BigInt;
use num_integer::{ExtendedGcd, Integer};
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::ring::{Ring, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Hnf {
    pub h: Matrix,
    pub transform: Matrix,
    pub rank: usize,
}

#[derive(Clone, Debug)]
pub struct Snf {
    pub d: Matrix,
    pub left: Matrix,
    pub right: Matrix,
}

/// Integer rows of a matrix over Z, or over Q with integral entries.
pub fn integer_rows(m: &Matrix) -> Result<Vec<Vec<BigInt>>> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|a| match a {
                    Scalar::Int(x) => Ok(x.clone()),
                    Scalar::Rat(x) if x.is_integer() => Ok(x.to_integer()),
                    other => Err(Error::Integrality(format!("{other} in a matrix over {}", m.ring()))),
                })
                .collect()
        })
        .collect()
}

pub fn matrix_from_int_rows(rows: &[Vec<BigInt>], ncols: usize) -> Matrix {
    Matrix::from_fn(&Ring::Integers, rows.len(), ncols, |i, j| Scalar::Int(rows[i][j].clone()))
}

fn identity_cols(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|j| (0..n).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn combine(a: &[BigInt], ca: &BigInt, b: &[BigInt], cb: &BigInt) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| ca * x + cb * y).collect()
}

/// Column HNF on integer columns; returns `(H columns, U columns, rank)`.
pub(crate) fn hnf_columns(mut a: Vec<Vec<BigInt>>, nrows: usize) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, usize) {
    let ncols = a.len();
    let mut u = identity_cols(ncols);
    let mut pc = 0;
    for r in 0..nrows {
        if pc == ncols {
            break;
        }
        for j in pc + 1..ncols {
            if a[j][r].is_zero() {
                continue;
            }
            if a[pc][r].is_zero() {
                a.swap(pc, j);
                u.swap(pc, j);
                continue;
            }
            let ExtendedGcd { gcd, x, y, .. } = a[pc][r].extended_gcd(&a[j][r]);
            let ap = &a[pc][r] / &gcd;
            let bj = &a[j][r] / &gcd;
            let nbj = -bj;
            let new_pc = combine(&a[pc], &x, &a[j], &y);
            let new_j = combine(&a[pc], &nbj, &a[j], &ap);
            a[pc] = new_pc;
            a[j] = new_j;
            let new_upc = combine(&u[pc], &x, &u[j], &y);
            let new_uj = combine(&u[pc], &nbj, &u[j], &ap);
            u[pc] = new_upc;
            u[j] = new_uj;
        }
        if a[pc][r].is_zero() {
            continue;
        }
        if a[pc][r].is_negative() {
            a[pc].iter_mut().for_each(|x| *x = -x.clone());
            u[pc].iter_mut().for_each(|x| *x = -x.clone());
        }
        let piv = a[pc][r].clone();
        for j in 0..pc {
            let q = a[j][r].div_floor(&piv);
            if q.is_zero() {
                continue;
            }
            let nq = -q;
            a[j] = combine(&a[j], &BigInt::one(), &a[pc], &nq);
            u[j] = combine(&u[j], &BigInt::one(), &u[pc], &nq);
        }
        pc += 1;
    }
    (a, u, pc)
}

pub fn hnf(m: &Matrix) -> Result<Hnf> {
    let rows = integer_rows(m)?;
    let (nr, nc) = (m.rows(), m.cols());
    let cols: Vec<Vec<BigInt>> = (0..nc).map(|j| (0..nr).map(|i| rows[i][j].clone()).collect()).collect();
    let (h, u, rank) = hnf_columns(cols, nr);
    let hm = Matrix::from_fn(&Ring::Integers, nr, nc, |i, j| Scalar::Int(h[j][i].clone()));
    let um = Matrix::from_fn(&Ring::Integers, nc, nc, |i, j| Scalar::Int(u[j][i].clone()));
    Ok(Hnf { h: hm, transform: um, rank })
}

/// Z-basis (as columns) of the integer kernel `{v ∈ Z^n : m·v = 0}`.
pub fn integer_kernel(m: &Matrix) -> Result<Vec<Vec<BigInt>>> {
    let rows = integer_rows(m)?;
    let (nr, nc) = (m.rows(), m.cols());
    let cols: Vec<Vec<BigInt>> = (0..nc).map(|j| (0..nr).map(|i| rows[i][j].clone()).collect()).collect();
    let (_, u, rank) = hnf_columns(cols, nr);
    Ok(u[rank..].to_vec())
}

pub fn snf(m: &Matrix) -> Result<Snf> {
    let mut a = integer_rows(m)?;
    let (nr, nc) = (m.rows(), m.cols());
    let mut left = identity_cols(nr); // rows of L
    let mut right = identity_cols(nc); // columns of R
    let neg = |v: &mut Vec<BigInt>| v.iter_mut().for_each(|x| *x = -x.clone());

    let mut t = 0;
    while t < nr.min(nc) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let best = (t..nr)
            .flat_map(|i| (t..nc).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        left.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        right.swap(t, bj);

        loop {
            let piv = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&piv);
                let nq = -q;
                a[i] = combine(&a[i], &BigInt::one(), &a[t], &nq);
                left[i] = combine(&left[i], &BigInt::one(), &left[t], &nq);
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..nc {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&piv);
                let nq = -q;
                for row in a.iter_mut() {
                    let v = &row[j] + &nq * &row[t];
                    row[j] = v;
                }
                right[j] = combine(&right[j], &BigInt::one(), &right[t], &nq);
                clean &= a[t][j].is_zero();
            }
            if !clean {
                // move the smallest remainder in row/column t onto the diagonal
                let mut best = (t, t);
                for i in t + 1..nr {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..nc {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                    left.swap(t, best.0);
                } else if best.1 != t {
                    for row in a.iter_mut() {
                        row.swap(t, best.1);
                    }
                    right.swap(t, best.1);
                }
                continue;
            }
            // divisibility: pull a non-divisible row into row t
            let bad = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !a[i][j].mod_floor(&piv).is_zero()));
            match bad {
                Some(i) => {
                    a[t] = combine(&a[t], &BigInt::one(), &a[i], &BigInt::one());
                    left[t] = combine(&left[t], &BigInt::one(), &left[i], &BigInt::one());
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            neg(&mut a[t]);
            neg(&mut left[t]);
        }
        t += 1;
    }
    let d = matrix_from_int_rows(&a, nc);
    let l = matrix_from_int_rows(&left, nr);
    let r = Matrix::from_fn(&Ring::Integers, nc, nc, |i, j| Scalar::Int(right[j][i].clone()));
    Ok(Snf { d, left: l, right: r })
}
