//! Exhaustive invariant-subspace enumeration over small finite fields.
//!
//! Every subspace of F_q^d has a unique reduced echelon basis, fixed by its
//! pivot columns and the free entries right of each pivot. All of them are
//! generated and filtered by invariance. Membership is tested directly on
//! the echelon rows, sharing no code with the MeatAxe.

use num_traits::ToPrimitive;

use crate::algebra::subspace::Subspace;
use crate::algebra::{Matrix, Ring, Scalar};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::rep::Representation;

/// Largest admissible `q^d`.
pub const MAX_SPACE: u64 = 1 << 14;
/// Largest number of candidate subspaces examined.
pub const MAX_CANDIDATES: u64 = 4_000_000;

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in 0..n {
        for mut rest in combinations(n - first - 1, k - 1) {
            rest.iter_mut().for_each(|x| *x += first + 1);
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Free coordinates `(row, col)` of an echelon basis with these pivots.
fn free_positions(pivots: &[usize], d: usize) -> Vec<(usize, usize)> {
    pivots
        .iter()
        .enumerate()
        .flat_map(|(i, &p)| (p + 1..d).filter(|c| !pivots.contains(c)).map(move |c| (i, c)))
        .collect()
}

fn candidate_count(q: u64, d: usize) -> Option<u64> {
    let mut total: u64 = 0;
    for k in 0..=d {
        for pivots in combinations(d, k) {
            let free = free_positions(&pivots, d).len() as u32;
            total = total.checked_add(q.checked_pow(free)?)?;
        }
    }
    Some(total)
}

/// `v ∈ span(rows)` for reduced echelon rows with the given pivots.
fn in_span(ring: &Ring, rows: &[Vec<Scalar>], pivots: &[usize], v: &[Scalar]) -> bool {
    let mut w = v.to_vec();
    for (row, &p) in rows.iter().zip(pivots) {
        if ring.is_zero(&w[p]) {
            continue;
        }
        let c = w[p].clone();
        for (x, y) in w.iter_mut().zip(row) {
            *x = ring.sub(x, &ring.mul(&c, y));
        }
    }
    w.iter().all(|x| ring.is_zero(x))
}

fn is_invariant(ring: &Ring, rows: &[Vec<Scalar>], pivots: &[usize], gens: &[Matrix]) -> bool {
    gens.iter().all(|g| rows.iter().all(|v| in_span(ring, rows, pivots, &g.mul_vec(v))))
}

/// Every invariant subspace, zero and full space included, sorted by
/// dimension and then by echelon basis.
pub fn invariant_subspaces(rep: &Representation, exec: Exec) -> Result<Vec<Subspace>> {
    let ring = rep.ring().clone();
    if !ring.is_finite() {
        return Err(Error::NotAField(format!("oracle needs a finite field, got {ring}")));
    }
    let q = ring.order().and_then(|o| o.to_u64()).expect("finite field order");
    let d = rep.dim();
    let space = q.checked_pow(d as u32).filter(|&s| s <= MAX_SPACE);
    if space.is_none() {
        return Err(Error::SizeBound(format!("q^d = {q}^{d} exceeds {MAX_SPACE}")));
    }
    match candidate_count(q, d) {
        Some(n) if n <= MAX_CANDIDATES => {}
        _ => return Err(Error::SizeBound(format!("F_{q}^{d} has more than {MAX_CANDIDATES} subspaces"))),
    }
    let gens = rep.generators();
    let mut found: Vec<Vec<Vec<Scalar>>> = Vec::new();
    for k in 0..=d {
        for pivots in combinations(d, k) {
            let free = free_positions(&pivots, d);
            let count = q.pow(free.len() as u32) as usize;
            let hits = exec.map_range(count, |index| {
                let mut rows: Vec<Vec<Scalar>> = pivots
                    .iter()
                    .map(|&p| (0..d).map(|c| if c == p { ring.one() } else { ring.zero() }).collect())
                    .collect();
                let mut rest = index as u64;
                for &(i, c) in &free {
                    rows[i][c] = ring.element_from_index(rest % q);
                    rest /= q;
                }
                is_invariant(&ring, &rows, &pivots, gens).then_some(rows)
            });
            found.extend(hits.into_iter().flatten());
        }
    }
    let key = |rows: &Vec<Vec<Scalar>>| -> (usize, Vec<u64>) {
        (rows.len(), rows.iter().flatten().map(|a| ring.element_index(a)).collect())
    };
    found.sort_by_key(key);
    Ok(found.iter().map(|rows| Subspace::spanned_by(&ring, d, rows)).collect())
}

pub fn count_invariant(rep: &Representation, exec: Exec) -> Result<usize> {
    invariant_subspaces(rep, exec).map(|v| v.len())
}

/// Irreducible iff only the zero and full subspaces are invariant.
pub fn is_irreducible(rep: &Representation, exec: Exec) -> Result<bool> {
    count_invariant(rep, exec).map(|n| n == 2)
}
