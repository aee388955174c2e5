//! Incrementally built subspaces of k^n, kept in reduced echelon form.

use super::matrix::Matrix;
use super::ring::{Ring, Scalar};

#[derive(Clone, Debug)]
pub struct Subspace {
    ring: Ring,
    ambient: usize,
    /// Fully reduced rows: each pivot column is zero in every other row.
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(ring: &Ring, ambient: usize) -> Self {
        assert!(ring.is_field(), "subspaces live over a field");
        Subspace { ring: ring.clone(), ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn spanned_by(ring: &Ring, ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        let mut s = Self::new(ring, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Residue of `v` after clearing the pivot coordinates.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = &self.ring;
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if r.is_zero(&w[pc]) {
                continue;
            }
            let c = w[pc].clone();
            for (wi, ri) in w.iter_mut().zip(row) {
                if !r.is_zero(ri) {
                    *wi = r.sub(wi, &r.mul(&c, ri));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|a| self.ring.is_zero(a))
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let r = self.ring.clone();
        let w = self.reduce(v);
        let Some(pc) = w.iter().position(|a| !r.is_zero(a)) else { return false };
        let inv = r.inv(&w[pc]).unwrap();
        let w: Vec<Scalar> = w.iter().map(|a| r.mul(a, &inv)).collect();
        for row in self.rows.iter_mut() {
            if r.is_zero(&row[pc]) {
                continue;
            }
            let c = row[pc].clone();
            for (x, y) in row.iter_mut().zip(&w) {
                if !r.is_zero(y) {
                    *x = r.sub(x, &r.mul(&c, y));
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, w);
        true
    }

    /// Canonical basis: reduced row echelon rows ordered by pivot.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Closure of the span under the given matrices (acting on column vectors).
    pub fn spin(&mut self, gens: &[Matrix]) {
        let mut queue: Vec<Vec<Scalar>> = self.rows.clone();
        while let Some(v) = queue.pop() {
            for g in gens {
                let image = g.mul_vec(&v);
                if self.insert(&image) {
                    queue.push(image);
                }
            }
        }
    }

    /// Whether `g·W ⊆ W` for every matrix.
    pub fn is_invariant(&self, gens: &[Matrix]) -> bool {
        gens.iter().all(|g| self.rows.iter().all(|v| self.contains(&g.mul_vec(v))))
    }

    /// `{x : y·x = 0 for all y ∈ self}` — the annihilator in the dual pairing.
    pub fn annihilator(&self) -> Subspace {
        let r = &self.ring;
        if self.rows.is_empty() {
            let mut all = Subspace::new(r, self.ambient);
            for i in 0..self.ambient {
                let mut e = vec![r.zero(); self.ambient];
                e[i] = r.one();
                all.insert(&e);
            }
            return all;
        }
        let m = Matrix::from_rows(r, self.rows.clone()).expect("rectangular");
        let ker = m.kernel_basis().expect("field");
        Subspace::spanned_by(r, self.ambient, &ker)
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.ambient == other.ambient && self.rows == other.rows
    }
}

impl Eq for Subspace {}
