//! Dense matrices over a [`Ring`].

use super::poly::{self, Poly};
use super::ring::{Ring, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(ring: Ring, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::Shape(format!("{rows}x{cols} matrix with {} entries", data.len())));
        }
        if let Some(bad) = data.iter().find(|a| !ring.contains(a)) {
            return Err(Error::InvalidRepresentation(format!("entry {bad} does not belong to {ring}")));
        }
        Ok(Matrix { ring, rows, cols, data })
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(ring.clone(), r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(ring: &Ring, rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&x| ring.from_i64(x)).collect()).collect();
        Self::from_rows(ring, rows).expect("well-formed literal")
    }

    pub fn parse_rows(ring: &Ring, rows: &[Vec<String>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(ring, rows)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|a| a.to_string()).collect()).collect()
    }

    pub fn from_fn(ring: &Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { ring: ring.clone(), rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(ring: &Ring, rows: usize, cols: &[Vec<Scalar>]) -> Self {
        Self::from_fn(ring, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        Matrix { ring: ring.clone(), rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        Self::from_fn(ring, n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert!(self.ring.contains(&v));
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(&self.ring, self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| self.ring.is_zero(a))
    }

    /// Product; panics on incompatible shapes or rings.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        assert_eq!(self.ring, other.ring, "matrix product ring mismatch");
        let r = &self.ring;
        let mut out = Matrix::zeros(r, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if r.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = r.add(&out.data[idx], &r.mul(a, b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let r = &self.ring;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !r.is_zero(a) && !r.is_zero(b))
                    .fold(r.zero(), |acc, (a, b)| r.add(&acc, &r.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.ring.add(a, b)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.ring.sub(a, b)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| self.ring.mul(a, c)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(self.ring.zero(), |acc, i| self.ring.add(&acc, self.get(i, i)))
    }

    /// Entrywise canonical map into `target`.
    pub fn change_ring(&self, target: &Ring) -> Result<Matrix> {
        if *target == self.ring {
            return Ok(self.clone());
        }
        let data = self.data.iter().map(|a| target.embed(a, &self.ring)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { ring: target.clone(), rows: self.rows, cols: self.cols, data })
    }

    /// Entrywise map with a caller-supplied function into `target`.
    pub fn map_entries(&self, target: &Ring, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Matrix> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Matrix::new(target.clone(), self.rows, self.cols, data)
    }

    /// Pull back from the fraction field; `None` if an entry is not in `target`.
    pub fn retract(&self, target: &Ring) -> Option<Matrix> {
        let data = self.data.iter().map(|a| target.retract(a)).collect::<Option<Vec<_>>>()?;
        Some(Matrix { ring: target.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn over_fraction_field(&self) -> Matrix {
        self.change_ring(&self.ring.fraction_field()).expect("fraction field embedding")
    }

    fn require_field(&self) -> Result<()> {
        if self.ring.is_field() {
            Ok(())
        } else {
            Err(Error::NotAField(self.ring.to_string()))
        }
    }

    /// Reduced row echelon form and pivot columns (field entries).
    pub fn rref(&self) -> Result<(Matrix, Vec<usize>)> {
        self.require_field()?;
        let r = &self.ring;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !r.is_zero(m.get(i, col))) else { continue };
            m.swap_rows(row, p);
            let inv = r.inv(m.get(row, col)).unwrap();
            for j in col..m.cols {
                let v = r.mul(m.get(row, j), &inv);
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row || r.is_zero(m.get(i, col)) {
                    continue;
                }
                let factor = m.get(i, col).clone();
                for j in col..m.cols {
                    let v = r.sub(m.get(i, j), &r.mul(&factor, m.get(row, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Ok((m, pivots))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Rank over the fraction field.
    pub fn rank(&self) -> usize {
        self.over_fraction_field().rref().expect("field").1.len()
    }

    /// Basis of the right null space `{v : m·v = 0}` (field entries).
    pub fn kernel_basis(&self) -> Result<Vec<Vec<Scalar>>> {
        let (red, pivots) = self.rref()?;
        let r = &self.ring;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        Ok(free
            .iter()
            .map(|&f| {
                let mut v = vec![r.zero(); self.cols];
                v[f] = r.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = r.neg(red.get(i, f));
                }
                v
            })
            .collect())
    }

    /// Determinant, computed over the fraction field and pulled back.
    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of non-square matrix".into()));
        }
        let k = self.ring.fraction_field();
        let mut m = self.over_fraction_field();
        let n = m.rows;
        let mut det = k.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !k.is_zero(m.get(i, col))) else {
                return Ok(self.ring.zero());
            };
            if p != col {
                m.swap_rows(p, col);
                det = k.neg(&det);
            }
            let pivot = m.get(col, col).clone();
            det = k.mul(&det, &pivot);
            let inv = k.inv(&pivot).unwrap();
            for i in col + 1..n {
                if k.is_zero(m.get(i, col)) {
                    continue;
                }
                let factor = k.mul(m.get(i, col), &inv);
                for j in col..n {
                    let v = k.sub(m.get(i, j), &k.mul(&factor, m.get(col, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(self.ring.retract(&det).expect("determinant of a ring matrix lies in the ring"))
    }

    /// Inverse over the fraction field.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let k = self.ring.fraction_field();
        let a = self.over_fraction_field();
        let aug = Matrix::from_fn(&k, n, 2 * n, |i, j| {
            if j < n {
                a.get(i, j).clone()
            } else if j - n == i {
                k.one()
            } else {
                k.zero()
            }
        });
        let (red, pivots) = aug.rref()?;
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(Matrix::from_fn(&k, n, n, |i, j| red.get(i, j + n).clone()))
    }

    /// Inverse with entries in the original ring, if it exists.
    pub fn inverse_in_ring(&self) -> Option<Matrix> {
        self.inverse().ok()?.retract(&self.ring)
    }

    /// Monic characteristic polynomial `det(x·I − m)`, constant term first.
    ///
    /// Similarity-reduces to upper Hessenberg form and then runs the usual
    /// three-term recurrence on leading principal minors.
    pub fn char_poly(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::Shape(format!("characteristic polynomial of {}x{} matrix", self.rows, self.cols)));
        }
        self.require_field()?;
        let r = self.ring.clone();
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(i) = (j + 1..n).find(|&i| !r.is_zero(h.get(i, j))) else { continue };
            if i != j + 1 {
                h.swap_rows(i, j + 1);
                h.swap_cols(i, j + 1);
            }
            let inv = r.inv(h.get(j + 1, j)).unwrap();
            for k in j + 2..n {
                if r.is_zero(h.get(k, j)) {
                    continue;
                }
                let u = r.mul(h.get(k, j), &inv);
                // row_k -= u * row_{j+1}
                for c in 0..n {
                    let v = r.sub(h.get(k, c), &r.mul(&u, h.get(j + 1, c)));
                    h.set(k, c, v);
                }
                // col_{j+1} += u * col_k
                for rr in 0..n {
                    let v = r.add(h.get(rr, j + 1), &r.mul(&u, h.get(rr, k)));
                    h.set(rr, j + 1, v);
                }
            }
        }
        // p[m] = char poly of the leading m×m block
        let mut p: Vec<Poly> = vec![vec![r.one()]];
        for m in 1..=n {
            let x_minus = vec![r.neg(h.get(m - 1, m - 1)), r.one()];
            let mut next = poly::mul(&r, &x_minus, &p[m - 1]);
            let mut prod = r.one();
            for i in (1..m).rev() {
                prod = r.mul(&prod, h.get(i, i - 1));
                let coef = r.mul(h.get(i - 1, m - 1), &prod);
                next = poly::sub(&r, &next, &poly::scale(&r, &p[i - 1], &coef));
            }
            p.push(next);
        }
        Ok(p.pop().unwrap())
    }

    /// Block diagonal `diag(self, other)`.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let r = &self.ring;
        Matrix::from_fn(r, self.rows + other.rows, self.cols + other.cols, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => other.get(i - self.rows, j - self.cols).clone(),
                _ => r.zero(),
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::to_string;

    #[test]
    fn char_poly_examples() {
        let f5 = Ring::Prime(5);
        assert_eq!(to_string(&Matrix::identity(&f5, 2).char_poly().unwrap()), "x^2+3*x+1"); // (x-1)^2
        let q = Ring::Rationals;
        let s = Matrix::from_i64_rows(&q, &[&[0, -1], &[1, -1]]);
        assert_eq!(to_string(&s.char_poly().unwrap()), "x^2+x+1");
        let d = Matrix::from_i64_rows(&q, &[&[2, 0], &[0, -3]]);
        assert_eq!(to_string(&d.char_poly().unwrap()), "x^2+x-6");
        let bad = Matrix::zeros(&q, 2, 3);
        assert!(matches!(bad.char_poly(), Err(Error::Shape(_))));
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(&Ring::Rationals, 3).kernel_basis().unwrap().is_empty());
        let f3 = Ring::Prime(3);
        let k = Matrix::zeros(&f3, 2, 2).kernel_basis().unwrap();
        assert_eq!(k, vec![vec![f3.one(), f3.zero()], vec![f3.zero(), f3.one()]]);
        let q = Ring::Rationals;
        let m = Matrix::from_i64_rows(&q, &[&[1, 1], &[2, 2]]);
        let k = m.kernel_basis().unwrap();
        assert_eq!(k.len(), 1);
        // proportional to (1, -1)
        assert_eq!(q.add(&k[0][0], &k[0][1]), q.zero());
        assert!(m.mul_vec(&k[0]).iter().all(|a| q.is_zero(a)));
    }

    #[test]
    fn det_and_inverse() {
        let z = Ring::Integers;
        let m = Matrix::from_i64_rows(&z, &[&[2, 4], &[4, 2]]);
        assert_eq!(m.det().unwrap(), z.from_i64(-12));
        assert!(m.inverse_in_ring().is_none());
        let u = Matrix::from_i64_rows(&z, &[&[2, 1], &[1, 1]]);
        let ui = u.inverse_in_ring().unwrap();
        assert!(u.mul(&ui).is_identity());
        assert!(matches!(Matrix::zeros(&z, 2, 2).inverse(), Err(Error::Singular)));
    }

    #[test]
    fn hessenberg_needs_row_swaps() {
        // zero subdiagonal entry forces a pivot search
        let q = Ring::Rationals;
        let m = Matrix::from_i64_rows(&q, &[&[1, 2, 3], &[0, 4, 5], &[6, 0, 7]]);
        let p = m.char_poly().unwrap();
        // det(xI - m) = x^3 - 12x^2 + 21x - 16 (cofactor expansion)
        assert_eq!(to_string(&p), "x^3-12*x^2+21*x-16");
    }
}
