//! Cohomology of finite matrix groups with coefficients in a module.
//!
//! Cochains are inhomogeneous: `Cⁿ = Maps(Gⁿ, M)`, stored as vectors indexed
//! by `(tuple, coordinate)` with the first group element most significant.
//! The differential is
//!
//! ```text
//! (dⁿf)(g₁,…,gₙ₊₁) = g₁·f(g₂,…,gₙ₊₁)
//!                  + Σᵢ₌₁ⁿ (−1)ⁱ f(g₁,…,gᵢgᵢ₊₁,…,gₙ₊₁)
//!                  + (−1)ⁿ⁺¹ f(g₁,…,gₙ)
//! ```
//!
//! and `dᵢ = dim ker dⁱ − rank dⁱ⁻¹`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::dense::{self, DenseField, PrimeField, RingField};
use crate::algebra::{Matrix, Ring, Scalar};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::meataxe::{self, MeataxeConfig, StatusTag};
use crate::rep::{Representation, Word};

pub const DEFAULT_GROUP_BOUND: usize = 64;
/// Largest dense coboundary matrix, in entries.
pub const MAX_ENTRIES: u64 = 80_000_000;

/// Multiplication table of a finite matrix group.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    ring: Ring,
    elements: Vec<Matrix>,
    words: Vec<Word>,
    mult: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    generators: Vec<usize>,
}

impl FiniteGroupTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Elements in discovery order; index 0 is the identity.
    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    /// A word in the generators evaluating to each element.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }
}

/// Enumerate the group generated by the representation's matrices.
pub fn close_group(rep: &Representation, bound: usize, exec: Exec) -> Result<FiniteGroupTable> {
    let ring = rep.ring().clone();
    if !ring.is_finite() {
        return Err(Error::NotAField(format!("group closure needs a finite field, got {ring}")));
    }
    let gens = rep.generators();
    let mut elements = vec![Matrix::identity(&ring, rep.dim())];
    let mut words = vec![Word::empty()];
    let mut index: HashMap<Matrix, usize> = HashMap::from([(elements[0].clone(), 0)]);
    let mut next = 0;
    while next < elements.len() {
        for (j, g) in gens.iter().enumerate() {
            let h = g.mul(&elements[next]);
            if index.contains_key(&h) {
                continue;
            }
            if elements.len() == bound {
                return Err(Error::GroupTooLarge { bound });
            }
            index.insert(h.clone(), elements.len());
            elements.push(h);
            words.push(Word::generator(j).concat(&words[next]));
        }
        next += 1;
    }
    let n = elements.len();
    let mult: Vec<Vec<usize>> =
        exec.map_range(n, |a| (0..n).map(|b| index[&elements[a].mul(&elements[b])]).collect());
    let inverse = (0..n).map(|a| (0..n).find(|&b| mult[a][b] == 0).expect("finite group")).collect();
    let generators = gens.iter().map(|g| index[g]).collect();
    Ok(FiniteGroupTable { ring, elements, words, mult, inverse, generators })
}

/// The inhomogeneous cochain complex of a finite group with coefficients in
/// a module given by matrices for the same generators.
pub struct BarComplex<'a> {
    table: &'a FiniteGroupTable,
    field: Ring,
    m: usize,
    action: Vec<Matrix>,
}

impl<'a> BarComplex<'a> {
    pub fn new(table: &'a FiniteGroupTable, module: &Representation) -> Result<Self> {
        let field = module.ring().clone();
        if !field.is_field() {
            return Err(Error::NotAField(field.to_string()));
        }
        if module.generators().len() != table.generators.len() {
            return Err(Error::ModuleMismatch(format!(
                "module has {} generators, group has {}",
                module.generators().len(),
                table.generators.len()
            )));
        }
        let action: Vec<Matrix> = table.words.iter().map(|w| module.evaluate(w)).collect();
        let n = table.order();
        for a in 0..n {
            for b in 0..n {
                if action[a].mul(&action[b]) != action[table.mult[a][b]] {
                    return Err(Error::ModuleMismatch("module matrices do not define a group action".into()));
                }
            }
        }
        Ok(BarComplex { table, field, m: module.dim(), action })
    }

    pub fn field(&self) -> &Ring {
        &self.field
    }

    /// `dim Cⁿ`.
    pub fn cochain_dim(&self, n: usize) -> usize {
        self.table.order().pow(n as u32) * self.m
    }

    fn tuple(&self, mut index: usize, len: usize) -> Vec<usize> {
        let g = self.table.order();
        let mut t = vec![0; len];
        for slot in t.iter_mut().rev() {
            *slot = index % g;
            index /= g;
        }
        t
    }

    fn tuple_index(&self, t: &[usize]) -> usize {
        let g = self.table.order();
        t.iter().fold(0, |acc, &x| acc * g + x)
    }

    /// Nonzero entries `(column, coefficient)` of row `row` of `dⁿ`.
    fn row_terms(&self, n: usize, row: usize) -> Vec<(usize, Scalar)> {
        let k = &self.field;
        let m = self.m;
        let (tuple_idx, r) = (row / m, row % m);
        let t = self.tuple(tuple_idx, n + 1);
        let mut terms = Vec::with_capacity(m + n + 1);
        let rest = self.tuple_index(&t[1..]);
        let g1 = &self.action[t[0]];
        for c in 0..m {
            let a = g1.get(r, c);
            if !k.is_zero(a) {
                terms.push((rest * m + c, a.clone()));
            }
        }
        for i in 1..=n {
            let mut merged = t[..i - 1].to_vec();
            merged.push(self.table.mult[t[i - 1]][t[i]]);
            merged.extend_from_slice(&t[i + 1..]);
            let sign = if i % 2 == 0 { k.one() } else { k.neg(&k.one()) };
            terms.push((self.tuple_index(&merged) * m + r, sign));
        }
        let sign = if (n + 1).is_multiple_of(2) { k.one() } else { k.neg(&k.one()) };
        terms.push((self.tuple_index(&t[..n]) * m + r, sign));
        terms
    }

    /// `dⁿ f` evaluated from the formula.
    pub fn coboundary(&self, n: usize, f: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(f.len(), self.cochain_dim(n), "cochain of the wrong degree");
        let k = &self.field;
        (0..self.cochain_dim(n + 1))
            .map(|row| {
                self.row_terms(n, row).iter().fold(k.zero(), |acc, (c, a)| k.add(&acc, &k.mul(a, &f[*c])))
            })
            .collect()
    }

    /// `dⁿ` as an explicit matrix (small cases).
    pub fn coboundary_matrix(&self, n: usize) -> Matrix {
        let k = &self.field;
        let (rows, cols) = (self.cochain_dim(n + 1), self.cochain_dim(n));
        let mut out = Matrix::zeros(k, rows, cols);
        for row in 0..rows {
            for (c, a) in self.row_terms(n, row) {
                let v = k.add(out.get(row, c), &a);
                out.set(row, c, v);
            }
        }
        out
    }

    fn rank_with<F: DenseField>(&self, field: &F, n: usize, exec: Exec) -> usize {
        let cols = self.cochain_dim(n);
        let rows = exec.map_range(self.cochain_dim(n + 1), |row| {
            let mut dense_row = vec![field.zero(); cols];
            for (c, a) in self.row_terms(n, row) {
                dense_row[c] = field.add(&dense_row[c], &field.lift(&a));
            }
            dense_row
        });
        dense::rank(field, rows, exec)
    }

    /// `rank dⁿ`.
    pub fn rank(&self, n: usize, exec: Exec) -> Result<usize> {
        let entries = self.cochain_dim(n + 1) as u64 * self.cochain_dim(n) as u64;
        if entries > MAX_ENTRIES {
            return Err(Error::SizeBound(format!("d^{n} would have {entries} dense entries")));
        }
        Ok(match &self.field {
            Ring::Prime(p) => self.rank_with(&PrimeField(*p), n, exec),
            other => self.rank_with(&RingField(other.clone()), n, exec),
        })
    }

    /// Whether `dⁿ⁺¹ ∘ dⁿ` vanishes on every basis cochain of `Cⁿ`.
    pub fn is_complex_at(&self, n: usize) -> bool {
        let k = &self.field;
        (0..self.cochain_dim(n)).all(|j| {
            let mut e = vec![k.zero(); self.cochain_dim(n)];
            e[j] = k.one();
            self.coboundary(n + 1, &self.coboundary(n, &e)).iter().all(|a| k.is_zero(a))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyDims {
    pub d0: usize,
    pub d1: usize,
    pub d2: usize,
}

/// `dim Hⁱ(G, M)` for `i = 0, 1, 2`.
pub fn cohomology_dims(table: &FiniteGroupTable, module: &Representation, exec: Exec) -> Result<CohomologyDims> {
    let bar = BarComplex::new(table, module)?;
    let r0 = bar.rank(0, exec)?;
    let r1 = bar.rank(1, exec)?;
    let r2 = bar.rank(2, exec)?;
    Ok(CohomologyDims {
        d0: bar.cochain_dim(0) - r0,
        d1: bar.cochain_dim(1) - r1 - r0,
        d2: bar.cochain_dim(2) - r2 - r1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub field: String,
    pub dim: usize,
    pub group_order: usize,
    pub schur_dim: usize,
    pub d0: usize,
    pub d1: usize,
    pub d2: usize,
    pub unobstructed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub predicted_ring: Option<String>,
    pub meataxe: StatusTag,
    pub irreducible_deformation: bool,
}

fn power_series_ring(vars: usize) -> String {
    if vars == 0 {
        return "Λ".into();
    }
    let xs: Vec<String> = (1..=vars).map(|i| format!("x_{i}")).collect();
    format!("Λ[[{}]]", xs.join(","))
}

/// Commutant dimension, `H^i(G, ad ρ̄)` and the deformation verdicts.
pub fn obstruction_report(rep: &Representation, cfg: &MeataxeConfig, exec: Exec) -> Result<ObstructionReport> {
    let table = close_group(rep, DEFAULT_GROUP_BOUND, exec)?;
    let dims = cohomology_dims(&table, &rep.adjoint()?, exec)?;
    let schur_dim = meataxe::endo_dim(rep, exec);
    let status = meataxe::is_irreducible(rep, cfg).status.tag();
    let unobstructed = dims.d2 == 0;
    let predicted_ring = (unobstructed && schur_dim == 1).then(|| power_series_ring(dims.d1));
    Ok(ObstructionReport {
        field: rep.ring().to_string(),
        dim: rep.dim(),
        group_order: table.order(),
        schur_dim,
        d0: dims.d0,
        d1: dims.d1,
        d2: dims.d2,
        unobstructed,
        irreducible_deformation: predicted_ring.is_some() && status == StatusTag::Irreducible,
        predicted_ring,
        meataxe: status,
    })
}
