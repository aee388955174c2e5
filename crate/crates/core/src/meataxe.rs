//! Holt–Rees MeatAxe with Norton's irreducibility test.
//!
//! Each sample draws a random element `θ = c₀·I + Σ cᵢ·wᵢ` of the matrix
//! algebra, factors its characteristic polynomial, and for every irreducible
//! factor `f` spins a null vector of `f(θ)` under the generators. When
//! `dim ker f(θ) = deg f` and both that spin and the spin of a null vector of
//! `f(θ)ᵀ` under the transposed generators fill the space, the module is
//! irreducible. A proper spin is an invariant subspace directly; a proper
//! dual spin yields one as its annihilator.

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::{Deserialize, Serialize};

use crate::algebra::factor::distinct_irreducible_factors;
use crate::algebra::poly;
use crate::algebra::subspace::Subspace;
use crate::algebra::{dense, Matrix, Ring, Scalar};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::rep::{vector_strings, Representation, Word};

pub const DEFAULT_BUDGET: usize = 200;
const MAX_WORDS: usize = 3;
const MAX_WORD_LEN: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeataxeConfig {
    pub seed: u64,
    pub budget: usize,
}

impl Default for MeataxeConfig {
    fn default() -> Self {
        MeataxeConfig { seed: 0, budget: DEFAULT_BUDGET }
    }
}

/// One factor tried on one sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorAttempt {
    pub factor: String,
    pub nullity: usize,
    pub spin_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dual_spin_dim: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sample {
    pub words: Vec<Word>,
    /// Constant term first, then one coefficient per word.
    pub coefficients: Vec<String>,
    pub factor_degrees: Vec<usize>,
    /// False when the factor list over Q(t) may be partial.
    pub factors_complete: bool,
    pub attempts: Vec<FactorAttempt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub field: String,
    pub seed: u64,
    pub budget: usize,
    pub samples: Vec<Sample>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Irreducible,
    Reducible(Subspace),
    Inconclusive,
}

impl Status {
    pub fn tag(&self) -> StatusTag {
        match self {
            Status::Irreducible => StatusTag::Irreducible,
            Status::Reducible(_) => StatusTag::Reducible,
            Status::Inconclusive => StatusTag::Inconclusive,
        }
    }

    pub fn witness(&self) -> Option<&Subspace> {
        match self {
            Status::Reducible(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StatusTag {
    Irreducible,
    Reducible,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub transcript: Transcript,
}

/// Serializable form of a [`Verdict`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub status: StatusTag,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<Vec<String>>>,
    pub transcript: Transcript,
}

impl Verdict {
    pub fn record(&self) -> VerdictRecord {
        VerdictRecord {
            status: self.status.tag(),
            witness: self.status.witness().map(|w| w.basis().iter().map(|v| vector_strings(v)).collect()),
            transcript: self.transcript.clone(),
        }
    }
}

fn random_coefficient<R: Rng + ?Sized>(ring: &Ring, rng: &mut R) -> Scalar {
    ring.random_nonzero(rng)
}

/// Spin `v` under `gens`.
fn spin_vector(ring: &Ring, d: usize, v: &[Scalar], gens: &[Matrix]) -> Subspace {
    let mut s = Subspace::new(ring, d);
    s.insert(v);
    s.spin(gens);
    s
}

/// Decide irreducibility of the module `k^d` under the generators.
///
/// Representations over Z or Z[t] are read over their fraction field.
pub fn is_irreducible(rep: &Representation, cfg: &MeataxeConfig) -> Verdict {
    let rep = rep.over_fraction_field();
    let ring = rep.ring().clone();
    let d = rep.dim();
    let gens = rep.generators().to_vec();
    let gens_t = rep.transposed_generators();
    let mut transcript = Transcript { field: ring.to_string(), seed: cfg.seed, budget: cfg.budget, samples: Vec::new() };
    if d == 1 {
        return Verdict { status: Status::Irreducible, transcript };
    }
    let mut rng = Xoshiro256StarStar::seed_from_u64(cfg.seed);
    let ngens = gens.len();
    for _ in 0..cfg.budget {
        let nwords = rng.gen_range(1..=MAX_WORDS);
        let words: Vec<Word> = (0..nwords)
            .map(|_| {
                let len = rng.gen_range(1..=MAX_WORD_LEN);
                Word::random(&mut rng, ngens, len, false)
            })
            .collect();
        let c0 = ring.random(&mut rng);
        let cs: Vec<Scalar> = (0..nwords).map(|_| random_coefficient(&ring, &mut rng)).collect();
        let mut theta = Matrix::identity(&ring, d).scale(&c0);
        for (w, c) in words.iter().zip(&cs) {
            theta = theta.add(&rep.evaluate(w).scale(c));
        }
        let chi = theta.char_poly().expect("square matrix over a field");
        let fact = distinct_irreducible_factors(&ring, &chi, &mut rng);
        let mut sample = Sample {
            words,
            coefficients: std::iter::once(&c0).chain(&cs).map(ToString::to_string).collect(),
            factor_degrees: fact.factors.iter().map(|f| f.len() - 1).collect(),
            factors_complete: fact.complete,
            attempts: Vec::new(),
        };
        let mut decided = None;
        for f in &fact.factors {
            let n = poly::eval_matrix(f, &theta);
            let kernel = n.kernel_basis().expect("field");
            let mut attempt =
                FactorAttempt { factor: poly::to_string(f), nullity: kernel.len(), spin_dim: 0, dual_spin_dim: None };
            let Some(v) = kernel.first() else {
                sample.attempts.push(attempt);
                continue;
            };
            let w = spin_vector(&ring, d, v, &gens);
            attempt.spin_dim = w.dim();
            if w.dim() < d {
                sample.attempts.push(attempt);
                decided = Some(Status::Reducible(w));
                break;
            }
            if kernel.len() == f.len() - 1 {
                let dual_kernel = n.transpose().kernel_basis().expect("field");
                let u = spin_vector(&ring, d, &dual_kernel[0], &gens_t);
                attempt.dual_spin_dim = Some(u.dim());
                sample.attempts.push(attempt);
                decided = Some(if u.dim() < d { Status::Reducible(u.annihilator()) } else { Status::Irreducible });
                break;
            }
            sample.attempts.push(attempt);
        }
        transcript.samples.push(sample);
        if let Some(status) = decided {
            if let Status::Reducible(w) = &status {
                assert!(
                    w.dim() > 0 && w.dim() < d && w.is_invariant(&gens),
                    "MeatAxe produced an invalid witness"
                );
            }
            return Verdict { status, transcript };
        }
    }
    Verdict { status: Status::Inconclusive, transcript }
}

/// Matrix of `X ↦ (X·g − g·X)` stacked over the generators, X row-major.
fn commutator_system(rep: &Representation) -> Matrix {
    let ring = rep.ring();
    let d = rep.dim();
    let n = d * d;
    let blocks: Vec<Matrix> = rep
        .generators()
        .iter()
        .map(|g| {
            Matrix::from_fn(ring, n, n, |row, col| {
                let (i, j) = (row / d, row % d);
                let (k, l) = (col / d, col % d);
                // (Xg)_{ij} = Σ_l X_{il} g_{lj};  (gX)_{ij} = Σ_k g_{ik} X_{kj}
                let a = if k == i { g.get(l, j).clone() } else { ring.zero() };
                let b = if l == j { g.get(i, k).clone() } else { ring.zero() };
                ring.sub(&a, &b)
            })
        })
        .collect();
    let rows: Vec<Vec<Scalar>> = blocks.iter().flat_map(|b| (0..b.rows()).map(|i| b.row(i).to_vec())).collect();
    Matrix::from_rows(ring, rows).expect("rectangular")
}

/// `dim_k {X : X·g = g·X for every generator}`.
pub fn endo_dim(rep: &Representation, exec: Exec) -> usize {
    let rep = rep.over_fraction_field();
    let n = rep.dim() * rep.dim();
    n - dense::matrix_rank(&commutator_system(&rep), exec)
}

/// Irreducible with a one-dimensional commutant; finite fields only.
pub fn is_absolutely_irreducible(rep: &Representation, cfg: &MeataxeConfig, exec: Exec) -> Result<bool> {
    if !rep.ring().is_finite() {
        return Err(Error::NotAField(format!("{} is not a finite field", rep.ring())));
    }
    match is_irreducible(rep, cfg).status {
        Status::Irreducible => Ok(endo_dim(rep, exec) == 1),
        Status::Reducible(_) => Ok(false),
        Status::Inconclusive => Err(Error::AbsIrredUndecided),
    }
}
