//! Free G-stable lattices over Z and Z[t], prime ideals, and reduction.
//!
//! Lattice bases are stored as d×d matrices over Q whose columns span the
//! lattice. A Z[t]-lattice is always of the form `L ⊗ Z[t]` for a Z-lattice
//! `L` with a constant basis, so the same storage serves both rings.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::hnf::{hnf_columns, integer_kernel, matrix_from_int_rows};
use crate::algebra::primes::require_prime;
use crate::algebra::qpoly;
use crate::algebra::ring::mod_u64;
use crate::algebra::{Matrix, Ring, Scalar};
use crate::error::{Error, Result};
use crate::rep::Representation;

/// Default number of saturation rounds.
pub const DEFAULT_ROUNDS: usize = 64;

pub type QVec = Vec<BigRational>;

fn rat(a: &Scalar) -> BigRational {
    match a {
        Scalar::Rat(x) => x.clone(),
        Scalar::Int(x) => BigRational::from_integer(x.clone()),
        other => panic!("expected a rational entry, got {other}"),
    }
}

fn q_matrix_from_columns(cols: &[QVec], d: usize) -> Matrix {
    Matrix::from_fn(&Ring::Rationals, d, cols.len(), |i, j| Scalar::Rat(cols[j][i].clone()))
}

fn q_columns(m: &Matrix) -> Vec<QVec> {
    (0..m.cols()).map(|j| m.column(j).iter().map(rat).collect()).collect()
}

/// Integer columns `D·cols` with `D` the least common denominator.
fn clear_denominators(cols: &[QVec]) -> (Vec<Vec<BigInt>>, BigInt) {
    let d = cols.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = cols.iter().map(|c| c.iter().map(|x| (x * &d).to_integer()).collect()).collect();
    (ints, d)
}

/// Canonical basis columns of the Z-span of `cols` in Q^d, and the rank.
fn canonical_span(cols: &[QVec], d: usize) -> (Vec<QVec>, usize) {
    let (ints, den) = clear_denominators(cols);
    let (h, _, rank) = hnf_columns(ints, d);
    let basis = h[..rank].iter().map(|c| c.iter().map(|x| BigRational::new(x.clone(), den.clone())).collect()).collect();
    (basis, rank)
}

/// A free lattice of full rank in K^d.
#[derive(Clone, Debug)]
pub struct LatticeBasis {
    ring: Ring,
    basis: Matrix,
    canonical: bool,
}

impl PartialEq for LatticeBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.canonical_form().basis == other.canonical_form().basis
    }
}

impl Eq for LatticeBasis {}

impl LatticeBasis {
    fn check_ring(ring: &Ring) -> Result<()> {
        match ring {
            Ring::Integers | Ring::IntPoly => Ok(()),
            other => Err(Error::UnsupportedLattice(format!("lattices over {other} are not supported"))),
        }
    }

    pub fn standard(ring: &Ring, d: usize) -> Result<Self> {
        Self::check_ring(ring)?;
        Ok(LatticeBasis { ring: ring.clone(), basis: Matrix::identity(&Ring::Rationals, d), canonical: true })
    }

    /// Lattice spanned by the given vectors of Q^d; they must span Q^d.
    pub fn span(ring: &Ring, d: usize, vectors: &[QVec]) -> Result<Self> {
        Self::check_ring(ring)?;
        let (cols, rank) = canonical_span(vectors, d);
        if rank != d {
            return Err(Error::UnsupportedLattice(format!("vectors span a rank {rank} lattice in dimension {d}")));
        }
        Ok(LatticeBasis { ring: ring.clone(), basis: q_matrix_from_columns(&cols, d), canonical: true })
    }

    /// Lattice whose basis is given by the columns of an invertible matrix
    /// over Q (kept as given, not canonicalized).
    pub fn from_basis(ring: &Ring, basis: Matrix) -> Result<Self> {
        Self::check_ring(ring)?;
        let basis = basis.change_ring(&Ring::Rationals)?;
        if !basis.is_square() || basis.rank() != basis.rows() {
            return Err(Error::Singular);
        }
        Ok(LatticeBasis { ring: ring.clone(), basis, canonical: false })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Basis vectors as columns, over Q.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn columns(&self) -> Vec<QVec> {
        q_columns(&self.basis)
    }

    /// Same lattice with the HNF basis.
    pub fn canonical_form(&self) -> LatticeBasis {
        if self.canonical {
            return self.clone();
        }
        let d = self.dim();
        let (cols, _) = canonical_span(&self.columns(), d);
        LatticeBasis { ring: self.ring.clone(), basis: q_matrix_from_columns(&cols, d), canonical: true }
    }

    pub fn is_standard(&self) -> bool {
        self.canonical_form().basis.is_identity()
    }

    /// Coordinates of `v` in the basis.
    pub fn coordinates(&self, v: &[BigRational]) -> QVec {
        let inv = self.basis.inverse().expect("lattice basis is invertible");
        let v: Vec<Scalar> = v.iter().map(|x| Scalar::Rat(x.clone())).collect();
        inv.mul_vec(&v).iter().map(rat).collect()
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.coordinates(v).iter().all(BigRational::is_integer)
    }

    pub fn is_sublattice_of(&self, other: &LatticeBasis) -> bool {
        self.columns().iter().all(|c| other.contains(c))
    }

    /// `n·L`.
    pub fn scale(&self, n: &BigInt) -> Result<LatticeBasis> {
        if n.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let n = BigRational::from_integer(n.abs());
        let cols: Vec<QVec> = self.columns().iter().map(|c| c.iter().map(|x| x * &n).collect()).collect();
        LatticeBasis::span(&self.ring, self.dim(), &cols)
    }

    /// `L + M`.
    pub fn sum(&self, other: &LatticeBasis) -> Result<LatticeBasis> {
        let mut cols = self.columns();
        cols.extend(other.columns());
        LatticeBasis::span(&self.ring, self.dim(), &cols)
    }

    /// `L ∩ M` from the integer kernel of `[A | −B]`.
    pub fn intersect(&self, other: &LatticeBasis) -> Result<LatticeBasis> {
        let d = self.dim();
        let mut cols = self.columns();
        cols.extend(other.columns().into_iter().map(|c| c.into_iter().map(|x| -x).collect()));
        let (ints, _) = clear_denominators(&cols);
        let rows: Vec<Vec<BigInt>> = (0..d).map(|i| ints.iter().map(|c| c[i].clone()).collect()).collect();
        let kernel = integer_kernel(&matrix_from_int_rows(&rows, 2 * d))?;
        let a = self.columns();
        let images: Vec<QVec> = kernel
            .iter()
            .map(|k| {
                (0..d)
                    .map(|i| (0..d).fold(BigRational::zero(), |acc, j| acc + &a[j][i] * BigRational::from_integer(k[j].clone())))
                    .collect()
            })
            .collect();
        LatticeBasis::span(&self.ring, d, &images)
    }

    /// Rows of the basis as strings, for certificates.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.basis.to_strings()
    }
}

/// `(⋂ (nᵢ))·L`, which over Z is `lcm(nᵢ)·L`.
pub fn ideal_mult(lat: &LatticeBasis, ideals: &[BigInt]) -> Result<LatticeBasis> {
    if lat.ring() != &Ring::Integers {
        return Err(Error::UnsupportedLattice("ideal products are implemented over Z".into()));
    }
    if ideals.iter().any(Zero::is_zero) {
        return Err(Error::ZeroIdeal);
    }
    let l = ideals.iter().fold(BigInt::one(), |acc, n| acc.lcm(n));
    lat.scale(&l)
}

/// `L ∩ W` for a subspace `W ⊆ Q^d` given by spanning vectors; the result
/// is a Z-basis (columns) of a pure sublattice of `L`.
pub fn pure_sublattice(lat: &LatticeBasis, w: &[QVec]) -> Result<Vec<QVec>> {
    let d = lat.dim();
    let coords: Vec<QVec> = w.iter().map(|v| lat.coordinates(v)).collect();
    let q = Ring::Rationals;
    // rows n with c·n = 0 for every coordinate vector c
    let span = Matrix::from_fn(&q, coords.len(), d, |i, j| Scalar::Rat(coords[i][j].clone()));
    let normals: Vec<QVec> = if coords.is_empty() {
        (0..d).map(|i| (0..d).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()).collect()
    } else {
        span.kernel_basis()?.iter().map(|v| v.iter().map(rat).collect()).collect()
    };
    let points: Vec<Vec<BigInt>> = if normals.is_empty() {
        (0..d).map(|i| (0..d).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
    } else {
        let (ints, _) = clear_denominators(&normals);
        integer_kernel(&matrix_from_int_rows(&ints, d))?
    };
    let a = lat.columns();
    let cols: Vec<QVec> = points
        .iter()
        .map(|x| {
            (0..d)
                .map(|i| (0..d).fold(BigRational::zero(), |acc, j| acc + &a[j][i] * BigRational::from_integer(x[j].clone())))
                .collect()
        })
        .collect();
    if cols.is_empty() {
        return Ok(cols);
    }
    Ok(canonical_span(&cols, d).0)
}

/// Image of a sublattice in `L/pL`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SublatticeImage {
    Zero,
    ProperNonzero,
    Full,
}

/// Classify the image of `M = span(m)` in `L/pL`. `M` may have any rank.
pub fn proper_sublattice_image(lat: &LatticeBasis, m: &[QVec], p: &PrimeSpec) -> Result<SublatticeImage> {
    let PrimeKind::IntegerPrime(prime) = p.kind() else {
        return Err(Error::PrimeRingMismatch { prime: p.to_string(), ring: "Z (integer prime expected)".into() });
    };
    let d = lat.dim();
    let coords: Vec<QVec> = m.iter().map(|v| lat.coordinates(v)).collect();
    if !coords.iter().flatten().all(BigRational::is_integer) {
        return Err(Error::NotSublattice);
    }
    let fp = Ring::Prime(*prime);
    let reduced = Matrix::from_fn(&fp, d, coords.len(), |i, j| Scalar::Fp(mod_u64(&coords[j][i].to_integer(), *prime)));
    Ok(match if coords.is_empty() { 0 } else { reduced.rank() } {
        0 => SublatticeImage::Zero,
        r if r == d => SublatticeImage::Full,
        _ => SublatticeImage::ProperNonzero,
    })
}

/// Which prime ideal of Z or Z[t].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrimeKind {
    Zero,
    /// `(p)` in Z.
    IntegerPrime(u64),
    /// `(t − c)` in Z[t], residue field Q.
    LinearPoly(i64),
    /// `(p, t − c)` in Z[t], residue field F_p.
    MaximalPair(u64, i64),
}

impl PrimeKind {
    fn check(self) -> Result<Self> {
        match self {
            PrimeKind::IntegerPrime(p) | PrimeKind::MaximalPair(p, _) => require_prime(p).map(|_| self),
            _ => Ok(self),
        }
    }
}

fn fmt_linear(c: i64) -> String {
    if c < 0 {
        format!("t+{}", c.unsigned_abs())
    } else {
        format!("t-{c}")
    }
}

impl fmt::Display for PrimeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeKind::Zero => write!(f, "(0)"),
            PrimeKind::IntegerPrime(p) => write!(f, "({p})"),
            PrimeKind::LinearPoly(c) => write!(f, "({})", fmt_linear(*c)),
            PrimeKind::MaximalPair(p, c) => write!(f, "({p},{})", fmt_linear(*c)),
        }
    }
}

fn parse_linear(s: &str) -> Option<i64> {
    let rest = s.strip_prefix('t')?;
    if rest.is_empty() {
        return Some(0);
    }
    if let Some(c) = rest.strip_prefix('-') {
        return c.parse::<i64>().ok();
    }
    rest.strip_prefix('+')?.parse::<i64>().ok().map(|c| -c)
}

impl FromStr for PrimeKind {
    type Err = Error;

    /// `(0)`, `(5)`, `(t-3)`, `(t+1)`, `(t)`, `(2,t-0)`.
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unrecognized prime ideal {text:?}"));
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(&s);
        let kind = match inner.split_once(',') {
            Some((p, lin)) => PrimeKind::MaximalPair(p.parse().map_err(|_| bad())?, parse_linear(lin).ok_or_else(bad)?),
            None if inner == "0" => PrimeKind::Zero,
            None => match parse_linear(inner) {
                Some(c) => PrimeKind::LinearPoly(c),
                None => PrimeKind::IntegerPrime(inner.parse().map_err(|_| bad())?),
            },
        };
        kind.check()
    }
}

/// A prime ideal of the base ring together with its residue field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeSpec {
    ring: Ring,
    kind: PrimeKind,
}

impl PrimeSpec {
    pub fn new(ring: &Ring, kind: PrimeKind) -> Result<Self> {
        let kind = kind.check()?;
        let ok = matches!(
            (ring, kind),
            (Ring::Integers | Ring::IntPoly, PrimeKind::Zero)
                | (Ring::Integers, PrimeKind::IntegerPrime(_))
                | (Ring::IntPoly, PrimeKind::LinearPoly(_) | PrimeKind::MaximalPair(..))
        );
        if !ok {
            return Err(Error::PrimeRingMismatch { prime: kind.to_string(), ring: ring.to_string() });
        }
        Ok(PrimeSpec { ring: ring.clone(), kind })
    }

    pub fn parse(ring: &Ring, text: &str) -> Result<Self> {
        Self::new(ring, text.parse()?)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn kind(&self) -> &PrimeKind {
        &self.kind
    }

    pub fn residue_field(&self) -> Ring {
        match self.kind {
            PrimeKind::Zero => self.ring.fraction_field(),
            PrimeKind::IntegerPrime(p) | PrimeKind::MaximalPair(p, _) => Ring::Prime(p),
            PrimeKind::LinearPoly(_) => Ring::Rationals,
        }
    }

    /// The residue map `R → k_p`.
    pub fn residue(&self, a: &Scalar) -> Result<Scalar> {
        let eval = |v: &[BigInt], c: i64| qpoly::peval(v, &BigInt::from(c));
        Ok(match (&self.kind, a) {
            (PrimeKind::Zero, _) => self.residue_field().embed(a, &self.ring)?,
            (PrimeKind::IntegerPrime(p), Scalar::Int(x)) => Scalar::Fp(mod_u64(x, *p)),
            (PrimeKind::LinearPoly(c), Scalar::IntPoly(v)) => Scalar::Rat(BigRational::from_integer(eval(v, *c))),
            (PrimeKind::MaximalPair(p, c), Scalar::IntPoly(v)) => Scalar::Fp(mod_u64(&eval(v, *c), *p)),
            _ => return Err(Error::PrimeRingMismatch { prime: self.to_string(), ring: self.ring.to_string() }),
        })
    }

    pub fn reduce_matrix(&self, m: &Matrix) -> Result<Matrix> {
        m.map_entries(&self.residue_field(), |a| self.residue(a))
    }
}

impl fmt::Display for PrimeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.kind.fmt(f)
    }
}

/// The result of [`saturate`].
#[derive(Clone, Debug)]
pub struct Saturation {
    pub lattice: LatticeBasis,
    /// The representation in the lattice basis, over Z or Z[t].
    pub int_rep: Representation,
    pub rounds: usize,
}

/// Base ring of integral models for representations over `ring`.
pub fn integral_base(ring: &Ring) -> Result<Ring> {
    match ring {
        Ring::Integers | Ring::Rationals => Ok(Ring::Integers),
        Ring::IntPoly | Ring::RationalFunctions => Ok(Ring::IntPoly),
        other => Err(Error::UnsupportedLattice(format!("no integral model over {other}"))),
    }
}

/// Rational coefficient matrices `C_k` with `m = Σ t^k C_k`; `None` unless
/// every entry is a polynomial.
fn coefficient_matrices(m: &Matrix) -> Option<Vec<Matrix>> {
    let d = m.rows();
    let polys: Vec<&[BigRational]> = m
        .entries()
        .iter()
        .map(|a| match a {
            Scalar::RatFn(f) if f.is_polynomial() => Some(f.num()),
            _ => None,
        })
        .collect::<Option<_>>()?;
    let deg = polys.iter().map(|p| p.len()).max().unwrap_or(0);
    Some(
        (0..deg)
            .map(|k| {
                Matrix::from_fn(&Ring::Rationals, d, d, |i, j| {
                    Scalar::Rat(polys[i * d + j].get(k).cloned().unwrap_or_else(BigRational::zero))
                })
            })
            .collect(),
    )
}

/// Smallest lattice containing Z^d that is stable under the generators and
/// their inverses, and the representation written in its basis.
///
/// Over Q(t) only constant-basis lattices `L ⊗ Z[t]` are searched: every
/// generator and inverse must have polynomial entries, and `L` is saturated
/// under each of their t-coefficient matrices.
pub fn saturate(rep: &Representation, rounds: usize) -> Result<Saturation> {
    let base = integral_base(rep.ring())?;
    let k = rep.ring().fraction_field();
    let d = rep.dim();
    let ops: Vec<Matrix> = match base {
        Ring::Integers => rep.generators_and_inverses_over_k(),
        _ => {
            let mut ops = Vec::new();
            for m in rep.generators_and_inverses_over_k() {
                let cs = coefficient_matrices(&m).ok_or_else(|| {
                    Error::UnsupportedLattice("a generator or inverse has non-polynomial entries in t".into())
                })?;
                ops.extend(cs);
            }
            ops
        }
    };
    let mut lat = LatticeBasis::standard(&base, d)?;
    let mut used = 0;
    loop {
        let cols = lat.columns();
        let mut next = cols.clone();
        for op in &ops {
            for c in &cols {
                let v: Vec<Scalar> = c.iter().map(|x| Scalar::Rat(x.clone())).collect();
                next.push(op.mul_vec(&v).iter().map(rat).collect());
            }
        }
        let grown = LatticeBasis::span(&base, d, &next)?;
        if grown == lat {
            break;
        }
        used += 1;
        if used > rounds {
            return Err(Error::BudgetExceeded { rounds });
        }
        lat = grown;
    }
    let b = lat.basis().change_ring(&k)?;
    let int_rep = rep
        .conjugate(&b.inverse()?)?
        .retract(&base)
        .ok_or_else(|| Error::Integrality("saturated lattice does not integralize the generators".into()))?;
    Ok(Saturation { lattice: lat, int_rep, rounds: used })
}

/// `ρ̄_{L,p}`: the residue map applied entrywise to a representation written
/// in a basis of `lat`.
pub fn reduce(int_rep: &Representation, lat: &LatticeBasis, p: &PrimeSpec) -> Result<Representation> {
    if int_rep.ring() != lat.ring() || p.ring() != lat.ring() {
        return Err(Error::PrimeRingMismatch { prime: p.to_string(), ring: int_rep.ring().to_string() });
    }
    if int_rep.dim() != lat.dim() {
        return Err(Error::Shape(format!("representation of dimension {} on a rank {} lattice", int_rep.dim(), lat.dim())));
    }
    let k = p.residue_field();
    let mut gens = Vec::with_capacity(int_rep.generators().len());
    for (i, g) in int_rep.generators().iter().enumerate() {
        let r = p.reduce_matrix(g)?;
        if k.is_zero(&r.det()?) {
            return Err(Error::BadPrime { prime: p.to_string(), generator: i + 1 });
        }
        gens.push(r);
    }
    Representation::new(&k, gens, int_rep.relations().to_vec(), int_rep.label().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn prime_spec_strings() {
        for s in ["(0)", "(5)", "(t-3)", "(t+1)", "(2,t-0)", "(3,t+2)"] {
            assert_eq!(s.parse::<PrimeKind>().unwrap().to_string(), s);
        }
        assert_eq!("(t)".parse::<PrimeKind>().unwrap(), PrimeKind::LinearPoly(0));
        assert!("(4)".parse::<PrimeKind>().is_err());
        assert!(PrimeSpec::parse(&Ring::Integers, "(t-1)").is_err());
        assert!(PrimeSpec::parse(&Ring::IntPoly, "(5)").is_err());
    }

    #[test]
    fn intersection_and_sum() {
        let z = Ring::Integers;
        let l = LatticeBasis::standard(&z, 2).unwrap();
        let a = l.scale(&2.into()).unwrap();
        let b = l.scale(&3.into()).unwrap();
        assert_eq!(a.intersect(&b).unwrap(), l.scale(&6.into()).unwrap());
        assert_eq!(a.sum(&b).unwrap(), l);
    }

    #[test]
    fn pure_sublattice_of_line() {
        let l = LatticeBasis::standard(&Ring::Integers, 2).unwrap();
        let m = pure_sublattice(&l, &[vec![q(1, 2), q(1, 1)]]).unwrap();
        assert_eq!(m, vec![vec![q(1, 1), q(2, 1)]]);
    }

    #[test]
    fn image_classes() {
        let l = LatticeBasis::standard(&Ring::Integers, 2).unwrap();
        let p = PrimeSpec::parse(&Ring::Integers, "(3)").unwrap();
        let m = [vec![q(1, 1), q(2, 1)], vec![q(0, 1), q(3, 1)]];
        assert_eq!(proper_sublattice_image(&l, &m, &p).unwrap(), SublatticeImage::ProperNonzero);
        assert_eq!(proper_sublattice_image(&l, &l.columns(), &p).unwrap(), SublatticeImage::Full);
        let three = l.scale(&3.into()).unwrap();
        assert_eq!(proper_sublattice_image(&l, &three.columns(), &p).unwrap(), SublatticeImage::Zero);
        assert!(matches!(proper_sublattice_image(&l, &[vec![q(1, 2), q(0, 1)]], &p), Err(Error::NotSublattice)));
    }

    #[test]
    fn half_power_diverges() {
        let qr = Ring::Rationals;
        let g = Matrix::from_rows(&qr, vec![vec![qr.parse("1/2").unwrap()]]).unwrap();
        let rep = Representation::from_generators(&qr, vec![g]).unwrap();
        assert!(matches!(saturate(&rep, 10), Err(Error::BudgetExceeded { rounds: 10 })));
    }
}
