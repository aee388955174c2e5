#![allow(dead_code)]

use std::path::PathBuf;

use irredcert_core::algebra::{Matrix, Ring, Scalar};
use irredcert_core::lattice::{pure_sublattice, saturate, QVec, Saturation};
use irredcert_core::meataxe::{is_irreducible, MeataxeConfig};
use irredcert_core::Representation;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

pub type TestRng = Xoshiro256StarStar;

pub fn rng(seed: u64) -> TestRng {
    TestRng::seed_from_u64(seed)
}

pub fn reps_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../reps")
}

pub fn load(name: &str) -> Representation {
    let path = reps_dir().join(format!("{name}.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    Representation::from_json(&text).unwrap()
}

/// Every shipped representation file, by stem, in name order.
pub fn corpus() -> Vec<(String, Representation)> {
    let mut names: Vec<String> = std::fs::read_dir(reps_dir())
        .unwrap()
        .filter_map(|e| {
            let path = e.ok()?.path();
            (path.extension()? == "json").then(|| path.file_stem()?.to_str().map(String::from))?
        })
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), load(&n))).collect()
}

pub fn mat(ring: &Ring, rows: &[&[i64]]) -> Matrix {
    Matrix::from_i64_rows(ring, rows)
}

pub fn rep(ring: &Ring, gens: Vec<Matrix>) -> Representation {
    Representation::from_generators(ring, gens).unwrap()
}

/// The standard 2-dimensional representation of S3.
pub fn s3(ring: &Ring) -> Representation {
    rep(ring, vec![mat(ring, &[&[0, -1], &[1, -1]]), mat(ring, &[&[0, 1], &[1, 0]])])
}

/// Permutation matrix sending basis vector `j` to `perm[j]`.
pub fn perm(ring: &Ring, perm: &[usize]) -> Matrix {
    let n = perm.len();
    Matrix::from_fn(ring, n, n, |i, j| if perm[j] == i { ring.one() } else { ring.zero() })
}

pub fn random_matrix<R: Rng>(ring: &Ring, d: usize, lo: i64, hi: i64, rng: &mut R) -> Matrix {
    Matrix::from_fn(ring, d, d, |_, _| match ring {
        Ring::Prime(_) | Ring::Extension(_) => ring.random(rng),
        _ => ring.from_i64(rng.gen_range(lo..=hi)),
    })
}

pub fn random_invertible<R: Rng>(ring: &Ring, d: usize, rng: &mut R) -> Matrix {
    loop {
        let m = random_matrix(ring, d, -3, 3, rng);
        if !ring.is_zero(&m.det().unwrap()) {
            return m;
        }
    }
}

/// Integer matrix with entries in `[-bound, bound]` and determinant ±1.
pub fn random_unimodular<R: Rng>(ring: &Ring, d: usize, bound: i64, rng: &mut R) -> Matrix {
    loop {
        let m = random_matrix(ring, d, -bound, bound, rng);
        let det = m.det().unwrap();
        if ring.is_one(&det) || ring.is_one(&ring.neg(&det)) {
            return m;
        }
    }
}

/// `[[a, c], [0, b]]` with `a` of size `k` and `b` of size `d - k`.
pub fn block_upper(ring: &Ring, a: &Matrix, b: &Matrix, c: &Matrix) -> Matrix {
    let k = a.rows();
    let d = k + b.rows();
    Matrix::from_fn(ring, d, d, |i, j| match (i < k, j < k) {
        (true, true) => a.get(i, j).clone(),
        (true, false) => c.get(i, j - k).clone(),
        (false, true) => ring.zero(),
        (false, false) => b.get(i - k, j - k).clone(),
    })
}

/// Random generator pair in dimension `d`, block upper triangular with a
/// `k`-dimensional invariant coordinate subspace.
pub fn random_block_pair<R: Rng>(ring: &Ring, d: usize, k: usize, rng: &mut R) -> Vec<Matrix> {
    (0..2)
        .map(|_| {
            let a = random_unimodular(ring, k, 2, rng);
            let b = random_unimodular(ring, d - k, 2, rng);
            let c = Matrix::from_fn(ring, k, d - k, |_, _| ring.from_i64(rng.gen_range(-3..=3)));
            block_upper(ring, &a, &b, &c)
        })
        .collect()
}

/// A reducible representation over Q written in a scrambled basis.
pub fn scrambled_reducible<R: Rng>(d: usize, k: usize, rng: &mut R) -> Representation {
    let q = Ring::Rationals;
    let base = rep(&q, random_block_pair(&q, d, k, rng));
    let c = random_invertible(&q, d, rng);
    base.conjugate(&c).unwrap()
}

pub fn qvec(v: &[Scalar]) -> QVec {
    v.iter()
        .map(|x| match x {
            Scalar::Rat(r) => r.clone(),
            Scalar::Int(n) => BigRational::from_integer(n.clone()),
            other => panic!("not rational: {other}"),
        })
        .collect()
}

/// Coordinates of `v` in the independent columns `cols`, if `v` lies in
/// their Q-span.
pub fn span_coords(cols: &[QVec], v: &[BigRational]) -> Option<Vec<BigRational>> {
    let q = Ring::Rationals;
    let d = v.len();
    let mut aug: Vec<Vec<Scalar>> = cols.iter().map(|c| c.iter().map(|x| Scalar::Rat(x.clone())).collect()).collect();
    aug.push(v.iter().map(|x| Scalar::Rat(x.clone())).collect());
    let m = Matrix::from_columns(&q, d, &aug);
    let kernel = m.kernel_basis().unwrap();
    let k = kernel.iter().find(|k| !q.is_zero(&k[cols.len()]))?;
    let scale = q.neg(&q.inv(&k[cols.len()]).unwrap());
    Some(qvec(&k[..cols.len()].iter().map(|x| q.mul(x, &scale)).collect::<Vec<_>>()))
}

/// Whether `v` lies in the Z-span of the independent columns `cols`.
pub fn in_z_span(cols: &[QVec], v: &[BigRational]) -> bool {
    span_coords(cols, v).is_some_and(|c| c.iter().all(|x| x.is_integer()))
}

/// A reducible representation over Q with its saturated lattice `L`, a
/// MeatAxe witness `W` and the pure sublattice `L ∩ W`.
pub struct Sublattice {
    pub rep: Representation,
    pub sat: Saturation,
    pub witness: Vec<QVec>,
    pub pure: Vec<QVec>,
}

pub fn reducible_with_sublattice<R: Rng>(rng: &mut R) -> Sublattice {
    loop {
        let d = rng.gen_range(2..=3);
        let k = rng.gen_range(1..d);
        let rep = scrambled_reducible(d, k, rng);
        let Ok(sat) = saturate(&rep, 64) else { continue };
        let verdict = is_irreducible(&rep, &MeataxeConfig::default());
        let Some(w) = verdict.status.witness() else { continue };
        let witness: Vec<_> = w.basis().iter().map(|v| qvec(v)).collect();
        let pure = pure_sublattice(&sat.lattice, &witness).unwrap();
        return Sublattice { rep, sat, witness, pure };
    }
}

/// Reduction mod `p` of a representation over Q with integral entries.
pub fn mod_p(rep: &Representation, p: u64) -> Representation {
    use irredcert_core::lattice::{reduce, LatticeBasis, PrimeSpec};
    let z = Ring::Integers;
    let int_rep = rep.retract(&z).expect("integral generators");
    let lat = LatticeBasis::standard(&z, rep.dim()).unwrap();
    reduce(&int_rep, &lat, &PrimeSpec::parse(&z, &format!("({p})")).unwrap()).unwrap()
}

/// A finite group given by generator matrices over F_p, with the module
/// used for its cohomology.
pub struct GroupCase {
    pub name: String,
    pub rep: Representation,
    pub module: Representation,
    /// Whether `module` is the adjoint of `rep`.
    pub adjoint: bool,
}

pub fn trivial_module(ring: &Ring, ngens: usize) -> Representation {
    rep(ring, vec![Matrix::identity(ring, 1); ngens])
}

fn case(name: &str, rep: Representation, adjoint: bool) -> GroupCase {
    let module = if adjoint { rep.adjoint().unwrap() } else { trivial_module(rep.ring(), rep.generators().len()) };
    GroupCase { name: format!("{name} over {}", rep.ring()), rep, module, adjoint }
}

/// Test groups of order at most 24 over F_p.
pub fn group_cases(p: u64) -> Vec<GroupCase> {
    let k = Ring::Prime(p);
    let mut out = vec![
        case("trivial", rep(&k, vec![Matrix::identity(&k, 1)]), true),
        case("Z/2", rep(&k, vec![perm(&k, &[1, 0])]), true),
        case("Z/3", rep(&k, vec![mat(&k, &[&[0, -1], &[1, -1]])]), true),
        case("Z/3 trivial", rep(&k, vec![mat(&k, &[&[0, -1], &[1, -1]])]), false),
        case("Z/4", rep(&k, vec![mat(&k, &[&[0, -1], &[1, 0]])]), true),
        case("V4", rep(&k, vec![perm(&k, &[1, 0, 3, 2]), perm(&k, &[2, 3, 0, 1])]), true),
        case("S3", s3(&k), true),
        case("D4", rep(&k, vec![mat(&k, &[&[0, -1], &[1, 0]]), mat(&k, &[&[1, 0], &[0, -1]])]), true),
        case("A4", rep(&k, vec![perm(&k, &[1, 2, 0, 3]), perm(&k, &[1, 0, 3, 2])]), false),
        case("S4", rep(&k, vec![perm(&k, &[1, 2, 3, 0]), perm(&k, &[1, 0, 2, 3])]), false),
    ];
    if p == 3 {
        out.push(case("Q8", load("q8_f3"), true));
    }
    out
}
