mod common;

use common::{mat, rep, rng, s3};
use irredcert_core::algebra::{Matrix, Ring, Scalar};
use irredcert_core::meataxe::{endo_dim, is_absolutely_irreducible, is_irreducible, MeataxeConfig, Status, StatusTag};
use irredcert_core::{oracle, Exec, Representation};
use proptest::prelude::*;

/// Invariant lines of a 2-dimensional representation over F_p, by testing
/// every line.
fn invariant_lines(rep: &Representation, p: u64) -> Vec<(u64, u64)> {
    let k = rep.ring();
    let mut lines: Vec<(u64, u64)> = (0..p).map(|a| (1, a)).collect();
    lines.push((0, 1));
    lines
        .into_iter()
        .filter(|&(a, b)| {
            let v = vec![Scalar::Fp(a), Scalar::Fp(b)];
            rep.generators().iter().all(|g| {
                let w = g.mul_vec(&v);
                // w ∥ v iff the 2x2 determinant vanishes
                k.is_zero(&k.sub(&k.mul(&w[0], &v[1]), &k.mul(&w[1], &v[0])))
            })
        })
        .collect()
}

#[test]
fn s3_verdicts_match_line_enumeration() {
    let cfg = MeataxeConfig::default();
    let f5 = Ring::Prime(5);
    assert!(invariant_lines(&s3(&f5), 5).is_empty());
    assert_eq!(is_irreducible(&s3(&f5), &cfg).status, Status::Irreducible);
    let f3 = Ring::Prime(3);
    assert_eq!(invariant_lines(&s3(&f3), 3), vec![(1, 2)]);
    let v = is_irreducible(&s3(&f3), &cfg);
    let w = v.status.witness().expect("reducible");
    assert_eq!(w.basis(), &[vec![Scalar::Fp(1), Scalar::Fp(2)]]);
    assert_eq!(v.record().witness, Some(vec![vec!["1".to_string(), "2".to_string()]]));
}

#[test]
fn upper_triangular_over_q() {
    let q = Ring::Rationals;
    let r = rep(&q, vec![mat(&q, &[&[1, 1], &[0, 1]]), mat(&q, &[&[1, 0], &[0, 1]])]);
    let v = is_irreducible(&r, &MeataxeConfig::default());
    let w = v.status.witness().expect("reducible");
    assert_eq!(w.dim(), 1);
    assert!(w.contains(&[q.one(), q.zero()]));
}

#[test]
fn commutant_dimensions() {
    let f5 = Ring::Prime(5);
    assert_eq!(endo_dim(&s3(&f5), Exec::Sequential), 1);
    assert!(is_absolutely_irreducible(&s3(&f5), &MeataxeConfig::default(), Exec::Sequential).unwrap());
    let rot = rep(&f5, vec![mat(&f5, &[&[0, -1], &[1, 0]])]);
    let roots: Vec<u64> = (0..5).filter(|x| (x * x + 1) % 5 == 0).collect();
    assert_eq!(roots, vec![2, 3]);
    assert!(!is_absolutely_irreducible(&rot, &MeataxeConfig::default(), Exec::Sequential).unwrap());
    let ident = rep(&f5, vec![Matrix::identity(&f5, 3)]);
    assert_eq!(endo_dim(&ident, Exec::Parallel), 9);
}

#[test]
fn splitting_over_an_extension() {
    let f2 = Ring::Prime(2);
    let c = rep(&f2, vec![mat(&f2, &[&[0, 1], &[1, 1]])]);
    assert_eq!(is_irreducible(&c, &MeataxeConfig::default()).status, Status::Irreducible);
    assert_eq!(endo_dim(&c, Exec::Sequential), 2);
    assert!(!is_absolutely_irreducible(&c, &MeataxeConfig::default(), Exec::Sequential).unwrap());
    let f4 = Ring::galois_field(2, 2).unwrap();
    let c4 = rep(&f4, vec![mat(&f4, &[&[0, 1], &[1, 1]])]);
    assert_eq!(is_irreducible(&c4, &MeataxeConfig::default()).status.tag(), StatusTag::Reducible);
    assert_eq!(oracle::count_invariant(&c4, Exec::Sequential).unwrap(), 4);
}

#[test]
fn rational_function_field() {
    let k = Ring::RationalFunctions;
    let v = is_irreducible(&common::load("s3_twisted_qt"), &MeataxeConfig::default());
    assert_ne!(v.status.tag(), StatusTag::Reducible);
    let t = Matrix::parse_rows(&k, &[vec!["t".into(), "t^2+1".into()], vec!["0".into(), "1".into()]]).unwrap();
    // the only common invariant line is spanned by e1
    let u = Matrix::parse_rows(&k, &[vec!["1".into(), "1".into()], vec!["0".into(), "t".into()]]).unwrap();
    let v = is_irreducible(&rep(&k, vec![t, u]), &MeataxeConfig::default());
    let w = v.status.witness().expect("reducible");
    assert!(w.contains(&[k.one(), k.zero()]));
}

fn random_rep(p: u64, d: usize, seed: u64) -> Representation {
    let k = Ring::Prime(p);
    let mut r = rng(seed);
    let gens = (0..2).map(|_| common::random_invertible(&k, d, &mut r)).collect();
    rep(&k, gens)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn agrees_with_enumeration(p in prop::sample::select(vec![2u64, 3, 5]), d in 1usize..=3, seed in any::<u64>()) {
        let r = random_rep(p, d, seed);
        let v = is_irreducible(&r, &MeataxeConfig { seed, budget: 200 });
        let truth = oracle::is_irreducible(&r, Exec::Sequential).unwrap();
        prop_assert_ne!(v.status.tag(), StatusTag::Inconclusive);
        prop_assert_eq!(v.status.tag() == StatusTag::Irreducible, truth);
        if let Some(w) = v.status.witness() {
            prop_assert!(w.dim() > 0 && w.dim() < d);
            prop_assert!(w.is_invariant(r.generators()));
        }
    }

    #[test]
    fn verdict_survives_conjugation(p in prop::sample::select(vec![2u64, 3, 7]), d in 2usize..=4, seed in any::<u64>()) {
        let r = random_rep(p, d, seed);
        let c = common::random_invertible(r.ring(), d, &mut rng(seed ^ 3));
        let conj = r.conjugate(&c).unwrap();
        let a = is_irreducible(&r, &MeataxeConfig::default());
        let b = is_irreducible(&conj, &MeataxeConfig::default());
        prop_assert_eq!(a.status.tag(), b.status.tag());
        if let Some(w) = a.status.witness() {
            let moved: Vec<Vec<Scalar>> = w.basis().iter().map(|v| c.mul_vec(v)).collect();
            let image = irredcert_core::algebra::subspace::Subspace::spanned_by(r.ring(), d, &moved);
            prop_assert!(image.is_invariant(conj.generators()));
        }
    }

    #[test]
    fn transcripts_are_deterministic(which in 0usize..4, seed in any::<u64>()) {
        let r = [common::load("s4"), common::load("q8_f3"), common::load("d4"), random_rep(3, 3, seed)][which].clone();
        let cfg = MeataxeConfig { seed, budget: 50 };
        let a = serde_json::to_string(&is_irreducible(&r, &cfg).record()).unwrap();
        let b = serde_json::to_string(&is_irreducible(&r, &cfg).record()).unwrap();
        prop_assert_eq!(a, b);
    }
}
