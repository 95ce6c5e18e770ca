mod common;

use common::{o_entropy, random_simplex};
use paralogic::ppd::{entropy, intension_degree, relative_entropy, InstanceEvidence, Ppd, DEFAULT_EPSILON};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_ppd(rng: &mut impl Rng, n: usize, zeros: bool) -> Ppd {
    let outcomes = (0..n).map(|i| format!("w{i}")).collect();
    Ppd::new(outcomes, random_simplex(rng, n, zeros), random_simplex(rng, n, zeros)).unwrap()
}

#[test]
fn entropy_equals_product_distribution_entropy() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let n = rng.gen_range(1..8);
        let p = random_ppd(&mut rng, n, true);
        let product: Vec<f64> = p.pos().iter().flat_map(|a| p.neg().iter().map(move |b| a * b)).collect();
        assert!((entropy(&p) - o_entropy(&product)).abs() < 1e-9);
    }
}

#[test]
fn relative_entropy_is_nonnegative_and_zero_on_equal() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let n = rng.gen_range(1..8);
        let a = random_ppd(&mut rng, n, true);
        let b = random_ppd(&mut rng, n, false);
        assert!(relative_entropy(&a, &b, DEFAULT_EPSILON).unwrap() >= -1e-9);
        assert_eq!(relative_entropy(&a, &a, 0.0).unwrap(), 0.0);
        assert!(relative_entropy(&b, &b, DEFAULT_EPSILON).unwrap().abs() < 1e-9);
        let d = relative_entropy(&b, &a, DEFAULT_EPSILON).unwrap();
        if a != b {
            assert!(d > 0.0);
        }
    }
}

#[test]
fn relative_entropy_ignores_outcome_order() {
    let a = Ppd::new(vec!["x".into(), "y".into()], vec![0.25, 0.75], vec![0.5, 0.5]).unwrap();
    let b = Ppd::new(vec!["y".into(), "x".into()], vec![0.5, 0.5], vec![0.1, 0.9]).unwrap();
    let b_sorted = Ppd::new(vec!["x".into(), "y".into()], vec![0.5, 0.5], vec![0.9, 0.1]).unwrap();
    assert_eq!(relative_entropy(&a, &b, 0.0).unwrap(), relative_entropy(&a, &b_sorted, 0.0).unwrap());
}

#[test]
fn intension_is_permutation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let n = rng.gen_range(2..6);
        let ids: Vec<String> = (0..n).map(|i| format!("i{i}")).collect();
        let w = |rng: &mut ChaCha8Rng| (rng.gen_range(0.05..1.0), rng.gen_range(0.05..1.0));
        let x: Vec<(String, (f64, f64))> = ids.iter().map(|i| (i.clone(), w(&mut rng))).collect();
        let c: Vec<(String, (f64, f64))> = ids.iter().map(|i| (i.clone(), w(&mut rng))).collect();
        let d = intension_degree(
            &InstanceEvidence::new(x.clone()).unwrap(),
            &InstanceEvidence::new(c.clone()).unwrap(),
            DEFAULT_EPSILON,
        )
        .unwrap();
        let (mut xr, mut cr) = (x, c);
        xr.reverse();
        cr.rotate_left(1);
        let e =
            intension_degree(&InstanceEvidence::new(xr).unwrap(), &InstanceEvidence::new(cr).unwrap(), DEFAULT_EPSILON)
                .unwrap();
        assert!((d - e).abs() < 1e-12);
    }
}
