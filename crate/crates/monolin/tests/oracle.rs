use monolin::oracle::{self, OracleError, ProbeConfig, ProbeOutcome, Union};
use monolin_core::doublecone::{self, FinGenDoubleCone};
use monolin_core::linsub;
use monolin_core::pairing::Point;
use monolin_core::random;
use monolin_core::sampling::GridSampler;
use monolin_core::scalar;
use monolin_core::Subspace;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn line(x: &[i64], y: &[i64]) -> Subspace {
    Subspace::from_points(x.len(), &[Point::from_i64(x, y)]).unwrap()
}

fn cfg(samples: usize) -> ProbeConfig {
    ProbeConfig {
        samples,
        ..ProbeConfig::default()
    }
}

#[test]
fn fitz_sup_on_identity_line() {
    let sup = oracle::oracle_fitz_sup(&line(&[1], &[1]), &Point::from_i64(&[1], &[3]), &cfg(500)).unwrap();
    assert!(!sup.unbounded);
    assert!((sup.lower_bound - 4.0).abs() < 1e-6, "{sup:?}");
}

#[test]
fn fitz_sup_unbounded_off_domain() {
    let sup = oracle::oracle_fitz_sup(&line(&[1], &[0]), &Point::from_i64(&[1], &[1]), &cfg(500)).unwrap();
    assert!(sup.unbounded, "{sup:?}");
}

#[test]
fn fitz_sup_matches_exact_value() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..30 {
        let n = rng.gen_range(1..=3);
        let l = random::monotone_subspace(&mut rng, n);
        let z = random::rational_point(&mut rng, n, 5, 3);
        let exact = linsub::fitz_eval(&l, &z).unwrap();
        let sup = oracle::oracle_fitz_sup(&l, &z, &cfg(300)).unwrap();
        match exact.finite() {
            Some(v) => {
                let v = scalar::to_f64(v);
                assert!(!sup.unbounded);
                assert!((sup.lower_bound - v).abs() <= 1e-6 * v.abs().max(1.0), "{sup:?} vs {v}");
            }
            None => assert!(sup.unbounded, "{l:?} at {z}"),
        }
    }
}

#[test]
fn maximal_probe_verdicts() {
    let zero = Subspace::zero(1);
    assert!(matches!(
        oracle::oracle_maximal_probe(&zero, &cfg(200)).unwrap(),
        ProbeOutcome::NotMaximal(_)
    ));
    let rotation = Subspace::from_points(2, &[Point::from_i64(&[1, 0], &[0, -1]), Point::from_i64(&[0, 1], &[1, 0])]).unwrap();
    for l in [line(&[1], &[1]), rotation] {
        assert_eq!(oracle::oracle_maximal_probe(&l, &cfg(1000)).unwrap(), ProbeOutcome::Passed(1000));
    }
}

#[test]
fn monotone_pairs_find_violation_on_axes() {
    let axes = Union {
        n: 1,
        parts: vec![line(&[1], &[0]), line(&[0], &[1])],
    };
    match oracle::oracle_monotone_pairs(&axes, &cfg(1000)) {
        ProbeOutcome::Violation(a, b) => assert!(monolin_core::pairing::cval(&a.sub(&b)) < scalar::zero()),
        other => panic!("expected a violation, got {other:?}"),
    }
    assert!(oracle::oracle_monotone_pairs(&line(&[1], &[2]), &cfg(1000)).passed());
}

#[test]
fn penot_on_identity_line() {
    let d = FinGenDoubleCone::new(Subspace::zero(1), &[Point::from_i64(&[1], &[1])]).unwrap();
    let at = |x: i64, y: i64| oracle::oracle_penot_cone(&d, &Point::from_i64(&[x], &[y]), &cfg(100));
    let v = at(2, 2).unwrap();
    assert!((v.value - 4.0).abs() < 1e-9 && v.residual < 1e-9, "{v:?}");
    assert!(at(0, 0).unwrap().value.abs() < 1e-12);
    assert_eq!(at(1, 0), Err(OracleError::Infeasible));
}

#[test]
fn penot_on_random_cones() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut linear = 0;
    for k in 0..60 {
        let n = rng.gen_range(1..=3);
        let d = random::monotone_cone(&mut rng, n, 4);
        let mut sampler = GridSampler::new(k, &scalar::int(3));
        let mut z = sampler.point_in(d.skew());
        for g in d.generators() {
            z = z.add(&g.point().scale(&sampler.scalar()));
        }
        let approx = oracle::oracle_penot_cone(&d, &z, &cfg(100)).unwrap();
        assert!(approx.residual < 1e-9, "{approx:?}");
        // A monotone set has psi >= c on its convex hull.
        let c = scalar::to_f64(&monolin_core::pairing::cval(&z));
        assert!(approx.value >= c - 1e-9 * c.abs().max(1.0), "{approx:?} below c = {c}");
        if let Ok(exact) = doublecone::dc_penot_eval(&d, &z) {
            linear += 1;
            let v = scalar::to_f64(exact.finite().expect("hull point"));
            assert!((approx.value - v).abs() <= 1e-6 * v.abs().max(1.0), "{approx:?} vs {v}");
        }
    }
    assert!(linear > 0);
}

#[test]
fn plus_probe_agrees_on_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for k in 0..20 {
        let n = rng.gen_range(1..=3);
        let d = random::monotone_cone(&mut rng, n, 5);
        let mut sampler = GridSampler::new(k, &scalar::int(3));
        for _ in 0..100 {
            let z = sampler.point(n);
            assert_eq!(doublecone::dc_in_plus(&d, &z).unwrap(), oracle::oracle_dc_plus_probe(&d, &z));
        }
    }
}

#[test]
fn float_inertia_counts() {
    let g = monolin_core::matrix::Mat::from_i64(3, 3, &[2, 0, 0, 0, -1, 0, 0, 0, 0]);
    let i = oracle::float_inertia(&g, 1e-9);
    assert_eq!((i.n_plus, i.n_zero, i.n_minus), (1, 1, 1));
    assert_eq!(oracle::min_abs_eigenvalue(&g), 0.0);
}
