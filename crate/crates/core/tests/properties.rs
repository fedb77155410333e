use monolin_core::doublecone::{self, FinGenDoubleCone};
use monolin_core::gossez::{self, pair};
use monolin_core::linsub::{self, FitzForm, FitzValue};
use monolin_core::matrix::{self, Mat};
use monolin_core::pairing::{self, Point};
use monolin_core::random;
use monolin_core::scalar::{self, Scalar};
use monolin_core::Subspace;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn invertible(rng: &mut ChaCha8Rng, dim: usize) -> Mat {
    loop {
        let mut p = Mat::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                p[(i, j)] = random::small_rational(rng, 3, 2);
            }
        }
        if matrix::rank(&p) == dim {
            return p;
        }
    }
}

fn point_in(rng: &mut ChaCha8Rng, l: &Subspace) -> Point {
    let coeffs: Vec<Scalar> = (0..l.dim()).map(|_| random::small_rational(rng, 4, 3)).collect();
    Point::from_flat(&l.combine(&coeffs)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inertia_is_a_congruence_invariant(seed in any::<u64>(), dim in 1usize..6) {
        let mut r = rng(seed);
        let g = random::symmetric(&mut r, dim, 4, 3);
        let p = invertible(&mut r, dim);
        let moved = p.transpose().mul(&g).unwrap().mul(&p).unwrap();
        prop_assert_eq!(matrix::inertia(&moved).unwrap(), matrix::inertia(&g).unwrap());
    }

    #[test]
    fn nullspace_is_exact_and_complementary(seed in any::<u64>(), rows in 0usize..5, cols in 1usize..6) {
        let mut r = rng(seed);
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = if r.gen_bool(0.3) { Scalar::zero() } else { random::small_rational(&mut r, 3, 2) };
            }
        }
        let kernel = matrix::nullspace_vectors(&m);
        for v in &kernel {
            prop_assert!(scalar::is_zero_vec(&m.mul_vec(v).unwrap()));
        }
        prop_assert_eq!(matrix::rank(&m) + kernel.len(), cols);
        let k = Mat::from_cols(cols, &kernel).unwrap();
        prop_assert_eq!(matrix::rank(&k), kernel.len());
    }

    #[test]
    fn solve_in_range_is_exact(seed in any::<u64>(), dim in 1usize..6) {
        let mut r = rng(seed);
        let g = random::symmetric(&mut r, dim, 3, 2);
        let b = random::rational_vector(&mut r, dim, 5, 3);
        if let Ok(u) = matrix::solve_in_range(&g, &b) {
            prop_assert_eq!(g.mul_vec(&u).unwrap(), b);
        }
        // a vector in the range is always solvable
        let w = random::rational_vector(&mut r, dim, 5, 3);
        let gb = g.mul_vec(&w).unwrap();
        let u = matrix::solve_in_range(&g, &gb).unwrap();
        prop_assert_eq!(g.mul_vec(&u).unwrap(), gb);
    }

    #[test]
    fn coupling_is_symmetric_and_c_is_quadratic(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let z = random::rational_point(&mut r, n, 5, 4);
        let w = random::rational_point(&mut r, n, 5, 4);
        let t = random::small_rational(&mut r, 5, 4);
        prop_assert_eq!(pairing::couple(&z, &w).unwrap(), pairing::couple(&w, &z).unwrap());
        prop_assert_eq!(pairing::cval(&z.scale(&t)), &t * &t * pairing::cval(&z));
        prop_assert_eq!(pairing::couple(&z, &z).unwrap(), scalar::int(2) * pairing::cval(&z));
    }

    #[test]
    fn perp_is_an_involution(seed in any::<u64>(), n in 1usize..4, k in 0usize..5) {
        let mut r = rng(seed);
        let vectors: Vec<Vec<Scalar>> = (0..k).map(|_| random::rational_vector(&mut r, 2 * n, 3, 2)).collect();
        let a = Subspace::from_vectors(n, vectors).unwrap();
        let p = pairing::perp(&a);
        prop_assert_eq!(a.dim() + p.dim(), 2 * n);
        prop_assert_eq!(pairing::perp(&p), a.clone());
        let bigger = a.with_vector(random::rational_vector(&mut r, 2 * n, 3, 2));
        prop_assert!(pairing::perp(&bigger).is_subspace_of(&p));
    }

    #[test]
    fn fitzpatrick_function_properties(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let l = random::monotone_subspace(&mut r, n);
        let form = FitzForm::new(&l).unwrap();
        let s = linsub::skew_part(&l).unwrap();
        prop_assert!(linsub::is_skew(&s));
        prop_assert!(linsub::fitz_dom(&l).unwrap().is_subspace_of(&pairing::perp(&s)));
        // φ = c on L
        let w = point_in(&mut r, &l);
        prop_assert_eq!(linsub::fitz_eval(&l, &w).unwrap(), FitzValue::Finite(pairing::cval(&w)));
        // φ ≤ ψ, homogeneity, closed form agrees with the range solve
        let z = random::rational_point(&mut r, n, 4, 3);
        let t = random::small_rational(&mut r, 4, 3);
        let phi = linsub::fitz_eval(&l, &z).unwrap();
        prop_assert_eq!(&form.eval(&z), &phi);
        match linsub::penot_eval(&l, &z).unwrap() {
            FitzValue::Finite(psi) => prop_assert!(phi.le(&psi)),
            FitzValue::PlusInfinity => {}
        }
        let scaled = linsub::fitz_eval(&l, &z.scale(&t)).unwrap();
        match (&phi, &scaled) {
            (FitzValue::Finite(a), FitzValue::Finite(b)) => prop_assert_eq!(b, &(&t * &t * a)),
            (FitzValue::PlusInfinity, FitzValue::PlusInfinity) => {}
            (_, FitzValue::Finite(b)) => prop_assert!(t.is_zero() && b.is_zero()),
            _ => prop_assert!(false, "homogeneity broken"),
        }
    }

    #[test]
    fn in_plus_agrees_with_pairwise_probe(seed in any::<u64>(), n in 1usize..4) {
        let mut r = rng(seed);
        let l = random::monotone_subspace(&mut r, n);
        let dom = linsub::fitz_dom(&l).unwrap();
        let z = if r.gen_bool(0.5) { point_in(&mut r, &dom) } else { random::rational_point(&mut r, n, 3, 2) };
        let claimed = linsub::in_plus(&l, &z).unwrap();
        let violated = (0..100).any(|_| pairing::cval(&z.sub(&point_in(&mut r, &l))).is_negative());
        // the probe can only refute membership
        prop_assert!(!(claimed && violated));
    }

    #[test]
    fn classification_is_consistent(seed in any::<u64>(), n in 1usize..4) {
        let mut r = rng(seed);
        let l = random::monotone_subspace(&mut r, n);
        let report = linsub::classify(&l);
        prop_assert!(report.is_consistent());
        prop_assert!(report.monotone.holds);
        if report.maximal.holds {
            prop_assert_eq!(l.dim(), n);
        }
        if report.skew.holds {
            let perp_plus = matrix::inertia(&linsub::gram(&pairing::perp(&l))).unwrap().n_plus;
            prop_assert_eq!(report.ni.holds, perp_plus == 0);
        }
    }

    #[test]
    fn extension_is_maximal(seed in any::<u64>(), n in 1usize..4) {
        let mut r = rng(seed);
        let l = random::monotone_subspace(&mut r, n);
        let m = linsub::extend_maximal(&l).unwrap();
        prop_assert!(l.is_subspace_of(&m));
        prop_assert_eq!(m.dim(), n);
        prop_assert!(linsub::classify(&m).maximal.holds);
    }

    #[test]
    fn cone_fitzpatrick_properties(seed in any::<u64>(), n in 1usize..4) {
        let mut r = rng(seed);
        let d = random::monotone_cone(&mut r, n, 4);
        let z = random::rational_point(&mut r, n, 3, 2);
        let t = random::small_rational(&mut r, 3, 2);
        let phi = doublecone::dc_fitz_eval(&d, &z).unwrap();
        let scaled = doublecone::dc_fitz_eval(&d, &z.scale(&t)).unwrap();
        if let (FitzValue::Finite(a), FitzValue::Finite(b)) = (&phi, &scaled) {
            prop_assert_eq!(b, &(&t * &t * a));
        }
        if !t.is_zero() {
            prop_assert_eq!(
                doublecone::dc_in_plus(&d, &z).unwrap(),
                doublecone::dc_in_plus(&d, &z.scale(&t)).unwrap()
            );
        }
        if let Some(l) = d.as_subspace() {
            prop_assert_eq!(phi, linsub::fitz_eval(&l, &z).unwrap());
        }
        for g in d.generators() {
            prop_assert!(doublecone::dc_in_plus(&d, g.point()).unwrap());
        }
    }

    #[test]
    fn skew_cones_have_indicator_fitzpatrick(seed in any::<u64>(), n in 1usize..4) {
        let mut r = rng(seed);
        let dim = r.gen_range(0..=n);
        let s = random::skew_subspace(&mut r, n, dim);
        let d = FinGenDoubleCone::new(s.clone(), &[]).unwrap();
        let z = if r.gen_bool(0.5) { point_in(&mut r, &pairing::perp(&s)) } else { random::rational_point(&mut r, n, 3, 2) };
        let expected = if pairing::perp(&s).contains(&z) { FitzValue::Finite(Scalar::zero()) } else { FitzValue::PlusInfinity };
        prop_assert_eq!(doublecone::dc_fitz_eval(&d, &z).unwrap(), expected);
    }

    #[test]
    fn gossez_operator_is_skew(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random::fin_seq(&mut r, 20);
        let y = random::fin_seq(&mut r, 20);
        prop_assert!(pair(&x, &gossez::gossez_apply(&x)).is_zero());
        prop_assert_eq!(pair(&x, &gossez::gossez_apply(&y)), -pair(&y, &gossez::gossez_apply(&x)));
        prop_assert_eq!(gossez::gossez_apply(&x).tail, -x.sum());
        prop_assert!(gossez::check_identities(&x, &y).all_passed());
    }
}
