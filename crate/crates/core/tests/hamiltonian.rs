use deformed_hecke::function::LatticeFunction;
use deformed_hecke::hamiltonian::{
    apply_delta, apply_h, apply_h_global, apply_h_j, apply_h_rewritten, bethe_phi, propagate, BetheFunction,
    ClusterDecomposition,
};
use deformed_hecke::lattice::{descent_counts, LatticePoint};
use deformed_hecke::operators::{apply_t, delta_function, symmetric_delta};
use deformed_hecke::params::Params;
use deformed_hecke::sampling::{self, Stratum};
use deformed_hecke::scalar::{int, powi, ratio, Scalar};
use deformed_hecke::verify::random_probe;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn params(k: usize) -> Params {
    Params::new(ratio(2, 3), ratio(-1, 2), ratio(5, 4), ratio(3, 7), k).unwrap()
}

fn pt(c: &[i64]) -> LatticePoint {
    LatticePoint::new(c.to_vec())
}

#[test]
fn two_particle_block_by_hand() {
    let p = params(2);
    let f = random_probe(&mut sampling::rng(1), 2);
    let (a, b, c, d, q) = (&p.alpha, &p.beta, &p.gamma, &p.delta, p.q());
    let one_bg = int(1) + b * c;
    let expected = -(a * c) / &one_bg * f.eval(&pt(&[0, 0]))
        + (f.eval(&pt(&[-1, 0])) + &q * f.eval(&pt(&[0, -1]))) / &one_bg
        - b * d * f.eval(&pt(&[-1, -1])) / &one_bg;
    let x = pt(&[0, 0]);
    assert_eq!(apply_h_j(&[1, 2], &f, &p).unwrap().eval(&x), expected);
    assert_eq!(apply_h(&f, &p).unwrap().eval(&x), expected);
    assert_eq!(apply_h_rewritten(&f, &p).unwrap().eval(&x), expected);
}

#[test]
fn separated_particles_just_shift() {
    let p = params(2);
    let f = random_probe(&mut sampling::rng(2), 2);
    let x = pt(&[1, 0]);
    assert_eq!(
        apply_h(&f, &p).unwrap().eval(&x),
        f.eval(&pt(&[0, 0])) + f.eval(&pt(&[1, -1]))
    );
    assert_eq!(ClusterDecomposition::of(&pt(&[0, 2, 0, 2])).blocks(), &[vec![1, 3], vec![2, 4]]);
}

#[test]
fn propagation_of_a_delta_by_hand() {
    let p = params(2);
    let f = delta_function(&pt(&[1, 0]));
    assert_eq!(propagate(&f, &p).eval(&pt(&[0, 1])), &p.alpha * &p.delta);
    assert_eq!(propagate(&f, &p).eval(&pt(&[1, 0])), int(1));
}

#[test]
fn two_particle_bethe_value_by_hand() {
    let p = params(2);
    let (p1, p2) = (ratio(3, 2), ratio(-2, 5));
    let amp = |a: &Scalar, b: &Scalar| {
        int(1) + (&p.alpha + &p.beta * b) * (&p.gamma + &p.delta * a) / (b - a)
    };
    let expected = amp(&p1, &p2) + amp(&p2, &p1);
    assert_eq!(bethe_phi(&[p1.clone(), p2.clone()], &pt(&[0, 0]), &p).unwrap(), expected);
    assert!(BetheFunction::new(&[p1.clone(), p1], &p).is_err());
    assert!(BetheFunction::new(&[Scalar::zero(), p2], &p).is_err());
}

/// `sum_j q^{d_j^-} (X_j - alpha gamma d_j^+)`, written out independently.
fn beta_zero_h(f: &LatticeFunction, x: &LatticePoint, p: &Params) -> Scalar {
    let (plus, minus) = descent_counts(x);
    let q = p.q();
    (1..=x.rank())
        .map(|j| {
            let shift = f.eval(&x.shifted(j, -1));
            powi(&q, minus[j - 1] as i64).unwrap()
                * (shift - &p.alpha * &p.gamma * int(plus[j - 1] as i64) * f.eval(x))
        })
        .sum()
}

fn seeded_params(seed: u64, k: usize, stratum: Stratum) -> Params {
    sampling::params(&mut sampling::rng(seed), k, stratum).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn the_three_forms_agree(k in 1usize..=4, seed in any::<u64>(), c in prop::collection::vec(-1i64..=1, 4)) {
        let p = seeded_params(seed, k, Stratum::Generic);
        let f = random_probe(&mut sampling::rng(seed ^ 1), k);
        let x = pt(&c[..k]);
        let h = apply_h(&f, &p).unwrap().eval(&x);
        prop_assert_eq!(&h, &apply_h_global(&f, &p).unwrap().eval(&x));
        prop_assert_eq!(&h, &apply_h_rewritten(&f, &p).unwrap().eval(&x));
    }

    #[test]
    fn beta_zero_closed_form(k in 1usize..=4, seed in any::<u64>(), c in prop::collection::vec(-1i64..=1, 4)) {
        let p = seeded_params(seed, k, Stratum::BetaZero);
        let f = random_probe(&mut sampling::rng(seed ^ 2), k);
        let x = pt(&c[..k]);
        prop_assert_eq!(apply_h(&f, &p).unwrap().eval(&x), beta_zero_h(&f, &x, &p));
        prop_assert!(apply_h_rewritten(&f, &p).is_err());
    }

    #[test]
    fn symmetric_inputs_stay_symmetric(k in 2usize..=4, seed in any::<u64>(), c in prop::collection::vec(-1i64..=1, 4), y in prop::collection::vec(-1i64..=1, 4)) {
        let p = seeded_params(seed, k, Stratum::Generic);
        let f = symmetric_delta(&pt(&y[..k]));
        let h = apply_h(&f, &p).unwrap();
        let x = pt(&c[..k]);
        for i in 1..k {
            prop_assert_eq!(h.eval(&x.reflected(i)), h.eval(&x));
        }
    }

    #[test]
    fn free_operator_commutes_with_t(seed in any::<u64>(), y in prop::collection::vec(-1i64..=1, 3), c in prop::collection::vec(-2i64..=2, 3), i in 1usize..3) {
        let p = seeded_params(seed, 3, Stratum::Generic);
        let f = delta_function(&pt(&y));
        let x = pt(&c);
        let a = apply_delta(&apply_t(i, &f, &p).unwrap()).eval(&x);
        let b = apply_t(i, &apply_delta(&f), &p).unwrap().eval(&x);
        prop_assert_eq!(a, b);
    }

    /// H G = G Delta on deltas, with the evaluation point near the orbit of `y`.
    #[test]
    fn propagation_intertwines(k in 2usize..=4, seed in any::<u64>(), stratum in 0usize..5,
                               y in prop::collection::vec(-3i64..=3, 4),
                               perm in Just((0..4).collect::<Vec<usize>>()).prop_shuffle(),
                               bump in prop::collection::vec(0i64..=1, 4)) {
        let strata = [Stratum::Generic, Stratum::BetaZero, Stratum::GammaZero, Stratum::AlphaPlusBetaZero, Stratum::GammaPlusDeltaZero];
        let p = seeded_params(seed, k, strata[stratum]);
        let y = pt(&y[..k]);
        let order: Vec<usize> = perm.into_iter().filter(|&i| i < k).collect();
        let x = LatticePoint::new(order.iter().zip(&bump).map(|(&i, b)| y[i] + b).collect());
        let f = delta_function(&y);
        let lhs = apply_h(&propagate(&f, &p), &p).unwrap().eval(&x);
        let rhs = propagate(&apply_delta(&f), &p).eval(&x);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bethe_eigenfunction(k in 1usize..=3, seed in any::<u64>(), c in prop::collection::vec(-3i64..=3, 3)) {
        let mut rng = sampling::rng(seed);
        let p = sampling::params(&mut rng, k, Stratum::Generic).unwrap();
        let spec = sampling::distinct_rationals(&mut rng, k, &[Scalar::zero()]).unwrap();
        let phi = BetheFunction::new(&spec, &p).unwrap();
        let f = phi.to_function();
        let x = pt(&c[..k]).sorted_dominant();
        let e: Scalar = spec.iter().sum();
        prop_assert_eq!(phi.eigenvalue(), e.clone());
        prop_assert_eq!(apply_h(&f, &p).unwrap().eval(&x), e * f.eval(&x));
        // The plane-wave sum is T-invariant and propagates to the Bethe function.
        let h = phi.to_plane_wave_function();
        let g = propagate(&h, &p);
        let z = pt(&c[..k]);
        prop_assert_eq!(g.eval(&z), phi.value(&z));
        for i in 1..k {
            prop_assert_eq!(apply_t(i, &h, &p).unwrap().eval(&z), h.eval(&z));
        }
    }
}

#[test]
fn q_one_is_allowed() {
    // alpha delta = beta gamma gives q = 1; the cluster form still agrees with the global one.
    let p = Params::new(int(1), int(2), int(3), int(6), 3).unwrap();
    assert!(p.q().is_one());
    let f = random_probe(&mut sampling::rng(9), 3);
    for c in [[0, 0, 0], [1, 0, 0], [0, 0, -1], [2, -1, 2]] {
        let x = pt(&c);
        assert_eq!(apply_h(&f, &p).unwrap().eval(&x), apply_h_global(&f, &p).unwrap().eval(&x));
    }
}
