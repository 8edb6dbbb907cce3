#![allow(clippy::identity_op)]

use deformed_hecke::identities::{
    elementary_symmetric, k_difference, verify_block_constant, verify_block_product_form, verify_block_shift_sum,
    verify_geometric_step, verify_i_closed_form, verify_j_closed_form, verify_k_recurrence, verify_k_xy,
    verify_q_binomial, verify_staircase_sum, IdentityReport,
};
use deformed_hecke::lattice::{q_factorial, q_integer};
use deformed_hecke::sampling::{self, Stratum};
use deformed_hecke::scalar::{int, powi, ratio, Scalar};
use deformed_hecke::stochastic::k_constant;
use itertools::Itertools;
use proptest::prelude::*;

const TRIALS: usize = 100;
const SEED: u64 = 2024;

fn assert_all(reports: Vec<IdentityReport>) {
    for r in &reports {
        assert!(r.pass && r.passed == r.trials && r.trials == TRIALS, "{r:?}");
    }
}

#[test]
fn block_identities() {
    assert_all((1..=6).map(|m| verify_block_product_form(m, TRIALS, SEED)).collect());
    assert_all((1..=8).map(|m| verify_block_constant(m, TRIALS, SEED)).collect());
    assert_all((1..=5).map(|m| verify_block_shift_sum(m, TRIALS, SEED)).collect());
}

#[test]
fn closed_form_over_every_size() {
    assert_all(
        (1..=6)
            .flat_map(|m| (1..=m).map(move |s| verify_i_closed_form(m, s, TRIALS, SEED)))
            .collect(),
    );
}

#[test]
fn intermediate_identities() {
    for m in 1..=6 {
        assert_all(vec![
            verify_staircase_sum(m, TRIALS, SEED),
            verify_geometric_step(m, TRIALS, SEED),
            verify_j_closed_form(m, TRIALS, SEED),
            verify_k_xy(m, TRIALS, SEED),
            verify_q_binomial(m, TRIALS, SEED),
        ]);
    }
}

#[test]
fn k_recurrence() {
    assert_all((2..=8).map(|m| verify_k_recurrence(m, TRIALS, SEED)).collect());
}

#[test]
fn first_k_difference_by_hand() {
    let mut rng = sampling::rng(3);
    for _ in 0..20 {
        let p = sampling::params(&mut rng, 2, Stratum::Generic).unwrap();
        let want = -(&p.alpha + &p.beta) * (&p.gamma + &p.delta) / (int(1) + &p.beta * &p.gamma);
        assert_eq!(k_difference(2, &p).unwrap(), want);
        assert_eq!(k_constant(2, &p).unwrap() - k_constant(1, &p).unwrap(), want);
    }
}

#[test]
fn elementary_symmetric_examples() {
    assert_eq!(elementary_symmetric(0, &[ratio(7, 3)]).unwrap(), int(1));
    assert_eq!(elementary_symmetric(2, &[int(1), int(2), int(3)]).unwrap(), int(1 * 2 + 1 * 3 + 2 * 3));
    assert!(elementary_symmetric(4, &[int(1), int(2), int(3)]).is_err());
}

proptest! {
    #[test]
    fn elementary_symmetric_by_subsets(v in prop::collection::vec((-9i64..=9, 1i64..=9), 0..6), r in 0usize..6) {
        let v: Vec<Scalar> = v.into_iter().map(|(n, d)| ratio(n, d)).collect();
        prop_assume!(r <= v.len());
        let brute: Scalar = v.iter().combinations(r).map(|c| c.into_iter().product::<Scalar>()).sum();
        prop_assert_eq!(elementary_symmetric(r, &v).unwrap(), brute);
    }

    /// `q^{-r(r-1)/2} e_r(1, q, ..., q^{m-1}) = prod_{p<r} [m-p] / [r]!`.
    #[test]
    fn q_binomial_evaluation(m in 1usize..=7, r in 0usize..=7, n in 1i64..=9, d in 1i64..=9) {
        prop_assume!(r <= m);
        let q = ratio(n, d);
        let powers: Vec<Scalar> = (0..m as i64).map(|i| powi(&q, i).unwrap()).collect();
        let lhs = powi(&q, -((r * (r.max(1) - 1) / 2) as i64)).unwrap() * elementary_symmetric(r, &powers).unwrap();
        let rhs: Scalar = (0..r).map(|p| q_integer(m - p, &q)).product::<Scalar>() / q_factorial(r, &q);
        prop_assert_eq!(lhs, rhs);
    }
}
