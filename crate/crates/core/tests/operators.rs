use deformed_hecke::function::LatticeFunction;
use deformed_hecke::laurent::LaurentPolynomial;
use deformed_hecke::lattice::{LatticePoint, WeylWord};
use deformed_hecke::operators::{
    apply_t, apply_t_word, apply_x, apply_x_polynomial, delta_function, elementary_symmetric_in_x, pairing,
    right_apply_t, right_apply_x, right_apply_x_inv,
};
use deformed_hecke::params::Params;
use deformed_hecke::scalar::{int, ratio, Scalar};
use deformed_hecke::verify::random_probe;
use deformed_hecke::sampling;
use itertools::Itertools;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-5i64..=5, 1i64..=5).prop_map(|(n, d)| ratio(n, d))
}

fn params(k: usize) -> impl Strategy<Value = Params> {
    (scalar(), scalar(), scalar(), scalar()).prop_map(move |(a, b, c, d)| Params::unchecked(a, b, c, d, k))
}

/// A delta at `y` and an evaluation point a few steps from it, where the
/// relations have something to say.
fn delta_and_point(k: usize) -> impl Strategy<Value = (LatticePoint, LatticePoint)> {
    (
        prop::collection::vec(-2i64..=2, k),
        prop::collection::vec(-1i64..=1, k),
        prop::collection::vec(1..k.max(2), 0..3),
    )
        .prop_map(move |(y, step, refl)| {
            let y = LatticePoint::new(y);
            let mut x = LatticePoint::new(y.coords().iter().zip(&step).map(|(a, b)| a + b).collect());
            if k >= 2 {
                for i in refl {
                    x = x.reflected(i);
                }
            }
            (y, x)
        })
}

fn t(i: usize, f: &LatticeFunction, p: &Params) -> LatticeFunction {
    apply_t(i, f, p).unwrap()
}

fn x(i: usize, f: &LatticeFunction) -> LatticeFunction {
    apply_x(i, f).unwrap()
}

fn sample_params(k: usize) -> Params {
    Params::unchecked(ratio(2, 3), ratio(-1, 2), ratio(5, 4), ratio(3, 7), k)
}

#[test]
fn t_on_a_delta_by_hand() {
    let p = sample_params(2);
    let ad = &p.alpha * &p.delta;
    let f = delta_function(&[1, 0].into());
    let tf = t(1, &f, &p);
    assert_eq!(tf.eval(&[0, 1].into()), int(1) - &ad);
    assert_eq!(tf.eval(&[1, 0].into()), ad);
    // a_1(x) = 0 leaves the value alone.
    let g = random_probe(&mut sampling::rng(3), 2);
    assert_eq!(t(1, &g, &p).eval(&[2, 2].into()), g.eval(&[2, 2].into()));
}

#[test]
fn right_t_on_first_variable_by_hand() {
    let p = sample_params(2);
    let e1 = LaurentPolynomial::variable(2, 1);
    let expected = LaurentPolynomial::from_terms(
        2,
        [
            (LatticePoint::from([0, 1]), int(1) + &p.beta * &p.gamma),
            (LatticePoint::from([1, 1]), &p.alpha * &p.gamma),
            (LatticePoint::from([1, 0]), &p.alpha * &p.delta),
            (LatticePoint::from([0, 0]), &p.beta * &p.delta),
        ],
    );
    assert_eq!(right_apply_t(&e1, 1, &p).unwrap(), expected);
    let one = LaurentPolynomial::one(2);
    assert_eq!(right_apply_t(&one, 1, &p).unwrap(), one);
    let sym = &LaurentPolynomial::variable(2, 1) + &LaurentPolynomial::variable(2, 2);
    assert_eq!(right_apply_t(&sym, 1, &p).unwrap(), sym);
}

#[test]
fn reduced_words_give_the_same_operator() {
    let p = sample_params(3);
    let mut rng = sampling::rng(11);
    let f = random_probe(&mut rng, 3);
    let a = apply_t_word(&WeylWord::from_letters(3, vec![1, 2, 1]).unwrap(), &f, &p).unwrap();
    let b = apply_t_word(&WeylWord::from_letters(3, vec![2, 1, 2]).unwrap(), &f, &p).unwrap();
    for _ in 0..30 {
        let x = sampling::lattice_point(&mut rng, 3, -3, 3);
        assert_eq!(a.eval(&x), b.eval(&x), "{x:?}");
    }
    assert!(WeylWord::from_letters(3, vec![1, 1]).is_err());
}

#[test]
fn right_action_relations_on_monomials() {
    let p = sample_params(3);
    let q = p.q();
    for e in (0..3).map(|_| -2i64..=2).multi_cartesian_product() {
        let m = LaurentPolynomial::monomial(LatticePoint::new(e), int(1));
        let rt = |a: &LaurentPolynomial, i| right_apply_t(a, i, &p).unwrap();
        for i in 1..3 {
            // (T - 1)(T + q) = 0
            let t1 = rt(&m, i);
            let lhs = &(&rt(&t1, i) + &t1.scale(&(&q - int(1)))) - &m.scale(&q);
            assert!(lhs.is_zero());
            // Cross relation: P X_{i+1} T_i - P T_i X_i = P (a + b X_i)(c + d X_{i+1}).
            let x_i = |a: &LaurentPolynomial| right_apply_x(a, i).unwrap();
            let x_j = |a: &LaurentPolynomial| right_apply_x(a, i + 1).unwrap();
            let lhs = &rt(&x_j(&m), i) - &x_i(&rt(&m, i));
            let ac = m.scale(&(&p.alpha * &p.gamma));
            let rhs = &(&(&ac + &x_j(&m).scale(&(&p.alpha * &p.delta))) + &x_i(&m).scale(&(&p.beta * &p.gamma)))
                + &x_i(&x_j(&m)).scale(&(&p.beta * &p.delta));
            assert_eq!(lhs, rhs);
        }
        let braid_a = right_apply_t(&right_apply_t(&right_apply_t(&m, 1, &p).unwrap(), 2, &p).unwrap(), 1, &p).unwrap();
        let braid_b = right_apply_t(&right_apply_t(&right_apply_t(&m, 2, &p).unwrap(), 1, &p).unwrap(), 2, &p).unwrap();
        assert_eq!(braid_a, braid_b);
        assert_eq!(right_apply_x_inv(&right_apply_x(&m, 2).unwrap(), 2).unwrap(), m);
    }
}

#[test]
fn memoized_and_plain_agree() {
    let mut rng = sampling::rng(5);
    let f = random_probe(&mut rng, 3);
    let plain = LatticeFunction::new(3, {
        let f = f.clone();
        move |x| f.eval(x)
    });
    let memo = plain.memoize();
    for _ in 0..50 {
        let x = sampling::lattice_point(&mut rng, 3, -4, 4);
        assert_eq!(memo.eval(&x), plain.eval(&x));
        assert_eq!(memo.eval(&x), plain.eval(&x));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quadratic_relation(k in 2usize..=4, seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let p = sampling::params(&mut rng, k, sampling::Stratum::Generic).unwrap();
        let y = sampling::lattice_point(&mut rng, k, -2, 2);
        let at = y.shifted(1, 1).reflected(1);
        let f = delta_function(&y);
        for i in 1..k {
            let tf = t(i, &f, &p);
            let ttf = t(i, &tf, &p);
            let q = p.q();
            for x in [&y, &at, &y.reflected(i)] {
                let v = ttf.eval(x) + (&q - int(1)) * tf.eval(x) - &q * f.eval(x);
                prop_assert_eq!(v, int(0));
            }
        }
    }

    #[test]
    fn braid_and_commutation((y, pt) in delta_and_point(4), p in params(4)) {
        let f = delta_function(&y);
        for i in 1..3 {
            let a = t(i, &t(i + 1, &t(i, &f, &p), &p), &p);
            let b = t(i + 1, &t(i, &t(i + 1, &f, &p), &p), &p);
            prop_assert_eq!(a.eval(&pt), b.eval(&pt));
        }
        prop_assert_eq!(t(1, &t(3, &f, &p), &p).eval(&pt), t(3, &t(1, &f, &p), &p).eval(&pt));
        // X_a commutes with T_j unless a is j or j + 1.
        prop_assert_eq!(x(3, &t(1, &f, &p)).eval(&pt), t(1, &x(3, &f), &p).eval(&pt));
        prop_assert_eq!(x(1, &t(2, &f, &p)).eval(&pt), t(2, &x(1, &f), &p).eval(&pt));
        prop_assert_eq!(x(1, &x(2, &f)).eval(&pt), x(2, &x(1, &f)).eval(&pt));
    }

    #[test]
    fn cross_relation((y, pt) in delta_and_point(3), p in params(3), i in 1usize..3) {
        let f = delta_function(&y);
        let lhs1 = x(i + 1, &t(i, &f, &p)).eval(&pt) - t(i, &x(i, &f), &p).eval(&pt);
        let lhs2 = t(i, &x(i + 1, &f), &p).eval(&pt) - x(i, &t(i, &f, &p)).eval(&pt);
        let rhs = &p.alpha * &p.gamma * f.eval(&pt)
            + &p.alpha * &p.delta * x(i + 1, &f).eval(&pt)
            + &p.beta * &p.gamma * x(i, &f).eval(&pt)
            + &p.beta * &p.delta * x(i, &x(i + 1, &f)).eval(&pt);
        prop_assert_eq!(&lhs1, &rhs);
        prop_assert_eq!(&lhs2, &rhs);
    }

    #[test]
    fn symmetric_polynomials_are_central((y, pt) in delta_and_point(3), p in params(3), r in 0usize..=3) {
        let f = delta_function(&y);
        let e = elementary_symmetric_in_x(3, r);
        for i in 1..3 {
            let a = apply_x_polynomial(&e, &t(i, &f, &p));
            let b = t(i, &apply_x_polynomial(&e, &f), &p);
            prop_assert_eq!(a.eval(&pt), b.eval(&pt));
        }
    }

    #[test]
    fn pairing_is_adjoint((y, m) in delta_and_point(3), p in params(3), i in 1usize..3) {
        let mono = LaurentPolynomial::monomial(m, int(1));
        let f = delta_function(&y);
        prop_assert_eq!(pairing(&right_apply_t(&mono, i, &p).unwrap(), &f), pairing(&mono, &t(i, &f, &p)));
        prop_assert_eq!(pairing(&right_apply_x(&mono, i).unwrap(), &f), pairing(&mono, &x(i, &f)));
    }
}
