//! The two representations of the deformed affine Hecke algebra.
//!
//! * Left action on lattice functions: `X_i` shifts the argument and `T_i`
//!   is an integral-reflection operator summing `f` along the root string
//!   through `s_i x`.
//! * Right action on Laurent polynomials: `P X_i = e^{-v_i} P` and
//!   `P T_i = P.s_i + (a e^{v_i} + b)(c e^{v_{i+1}} + d) (P - P.s_i) / (e^{v_i} - e^{v_{i+1}})`.
//!
//! The two are adjoint under the pairing `(e^x, f) = f(x)`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::function::LatticeFunction;
use crate::laurent::LaurentPolynomial;
use crate::lattice::{check_basis_index, check_reflection_index, LatticePoint, WeylWord};
use crate::params::Params;
use crate::scalar::Scalar;

/// The indicator of the single point `y`.
pub fn delta_function(y: &LatticePoint) -> LatticeFunction {
    let y = y.clone();
    LatticeFunction::new(y.rank(), move |x| {
        if *x == y {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

/// The indicator of the Weyl orbit of `y`, a symmetric function.
pub fn symmetric_delta(y: &LatticePoint) -> LatticeFunction {
    let target = y.sorted_dominant();
    LatticeFunction::new(y.rank(), move |x| {
        if x.sorted_dominant() == target {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

/// `(X_i f)(x) = f(x - v_i)`.
pub fn apply_x(i: usize, f: &LatticeFunction) -> Result<LatticeFunction> {
    shift_operator(i, f, -1)
}

/// `(X_i^{-1} f)(x) = f(x + v_i)`.
pub fn apply_x_inv(i: usize, f: &LatticeFunction) -> Result<LatticeFunction> {
    shift_operator(i, f, 1)
}

fn shift_operator(i: usize, f: &LatticeFunction, delta: i64) -> Result<LatticeFunction> {
    check_basis_index(i, f.rank())?;
    let f = f.clone();
    Ok(LatticeFunction::new(f.rank(), move |x| f.eval(&x.shifted(i, delta))))
}

/// `(P(X) f)(x) = sum_e c_e f(x - e)` for a polynomial `P` in the commuting
/// shift operators `X_1, ..., X_k`.
pub fn apply_x_polynomial(p: &LaurentPolynomial, f: &LatticeFunction) -> LatticeFunction {
    let terms: Vec<(LatticePoint, Scalar)> = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
    let f = f.clone();
    LatticeFunction::new(f.rank(), move |x| {
        terms.iter().fold(Scalar::zero(), |acc, (e, c)| {
            let y: Vec<i64> = x.coords().iter().zip(e.coords()).map(|(a, b)| a - b).collect();
            acc + c * f.eval(&LatticePoint::new(y))
        })
    })
}

/// Coefficients of the two nontrivial cases of `T_i`.
#[derive(Clone)]
struct TCoefficients {
    ad: Scalar,
    one_plus_bg: Scalar,
    ag: Scalar,
    ad_plus_bg: Scalar,
    bd: Scalar,
    neg_bg: Scalar,
    one_minus_ad: Scalar,
}

impl TCoefficients {
    fn new(p: &Params) -> Self {
        let ad = &p.alpha * &p.delta;
        let bg = &p.beta * &p.gamma;
        TCoefficients {
            one_plus_bg: Scalar::one() + &bg,
            ag: &p.alpha * &p.gamma,
            ad_plus_bg: &ad + &bg,
            bd: &p.beta * &p.delta,
            neg_bg: -bg,
            one_minus_ad: Scalar::one() - &ad,
            ad,
        }
    }
}

/// The integral-reflection operator `T_i`, memoized.
///
/// With `a = a_i(x)` and `a^v = v_i - v_{i+1}`:
/// for `a > 0` the value combines `f(x)`, `f(s_i x)` and three sums along
/// `s_i x + j a^v` (shifted by `+v_{i+1}`, `0`, `-v_{i+1}`); for `a < 0` the
/// mirrored sums with negated coefficients; for `a = 0` it is `f(x)`.
pub fn apply_t(i: usize, f: &LatticeFunction, params: &Params) -> Result<LatticeFunction> {
    check_reflection_index(i, f.rank())?;
    let coeffs = TCoefficients::new(params);
    let f = f.clone();
    Ok(LatticeFunction::memoized(f.rank(), move |x| {
        t_value(i, &f, &coeffs, x)
    }))
}

fn t_value(i: usize, f: &LatticeFunction, c: &TCoefficients, x: &LatticePoint) -> Scalar {
    let (s, t) = (i - 1, i);
    let a = x[s] - x[t];
    if a == 0 {
        return f.eval(x);
    }
    let sx = x.reflected(i);
    // s_i x + j a^v + e v_{i+1}
    let along = |j: i64, e: i64| {
        let mut y = sx.clone();
        y[s] += j;
        y[t] += e - j;
        f.eval(&y)
    };
    let sum = |range: std::ops::RangeInclusive<i64>, sign: i64, e: i64| {
        range.fold(Scalar::zero(), |acc, j| acc + along(sign * j, e))
    };
    if a > 0 {
        let mut v = &c.ad * f.eval(x) + &c.one_plus_bg * f.eval(&sx);
        if !c.ag.is_zero() {
            v += &c.ag * sum(1..=a, 1, 1);
        }
        if !c.ad_plus_bg.is_zero() {
            v += &c.ad_plus_bg * sum(1..=a - 1, 1, 0);
        }
        if !c.bd.is_zero() {
            v += &c.bd * sum(0..=a - 1, 1, -1);
        }
        v
    } else {
        let n = -a;
        let mut v = &c.neg_bg * f.eval(x) + &c.one_minus_ad * f.eval(&sx);
        if !c.ag.is_zero() {
            v -= &c.ag * sum(0..=n - 1, -1, 1);
        }
        if !c.ad_plus_bg.is_zero() {
            v -= &c.ad_plus_bg * sum(1..=n - 1, -1, 0);
        }
        if !c.bd.is_zero() {
            v -= &c.bd * sum(1..=n, -1, -1);
        }
        v
    }
}

/// `T_w = T_{i_1} ... T_{i_r}` for the reduced word `w = s_{i_1} ... s_{i_r}`.
pub fn apply_t_word(w: &WeylWord, f: &LatticeFunction, params: &Params) -> Result<LatticeFunction> {
    w.letters()
        .iter()
        .rev()
        .try_fold(f.clone(), |acc, &i| apply_t(i, &acc, params))
}

/// `P X_i = e^{-v_i} P`.
pub fn right_apply_x(p: &LaurentPolynomial, i: usize) -> Result<LaurentPolynomial> {
    check_basis_index(i, p.nvars())?;
    Ok(p.shift(i, -1))
}

/// `P X_i^{-1} = e^{v_i} P`.
pub fn right_apply_x_inv(p: &LaurentPolynomial, i: usize) -> Result<LaurentPolynomial> {
    check_basis_index(i, p.nvars())?;
    Ok(p.shift(i, 1))
}

/// `P T_i`, computed by exact division of the antisymmetric part.
pub fn right_apply_t(p: &LaurentPolynomial, i: usize, params: &Params) -> Result<LaurentPolynomial> {
    check_reflection_index(i, p.nvars())?;
    let k = p.nvars();
    let reflected = p.reflect(i);
    let quotient = (p - &reflected).divide_by_root_binomial(i)?;
    let left = &LaurentPolynomial::variable(k, i).scale(&params.alpha)
        + &LaurentPolynomial::constant(k, params.beta.clone());
    let right = &LaurentPolynomial::variable(k, i + 1).scale(&params.gamma)
        + &LaurentPolynomial::constant(k, params.delta.clone());
    Ok(&reflected + &(&(&left * &right) * &quotient))
}

/// `(P, f) = sum_x c_x f(x)`.
pub fn pairing(p: &LaurentPolynomial, f: &LatticeFunction) -> Scalar {
    p.terms().fold(Scalar::zero(), |acc, (e, c)| acc + c * f.eval(e))
}

/// The elementary symmetric polynomial `e_r(X_1, ..., X_k)` as a polynomial
/// in the shift operators.
pub fn elementary_symmetric_in_x(k: usize, r: usize) -> LaurentPolynomial {
    let mut p = LaurentPolynomial::zero(k);
    for subset in itertools::Itertools::combinations(0..k, r) {
        let mut e = LatticePoint::zero(k);
        for j in subset {
            e[j] = 1;
        }
        p.add_term(e, Scalar::one());
    }
    p
}

/// Errors unless `x` has the rank of `f`; used at API boundaries.
pub fn check_rank(f: &LatticeFunction, x: &LatticePoint) -> Result<()> {
    if f.rank() != x.rank() {
        return Err(Error::DimensionMismatch {
            expected: f.rank(),
            actual: x.rank(),
        });
    }
    Ok(())
}
