//! Exact random-point checks of the polynomial and rational-function
//! identities behind the rewritten Hamiltonian and the constants `K_m`.
//!
//! Each trial draws small random rationals and compares both sides exactly.
//! A draw that hits a zero denominator is redrawn and counted as a retry;
//! a trial only passes on exact equality at a valid point.
//!
//! Agreement of two rational functions of degree `d` at `N` independent
//! points drawn from a set of size `B` fails to detect a difference with
//! probability at most `(d / B)^N`.

use itertools::Itertools;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{q_factorial, q_integer};
use crate::params::Params;
use crate::sampling::{self, rng_stream, SampleRng, Stratum, MAX_ATTEMPTS};
use crate::scalar::{checked_div, checked_inv, int, powi, Scalar};
use crate::stochastic::k_constant;

/// Outcome of one identity over many random points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub m: usize,
    pub s: Option<usize>,
    pub trials: usize,
    pub passed: usize,
    pub retries: usize,
    pub pass: bool,
}

/// `e_r(values)`; `e_0 = 1`.
pub fn elementary_symmetric(r: usize, values: &[Scalar]) -> Result<Scalar> {
    if r > values.len() {
        return Err(Error::IndexOutOfRange {
            index: r,
            max: values.len(),
        });
    }
    Ok(esym(r, values))
}

/// `e_r`, taken to be zero when `r` exceeds the number of values.
fn esym(r: usize, values: &[Scalar]) -> Scalar {
    if r > values.len() {
        return Scalar::zero();
    }
    let mut e = vec![Scalar::zero(); r + 1];
    e[0] = Scalar::one();
    for v in values {
        for j in (1..=r).rev() {
            e[j] = &e[j] + &e[j - 1] * v;
        }
    }
    e.swap_remove(r)
}

/// `q^a, q^{a+1}, ..., q^b` (empty when `a > b`).
fn q_powers(q: &Scalar, a: i64, b: i64) -> Result<Vec<Scalar>> {
    (a..=b).map(|e| powi(q, e)).collect()
}

/// `z_1, q z_2, ..., q^{n-1} z_n` over the chosen indices (1-based).
fn staircase(q: &Scalar, z: &[Scalar], idx: &[usize]) -> Vec<Scalar> {
    let mut qp = Scalar::one();
    idx.iter()
        .map(|&i| {
            let v = &qp * &z[i - 1];
            qp *= q;
            v
        })
        .collect()
}

fn prod<I: IntoIterator<Item = Scalar>>(it: I) -> Scalar {
    it.into_iter().fold(Scalar::one(), |a, b| a * b)
}

fn nonzero(x: Scalar) -> Result<Scalar> {
    if x.is_zero() {
        Err(Error::DivisionByZero)
    } else {
        Ok(x)
    }
}

/// Parameters with `beta, q != 0` and `1 + bg[n] != 0` for `n <= m`.
fn draw_params(rng: &mut SampleRng, m: usize) -> Result<Params> {
    sampling::params(rng, m, Stratum::Generic)
}

fn draw_vec(rng: &mut SampleRng, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| sampling::small_rational(rng)).collect()
}

fn is_retryable(e: &Error) -> bool {
    matches!(
        e,
        Error::DivisionByZero | Error::StandingAssumption { .. } | Error::SamplingExhausted(_)
    )
}

/// Runs `trials` independent trials on separate random streams of `seed`.
fn run<F>(identity: &str, m: usize, s: Option<usize>, trials: usize, seed: u64, trial: F) -> IdentityReport
where
    F: Fn(&mut SampleRng) -> Result<bool> + Sync,
{
    let outcomes: Vec<(bool, usize)> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_stream(seed, i);
            let mut retries = 0;
            for _ in 0..MAX_ATTEMPTS {
                match trial(&mut rng) {
                    Ok(ok) => return (ok, retries),
                    Err(e) if is_retryable(&e) => retries += 1,
                    Err(_) => return (false, retries),
                }
            }
            (false, retries)
        })
        .collect();
    let passed = outcomes.iter().filter(|(ok, _)| *ok).count();
    IdentityReport {
        identity: identity.to_string(),
        m,
        s,
        trials,
        passed,
        retries: outcomes.iter().map(|(_, r)| r).sum(),
        pass: passed == trials,
    }
}

/// `sum_r (-bd)^{r-1}[r-1]! q^{-r(r-1)/2} / prod_{p<r}(1+bg[m-1-p]) e_r(z_1, ..., q^{m-1} z_m)`.
fn block_symbol_lhs(p: &Params, z: &[Scalar]) -> Result<Scalar> {
    let m = z.len();
    let q = p.q();
    let stair = staircase(&q, z, &(1..=m).collect_vec());
    let neg_bd = -(&p.beta * &p.delta);
    let mut lhs = Scalar::zero();
    for r in 1..=m {
        let den = nonzero(prod((0..r).map(|i| p.hamiltonian_factor(m - 1 - i))))?;
        let tri = (r * (r - 1) / 2) as i64;
        lhs += powi(&neg_bd, r as i64 - 1)? * q_factorial(r - 1, &q) * powi(&q, -tri)? * esym(r, &stair) / den;
    }
    Ok(lhs)
}

/// The `(-d)^{r-1}[r-1]! / prod_{p=1}^{r}(1+bg[p-1])` prefactor.
fn rewritten_prefactor(p: &Params, r: usize) -> Result<Scalar> {
    let q = p.q();
    let den = nonzero(prod((1..=r).map(|i| p.hamiltonian_factor(i - 1))))?;
    Ok(powi(&-p.delta.clone(), r as i64 - 1)? * q_factorial(r - 1, &q) / den)
}

/// The shift part of a block symbol equals
/// `(1/b) sum_r prefactor(r) sum_{b_1<...<b_r} q^{sum(b_a - m)} (prod_a (a + b q^{a-1} z_{b_a}) - a^r)`.
pub fn verify_block_product_form(m: usize, trials: usize, seed: u64) -> IdentityReport {
    run("block-product-form", m, None, trials, seed, |rng| {
        let p = draw_params(rng, m)?;
        let z = draw_vec(rng, m);
        let q = p.q();
        let lhs = block_symbol_lhs(&p, &z)?;
        let mut rhs = Scalar::zero();
        for r in 1..=m {
            let pre = rewritten_prefactor(&p, r)?;
            for b in (1..=m).combinations(r) {
                let exp: i64 = b.iter().map(|&bp| bp as i64 - m as i64).sum();
                let mut qp = Scalar::one();
                let mut product = Scalar::one();
                for &bp in &b {
                    product *= &p.alpha + &p.beta * &qp * &z[bp - 1];
                    qp *= &q;
                }
                rhs += &pre * powi(&q, exp)? * (product - powi(&p.alpha, r as i64)?);
            }
        }
        Ok(lhs == checked_div(&rhs, &p.beta)?)
    })
}

/// `(1/b) sum_r prefactor(r) a^r sum_{b_1<...<b_r} q^{sum(b_a - m)} = (a/b) sum_{d<m} 1/(1 + bg[d])`.
pub fn verify_block_constant(m: usize, trials: usize, seed: u64) -> IdentityReport {
    run("block-constant", m, None, trials, seed, |rng| {
        let p = draw_params(rng, m)?;
        let q = p.q();
        let mut lhs = Scalar::zero();
        for r in 1..=m {
            let mut inner = Scalar::zero();
            for b in (1..=m).combinations(r) {
                inner += powi(&q, b.iter().map(|&bp| bp as i64 - m as i64).sum())?;
            }
            lhs += rewritten_prefactor(&p, r)? * powi(&p.alpha, r as i64)? * inner;
        }
        let lhs = checked_div(&lhs, &p.beta)?;
        let mut rhs = Scalar::zero();
        for d in 0..m {
            rhs += checked_inv(&p.hamiltonian_factor(d))?;
        }
        Ok(lhs == checked_div(&(&p.alpha * rhs), &p.beta)?)
    })
}

/// `sum_r (-d)^{r-1}[r-1]! sum_{c_1<...<c_r} q^{sum(c_a - m)}
///   prod_{a=1}^{r} z_{c_a} prod_{c_a < i < c_{a+1}} (q^a + d[a] z_i) = sum_i z_i`
/// with `c_{r+1} = m + 1`.
pub fn verify_block_shift_sum(m: usize, trials: usize, seed: u64) -> IdentityReport {
    run("block-shift-sum", m, None, trials, seed, |rng| {
        let q = nonzero(sampling::small_rational(rng))?;
        let delta = sampling::small_rational(rng);
        let z = draw_vec(rng, m);
        let mut lhs = Scalar::zero();
        for r in 1..=m {
            let lead = powi(&-delta.clone(), r as i64 - 1)? * q_factorial(r - 1, &q);
            for c in (1..=m).combinations(r) {
                let exp: i64 = c.iter().map(|&ca| ca as i64 - m as i64).sum();
                let mut term = powi(&q, exp)?;
                for a in 0..r {
                    let next = c.get(a + 1).copied().unwrap_or(m + 1);
                    let block = (a + 1) as i64;
                    let qa = powi(&q, block)?;
                    let da = &delta * q_integer(a + 1, &q);
                    term *= &z[c[a] - 1];
                    for i in c[a] + 1..next {
                        term *= &qa + &da * &z[i - 1];
                    }
                }
                lhs += &lead * term;
            }
        }
        Ok(lhs == z.iter().fold(Scalar::zero(), |a, b| a + b))
    })
}

/// `I_{m,s}(x, y) = sum_{r=0}^{m-s} [r+s-1]! ((q-1)x - y)^r / prod_{a=1}^{r+s}(x + [a-1]y)
///   sum_{b} q^{sum(b_a - m)} e_s(z_{b_1}, q z_{b_2}, ..., q^{r+s-1} z_{b_{r+s}})`.
fn i_function(m: usize, s: usize, q: &Scalar, x: &Scalar, y: &Scalar, z: &[Scalar]) -> Result<Scalar> {
    let mut total = Scalar::zero();
    let slope = (q - Scalar::one()) * x - y;
    for r in 0..=m - s {
        let den = nonzero(prod((1..=r + s).map(|a| x + q_integer(a - 1, q) * y)))?;
        let pre = q_factorial(r + s - 1, q) * powi(&slope, r as i64)? / den;
        for b in (1..=m).combinations(r + s) {
            let exp: i64 = b.iter().map(|&ba| ba as i64 - m as i64).sum();
            total += &pre * powi(q, exp)? * esym(s, &staircase(q, z, &b));
        }
    }
    Ok(total)
}

/// `I_{m,s}(x, y) = [s-1]! q^{-s(s-1)/2} / prod_{a=0}^{s-1}(x + [m-1-a]y) e_s(z_1, ..., q^{m-1} z_m)`.
pub fn verify_i_closed_form(m: usize, s: usize, trials: usize, seed: u64) -> IdentityReport {
    run("i-closed-form", m, Some(s), trials, seed, |rng| {
        if s == 0 || s > m {
            return Err(Error::ConstraintNotSatisfied("1 <= s <= m"));
        }
        let q = nonzero(sampling::small_rational(rng))?;
        let (x, y) = (sampling::small_rational(rng), sampling::small_rational(rng));
        let z = draw_vec(rng, m);
        let lhs = i_function(m, s, &q, &x, &y, &z)?;
        let den = nonzero(prod((0..s).map(|a| &x + q_integer(m - 1 - a, &q) * &y)))?;
        let tri = (s * (s - 1) / 2) as i64;
        let rhs = q_factorial(s - 1, &q) * powi(&q, -tri)? / den * esym(s, &staircase(&q, &z, &(1..=m).collect_vec()));
        Ok(lhs == rhs)
    })
}

/// `sum_{b_1<...<b_{r+s}} q^{sum b_a} e_s(z_{b_1}, ..., q^{r+s-1} z_{b_{r+s}})
///   = q^{s(s-1)/2} e_r(q^{s+1}, ..., q^m) e_s(q z_1, ..., q^m z_m)` for all `r + s <= m`.
pub fn verify_staircase_sum(m: usize, trials: usize, seed: u64) -> IdentityReport {
    run("staircase-sum", m, None, trials, seed, |rng| {
        let q = nonzero(sampling::small_rational(rng))?;
        let z = draw_vec(rng, m);
        let qz: Vec<Scalar> = z.iter().zip(q_powers(&q, 1, m as i64)?).map(|(a, b)| a * b).collect();
        for s in 0..=m {
            for r in 0..=m - s {
                let mut lhs = Scalar::zero();
                for b in (1..=m).combinations(r + s) {
                    let exp: i64 = b.iter().map(|&v| v as i64).sum();
                    lhs += powi(&q, exp)? * esym(s, &staircase(&q, &z, &b));
                }
                let tri = (s * s.saturating_sub(1) / 2) as i64;
                let rhs = powi(&q, tri)? * esym(r, &q_powers(&q, s as i64 + 1, m as i64)?) * esym(s, &qz);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })
}

/// `e_r(q^{s+1}, ..., q^b) - q^b e_{r-1}(q^{s+1}, ..., q^{b-1}) = e_r(q^{s+1}, ..., q^{b-1})`
/// for `0 <= s < b <= m`, `1 <= r <= b`.
pub fn verify_geometric_step(m: usize, trials: usize, seed: u64) -> IdentityReport {
    run("geometric-step", m, None, trials, seed, |rng| {
        let q = nonzero(sampling::small_rational(rng))?;
        for b in 1..=m as i64 {
            for s in 0..b {
                for r in 1..=b as usize {
                    let (lhs, rhs) = geometric_step_sides(&q, r, s, b)?;
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    })
}

fn geometric_step_sides(q: &Scalar, r: usize, s: i64, b: i64) -> Result<(Scalar, Scalar)> {
    let full = q_powers(q, s + 1, b)?;
    let short = q_powers(q, s + 1, b - 1)?;
    let lhs = esym(r, &full) - powi(q, b)? * esym(r - 1, &short);
    Ok((lhs, esym(r, &short)))
}

/// `J_{m,s}(x, y) = sum_{r=0}^{m-s} [r+s-1]! ((q-1)x - y)^r q^{-mr} / prod_{a=1}^{r+s}(x+[a-1]y)
///   e_r(q^{s+1}, ..., q^m) = q^{-s^2+ms} [s-1]! / prod_{a=0}^{s-1}(x + [m-1-a]y)` for `1 <= s <= m`.
pub fn verify_j_closed_form(m: usize, trials: usize, seed: u64) -> IdentityReport {
    run("j-closed-form", m, None, trials, seed, |rng| {
        let q = nonzero(sampling::small_rational(rng))?;
        let (x, y) = (sampling::small_rational(rng), sampling::small_rational(rng));
        let slope = (&q - Scalar::one()) * &x - &y;
        for s in 1..=m {
            let mut lhs = Scalar::zero();
            for r in 0..=m - s {
                let den = nonzero(prod((1..=r + s).map(|a| &x + q_integer(a - 1, &q) * &y)))?;
                lhs += q_factorial(r + s - 1, &q) * powi(&slope, r as i64)? * powi(&q, -((m * r) as i64))?
                    * esym(r, &q_powers(&q, s as i64 + 1, m as i64)?)
                    / den;
            }
            let den = nonzero(prod((0..s).map(|a| &x + q_integer(m - 1 - a, &q) * &y)))?;
            let exp = (m * s) as i64 - (s * s) as i64;
            let rhs = powi(&q, exp)? * q_factorial(s - 1, &q) / den;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

/// `K_m(x, y) = sum_{r=1}^{m} [r-1]! ((q-1)x - y)^{r-1} q^{-mr} / prod_{a=1}^{r}(x+[a-1]y) e_r(q, ..., q^m)`.
fn k_xy(m: usize, q: &Scalar, x: &Scalar, y: &Scalar) -> Result<Scalar> {
    let slope = (q - Scalar::one()) * x - y;
    let qs = q_powers(q, 1, m as i64)?;
    let mut total = Scalar::zero();
    for r in 1..=m {
        let den = nonzero(prod((1..=r).map(|a| x + q_integer(a - 1, q) * y)))?;
        total += q_factorial(r - 1, q) * powi(&slope, r as i64 - 1)? * powi(q, -((m * r) as i64))? * esym(r, &qs) / den;
    }
    Ok(total)
}

/// `K_m(x, y) = 1/x + K_{m-1}(x + y, qy)` and `K_m(x, y) = sum_{a=0}^{m-1} 1/(x + [a]y)`.
pub fn verify_k_xy(m: usize, trials: usize, seed: u64) -> IdentityReport {
    run("k-xy", m, None, trials, seed, |rng| {
        let q = nonzero(sampling::small_rational(rng))?;
        let (x, y) = (sampling::small_rational(rng), sampling::small_rational(rng));
        let k = k_xy(m, &q, &x, &y)?;
        let mut sum = Scalar::zero();
        for a in 0..m {
            sum += checked_inv(&(&x + q_integer(a, &q) * &y))?;
        }
        let recurrence = if m > 1 {
            k == checked_inv(&x)? + k_xy(m - 1, &q, &(&x + &y), &(&q * &y))?
        } else {
            true
        };
        Ok(recurrence && k == sum)
    })
}

/// `q^{-r(r-1)/2} e_r(1, q, ..., q^{m-1}) = prod_{p=0}^{r-1}[m-p] / [r]!` for all `r <= m`.
pub fn verify_q_binomial(m: usize, trials: usize, seed: u64) -> IdentityReport {
    run("q-binomial", m, None, trials, seed, |rng| {
        let q = nonzero(sampling::small_rational(rng))?;
        let qs = q_powers(&q, 0, m as i64 - 1)?;
        for r in 0..=m {
            let tri = (r * r.saturating_sub(1) / 2) as i64;
            let lhs = powi(&q, -tri)? * esym(r, &qs);
            let num = prod((0..r).map(|p| q_integer(m - p, &q)));
            if lhs != checked_div(&num, &q_factorial(r, &q))? {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

/// All intermediate identities for `m = 1..=m_max`.
pub fn verify_intermediates(m_max: usize, trials: usize, seed: u64) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for m in 1..=m_max {
        out.push(verify_staircase_sum(m, trials, seed));
        out.push(verify_geometric_step(m, trials, seed));
        out.push(verify_j_closed_form(m, trials, seed));
        out.push(verify_k_xy(m, trials, seed));
    }
    out
}

/// `K_m = -(1 + a/b) m + (1/b) sum_r (-d)^{r-1}[r-1]! q^{-(m-1)r} e_r(1, ..., q^{m-1})
///   prod_{p=1}^{r} (a + b q^{p-1}) / (1 + bg[p-1])`.
pub fn k_constant_rewritten(m: usize, p: &Params) -> Result<Scalar> {
    if p.beta.is_zero() {
        return Err(Error::BetaZero);
    }
    let q = p.q();
    let qs = q_powers(&q, 0, m as i64 - 1)?;
    let mut sum = Scalar::zero();
    for r in 1..=m {
        let mut factor = Scalar::one();
        for i in 1..=r {
            factor *= checked_div(
                &(&p.alpha + &p.beta * powi(&q, i as i64 - 1)?),
                &p.hamiltonian_factor(i - 1),
            )?;
        }
        sum += powi(&-p.delta.clone(), r as i64 - 1)?
            * q_factorial(r - 1, &q)
            * powi(&q, -((m as i64 - 1) * r as i64))?
            * esym(r, &qs)
            * factor;
    }
    let lead = -(Scalar::one() + checked_div(&p.alpha, &p.beta)?) * int(m as i64);
    Ok(lead + checked_div(&sum, &p.beta)?)
}

/// `K_m - K_{m-1} = -(a+b)(c+d)/(1+bg) sum_{r=1}^{m-1} (-d)^{r-1}[r]! q^{-(m-2)r}
///   e_r(1, ..., q^{m-2}) prod_{p=2}^{r} (a + b q^{p-1}) / (1 + bg[p])`.
pub fn k_difference(m: usize, p: &Params) -> Result<Scalar> {
    let q = p.q();
    let qs = q_powers(&q, 0, m as i64 - 2)?;
    let mut sum = Scalar::zero();
    for r in 1..m {
        let mut factor = Scalar::one();
        for i in 2..=r {
            factor *= checked_div(
                &(&p.alpha + &p.beta * powi(&q, i as i64 - 1)?),
                &p.hamiltonian_factor(i),
            )?;
        }
        sum += powi(&-p.delta.clone(), r as i64 - 1)?
            * q_factorial(r, &q)
            * powi(&q, -((m as i64 - 2) * r as i64))?
            * esym(r, &qs)
            * factor;
    }
    let lead = -(&p.alpha + &p.beta) * (&p.gamma + &p.delta);
    Ok(checked_div(&lead, &p.hamiltonian_factor(1))? * sum)
}

/// Checks the rewritten `K_m` against the defining sum and the difference
/// formula for `K_m - K_{m-1}` (`m >= 2`).
pub fn verify_k_recurrence(m: usize, trials: usize, seed: u64) -> IdentityReport {
    run("k-recurrence", m, None, trials, seed, |rng| {
        if m < 2 {
            return Err(Error::ConstraintNotSatisfied("m >= 2"));
        }
        let p = draw_params(rng, m)?;
        let km = k_constant(m, &p)?;
        let km1 = k_constant(m - 1, &p)?;
        Ok(km == k_constant_rewritten(m, &p)? && &km - &km1 == k_difference(m, &p)?)
    })
}

/// Every identity for `m <= m_max`, each with `trials` trials.
pub fn verify_all(m_max: usize, trials: usize, seed: u64) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for m in 1..=m_max {
        out.push(verify_block_product_form(m, trials, seed));
        out.push(verify_block_constant(m, trials, seed));
        out.push(verify_block_shift_sum(m, trials, seed));
        for s in 1..=m {
            out.push(verify_i_closed_form(m, s, trials, seed));
        }
        out.push(verify_q_binomial(m, trials, seed));
        if m >= 2 {
            out.push(verify_k_recurrence(m, trials, seed));
        }
    }
    out.extend(verify_intermediates(m_max, trials, seed));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn elementary_symmetric_examples() {
        let v = [int(1), int(2), int(3)];
        assert_eq!(elementary_symmetric(0, &v).unwrap(), int(1));
        assert_eq!(elementary_symmetric(0, &[]).unwrap(), int(1));
        assert_eq!(elementary_symmetric(2, &v).unwrap(), int(11));
        assert_eq!(elementary_symmetric(3, &v).unwrap(), int(6));
        assert!(elementary_symmetric(4, &v).is_err());
    }

    #[test]
    fn small_cases_pass() {
        for m in 1..=3 {
            assert!(verify_block_product_form(m, 5, 1).pass);
            assert!(verify_block_constant(m, 5, 1).pass);
            assert!(verify_block_shift_sum(m, 5, 1).pass);
            assert!(verify_q_binomial(m, 5, 1).pass);
            for s in 1..=m {
                assert!(verify_i_closed_form(m, s, 5, 1).pass, "i m={m} s={s}");
            }
        }
        assert!(verify_k_recurrence(2, 5, 1).pass);
        assert!(verify_k_recurrence(3, 5, 1).pass);
        assert!(verify_intermediates(3, 5, 1).iter().all(|r| r.pass));
    }

    #[test]
    fn invalid_ranges_fail_without_panicking() {
        let r = verify_i_closed_form(2, 3, 2, 1);
        assert!(!r.pass);
        assert_eq!(r.passed, 0);
        assert!(!verify_k_recurrence(1, 2, 1).pass);
    }

    #[test]
    fn geometric_step_opposite_sign_is_negated() {
        // q^b e_{r-1}(q^{s+1..b-1}) - e_r(q^{s+1..b}) equals minus e_r(q^{s+1..b-1}).
        let q = ratio(-3, 5);
        for b in 2..6 {
            for s in 0..b - 1 {
                for r in 1..=b as usize {
                    let (lhs, rhs) = geometric_step_sides(&q, r, s, b).unwrap();
                    assert_eq!(lhs, rhs);
                    let printed = powi(&q, b).unwrap() * esym(r - 1, &q_powers(&q, s + 1, b - 1).unwrap())
                        - esym(r, &q_powers(&q, s + 1, b).unwrap());
                    assert_eq!(printed, -rhs);
                }
            }
        }
    }

    #[test]
    fn reports_serialize() {
        let r = verify_block_constant(2, 3, 9);
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["identity"], "block-constant");
        assert_eq!(v["trials"], 3);
        assert_eq!(v["pass"], true);
    }

    #[test]
    fn deterministic_reports() {
        assert_eq!(verify_block_shift_sum(4, 10, 5), verify_block_shift_sum(4, 10, 5));
    }
}
