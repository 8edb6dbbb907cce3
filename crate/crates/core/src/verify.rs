//! Randomized exact verification suites.
//!
//! Each check runs its trials on independent random streams derived from the
//! seed and the check name, so results depend only on `(seed, config)` and
//! not on scheduling. Every comparison is an exact equality of rationals.

use num_traits::{One, Zero};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::LatticeFunction;
use crate::hamiltonian::{apply_delta, apply_h, apply_h_global, apply_h_rewritten, propagate, BetheFunction};
use crate::identities::{self, IdentityReport};
use crate::laurent::LaurentPolynomial;
use crate::lattice::{descent_counts, q_integer, LatticePoint};
use crate::operators::{
    apply_t, apply_x, apply_x_inv, apply_x_polynomial, delta_function, elementary_symmetric_in_x, pairing,
    right_apply_t, right_apply_x, right_apply_x_inv, symmetric_delta,
};
use crate::params::Params;
use crate::sampling::{self, rng_stream, SampleRng, Stratum, MAX_ATTEMPTS};
use crate::scalar::{int, powi, ratio, Scalar};
use crate::stochastic::{
    apply_generator, jump_rate, k_constant, specialize_h, Branch, ParticleConfig, PsiFunction, StochasticParams,
};

pub const SCHEMA: u32 = 1;

/// One line of suite output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub schema: u32,
    pub suite: String,
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    pub trials: usize,
    pub passed: usize,
    pub retries: usize,
    pub pass: bool,
}

impl CheckRecord {
    fn from_identity(r: IdentityReport) -> Self {
        CheckRecord {
            schema: SCHEMA,
            suite: Suite::Identities.name().to_string(),
            check: r.identity,
            k: None,
            m: Some(r.m),
            s: r.s,
            trials: r.trials,
            passed: r.passed,
            retries: r.retries,
            pass: r.pass,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Algebra,
    Duality,
    Theorem,
    Hamiltonian,
    Bethe,
    Identities,
    Stochastic,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Algebra,
        Suite::Duality,
        Suite::Theorem,
        Suite::Hamiltonian,
        Suite::Bethe,
        Suite::Identities,
        Suite::Stochastic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Duality => "duality",
            Suite::Theorem => "theorem",
            Suite::Hamiltonian => "hamiltonian",
            Suite::Bethe => "bethe",
            Suite::Identities => "identities",
            Suite::Stochastic => "stochastic",
        }
    }
}

/// Settings shared by all suites.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Restrict to one rank; `None` uses each suite's default ranks.
    pub k: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Fixed constants for the unconstrained checks; sampled when `None`.
    pub params: Option<Params>,
    pub m_max: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            k: None,
            trials: 100,
            seed: 0,
            params: None,
            m_max: 6,
        }
    }
}

impl SuiteConfig {
    fn ranks(&self, default: &[usize]) -> Vec<usize> {
        match self.k {
            Some(k) => vec![k],
            None => default.to_vec(),
        }
    }

    /// Rejects fixed constants that break the standing assumption at the
    /// ranks a suite will use.
    fn check_params(&self, ranks: &[usize]) -> Result<()> {
        if let Some(p) = &self.params {
            let k = ranks.iter().copied().max().unwrap_or(1);
            if p.q().is_zero() {
                return Err(Error::DivisionByZero);
            }
            p.check_standing_assumption(k)?;
        }
        Ok(())
    }

    fn draw(&self, rng: &mut SampleRng, k: usize, stratum: Stratum) -> Result<Params> {
        match &self.params {
            Some(p) => Ok(p.with_k(k)),
            None => sampling::params(rng, k, stratum),
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    match suite {
        Suite::Algebra => algebra(cfg),
        Suite::Duality => duality(cfg),
        Suite::Theorem => theorem(cfg),
        Suite::Hamiltonian => hamiltonian(cfg),
        Suite::Bethe => bethe(cfg),
        Suite::Identities => Ok(identities_suite(cfg)),
        Suite::Stochastic => stochastic(cfg),
    }
}

pub fn run_all(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for s in Suite::ALL {
        out.extend(run_suite(s, cfg)?);
    }
    Ok(out)
}

fn stream_base(seed: u64, suite: &str, check: &str, k: usize) -> u64 {
    // FNV-1a over the check identity, mixed into the seed.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in suite.bytes().chain([0]).chain(check.bytes()).chain([0, k as u8]) {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    seed ^ h
}

fn check<F>(suite: Suite, name: &str, k: Option<usize>, trials: usize, seed: u64, trial: F) -> CheckRecord
where
    F: Fn(&mut SampleRng, usize) -> Result<bool> + Sync,
{
    let base = stream_base(seed, suite.name(), name, k.unwrap_or(0));
    let outcomes: Vec<(bool, usize)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_stream(base, i as u64);
            let mut retries = 0;
            for _ in 0..MAX_ATTEMPTS {
                match trial(&mut rng, i) {
                    Ok(ok) => return (ok, retries),
                    Err(Error::DivisionByZero | Error::SamplingExhausted(_)) => retries += 1,
                    Err(_) => return (false, retries),
                }
            }
            (false, retries)
        })
        .collect();
    let passed = outcomes.iter().filter(|o| o.0).count();
    CheckRecord {
        schema: SCHEMA,
        suite: suite.name().to_string(),
        check: name.to_string(),
        k,
        m: None,
        s: None,
        trials,
        passed,
        retries: outcomes.iter().map(|o| o.1).sum(),
        pass: passed == trials,
    }
}

fn pt(rng: &mut SampleRng, k: usize, lo: i64, hi: i64) -> LatticePoint {
    sampling::lattice_point(rng, k, lo, hi)
}

/// A function with generic values: a random quadratic plus a product term
/// plus a spike at a random point.
pub fn random_probe(rng: &mut SampleRng, k: usize) -> LatticeFunction {
    let coeffs: Vec<[Scalar; 3]> = (0..k)
        .map(|_| [(); 3].map(|_| sampling::small_rational(rng)))
        .collect();
    let spike = pt(rng, k, -2, 2);
    let height = sampling::nonzero_rational(rng);
    LatticeFunction::memoized(k, move |x| {
        let mut v = Scalar::zero();
        let mut prod = Scalar::one();
        for (i, [a, b, c]) in coeffs.iter().enumerate() {
            let xi = int(x[i]);
            v += a * &xi * &xi + b * &xi;
            prod *= Scalar::one() + c * xi;
        }
        if *x == spike {
            v += &height;
        }
        v + prod
    })
}

/// A random point a couple of reflections and one unit step away from `y`.
/// Operators built from the generators move a delta function only that far,
/// so uniform points would almost always compare 0 with 0.
fn near(rng: &mut SampleRng, y: &LatticePoint) -> LatticePoint {
    let k = y.rank();
    let mut x = y.shifted(rng.random_range(1..=k), rng.random_range(-1..=1));
    if k >= 2 {
        for _ in 0..rng.random_range(0..=2) {
            x = x.reflected(rng.random_range(1..k));
        }
    }
    x
}

/// A generic function of the sorted coordinates, hence symmetric.
fn symmetric_probe(rng: &mut SampleRng, k: usize) -> LatticeFunction {
    let g = random_probe(rng, k);
    LatticeFunction::new(k, move |x| g.eval(&x.sorted_dominant()))
}

const STRATA: [Stratum; 5] = [
    Stratum::Generic,
    Stratum::BetaZero,
    Stratum::GammaZero,
    Stratum::AlphaPlusBetaZero,
    Stratum::GammaPlusDeltaZero,
];

fn stratum_for(i: usize) -> Stratum {
    STRATA[i % STRATA.len()]
}

// ---------------------------------------------------------------- algebra

enum LeftOp {
    X(usize),
    T(usize),
}

fn left(ops: &[LeftOp], f: &LatticeFunction, p: &Params) -> Result<LatticeFunction> {
    // Operators act right to left, as written.
    ops.iter().rev().try_fold(f.clone(), |g, op| match *op {
        LeftOp::X(i) => apply_x(i, &g),
        LeftOp::T(i) => apply_t(i, &g, p),
    })
}

fn algebra(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let ranks = cfg.ranks(&[2, 3, 4]);
    cfg.check_params(&ranks)?;
    let s = Suite::Algebra;
    let mut out = Vec::new();
    for &k in &ranks {
        if k < 2 {
            continue;
        }
        let n = cfg.trials;
        let setup = |rng: &mut SampleRng, i: usize| -> Result<(Params, LatticeFunction, LatticePoint)> {
            let p = cfg.draw(rng, k, stratum_for(i))?;
            let y = pt(rng, k, -2, 2);
            let x = near(rng, &y);
            Ok((p, delta_function(&y), x))
        };
        out.push(check(s, "quadratic", Some(k), n, cfg.seed, |rng, i| {
            let (p, f, x) = setup(rng, i)?;
            let j = rng.random_range(1..k);
            let tf = apply_t(j, &f, &p)?;
            let ttf = apply_t(j, &tf, &p)?;
            let q = p.q();
            Ok(ttf.eval(&x) + (&q - Scalar::one()) * tf.eval(&x) - q * f.eval(&x) == Scalar::zero())
        }));
        if k >= 3 {
            out.push(check(s, "braid", Some(k), n, cfg.seed, |rng, i| {
                let (p, f, x) = setup(rng, i)?;
                let j = rng.random_range(1..k - 1);
                let a = left(&[LeftOp::T(j), LeftOp::T(j + 1), LeftOp::T(j)], &f, &p)?;
                let b = left(&[LeftOp::T(j + 1), LeftOp::T(j), LeftOp::T(j + 1)], &f, &p)?;
                Ok(a.eval(&x) == b.eval(&x))
            }));
        }
        if k >= 4 {
            out.push(check(s, "t-commute", Some(k), n, cfg.seed, |rng, i| {
                let (p, f, x) = setup(rng, i)?;
                let a = rng.random_range(1..k - 2);
                let b = rng.random_range(a + 2..k);
                let l = left(&[LeftOp::T(a), LeftOp::T(b)], &f, &p)?;
                let r = left(&[LeftOp::T(b), LeftOp::T(a)], &f, &p)?;
                Ok(l.eval(&x) == r.eval(&x))
            }));
        }
        out.push(check(s, "x-commute", Some(k), n, cfg.seed, |rng, i| {
            let (p, f, x) = setup(rng, i)?;
            let (a, b) = (rng.random_range(1..=k), rng.random_range(1..=k));
            let l = left(&[LeftOp::X(a), LeftOp::X(b)], &f, &p)?;
            let r = left(&[LeftOp::X(b), LeftOp::X(a)], &f, &p)?;
            Ok(l.eval(&x) == r.eval(&x))
        }));
        if k >= 3 {
            out.push(check(s, "x-t-commute", Some(k), n, cfg.seed, |rng, i| {
                let (p, f, x) = setup(rng, i)?;
                let j = rng.random_range(1..k);
                let others: Vec<usize> = (1..=k).filter(|&a| a != j && a != j + 1).collect();
                let a = *others.choose(rng).expect("k >= 3");
                let l = left(&[LeftOp::X(a), LeftOp::T(j)], &f, &p)?;
                let r = left(&[LeftOp::T(j), LeftOp::X(a)], &f, &p)?;
                Ok(l.eval(&x) == r.eval(&x))
            }));
        }
        out.push(check(s, "cross", Some(k), n, cfg.seed, |rng, i| {
            let (p, f, x) = setup(rng, i)?;
            let j = rng.random_range(1..k);
            let ev = |ops: &[LeftOp]| -> Result<Scalar> { Ok(left(ops, &f, &p)?.eval(&x)) };
            let lhs1 = ev(&[LeftOp::X(j + 1), LeftOp::T(j)])? - ev(&[LeftOp::T(j), LeftOp::X(j)])?;
            let lhs2 = ev(&[LeftOp::T(j), LeftOp::X(j + 1)])? - ev(&[LeftOp::X(j), LeftOp::T(j)])?;
            let rhs = &p.alpha * &p.gamma * f.eval(&x)
                + &p.alpha * &p.delta * ev(&[LeftOp::X(j + 1)])?
                + &p.beta * &p.gamma * ev(&[LeftOp::X(j)])?
                + &p.beta * &p.delta * ev(&[LeftOp::X(j), LeftOp::X(j + 1)])?;
            Ok(lhs1 == rhs && lhs2 == rhs)
        }));
        out.push(check(s, "symmetric-central", Some(k), n, cfg.seed, |rng, i| {
            let (p, f, x) = setup(rng, i)?;
            let j = rng.random_range(1..k);
            let r = rng.random_range(1..=k);
            let e = elementary_symmetric_in_x(k, r);
            let a = apply_x_polynomial(&e, &apply_t(j, &f, &p)?);
            let b = apply_t(j, &apply_x_polynomial(&e, &f), &p)?;
            Ok(a.eval(&x) == b.eval(&x))
        }));
        if k <= 3 {
            out.push(right_relations(cfg, k));
        }
    }
    Ok(out)
}

enum RightOp {
    X(usize),
    T(usize),
}

fn right(p: &LaurentPolynomial, ops: &[RightOp], params: &Params) -> Result<LaurentPolynomial> {
    // P.(A B) = (P.A).B
    ops.iter().try_fold(p.clone(), |acc, op| match *op {
        RightOp::X(i) => right_apply_x(&acc, i),
        RightOp::T(i) => right_apply_t(&acc, i, params),
    })
}

/// Every relation on every monomial `e^x`, `x in [-2, 2]^k`.
fn right_relations(cfg: &SuiteConfig, k: usize) -> CheckRecord {
    let monomials: Vec<LatticePoint> = (0..5usize.pow(k as u32))
        .map(|mut n| {
            LatticePoint::new(
                (0..k)
                    .map(|_| {
                        let d = (n % 5) as i64 - 2;
                        n /= 5;
                        d
                    })
                    .collect(),
            )
        })
        .collect();
    let s = Suite::Algebra;
    check(s, "right-action-relations", Some(k), monomials.len(), cfg.seed, |rng, i| {
        let p = cfg.draw(rng, k, stratum_for(i))?;
        let m = LaurentPolynomial::monomial(monomials[i].clone(), Scalar::one());
        let q = p.q();
        let r = |ops: &[RightOp]| right(&m, ops, &p);
        let mut ok = true;
        for j in 1..k {
            let quad = &(&r(&[RightOp::T(j), RightOp::T(j)])? + &r(&[RightOp::T(j)])?.scale(&(&q - Scalar::one())))
                - &m.scale(&q);
            ok &= quad.is_zero();
            let lhs1 = &r(&[RightOp::X(j + 1), RightOp::T(j)])? - &r(&[RightOp::T(j), RightOp::X(j)])?;
            let lhs2 = &r(&[RightOp::T(j), RightOp::X(j + 1)])? - &r(&[RightOp::X(j), RightOp::T(j)])?;
            let rhs = &(&(&m.scale(&(&p.alpha * &p.gamma))
                + &r(&[RightOp::X(j + 1)])?.scale(&(&p.alpha * &p.delta)))
                + &r(&[RightOp::X(j)])?.scale(&(&p.beta * &p.gamma)))
                + &r(&[RightOp::X(j), RightOp::X(j + 1)])?.scale(&(&p.beta * &p.delta));
            ok &= lhs1 == rhs && lhs2 == rhs;
            for a in (1..=k).filter(|&a| a != j && a != j + 1) {
                ok &= r(&[RightOp::X(a), RightOp::T(j)])? == r(&[RightOp::T(j), RightOp::X(a)])?;
            }
            if j + 1 < k {
                let b1 = r(&[RightOp::T(j), RightOp::T(j + 1), RightOp::T(j)])?;
                let b2 = r(&[RightOp::T(j + 1), RightOp::T(j), RightOp::T(j + 1)])?;
                ok &= b1 == b2;
            }
        }
        for a in 1..=k {
            for b in 1..=k {
                ok &= r(&[RightOp::X(a), RightOp::X(b)])? == r(&[RightOp::X(b), RightOp::X(a)])?;
            }
        }
        Ok(ok)
    })
}

// ---------------------------------------------------------------- duality

fn duality(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let ranks = cfg.ranks(&[2, 3, 4]);
    cfg.check_params(&ranks)?;
    let s = Suite::Duality;
    let mut out = Vec::new();
    for &k in &ranks {
        let setup = |rng: &mut SampleRng, i: usize| -> Result<(Params, LaurentPolynomial, LatticeFunction)> {
            let p = cfg.draw(rng, k, stratum_for(i))?;
            let x = pt(rng, k, -2, 2);
            let y = near(rng, &x);
            Ok((p, LaurentPolynomial::monomial(x, Scalar::one()), delta_function(&y)))
        };
        out.push(check(s, "pairing-x", Some(k), cfg.trials, cfg.seed, |rng, i| {
            let (_, m, f) = setup(rng, i)?;
            let j = rng.random_range(1..=k);
            Ok(pairing(&right_apply_x(&m, j)?, &f) == pairing(&m, &apply_x(j, &f)?)
                && pairing(&right_apply_x_inv(&m, j)?, &f) == pairing(&m, &apply_x_inv(j, &f)?))
        }));
        if k >= 2 {
            out.push(check(s, "pairing-t", Some(k), cfg.trials, cfg.seed, |rng, i| {
                let (p, m, f) = setup(rng, i)?;
                let j = rng.random_range(1..k);
                Ok(pairing(&right_apply_t(&m, j, &p)?, &f) == pairing(&m, &apply_t(j, &f, &p)?))
            }));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- theorem

fn theorem(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let ranks = cfg.ranks(&[2, 3, 4]);
    cfg.check_params(&ranks)?;
    let mut out = Vec::new();
    for &k in &ranks {
        out.push(check(Suite::Theorem, "hg-equals-g-delta", Some(k), cfg.trials, cfg.seed, |rng, i| {
            let p = cfg.draw(rng, k, stratum_for(i))?;
            let y = pt(rng, k, -3, 3);
            // Uniform x mostly sees 0 = 0; every other trial starts near the orbit of y.
            let x = if i % 2 == 0 {
                pt(rng, k, -3, 3)
            } else {
                let mut c = y.coords().to_vec();
                c.shuffle(rng);
                LatticePoint::new(c.into_iter().map(|v| (v + rng.random_range(0..=1)).clamp(-3, 3)).collect())
            };
            let f = delta_function(&y);
            let hg = apply_h(&propagate(&f, &p), &p)?;
            let gd = propagate(&apply_delta(&f), &p);
            Ok(hg.eval(&x) == gd.eval(&x))
        }));
    }
    Ok(out)
}

// ---------------------------------------------------------------- hamiltonian

/// Points with many repeated coordinates, so that large blocks occur.
fn clustered_point(rng: &mut SampleRng, k: usize) -> LatticePoint {
    pt(rng, k, -1, 1)
}

fn hamiltonian(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let ranks = cfg.ranks(&[2, 3, 4]);
    cfg.check_params(&ranks)?;
    let s = Suite::Hamiltonian;
    let mut out = Vec::new();
    for &k in &ranks {
        out.push(check(s, "global-vs-cluster", Some(k), cfg.trials, cfg.seed, |rng, i| {
            let p = cfg.draw(rng, k, stratum_for(i))?;
            let f = random_probe(rng, k);
            let x = clustered_point(rng, k);
            Ok(apply_h(&f, &p)?.eval(&x) == apply_h_global(&f, &p)?.eval(&x))
        }));
        if cfg.params.as_ref().is_none_or(|p| !p.beta.is_zero()) {
            out.push(check(s, "rewritten-vs-cluster", Some(k), cfg.trials, cfg.seed, |rng, _| {
                let p = cfg.draw(rng, k, Stratum::Generic)?;
                let f = random_probe(rng, k);
                let x = clustered_point(rng, k);
                Ok(apply_h(&f, &p)?.eval(&x) == apply_h_rewritten(&f, &p)?.eval(&x))
            }));
        }
        out.push(check(s, "beta-zero-closed-form", Some(k), cfg.trials, cfg.seed, |rng, _| {
            let p = sampling::params(rng, k, Stratum::BetaZero)?;
            let f = random_probe(rng, k);
            let x = clustered_point(rng, k);
            let (dp, dm) = descent_counts(&x);
            let q = p.q();
            let ag = &p.alpha * &p.gamma;
            let mut expected = Scalar::zero();
            for j in 0..k {
                let shifted = f.eval(&x.shifted(j + 1, -1));
                expected += powi(&q, dm[j] as i64)? * (shifted - &ag * int(dp[j] as i64) * f.eval(&x));
            }
            Ok(apply_h(&f, &p)?.eval(&x) == expected)
        }));
        if k >= 2 {
            out.push(check(s, "w-invariance", Some(k), cfg.trials, cfg.seed, |rng, i| {
                let p = cfg.draw(rng, k, stratum_for(i))?;
                let y = pt(rng, k, -2, 2);
                let f = symmetric_delta(&y).add(&symmetric_probe(rng, k));
                let x = clustered_point(rng, k);
                let j = rng.random_range(1..k);
                let h = apply_h(&f, &p)?;
                Ok(h.eval(&x.reflected(j)) == h.eval(&x))
            }));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- bethe

fn spectrum(rng: &mut SampleRng, k: usize) -> Result<Vec<Scalar>> {
    sampling::distinct_rationals(rng, k, &[Scalar::zero()])
}

/// Stochastic `(s, q)` with `s >= 0` and `0 < q < 1`.
pub fn random_stochastic_params(rng: &mut SampleRng) -> StochasticParams {
    let s = ratio(rng.random_range(0..=9), rng.random_range(1..=9));
    let den = rng.random_range(2..=9);
    let q = ratio(rng.random_range(1..den), den);
    StochasticParams::new(s, q).expect("sampled in range")
}

fn bethe(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let ranks = cfg.ranks(&[1, 2, 3]);
    cfg.check_params(&ranks)?;
    let s = Suite::Bethe;
    let n = cfg.trials.max(20);
    let mut out = Vec::new();
    for &k in &ranks {
        out.push(check(s, "phi-eigenfunction", Some(k), n, cfg.seed, |rng, i| {
            let p = cfg.draw(rng, k, stratum_for(i))?;
            let b = BetheFunction::new(&spectrum(rng, k)?, &p)?;
            let phi = b.to_function();
            let x = sampling::dominant_point(rng, k, -3, 3);
            Ok(apply_h(&phi, &p)?.eval(&x) == b.eigenvalue() * phi.eval(&x))
        }));
        out.push(check(s, "propagated-plane-wave", Some(k), n, cfg.seed, |rng, i| {
            let p = cfg.draw(rng, k, stratum_for(i))?;
            let b = BetheFunction::new(&spectrum(rng, k)?, &p)?;
            let x = pt(rng, k, -2, 2);
            Ok(propagate(&b.to_plane_wave_function(), &p).eval(&x) == b.value(&x))
        }));
        if k >= 2 {
            out.push(check(s, "plane-wave-t-invariant", Some(k), n, cfg.seed, |rng, i| {
                let p = cfg.draw(rng, k, stratum_for(i))?;
                let b = BetheFunction::new(&spectrum(rng, k)?, &p)?;
                let h = b.to_plane_wave_function();
                let x = pt(rng, k, -3, 3);
                let j = rng.random_range(1..k);
                Ok(apply_t(j, &h, &p)?.eval(&x) == h.eval(&x))
            }));
        }
        out.push(check(s, "psi-eigenfunction", Some(k), n, cfg.seed, |rng, _| {
            let sp = random_stochastic_params(rng);
            let nu = sp.nu()?;
            let mut forbidden = vec![Scalar::one()];
            if !nu.is_zero() {
                forbidden.push(Scalar::one() / &nu);
            }
            let psi = PsiFunction::new(&sampling::distinct_rationals(rng, k, &forbidden)?, &sp)?;
            let f = LatticeFunction::new(k, {
                let psi = psi.clone();
                move |x| psi.value(x)
            });
            let x = ParticleConfig::from_point(sampling::dominant_point(rng, k, -3, 3))?;
            Ok(apply_generator(&f, &x, &sp)? == psi.eigenvalue() * f.eval(x.point()))
        }));
        out.push(check(s, "phi-psi-consistency", Some(k), n, cfg.seed, |rng, _| {
            let p = sampling::params(rng, k, Stratum::GammaPlusDeltaZero)?;
            // The change of variables z -> p is constant when alpha + beta = 0.
            if (&p.alpha + &p.beta).is_zero() {
                return Err(Error::DivisionByZero);
            }
            let sp = specialize_h(Branch::GammaPlusDeltaZero, &p)?;
            let nu = sp.nu()?;
            let mut forbidden = vec![Scalar::one(), -&p.alpha / &p.beta];
            if !nu.is_zero() {
                forbidden.push(Scalar::one() / &nu);
            }
            let z = sampling::distinct_rationals(rng, k, &forbidden)?;
            let spectral: Vec<Scalar> = z
                .iter()
                .map(|zi| (Scalar::one() - zi) / (Scalar::one() + &p.beta * zi / &p.alpha))
                .collect();
            let phi = BetheFunction::new(&spectral, &p)?;
            let psi = PsiFunction::new(&z, &sp)?;
            let x = sampling::dominant_point(rng, k, -3, 3);
            Ok(phi.value(&x) == psi.value(&x))
        }));
    }
    Ok(out)
}

// ---------------------------------------------------------------- identities

fn identities_suite(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    identities::verify_all(cfg.m_max, cfg.trials, cfg.seed)
        .into_iter()
        .map(CheckRecord::from_identity)
        .collect()
}

// ---------------------------------------------------------------- stochastic

fn stochastic(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let ranks = cfg.ranks(&[1, 2, 3]);
    let s = Suite::Stochastic;
    let mut out = Vec::new();

    let grid: Vec<(Scalar, Scalar)> = [ratio(0, 1), ratio(1, 4), int(1), int(4)]
        .into_iter()
        .flat_map(|s| [ratio(1, 10), ratio(1, 2), ratio(9, 10)].map(|q| (s.clone(), q)))
        .collect();
    out.push(check(s, "rates-nonnegative", None, grid.len(), cfg.seed, |_, i| {
        let sp = StochasticParams::new(grid[i].0.clone(), grid[i].1.clone())?;
        for c in 1..=12 {
            for r in 1..=c {
                if jump_rate(c, r, &sp)? < Scalar::zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }));

    for &k in &ranks {
        out.push(check(s, "generator-conservative", Some(k), cfg.trials, cfg.seed, |rng, _| {
            let sp = random_stochastic_params(rng);
            let c = LatticeFunction::constant(k, sampling::small_rational(rng));
            let x = ParticleConfig::from_point(sampling::dominant_point(rng, k, -3, 3))?;
            Ok(apply_generator(&c, &x, &sp)?.is_zero())
        }));
    }

    out.push(check(s, "k-vanishing", None, cfg.trials, cfg.seed, |rng, i| {
        let stratum = if i % 2 == 0 {
            Stratum::AlphaPlusBetaZero
        } else {
            Stratum::GammaPlusDeltaZero
        };
        let p = sampling::params(rng, 10, stratum)?;
        for m in 1..=10 {
            if !k_constant(m, &p)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }));
    out.push(check(s, "k2-nonzero-off-branches", None, cfg.trials, cfg.seed, |rng, _| {
        let p = sampling::params(rng, 2, Stratum::Generic)?;
        let product = (&p.alpha + &p.beta) * (&p.gamma + &p.delta);
        if product.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(!k_constant(2, &p)?.is_zero())
    }));

    for (branch, name, stratum) in [
        (Branch::AlphaPlusBetaZero, "specialization-alpha-plus-beta", Stratum::AlphaPlusBetaZero),
        (Branch::GammaPlusDeltaZero, "specialization-gamma-plus-delta", Stratum::GammaPlusDeltaZero),
    ] {
        for &k in &ranks {
            out.push(check(s, name, Some(k), cfg.trials.max(30), cfg.seed, |rng, _| {
                let p = sampling::params(rng, k, stratum)?;
                let sp = specialize_h(branch, &p)?;
                let f = symmetric_probe(rng, k);
                let x = ParticleConfig::from_point(sampling::dominant_point(rng, k, -2, 2))?;
                let lhs = apply_h(&f, &p)?.eval(x.point()) - int(k as i64) * f.eval(x.point());
                Ok(lhs == apply_generator(&f, &x, &sp)?)
            }));
        }
    }

    out.push(check(s, "q-boson-reduction", None, cfg.trials, cfg.seed, |rng, i| {
        // s = beta*gamma = 0 on the gamma + delta = 0 branch.
        let mut p = sampling::params(rng, 6, Stratum::GammaPlusDeltaZero)?;
        if i % 2 == 0 {
            p.beta = Scalar::zero();
        } else {
            p.gamma = Scalar::zero();
            p.delta = Scalar::zero();
        }
        let sp = specialize_h(Branch::GammaPlusDeltaZero, &p)?;
        if !sp.s().is_zero() {
            return Ok(false);
        }
        for c in 1..=6 {
            for r in 1..=c {
                let expected = if r == 1 { q_integer(c, sp.q()) } else { Scalar::zero() };
                if jump_rate(c, r, &sp)? != expected {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }));
    Ok(out)
}
