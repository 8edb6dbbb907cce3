//! Seeded random sampling of small rationals, parameters and lattice points.
//!
//! Numerators are uniform in `[-9, 9]` and denominators in `[1, 9]`, which
//! keeps big-integer growth bounded while random-point identity testing stays
//! conclusive.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::LatticePoint;
use crate::params::Params;
use crate::scalar::{ratio, Scalar};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `stream` derived from `seed`.
pub fn rng_stream(seed: u64, stream: u64) -> SampleRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub const MAX_ATTEMPTS: usize = 10_000;

pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    ratio(rng.random_range(-9..=9), rng.random_range(1..=9))
}

pub fn nonzero_rational<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    loop {
        let x = small_rational(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Which degenerate stratum of parameter space to sample from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stratum {
    /// All four constants generic.
    Generic,
    /// `beta = 0`.
    BetaZero,
    /// `beta*gamma = 0` via `gamma = 0` with `beta != 0`.
    GammaZero,
    /// `alpha + beta = 0`.
    AlphaPlusBetaZero,
    /// `gamma + delta = 0`.
    GammaPlusDeltaZero,
}

/// Samples parameters satisfying the standing assumption up to `k`,
/// resampling on violation.
pub fn params<R: Rng + ?Sized>(rng: &mut R, k: usize, stratum: Stratum) -> Result<Params> {
    for _ in 0..MAX_ATTEMPTS {
        let [a, b, c, d] = [(); 4].map(|_| nonzero_rational(rng));
        let (a, b, c, d) = match stratum {
            Stratum::Generic => (a, b, c, d),
            Stratum::BetaZero => (a, Scalar::zero(), c, d),
            Stratum::GammaZero => (a, b, Scalar::zero(), d),
            Stratum::AlphaPlusBetaZero => (-b.clone(), b, c, d),
            Stratum::GammaPlusDeltaZero => (a, b, c.clone(), -c),
        };
        let p = Params::unchecked(a, b, c, d, k);
        // q = 0 would make several q^{-n} factors singular.
        if p.q().is_zero() {
            continue;
        }
        if p.check_standing_assumption(k.max(1)).is_ok() {
            return Ok(p);
        }
    }
    Err(Error::SamplingExhausted(MAX_ATTEMPTS))
}

pub fn lattice_point<R: Rng + ?Sized>(rng: &mut R, k: usize, lo: i64, hi: i64) -> LatticePoint {
    LatticePoint::new((0..k).map(|_| rng.random_range(lo..=hi)).collect())
}

pub fn dominant_point<R: Rng + ?Sized>(rng: &mut R, k: usize, lo: i64, hi: i64) -> LatticePoint {
    lattice_point(rng, k, lo, hi).sorted_dominant()
}

/// `n` pairwise distinct scalars avoiding every value in `forbidden`.
pub fn distinct_rationals<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    forbidden: &[Scalar],
) -> Result<Vec<Scalar>> {
    let mut out: Vec<Scalar> = Vec::with_capacity(n);
    let mut attempts = 0;
    while out.len() < n {
        attempts += 1;
        if attempts > MAX_ATTEMPTS {
            return Err(Error::SamplingExhausted(MAX_ATTEMPTS));
        }
        let x = small_rational(rng);
        if forbidden.contains(&x) || out.contains(&x) {
            continue;
        }
        out.push(x);
    }
    Ok(out)
}
