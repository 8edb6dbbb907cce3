use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{q_factorial, q_integer, LatticePoint};
use crate::params::Params;
use crate::scalar::{checked_div, powi, Scalar};

use super::{ParticleConfig, StochasticParams};

/// The diagonal defect `K_m` of `H - k` on a cluster of size `m`:
///
/// ```text
/// K_m = -m - ag sum_{d=1}^{m-1} [d]/(1+bg[d])
///     + sum_{r=1}^{m} (-bd)^{r-1}[r-1]! q^{-r(r-1)/2} / prod_{p<r}(1+bg[m-1-p]) e_r(1, q, ..., q^{m-1})
/// ```
///
/// `H - k` preserves total mass exactly when every `K_m` vanishes.
pub fn k_constant(m: usize, params: &Params) -> Result<Scalar> {
    if m == 0 {
        return Err(Error::ConstraintNotSatisfied("m >= 1"));
    }
    let q = params.q();
    let ag = &params.alpha * &params.gamma;
    let neg_bd = -(&params.beta * &params.delta);
    let mut k = -Scalar::from_integer(m.into());
    for d in 1..m {
        k -= checked_div(&(&ag * q_integer(d, &q)), &params.hamiltonian_factor(d))?;
    }
    // e_r(1, q, ..., q^{m-1}) by the usual recurrence.
    let mut e = vec![Scalar::zero(); m + 1];
    e[0] = Scalar::one();
    let mut qp = Scalar::one();
    for _ in 0..m {
        for r in (1..=m).rev() {
            e[r] = &e[r] + &e[r - 1] * &qp;
        }
        qp *= &q;
    }
    #[allow(clippy::needless_range_loop)]
    for r in 1..=m {
        let mut den = Scalar::one();
        for p in 0..r {
            den *= params.hamiltonian_factor(m - 1 - p);
        }
        let tri = (r * (r - 1) / 2) as i64;
        let num = powi(&neg_bd, r as i64 - 1)? * q_factorial(r - 1, &q) * powi(&q, -tri)? * &e[r];
        k += checked_div(&num, &den)?;
    }
    Ok(k)
}

/// The two parameter hyperplanes on which `H - k` restricted to the chamber
/// is a stochastic generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    AlphaPlusBetaZero,
    GammaPlusDeltaZero,
}

/// `(s, q')` with `(H - k)|_{L+} = H(s, q')`:
/// `(ad/q, 1/q)` when `a + b = 0` and `(bg, q)` when `c + d = 0`.
pub fn specialize_h(branch: Branch, params: &Params) -> Result<StochasticParams> {
    let q = params.q();
    match branch {
        Branch::AlphaPlusBetaZero => {
            if !(&params.alpha + &params.beta).is_zero() {
                return Err(Error::ConstraintNotSatisfied("alpha + beta = 0"));
            }
            let qi = checked_div(&Scalar::one(), &q)?;
            Ok(StochasticParams::general(&qi * &params.alpha * &params.delta, qi))
        }
        Branch::GammaPlusDeltaZero => {
            if !(&params.gamma + &params.delta).is_zero() {
                return Err(Error::ConstraintNotSatisfied("gamma + delta = 0"));
            }
            Ok(StochasticParams::general(&params.beta * &params.gamma, q))
        }
    }
}

/// Eigenfunctions of the stochastic generator indexed by `z_1, ..., z_k`:
///
/// ```text
/// Psi_z(x) = sum_sigma prod_{i<j} (q z_{sigma(i)} - z_{sigma(j)}) / (z_{sigma(i)} - z_{sigma(j)})
///                      prod_i ((1 - nu z_{sigma(i)}) / (1 - z_{sigma(i)}))^{x_i}
/// ```
#[derive(Clone, Debug)]
pub struct PsiFunction {
    z: Vec<Scalar>,
    nu: Scalar,
    /// One-particle factor per spectral parameter.
    ratio: Vec<Scalar>,
    terms: Vec<(Vec<usize>, Scalar)>,
}

impl PsiFunction {
    pub fn new(z: &[Scalar], sp: &StochasticParams) -> Result<Self> {
        let nu = sp.nu()?;
        for (i, zi) in z.iter().enumerate() {
            if z[i + 1..].contains(zi) {
                return Err(Error::DegenerateSpectrum);
            }
            if zi.is_one() || (&nu * zi).is_one() {
                return Err(Error::SpectralPole);
            }
        }
        let k = z.len();
        let q = sp.q();
        let mut terms = Vec::new();
        for sigma in (0..k).permutations(k) {
            let mut amp = Scalar::one();
            for i in 0..k {
                for j in i + 1..k {
                    let (a, b) = (&z[sigma[i]], &z[sigma[j]]);
                    amp *= (q * a - b) / (a - b);
                }
            }
            terms.push((sigma, amp));
        }
        let ratio = z
            .iter()
            .map(|zi| (Scalar::one() - &nu * zi) / (Scalar::one() - zi))
            .collect();
        Ok(PsiFunction {
            z: z.to_vec(),
            nu,
            ratio,
            terms,
        })
    }

    pub fn rank(&self) -> usize {
        self.z.len()
    }

    /// `(nu - 1) sum_i z_i / (1 - nu z_i)`.
    pub fn eigenvalue(&self) -> Scalar {
        let s = self
            .z
            .iter()
            .fold(Scalar::zero(), |acc, zi| acc + zi / (Scalar::one() - &self.nu * zi));
        (&self.nu - Scalar::one()) * s
    }

    /// Evaluates at the weakly decreasing rearrangement of `x`.
    pub fn value(&self, x: &LatticePoint) -> Scalar {
        let x = x.sorted_dominant();
        self.terms.iter().fold(Scalar::zero(), |acc, (sigma, amp)| {
            let mut v = amp.clone();
            for (i, &s) in sigma.iter().enumerate() {
                v *= powi(&self.ratio[s], x[i]).expect("pole excluded at construction");
            }
            acc + v
        })
    }
}

pub fn psi_z(z: &[Scalar], x: &ParticleConfig, sp: &StochasticParams) -> Result<Scalar> {
    if z.len() != x.rank() {
        return Err(Error::DimensionMismatch {
            expected: z.len(),
            actual: x.rank(),
        });
    }
    Ok(PsiFunction::new(z, sp)?.value(x.point()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn k_small_values() {
        let p = Params::new(ratio(2, 3), ratio(-1, 2), ratio(5, 4), ratio(3, 7), 3).unwrap();
        assert!(k_constant(1, &p).unwrap().is_zero());
        let k2 = -(&p.alpha + &p.beta) * (&p.gamma + &p.delta) / (int(1) + &p.beta * &p.gamma);
        assert_eq!(k_constant(2, &p).unwrap(), k2);
        assert!(k_constant(0, &p).is_err());
    }

    #[test]
    fn specialization_branches() {
        let p = Params::new(int(2), int(-2), ratio(1, 3), ratio(1, 5), 2).unwrap();
        let sp = specialize_h(Branch::AlphaPlusBetaZero, &p).unwrap();
        let q = p.q();
        assert_eq!(sp.q(), &(int(1) / &q));
        assert_eq!(sp.s(), &(&p.alpha * &p.delta / &q));
        assert!(specialize_h(Branch::GammaPlusDeltaZero, &p).is_err());

        let p = Params::new(int(2), ratio(1, 2), ratio(1, 3), ratio(-1, 3), 2).unwrap();
        let sp = specialize_h(Branch::GammaPlusDeltaZero, &p).unwrap();
        assert_eq!(sp.s(), &ratio(1, 6));
        assert_eq!(sp.q(), &p.q());
    }

    #[test]
    fn psi_one_particle() {
        let sp = StochasticParams::new(ratio(1, 2), ratio(1, 3)).unwrap();
        let nu = sp.nu().unwrap();
        let z = ratio(-2, 3);
        let x = ParticleConfig::new(vec![3]).unwrap();
        let expected = powi(&((int(1) - &nu * &z) / (int(1) - &z)), 3).unwrap();
        assert_eq!(psi_z(std::slice::from_ref(&z), &x, &sp).unwrap(), expected);

        let sp0 = StochasticParams::new(int(0), ratio(1, 3)).unwrap();
        let expected = powi(&(int(1) / (int(1) - &z)), 3).unwrap();
        assert_eq!(psi_z(&[z], &x, &sp0).unwrap(), expected);
    }

    #[test]
    fn psi_rejects_bad_spectrum() {
        let sp = StochasticParams::new(ratio(1, 2), ratio(1, 3)).unwrap();
        let x = ParticleConfig::new(vec![0, 0]).unwrap();
        assert_eq!(psi_z(&[int(2), int(2)], &x, &sp), Err(Error::DegenerateSpectrum));
        assert_eq!(psi_z(&[int(1), int(2)], &x, &sp), Err(Error::SpectralPole));
        // nu = 3/7 here, so z = 7/3 is a pole.
        assert_eq!(psi_z(&[ratio(7, 3), int(2)], &x, &sp), Err(Error::SpectralPole));
    }
}
