use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::q_integer;
use crate::scalar::{self, Scalar};

/// The deformation constants `(alpha, beta, gamma, delta)` and the number of
/// particles `k`. The Hecke parameter `q = 1 + beta*gamma - alpha*delta` is
/// always derived, never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
    pub delta: Scalar,
    pub k: usize,
}

impl Params {
    /// Validates `k >= 1` and the standing assumption `1 + beta*gamma*[n] != 0`
    /// for `1 <= n <= k`.
    pub fn new(alpha: Scalar, beta: Scalar, gamma: Scalar, delta: Scalar, k: usize) -> Result<Self> {
        let p = Params::unchecked(alpha, beta, gamma, delta, k);
        if k == 0 {
            return Err(Error::DimensionMismatch { expected: 1, actual: 0 });
        }
        p.check_standing_assumption(k)?;
        Ok(p)
    }

    /// No validation. The relations of the algebra hold for any constants; only
    /// the Hamiltonian needs the standing assumption.
    pub fn unchecked(alpha: Scalar, beta: Scalar, gamma: Scalar, delta: Scalar, k: usize) -> Self {
        Params { alpha, beta, gamma, delta, k }
    }

    /// Parses `"a:b:c:d"`, each component an exact rational `n` or `n/d`.
    pub fn parse(text: &str, k: usize) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 4 {
            return Err(Error::Parse(text.to_string()));
        }
        let v: Vec<Scalar> = parts.iter().map(|p| scalar::parse(p)).collect::<Result<_>>()?;
        let [a, b, c, d]: [Scalar; 4] = v.try_into().expect("four components");
        Params::new(a, b, c, d, k)
    }

    pub fn q(&self) -> Scalar {
        Scalar::one() + &self.beta * &self.gamma - &self.alpha * &self.delta
    }

    pub fn with_k(&self, k: usize) -> Self {
        Params { k, ..self.clone() }
    }

    /// `1 + beta*gamma*[n]`, the denominator factor of the Hamiltonian.
    pub fn hamiltonian_factor(&self, n: usize) -> Scalar {
        Scalar::one() + &self.beta * &self.gamma * q_integer(n, &self.q())
    }

    pub fn check_standing_assumption(&self, up_to: usize) -> Result<()> {
        for n in 1..=up_to {
            if self.hamiltonian_factor(n).is_zero() {
                return Err(Error::StandingAssumption { n });
            }
        }
        Ok(())
    }

    pub fn to_colon_string(&self) -> String {
        [&self.alpha, &self.beta, &self.gamma, &self.delta]
            .iter()
            .map(|s| scalar::format(s))
            .collect::<Vec<_>>()
            .join(":")
    }
}
