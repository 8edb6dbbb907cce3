//! The `(s, q)` particle system: bosonic particles on `Z` where `r` of the
//! `c` particles sharing a site jump one step left together at rate
//!
//! ```text
//! s^{r-1} / [r] * prod_{p=0}^{r-1} [c-p] / (1 + s[c-1-p])
//! ```
//!
//! A configuration of `k` particles is a weakly decreasing point of `Z^k`.
//! Rates and the generator are exact; [`simulate`] and
//! [`uniformization_distribution`] work in `f64`.

mod simulate;
mod spectral;
mod uniformization;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::LatticeFunction;
use crate::lattice::{q_integer, LatticePoint};
use crate::scalar::{self, checked_div, powi, Scalar};

pub use simulate::{
    simulate, simulate_batch, write_events_jsonl, write_occupation_csv, EventRecord, JumpEvent, Trajectory,
};
pub use spectral::{k_constant, psi_z, specialize_h, Branch, PsiFunction};
pub use uniformization::{
    total_variation, uniformization_auto, uniformization_distribution, TransientDistribution,
};

/// The pair `(s, q)`.
///
/// [`StochasticParams::new`] admits only the stochastic regime `s >= 0`,
/// `0 < q < 1`, where every rate is nonnegative. [`StochasticParams::general`]
/// accepts any pair, for algebraic use such as specializations of `H` whose
/// `q` lies outside `(0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StochasticParams {
    s: Scalar,
    q: Scalar,
}

impl StochasticParams {
    pub fn new(s: Scalar, q: Scalar) -> Result<Self> {
        if s.is_negative() {
            return Err(Error::InvalidStochasticParams(format!("s = {} < 0", scalar::format(&s))));
        }
        if !(q.is_positive() && q < Scalar::one()) {
            return Err(Error::InvalidStochasticParams(format!(
                "q = {} outside (0, 1)",
                scalar::format(&q)
            )));
        }
        Ok(StochasticParams { s, q })
    }

    pub fn general(s: Scalar, q: Scalar) -> Self {
        StochasticParams { s, q }
    }

    pub fn parse(s: &str, q: &str) -> Result<Self> {
        Self::new(scalar::parse(s)?, scalar::parse(q)?)
    }

    pub fn s(&self) -> &Scalar {
        &self.s
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn is_stochastic(&self) -> bool {
        !self.s.is_negative() && self.q.is_positive() && self.q < Scalar::one()
    }

    /// `nu = s / (1 - q + s)`.
    pub fn nu(&self) -> Result<Scalar> {
        checked_div(&self.s, &(Scalar::one() - &self.q + &self.s))
    }
}

/// A maximal run of particles on one site.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cluster {
    pub site: i64,
    /// 0-based index of the first particle of the run.
    pub start: usize,
    pub size: usize,
}

/// `k` particle positions in weakly decreasing order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct ParticleConfig(LatticePoint);

impl ParticleConfig {
    pub fn new(positions: Vec<i64>) -> Result<Self> {
        Self::from_point(LatticePoint::new(positions))
    }

    pub fn from_point(x: LatticePoint) -> Result<Self> {
        if !x.is_dominant() {
            return Err(Error::NotDominant(x.into_coords()));
        }
        Ok(ParticleConfig(x))
    }

    pub fn point(&self) -> &LatticePoint {
        &self.0
    }

    pub fn positions(&self) -> &[i64] {
        self.0.coords()
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    pub fn clusters(&self) -> Vec<Cluster> {
        let c = self.positions();
        let mut out: Vec<Cluster> = Vec::new();
        for (i, &v) in c.iter().enumerate() {
            match out.last_mut() {
                Some(last) if last.site == v => last.size += 1,
                _ => out.push(Cluster {
                    site: v,
                    start: i,
                    size: 1,
                }),
            }
        }
        out
    }

    /// Number of particles on each occupied site.
    pub fn occupation(&self) -> BTreeMap<i64, usize> {
        let mut occ = BTreeMap::new();
        for &v in self.positions() {
            *occ.entry(v).or_insert(0) += 1;
        }
        occ
    }

    /// Moves `r` particles of `cluster` one site left. The last `r` indices
    /// of the run are decremented, which keeps the order weakly decreasing.
    pub fn jumped(&self, cluster: &Cluster, r: usize) -> ParticleConfig {
        debug_assert!(r >= 1 && r <= cluster.size);
        let mut x = self.0.clone();
        for idx in cluster.start + cluster.size - r..cluster.start + cluster.size {
            x[idx] -= 1;
        }
        ParticleConfig(x)
    }
}

impl TryFrom<Vec<i64>> for ParticleConfig {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ParticleConfig> for Vec<i64> {
    fn from(c: ParticleConfig) -> Vec<i64> {
        c.0.into_coords()
    }
}

impl fmt::Debug for ParticleConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.positions())
    }
}

impl fmt::Display for ParticleConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.positions().iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Rate at which `r` particles leave a cluster of `c` particles.
pub fn jump_rate(c: usize, r: usize, sp: &StochasticParams) -> Result<Scalar> {
    if r < 1 || r > c {
        return Err(Error::InvalidJump { c, r });
    }
    let q = &sp.q;
    let mut v = checked_div(&powi(&sp.s, r as i64 - 1)?, &q_integer(r, q))?;
    for p in 0..r {
        let den = Scalar::one() + &sp.s * q_integer(c - 1 - p, q);
        v = &v * q_integer(c - p, q);
        v = checked_div(&v, &den)?;
    }
    Ok(v)
}

/// All rates `(c, r)` with `1 <= r <= c <= c_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RateTable {
    rows: Vec<Vec<Scalar>>,
}

impl RateTable {
    pub fn new(c_max: usize, sp: &StochasticParams) -> Result<Self> {
        let rows = (1..=c_max)
            .map(|c| (1..=c).map(|r| jump_rate(c, r, sp)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(RateTable { rows })
    }

    pub fn c_max(&self) -> usize {
        self.rows.len()
    }

    /// Panics unless `1 <= r <= c <= c_max`.
    pub fn get(&self, c: usize, r: usize) -> &Scalar {
        &self.rows[c - 1][r - 1]
    }

    /// Rates `(r = 1..=c)` for clusters of size `c`.
    pub fn row(&self, c: usize) -> &[Scalar] {
        &self.rows[c - 1]
    }

    /// Total rate at which a cluster of size `c` emits a jump.
    pub fn cluster_total(&self, c: usize) -> Scalar {
        self.row(c).iter().fold(Scalar::zero(), |a, b| a + b)
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.rows.iter().map(|row| row.iter().map(scalar::to_f64).collect()).collect()
    }
}

/// One possible jump out of a configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub cluster: Cluster,
    pub r: usize,
    pub target: ParticleConfig,
}

pub fn transitions(x: &ParticleConfig) -> Vec<Transition> {
    x.clusters()
        .into_iter()
        .flat_map(|cl| {
            (1..=cl.size).map(move |r| Transition {
                cluster: cl,
                r,
                target: x.jumped(&cl, r),
            })
        })
        .collect()
}

/// `(H(s,q) f)(x) = sum_{clusters} sum_r rate(c, r) (f(x - moved) - f(x))`.
pub fn apply_generator(f: &LatticeFunction, x: &ParticleConfig, sp: &StochasticParams) -> Result<Scalar> {
    let table = RateTable::new(x.rank(), sp)?;
    let fx = f.eval(x.point());
    Ok(transitions(x).into_iter().fold(Scalar::zero(), |acc, t| {
        acc + table.get(t.cluster.size, t.r) * (f.eval(t.target.point()) - &fx)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn sp(s: Scalar, q: Scalar) -> StochasticParams {
        StochasticParams::new(s, q).unwrap()
    }

    fn cfg(v: &[i64]) -> ParticleConfig {
        ParticleConfig::new(v.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(StochasticParams::new(int(-1), ratio(1, 2)).is_err());
        assert!(StochasticParams::new(int(1), int(1)).is_err());
        assert!(StochasticParams::new(int(0), int(0)).is_err());
        assert!(StochasticParams::parse("1", "0.5").is_err());
        let p = StochasticParams::parse("1", "1/2").unwrap();
        assert_eq!(p.nu().unwrap(), ratio(2, 3));
        assert!(ParticleConfig::new(vec![0, 1]).is_err());
    }

    #[test]
    fn rate_examples() {
        let (s, q) = (ratio(3, 2), ratio(1, 3));
        let p = sp(s.clone(), q.clone());
        assert_eq!(jump_rate(1, 1, &p).unwrap(), int(1));
        assert_eq!(jump_rate(2, 2, &p).unwrap(), &s / (int(1) + &s));
        assert_eq!(jump_rate(2, 1, &p).unwrap(), (int(1) + &q) / (int(1) + &s));
        assert!(matches!(jump_rate(2, 3, &p), Err(Error::InvalidJump { .. })));
        assert!(matches!(jump_rate(2, 0, &p), Err(Error::InvalidJump { .. })));

        let p0 = sp(int(0), q.clone());
        for c in 1..6 {
            assert_eq!(jump_rate(c, 1, &p0).unwrap(), q_integer(c, &q));
            for r in 2..=c {
                assert!(jump_rate(c, r, &p0).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn configurations() {
        let x = cfg(&[3, 3, 1, 0, 0, 0]);
        let cl = x.clusters();
        assert_eq!(cl.len(), 3);
        assert_eq!((cl[2].site, cl[2].start, cl[2].size), (0, 3, 3));
        assert_eq!(x.jumped(&cl[0], 1), cfg(&[3, 2, 1, 0, 0, 0]));
        assert_eq!(x.jumped(&cl[2], 2), cfg(&[3, 3, 1, 0, -1, -1]));
        assert_eq!(x.occupation()[&0], 3);
        assert_eq!(transitions(&x).len(), 6);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, "[3,3,1,0,0,0]");
        assert!(serde_json::from_str::<ParticleConfig>("[0,1]").is_err());
    }

    #[test]
    fn generator_examples() {
        let (s, q) = (ratio(1, 2), ratio(2, 5));
        let p = sp(s.clone(), q.clone());
        let f = LatticeFunction::new(2, |x| int(x[0] * x[0] + 3 * x[1] + 7));
        let got = apply_generator(&f, &cfg(&[0, 0]), &p).unwrap();
        let f00 = f.eval(&LatticePoint::from([0, 0]));
        let expected = (int(1) + &q) / (int(1) + &s) * (f.eval(&LatticePoint::from([0, -1])) - &f00)
            + &s / (int(1) + &s) * (f.eval(&LatticePoint::from([-1, -1])) - &f00);
        assert_eq!(got, expected);

        let g = LatticeFunction::new(1, |x| int(x[0] * x[0]));
        assert_eq!(apply_generator(&g, &cfg(&[4]), &p).unwrap(), int(9 - 16));

        let c = LatticeFunction::constant(3, ratio(5, 3));
        assert!(apply_generator(&c, &cfg(&[2, 2, -1]), &p).unwrap().is_zero());
    }
}
