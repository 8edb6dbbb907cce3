use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};

use super::{transitions, ParticleConfig, RateTable, StochasticParams};

/// Poisson tail below which the uniformization series is cut.
const POISSON_TAIL: f64 = 1e-12;

/// Transient law at time `t`, restricted to configurations whose total
/// displacement from the start is at most `displacement`.
#[derive(Clone, Debug)]
pub struct TransientDistribution {
    pub probabilities: BTreeMap<ParticleConfig, f64>,
    /// Mass missing from `probabilities`: paths that left the region plus
    /// the discarded Poisson tail.
    pub truncated_mass: f64,
    pub displacement: usize,
    pub lambda: f64,
    pub terms: usize,
}

impl TransientDistribution {
    pub fn probability(&self, x: &ParticleConfig) -> f64 {
        self.probabilities.get(x).copied().unwrap_or(0.0)
    }
}

/// Uniformization on the configurations reachable with total displacement
/// at most `displacement`. Jumps leaving that set go to an absorbing sink.
///
/// With `Lambda = k * max_c (total rate of a size-c cluster)` and jump kernel
/// `P = I + Q / Lambda`, the law at `t` is `sum_n Poisson(n; Lambda t) pi_0 P^n`.
pub fn uniformization_distribution(
    initial: &ParticleConfig,
    t: f64,
    sp: &StochasticParams,
    displacement: usize,
    mass_bound: f64,
) -> Result<TransientDistribution> {
    let k = initial.rank();
    let table = RateTable::new(k, sp)?;
    let rates = table.to_f64();
    let base = initial.point().sum();

    // Enumerate the region breadth-first.
    let mut index: HashMap<ParticleConfig, usize> = HashMap::new();
    let mut states = vec![initial.clone()];
    index.insert(initial.clone(), 0);
    let mut edges: Vec<Vec<(Option<usize>, f64)>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let x = states[i].clone();
        let mut out = Vec::new();
        for tr in transitions(&x) {
            let rate = rates[tr.cluster.size - 1][tr.r - 1];
            if rate == 0.0 {
                continue;
            }
            let moved = (base - tr.target.point().sum()) as usize;
            if moved > displacement {
                out.push((None, rate));
                continue;
            }
            let j = *index.entry(tr.target.clone()).or_insert_with(|| {
                states.push(tr.target.clone());
                queue.push_back(states.len() - 1);
                states.len() - 1
            });
            out.push((Some(j), rate));
        }
        if edges.len() <= i {
            edges.resize(i + 1, Vec::new());
        }
        edges[i] = out;
    }

    let max_total = (1..=k)
        .map(|c| rates[c - 1].iter().sum::<f64>())
        .fold(0.0, f64::max);
    let lambda = k as f64 * max_total;
    let n = states.len();
    let mut v = vec![0.0; n];
    v[0] = 1.0;
    let mut acc = vec![0.0; n];
    let mut terms = 0;

    if t > 0.0 && lambda > 0.0 {
        let lt = lambda * t;
        let mut log_w = -lt;
        let mut cum = 0.0;
        // Far past the mean the tail is negligible; this guards rounding in `cum`.
        let cap = (lt + 50.0 * lt.sqrt() + 100.0) as usize;
        loop {
            let w = log_w.exp();
            for (a, b) in acc.iter_mut().zip(&v) {
                *a += w * b;
            }
            cum += w;
            terms += 1;
            if 1.0 - cum < POISSON_TAIL || terms > cap {
                break;
            }
            v = step(&v, &edges, lambda);
            log_w += lt.ln() - (terms as f64).ln();
        }
    } else {
        acc = v;
        terms = 1;
    }

    let kept: f64 = acc.iter().sum();
    let truncated_mass = (1.0 - kept).max(0.0);
    if truncated_mass > mass_bound {
        return Err(Error::TruncationBound {
            lost: truncated_mass,
            bound: mass_bound,
            displacement,
        });
    }
    let probabilities = states.into_iter().zip(acc).filter(|(_, p)| *p > 0.0).collect();
    Ok(TransientDistribution {
        probabilities,
        truncated_mass,
        displacement,
        lambda,
        terms,
    })
}

fn step(v: &[f64], edges: &[Vec<(Option<usize>, f64)>], lambda: f64) -> Vec<f64> {
    let mut next = v.to_vec();
    for (i, out) in edges.iter().enumerate() {
        if v[i] == 0.0 {
            continue;
        }
        for &(j, rate) in out {
            let flow = v[i] * rate / lambda;
            next[i] -= flow;
            if let Some(j) = j {
                next[j] += flow;
            }
        }
    }
    next
}

/// Smallest displacement `D <= max_displacement` meeting `mass_bound`.
pub fn uniformization_auto(
    initial: &ParticleConfig,
    t: f64,
    sp: &StochasticParams,
    mass_bound: f64,
    max_displacement: usize,
) -> Result<TransientDistribution> {
    let mut last = None;
    for d in 0..=max_displacement {
        match uniformization_distribution(initial, t, sp, d, mass_bound) {
            Ok(dist) => return Ok(dist),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one displacement tried"))
}

/// Total-variation distance between empirical end states and `dist`; samples
/// outside the truncated region are compared with the truncated mass.
pub fn total_variation(samples: &[ParticleConfig], dist: &TransientDistribution) -> f64 {
    let n = samples.len() as f64;
    let mut counts: BTreeMap<&ParticleConfig, usize> = BTreeMap::new();
    let mut outside = 0usize;
    for x in samples {
        if dist.probabilities.contains_key(x) {
            *counts.entry(x).or_insert(0) += 1;
        } else {
            outside += 1;
        }
    }
    let mut tv = (outside as f64 / n - dist.truncated_mass).abs();
    for (x, p) in &dist.probabilities {
        let emp = counts.get(x).copied().unwrap_or(0) as f64 / n;
        tv += (emp - p).abs();
    }
    tv / 2.0
}
