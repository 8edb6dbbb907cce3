use std::io::{self, Write};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::sampling::{rng_stream, SampleRng};

use super::{ParticleConfig, RateTable, StochasticParams};

/// One jump: `r` particles leave the cluster at `cluster_site`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JumpEvent {
    pub time: f64,
    /// Index of the cluster, counted from the rightmost occupied site.
    pub cluster: usize,
    /// Common coordinate of the cluster before the jump.
    pub cluster_site: i64,
    pub r: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub initial: ParticleConfig,
    pub events: Vec<JumpEvent>,
    pub horizon: f64,
}

impl Trajectory {
    pub fn jump_count(&self) -> usize {
        self.events.len()
    }

    /// Configurations after each event, in order.
    pub fn replay(&self) -> Vec<ParticleConfig> {
        let mut cur = self.initial.clone();
        let mut out = Vec::with_capacity(self.events.len());
        for ev in &self.events {
            let cl = cur.clusters()[ev.cluster];
            cur = cur.jumped(&cl, ev.r);
            out.push(cur.clone());
        }
        out
    }

    pub fn config_at(&self, t: f64) -> ParticleConfig {
        let n = self.events.iter().take_while(|e| e.time <= t).count();
        if n == 0 {
            return self.initial.clone();
        }
        self.replay().swap_remove(n - 1)
    }

    pub fn final_config(&self) -> ParticleConfig {
        self.replay().pop().unwrap_or_else(|| self.initial.clone())
    }
}

/// Gillespie simulation on `[0, horizon]`, drawing from stream 0 of `seed`.
pub fn simulate(initial: &ParticleConfig, horizon: f64, sp: &StochasticParams, seed: u64) -> Result<Trajectory> {
    let rates = RateTable::new(initial.rank(), sp)?.to_f64();
    Ok(run(initial, horizon, &rates, &mut rng_stream(seed, 0)))
}

/// `n` independent trajectories; trajectory `i` uses stream `i` of `seed`,
/// so the batch does not depend on how work is split across threads.
pub fn simulate_batch(
    initial: &ParticleConfig,
    horizon: f64,
    sp: &StochasticParams,
    seed: u64,
    n: usize,
) -> Result<Vec<Trajectory>> {
    let rates = RateTable::new(initial.rank(), sp)?.to_f64();
    Ok((0..n as u64)
        .into_par_iter()
        .map(|i| run(initial, horizon, &rates, &mut rng_stream(seed, i)))
        .collect())
}

fn run(initial: &ParticleConfig, horizon: f64, rates: &[Vec<f64>], rng: &mut SampleRng) -> Trajectory {
    let mut cur = initial.clone();
    let mut t = 0.0;
    let mut events = Vec::new();
    loop {
        let clusters = cur.clusters();
        let total: f64 = clusters.iter().map(|c| rates[c.size - 1].iter().sum::<f64>()).sum();
        // 1 - U lies in (0, 1], so the logarithm is finite.
        let u: f64 = rng.random();
        t += -(1.0 - u).ln() / total;
        if t > horizon {
            break;
        }
        let mut pick = rng.random::<f64>() * total;
        let mut chosen = None;
        'outer: for (ci, cl) in clusters.iter().enumerate() {
            for (ri, &rate) in rates[cl.size - 1].iter().enumerate() {
                if pick < rate {
                    chosen = Some((ci, ri + 1));
                    break 'outer;
                }
                pick -= rate;
            }
        }
        // Rounding can leave `pick` just past the last rate.
        let (ci, r) = chosen.unwrap_or_else(|| {
            let last = clusters.len() - 1;
            let r = rates[clusters[last].size - 1]
                .iter()
                .rposition(|&v| v > 0.0)
                .expect("every cluster has a positive rate")
                + 1;
            (last, r)
        });
        let cl = clusters[ci];
        events.push(JumpEvent {
            time: t,
            cluster: ci,
            cluster_site: cl.site,
            r,
        });
        cur = cur.jumped(&cl, r);
    }
    Trajectory {
        initial: initial.clone(),
        events,
        horizon,
    }
}

/// One line of the event export.
#[derive(Serialize)]
pub struct EventRecord<'a> {
    pub trajectory: usize,
    pub t: f64,
    pub cluster_site: i64,
    pub r: usize,
    pub config_after: &'a ParticleConfig,
}

/// Writes every event of every trajectory as a JSON line.
pub fn write_events_jsonl<W: Write>(out: &mut W, trajectories: &[Trajectory]) -> io::Result<()> {
    for (i, tr) in trajectories.iter().enumerate() {
        for (ev, cfg) in tr.events.iter().zip(tr.replay()) {
            let rec = EventRecord {
                trajectory: i,
                t: ev.time,
                cluster_site: ev.cluster_site,
                r: ev.r,
                config_after: &cfg,
            };
            serde_json::to_writer(&mut *out, &rec)?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}

/// `trajectory,time,site,count` rows of occupation numbers at each sample time.
pub fn write_occupation_csv<W: Write>(out: &mut W, trajectories: &[Trajectory], times: &[f64]) -> io::Result<()> {
    writeln!(out, "trajectory,time,site,count")?;
    for (i, tr) in trajectories.iter().enumerate() {
        for &t in times {
            for (site, count) in tr.config_at(t).occupation() {
                writeln!(out, "{i},{t},{site},{count}")?;
            }
        }
    }
    Ok(())
}
