//! Benchmark harness: runs both algorithms on seeded random tower sites of
//! increasing size, checks they agree before any timing is reported, and
//! emits one CSV row per size with median wall-clock times.

use std::time::Instant;

use serde::Serialize;

use crate::bases::Flavor;
use crate::engine::{bm, tbm, BasisTriple};
use crate::error::{Error, Result};
use crate::monomial::TermOrder;
use crate::sites::{random_tower_site, TowerKind};

pub const CSV_HEADER: &str = "mu,q,order,trials,bm_ms,tbm_ms,speedup,verified,seed";

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub sizes: Vec<u64>,
    pub q: u64,
    pub order: TermOrder,
    pub trials: usize,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: vec![100, 300, 500, 900, 1300],
            q: 65521,
            order: TermOrder::Tdlex,
            trials: 5,
            seed: 0,
        }
    }
}

/// One benchmark measurement. Times are integer microseconds; derived
/// quantities are computed in fixed point so the artifact stays float-free.
#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub mu: u64,
    pub q: u64,
    pub order: String,
    pub trials: usize,
    pub bm_us: u128,
    pub tbm_us: u128,
    pub verified: bool,
    pub seed: u64,
}

impl BenchRow {
    /// bm/tbm time ratio scaled by 1000.
    pub fn speedup_milli(&self) -> u128 {
        self.bm_us * 1000 / self.tbm_us.max(1)
    }

    fn us_to_ms(us: u128) -> String {
        format!("{}.{:03}", us / 1000, us % 1000)
    }

    pub fn to_csv(&self) -> String {
        let sp = self.speedup_milli();
        format!(
            "{},{},{},{},{},{},{}.{:03},{},{}",
            self.mu,
            self.q,
            self.order,
            self.trials,
            Self::us_to_ms(self.bm_us),
            Self::us_to_ms(self.tbm_us),
            sp / 1000,
            sp % 1000,
            self.verified,
            self.seed
        )
    }
}

pub fn rows_to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

fn median(mut samples: Vec<u128>) -> u128 {
    samples.sort_unstable();
    let n = samples.len();
    if n % 2 == 1 {
        samples[n / 2]
    } else {
        (samples[n / 2 - 1] + samples[n / 2]) / 2
    }
}

fn timed<F: FnMut() -> Result<BasisTriple>>(mut f: F) -> Result<(u128, BasisTriple)> {
    let start = Instant::now();
    let out = f()?;
    Ok((start.elapsed().as_micros(), out))
}

/// Runs the comparison at every configured size. The first trial's outputs
/// are checked for agreement; a mismatch aborts with the reproducing seed.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    if cfg.trials < 3 {
        return Err(Error::PreconditionUnmet(format!(
            "medians need at least 3 trials, got {}",
            cfg.trials
        )));
    }
    let kind = match Flavor::of(cfg.order) {
        Flavor::X => TowerKind::X,
        Flavor::Y => TowerKind::Y,
    };
    let mut rows = Vec::with_capacity(cfg.sizes.len());
    for &mu in &cfg.sizes {
        let site_seed = cfg.seed.wrapping_add(mu);
        let site = random_tower_site(cfg.q, mu, kind, site_seed)?;
        let mut bm_samples = Vec::with_capacity(cfg.trials);
        let mut tbm_samples = Vec::with_capacity(cfg.trials);
        let mut verified = false;
        for trial in 0..cfg.trials {
            let (bm_t, bm_out) = timed(|| bm(&site, cfg.order))?;
            let (tbm_t, tbm_out) = timed(|| tbm(&site, cfg.order))?;
            bm_samples.push(bm_t);
            tbm_samples.push(tbm_t);
            if trial == 0 {
                verified = bm_out.agrees_with(&tbm_out)?;
                if !verified {
                    return Err(Error::InternalDisagreement(format!(
                        "bm and tbm disagree at mu = {mu}, q = {}, order = {}, site seed {site_seed}",
                        cfg.q,
                        cfg.order.name()
                    )));
                }
            }
        }
        rows.push(BenchRow {
            mu,
            q: cfg.q,
            order: cfg.order.name().to_string(),
            trials: cfg.trials,
            bm_us: median(bm_samples),
            tbm_us: median(tbm_samples),
            verified,
            seed: site_seed,
        });
    }
    Ok(rows)
}
