//! Seeded tester sweeps.
//!
//! A config is a flat `key = value` file:
//!
//! ```text
//! family = gadget-paired
//! n = 4
//! q = 100
//! trials = 2000
//! seed = 1
//! epsilon = 1/60
//! ```
//!
//! Optional keys: `m`, `mode`, `seeds`, `point`, `base`, `dummy`. Trial
//! seeds are drawn in order from a ChaCha8 stream seeded with `seed`; random
//! families are regenerated per trial from that trial's seed. Trials run in
//! parallel and rows are emitted in trial order.

use std::fmt::Write;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use num_traits::{Signed, ToPrimitive};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use submod_core::tester::{run_tester, SamplingMode, Verdict};
use submod_core::{Function, Rational, Scalar};

use crate::{generate, Family, FamilyParams};

pub const HEADER: &str = "family,n,q,seed,trial,verdict,queries,census_count,density";

#[derive(Clone, Debug)]
pub struct Config {
    pub family: Family,
    pub params: FamilyParams,
    pub q: u64,
    pub trials: u64,
    pub seed: u64,
    pub epsilon: Option<Rational>,
    pub mode: SamplingMode,
}

fn parse_num<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .ok()
        .with_context(|| format!("line {line}: bad value {value:?} for {key}"))
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        let mut family = None;
        let mut params = FamilyParams {
            n: None,
            m: None,
            seed: 0,
            point: None,
            seeds: 3,
            base: "0".into(),
            dummy: 0,
        };
        let (mut q, mut trials, mut seed) = (None, None, None);
        let mut epsilon = None;
        let mut mode = SamplingMode::UniformSquare;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, value) = body
                .split_once('=')
                .with_context(|| format!("line {line}: expected key = value"))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "family" => {
                    family = Some(
                        Family::from_str(value, false)
                            .map_err(|_| anyhow::anyhow!("line {line}: unknown family {value:?}"))?,
                    )
                }
                "n" => params.n = Some(parse_num(line, key, value)?),
                "m" => params.m = Some(parse_num(line, key, value)?),
                "q" => q = Some(parse_num(line, key, value)?),
                "trials" => trials = Some(parse_num(line, key, value)?),
                "seed" => seed = Some(parse_num(line, key, value)?),
                "seeds" => params.seeds = parse_num(line, key, value)?,
                "dummy" => params.dummy = parse_num(line, key, value)?,
                "point" => params.point = Some(value.to_string()),
                "base" => params.base = value.to_string(),
                "mode" => mode = value.parse().with_context(|| format!("line {line}"))?,
                "epsilon" => {
                    let e = Rational::parse_literal(value)
                        .with_context(|| format!("line {line}: bad epsilon {value:?}"))?;
                    if e.is_negative() || e > Rational::from_int(1) {
                        bail!("line {line}: epsilon must lie in [0, 1]");
                    }
                    epsilon = Some(e);
                }
                _ => bail!("line {line}: unknown key {key:?}"),
            }
        }
        let family = family.context("missing key: family")?;
        let q = q.context("missing key: q")?;
        let trials = trials.context("missing key: trials")?;
        if q < 1 {
            bail!("q must be at least 1");
        }
        if trials < 1 {
            bail!("trials must be at least 1");
        }
        Ok(Config {
            family,
            params,
            q,
            trials,
            seed: seed.context("missing key: seed")?,
            epsilon,
            mode,
        })
    }

    fn is_random(&self) -> bool {
        matches!(self.family, Family::LatticeRandom | Family::Reduction)
    }
}

struct Row {
    n: usize,
    seed: u64,
    verdict: Verdict,
    queries: u64,
    census: u64,
    density: Rational,
}

pub struct Outcome {
    pub csv: String,
    pub summary: String,
}

fn instance(cfg: &Config, seed: u64) -> Result<Function> {
    let params = FamilyParams {
        seed,
        ..cfg.params.clone()
    };
    generate(cfg.family, &params)?.total()
}

fn trial(cfg: &Config, f: &Function, seed: u64) -> Result<Row> {
    let census = f.violated_census(false)?;
    let rep = run_tester(f, cfg.q, seed, cfg.mode)?;
    Ok(Row {
        n: f.dim(),
        seed,
        verdict: rep.verdict,
        queries: rep.queries_used,
        census: census.count,
        density: census.density(),
    })
}

pub fn run(cfg: &Config) -> Result<Outcome> {
    let mut master = ChaCha8Rng::seed_from_u64(cfg.seed);
    let seeds: Vec<u64> = (0..cfg.trials).map(|_| master.next_u64()).collect();
    let fixed = if cfg.is_random() {
        None
    } else {
        Some(instance(cfg, cfg.params.seed)?)
    };
    let rows: Vec<Row> = seeds
        .par_iter()
        .map(|&seed| match &fixed {
            Some(f) => trial(cfg, f, seed),
            None => trial(cfg, &instance(cfg, seed)?, seed),
        })
        .collect::<Result<_>>()?;

    let mut csv = format!("{HEADER}\n");
    for (t, row) in rows.iter().enumerate() {
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{}",
            cfg.family.name(),
            row.n,
            cfg.q,
            row.seed,
            t,
            row.verdict,
            row.queries,
            row.census,
            row.density
        )?;
    }

    let no = rows.iter().filter(|r| r.verdict == Verdict::No).count();
    let rate = no as f64 / rows.len() as f64;
    let mut summary = format!("{} trials, NO-rate {rate:.4}", rows.len());
    if let Some(f) = &fixed {
        let delta = f.violated_census(false)?.density().to_f64().unwrap_or(0.0);
        let predicted = 1.0 - (1.0 - delta).powf(cfg.q as f64);
        write!(summary, ", density {delta:.6}, predicted NO-rate {predicted:.4}")?;
    }
    if let Some(eps) = &cfg.epsilon {
        let far = rows.iter().filter(|r| r.density >= *eps).count();
        write!(
            summary,
            ", {far} of {} functions have violated-square density >= epsilon {eps}",
            rows.len()
        )?;
    }
    Ok(Outcome { csv, summary })
}
