//! The seeded benchmark harness: one CSV row per random instance.

use std::io::Write;

use icx_core::fixtures::{random_icx, Family};
use icx_core::minimize::minimize_proximity_scaling;
use icx_core::proximity::{alpha_local_minimizers, argmin, ProximitySpec};
use icx_core::value::{int, render_rational};
use serde::Serialize;

use crate::error::CliResult;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub seed: u64,
    pub family: String,
    pub n: usize,
    pub alpha: i64,
    #[serde(rename = "K_inf")]
    pub k_inf: i64,
    /// The α-local minimizer farthest from `arg min f`.
    pub local_min_point: String,
    pub realized_distance: i64,
    /// `β_n (α − 1)`.
    pub bound: String,
    pub within_bound: bool,
    pub evaluations: u64,
    pub budget: String,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub n: usize,
    pub family: Family,
    pub count: u64,
    pub alpha: i64,
    pub seed: u64,
}

/// The row for the instance with seed `seed`.
pub fn bench_row(n: usize, family: Family, alpha: i64, seed: u64) -> CliResult<BenchRow> {
    let f = random_icx(n, seed, family)?;
    let spec = ProximitySpec::integrally_convex();
    let minimizers = argmin(&f)?;
    let (point, distance) = alpha_local_minimizers(&f, alpha, &spec)?
        .into_iter()
        .map(|x| {
            let d = minimizers
                .iter()
                .map(|m| m.dist_inf(&x))
                .min()
                .expect("nonempty argmin");
            (x, d)
        })
        .fold(None, |best: Option<(_, i64)>, (x, d)| match best {
            Some((_, bd)) if bd >= d => best,
            _ => Some((x, d)),
        })
        .expect("global minimizers are α-local minimal");
    let bound = spec.bound(n, alpha)?;
    let run = minimize_proximity_scaling(&f)?;
    Ok(BenchRow {
        seed,
        family: family.to_string(),
        n,
        alpha,
        k_inf: run.k_infinity,
        local_min_point: point.to_string(),
        realized_distance: distance,
        within_bound: int(distance) <= bound,
        bound: render_rational(&bound),
        evaluations: run.evaluations,
        budget: run.budget.to_string(),
    })
}

/// Rows for seeds `seed, seed + 1, …`.
pub fn bench_rows(cfg: &BenchConfig) -> CliResult<Vec<BenchRow>> {
    (0..cfg.count)
        .map(|k| bench_row(cfg.n, cfg.family, cfg.alpha, cfg.seed + k))
        .collect()
}

pub const HEADER: &str =
    "seed,family,n,alpha,K_inf,local_min_point,realized_distance,bound,within_bound,evaluations,budget";

/// Writes the CSV, header first, LF line endings.
pub fn write_csv<W: Write>(out: W, rows: &[BenchRow]) -> CliResult<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(HEADER.split(','))?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
