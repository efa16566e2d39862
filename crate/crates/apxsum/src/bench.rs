//! Runtime-vs-accuracy sweeps and the log-log exponent fit.
//!
//! Each problem has a fixed benchmark instance whose size does not depend
//! on ε, so the fitted slope of `ln(time)` against `ln(1/ε)` isolates the
//! ε-dependence of the algorithm.

use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, ensure, Context};
use apxsum_core::partition::solve_partition;
use apxsum_core::subsetsum::{solve_subset_sum, SolverConfig};
use apxsum_core::{Epsilon, MinConvEngine, PartitionInstance, SubsetSumInstance};
use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::engine::EngineKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchProblem {
    Subsetsum,
    Partition,
    Minconv,
}

impl BenchProblem {
    pub fn name(self) -> &'static str {
        match self {
            BenchProblem::Subsetsum => "subsetsum",
            BenchProblem::Partition => "partition",
            BenchProblem::Minconv => "minconv",
        }
    }

    fn default_n(self) -> usize {
        match self {
            BenchProblem::Subsetsum => 8,
            BenchProblem::Partition => 96,
            BenchProblem::Minconv => 0,
        }
    }
}

/// Parses `2^-6..2^-13` (every power of two in between) or a comma list of
/// single values such as `1/64,0.01`.
pub fn parse_eps_sweep(s: &str) -> anyhow::Result<Vec<Epsilon>> {
    if let Some((lo, hi)) = s.split_once("..") {
        let exp = |p: &str| -> anyhow::Result<u32> {
            p.trim()
                .strip_prefix("2^-")
                .and_then(|e| e.parse().ok())
                .with_context(|| format!("range ends must look like 2^-k, got {p:?}"))
        };
        let (a, b) = (exp(lo)?, exp(hi)?);
        ensure!(a >= 1 && a <= b && b <= 40, "bad exponent range {a}..{b}");
        return (a..=b).map(|e| Ok(Epsilon::new(1, 1 << e)?)).collect();
    }
    let list: Vec<Epsilon> = s
        .split(',')
        .map(|p| Epsilon::from_str(p).map_err(anyhow::Error::from))
        .collect::<anyhow::Result<_>>()?;
    ensure!(!list.is_empty(), "empty epsilon list");
    Ok(list)
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub problem: BenchProblem,
    pub eps: Vec<Epsilon>,
    pub repeat: usize,
    pub jobs: usize,
    pub engine: EngineKind,
    /// Partition only; `None` means `⌈ε^{−1/2}⌉`.
    pub l: Option<u64>,
    /// Instance size; `None` picks the problem default.
    pub n: Option<usize>,
    pub seed: u64,
}

/// One CSV line: `problem,eps,L,seed,elapsed_ms,value`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub problem: &'static str,
    pub eps: String,
    #[serde(rename = "L")]
    pub l: Option<u64>,
    pub seed: u64,
    pub elapsed_ms: f64,
    pub value: u64,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Slope of `ln(median time)` against `ln(1/ε)`.
    pub exponent: f64,
    pub total_secs: f64,
}

impl BenchReport {
    pub fn write_csv<W: Write>(&self, out: W) -> anyhow::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Least-squares slope of `y` against `x`.
pub fn fit_exponent(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

const BENCH_TARGET: u64 = 1 << 40;

/// One item at `0.6t` and `n − 1` items below `t/2^15`. Across the sweep
/// the small items stay below Δ, so the recursion is a single split whose
/// cost is the capped sumset of two Δ-sparse sets of size `~1/ε`.
pub fn subsetsum_bench_instance(n: usize, seed: u64) -> anyhow::Result<SubsetSumInstance> {
    ensure!(n >= 1, "n must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = BENCH_TARGET;
    let mut items = vec![t / 5 * 3];
    items.extend((1..n).map(|_| rng.gen_range(1..=t >> 15)));
    Ok(SubsetSumInstance::new(items, t)?)
}

/// `n` items in `[2^36, 2^37]`: all items are far above Δ, so the exact top
/// half works on dense rounded sets and the bottom half has real work.
pub fn partition_bench_instance(n: usize, seed: u64) -> anyhow::Result<PartitionInstance> {
    ensure!(n >= 2, "n must be at least 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items = (0..n)
        .map(|_| rng.gen_range(1u64 << 36..=1 << 37))
        .collect();
    Ok(PartitionInstance::new(items)?)
}

/// Two fully defined sequences of length `⌈1/ε⌉`.
fn minconv_bench_input(eps: Epsilon, seed: u64) -> (Vec<Option<i64>>, Vec<Option<i64>>) {
    let len = eps.den().div_ceil(eps.num()) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seq = || -> Vec<Option<i64>> {
        (0..len)
            .map(|_| Some(rng.gen_range(0..1_000_000)))
            .collect()
    };
    (seq(), seq())
}

enum Prepared {
    SubsetSum(SubsetSumInstance),
    Partition(PartitionInstance),
    Minconv,
}

fn prepare(cfg: &BenchConfig) -> anyhow::Result<Prepared> {
    let n = cfg.n.unwrap_or(cfg.problem.default_n());
    Ok(match cfg.problem {
        BenchProblem::Subsetsum => Prepared::SubsetSum(subsetsum_bench_instance(n, cfg.seed)?),
        BenchProblem::Partition => Prepared::Partition(partition_bench_instance(n, cfg.seed)?),
        BenchProblem::Minconv => Prepared::Minconv,
    })
}

/// Times one run; input construction is excluded.
fn run_once(
    prepared: &Prepared,
    cfg: &BenchConfig,
    eps: Epsilon,
) -> anyhow::Result<(f64, u64, Option<u64>)> {
    let engine = cfg.engine;
    match prepared {
        Prepared::SubsetSum(inst) => {
            let start = Instant::now();
            let (r, _) = solve_subset_sum(inst, eps, cfg.seed, &SolverConfig::default(), &engine)?;
            Ok((ms(start), r.value, None))
        }
        Prepared::Partition(inst) => {
            let start = Instant::now();
            let (r, trace) = solve_partition(inst, eps, cfg.l, &engine)?;
            let l = trace.map(|t| t.l).or(cfg.l);
            Ok((ms(start), r.value, l))
        }
        Prepared::Minconv => {
            let (a, b) = minconv_bench_input(eps, cfg.seed);
            let start = Instant::now();
            let c = engine.min_conv(&a, &b)?;
            let elapsed = ms(start);
            Ok((elapsed, c.iter().flatten().count() as u64, None))
        }
    }
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2.0
    }
}

/// Runs the sweep: one discarded warm-up at the largest ε, then `repeat`
/// timed runs per ε. With `jobs > 1` different ε values run on separate
/// threads, which is faster but adds timing noise.
pub fn bench_scaling(cfg: &BenchConfig) -> anyhow::Result<BenchReport> {
    ensure!(
        cfg.eps.len() >= 2,
        "the sweep needs at least two epsilon values"
    );
    ensure!(cfg.repeat >= 1, "repeat must be at least 1");
    let total = Instant::now();
    let prepared = prepare(cfg)?;
    let largest = *cfg
        .eps
        .iter()
        .max_by(|a, b| a.as_f64().total_cmp(&b.as_f64()))
        .expect("non-empty");
    run_once(&prepared, cfg, largest)?;

    let sweep_one = |eps: Epsilon| -> anyhow::Result<Vec<BenchRow>> {
        (0..cfg.repeat)
            .map(|_| {
                let (elapsed_ms, value, l) = run_once(&prepared, cfg, eps)?;
                Ok(BenchRow {
                    problem: cfg.problem.name(),
                    eps: eps.to_string(),
                    l,
                    seed: cfg.seed,
                    elapsed_ms,
                    value,
                })
            })
            .collect()
    };

    let per_eps: Vec<Vec<BenchRow>> = if cfg.jobs <= 1 {
        cfg.eps
            .iter()
            .map(|&e| sweep_one(e))
            .collect::<anyhow::Result<_>>()?
    } else {
        let chunk = cfg.eps.len().div_ceil(cfg.jobs);
        std::thread::scope(|s| {
            let handles: Vec<_> = cfg
                .eps
                .chunks(chunk)
                .map(|part| {
                    let sweep_one = &sweep_one;
                    s.spawn(move || {
                        part.iter()
                            .map(|&e| sweep_one(e))
                            .collect::<anyhow::Result<Vec<_>>>()
                    })
                })
                .collect();
            let mut all = Vec::new();
            for h in handles {
                match h.join() {
                    Ok(rows) => all.extend(rows?),
                    Err(_) => bail!("a bench worker panicked"),
                }
            }
            Ok(all)
        })?
    };

    let points: Vec<(f64, f64)> = cfg
        .eps
        .iter()
        .zip(&per_eps)
        .map(|(e, rows)| {
            let t = median(rows.iter().map(|r| r.elapsed_ms).collect());
            ((1.0 / e.as_f64()).ln(), t.max(1e-6).ln())
        })
        .collect();
    Ok(BenchReport {
        rows: per_eps.into_iter().flatten().collect(),
        exponent: fit_exponent(&points),
        total_secs: total.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_syntax() {
        let v = parse_eps_sweep("2^-6..2^-8").unwrap();
        assert_eq!(
            v.iter().map(|e| e.den()).collect::<Vec<_>>(),
            vec![64, 128, 256]
        );
        let v = parse_eps_sweep("1/4, 0.01").unwrap();
        assert_eq!((v[0].den(), v[1].den()), (4, 100));
        assert!(parse_eps_sweep("2^-8..2^-6").is_err());
        assert!(parse_eps_sweep("1/64..1/128").is_err());
    }

    #[test]
    fn fit_recovers_a_known_slope() {
        let pts: Vec<(f64, f64)> = (1..8).map(|i| (i as f64, 1.5 * i as f64 + 3.0)).collect();
        assert!((fit_exponent(&pts) - 1.5).abs() < 1e-12);
    }

    #[test]
    fn bench_instances_are_reproducible_and_shaped() {
        let a = subsetsum_bench_instance(8, 3).unwrap();
        assert_eq!(a, subsetsum_bench_instance(8, 3).unwrap());
        assert!(a.items[1..].iter().all(|&x| x <= BENCH_TARGET >> 15));
        let p = partition_bench_instance(24, 3).unwrap();
        assert!(p.items.iter().all(|&x| (1 << 36..=1 << 37).contains(&x)));
    }

    #[test]
    fn small_sweep_produces_rows() {
        let cfg = BenchConfig {
            problem: BenchProblem::Minconv,
            eps: parse_eps_sweep("2^-3..2^-5").unwrap(),
            repeat: 2,
            jobs: 2,
            engine: EngineKind::Dense,
            l: None,
            n: None,
            seed: 1,
        };
        let report = bench_scaling(&cfg).unwrap();
        assert_eq!(report.rows.len(), 6);
        assert_eq!(report.rows[0].eps, "1/8");
        // full-length output: 2·8 − 1 defined entries
        assert_eq!(report.rows[0].value, 15);
        let mut buf = Vec::new();
        report.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("problem,eps,L,seed,elapsed_ms,value\n"));
    }
}
