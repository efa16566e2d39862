//! Randomized end-to-end checks of the solvers against brute force.

use anyhow::ensure;
use apxsum_core::bruteforce::{opt_bruteforce, BRUTEFORCE_MAX_ITEMS};
use apxsum_core::hardness::{bellman_knapsack, scheme_gap_solver, solve_knapsack_via_gap};
use apxsum_core::partition::solve_partition;
use apxsum_core::subsetsum::{solve_subset_sum, SolverConfig};
use apxsum_core::testkit::{
    gen_instance, verify_guarantee, verify_partition, GenSpec, Generated, Problem, Shape,
};
use apxsum_core::Epsilon;

use crate::engine::EngineKind;
use crate::thresholds;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub problem: Problem,
    pub shape: Shape,
    pub n: usize,
    pub max_item: u64,
    pub density: f64,
    pub eps: Epsilon,
    pub confidence: u64,
    pub engine: EngineKind,
    pub trials: usize,
    /// Trial `i` uses seed `seed + i` for both the instance and the solver.
    pub seed: u64,
    pub jobs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialFailure {
    pub seed: u64,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub trials: usize,
    pub failures: Vec<TrialFailure>,
    /// Success fraction needed to pass.
    pub required: f64,
}

impl VerifyReport {
    pub fn success_fraction(&self) -> f64 {
        1.0 - self.failures.len() as f64 / self.trials as f64
    }

    pub fn passed(&self) -> bool {
        self.success_fraction() >= self.required
    }
}

/// Maps `f` over `0..count` on up to `jobs` threads; results keep index order.
pub fn par_map<T, F>(count: usize, jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let jobs = jobs.clamp(1, count.max(1));
    if jobs == 1 {
        return (0..count).map(f).collect();
    }
    let chunk = count.div_ceil(jobs);
    std::thread::scope(|s| {
        let f = &f;
        let handles: Vec<_> = (0..count)
            .step_by(chunk)
            .map(|lo| s.spawn(move || (lo..(lo + chunk).min(count)).map(f).collect::<Vec<T>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

fn trial(cfg: &VerifyConfig, seed: u64) -> anyhow::Result<Option<String>> {
    let spec = GenSpec {
        problem: cfg.problem,
        shape: cfg.shape,
        n: cfg.n,
        max_item: cfg.max_item,
        density: cfg.density,
        seed,
    };
    let solver = SolverConfig {
        confidence: cfg.confidence,
        ..SolverConfig::default()
    };
    let failure = |name: &str, margin: i128| Some(format!("{name} (margin {margin})"));
    Ok(match gen_instance(&spec)? {
        Generated::SubsetSum(inst) => {
            let (r, _) = solve_subset_sum(&inst, cfg.eps, seed, &solver, &cfg.engine)?;
            let opt = opt_bruteforce(&inst.items, inst.target)?;
            verify_guarantee(&inst, &r, cfg.eps, opt)
                .first_failure()
                .and_then(|c| failure(c.name, c.margin))
        }
        Generated::Partition(inst) => {
            let (r, _) = solve_partition(&inst, cfg.eps, None, &cfg.engine)?;
            let opt = opt_bruteforce(&inst.items, inst.half())?;
            verify_partition(&inst, &r, cfg.eps, opt)
                .first_failure()
                .and_then(|c| failure(c.name, c.margin))
        }
        Generated::Knapsack(inst) => {
            let exact = bellman_knapsack(&inst)?.solvable;
            let via_gap = solve_knapsack_via_gap(&inst, scheme_gap_solver(seed))?;
            (exact != via_gap).then(|| format!("gap solver says {via_gap}, DP says {exact}"))
        }
    })
}

/// Runs `cfg.trials` independent trials. Solver errors count as failures.
pub fn run_verify(cfg: &VerifyConfig) -> anyhow::Result<VerifyReport> {
    ensure!(cfg.trials > 0, "need at least one trial");
    ensure!(
        cfg.problem == Problem::Knapsack || cfg.n <= BRUTEFORCE_MAX_ITEMS,
        "brute force needs n <= {BRUTEFORCE_MAX_ITEMS}"
    );
    let outcomes = par_map(cfg.trials, cfg.jobs, |i| {
        let seed = cfg.seed.wrapping_add(i as u64);
        let reason = match trial(cfg, seed) {
            Ok(r) => r,
            Err(e) => Some(format!("error: {e:#}")),
        };
        reason.map(|reason| TrialFailure { seed, reason })
    });
    let required = match cfg.problem {
        Problem::SubsetSum => thresholds::SUBSETSUM_MIN_SUCCESS,
        Problem::Partition => thresholds::DETERMINISTIC_SUCCESS,
        Problem::Knapsack => thresholds::KNAPSACK_MIN_AGREEMENT,
    };
    Ok(VerifyReport {
        trials: cfg.trials,
        failures: outcomes.into_iter().flatten().collect(),
        required,
    })
}
