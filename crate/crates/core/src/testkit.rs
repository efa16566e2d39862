//! Oracles, instance generators and guarantee checks shared by the test
//! suites and the command-line tools.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::approxset::is_approximation;
use crate::error::param;
use crate::instance::{
    ApproxResult, Epsilon, KnapsackInstance, PartitionInstance, SubsetSumInstance,
};
use crate::sparse::Cap;
use crate::{Error, Result};

/// Largest `|A|·|B|` [`naive_sumset`] enumerates.
pub const NAIVE_SUMSET_MAX_PAIRS: usize = 10_000_000;

/// `(A + B) ∩ [0, cap]` by enumerating all pairs; sorted, no duplicates.
pub fn naive_sumset(a: &[u64], b: &[u64], cap: u64) -> Result<Vec<u64>> {
    if a.len().saturating_mul(b.len()) > NAIVE_SUMSET_MAX_PAIRS {
        return Err(Error::Limit(alloc::format!(
            "{} x {} pairs exceed {NAIVE_SUMSET_MAX_PAIRS}",
            a.len(),
            b.len()
        )));
    }
    let mut out: Vec<u64> = a
        .iter()
        .flat_map(|&x| b.iter().filter_map(move |&y| x.checked_add(y)))
        .filter(|&s| s <= cap)
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// A random subset of `b` that still `(cap, Δ)`-approximates `b`: elements
/// are visited in random order and dropped whenever the remainder still
/// approximates `b`. Unlike sparsification this reaches many different
/// approximations, which makes it a good source of lemma premises.
pub fn thin(b: &[u64], cap: Cap, delta: u64, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut keep = alloc::vec![true; b.len()];
    let mut order: Vec<usize> = (0..b.len()).collect();
    for i in (1..order.len()).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let current = |keep: &[bool]| -> Vec<u64> {
        b.iter()
            .zip(keep)
            .filter(|(_, &k)| k)
            .map(|(&x, _)| x)
            .collect()
    };
    for i in order {
        if rng.gen_bool(0.2) {
            continue;
        }
        keep[i] = false;
        if !is_approximation(&current(&keep), b, cap, delta) {
            keep[i] = true;
        }
    }
    current(&keep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    SubsetSum,
    Partition,
    Knapsack,
}

/// How item sizes are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// Uniform in `[1, max_item]`.
    Uniform,
    /// Close to `t/2^j` for small `j`, so items straddle the size classes
    /// the recursion splits on.
    Clustered,
    /// Half the items near `max_item`, half tiny; exercises singleton parts
    /// and the greedy leaves.
    TwoScale,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub problem: Problem,
    pub shape: Shape,
    pub n: usize,
    pub max_item: u64,
    /// Target (or knapsack budget and goal) as a fraction of the total.
    pub density: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generated {
    SubsetSum(SubsetSumInstance),
    Partition(PartitionInstance),
    Knapsack(KnapsackInstance),
}

fn scaled(total: u64, density: f64) -> u64 {
    ((total as f64 * density) as u64).max(1)
}

fn draw_items(rng: &mut ChaCha8Rng, spec: &GenSpec, anchor: u64) -> Vec<u64> {
    let m = spec.max_item;
    (0..spec.n)
        .map(|i| match spec.shape {
            Shape::Uniform => rng.gen_range(1..=m),
            Shape::Clustered => {
                let center = (anchor >> rng.gen_range(1..=4)).clamp(1, m);
                let jitter = (center / 20).max(1);
                let lo = center.saturating_sub(jitter).max(1);
                rng.gen_range(lo..=(center + jitter).min(m).max(lo))
            }
            Shape::TwoScale if i % 2 == 0 => rng.gen_range((m - m / 10).max(1)..=m),
            Shape::TwoScale => rng.gen_range(1..=(m / 100).max(1)),
        })
        .collect()
}

/// A reproducible random instance; equal specs give equal instances.
pub fn gen_instance(spec: &GenSpec) -> Result<Generated> {
    if spec.n == 0 || spec.max_item == 0 {
        return Err(param!("n and max_item must be positive"));
    }
    if !(spec.density > 0.0 && spec.density <= 1.0) {
        return Err(param!("density must lie in (0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    // typical total, used to place clustered items before the target is known
    let anchor = scaled(
        spec.max_item.saturating_mul(spec.n as u64) / 2,
        spec.density,
    );
    Ok(match spec.problem {
        Problem::SubsetSum => {
            let items = draw_items(&mut rng, spec, anchor);
            let total = items.iter().sum();
            Generated::SubsetSum(SubsetSumInstance::new(items, scaled(total, spec.density))?)
        }
        Problem::Partition => {
            Generated::Partition(PartitionInstance::new(draw_items(&mut rng, spec, anchor))?)
        }
        Problem::Knapsack => {
            let weights = draw_items(&mut rng, spec, anchor);
            let values: Vec<i64> = (0..spec.n)
                .map(|_| rng.gen_range(1..=spec.max_item) as i64)
                .collect();
            let budget = scaled(weights.iter().sum(), spec.density);
            // a goal near what a budget-proportional share of the value buys,
            // so both answers occur
            let share = scaled(values.iter().sum::<i64>() as u64, spec.density);
            let goal = rng.gen_range((share / 2).max(1)..=share + share / 2);
            Generated::Knapsack(KnapsackInstance::new(weights, values, budget, goal)?)
        }
    })
}

/// One checked condition with its slack (`≥ 0` iff it holds).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Clause {
    pub name: &'static str,
    pub passed: bool,
    pub margin: i128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuaranteeReport {
    pub clauses: Vec<Clause>,
}

impl GuaranteeReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Clause> {
        self.clauses.iter().find(|c| !c.passed)
    }
}

fn clause(name: &'static str, margin: i128) -> Clause {
    Clause {
        name,
        passed: margin >= 0,
        margin,
    }
}

/// `⌈(1−ε)·x⌉`.
pub fn ceil_one_minus(eps: Epsilon, x: u64) -> u64 {
    let (num, den) = (eps.num() as u128, eps.den() as u128);
    (x as u128 * (den - num)).div_ceil(den) as u64
}

fn witness_clause(items: &[u64], result: &ApproxResult) -> Clause {
    let mut idx = result.witness_indices.clone();
    idx.sort_unstable();
    let distinct = idx.windows(2).all(|w| w[0] < w[1]);
    let in_range = idx.iter().all(|&i| i < items.len());
    let sum: Option<u64> = in_range
        .then(|| idx.iter().try_fold(0u64, |s, &i| s.checked_add(items[i])))
        .flatten();
    let ok = distinct && sum == Some(result.value);
    Clause {
        name: "witness sums to value",
        passed: ok,
        margin: if ok { 0 } else { -1 },
    }
}

/// Checks `Σ(Y) = value`, `value ≤ t` and `value ≥ min{OPT, (1−ε)t}`
/// against a known optimum.
pub fn verify_guarantee(
    inst: &SubsetSumInstance,
    result: &ApproxResult,
    eps: Epsilon,
    oracle_opt: u64,
) -> GuaranteeReport {
    let v = result.value as i128;
    let floor = oracle_opt.min(ceil_one_minus(eps, inst.target));
    GuaranteeReport {
        clauses: alloc::vec![
            witness_clause(&inst.items, result),
            clause("value <= t", inst.target as i128 - v),
            clause("value >= min(OPT, (1-eps)t)", v - floor as i128),
        ],
    }
}

/// Checks `Σ(Y) = value` and `(1−ε)·OPT ≤ value ≤ OPT`.
pub fn verify_partition(
    inst: &PartitionInstance,
    result: &ApproxResult,
    eps: Epsilon,
    oracle_opt: u64,
) -> GuaranteeReport {
    let v = result.value as i128;
    GuaranteeReport {
        clauses: alloc::vec![
            witness_clause(&inst.items, result),
            clause("value <= OPT", oracle_opt as i128 - v),
            clause(
                "value >= (1-eps)OPT",
                v - ceil_one_minus(eps, oracle_opt) as i128
            ),
        ],
    }
}
