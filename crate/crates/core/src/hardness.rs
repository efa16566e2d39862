//! Exact Knapsack solvers and the reduction from Knapsack to GapSubsetSum.
//!
//! The reduction pads the instance so that any solution can be completed
//! to total weight exactly `W` and total value exactly `V`, then encodes
//! item `i` as `x_i = w_i·M' − v_i` with `M' = 4nM`. A solution becomes a
//! subset summing to `t = W·M' − V`; without a solution, every subset sum
//! not exceeding `t` stays below `(1−ε)t` for `ε = 1/(2W)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::param;
use crate::instance::{Epsilon, KnapsackInstance, SubsetSumInstance};
use crate::subsetsum::approximate_subset_sum;
use crate::{Error, Result};

/// Largest budget the weight-indexed DP accepts.
pub const BELLMAN_MAX_BUDGET: u64 = 1 << 26;

/// Largest target the reduction produces.
pub const GAP_MAX_TARGET: u128 = 1 << 126;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnapsackOutcome {
    /// Best total value with total weight at most `W`.
    pub opt: i64,
    /// Whether `opt ≥ V`.
    pub solvable: bool,
}

/// Weight-indexed DP in `O(nW)` time. Weight-0 and negative-value items
/// (as in padded instances) are handled.
pub fn bellman_knapsack(inst: &KnapsackInstance) -> Result<KnapsackOutcome> {
    let w_max = inst.budget;
    if w_max > BELLMAN_MAX_BUDGET {
        return Err(Error::Limit(alloc::format!(
            "budget {w_max} exceeds {BELLMAN_MAX_BUDGET}"
        )));
    }
    let cap = w_max as usize;
    let mut best = vec![0i64; cap + 1];
    for (&w, &v) in inst.weights.iter().zip(&inst.values) {
        if w > w_max || v <= 0 {
            continue;
        }
        let w = w as usize;
        for c in (w..=cap).rev() {
            let cand = best[c - w]
                .checked_add(v)
                .ok_or(Error::Overflow("knapsack value"))?;
            if cand > best[c] {
                best[c] = cand;
            }
        }
    }
    let opt = best[cap];
    Ok(KnapsackOutcome {
        opt,
        solvable: opt >= inst.goal as i64,
    })
}

/// Keeps, for every weight `w`, only the `⌊W/w⌋` most valuable items (ties
/// broken by position). The optimum is unchanged.
pub fn knapsack_preprocess(inst: &KnapsackInstance) -> Result<KnapsackInstance> {
    if inst.weights.contains(&0) {
        return Err(param!("preprocessing needs positive weights"));
    }
    let mut order: Vec<usize> = (0..inst.n()).collect();
    order.sort_by_key(|&i| (inst.weights[i], core::cmp::Reverse(inst.values[i]), i));
    let mut keep = vec![false; inst.n()];
    for class in order.chunk_by(|&a, &b| inst.weights[a] == inst.weights[b]) {
        let quota = (inst.budget / inst.weights[class[0]]) as usize;
        for &i in class.iter().take(quota) {
            keep[i] = true;
        }
    }
    let (weights, values) = (0..inst.n())
        .filter(|&i| keep[i])
        .map(|i| (inst.weights[i], inst.values[i]))
        .unzip();
    KnapsackInstance::from_parts(weights, values, inst.budget, inst.goal)
}

fn floor_log2(x: u64) -> u32 {
    63 - x.leading_zeros()
}

/// Caps every value at `V` and appends items `(2^i, 0)` for
/// `0 ≤ i ≤ ⌊log₂W⌋` and `(0, −2^i)` for `0 ≤ i ≤ ⌊log₂V⌋`. Solvability is
/// unchanged, and a solvable instance then has a solution of weight
/// exactly `W` and value exactly `V`.
///
/// The cap matters: a minimal solution of the capped instance has value
/// below `2V`, so the negative items can always remove the excess. Without
/// it a single item of value far above `V` could not be brought down to
/// exactly `V`.
pub fn pad_instance(inst: &KnapsackInstance) -> Result<KnapsackInstance> {
    let goal = i64::try_from(inst.goal).map_err(|_| Error::Overflow("knapsack goal"))?;
    let mut weights = inst.weights.clone();
    let mut values: Vec<i64> = inst.values.iter().map(|&v| v.min(goal)).collect();
    for i in 0..=floor_log2(inst.budget) {
        weights.push(1 << i);
        values.push(0);
    }
    for i in 0..=floor_log2(inst.goal) {
        weights.push(0);
        values.push(-(1i64 << i));
    }
    KnapsackInstance::from_parts(weights, values, inst.budget, inst.goal)
}

/// A GapSubsetSum instance: decide `OPT = t` versus `OPT < (1−ε)t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapInstance {
    pub items: Vec<u128>,
    pub target: u128,
    pub eps: Epsilon,
}

impl GapInstance {
    /// The instance as a 63-bit SubsetSum instance, if it fits.
    pub fn to_subset_sum(&self) -> Result<SubsetSumInstance> {
        let fit =
            |x: u128| u64::try_from(x).map_err(|_| Error::Overflow("gap instance to 63 bits"));
        let items = self
            .items
            .iter()
            .map(|&x| fit(x))
            .collect::<Result<Vec<_>>>()?;
        SubsetSumInstance::new(items, fit(self.target)?)
    }
}

/// Pads the instance, sets `M' = 4nM` for the padded item count `n` and the
/// largest absolute number `M`, and returns `x_i = w_i·M' − v_i`,
/// `t = W·M' − V`, `ε = 1/(2W)`.
pub fn knapsack_to_gap_instance(inst: &KnapsackInstance) -> Result<GapInstance> {
    let padded = pad_instance(inst)?;
    let overflow = || Error::Overflow("knapsack reduction");
    let m_prime = 4u128
        .checked_mul(padded.n() as u128)
        .and_then(|x| x.checked_mul(padded.max_abs as u128))
        .ok_or_else(overflow)?;
    let encode = |w: u64, v: i64| -> Result<u128> {
        let scaled = (w as u128).checked_mul(m_prime).ok_or_else(overflow)?;
        let x = if v >= 0 {
            scaled.checked_sub(v as u128)
        } else {
            scaled.checked_add(v.unsigned_abs() as u128)
        };
        x.filter(|&x| x > 0).ok_or_else(overflow)
    };
    let items = padded
        .weights
        .iter()
        .zip(&padded.values)
        .map(|(&w, &v)| encode(w, v))
        .collect::<Result<Vec<_>>>()?;
    let target = encode(inst.budget, inst.goal as i64)?;
    if target > GAP_MAX_TARGET {
        return Err(Error::Limit(alloc::format!(
            "gap target {target} exceeds 2^126"
        )));
    }
    let eps = Epsilon::new(1, 2 * inst.budget)?;
    Ok(GapInstance { items, target, eps })
}

/// Answers GapSubsetSum with the approximation scheme: YES iff the value
/// found is at least `(1−ε)t`. Under the promise the answer is correct with
/// high probability; outside it the answer is unspecified.
pub fn gap_subset_sum(items: &[u64], t: u64, eps: Epsilon, seed: u64) -> Result<bool> {
    let inst = SubsetSumInstance::new(items.to_vec(), t)?;
    let r = approximate_subset_sum(&inst, eps, seed)?;
    Ok(eps.meets_fraction(r.value, t))
}

/// Decides Knapsack. Instances with `n ≤ ⌈log₂M⌉` go to Bellman's DP;
/// larger ones are reduced and handed to `gap_solver`.
pub fn solve_knapsack_via_gap<F>(inst: &KnapsackInstance, gap_solver: F) -> Result<bool>
where
    F: FnOnce(&GapInstance) -> Result<bool>,
{
    let log_m = 64 - (inst.max_abs.max(1) - 1).leading_zeros();
    if inst.n() as u32 <= log_m {
        return bellman_knapsack(inst).map(|o| o.solvable);
    }
    gap_solver(&knapsack_to_gap_instance(inst)?)
}

/// The default gap solver: [`gap_subset_sum`] on the 63-bit instance.
pub fn scheme_gap_solver(seed: u64) -> impl Fn(&GapInstance) -> Result<bool> {
    move |g| {
        let inst = g.to_subset_sum()?;
        gap_subset_sum(&inst.items, inst.target, g.eps, seed)
    }
}
