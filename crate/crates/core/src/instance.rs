//! Problem instances, the rational accuracy parameter and solver results.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{invalid, param};
use crate::{Error, Result};

/// Largest admissible input number: every item, target and budget fits in
/// 63 bits.
pub const MAX_INPUT: u64 = i64::MAX as u64;

/// A SubsetSum instance: a multiset of positive items and a target `t`.
///
/// Items may repeat. They are kept in input order because the greedy base
/// case uses that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetSumInstance {
    pub items: Vec<u64>,
    pub target: u64,
}

impl SubsetSumInstance {
    pub fn new(items: Vec<u64>, target: u64) -> Result<Self> {
        if target == 0 {
            return Err(invalid!("target must be positive"));
        }
        if target > MAX_INPUT {
            return Err(invalid!("target {target} exceeds 63 bits"));
        }
        check_items(&items)?;
        Ok(Self { items, target })
    }

    pub fn n(&self) -> usize {
        self.items.len()
    }
}

/// A Partition instance. `sigma` is the total of all items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionInstance {
    pub items: Vec<u64>,
    pub sigma: u64,
}

impl PartitionInstance {
    pub fn new(items: Vec<u64>) -> Result<Self> {
        check_items(&items)?;
        let mut sigma = 0u64;
        for &x in &items {
            sigma = sigma
                .checked_add(x)
                .filter(|&s| s <= MAX_INPUT)
                .ok_or_else(|| invalid!("item total exceeds 63 bits"))?;
        }
        Ok(Self { items, sigma })
    }

    /// `⌊σ/2⌋`, the capacity a partition half may use.
    pub fn half(&self) -> u64 {
        self.sigma / 2
    }
}

fn check_items(items: &[u64]) -> Result<()> {
    for (i, &x) in items.iter().enumerate() {
        if x == 0 {
            return Err(invalid!("item {i} is zero; items must be positive"));
        }
        if x > MAX_INPUT {
            return Err(invalid!("item {i} exceeds 63 bits"));
        }
    }
    Ok(())
}

/// A 0/1 Knapsack decision instance: is there a subset with total weight at
/// most `budget` and total value at least `goal`?
///
/// Instances built with [`KnapsackInstance::new`] have all numbers in
/// `1..=M`. The padded intermediate instance of the GapSubsetSum reduction
/// additionally carries weight-0 items with negative values; see
/// [`crate::hardness::pad_instance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnapsackInstance {
    pub weights: Vec<u64>,
    pub values: Vec<i64>,
    pub budget: u64,
    pub goal: u64,
    /// Largest absolute input number.
    pub max_abs: u64,
}

impl KnapsackInstance {
    pub fn new(weights: Vec<u64>, values: Vec<i64>, budget: u64, goal: u64) -> Result<Self> {
        if weights.len() != values.len() {
            return Err(invalid!(
                "{} weights but {} values",
                weights.len(),
                values.len()
            ));
        }
        if budget == 0 || goal == 0 {
            return Err(invalid!("budget and goal must be positive"));
        }
        for (i, (&w, &v)) in weights.iter().zip(&values).enumerate() {
            if w == 0 || v <= 0 {
                return Err(invalid!("item {i}: weight and value must be positive"));
            }
        }
        Self::from_parts(weights, values, budget, goal)
    }

    /// Builds an instance without the positivity checks. Used for the padded
    /// intermediate instance.
    pub(crate) fn from_parts(
        weights: Vec<u64>,
        values: Vec<i64>,
        budget: u64,
        goal: u64,
    ) -> Result<Self> {
        let mut max_abs = budget.max(goal);
        for (&w, &v) in weights.iter().zip(&values) {
            max_abs = max_abs.max(w).max(v.unsigned_abs());
        }
        if max_abs > MAX_INPUT {
            return Err(invalid!("knapsack number exceeds 63 bits"));
        }
        Ok(Self {
            weights,
            values,
            budget,
            goal,
            max_abs,
        })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }
}

/// Accuracy parameter `ε = num/den` with `0 < ε < 1`, kept as an exact
/// rational so thresholds such as `(1−ε)t` are compared without rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Epsilon {
    num: u64,
    den: u64,
}

impl Epsilon {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 || num >= den {
            return Err(param!("epsilon {num}/{den} is not in (0, 1)"));
        }
        let g = gcd(num, den);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `⌊ε·x⌋`.
    pub fn floor_mul(self, x: u64) -> u64 {
        (x as u128 * self.num as u128 / self.den as u128) as u64
    }

    /// Whether `value ≥ (1−ε)·t`, evaluated exactly.
    pub fn meets_fraction(self, value: u64, t: u64) -> bool {
        value as u128 * self.den as u128 >= t as u128 * (self.den - self.num) as u128
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Parses `"1/64"`, `"2^-6"` or a plain decimal such as `"0.015625"`.
/// Decimals are converted exactly.
impl FromStr for Epsilon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || param!("cannot parse epsilon {s:?}");
        if let Some((a, b)) = s.split_once('/') {
            let a = a.trim().parse().map_err(|_| bad())?;
            let b = b.trim().parse().map_err(|_| bad())?;
            return Self::new(a, b);
        }
        if let Some(e) = s.strip_prefix("2^-") {
            let e: u32 = e.parse().map_err(|_| bad())?;
            if e == 0 || e > 62 {
                return Err(bad());
            }
            return Self::new(1, 1u64 << e);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if int.chars().any(|c| !c.is_ascii_digit())
            || frac.chars().any(|c| !c.is_ascii_digit())
            || frac.len() > 18
            || (int.is_empty() && frac.is_empty())
        {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let frac_v: u64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let num = int
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac_v))
            .ok_or_else(bad)?;
        Self::new(num, den)
    }
}

/// How a result was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// An exact algorithm answered (Δ rounded to zero, or the instance was
    /// trivially solvable).
    ExactFallback,
    /// The approximation scheme answered.
    Approx,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::ExactFallback => "exact-fallback",
            Mode::Approx => "approx",
        }
    }
}

/// Which contract the reported value satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Guarantee {
    /// `value ≥ min{OPT, (1−ε)t}` with high probability, `value ≤ t` always.
    SubsetSumWhp,
    /// `(1−ε)·OPT ≤ value ≤ OPT` for Partition, unconditionally.
    PartitionDeterministic,
    /// `value = OPT`.
    Exact,
}

/// Outcome of one solver call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxResult {
    pub value: u64,
    /// The chosen items, as values.
    pub witness: Vec<u64>,
    /// Positions of the chosen items in the instance's item list.
    pub witness_indices: Vec<usize>,
    pub epsilon: Epsilon,
    pub delta: u64,
    pub mode: Mode,
    pub guarantee: Guarantee,
}

impl ApproxResult {
    pub(crate) fn from_indices(
        items: &[u64],
        mut indices: Vec<usize>,
        epsilon: Epsilon,
        delta: u64,
        mode: Mode,
        guarantee: Guarantee,
    ) -> Self {
        indices.sort_unstable();
        let witness: Vec<u64> = indices.iter().map(|&i| items[i]).collect();
        Self {
            value: witness.iter().sum(),
            witness,
            witness_indices: indices,
            epsilon,
            delta,
            mode,
            guarantee,
        }
    }
}
