//! The deterministic approximation scheme for Partition.
//!
//! Given `X` with total `σ`, [`approximate_partition`] returns a subset `Y'`
//! with `(1−ε)·OPT ≤ Σ(Y') ≤ OPT`, where `OPT` is the best subset sum not
//! exceeding `⌊σ/2⌋`. The items are split greedily into at most `L` parts,
//! each of which is either a single item or has total at most `4σ/L`.
//! Every part gets a sparse approximation of all its subset sums (the
//! *bottom half*, a balanced tree of approximate sumsets), the part sets
//! are divided by `R` and rounded down, and their sumset is computed
//! exactly by fast convolution (the *top half*). The largest sum not
//! exceeding `⌊σ/2⌋` is traced back to an item set `Y`, and `Y` or its
//! complement is returned.
//!
//! The additive losses are at most `Δ` from the bottom half and `L·R ≤ Δ`
//! from rounding, with `Δ = ⌊εσ/8⌋`. Since `OPT ≥ σ/4` whenever no item
//! exceeds `σ/2`, a loss of `2Δ ≤ εσ/4` stays within `ε·OPT`. With
//! `Δ = 1` every step is exact.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::approxset::{sparsify_sorted, unbounded_sumset};
use crate::error::param;
use crate::instance::{ApproxResult, Epsilon, Guarantee, Mode, PartitionInstance};
use crate::minconv::{MinConvEngine, NaiveEngine};
use crate::ntt::exact_sumset;
use crate::sparse::{Cap, SparseSet};
use crate::{Error, Result};

/// Splits item indices into at most `L` parts: items with `L·x > 2σ` are
/// singletons; the rest are packed in input order, closing a part as soon
/// as `L·Σ(part) ≥ 2σ`. Non-singleton parts then have total below `4σ/L`.
pub fn greedy_partition_split(items: &[u64], l: u64) -> Result<Vec<Vec<usize>>> {
    let sigma: u128 = items.iter().map(|&x| x as u128).sum();
    if l == 0 || l as u128 > sigma.max(1) {
        return Err(param!("need 1 <= L <= sigma, got L = {l}"));
    }
    let l = l as u128;
    let mut parts = Vec::new();
    let mut open = Vec::new();
    let mut open_sum = 0u128;
    for (i, &x) in items.iter().enumerate() {
        if l * x as u128 > 2 * sigma {
            parts.push(alloc::vec![i]);
            continue;
        }
        open.push(i);
        open_sum += x as u128;
        if l * open_sum >= 2 * sigma {
            parts.push(core::mem::take(&mut open));
            open_sum = 0;
        }
    }
    if !open.is_empty() {
        parts.push(open);
    }
    Ok(parts)
}

/// Balanced sumset tree over one part; every node keeps its set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BottomTree {
    Leaf {
        item: usize,
        set: SparseSet,
    },
    Node {
        set: SparseSet,
        children: Box<[BottomTree; 2]>,
    },
}

impl BottomTree {
    pub fn set(&self) -> &SparseSet {
        match self {
            BottomTree::Leaf { set, .. } | BottomTree::Node { set, .. } => set,
        }
    }
}

fn build_bottom<E: MinConvEngine>(
    values: &[u64],
    idx: &[usize],
    delta: u64,
    engine: &E,
) -> Result<(BottomTree, u64)> {
    if let [i] = idx {
        let x = values[*i];
        let set = SparseSet::from_raw(alloc::vec![0, x], delta, Cap::Infinite);
        return Ok((BottomTree::Leaf { item: *i, set }, x));
    }
    let (lo, hi) = idx.split_at(idx.len() / 2);
    let (left, s1) = build_bottom(values, lo, delta, engine)?;
    let (right, s2) = build_bottom(values, hi, delta, engine)?;
    let total = s1.checked_add(s2).ok_or(Error::Overflow("bottom half"))?;
    let sums = unbounded_sumset(left.set(), right.set(), total, delta, engine)?;
    let set = SparseSet::from_raw(sparsify_sorted(&sums, delta), delta, Cap::Infinite);
    Ok((
        BottomTree::Node {
            set,
            children: Box::new([left, right]),
        },
        total,
    ))
}

/// A `Δ`-sparse subset of `S(X_i)` that `(∞, Δ)`-approximates `S(X_i)`,
/// together with the tree it was built from. Indices in the tree refer to
/// positions in `values`. An empty part yields `{0}`.
pub fn bottom_half<E: MinConvEngine>(
    values: &[u64],
    idx: &[usize],
    delta: u64,
    engine: &E,
) -> Result<Option<BottomTree>> {
    if delta == 0 {
        return Err(param!("delta must be at least 1"));
    }
    if idx.is_empty() {
        return Ok(None);
    }
    build_bottom(values, idx, delta, engine).map(|(tree, _)| Some(tree))
}

fn reconstruct_bottom(tree: &BottomTree, target: u64, out: &mut Vec<usize>) -> Result<()> {
    match tree {
        BottomTree::Leaf { item, set } => {
            if !set.contains(target) {
                return Err(Error::NotInSet(target));
            }
            if target != 0 {
                out.push(*item);
            }
            Ok(())
        }
        BottomTree::Node { children, .. } => {
            let [l, r] = &**children;
            let (a, b) = split_sum(l.set(), r.set(), target).ok_or(Error::NotInSet(target))?;
            reconstruct_bottom(l, a, out)?;
            reconstruct_bottom(r, b, out)
        }
    }
}

/// `⌊Z/R⌋` as a sorted, duplicate-free set.
pub fn weak_round(z: &[u64], r: u64) -> Result<Vec<u64>> {
    if r == 0 {
        return Err(param!("rounding factor must be at least 1"));
    }
    let mut out: Vec<u64> = z.iter().map(|&x| x / r).collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Levels of a balanced exact-sumset tree; level 0 holds the inputs and
/// the last level holds the single root. An odd node out is carried up
/// unchanged.
fn sumset_levels(sets: Vec<Vec<u64>>) -> Result<Vec<Vec<Vec<u64>>>> {
    let mut levels = alloc::vec![sets];
    while levels.last().unwrap().len() > 1 {
        let prev = levels.last().unwrap();
        let next = prev
            .chunks(2)
            .map(|pair| match pair {
                [a, b] => exact_sumset(a, b),
                [a] => Ok(a.clone()),
                _ => unreachable!(),
            })
            .collect::<Result<Vec<_>>>()?;
        levels.push(next);
    }
    Ok(levels)
}

/// `Z_1 + … + Z_L`, exactly. Inputs must be sorted and duplicate-free.
/// The empty list yields `{0}`.
pub fn exact_sumset_tree(sets: &[Vec<u64>]) -> Result<Vec<u64>> {
    if sets.is_empty() {
        return Ok(alloc::vec![0]);
    }
    if sets.iter().any(|s| s.windows(2).any(|w| w[0] >= w[1])) {
        return Err(param!("sumset inputs must be sorted without duplicates"));
    }
    let mut levels = sumset_levels(sets.to_vec())?;
    Ok(levels.pop().unwrap().pop().unwrap())
}

/// First pair `(a, target − a)` with `a ∈ left`, `target − a ∈ right`.
fn split_sum(left: &[u64], right: &[u64], target: u64) -> Option<(u64, u64)> {
    left.iter()
        .take_while(|&&a| a <= target)
        .find(|&&a| right.binary_search(&(target - a)).is_ok())
        .map(|&a| (a, target - a))
}

/// Everything [`reconstruct_partition`] needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTrace {
    pub items: Vec<u64>,
    pub l: u64,
    pub delta: u64,
    pub r: u64,
    /// Item indices per part.
    pub parts: Vec<Vec<usize>>,
    pub bottom: Vec<BottomTree>,
    /// Exact-sumset tree over the rounded part sets.
    pub levels: Vec<Vec<Vec<u64>>>,
}

impl PartitionTrace {
    /// The rounded sumset `S`, scaled back by `R`.
    pub fn sums(&self) -> Vec<u64> {
        self.rounded_root().iter().map(|&s| s * self.r).collect()
    }

    fn rounded_root(&self) -> &[u64] {
        &self.levels.last().unwrap()[0]
    }

    /// `max{s ∈ S : s ≤ cap}`.
    pub fn best_at_most(&self, cap: u64) -> u64 {
        let root = self.rounded_root();
        let k = root.partition_point(|&s| s <= cap / self.r);
        root[k - 1] * self.r
    }
}

/// Items `Y` with `R·Σ⌊z_i/R⌋ = s` for the per-part values `z_i` used,
/// hence `s ≤ Σ(Y) ≤ s + L·R`. `s` must lie in [`PartitionTrace::sums`].
pub fn reconstruct_partition(trace: &PartitionTrace, s: u64) -> Result<Vec<usize>> {
    if !s.is_multiple_of(trace.r) {
        return Err(Error::NotInSet(s));
    }
    let rounded = s / trace.r;
    if trace.rounded_root().binary_search(&rounded).is_err() {
        return Err(Error::NotInSet(s));
    }
    // walk the top tree down to one rounded value per part
    let mut values = alloc::vec![rounded];
    for h in (1..trace.levels.len()).rev() {
        let below = &trace.levels[h - 1];
        let mut next = Vec::with_capacity(below.len());
        for (j, &v) in values.iter().enumerate() {
            if 2 * j + 1 < below.len() {
                let (a, b) =
                    split_sum(&below[2 * j], &below[2 * j + 1], v).ok_or(Error::NotInSet(v))?;
                next.push(a);
                next.push(b);
            } else {
                next.push(v);
            }
        }
        values = next;
    }
    let mut out = Vec::new();
    for (tree, &v) in trace.bottom.iter().zip(&values) {
        let z = tree
            .set()
            .iter()
            .copied()
            .find(|&z| z / trace.r == v)
            .ok_or(Error::NotInSet(v))?;
        reconstruct_bottom(tree, z, &mut out)?;
    }
    out.sort_unstable();
    Ok(out)
}

/// `⌈ε^{−1/2}⌉`.
pub fn default_l(eps: Epsilon) -> u64 {
    let (num, den) = (eps.num() as u128, eps.den() as u128);
    let mut l: u128 = 1;
    while l * l * num < den {
        l += 1;
    }
    l as u64
}

/// Runs the scheme with the naive engine and `L = ⌈ε^{−1/2}⌉` unless given.
pub fn approximate_partition(
    inst: &PartitionInstance,
    eps: Epsilon,
    l: Option<u64>,
) -> Result<ApproxResult> {
    solve_partition(inst, eps, l, &NaiveEngine).map(|(r, _)| r)
}

/// Runs the scheme and also returns the trace (absent for the cases that
/// are solved directly: `σ ≤ 1` and an item above `σ/2`).
pub fn solve_partition<E: MinConvEngine>(
    inst: &PartitionInstance,
    eps: Epsilon,
    l: Option<u64>,
    engine: &E,
) -> Result<(ApproxResult, Option<PartitionTrace>)> {
    let items = &inst.items;
    let sigma = inst.sigma;
    let half = inst.half();
    let exact = |idx: Vec<usize>| {
        ApproxResult::from_indices(items, idx, eps, 0, Mode::ExactFallback, Guarantee::Exact)
    };
    if sigma <= 1 {
        return Ok((exact(Vec::new()), None));
    }
    // an item above σ/2 can never be taken; all others together fit
    if let Some(big) = items.iter().position(|&x| x > half) {
        let rest = (0..items.len()).filter(|&i| i != big).collect();
        return Ok((exact(rest), None));
    }
    let l = match l {
        Some(l) if l == 0 || l > sigma => {
            return Err(param!("need 1 <= L <= sigma = {sigma}, got L = {l}"))
        }
        Some(l) => l,
        None => default_l(eps).min(sigma),
    };
    let delta = (eps.floor_mul(sigma) / 8).max(1);
    let r = (delta / l).max(1);

    let parts = greedy_partition_split(items, l)?;
    let bottom = parts
        .iter()
        .map(|p| bottom_half(items, p, delta, engine).map(|t| t.expect("parts are non-empty")))
        .collect::<Result<Vec<_>>>()?;
    let rounded = bottom
        .iter()
        .map(|t| weak_round(t.set(), r))
        .collect::<Result<Vec<_>>>()?;
    let levels = sumset_levels(rounded)?;
    let trace = PartitionTrace {
        items: items.clone(),
        l,
        delta,
        r,
        parts,
        bottom,
        levels,
    };
    let s = trace.best_at_most(half);
    let y = reconstruct_partition(&trace, s)?;
    let sum: u64 = y.iter().map(|&i| items[i]).sum();
    let chosen = if sum <= half {
        y
    } else {
        let mut taken = alloc::vec![false; items.len()];
        for &i in &y {
            taken[i] = true;
        }
        (0..items.len()).filter(|&i| !taken[i]).collect()
    };
    let res = ApproxResult::from_indices(
        items,
        chosen,
        eps,
        delta,
        Mode::Approx,
        Guarantee::PartitionDeterministic,
    );
    Ok((res, Some(trace)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approxset::is_approximation;
    use crate::bruteforce::{opt_bruteforce, subset_sums_bruteforce};
    use alloc::vec;

    fn part_values(items: &[u64], parts: &[Vec<usize>]) -> Vec<Vec<u64>> {
        parts
            .iter()
            .map(|p| p.iter().map(|&i| items[i]).collect())
            .collect()
    }

    #[test]
    fn greedy_split_examples() {
        let x = [10, 10, 10, 10];
        let parts = greedy_partition_split(&x, 4).unwrap();
        assert_eq!(part_values(&x, &parts), vec![vec![10, 10], vec![10, 10]]);
        // 2σ/L = 102 and 100 ≤ 102, so nothing is a singleton
        let x = [100, 1, 1];
        let parts = greedy_partition_split(&x, 2).unwrap();
        assert_eq!(part_values(&x, &parts), vec![vec![100, 1, 1]]);
        let x = [100, 1, 1];
        let parts = greedy_partition_split(&x, 4).unwrap();
        assert_eq!(part_values(&x, &parts), vec![vec![100], vec![1, 1]]);
        assert_eq!(
            greedy_partition_split(&[3, 4, 5], 1).unwrap(),
            vec![vec![0, 1, 2]]
        );
        assert!(greedy_partition_split(&[3], 4).is_err());
    }

    #[test]
    fn greedy_split_bounds() {
        let x: Vec<u64> = (1..40).map(|i| (i * 37) % 91 + 1).collect();
        let sigma: u64 = x.iter().sum();
        for l in 1..30 {
            let parts = greedy_partition_split(&x, l).unwrap();
            assert!(parts.len() as u64 <= l);
            let mut seen: Vec<usize> = parts.concat();
            seen.sort_unstable();
            assert_eq!(seen, (0..x.len()).collect::<Vec<_>>());
            for p in &parts {
                let s: u64 = p.iter().map(|&i| x[i]).sum();
                assert!(p.len() == 1 || s * l <= 4 * sigma);
            }
        }
    }

    #[test]
    fn bottom_half_examples() {
        let t = bottom_half(&[9], &[0], 5, &NaiveEngine).unwrap().unwrap();
        assert_eq!(t.set().elems(), &[0, 9]);
        let t = bottom_half(&[3, 4], &[0, 1], 1, &NaiveEngine)
            .unwrap()
            .unwrap();
        assert_eq!(t.set().elems(), &[0, 3, 4, 7]);
        assert!(bottom_half(&[3], &[], 1, &NaiveEngine).unwrap().is_none());
    }

    #[test]
    fn bottom_half_approximates_all_subset_sums() {
        let x = [5, 8, 13, 2, 9, 11, 4, 7, 6, 3];
        let total: u64 = x.iter().sum();
        let all = subset_sums_bruteforce(&x, total).unwrap();
        let idx: Vec<usize> = (0..x.len()).collect();
        for delta in [1, 2, 3, 5, 8, 17] {
            let t = bottom_half(&x, &idx, delta, &NaiveEngine).unwrap().unwrap();
            assert!(is_approximation(t.set(), &all, Cap::Infinite, delta));
            for &z in t.set().iter() {
                let mut y = Vec::new();
                reconstruct_bottom(&t, z, &mut y).unwrap();
                assert_eq!(y.iter().map(|&i| x[i]).sum::<u64>(), z);
            }
        }
    }

    #[test]
    fn exact_sumset_tree_examples() {
        assert_eq!(
            exact_sumset_tree(&[vec![0, 1], vec![0, 2]]).unwrap(),
            vec![0, 1, 2, 3]
        );
        assert_eq!(exact_sumset_tree(&[vec![0, 4, 9]]).unwrap(), vec![0, 4, 9]);
        assert_eq!(
            exact_sumset_tree(&[vec![0, 1], vec![0, 2], vec![0, 4]]).unwrap(),
            (0..8).collect::<Vec<_>>()
        );
    }

    #[test]
    fn weak_round_examples() {
        assert_eq!(weak_round(&[0, 5, 9], 4).unwrap(), vec![0, 1, 2]);
        assert_eq!(weak_round(&[0, 5, 9], 1).unwrap(), vec![0, 5, 9]);
        assert!(weak_round(&[1], 0).is_err());
    }

    #[test]
    fn default_l_is_ceiling_of_inverse_root() {
        assert_eq!(default_l(Epsilon::new(1, 4).unwrap()), 2);
        assert_eq!(default_l(Epsilon::new(1, 5).unwrap()), 3);
        assert_eq!(default_l(Epsilon::new(1, 64).unwrap()), 8);
        assert_eq!(default_l(Epsilon::new(1, 2).unwrap()), 2);
    }

    #[test]
    fn scheme_examples() {
        let half = Epsilon::new(1, 2).unwrap();
        let r = approximate_partition(&PartitionInstance::new(vec![1, 1]).unwrap(), half, None)
            .unwrap();
        assert_eq!(r.value, 1);
        let quarter = Epsilon::new(1, 4).unwrap();
        let inst = PartitionInstance::new(vec![3, 1, 1, 2, 2, 1]).unwrap();
        let r = approximate_partition(&inst, quarter, None).unwrap();
        assert_eq!(r.value, 5);
        assert_eq!(r.witness.iter().sum::<u64>(), 5);
        let r = approximate_partition(
            &PartitionInstance::new(vec![50, 3, 4]).unwrap(),
            quarter,
            None,
        )
        .unwrap();
        assert_eq!((r.value, r.mode), (7, Mode::ExactFallback));
        let r =
            approximate_partition(&PartitionInstance::new(vec![]).unwrap(), quarter, None).unwrap();
        assert_eq!(r.value, 0);
    }

    #[test]
    fn guarantee_on_fixed_instances() {
        let insts: [&[u64]; 4] = [
            &[9000, 4711, 1234, 999, 8765, 4321, 100, 77, 5555, 3000],
            &[1000, 1001, 1002, 1003, 1004, 1005, 1006],
            &[7; 11],
            &[6000, 6000, 1, 2, 3, 4, 5, 9999],
        ];
        for x in insts {
            let inst = PartitionInstance::new(x.to_vec()).unwrap();
            let opt = opt_bruteforce(x, inst.half()).unwrap();
            for den in [4, 16, 64] {
                let eps = Epsilon::new(1, den).unwrap();
                let (r, trace) = solve_partition(&inst, eps, None, &NaiveEngine).unwrap();
                assert!(
                    r.value <= opt && r.value * den >= opt * (den - 1),
                    "{x:?} 1/{den}"
                );
                if let Some(tr) = trace {
                    assert!(tr.best_at_most(inst.half()) + 2 * tr.delta >= opt);
                }
            }
        }
    }

    #[test]
    fn reconstruction_covers_every_sum() {
        let x = [30, 41, 17, 25, 60, 12, 9, 33];
        let inst = PartitionInstance::new(x.to_vec()).unwrap();
        let (_, trace) =
            solve_partition(&inst, Epsilon::new(1, 4).unwrap(), Some(3), &NaiveEngine).unwrap();
        let trace = trace.unwrap();
        assert_eq!(
            reconstruct_partition(&trace, 0).unwrap(),
            Vec::<usize>::new()
        );
        for s in trace.sums() {
            let y = reconstruct_partition(&trace, s).unwrap();
            let sum: u64 = y.iter().map(|&i| x[i]).sum();
            assert!(s <= sum && sum <= s + trace.l * trace.r);
        }
        assert!(reconstruct_partition(&trace, trace.r * 100_000).is_err());
    }

    #[test]
    fn deterministic() {
        let inst = PartitionInstance::new(vec![13, 8, 21, 34, 5, 3, 2, 1, 1, 55]).unwrap();
        let eps = Epsilon::new(1, 16).unwrap();
        assert_eq!(
            solve_partition(&inst, eps, None, &NaiveEngine).unwrap(),
            solve_partition(&inst, eps, None, &NaiveEngine).unwrap()
        );
    }
}
