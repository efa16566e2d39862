//! The `(t, Δ)`-approximation algebra.
//!
//! `A` *`(t, Δ)`-approximates* `B` when `A ⊆ B ⊆ [0, t]` and every `b ∈ B`
//! is bracketed by elements of `A ∪ {t+1}` that are at most `Δ` apart. With
//! an infinite cap the extra `t+1` element disappears and every `b` must be
//! bracketed by elements of `A` itself.
//!
//! Sets are passed as sorted, duplicate-free slices unless a function
//! requires sparsity, in which case it takes a [`SparseSet`].

use alloc::vec;
use alloc::vec::Vec;

use crate::error::param;
use crate::minconv::{batch_max_conv, batch_min_conv, max_conv_with, ExtSeq, MinConvEngine};
use crate::sparse::{is_strictly_increasing, Cap, SparseSet};
use crate::Result;

/// Lower and upper approximation of `b` in `A ∪ {t+1}`. `None` stands for
/// `−∞` (lower) and `+∞` (upper).
pub fn apx_bounds(b: u64, a: &[u64], cap: Cap) -> (Option<u64>, Option<u64>) {
    let ceiling = cap.finite().map(|t| t + 1);
    let below = a.partition_point(|&x| x <= b);
    let lower = below
        .checked_sub(1)
        .map(|i| a[i])
        .max(ceiling.filter(|&c| c <= b));
    let upper = match (
        a.get(a.partition_point(|&x| x < b)),
        ceiling.filter(|&c| c >= b),
    ) {
        (Some(&x), Some(c)) => Some(x.min(c)),
        (x, c) => x.copied().or(c),
    };
    (lower, upper)
}

/// Whether `a` `(cap, Δ)`-approximates `b`. Both must be sorted.
pub fn is_approximation(a: &[u64], b: &[u64], cap: Cap, delta: u64) -> bool {
    if !is_strictly_increasing(a) || !is_strictly_increasing(b) {
        return false;
    }
    if b.last().is_some_and(|&m| !cap.contains(m)) {
        return false;
    }
    if !is_subset(a, b) {
        return false;
    }
    b.iter().all(|&x| match apx_bounds(x, a, cap) {
        (Some(lo), Some(hi)) => hi - lo <= delta,
        _ => false,
    })
}

fn is_subset(a: &[u64], b: &[u64]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
    }
    true
}

/// One left-to-right sweep that keeps at most two elements in any window
/// `[x, x+Δ]`: whenever the newest kept element is within `Δ` of the one
/// two positions back, the middle one is dropped.
pub(crate) fn sparsify_sorted(b: &[u64], delta: u64) -> Vec<u64> {
    let mut kept: Vec<u64> = Vec::with_capacity(b.len());
    for &x in b {
        kept.push(x);
        let n = kept.len();
        if n >= 3 && kept[n - 1] - kept[n - 3] <= delta {
            kept[n - 2] = kept[n - 1];
            kept.pop();
        }
    }
    kept
}

/// A `Δ`-sparse subset of `b` that `(cap, Δ)`-approximates `b`.
pub fn sparsify(b: &[u64], cap: Cap, delta: u64) -> Result<SparseSet> {
    if !is_strictly_increasing(b) {
        return Err(param!("sparsify input must be sorted without duplicates"));
    }
    if let Some(&m) = b.last() {
        if !cap.contains(m) {
            return Err(param!("sparsify input element {m} exceeds cap"));
        }
    }
    Ok(SparseSet::from_raw(sparsify_sorted(b, delta), delta, cap))
}

/// `A ∩ [0, t']`, re-capped at `t'`.
pub fn shift_down(a: &SparseSet, t_new: u64) -> Result<SparseSet> {
    if let Cap::Finite(t) = a.cap() {
        if t_new > t {
            return Err(param!("cannot shift cap {t} down to {t_new}"));
        }
    }
    let keep = a.partition_point(|&x| x <= t_new);
    Ok(SparseSet::from_raw(
        a[..keep].to_vec(),
        a.delta(),
        Cap::Finite(t_new),
    ))
}

/// Sorted union of two sets, then sparsified.
pub fn merge_union(a1: &SparseSet, a2: &SparseSet, cap: Cap, delta: u64) -> Result<SparseSet> {
    let mut u = Vec::with_capacity(a1.len() + a2.len());
    let (mut i, mut j) = (0, 0);
    while i < a1.len() || j < a2.len() {
        let next = match (a1.get(i), a2.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
                x
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (_, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        u.push(next);
    }
    sparsify(&u, cap, delta)
}

fn check_sumset_args(a1: &SparseSet, a2: &SparseSet, t: u64, delta: u64) -> Result<()> {
    if delta == 0 {
        return Err(param!("delta must be at least 1"));
    }
    for a in [a1, a2] {
        if a.delta() < delta {
            return Err(param!("input is only {}-sparse, need {delta}", a.delta()));
        }
        if let Some(m) = a.max() {
            if m > t {
                return Err(param!("input element {m} exceeds t = {t}"));
            }
        }
    }
    Ok(())
}

/// Number of half-width intervals used to unfold a set inside `[0, t]`.
fn interval_count(t: u64, delta: u64) -> usize {
    let q = t.div_ceil(delta).max(1);
    (4 * q) as usize
}

/// Unfolds a `Δ`-sparse set into a sequence of length `2n`, `n = 4⌈t/Δ⌉`:
/// entries `2i` and `2i+1` are the minimum and maximum of the set inside
/// the closed interval `[iΔ/2, (i+1)Δ/2]`. An element on a boundary
/// belongs to both neighbouring intervals.
pub fn unfold(a: &[u64], t: u64, delta: u64) -> ExtSeq {
    let n = interval_count(t, delta);
    let mut x: ExtSeq = vec![None; 2 * n];
    let mut put = |i: usize, v: u64| {
        let v = v as i64;
        if x[2 * i].is_none_or(|m| v < m) {
            x[2 * i] = Some(v);
        }
        if x[2 * i + 1].is_none_or(|m| v > m) {
            x[2 * i + 1] = Some(v);
        }
    };
    for &v in a {
        let twice = 2 * v as u128;
        let i = (twice / delta as u128) as usize;
        if i < n {
            put(i, v);
        }
        if twice.is_multiple_of(delta as u128) && i >= 1 && i - 1 < n {
            put(i - 1, v);
        }
    }
    x
}

fn collect_defined(cmin: &[Option<i64>], cmax: &[Option<i64>]) -> Vec<u64> {
    let mut out: Vec<u64> = cmin
        .iter()
        .chain(cmax)
        .flatten()
        .map(|&v| v as u64)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// A set that `(∞, Δ)`-approximates `A1 + A2`, computed with one
/// (min,+)- and one (max,+)-convolution of the unfolded inputs. The result
/// is a sorted subset of `A1 + A2`; it is not sparsified.
pub fn unbounded_sumset<E: MinConvEngine>(
    a1: &SparseSet,
    a2: &SparseSet,
    t: u64,
    delta: u64,
    engine: &E,
) -> Result<Vec<u64>> {
    check_sumset_args(a1, a2, t, delta)?;
    let x1 = unfold(a1, t, delta);
    let x2 = unfold(a2, t, delta);
    let cmin = engine.min_conv(&x1, &x2)?;
    let cmax = max_conv_with(engine, &x1, &x2)?;
    Ok(collect_defined(&cmin, &cmax))
}

/// A set that sparsely `(t, Δ)`-approximates `B1 ⊕_t B2` whenever `A_r`
/// sparsely `(t, Δ)`-approximates `B_r`: the unbounded sumset, cut at `t`,
/// then sparsified.
pub fn capped_sumset<E: MinConvEngine>(
    a1: &SparseSet,
    a2: &SparseSet,
    t: u64,
    delta: u64,
    engine: &E,
) -> Result<SparseSet> {
    let sums = unbounded_sumset(a1, a2, t, delta, engine)?;
    Ok(finish_capped(sums, t, delta))
}

fn finish_capped(mut sums: Vec<u64>, t: u64, delta: u64) -> SparseSet {
    let keep = sums.partition_point(|&x| x <= t);
    sums.truncate(keep);
    SparseSet::from_raw(sparsify_sorted(&sums, delta), delta, Cap::Finite(t))
}

/// One capped-sumset job for [`capped_sumset_many`].
#[derive(Debug, Clone, Copy)]
pub struct CappedJob<'a> {
    pub a1: &'a SparseSet,
    pub a2: &'a SparseSet,
    pub t: u64,
}

/// Runs independent capped sumsets with a common `Δ`. With `batched` set,
/// all min-convolutions go through a single [`batch_min_conv`] call and
/// all max-convolutions through a single [`batch_max_conv`] call; the
/// results are identical to running the jobs one by one.
pub fn capped_sumset_many<E: MinConvEngine>(
    jobs: &[CappedJob<'_>],
    delta: u64,
    engine: &E,
    batched: bool,
) -> Result<Vec<SparseSet>> {
    if !batched || jobs.len() <= 1 {
        return jobs
            .iter()
            .map(|j| capped_sumset(j.a1, j.a2, j.t, delta, engine))
            .collect();
    }
    let mut packed = Vec::with_capacity(jobs.len());
    for j in jobs {
        check_sumset_args(j.a1, j.a2, j.t, delta)?;
        packed.push((unfold(j.a1, j.t, delta), unfold(j.a2, j.t, delta)));
    }
    let mins = batch_min_conv(&packed, engine)?;
    let maxs = batch_max_conv(&packed, engine)?;
    Ok(jobs
        .iter()
        .zip(mins.iter().zip(&maxs))
        .map(|(j, (cmin, cmax))| finish_capped(collect_defined(cmin, cmax), j.t, delta))
        .collect())
}
