//! The randomized approximation scheme for SubsetSum.
//!
//! Given `X`, `t` and `ε`, [`approximate_subset_sum`] returns a subset `Y`
//! with `Σ(Y) ≤ t` and, with high probability, `Σ(Y) ≥ min{OPT, (1−ε)t}`.
//! It sets `Δ = ⌊min{εt, t/8}⌋` and computes a set `A ⊆ S(X;t)` that
//! sparsely `(t, Δ)`-approximates `S(X;t)` by recursive splitting:
//!
//! * items no larger than `Δ` are handled greedily by prefix sums;
//! * items in `[t/k, t]` are handled by color coding: they are randomly
//!   spread over `k²` parts, each part contributes `{0} ∪ part`, and the
//!   parts are folded with capped sumsets; repeated for several rounds;
//! * the remaining small items are split in two at random and solved
//!   recursively with target `t' ≈ (1+η)t/2 + Δ`.
//!
//! The recursion is evaluated level by level. Every random decision is a
//! function of `(seed, node path, round)`, so evaluation order and batching
//! do not change results. All intermediate sets are kept in a
//! [`SolveTrace`] from which any value of the final set can be traced back
//! to a subset of the items.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::approxset::{capped_sumset_many, sparsify_sorted, CappedJob};
use crate::error::param;
use crate::instance::{ApproxResult, Epsilon, Guarantee, Mode, SubsetSumInstance};
use crate::minconv::{MinConvEngine, NaiveEngine};
use crate::rng::{stream, Purpose};
use crate::sparse::{Cap, SparseSet};
use crate::{Error, Result};

/// Default confidence constant `C`.
pub const DEFAULT_CONFIDENCE: u64 = 4;

/// Largest target the exact fallback DP accepts.
pub const EXACT_DP_MAX_TARGET: u64 = 1 << 28;

/// `⌈log₂(num/den)⌉` for positive integers, at least 0.
pub(crate) fn ceil_log2_ratio(num: u128, den: u128) -> u32 {
    let mut e = 0;
    while den << e < num {
        e += 1;
    }
    e
}

/// Parameters frozen at the top-level call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchemeParams {
    /// Confidence constant `C`.
    pub confidence: u64,
    /// Color-coding parameter: items with `k·x ≥ t` count as large and are
    /// spread over `k²` parts.
    pub k: u64,
    /// Color-coding rounds, `⌈C·log₂(n·t/Δ)⌉`.
    pub rounds: u64,
    /// `⌈log₂(t/Δ)⌉` of the top-level call; `η = 1/(2·log_ratio)`.
    pub log_ratio: u32,
    pub seed: u64,
}

impl SchemeParams {
    /// `k = max{8, C·⌈log₂(n·t/Δ)⌉³}`, `rounds = max{1, C·⌈log₂(n·t/Δ)⌉}`
    /// and `η = 1/(2⌈log₂(t/Δ)⌉)`.
    pub fn new(n: usize, t: u64, delta: u64, confidence: u64, seed: u64) -> Result<Self> {
        if delta == 0 || t < delta {
            return Err(param!("need 1 <= delta <= t, got delta = {delta}, t = {t}"));
        }
        if confidence == 0 {
            return Err(param!("confidence constant must be positive"));
        }
        let lg_ntd = ceil_log2_ratio(n.max(1) as u128 * t as u128, delta as u128) as u64;
        let k = confidence
            .checked_mul(lg_ntd.pow(3))
            .filter(|&k| k.checked_mul(k).is_some())
            .ok_or_else(|| param!("confidence {confidence} makes k^2 overflow"))?
            .max(8);
        Ok(Self {
            confidence,
            k,
            rounds: (confidence * lg_ntd).max(1),
            log_ratio: ceil_log2_ratio(t as u128, delta as u128).max(1),
            seed,
        })
    }

    /// Number of color classes, `k²`.
    pub fn colors(&self) -> u64 {
        self.k * self.k
    }

    /// Whether `x` is a large item for target `t` (`k·x ≥ t`).
    pub fn is_large(&self, x: u64, t: u64) -> bool {
        self.k as u128 * x as u128 >= t as u128
    }

    /// Child target `⌈t/2 + t/(4·log_ratio)⌉ + Δ`.
    pub fn child_target(&self, t: u64, delta: u64) -> u64 {
        let lg = self.log_ratio as u128;
        let num = t as u128 * (2 * lg + 1);
        (num.div_ceil(4 * lg) as u64).saturating_add(delta)
    }
}

/// Knobs that do not change the mathematical output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub confidence: u64,
    /// Route all same-level capped sumsets through one packed convolution.
    pub batched: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            confidence: DEFAULT_CONFIDENCE,
            batched: false,
        }
    }
}

/// One non-empty color class of one color-coding round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartTrace {
    pub color: u64,
    /// Item indices in this class.
    pub items: Vec<usize>,
    /// `Z_{r,j}`: sparsification of `{0} ∪ values`.
    pub z: SparseSet,
    /// `A_{r,j}`: the fold up to and including this class.
    pub acc: SparseSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTrace {
    /// Non-empty classes in increasing color order. Empty classes leave the
    /// fold unchanged and are not stored.
    pub parts: Vec<PartTrace>,
}

impl RoundTrace {
    fn result(&self) -> Option<&SparseSet> {
        self.parts.last().map(|p| &p.acc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorCodingTrace {
    pub items: Vec<usize>,
    pub rounds: Vec<RoundTrace>,
    /// Sparsified union of the round results.
    pub set: SparseSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    /// Prefix sums of `items` (in this order) up to the target.
    Greedy { items: Vec<usize> },
    Split {
        large: ColorCodingTrace,
        /// Node indices of the two halves.
        children: [usize; 2],
        /// Capped sumset of the two halves.
        small: SparseSet,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceNode {
    /// Heap index: root 1, children `2p` and `2p+1`.
    pub path: u64,
    pub depth: u32,
    pub target: u64,
    pub set: SparseSet,
    pub kind: NodeKind,
}

/// Every intermediate set of one run of [`recursive_splitting`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveTrace {
    /// Node 0 is the root.
    pub nodes: Vec<TraceNode>,
    pub delta: u64,
    /// Item values, indexed by the indices stored in the nodes.
    pub items: Vec<u64>,
}

impl SolveTrace {
    pub fn root_set(&self) -> &SparseSet {
        &self.nodes[0].set
    }

    pub fn depth(&self) -> u32 {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }
}

/// Greedy prefix sums for items that are all at most `Δ`. Always
/// `(t, Δ)`-approximates `S(X;t)`.
pub fn greedy_small(items: &[u64], t: u64, delta: u64) -> Result<SparseSet> {
    if let Some(&x) = items.iter().find(|&&x| x > delta) {
        return Err(param!("greedy needs items <= delta = {delta}, got {x}"));
    }
    let idx: Vec<usize> = (0..items.len()).collect();
    Ok(greedy_set(items, &idx, t, delta))
}

fn greedy_prefixes(values: &[u64], idx: &[usize], t: u64) -> Vec<u64> {
    let mut sums = vec![0u64];
    let mut s = 0u64;
    for &i in idx {
        match s.checked_add(values[i]) {
            Some(next) if next <= t => {
                s = next;
                sums.push(s);
            }
            _ => break,
        }
    }
    sums
}

fn greedy_set(values: &[u64], idx: &[usize], t: u64, delta: u64) -> SparseSet {
    let mut p = greedy_prefixes(values, idx, t);
    // zero-valued items cannot occur, but equal prefixes would break sortedness
    p.dedup();
    SparseSet::from_raw(sparsify_sorted(&p, delta), delta, Cap::Finite(t))
}

/// Input to one color-coding run inside a batch.
struct ColorInput<'a> {
    items: &'a [usize],
    t: u64,
    path: u64,
}

/// A non-empty color class: its color, item indices and the sparsified set
/// `Z = {0} ∪ {x_i : i in the class}` (a class contributes at most one item).
type ColorClass = (u64, Vec<usize>, SparseSet);

/// Groups `items` into color classes for one round.
fn color_classes(
    values: &[u64],
    input: &ColorInput<'_>,
    params: &SchemeParams,
    round: u64,
    delta: u64,
) -> Vec<ColorClass> {
    let mut rng = stream(params.seed, input.path, Purpose::Coloring, round);
    let colors = params.colors();
    let mut tagged: Vec<(u64, usize)> = input
        .items
        .iter()
        .map(|&i| (rng.gen_range(0..colors), i))
        .collect();
    tagged.sort_unstable();
    let mut classes = Vec::new();
    for chunk in tagged.chunk_by(|a, b| a.0 == b.0) {
        let members: Vec<usize> = chunk.iter().map(|&(_, i)| i).collect();
        let mut z: Vec<u64> = members.iter().map(|&i| values[i]).collect();
        z.push(0);
        z.sort_unstable();
        z.dedup();
        let z = SparseSet::from_raw(sparsify_sorted(&z, delta), delta, Cap::Finite(input.t));
        classes.push((chunk[0].0, members, z));
    }
    classes
}

/// Color coding for several independent item sets at once. The folds of
/// all inputs and rounds advance in lock step so that each step is one
/// call to [`capped_sumset_many`].
fn color_code_many<E: MinConvEngine>(
    values: &[u64],
    inputs: &[ColorInput<'_>],
    delta: u64,
    params: &SchemeParams,
    engine: &E,
    batched: bool,
) -> Result<Vec<ColorCodingTrace>> {
    for input in inputs {
        for &i in input.items {
            let x = values[i];
            if x > input.t || !params.is_large(x, input.t) {
                return Err(param!(
                    "color coding item {x} outside [t/k, t] for t = {}, k = {}",
                    input.t,
                    params.k
                ));
            }
        }
    }
    // classes[input][round]
    let classes: Vec<Vec<Vec<ColorClass>>> = inputs
        .iter()
        .map(|inp| {
            (0..params.rounds)
                .map(|r| color_classes(values, inp, params, r, delta))
                .collect()
        })
        .collect();

    // accs[input][round][j] = A_{r,j}; folding {0} with Z gives Z itself
    let mut accs: Vec<Vec<Vec<SparseSet>>> = classes
        .iter()
        .map(|rounds| {
            rounds
                .iter()
                .map(|parts| parts.first().map(|p| p.2.clone()).into_iter().collect())
                .collect()
        })
        .collect();

    let longest = classes
        .iter()
        .flat_map(|rounds| rounds.iter().map(Vec::len))
        .max()
        .unwrap_or(0);
    for step in 1..longest {
        let mut slots = Vec::new();
        let mut jobs = Vec::new();
        for (ii, rounds) in classes.iter().enumerate() {
            for (r, parts) in rounds.iter().enumerate() {
                if step < parts.len() {
                    slots.push((ii, r));
                    jobs.push(CappedJob {
                        a1: &accs[ii][r][step - 1],
                        a2: &parts[step].2,
                        t: inputs[ii].t,
                    });
                }
            }
        }
        let out = capped_sumset_many(&jobs, delta, engine, batched)?;
        for ((ii, r), set) in slots.into_iter().zip(out) {
            accs[ii][r].push(set);
        }
    }

    Ok(classes
        .into_iter()
        .zip(accs)
        .zip(inputs)
        .map(|((rounds, acc_rounds), input)| {
            let rounds: Vec<RoundTrace> = rounds
                .into_iter()
                .zip(acc_rounds)
                .map(|(parts, accs)| RoundTrace {
                    parts: parts
                        .into_iter()
                        .zip(accs)
                        .map(|((color, items, z), acc)| PartTrace {
                            color,
                            items,
                            z,
                            acc,
                        })
                        .collect(),
                })
                .collect();
            let mut union: Vec<u64> = rounds
                .iter()
                .map(|r| r.result().map_or(&[0u64][..], |s| s.elems()))
                .flat_map(|s| s.iter().copied())
                .collect();
            union.sort_unstable();
            union.dedup();
            ColorCodingTrace {
                items: input.items.to_vec(),
                rounds,
                set: SparseSet::from_raw(
                    sparsify_sorted(&union, delta),
                    delta,
                    Cap::Finite(input.t),
                ),
            }
        })
        .collect())
}

/// Color coding for items in `[t/k, t]`. The result is always a subset of
/// `S(X;t)` and, with high probability, sparsely `(t, Δ)`-approximates it.
/// Indices in the trace refer to positions in `items`.
pub fn color_coding<E: MinConvEngine>(
    items: &[u64],
    t: u64,
    delta: u64,
    params: &SchemeParams,
    engine: &E,
) -> Result<(SparseSet, ColorCodingTrace)> {
    if delta == 0 {
        return Err(param!("delta must be at least 1"));
    }
    let idx: Vec<usize> = (0..items.len()).collect();
    let input = ColorInput {
        items: &idx,
        t,
        path: 1,
    };
    let trace = color_code_many(items, &[input], delta, params, engine, false)?
        .pop()
        .unwrap();
    Ok((trace.set.clone(), trace))
}

/// Re-caps a child result at the parent target.
fn recap(set: &SparseSet, t: u64) -> SparseSet {
    let keep = set.partition_point(|&x| x <= t);
    SparseSet::from_raw(set[..keep].to_vec(), set.delta(), Cap::Finite(t))
}

struct Pending {
    path: u64,
    depth: u32,
    target: u64,
    plan: Plan,
}

enum Plan {
    Greedy(Vec<usize>),
    Split {
        large: Vec<usize>,
        children: [usize; 2],
    },
}

/// Recursive splitting over the items `values[i]` for the given indices.
/// Requires `t ≥ 8Δ`. The result is always a subset of `S(X;t)`; with
/// high probability it sparsely `(t, Δ)`-approximates `S(X;t)`.
pub fn recursive_splitting<E: MinConvEngine>(
    values: &[u64],
    t: u64,
    delta: u64,
    params: &SchemeParams,
    engine: &E,
    batched: bool,
) -> Result<(SparseSet, SolveTrace)> {
    if delta == 0 || t < delta.saturating_mul(8) {
        return Err(param!(
            "recursive splitting needs t >= 8*delta >= 8, got t = {t}, delta = {delta}"
        ));
    }
    if let Some(&x) = values.iter().find(|&&x| x == 0 || x > t) {
        return Err(param!("items must lie in [1, t], got {x}"));
    }

    // top-down: fix the recursion tree and all halving decisions
    let mut pending: Vec<Pending> = Vec::new();
    let mut queue: Vec<(usize, Vec<usize>)> = Vec::new();
    pending.push(Pending {
        path: 1,
        depth: 0,
        target: t,
        plan: Plan::Greedy(Vec::new()),
    });
    queue.push((0, (0..values.len()).collect()));
    let mut head = 0;
    while head < queue.len() {
        let (node, items) = core::mem::take(&mut queue[head]);
        head += 1;
        let (path, depth, target) = {
            let p = &pending[node];
            (p.path, p.depth, p.target)
        };
        if depth > params.log_ratio {
            return Err(param!(
                "recursion depth {depth} exceeds log2(t/delta) = {}",
                params.log_ratio
            ));
        }
        if items.iter().all(|&i| values[i] <= delta) {
            pending[node].plan = Plan::Greedy(items);
            continue;
        }
        let (large, small): (Vec<usize>, Vec<usize>) = items
            .into_iter()
            .partition(|&i| params.is_large(values[i], target));
        let mut rng = stream(params.seed, path, Purpose::Halving, 0);
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for i in small {
            if rng.gen::<bool>() {
                right.push(i);
            } else {
                left.push(i);
            }
        }
        let child_t = params.child_target(target, delta);
        let mut children = [0usize; 2];
        for (c, half) in [left, right].into_iter().enumerate() {
            children[c] = pending.len();
            pending.push(Pending {
                path: 2 * path + c as u64,
                depth: depth + 1,
                target: child_t,
                plan: Plan::Greedy(Vec::new()),
            });
            queue.push((children[c], half));
        }
        pending[node].plan = Plan::Split { large, children };
    }

    // color coding for every split node at once
    let split_nodes: Vec<usize> = (0..pending.len())
        .filter(|&i| matches!(pending[i].plan, Plan::Split { .. }))
        .collect();
    let inputs: Vec<ColorInput<'_>> = split_nodes
        .iter()
        .map(|&i| match &pending[i].plan {
            Plan::Split { large, .. } => ColorInput {
                items: large,
                t: pending[i].target,
                path: pending[i].path,
            },
            Plan::Greedy(_) => unreachable!(),
        })
        .collect();
    let mut cc: Vec<Option<ColorCodingTrace>> =
        color_code_many(values, &inputs, delta, params, engine, batched)?
            .into_iter()
            .map(Some)
            .collect();
    let mut cc_of = vec![usize::MAX; pending.len()];
    for (j, &i) in split_nodes.iter().enumerate() {
        cc_of[i] = j;
    }

    // bottom-up, one level at a time
    let mut sets: Vec<Option<SparseSet>> = vec![None; pending.len()];
    let mut smalls: Vec<Option<SparseSet>> = vec![None; pending.len()];
    for (i, p) in pending.iter().enumerate() {
        if let Plan::Greedy(items) = &p.plan {
            sets[i] = Some(greedy_set(values, items, p.target, delta));
        }
    }
    let max_depth = pending.iter().map(|p| p.depth).max().unwrap_or(0);
    for depth in (0..=max_depth).rev() {
        let level: Vec<usize> = split_nodes
            .iter()
            .copied()
            .filter(|&i| pending[i].depth == depth)
            .collect();
        if level.is_empty() {
            continue;
        }
        let halves: Vec<[SparseSet; 2]> = level
            .iter()
            .map(|&i| match &pending[i].plan {
                Plan::Split { children, .. } => children.map(|c| {
                    recap(
                        sets[c].as_ref().expect("child evaluated"),
                        pending[i].target,
                    )
                }),
                Plan::Greedy(_) => unreachable!(),
            })
            .collect();
        let jobs: Vec<CappedJob<'_>> = level
            .iter()
            .zip(&halves)
            .map(|(&i, h)| CappedJob {
                a1: &h[0],
                a2: &h[1],
                t: pending[i].target,
            })
            .collect();
        let small_sets = capped_sumset_many(&jobs, delta, engine, batched)?;
        let jobs: Vec<CappedJob<'_>> = level
            .iter()
            .zip(&small_sets)
            .map(|(&i, s)| CappedJob {
                a1: &cc[cc_of[i]].as_ref().unwrap().set,
                a2: s,
                t: pending[i].target,
            })
            .collect();
        let combined = capped_sumset_many(&jobs, delta, engine, batched)?;
        for ((&i, s), a) in level.iter().zip(small_sets).zip(combined) {
            smalls[i] = Some(s);
            sets[i] = Some(a);
        }
    }

    let nodes: Vec<TraceNode> = pending
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            let kind = match p.plan {
                Plan::Greedy(items) => NodeKind::Greedy { items },
                Plan::Split { children, .. } => NodeKind::Split {
                    large: cc[cc_of[i]].take().unwrap(),
                    children,
                    small: smalls[i].take().unwrap(),
                },
            };
            TraceNode {
                path: p.path,
                depth: p.depth,
                target: p.target,
                set: sets[i].take().unwrap(),
                kind,
            }
        })
        .collect();
    let trace = SolveTrace {
        nodes,
        delta,
        items: values.to_vec(),
    };
    Ok((trace.root_set().clone(), trace))
}

/// First pair `(a, target − a)` with `a ∈ left`, `target − a ∈ right`.
fn split_value(left: &[u64], right: &[u64], target: u64) -> Option<(u64, u64)> {
    left.iter()
        .take_while(|&&a| a <= target)
        .find(|&&a| right.binary_search(&(target - a)).is_ok())
        .map(|&a| (a, target - a))
}

fn reconstruct_color_coding(
    cc: &ColorCodingTrace,
    values: &[u64],
    target: u64,
    out: &mut Vec<usize>,
) -> Result<()> {
    if target == 0 {
        return Ok(());
    }
    let round = cc
        .rounds
        .iter()
        .find(|r| r.result().is_some_and(|s| s.contains(target)))
        .ok_or(Error::NotInSet(target))?;
    let mut v = target;
    for j in (0..round.parts.len()).rev() {
        let part = &round.parts[j];
        let z = if j == 0 {
            part.z.contains(v).then_some(v)
        } else {
            split_value(&part.z, &round.parts[j - 1].acc, v).map(|(z, _)| z)
        }
        .ok_or(Error::NotInSet(v))?;
        if z != 0 {
            let item = part
                .items
                .iter()
                .copied()
                .find(|&i| values[i] == z)
                .ok_or(Error::NotInSet(z))?;
            out.push(item);
            v -= z;
        }
    }
    if v != 0 {
        return Err(Error::NotInSet(v));
    }
    Ok(())
}

fn reconstruct_node(
    trace: &SolveTrace,
    node: usize,
    target: u64,
    out: &mut Vec<usize>,
) -> Result<()> {
    let n = &trace.nodes[node];
    match &n.kind {
        NodeKind::Greedy { items } => {
            let prefixes = greedy_prefixes(&trace.items, items, n.target);
            let j = prefixes
                .iter()
                .position(|&s| s == target)
                .ok_or(Error::NotInSet(target))?;
            out.extend_from_slice(&items[..j]);
            Ok(())
        }
        NodeKind::Split {
            large,
            children,
            small,
        } => {
            let (a_large, a_small) =
                split_value(&large.set, small, target).ok_or(Error::NotInSet(target))?;
            reconstruct_color_coding(large, &trace.items, a_large, out)?;
            let left = recap(&trace.nodes[children[0]].set, n.target);
            let right = recap(&trace.nodes[children[1]].set, n.target);
            let (a1, a2) = split_value(&left, &right, a_small).ok_or(Error::NotInSet(a_small))?;
            reconstruct_node(trace, children[0], a1, out)?;
            reconstruct_node(trace, children[1], a2, out)
        }
    }
}

/// Indices of items summing to `target`, for any `target` in the root set.
pub fn reconstruct(trace: &SolveTrace, target: u64) -> Result<Vec<usize>> {
    if !trace.root_set().contains(target) {
        return Err(Error::NotInSet(target));
    }
    let mut out = Vec::new();
    reconstruct_node(trace, 0, target, &mut out)?;
    out.sort_unstable();
    Ok(out)
}

/// Exact subset-sum DP over `[0, t]`. Returns indices of a subset
/// achieving `max S(X;t)`.
pub fn exact_subset_sum(items: &[u64], t: u64) -> Result<Vec<usize>> {
    if t > EXACT_DP_MAX_TARGET {
        return Err(Error::Limit(alloc::format!(
            "exact DP over target {t} (max {EXACT_DP_MAX_TARGET})"
        )));
    }
    let t = t as usize;
    let mut via: Vec<u32> = vec![u32::MAX; t + 1];
    let mut reached = vec![false; t + 1];
    reached[0] = true;
    for (idx, &x) in items.iter().enumerate() {
        let Ok(x) = usize::try_from(x) else { continue };
        if x > t {
            continue;
        }
        for s in (x..=t).rev() {
            if !reached[s] && reached[s - x] {
                reached[s] = true;
                via[s] = idx as u32;
            }
        }
    }
    let mut s = reached.iter().rposition(|&r| r).unwrap();
    let mut out = Vec::new();
    while s > 0 {
        let i = via[s] as usize;
        out.push(i);
        s -= items[i] as usize;
    }
    out.sort_unstable();
    Ok(out)
}

/// Runs the scheme with default settings and the naive engine.
pub fn approximate_subset_sum(
    inst: &SubsetSumInstance,
    eps: Epsilon,
    seed: u64,
) -> Result<ApproxResult> {
    solve_subset_sum(inst, eps, seed, &SolverConfig::default(), &NaiveEngine).map(|(r, _)| r)
}

/// Runs the scheme and also returns the trace (absent for the exact
/// fallback and for instances with no item `≤ t`).
pub fn solve_subset_sum<E: MinConvEngine>(
    inst: &SubsetSumInstance,
    eps: Epsilon,
    seed: u64,
    config: &SolverConfig,
    engine: &E,
) -> Result<(ApproxResult, Option<SolveTrace>)> {
    let t = inst.target;
    let delta = eps.floor_mul(t).min(t / 8);
    if delta == 0 {
        let idx = exact_subset_sum(&inst.items, t)?;
        let r = ApproxResult::from_indices(
            &inst.items,
            idx,
            eps,
            0,
            Mode::ExactFallback,
            Guarantee::Exact,
        );
        return Ok((r, None));
    }
    let fitting: Vec<usize> = (0..inst.n()).filter(|&i| inst.items[i] <= t).collect();
    if fitting.is_empty() {
        let r = ApproxResult::from_indices(
            &inst.items,
            Vec::new(),
            eps,
            delta,
            Mode::Approx,
            Guarantee::SubsetSumWhp,
        );
        return Ok((r, None));
    }
    let values: Vec<u64> = fitting.iter().map(|&i| inst.items[i]).collect();
    let params = SchemeParams::new(values.len(), t, delta, config.confidence, seed)?;
    let (set, trace) = recursive_splitting(&values, t, delta, &params, engine, config.batched)?;
    let best = set.max().unwrap_or(0);
    let local = reconstruct(&trace, best)?;
    let idx = local.into_iter().map(|j| fitting[j]).collect();
    let r = ApproxResult::from_indices(
        &inst.items,
        idx,
        eps,
        delta,
        Mode::Approx,
        Guarantee::SubsetSumWhp,
    );
    Ok((r, Some(trace)))
}
