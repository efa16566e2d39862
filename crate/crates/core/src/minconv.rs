//! Exact (min,+) and (max,+) convolution over sequences with undefined
//! entries.
//!
//! An undefined entry (`None`) is the neutral element of both `min` and
//! `max`, and `x + None = None`. The output of convolving sequences of
//! lengths `n` and `m` has length `n + m − 1`.
//!
//! Engines implement [`MinConvEngine`]; everything else in the crate is
//! generic over the engine so a faster algorithm can be plugged in without
//! touching callers. Two engines ship here:
//!
//! * [`NaiveEngine`] loops over pairs of *defined* entries. Its cost is
//!   quadratic in the number of defined entries, which is what the solvers
//!   use by default.
//! * [`DenseEngine`] runs the textbook `Θ(n·m)` loop over every index pair
//!   on integer-only data, encoding undefined entries with
//!   [`sentinel_wrap`]. Its cost does not depend on the data, which makes
//!   it the reference point for scaling measurements.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::param;
use crate::{Error, Result};

/// A sequence over `ℤ ∪ {undefined}`.
pub type ExtSeq = Vec<Option<i64>>;

/// Integer types the engines operate on.
pub trait ConvValue: Copy + Ord + core::fmt::Debug {
    fn checked_add(self, rhs: Self) -> Option<Self>;
    fn checked_neg(self) -> Option<Self>;
    fn to_i64(self) -> Option<i64>;
    fn from_i64(v: i64) -> Self;
}

macro_rules! conv_value {
    ($t:ty) => {
        impl ConvValue for $t {
            fn checked_add(self, rhs: Self) -> Option<Self> {
                <$t>::checked_add(self, rhs)
            }
            fn checked_neg(self) -> Option<Self> {
                <$t>::checked_neg(self)
            }
            fn to_i64(self) -> Option<i64> {
                i64::try_from(self).ok()
            }
            fn from_i64(v: i64) -> Self {
                v as $t
            }
        }
    };
}
conv_value!(i64);
conv_value!(i128);

/// An exact (min,+)-convolution algorithm.
pub trait MinConvEngine {
    /// `C[k] = min_{i+j=k} A[i] + B[j]` over defined pairs; `None` when no
    /// defined pair exists. Both inputs must be non-empty.
    fn min_conv<V: ConvValue>(&self, a: &[Option<V>], b: &[Option<V>]) -> Result<Vec<Option<V>>>;
}

impl<E: MinConvEngine + ?Sized> MinConvEngine for &E {
    fn min_conv<V: ConvValue>(&self, a: &[Option<V>], b: &[Option<V>]) -> Result<Vec<Option<V>>> {
        (**self).min_conv(a, b)
    }
}

fn check_lengths<V>(a: &[V], b: &[V]) -> Result<usize> {
    if a.is_empty() || b.is_empty() {
        return Err(param!("convolution inputs must be non-empty"));
    }
    Ok(a.len() + b.len() - 1)
}

/// Double loop over the defined entries of both inputs.
#[derive(Debug, Clone, Copy, Default)]
pub struct NaiveEngine;

impl MinConvEngine for NaiveEngine {
    fn min_conv<V: ConvValue>(&self, a: &[Option<V>], b: &[Option<V>]) -> Result<Vec<Option<V>>> {
        let out_len = check_lengths(a, b)?;
        let da: Vec<(usize, V)> = defined(a);
        let db: Vec<(usize, V)> = defined(b);
        let mut c: Vec<Option<V>> = vec![None; out_len];
        for &(i, x) in &da {
            let row = &mut c[i..];
            for &(j, y) in &db {
                let s = x.checked_add(y).ok_or(Error::Overflow("min_conv"))?;
                let slot = &mut row[j];
                match slot {
                    Some(cur) if *cur <= s => {}
                    _ => *slot = Some(s),
                }
            }
        }
        Ok(c)
    }
}

fn defined<V: Copy>(xs: &[Option<V>]) -> Vec<(usize, V)> {
    xs.iter()
        .enumerate()
        .filter_map(|(i, x)| x.map(|v| (i, v)))
        .collect()
}

/// Textbook `Θ(n·m)` loop over all index pairs on sentinel-encoded `i64`
/// data. Inputs whose magnitude does not leave room for the sentinel
/// (above `2^59`) are handed to [`NaiveEngine`].
#[derive(Debug, Clone, Copy, Default)]
pub struct DenseEngine;

const DENSE_MAX_ABS: i64 = 1 << 59;

impl MinConvEngine for DenseEngine {
    fn min_conv<V: ConvValue>(&self, a: &[Option<V>], b: &[Option<V>]) -> Result<Vec<Option<V>>> {
        let out_len = check_lengths(a, b)?;
        let mut max_abs = 0i64;
        let mut narrow_a = Vec::with_capacity(a.len());
        let mut narrow_b = Vec::with_capacity(b.len());
        for (src, dst) in [(a, &mut narrow_a), (b, &mut narrow_b)] {
            for x in src {
                let v = match x {
                    None => None,
                    Some(v) => match v
                        .to_i64()
                        .filter(|v| v.unsigned_abs() <= DENSE_MAX_ABS as u64)
                    {
                        Some(v) => {
                            max_abs = max_abs.max(v.abs());
                            Some(v)
                        }
                        None => return NaiveEngine.min_conv(a, b),
                    },
                };
                dst.push(v);
            }
        }
        let m = 4 * max_abs.max(1);
        let wa = sentinel_wrap(&narrow_a, m)?;
        let wb = sentinel_wrap(&narrow_b, m)?;
        let mut c = vec![2 * m; out_len];
        for (i, &x) in wa.iter().enumerate() {
            for (slot, &y) in c[i..i + wb.len()].iter_mut().zip(&wb) {
                let s = x + y;
                if s < *slot {
                    *slot = s;
                }
            }
        }
        Ok(sentinel_unwrap(&c, m)?
            .into_iter()
            .map(|v| v.map(V::from_i64))
            .collect())
    }
}

/// (min,+)-convolution with the default engine.
pub fn min_conv(a: &[Option<i64>], b: &[Option<i64>]) -> Result<ExtSeq> {
    NaiveEngine.min_conv(a, b)
}

/// (max,+)-convolution with the default engine.
pub fn max_conv(a: &[Option<i64>], b: &[Option<i64>]) -> Result<ExtSeq> {
    max_conv_with(&NaiveEngine, a, b)
}

/// (max,+)-convolution through a min-engine: negate, convolve, negate.
pub fn max_conv_with<E: MinConvEngine, V: ConvValue>(
    engine: &E,
    a: &[Option<V>],
    b: &[Option<V>],
) -> Result<Vec<Option<V>>> {
    let neg = |xs: &[Option<V>]| -> Result<Vec<Option<V>>> {
        xs.iter()
            .map(|x| match x {
                None => Ok(None),
                Some(v) => v.checked_neg().map(Some).ok_or(Error::Overflow("max_conv")),
            })
            .collect()
    };
    let c = engine.min_conv(&neg(a)?, &neg(b)?)?;
    neg(&c)
}

/// Replaces undefined entries by `m`, so that an integer-only engine can
/// run on the sequence. Every defined entry must lie in `[−m/4, m/4]`.
pub fn sentinel_wrap(a: &[Option<i64>], m: i64) -> Result<Vec<i64>> {
    if m <= 0 || m > i64::MAX / 2 {
        return Err(param!("sentinel {m} out of range"));
    }
    a.iter()
        .map(|x| match *x {
            None => Ok(m),
            Some(v) if 4 * (v as i128).abs() <= m as i128 => Ok(v),
            Some(v) => Err(param!("entry {v} outside [-{m}/4, {m}/4]")),
        })
        .collect()
}

/// Inverse of [`sentinel_wrap`] applied to a convolution output: values in
/// `[−m/2, m/2]` are exact, values in `[3m/4, 2m]` stand for undefined.
pub fn sentinel_unwrap(c: &[i64], m: i64) -> Result<ExtSeq> {
    let m = m as i128;
    c.iter()
        .map(|&v| {
            let w = v as i128;
            if 2 * w.abs() <= m {
                Ok(Some(v))
            } else if 4 * w >= 3 * m && w <= 2 * m {
                Ok(None)
            } else {
                Err(param!("output {v} is in neither band for sentinel {m}"))
            }
        })
        .collect()
}

/// Solves many (min,+) instances with one engine call by packing them into
/// a single pair of sequences.
///
/// Entries must be undefined or lie in `[0, M]`. Instances are ordered by
/// size `n_r = max(|A_r|, |B_r|)`, non-increasing; with `s_r` the prefix
/// sums of the sizes, entry `i` of instance `r` (1-based rank) is placed at
/// `2s_r + i` with offset `r²·2M`. Output `k` of instance `r` is then read
/// at `4s_r + k` minus `r²·4M`. Pairs from two different instances land at
/// least `(r²+1)·4M` there, so any value outside `[r²·4M, r²·4M + 2M]` is
/// read back as undefined.
pub fn batch_min_conv<E: MinConvEngine>(
    instances: &[(ExtSeq, ExtSeq)],
    engine: &E,
) -> Result<Vec<ExtSeq>> {
    if instances.is_empty() {
        return Ok(Vec::new());
    }
    let mut max_entry = 1i64;
    for (a, b) in instances {
        check_lengths(a, b)?;
        for v in a.iter().chain(b).flatten() {
            if *v < 0 {
                return Err(param!("batched entries must be non-negative, got {v}"));
            }
            max_entry = max_entry.max(*v);
        }
    }
    let m = instances.len() as i128;
    let big_m = max_entry as i128;
    // largest packed sum is m²·4M + 2M
    m.checked_mul(m)
        .and_then(|mm| mm.checked_mul(4))
        .and_then(|v| v.checked_mul(big_m))
        .and_then(|v| v.checked_add(2 * big_m))
        .ok_or(Error::Overflow("batch_min_conv offsets"))?;

    let mut order: Vec<usize> = (0..instances.len()).collect();
    let size = |r: usize| instances[r].0.len().max(instances[r].1.len());
    order.sort_by_key(|&r| core::cmp::Reverse(size(r)));

    let mut starts = Vec::with_capacity(order.len());
    let mut s = 0usize;
    for &r in &order {
        starts.push(s);
        s += size(r);
    }
    let mut pa: Vec<Option<i128>> = vec![None; 4 * s];
    let mut pb: Vec<Option<i128>> = vec![None; 4 * s];
    for (rank0, &r) in order.iter().enumerate() {
        let rank = rank0 as i128 + 1;
        let offset = rank * rank * 2 * big_m;
        let base = 2 * starts[rank0];
        let (a, b) = &instances[r];
        for (i, v) in a.iter().enumerate() {
            pa[base + i] = v.map(|v| offset + v as i128);
        }
        for (j, v) in b.iter().enumerate() {
            pb[base + j] = v.map(|v| offset + v as i128);
        }
    }
    let packed = engine.min_conv(&pa, &pb)?;

    let mut out: Vec<ExtSeq> = vec![Vec::new(); instances.len()];
    for (rank0, &r) in order.iter().enumerate() {
        let rank = rank0 as i128 + 1;
        let offset = rank * rank * 4 * big_m;
        let base = 4 * starts[rank0];
        let (a, b) = &instances[r];
        out[r] = (0..a.len() + b.len() - 1)
            .map(|k| {
                packed[base + k]
                    .map(|v| v - offset)
                    .filter(|v| (0..=2 * big_m).contains(v))
                    .map(|v| v as i64)
            })
            .collect();
    }
    Ok(out)
}

/// (max,+) counterpart of [`batch_min_conv`] for entries in `[0, M]`:
/// reflects every entry to `M − v`, packs, and reflects back.
pub fn batch_max_conv<E: MinConvEngine>(
    instances: &[(ExtSeq, ExtSeq)],
    engine: &E,
) -> Result<Vec<ExtSeq>> {
    let big_m = instances
        .iter()
        .flat_map(|(a, b)| a.iter().chain(b).flatten())
        .copied()
        .max()
        .unwrap_or(0);
    let reflect = |xs: &ExtSeq| -> ExtSeq { xs.iter().map(|x| x.map(|v| big_m - v)).collect() };
    let reflected: Vec<(ExtSeq, ExtSeq)> = instances
        .iter()
        .map(|(a, b)| (reflect(a), reflect(b)))
        .collect();
    Ok(batch_min_conv(&reflected, engine)?
        .into_iter()
        .map(|c| c.into_iter().map(|x| x.map(|v| 2 * big_m - v)).collect())
        .collect())
}
