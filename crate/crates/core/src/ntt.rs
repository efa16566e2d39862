//! Exact sumsets of integer sets via a number-theoretic transform.
//!
//! Sets are encoded as 0/1 indicator vectors and multiplied modulo the
//! prime `15·2²⁷ + 1`. A coefficient of the product counts the pairs that
//! hit that sum, which is at most the shorter input length (below `2²⁷`),
//! so a non-zero residue means exactly "the sum is attained".

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

const P: u64 = 2_013_265_921;
const G: u64 = 31;
const MAX_LOG: u32 = 27;

/// Longest indicator vector (`max(A) + max(B) + 1`) a transform may use.
pub(crate) const MAX_SUMSET_LEN: u64 = 1 << MAX_LOG;

/// Below this many pairs the sumset is enumerated directly.
const DIRECT_PAIRS: usize = 1 << 12;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

fn transform(a: &mut [u64], invert: bool) {
    let n = a.len();
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let mut w = pow_mod(G, (P - 1) / len as u64);
        if invert {
            w = pow_mod(w, P - 2);
        }
        let half = len / 2;
        let mut twiddles = Vec::with_capacity(half);
        let mut cur = 1;
        for _ in 0..half {
            twiddles.push(cur);
            cur = cur * w % P;
        }
        for chunk in a.chunks_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for ((u, v), &tw) in lo.iter_mut().zip(hi.iter_mut()).zip(&twiddles) {
                let x = *u;
                let y = *v * tw % P;
                *u = if x + y >= P { x + y - P } else { x + y };
                *v = if x >= y { x - y } else { x + P - y };
            }
        }
        len <<= 1;
    }
    if invert {
        let inv = pow_mod(n as u64, P - 2);
        for x in a.iter_mut() {
            *x = *x * inv % P;
        }
    }
}

/// `A + B` for sorted, duplicate-free inputs; the result is sorted and
/// duplicate-free.
pub(crate) fn exact_sumset(a: &[u64], b: &[u64]) -> Result<Vec<u64>> {
    let (Some(&ma), Some(&mb)) = (a.last(), b.last()) else {
        return Ok(Vec::new());
    };
    let span = ma
        .checked_add(mb)
        .and_then(|s| s.checked_add(1))
        .ok_or(Error::Overflow("exact sumset"))?;
    if a.len().saturating_mul(b.len()) <= DIRECT_PAIRS {
        let mut out: Vec<u64> = a
            .iter()
            .flat_map(|&x| b.iter().map(move |&y| x + y))
            .collect();
        out.sort_unstable();
        out.dedup();
        return Ok(out);
    }
    if span > MAX_SUMSET_LEN {
        return Err(Error::Limit(alloc::format!(
            "sumset span {span} exceeds {MAX_SUMSET_LEN}"
        )));
    }
    let n = (span as usize).next_power_of_two();
    let mut fa = vec![0u64; n];
    let mut fb = vec![0u64; n];
    for &x in a {
        fa[x as usize] = 1;
    }
    for &y in b {
        fb[y as usize] = 1;
    }
    transform(&mut fa, false);
    transform(&mut fb, false);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = *x * y % P;
    }
    transform(&mut fa, true);
    Ok(fa[..span as usize]
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c != 0)
        .map(|(i, _)| i as u64)
        .collect())
}
