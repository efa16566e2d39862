//! Exhaustive subset-sum enumeration. Oracle use only.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Largest multiset [`subset_sums_bruteforce`] accepts.
pub const BRUTEFORCE_MAX_ITEMS: usize = 30;

/// `S(X;t)`: every subset sum of `items` that is at most `t`, sorted and
/// deduplicated. Always contains 0. Pass `u64::MAX` for an uncapped set.
pub fn subset_sums_bruteforce(items: &[u64], t: u64) -> Result<Vec<u64>> {
    if items.len() > BRUTEFORCE_MAX_ITEMS {
        return Err(Error::Limit(alloc::format!(
            "brute force over {} items (max {BRUTEFORCE_MAX_ITEMS})",
            items.len()
        )));
    }
    let mut sums = Vec::with_capacity(1 << items.len().min(20));
    sums.push(0u64);
    for &x in items {
        let len = sums.len();
        for i in 0..len {
            if let Some(s) = sums[i].checked_add(x).filter(|&s| s <= t) {
                sums.push(s);
            }
        }
    }
    sums.sort_unstable();
    sums.dedup();
    Ok(sums)
}

/// `max S(X;t)`.
pub fn opt_bruteforce(items: &[u64], t: u64) -> Result<u64> {
    Ok(*subset_sums_bruteforce(items, t)?.last().unwrap())
}
