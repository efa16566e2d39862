//! Sorted, locally sparse sets of non-negative integers.

use alloc::vec::Vec;
use core::ops::Deref;

use crate::error::invalid;
use crate::Result;

/// Upper end of the universe a set lives in: `[0, t]` or all of ℕ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cap {
    Finite(u64),
    Infinite,
}

impl Cap {
    pub fn contains(self, x: u64) -> bool {
        match self {
            Cap::Finite(t) => x <= t,
            Cap::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Cap::Finite(t) => Some(t),
            Cap::Infinite => None,
        }
    }
}

/// A strictly increasing list of non-negative integers that is `Δ`-sparse:
/// no window `[x, x+Δ]` holds more than two elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparseSet {
    elems: Vec<u64>,
    delta: u64,
    cap: Cap,
}

impl SparseSet {
    /// Validates every invariant.
    pub fn new(elems: Vec<u64>, delta: u64, cap: Cap) -> Result<Self> {
        if !is_strictly_increasing(&elems) {
            return Err(invalid!("elements are not strictly increasing"));
        }
        if let (Some(&m), Some(t)) = (elems.last(), cap.finite()) {
            if m > t {
                return Err(invalid!("element {m} exceeds cap {t}"));
            }
        }
        if !is_delta_sparse(&elems, delta) {
            return Err(invalid!("set is not {delta}-sparse"));
        }
        Ok(Self { elems, delta, cap })
    }

    /// The set `{0}`.
    pub fn zero(delta: u64, cap: Cap) -> Self {
        Self {
            elems: alloc::vec![0],
            delta,
            cap,
        }
    }

    pub(crate) fn from_raw(elems: Vec<u64>, delta: u64, cap: Cap) -> Self {
        debug_assert!(is_strictly_increasing(&elems));
        debug_assert!(is_delta_sparse(&elems, delta));
        debug_assert!(elems.last().is_none_or(|&m| cap.contains(m)));
        Self { elems, delta, cap }
    }

    pub fn elems(&self) -> &[u64] {
        &self.elems
    }

    pub fn into_elems(self) -> Vec<u64> {
        self.elems
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    pub fn cap(&self) -> Cap {
        self.cap
    }

    pub fn max(&self) -> Option<u64> {
        self.elems.last().copied()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elems.binary_search(&x).is_ok()
    }
}

impl Deref for SparseSet {
    type Target = [u64];

    fn deref(&self) -> &[u64] {
        &self.elems
    }
}

pub fn is_strictly_increasing(xs: &[u64]) -> bool {
    xs.windows(2).all(|w| w[0] < w[1])
}

/// No three elements `a1 < a2 < a3` with `a3 ≤ a1 + Δ`. Expects sorted input.
pub fn is_delta_sparse(xs: &[u64], delta: u64) -> bool {
    xs.windows(3).all(|w| w[2] - w[0] > delta)
}
