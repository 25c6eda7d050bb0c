//! Lower-bound search over a sorted view that stops on the first entry
//! falling inside a tolerance window.

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Probe {
    Below,
    Within,
    Above,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Outcome {
    /// Smallest position whose probe is `Within`, if any.
    pub found: Option<usize>,
    /// First position not `Below`; equals `found` when there is a match.
    pub lower_bound: usize,
}

/// Runs over positions `0..n`. Every call of `probe` is one comparison, and
/// there are at most `ceil(log2(n + 1))` of them, which never exceeds
/// `ceil(log2 n) + 1`.
pub(crate) fn first_within<F>(n: usize, mut probe: F) -> Result<Outcome>
where
    F: FnMut(usize) -> Result<Probe>,
{
    let (mut lo, mut hi) = (0usize, n);
    let mut found = None;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match probe(mid)? {
            Probe::Below => lo = mid + 1,
            Probe::Within => {
                found = Some(mid);
                hi = mid;
            }
            Probe::Above => hi = mid,
        }
    }
    Ok(Outcome {
        found,
        lower_bound: lo,
    })
}

/// `ceil(log2 n) + 1`, the probe budget for a sorted view of `n` entries.
pub fn probe_budget(n: usize) -> u64 {
    if n <= 1 {
        return 1;
    }
    let ceil_log2 = usize::BITS - (n - 1).leading_zeros();
    ceil_log2 as u64 + 1
}
