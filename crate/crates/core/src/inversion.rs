//! Rank 3 machinery: table-free bisection over a monotone grid, the
//! exhaustive scan that is all a category 2 function leaves you with, and an
//! empirical monotonicity probe.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ranking::CostLedger;
use crate::search::{first_within, Probe};

/// Default match tolerance for inversion targets (half a unit in the fourth
/// decimal place).
pub const DEFAULT_TOL: f64 = 5e-4;

/// Inclusive grid `lo, lo + step, ..., hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bracket {
    lo: f64,
    hi: f64,
    grid_step: f64,
    points: usize,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, grid_step: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(Error::InvalidBracket(format!(
                "lo {lo} must be below hi {hi}"
            )));
        }
        if !grid_step.is_finite() || grid_step <= 0.0 {
            return Err(Error::InvalidBracket(format!(
                "step {grid_step} must be positive"
            )));
        }
        let intervals = (hi - lo) / grid_step;
        let rounded = intervals.round();
        if (intervals - rounded).abs() > 1e-9 * rounded.max(1.0) {
            return Err(Error::InvalidBracket(format!(
                "(hi - lo) / step = {intervals} is not a whole number of grid steps"
            )));
        }
        Ok(Self {
            lo,
            hi,
            grid_step,
            points: rounded as usize + 1,
        })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn grid_step(&self) -> f64 {
        self.grid_step
    }

    /// Number of grid points, endpoints included.
    pub fn points(&self) -> usize {
        self.points
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.points {
            self.hi
        } else {
            self.lo + i as f64 * self.grid_step
        }
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.points).map(move |i| self.point(i))
    }
}

/// Inverts a non-decreasing `f` on the bracket grid by bisection and returns
/// the first grid point with `|f(x) - target| <= tol`.
///
/// Every probe costs one evaluation and one comparison; there are at most
/// `ceil(log2 n) + 1` of them for `n` grid points. The endpoints are not
/// evaluated up front, so a target outside the image is detected from the
/// probes themselves. A probe value that contradicts an earlier one is
/// reported as [`Error::NotMonotone`].
pub fn bisect_invert<F>(
    mut f: F,
    target: f64,
    bracket: &Bracket,
    tol: f64,
    ledger: &mut CostLedger,
) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let n = bracket.points();
    // Largest value seen left of the search window, smallest value right of it.
    let mut floor: Option<f64> = None;
    let mut ceiling: Option<f64> = None;
    let out = first_within(n, |i| {
        let x = bracket.point(i);
        ledger.record_eval();
        ledger.record_comparison();
        let v = f(x)?;
        if floor.is_some_and(|lo| v < lo) || ceiling.is_some_and(|hi| v > hi) {
            return Err(Error::NotMonotone { at: x });
        }
        Ok(if v < target - tol {
            floor = Some(v);
            Probe::Below
        } else {
            ceiling = Some(v);
            if v > target + tol {
                Probe::Above
            } else {
                Probe::Within
            }
        })
    })?;
    match out.found {
        Some(i) => Ok(bracket.point(i)),
        None if out.lower_bound == 0 || out.lower_bound == n => Err(Error::NotBracketed { target }),
        None => Err(Error::NoGridMatch { target }),
    }
}

/// Scans `domain` in order and returns the first element whose image
/// satisfies `matches`. Each element costs one evaluation and one comparison.
pub fn exhaustive_invert<X, Y, D, F, M>(
    domain: D,
    mut f: F,
    mut matches: M,
    ledger: &mut CostLedger,
) -> Result<X>
where
    D: IntoIterator<Item = X>,
    F: FnMut(&X) -> Result<Y>,
    M: FnMut(&Y) -> bool,
{
    for x in domain {
        ledger.record_eval();
        let y = f(&x)?;
        ledger.record_comparison();
        if matches(&y) {
            return Ok(x);
        }
    }
    Err(Error::NotFound)
}

/// [`exhaustive_invert`] for scalar images with an absolute tolerance.
pub fn exhaustive_invert_scalar<X, D, F>(
    domain: D,
    f: F,
    target: f64,
    tol: f64,
    ledger: &mut CostLedger,
) -> Result<X>
where
    D: IntoIterator<Item = X>,
    F: FnMut(&X) -> Result<f64>,
{
    exhaustive_invert(domain, f, |&y| (y - target).abs() <= tol, ledger)
}

/// True when the sequence never changes direction: entirely non-decreasing
/// or entirely non-increasing.
pub fn is_monotone(values: &[f64]) -> bool {
    let up = values.windows(2).all(|w| w[0] <= w[1]);
    let down = values.windows(2).all(|w| w[0] >= w[1]);
    up || down
}

/// Evaluates `f` on `samples` evenly spaced grid points of the bracket and
/// reports whether the values are monotone. Constant runs count as monotone.
pub fn probe_rank3<F>(
    mut f: F,
    bracket: &Bracket,
    samples: usize,
    ledger: &mut CostLedger,
) -> Result<bool>
where
    F: FnMut(f64) -> Result<f64>,
{
    if samples < 2 {
        return Err(Error::InvalidInput(
            "the monotonicity probe needs at least 2 samples".into(),
        ));
    }
    let n = bracket.points();
    let samples = samples.min(n);
    let mut values = Vec::with_capacity(samples);
    let mut last = None;
    for k in 0..samples {
        let i = if samples == 1 {
            0
        } else {
            (k * (n - 1) + (samples - 1) / 2) / (samples - 1)
        };
        if last == Some(i) {
            continue;
        }
        last = Some(i);
        ledger.record_eval();
        values.push(f(bracket.point(i))?);
    }
    Ok(is_monotone(&values))
}
