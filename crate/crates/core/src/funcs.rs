//! Reference functions: truncated-series sine, analytic arcsine, the 3x+1
//! step and the Blum-Blum-Shub generator.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Loop bound of the classic five-term C `sin` listing.
pub const DEFAULT_SINE_TERMS: usize = 5;

/// Term count used as the high-accuracy reference series.
pub const REFERENCE_SINE_TERMS: usize = 20;

const ARCSINE_MAX_ITERATIONS: usize = 50;
const ARCSINE_TOLERANCE: f64 = 1e-12;

/// An angle in degrees, the external unit of every sine experiment.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct AngleDegrees(pub f64);

impl AngleDegrees {
    pub fn radians(self) -> f64 {
        self.0 * PI / 180.0
    }

    pub fn from_radians(rad: f64) -> Self {
        AngleDegrees(rad * 180.0 / PI)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for AngleDegrees {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Same loop as the C listing: `res += pow/fact; pow *= -x*x;
/// fact *= (2(i+1))(2(i+1)+1)`.
fn sine_series(x: f64, terms: usize) -> f64 {
    let mut res = 0.0;
    let mut pow = x;
    let mut fact = 1.0;
    for i in 0..terms {
        res += pow / fact;
        pow *= -x * x;
        let k = 2.0 * (i as f64 + 1.0);
        fact *= k * (k + 1.0);
    }
    res
}

fn cosine_series(x: f64, terms: usize) -> f64 {
    let mut res = 0.0;
    let mut pow = 1.0;
    let mut fact = 1.0;
    for i in 0..terms {
        res += pow / fact;
        pow *= -x * x;
        let k = 2.0 * i as f64 + 1.0;
        fact *= k * (k + 1.0);
    }
    res
}

/// Truncated Taylor sine of an angle given in degrees.
pub fn taylor_sine(x: AngleDegrees, terms: usize) -> Result<f64> {
    if terms == 0 {
        return Err(Error::InvalidTermCount);
    }
    Ok(sine_series(x.radians(), terms))
}

/// Sine evaluated with [`REFERENCE_SINE_TERMS`] terms.
pub fn reference_sine(x: AngleDegrees) -> f64 {
    sine_series(x.radians(), REFERENCE_SINE_TERMS)
}

/// Inverse sine in degrees, computed by safeguarded Newton iteration on the
/// reference sine series. The iterate never leaves the bracket that is known
/// to contain the root; a Newton step that would leave it is replaced by the
/// bracket midpoint.
///
/// Inputs within a few ulps outside `[-1, 1]` (series rounding) are clamped.
pub fn arcsine(y: f64) -> Result<AngleDegrees> {
    if y.is_nan() || y.abs() > 1.0 + 4.0 * f64::EPSILON {
        return Err(Error::OutOfRange(y));
    }
    if y.abs() >= 1.0 {
        return Ok(AngleDegrees(90.0f64.copysign(y)));
    }
    let (mut lo, mut hi) = (-FRAC_PI_2, FRAC_PI_2);
    let mut theta = y * FRAC_PI_2;
    for _ in 0..ARCSINE_MAX_ITERATIONS {
        let residual = sine_series(theta, REFERENCE_SINE_TERMS) - y;
        if residual == 0.0 {
            break;
        }
        if residual > 0.0 {
            hi = theta;
        } else {
            lo = theta;
        }
        let slope = cosine_series(theta, REFERENCE_SINE_TERMS);
        let mut next = theta - residual / slope;
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        let step = (next - theta).abs();
        theta = next;
        if step < ARCSINE_TOLERANCE {
            break;
        }
    }
    Ok(AngleDegrees::from_radians(theta))
}

/// One 3x+1 step: `n/2` for even `n`, `3n+1` for odd `n`.
pub fn collatz_step(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "3x+1 step is defined for n >= 1".into(),
        ));
    }
    if n.is_multiple_of(2) {
        Ok(n / 2)
    } else {
        n.checked_mul(3)
            .and_then(|v| v.checked_add(1))
            .ok_or(Error::Overflow("3x+1 step"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trajectory {
    /// Starting value followed by every iterate computed.
    pub values: Vec<u64>,
    /// Set when `max_steps` ran out before the orbit reached 1.
    pub truncated: bool,
}

impl Trajectory {
    pub fn steps(&self) -> usize {
        self.values.len() - 1
    }
}

/// Iterates [`collatz_step`] until the value 1 or until `max_steps` steps.
pub fn collatz_trajectory(n: u64, max_steps: usize) -> Result<Trajectory> {
    if n == 0 {
        return Err(Error::InvalidInput("trajectory start must be >= 1".into()));
    }
    let mut values = vec![n];
    let mut current = n;
    while current != 1 {
        if values.len() > max_steps {
            return Ok(Trajectory {
                values,
                truncated: true,
            });
        }
        current = collatz_step(current)?;
        values.push(current);
    }
    Ok(Trajectory {
        values,
        truncated: false,
    })
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Blum-Blum-Shub state `x` under modulus `M = p q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BbsState {
    modulus: u64,
    state: u64,
}

impl BbsState {
    /// Both primes must be distinct and congruent to 3 mod 4; the seed must
    /// be a unit modulo `p q`.
    pub fn new(p: u64, q: u64, seed: u64) -> Result<Self> {
        let modulus = Self::modulus_for(p, q)?;
        Self::with_modulus(modulus, seed)
    }

    /// Validates a Blum modulus and returns `p q`.
    pub fn modulus_for(p: u64, q: u64) -> Result<u64> {
        for f in [p, q] {
            if !is_prime(f) {
                return Err(Error::InvalidModulus(format!("{f} is not prime")));
            }
            if f % 4 != 3 {
                return Err(Error::InvalidModulus(format!("{f} is not 3 mod 4")));
            }
        }
        if p == q {
            return Err(Error::InvalidModulus("p and q must differ".into()));
        }
        p.checked_mul(q)
            .ok_or(Error::InvalidModulus("p q overflows 64 bits".into()))
    }

    fn with_modulus(modulus: u64, seed: u64) -> Result<Self> {
        if seed == 0 || seed >= modulus || gcd(seed, modulus) != 1 {
            return Err(Error::InvalidSeed { seed, modulus });
        }
        Ok(Self {
            modulus,
            state: seed,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    /// Least significant bit of the current state.
    pub fn bit(&self) -> u8 {
        (self.state & 1) as u8
    }
}

/// `x <- x^2 mod M`. The emitted bit is [`BbsState::bit`] of the result.
pub fn bbs_next(s: &BbsState) -> BbsState {
    let squared = (s.state as u128 * s.state as u128) % s.modulus as u128;
    BbsState {
        modulus: s.modulus,
        state: squared as u64,
    }
}

/// First `len` output bits starting from `seed`.
pub fn bbs_bits(p: u64, q: u64, seed: u64, len: usize) -> Result<Vec<u8>> {
    let mut s = BbsState::new(p, q, seed)?;
    Ok(bbs_bits_from(&mut s, len))
}

pub(crate) fn bbs_bits_from(s: &mut BbsState, len: usize) -> Vec<u8> {
    (0..len)
        .map(|_| {
            *s = bbs_next(s);
            s.bit()
        })
        .collect()
}

/// Every seed that is a unit modulo `p q`, ascending.
pub fn bbs_valid_seeds(p: u64, q: u64) -> Result<Vec<u64>> {
    let m = BbsState::modulus_for(p, q)?;
    Ok((1..m).filter(|&x| gcd(x, m) == 1).collect())
}
