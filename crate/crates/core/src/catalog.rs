//! Built-in reference functions, addressed by string identifier.
//!
//! Each entry carries its canonical source text (the description whose
//! length is measured), declared interface widths and the rank profile the
//! function is expected to have. [`demonstrate`] derives the profile
//! empirically instead, by actually building tables and attempting
//! inversions on a fixed experiment domain.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cfg::{enumerate_cycles, instrumented_by_id};
use crate::error::{Error, Result};
use crate::funcs::{
    arcsine, bbs_bits, bbs_valid_seeds, collatz_step, reference_sine, taylor_sine, AngleDegrees,
    DEFAULT_SINE_TERMS,
};
use crate::inversion::{bisect_invert, probe_rank3, Bracket};
use crate::ranking::{CostLedger, RankProfile};
use crate::tables::build_table;
use crate::tsp::{enumerate_all_tours, tour_distance, DistanceMatrix, Tour};

/// Most samples the monotonicity probe takes on any experiment domain.
pub const PROBE_SAMPLES: usize = 1000;

/// Blum primes and seed of the small BBS experiment.
pub const BBS_P: u64 = 7;
pub const BBS_Q: u64 = 11;
pub const BBS_SEED: u64 = 2;
/// Output bits per BBS evaluation in the experiments.
pub const BBS_PREFIX_BITS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FunctionId {
    Sine,
    Arcsine,
    Collatz,
    Bbs,
    Gtd,
}

impl FunctionId {
    pub const ALL: [FunctionId; 5] = [
        FunctionId::Sine,
        FunctionId::Arcsine,
        FunctionId::Collatz,
        FunctionId::Bbs,
        FunctionId::Gtd,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FunctionId::Sine => "sine",
            FunctionId::Arcsine => "arcsine",
            FunctionId::Collatz => "collatz",
            FunctionId::Bbs => "bbs",
            FunctionId::Gtd => "gtd",
        }
    }

    pub fn descriptor(self) -> &'static FunctionDescriptor {
        DESCRIPTORS
            .iter()
            .find(|d| d.id == self)
            .expect("every id has a descriptor")
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FunctionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FunctionId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownFunction(s.to_string()))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FunctionDescriptor {
    pub id: FunctionId,
    pub domain: &'static str,
    pub codomain: &'static str,
    /// Canonical source text; its length is the description size.
    #[serde(skip)]
    pub source: &'static str,
    /// Declared input width in bits (per city for `gtd`).
    pub input_bits: u32,
    pub output_bits: u32,
    declared: [bool; 4],
}

impl FunctionDescriptor {
    pub fn declared_profile(&self) -> RankProfile {
        let [r1, r2, r3, r4] = self.declared;
        RankProfile::new(r1, r2, r3, r4).expect("declared profiles are consistent")
    }
}

static DESCRIPTORS: [FunctionDescriptor; 5] = [
    FunctionDescriptor {
        id: FunctionId::Sine,
        domain: "angle in degrees, 32-bit float",
        codomain: "sine value, 32-bit float",
        source: include_str!("sources/sine.c"),
        input_bits: 32,
        output_bits: 32,
        declared: [true, true, true, true],
    },
    FunctionDescriptor {
        id: FunctionId::Arcsine,
        domain: "value in [-1, 1], 32-bit float",
        codomain: "angle in degrees, 32-bit float",
        source: include_str!("sources/arcsine.c"),
        input_bits: 32,
        output_bits: 32,
        declared: [true, true, true, true],
    },
    FunctionDescriptor {
        id: FunctionId::Collatz,
        domain: "positive integer, 32-bit",
        codomain: "3x+1 successor (ranked through its branch selector)",
        source: include_str!("sources/collatz.c"),
        input_bits: 32,
        output_bits: 32,
        declared: [true, true, false, false],
    },
    FunctionDescriptor {
        id: FunctionId::Bbs,
        domain: "seed, unit modulo p q",
        codomain: "output bit stream prefix",
        source: include_str!("sources/bbs.c"),
        input_bits: 32,
        output_bits: 32,
        declared: [true, true, false, false],
    },
    FunctionDescriptor {
        id: FunctionId::Gtd,
        domain: "closed tour over n cities",
        codomain: "tour length in km",
        source: include_str!("sources/gtd.c"),
        input_bits: 32,
        output_bits: 32,
        declared: [true, true, false, false],
    },
];

pub type ScalarFn = Box<dyn Fn(f64) -> Result<f64> + Send + Sync>;

/// Forward evaluator on scalars, for the functions that have one without
/// extra parameters: `sine` (degrees), `arcsine` and `collatz` (one step).
pub fn forward(id: FunctionId) -> Result<ScalarFn> {
    match id {
        FunctionId::Sine => Ok(Box::new(|x| {
            taylor_sine(AngleDegrees(x), DEFAULT_SINE_TERMS)
        })),
        FunctionId::Arcsine => Ok(Box::new(|y| arcsine(y).map(AngleDegrees::value))),
        FunctionId::Collatz => Ok(Box::new(|x| {
            if x < 1.0 || x.fract() != 0.0 {
                return Err(Error::InvalidInput(format!(
                    "{x} is not a positive integer"
                )));
            }
            collatz_step(x as u64).map(|v| v as f64)
        })),
        FunctionId::Bbs | FunctionId::Gtd => Err(Error::Unsupported {
            function: id.as_str(),
            operation: "scalar forward evaluation",
        }),
    }
}

/// Analytic inverse, where one exists.
pub fn analytic_inverse(id: FunctionId) -> Option<ScalarFn> {
    match id {
        FunctionId::Sine => Some(Box::new(|y| arcsine(y).map(AngleDegrees::value))),
        FunctionId::Arcsine => Some(Box::new(|x| Ok(reference_sine(AngleDegrees(x))))),
        _ => None,
    }
}

/// Empirically established capabilities of one catalog function.
#[derive(Debug, Clone, Serialize)]
pub struct Demonstration {
    pub function_id: FunctionId,
    pub profile: RankProfile,
    /// Grid points of the experiment domain.
    pub domain_points: usize,
    pub monotone: bool,
    pub cost: CostLedger,
}

/// Experiment domain as a bracket over positions, plus the function on it.
struct Experiment {
    bracket: Bracket,
    eval: ScalarFn,
    /// Round-trip check of the analytic inverse on one grid point.
    inverse_check: Option<Box<dyn Fn(f64) -> Result<bool>>>,
}

fn experiment(id: FunctionId) -> Result<Experiment> {
    Ok(match id {
        FunctionId::Sine => Experiment {
            bracket: Bracket::new(0.0, 90.0, 1.0)?,
            eval: forward(id)?,
            inverse_check: Some(Box::new(|x| {
                let y = reference_sine(AngleDegrees(x));
                Ok((arcsine(y)?.value() - x).abs() <= 0.01)
            })),
        },
        FunctionId::Arcsine => Experiment {
            bracket: Bracket::new(-1.0, 1.0, 0.01)?,
            eval: forward(id)?,
            inverse_check: Some(Box::new(|y| {
                let theta = arcsine(y)?;
                Ok((reference_sine(theta) - y).abs() <= 1e-6)
            })),
        },
        FunctionId::Collatz => {
            // Ranked through the redirected function: input -> branch taken.
            let f = instrumented_by_id("collatz")?;
            let cycles = enumerate_cycles(f.graph())?;
            Experiment {
                bracket: Bracket::new(1.0, 65536.0, 1.0)?,
                eval: Box::new(move |x| {
                    let path = f.trace(x as u64).path;
                    Ok(cycles.iter().position(|c| *c == path).expect("enumerated") as f64)
                }),
                inverse_check: None,
            }
        }
        FunctionId::Bbs => {
            let seeds = bbs_valid_seeds(BBS_P, BBS_Q)?;
            Experiment {
                bracket: Bracket::new(0.0, (seeds.len() - 1) as f64, 1.0)?,
                eval: Box::new(move |i| {
                    let bits = bbs_bits(BBS_P, BBS_Q, seeds[i as usize], BBS_PREFIX_BITS)?;
                    Ok(pack_bits(&bits) as f64)
                }),
                inverse_check: None,
            }
        }
        FunctionId::Gtd => {
            let m = DistanceMatrix::five_city();
            let tours: Vec<Tour> = enumerate_all_tours(&m).collect();
            Experiment {
                bracket: Bracket::new(0.0, (tours.len() - 1) as f64, 1.0)?,
                eval: Box::new(move |i| tour_distance(&m, &tours[i as usize]).map(|d| d as f64)),
                inverse_check: None,
            }
        }
    })
}

/// Big-endian packing of an output bit prefix.
pub fn pack_bits(bits: &[u8]) -> u64 {
    bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
}

/// Establishes each rank by doing it:
///
/// * rank 1: every grid point evaluates;
/// * rank 2: a full table builds within the feasibility limit and its
///   output index inverts a sample entry;
/// * rank 3: the probe finds the function monotone and bisection recovers
///   sampled grid points without a table;
/// * rank 4: an analytic inverse exists and round-trips every grid point.
pub fn demonstrate(id: FunctionId) -> Result<Demonstration> {
    let exp = experiment(id)?;
    let b = &exp.bracket;
    let mut cost = CostLedger::new();

    let table = build_table(b.iter().map(OrderedPoint), |p| (exp.eval)(p.0), &mut cost);
    let rank1 = table.is_ok();
    let rank2 = match &table {
        Ok(t) => {
            let (_, y) = t.entries()[t.len() / 2];
            t.lookup_by_output(y, 0.0, &mut cost)
                .map(|found| (exp.eval)(found.0).ok() == Some(y))
                .unwrap_or(false)
        }
        Err(_) => false,
    };

    let monotone = probe_rank3(&exp.eval, b, PROBE_SAMPLES, &mut cost)?;
    let rank3 = monotone && {
        let stride = (b.points() / 10).max(1);
        (0..b.points()).step_by(stride).all(|i| {
            let x = b.point(i);
            let Ok(y) = (exp.eval)(x) else { return false };
            match bisect_invert(&exp.eval, y, b, 0.0, &mut cost) {
                Ok(found) => (exp.eval)(found).ok() == Some(y),
                Err(_) => false,
            }
        })
    };

    let rank4 = match &exp.inverse_check {
        Some(check) => b
            .iter()
            .map(check)
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|ok| ok),
        None => false,
    };

    Ok(Demonstration {
        function_id: id,
        profile: RankProfile::new(rank1, rank1 && rank2, rank3, rank4)?,
        domain_points: b.points(),
        monotone,
        cost,
    })
}

/// Grid coordinate usable as an ordered table input.
#[derive(Debug, Clone, Copy, PartialEq)]
struct OrderedPoint(f64);

impl Eq for OrderedPoint {}

impl PartialOrd for OrderedPoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrderedPoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ranking::{classify, Category};

    #[test]
    fn identifiers_round_trip() {
        for id in FunctionId::ALL {
            assert_eq!(id.as_str().parse::<FunctionId>().unwrap(), id);
        }
        assert_eq!(
            "cosine".parse::<FunctionId>(),
            Err(Error::UnknownFunction("cosine".into()))
        );
    }

    #[test]
    fn demonstrated_profiles_match_declared() {
        for id in FunctionId::ALL {
            let demo = demonstrate(id).unwrap();
            assert_eq!(demo.profile, id.descriptor().declared_profile(), "{id}");
        }
    }

    #[test]
    fn categories() {
        let cat = |id| classify(&demonstrate(id).unwrap().profile);
        assert_eq!(cat(FunctionId::Sine), Category::C1);
        assert_eq!(cat(FunctionId::Arcsine), Category::C1);
        assert_eq!(cat(FunctionId::Collatz), Category::C2);
        assert_eq!(cat(FunctionId::Bbs), Category::C2);
        assert_eq!(cat(FunctionId::Gtd), Category::C2);
    }

    #[test]
    fn forward_evaluators() {
        let sine = forward(FunctionId::Sine).unwrap();
        assert!((sine(56.0).unwrap() - 0.8290).abs() < 5e-4);
        let step = forward(FunctionId::Collatz).unwrap();
        assert_eq!(step(7.0).unwrap(), 22.0);
        assert!(step(0.5).is_err());
        assert!(forward(FunctionId::Gtd).is_err());
        assert!(analytic_inverse(FunctionId::Bbs).is_none());
    }

    #[test]
    fn pack_bits_big_endian() {
        assert_eq!(pack_bits(&[0, 0, 1, 1]), 3);
        assert_eq!(pack_bits(&[1, 0, 0]), 4);
    }
}
