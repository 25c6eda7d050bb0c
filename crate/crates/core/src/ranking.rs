//! Rank taxonomy, category classification and the cost/size ledgers shared by
//! every experiment.
//!
//! A function is described by four capability flags:
//!
//! | rank | capability                                        | direction |
//! |------|---------------------------------------------------|-----------|
//! | 1    | forward evaluation by a program                   | forward   |
//! | 2    | precomputed table searchable by either column     | both      |
//! | 3    | logarithmic search inversion without a table      | inverse   |
//! | 4    | explicit analytic inverse                         | inverse   |
//!
//! Category 1 functions have an efficient inverse (rank 3 or rank 4).
//! Category 2 functions can only be inverted through a full table or by
//! exhaustive search.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Entry-count limit above which a lookup table is "theoretical only".
pub const TABLE_FEASIBILITY_LIMIT: u128 = 1 << 24;

/// Capability flags of one function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RankProfile {
    rank1: bool,
    rank2: bool,
    rank3: bool,
    rank4: bool,
}

impl RankProfile {
    /// Fails when `rank2` is claimed without `rank1`: a table can only be
    /// built by forward evaluation.
    pub fn new(rank1: bool, rank2: bool, rank3: bool, rank4: bool) -> Result<Self> {
        if rank2 && !rank1 {
            return Err(Error::InvalidInput(
                "rank 2 requires rank 1 (tables are built by forward evaluation)".into(),
            ));
        }
        Ok(Self {
            rank1,
            rank2,
            rank3,
            rank4,
        })
    }

    pub const NONE: RankProfile = RankProfile {
        rank1: false,
        rank2: false,
        rank3: false,
        rank4: false,
    };

    pub fn rank1(&self) -> bool {
        self.rank1
    }

    pub fn rank2(&self) -> bool {
        self.rank2
    }

    pub fn rank3(&self) -> bool {
        self.rank3
    }

    pub fn rank4(&self) -> bool {
        self.rank4
    }

    pub fn flags(&self) -> [bool; 4] {
        [self.rank1, self.rank2, self.rank3, self.rank4]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Category {
    C1,
    C2,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Category::C1 => f.write_str("C1"),
            Category::C2 => f.write_str("C2"),
        }
    }
}

/// C1 iff the function has an efficient inverse (rank 3 or rank 4).
pub fn classify(profile: &RankProfile) -> Category {
    if profile.rank3 || profile.rank4 {
        Category::C1
    } else {
        Category::C2
    }
}

/// Counters for one experiment. They only ever grow.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CostLedger {
    pub forward_evals: u64,
    pub table_probes: u64,
    pub comparisons: u64,
}

impl CostLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record_eval(&mut self) {
        self.forward_evals += 1;
    }

    pub fn record_probe(&mut self) {
        self.table_probes += 1;
    }

    pub fn record_comparison(&mut self) {
        self.comparisons += 1;
    }

    /// Adds another ledger's counts, e.g. when partial scans are merged.
    pub fn absorb(&mut self, other: &CostLedger) {
        self.forward_evals += other.forward_evals;
        self.table_probes += other.table_probes;
        self.comparisons += other.comparisons;
    }
}

/// Description-vs-mapping size accounting, all in bits.
///
/// `table_bits` is zero unless the lookup table is counted as part of the
/// description (category 2 accounting).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SizeLedger {
    pub description_bits: u128,
    pub mapping_bits: u128,
    pub table_bits: u128,
    pub constant_c: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    #[serde(rename = "LOW")]
    Low,
    #[serde(rename = "HIGH")]
    High,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Low => f.write_str("LOW"),
            Verdict::High => f.write_str("HIGH"),
        }
    }
}

/// LOW when `description + table < mapping + c` (strict), HIGH otherwise.
pub fn complexity_verdict(ledger: &SizeLedger) -> Result<Verdict> {
    if ledger.mapping_bits == 0 {
        return Err(Error::ZeroMapping);
    }
    let lhs = ledger.description_bits.saturating_add(ledger.table_bits);
    let rhs = ledger.mapping_bits.saturating_add(ledger.constant_c);
    Ok(if lhs < rhs {
        Verdict::Low
    } else {
        Verdict::High
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn profile(flags: [bool; 4]) -> RankProfile {
        RankProfile::new(flags[0], flags[1], flags[2], flags[3]).unwrap()
    }

    #[test]
    fn category_rows_of_the_ranking_table() {
        assert_eq!(classify(&profile([true, true, true, true])), Category::C1);
        assert_eq!(classify(&profile([true, true, false, false])), Category::C2);
        assert_eq!(classify(&RankProfile::NONE), Category::C2);
    }

    #[test]
    fn rank4_alone_is_enough_for_c1() {
        assert_eq!(
            classify(&profile([false, false, false, true])),
            Category::C1
        );
    }

    #[test]
    fn rank2_without_rank1_is_rejected() {
        assert!(RankProfile::new(false, true, false, false).is_err());
    }

    #[test]
    fn sine_ledger_is_low() {
        // ~20 KB program against 2 * 2^32 bits of mapping.
        let ledger = SizeLedger {
            description_bits: 20 * 1024 * 8,
            mapping_bits: 2 * (1u128 << 32),
            ..Default::default()
        };
        assert_eq!(complexity_verdict(&ledger).unwrap(), Verdict::Low);
    }

    #[test]
    fn table_included_makes_tsp_high() {
        let mapping = 26_880u128;
        let ledger = SizeLedger {
            description_bits: 2_000,
            mapping_bits: mapping,
            table_bits: mapping,
            constant_c: 0,
        };
        assert_eq!(complexity_verdict(&ledger).unwrap(), Verdict::High);
    }

    #[test]
    fn equality_is_high() {
        let ledger = SizeLedger {
            description_bits: 64,
            mapping_bits: 64,
            ..Default::default()
        };
        assert_eq!(complexity_verdict(&ledger).unwrap(), Verdict::High);
        let with_c = SizeLedger {
            constant_c: 1,
            ..ledger
        };
        assert_eq!(complexity_verdict(&with_c).unwrap(), Verdict::Low);
    }

    #[test]
    fn zero_mapping_is_an_error() {
        assert_eq!(
            complexity_verdict(&SizeLedger::default()),
            Err(Error::ZeroMapping)
        );
    }

    #[test]
    fn absorb_sums_counters() {
        let mut a = CostLedger {
            forward_evals: 1,
            table_probes: 2,
            comparisons: 3,
        };
        a.absorb(&a.clone());
        assert_eq!(a.forward_evals, 2);
        assert_eq!(a.table_probes, 4);
        assert_eq!(a.comparisons, 6);
    }

    proptest! {
        #[test]
        fn classify_matches_flag_rule(r1: bool, r2: bool, r3: bool, r4: bool) {
            prop_assume!(!r2 || r1);
            let p = profile([r1, r2, r3, r4]);
            let expected = if r3 || r4 { Category::C1 } else { Category::C2 };
            prop_assert_eq!(classify(&p), expected);
            prop_assert_eq!(classify(&p), classify(&p));
        }
    }
}
