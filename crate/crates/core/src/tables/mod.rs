//! Rank 2 machinery: input/output tables kept in insertion order with one
//! index permutation per sort direction.

mod oracle;

pub use oracle::{OracleNotebook, LCG_INCREMENT, LCG_MULTIPLIER, TABLE1};

use std::cmp::Ordering;
use std::fmt::Display;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ranking::{CostLedger, TABLE_FEASIBILITY_LIMIT};
use crate::search::{first_within, Probe};

/// Output column of a table. Comparison and tolerance checks go through
/// `to_f64`.
pub trait TableValue: Copy {
    fn to_f64(self) -> f64;

    fn render(self, decimals: Option<usize>) -> String;
}

impl TableValue for f64 {
    fn to_f64(self) -> f64 {
        self
    }

    fn render(self, decimals: Option<usize>) -> String {
        match decimals {
            Some(d) => format!("{self:.d$}"),
            None => self.to_string(),
        }
    }
}

macro_rules! integer_value {
    ($($t:ty),*) => {$(
        impl TableValue for $t {
            fn to_f64(self) -> f64 {
                self as f64
            }

            fn render(self, _decimals: Option<usize>) -> String {
                self.to_string()
            }
        }
    )*};
}

integer_value!(u8, u32, u64, i64, usize);

/// Inclusive integer grid `lo, lo+step, ..., <= hi`. Empty when `lo > hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
    pub step: i64,
}

impl IntRange {
    pub fn new(lo: i64, hi: i64, step: i64) -> Result<Self> {
        if step <= 0 {
            return Err(Error::InvalidInput(format!(
                "range step must be positive, got {step}"
            )));
        }
        Ok(Self { lo, hi, step })
    }

    pub fn len(&self) -> usize {
        if self.lo > self.hi {
            0
        } else {
            ((self.hi - self.lo) / self.step) as usize + 1
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = i64> + Clone {
        let (lo, step) = (self.lo, self.step);
        (0..self.len()).map(move |i| lo + i as i64 * step)
    }
}

/// Which sort view to walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum View {
    ByInput,
    ByOutput,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MappingTable<I, O> {
    entries: Vec<(I, O)>,
    index_by_input: Vec<usize>,
    index_by_output: Vec<usize>,
}

impl<I: Ord, O: TableValue> MappingTable<I, O> {
    /// Builds both sort indices. Output ties are broken by ascending input.
    pub fn from_entries(entries: Vec<(I, O)>) -> Self {
        let mut index_by_input: Vec<usize> = (0..entries.len()).collect();
        index_by_input.sort_by(|&a, &b| entries[a].0.cmp(&entries[b].0));
        let mut index_by_output: Vec<usize> = (0..entries.len()).collect();
        index_by_output.sort_by(|&a, &b| Self::output_order(&entries[a], &entries[b]));
        Self {
            entries,
            index_by_input,
            index_by_output,
        }
    }

    fn output_order(a: &(I, O), b: &(I, O)) -> Ordering {
        a.1.to_f64()
            .total_cmp(&b.1.to_f64())
            .then_with(|| a.0.cmp(&b.0))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in insertion order.
    pub fn entries(&self) -> &[(I, O)] {
        &self.entries
    }

    pub fn index_by_input(&self) -> &[usize] {
        &self.index_by_input
    }

    pub fn index_by_output(&self) -> &[usize] {
        &self.index_by_output
    }

    pub fn view(&self, view: View) -> impl Iterator<Item = &(I, O)> + '_ {
        let index = match view {
            View::ByInput => &self.index_by_input,
            View::ByOutput => &self.index_by_output,
        };
        index.iter().map(move |&i| &self.entries[i])
    }

    /// Entry with the smallest output (first row of the output view).
    pub fn head_by_output(&self) -> Option<&(I, O)> {
        self.index_by_output.first().map(|&i| &self.entries[i])
    }

    /// Binary search of the output view for the first entry with
    /// `|output - y| <= tol`. Each examined entry is one probe and one
    /// comparison in `ledger`.
    pub fn lookup_by_output(&self, y: f64, tol: f64, ledger: &mut CostLedger) -> Result<&I> {
        let out = first_within(self.len(), |pos| {
            ledger.record_probe();
            ledger.record_comparison();
            let v = self.entries[self.index_by_output[pos]].1.to_f64();
            Ok(if v < y - tol {
                Probe::Below
            } else if v > y + tol {
                Probe::Above
            } else {
                Probe::Within
            })
        })?;
        out.found
            .map(|pos| &self.entries[self.index_by_output[pos]].0)
            .ok_or(Error::NotFound)
    }

    /// Forward evaluation through the input view.
    pub fn lookup_by_input(&self, x: &I, ledger: &mut CostLedger) -> Result<O> {
        let out = first_within(self.len(), |pos| {
            ledger.record_probe();
            ledger.record_comparison();
            Ok(match self.entries[self.index_by_input[pos]].0.cmp(x) {
                Ordering::Less => Probe::Below,
                Ordering::Equal => Probe::Within,
                Ordering::Greater => Probe::Above,
            })
        })?;
        out.found
            .map(|pos| self.entries[self.index_by_input[pos]].1)
            .ok_or(Error::NotFound)
    }

    /// CSV with columns `index,input,output`; `index` is 1-based in the
    /// order of the chosen view.
    pub fn write_csv<W: Write>(&self, w: W, view: View, decimals: Option<usize>) -> Result<()>
    where
        I: Display,
    {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["index", "input", "output"])?;
        for (i, (x, y)) in self.view(view).enumerate() {
            wtr.write_record([(i + 1).to_string(), x.to_string(), y.render(decimals)])?;
        }
        wtr.flush()?;
        Ok(())
    }
}

/// Evaluates `f` on every domain point (one forward evaluation each) and
/// indexes the result. Refuses domains above [`TABLE_FEASIBILITY_LIMIT`]
/// before evaluating anything.
pub fn build_table<I, O, D, F>(
    domain: D,
    mut f: F,
    ledger: &mut CostLedger,
) -> Result<MappingTable<I, O>>
where
    I: Ord,
    O: TableValue,
    D: IntoIterator<Item = I>,
    D::IntoIter: ExactSizeIterator,
    F: FnMut(&I) -> Result<O>,
{
    let domain = domain.into_iter();
    check_feasible(domain.len() as u128)?;
    let mut entries = Vec::with_capacity(domain.len());
    for x in domain {
        ledger.record_eval();
        let y = f(&x)?;
        entries.push((x, y));
    }
    Ok(MappingTable::from_entries(entries))
}

pub fn check_feasible(entries: u128) -> Result<()> {
    if entries > TABLE_FEASIBILITY_LIMIT {
        return Err(Error::InfeasibleTable {
            entries,
            limit: TABLE_FEASIBILITY_LIMIT,
        });
    }
    Ok(())
}

/// Sine table over whole degrees.
pub fn sine_table(
    range: IntRange,
    terms: usize,
    ledger: &mut CostLedger,
) -> Result<MappingTable<i64, f64>> {
    build_table(
        range.iter(),
        |&deg| crate::funcs::taylor_sine(crate::funcs::AngleDegrees(deg as f64), terms),
        ledger,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcs::DEFAULT_SINE_TERMS;
    use crate::search::probe_budget;
    use proptest::prelude::*;

    fn sine_45_to_76() -> MappingTable<i64, f64> {
        let mut ledger = CostLedger::new();
        let t = sine_table(
            IntRange::new(45, 76, 1).unwrap(),
            DEFAULT_SINE_TERMS,
            &mut ledger,
        )
        .unwrap();
        assert_eq!(ledger.forward_evals, 32);
        t
    }

    #[test]
    fn sine_table_has_32_rows_and_56_degrees_reads_0_8290() {
        let t = sine_45_to_76();
        assert_eq!(t.len(), 32);
        let (_, y) = t.entries().iter().find(|(x, _)| *x == 56).unwrap();
        assert_eq!(format!("{y:.4}"), "0.8290");
    }

    #[test]
    fn empty_range_gives_empty_table() {
        let mut ledger = CostLedger::new();
        let t = sine_table(IntRange::new(10, 5, 1).unwrap(), 5, &mut ledger).unwrap();
        assert!(t.is_empty());
        assert_eq!(ledger.forward_evals, 0);
        assert_eq!(
            t.lookup_by_output(0.5, 1.0, &mut ledger),
            Err(Error::NotFound)
        );
    }

    #[test]
    fn lookup_0_829_gives_56() {
        let t = sine_45_to_76();
        let mut ledger = CostLedger::new();
        assert_eq!(*t.lookup_by_output(0.829, 5e-4, &mut ledger).unwrap(), 56);
        assert!(ledger.comparisons <= probe_budget(32));
        assert_eq!(ledger.forward_evals, 0);
    }

    #[test]
    fn lookup_below_all_outputs_is_not_found() {
        let t = sine_45_to_76();
        let mut ledger = CostLedger::new();
        assert_eq!(
            t.lookup_by_output(0.1, 0.0, &mut ledger),
            Err(Error::NotFound)
        );
    }

    #[test]
    fn lookup_by_input_reads_forward() {
        let t = sine_45_to_76();
        let mut ledger = CostLedger::new();
        let y = t.lookup_by_input(&56, &mut ledger).unwrap();
        assert_eq!(format!("{y:.4}"), "0.8290");
        assert_eq!(t.lookup_by_input(&99, &mut ledger), Err(Error::NotFound));
    }

    #[test]
    fn output_ties_break_by_input() {
        let t = MappingTable::from_entries(vec![(3, 1u64), (1, 1), (2, 0)]);
        let order: Vec<i32> = t.view(View::ByOutput).map(|(x, _)| *x).collect();
        assert_eq!(order, vec![2, 1, 3]);
        let mut ledger = CostLedger::new();
        assert_eq!(*t.lookup_by_output(1.0, 0.0, &mut ledger).unwrap(), 1);
    }

    #[test]
    fn infeasible_table_is_refused_before_evaluation() {
        let mut ledger = CostLedger::new();
        let range = IntRange::new(0, 1 << 25, 1).unwrap();
        let err = sine_table(range, 5, &mut ledger).unwrap_err();
        assert!(matches!(err, Error::InfeasibleTable { .. }));
        assert_eq!(ledger.forward_evals, 0);
    }

    #[test]
    fn bad_step_rejected() {
        assert!(IntRange::new(0, 10, 0).is_err());
    }

    #[test]
    fn csv_layout() {
        let mut ledger = CostLedger::new();
        let t = sine_table(IntRange::new(45, 47, 1).unwrap(), 5, &mut ledger).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf, View::ByInput, Some(4)).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "index,input,output\n1,45,0.7071\n2,46,0.7193\n3,47,0.7314\n"
        );
    }

    proptest! {
        #[test]
        fn indices_are_sorted_permutations(values in proptest::collection::vec((0i64..1000, -100i64..100), 0..200)) {
            let t = MappingTable::from_entries(values.clone());
            let mut a = t.index_by_input().to_vec();
            let mut b = t.index_by_output().to_vec();
            a.sort();
            b.sort();
            let identity: Vec<usize> = (0..values.len()).collect();
            prop_assert_eq!(&a, &identity);
            prop_assert_eq!(&b, &identity);
            let ins: Vec<i64> = t.view(View::ByInput).map(|e| e.0).collect();
            let outs: Vec<i64> = t.view(View::ByOutput).map(|e| e.1).collect();
            prop_assert!(ins.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(outs.windows(2).all(|w| w[0] <= w[1]));
        }

        #[test]
        fn dual_index_round_trip(lo in 0i64..60, len in 1i64..30) {
            let mut ledger = CostLedger::new();
            let t = sine_table(IntRange::new(lo, lo + len, 1).unwrap(), 5, &mut ledger).unwrap();
            for &(x, y) in t.entries() {
                let mut l = CostLedger::new();
                prop_assert_eq!(*t.lookup_by_output(y, 0.0, &mut l).unwrap(), x);
                prop_assert!(l.comparisons <= probe_budget(t.len()));
            }
        }
    }
}
