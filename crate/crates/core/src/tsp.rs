//! Travelling-salesman distance function: distance matrices, closed tours, the
//! path-length function and brute-force enumeration.
//!
//! Tours starting at city 0 are canonical, giving `(n-1)!` tours per
//! instance. Counting every start city gives the `n!` figure.

use std::fmt;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ranking::CostLedger;
use crate::tables::{build_table, check_feasible, MappingTable, View};

/// Largest instance `shortest_tour` will enumerate.
pub const MAX_EXHAUSTIVE_CITIES: usize = 12;

/// Reference 5-city instance, distances in km.
pub const FIVE_CITY_DISTANCES: [[u64; 5]; 5] = [
    [0, 170, 150, 600, 330],
    [170, 0, 190, 500, 200],
    [150, 190, 0, 490, 230],
    [600, 500, 490, 0, 280],
    [330, 200, 230, 280, 0],
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Vec<u64>>,
}

impl DistanceMatrix {
    /// Requires a non-empty square matrix with a zero diagonal, and symmetry
    /// unless `allow_asymmetric` is set.
    pub fn new(d: Vec<Vec<u64>>, allow_asymmetric: bool) -> Result<Self> {
        let n = d.len();
        if n == 0 {
            return Err(Error::InvalidMatrix("matrix has no cities".into()));
        }
        for (i, row) in d.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMatrix(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if row[i] != 0 {
                return Err(Error::InvalidMatrix(format!(
                    "d[{i}][{i}] = {} is not zero",
                    row[i]
                )));
            }
        }
        if !allow_asymmetric {
            #[allow(clippy::needless_range_loop)]
            for i in 0..n {
                for j in (i + 1)..n {
                    if d[i][j] != d[j][i] {
                        return Err(Error::InvalidMatrix(format!(
                            "d[{i}][{j}] = {} but d[{j}][{i}] = {}",
                            d[i][j], d[j][i]
                        )));
                    }
                }
            }
        }
        Ok(Self { n, d })
    }

    pub fn five_city() -> Self {
        Self::new(
            FIVE_CITY_DISTANCES.iter().map(|r| r.to_vec()).collect(),
            false,
        )
        .expect("built-in instance is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn distance(&self, from: usize, to: usize) -> u64 {
        self.d[from][to]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.d
    }

    /// `{"n": 5, "d": [[...], ...]}`; `n` must agree with the row count.
    pub fn from_json_str(s: &str, allow_asymmetric: bool) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            d: Vec<Vec<u64>>,
        }
        let raw: Raw = serde_json::from_str(s)?;
        if raw.n != raw.d.len() {
            return Err(Error::InvalidMatrix(format!(
                "n = {} but {} rows were given",
                raw.n,
                raw.d.len()
            )));
        }
        Self::new(raw.d, allow_asymmetric)
    }

    /// One row per line, comma separated, no header.
    pub fn from_csv_reader<R: Read>(r: R, allow_asymmetric: bool) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(r);
        let mut d = Vec::new();
        for record in rdr.records() {
            let record = record?;
            let row = record
                .iter()
                .map(|f| {
                    f.parse::<u64>()
                        .map_err(|e| Error::Parse(format!("`{f}`: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            d.push(row);
        }
        Self::new(d, allow_asymmetric)
    }

    /// Reads JSON when the extension is `.json`, CSV otherwise.
    pub fn load(path: &Path, allow_asymmetric: bool) -> Result<Self> {
        let is_json = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("json"));
        if is_json {
            Self::from_json_str(&std::fs::read_to_string(path)?, allow_asymmetric)
        } else {
            Self::from_csv_reader(std::fs::File::open(path)?, allow_asymmetric)
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serializes")
    }
}

/// Closed path: the first city is repeated at the end.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Tour(Vec<usize>);

impl Tour {
    pub fn new(cities: Vec<usize>) -> Result<Self> {
        if cities.len() < 2 {
            return Err(Error::InvalidTour(
                "a closed tour lists at least two cities".into(),
            ));
        }
        if cities.first() != cities.last() {
            return Err(Error::InvalidTour("first and last city differ".into()));
        }
        let interior = &cities[..cities.len() - 1];
        let mut seen = interior.to_vec();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidTour("a city is visited twice".into()));
        }
        Ok(Tour(cities))
    }

    /// Closes an open path by repeating its first city.
    pub fn from_path(path: &[usize]) -> Result<Self> {
        let mut cities = path.to_vec();
        if let Some(&first) = path.first() {
            cities.push(first);
        }
        Self::new(cities)
    }

    pub fn cities(&self) -> &[usize] {
        &self.0
    }

    /// The visiting order without the closing repeat.
    pub fn interior(&self) -> &[usize] {
        &self.0[..self.0.len() - 1]
    }

    pub fn reversed(&self) -> Tour {
        Tour(self.0.iter().rev().copied().collect())
    }

    /// Same cycle started from `city`, or `None` if the tour skips it.
    pub fn rotated_to(&self, city: usize) -> Option<Tour> {
        let interior = self.interior();
        let pos = interior.iter().position(|&c| c == city)?;
        let mut cities: Vec<usize> = interior[pos..]
            .iter()
            .chain(&interior[..pos])
            .copied()
            .collect();
        cities.push(city);
        Some(Tour(cities))
    }

    /// Rotation that starts at city 0.
    pub fn normalized(&self) -> Option<Tour> {
        self.rotated_to(0)
    }
}

impl fmt::Display for Tour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Tour {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cities = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("`{p}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Tour::new(cities)
    }
}

/// Sum of `d[t_i][t_{i+1}]` over consecutive cities.
pub fn tour_distance(m: &DistanceMatrix, t: &Tour) -> Result<u64> {
    if let Some(&city) = t.cities().iter().find(|&&c| c >= m.n()) {
        return Err(Error::DimensionMismatch { city, n: m.n() });
    }
    if t.interior().len() != m.n() {
        return Err(Error::InvalidTour(format!(
            "tour visits {} cities, instance has {}",
            t.interior().len(),
            m.n()
        )));
    }
    t.cities()
        .windows(2)
        .try_fold(0u64, |acc, w| acc.checked_add(m.distance(w[0], w[1])))
        .ok_or(Error::Overflow("tour distance"))
}

pub fn factorial(n: usize) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

/// Lexicographic successor; false once the slice is non-increasing.
fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Closed tours from a fixed start, interior permutations in lexicographic
/// order.
#[derive(Debug, Clone)]
pub struct Tours {
    start: usize,
    rest: Vec<usize>,
    remaining: usize,
}

impl Iterator for Tours {
    type Item = Tour;

    fn next(&mut self) -> Option<Tour> {
        if self.remaining == 0 {
            return None;
        }
        let mut cities = Vec::with_capacity(self.rest.len() + 2);
        cities.push(self.start);
        cities.extend_from_slice(&self.rest);
        cities.push(self.start);
        self.remaining -= 1;
        if self.remaining > 0 {
            next_permutation(&mut self.rest);
        }
        Some(Tour(cities))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl ExactSizeIterator for Tours {}

/// Every closed tour of an `n`-city instance that starts at `start`;
/// `(n-1)!` of them.
pub fn enumerate_tours(m: &DistanceMatrix, start: usize) -> Result<Tours> {
    tours_from(m.n(), start)
}

pub(crate) fn tours_from(n: usize, start: usize) -> Result<Tours> {
    if start >= n {
        return Err(Error::InvalidInput(format!(
            "start city {start} not in 0..{n}"
        )));
    }
    let count = factorial(n - 1)
        .and_then(|c| usize::try_from(c).ok())
        .ok_or(Error::TooLarge { n, limit: 20 })?;
    Ok(Tours {
        start,
        rest: (0..n).filter(|&c| c != start).collect(),
        remaining: count,
    })
}

/// Tours from every start city in turn: `n!` tours, lexicographic overall.
pub fn enumerate_all_tours(m: &DistanceMatrix) -> impl Iterator<Item = Tour> + '_ {
    (0..m.n()).flat_map(move |s| tours_from(m.n(), s).expect("start is in range"))
}

/// Full tour -> distance table over the canonical tours (start 0).
pub fn sorted_mapping(
    m: &DistanceMatrix,
    ledger: &mut CostLedger,
) -> Result<MappingTable<Tour, u64>> {
    let count = factorial(m.n() - 1).ok_or(Error::Overflow("tour count"))?;
    check_feasible(count)?;
    build_table(enumerate_tours(m, 0)?, |t| tour_distance(m, t), ledger)
}

/// Same as [`sorted_mapping`] but over all `n!` tours.
pub fn full_mapping(
    m: &DistanceMatrix,
    ledger: &mut CostLedger,
) -> Result<MappingTable<Tour, u64>> {
    let count = factorial(m.n()).ok_or(Error::Overflow("tour count"))?;
    check_feasible(count)?;
    let tours: Vec<Tour> = enumerate_all_tours(m).collect();
    build_table(tours, |t| tour_distance(m, t), ledger)
}

/// Brute-force optimum over the `(n-1)!` canonical tours. Ties go to the
/// lexicographically smallest tour.
pub fn shortest_tour(m: &DistanceMatrix, ledger: &mut CostLedger) -> Result<(Tour, u64)> {
    if m.n() > MAX_EXHAUSTIVE_CITIES {
        return Err(Error::TooLarge {
            n: m.n(),
            limit: MAX_EXHAUSTIVE_CITIES,
        });
    }
    let mut best: Option<(Tour, u64)> = None;
    for tour in enumerate_tours(m, 0)? {
        ledger.record_eval();
        let d = tour_distance(m, &tour)?;
        ledger.record_comparison();
        if best.as_ref().is_none_or(|(_, b)| d < *b) {
            best = Some((tour, d));
        }
    }
    Ok(best.expect("at least one tour exists"))
}

/// CSV `tour,distance` in ascending distance order.
pub fn write_mapping_csv<W: Write>(table: &MappingTable<Tour, u64>, w: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["tour", "distance"])?;
    for (t, d) in table.view(View::ByOutput) {
        wtr.write_record([t.to_string(), d.to_string()])?;
    }
    wtr.flush()?;
    Ok(())
}
