//! Single-entry/single-exit flow graphs viewed as cyclic graphs.
//!
//! Adding the back edge `exit -> entry` turns every entry-to-exit execution
//! path into a simple cycle. A redirected function returns that cycle
//! instead of its normal output.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Deepest series-diamond chain `doubling_check` will build.
pub const MAX_DOUBLING_DEPTH: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlowGraph {
    vertices: Vec<usize>,
    edges: Vec<(usize, usize)>,
    entry: usize,
    exit: usize,
}

impl FlowGraph {
    /// Validates the single-entry/single-exit shape. If the edge list
    /// already contains `exit -> entry`, the graph is taken as augmented and
    /// validated without that edge.
    pub fn new(edges: Vec<(usize, usize)>, entry: usize, exit: usize) -> Result<Self> {
        if entry == exit {
            return Err(Error::InvalidGraph(
                "entry and exit must be distinct".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for &e in &edges {
            if !seen.insert(e) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge {} -> {}",
                    e.0, e.1
                )));
            }
        }
        let vertices: Vec<usize> = edges
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .chain([entry, exit])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let graph = Self {
            vertices,
            edges,
            entry,
            exit,
        };
        graph.validate_shape()?;
        Ok(graph)
    }

    fn forward_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let back = (self.exit, self.entry);
        self.edges.iter().copied().filter(move |&e| e != back)
    }

    fn validate_shape(&self) -> Result<()> {
        if self.forward_edges().any(|(_, to)| to == self.entry) {
            return Err(Error::InvalidGraph(format!(
                "entry {} has an incoming edge",
                self.entry
            )));
        }
        if self.forward_edges().any(|(from, _)| from == self.exit) {
            return Err(Error::InvalidGraph(format!(
                "exit {} has an outgoing edge",
                self.exit
            )));
        }
        let edges: Vec<_> = self.forward_edges().collect();
        let from_entry = reachable(self.entry, &edges, false);
        let to_exit = reachable(self.exit, &edges, true);
        if let Some(&v) = self
            .vertices
            .iter()
            .find(|v| !from_entry.contains(v) || !to_exit.contains(v))
        {
            return Err(Error::InvalidGraph(format!(
                "vertex {v} is not on any entry -> exit path"
            )));
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn entry(&self) -> usize {
        self.entry
    }

    pub fn exit(&self) -> usize {
        self.exit
    }

    pub fn is_augmented(&self) -> bool {
        self.edges.contains(&(self.exit, self.entry))
    }

    /// 0/1 adjacency matrix with rows and columns in ascending label order.
    pub fn adjacency(&self) -> Vec<Vec<u8>> {
        adjacency(&self.vertices, self.edges.iter().copied())
    }

    fn successors(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut succ: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (a, b) in self.forward_edges() {
            succ.entry(a).or_default().push(b);
        }
        for list in succ.values_mut() {
            list.sort_unstable();
        }
        succ
    }

    /// Reads `entry k` / `exit k` header lines and one `from to` pair per
    /// line. Blank lines and `#` comments are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut entry = None;
        let mut exit = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("line {}: `{s}`: {e}", lineno + 1)))
            };
            match fields.as_slice() {
                ["entry", k] => entry = Some(num(k)?),
                ["exit", k] => exit = Some(num(k)?),
                [a, b] => edges.push((num(a)?, num(b)?)),
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: expected `from to`, `entry k` or `exit k`",
                        lineno + 1
                    )))
                }
            }
        }
        let entry = entry.ok_or_else(|| Error::Parse("missing `entry` line".into()))?;
        let exit = exit.ok_or_else(|| Error::Parse("missing `exit` line".into()))?;
        Self::new(edges, entry, exit)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("entry {}\nexit {}\n", self.entry, self.exit);
        for (a, b) in &self.edges {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }
}

impl FromStr for FlowGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_edge_list(s)
    }
}

fn reachable(start: usize, edges: &[(usize, usize)], reverse: bool) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &(a, b) in edges {
            let (from, to) = if reverse { (b, a) } else { (a, b) };
            if from == v && seen.insert(to) {
                queue.push_back(to);
            }
        }
    }
    seen
}

fn adjacency(labels: &[usize], edges: impl Iterator<Item = (usize, usize)>) -> Vec<Vec<u8>> {
    let pos: BTreeMap<usize, usize> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut m = vec![vec![0u8; labels.len()]; labels.len()];
    for (a, b) in edges {
        if let (Some(&i), Some(&j)) = (pos.get(&a), pos.get(&b)) {
            m[i][j] = 1;
        }
    }
    m
}

/// Simple cycle, listed from the entry vertex; the closing edge back to the
/// first vertex is implied.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CyclePath(Vec<usize>);

impl CyclePath {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Consecutive pairs plus the closing edge.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.0.len();
        (0..n).map(move |i| (self.0[i], self.0[(i + 1) % n]))
    }

    /// Adjacency matrix over the cycle's own vertices in ascending order.
    pub fn adjacency(&self) -> (Vec<usize>, Vec<Vec<u8>>) {
        let mut labels = self.0.clone();
        labels.sort_unstable();
        let m = adjacency(&labels, self.edges());
        (labels, m)
    }
}

impl fmt::Display for CyclePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Adds the `exit -> entry` back edge.
pub fn augment(g: &FlowGraph) -> Result<FlowGraph> {
    if g.is_augmented() {
        return Err(Error::AlreadyAugmented);
    }
    let mut out = g.clone();
    out.edges.push((g.exit, g.entry));
    Ok(out)
}

/// Every simple cycle through the back edge, i.e. every entry -> exit simple
/// path, in lexicographic order of vertex sequence.
pub fn enumerate_cycles(g: &FlowGraph) -> Result<Vec<CyclePath>> {
    if !g.is_augmented() {
        return Err(Error::NotAugmented);
    }
    let succ = g.successors();
    let mut cycles = Vec::new();
    let mut path = vec![g.entry];
    let mut on_path = BTreeSet::from([g.entry]);
    // Explicit stack of (vertex, next successor index) to avoid recursion
    // depth limits on long chains.
    let mut stack: Vec<(usize, usize)> = vec![(g.entry, 0)];
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        if v == g.exit {
            cycles.push(CyclePath(path.clone()));
            stack.pop();
            path.pop();
            on_path.remove(&v);
            continue;
        }
        let children = succ.get(&v).map(Vec::as_slice).unwrap_or(&[]);
        if let Some(&w) = children.get(*next) {
            *next += 1;
            if on_path.insert(w) {
                path.push(w);
                stack.push((w, 0));
            }
        } else {
            stack.pop();
            path.pop();
            on_path.remove(&v);
        }
    }
    cycles.sort();
    Ok(cycles)
}

/// `E - V + 1` of a strongly connected graph.
pub fn cyclomatic_number(g: &FlowGraph) -> Result<usize> {
    let all_reached = |reverse| reachable(g.entry, &g.edges, reverse).len() == g.vertices.len();
    if !all_reached(false) || !all_reached(true) {
        return Err(Error::NotStronglyConnected);
    }
    Ok(g.edges.len() + 1 - g.vertices.len())
}

/// Chain of `depth` binary diamonds in series, not yet augmented.
///
/// Vertex 0 is the entry and leads to the first decision vertex 1. Diamond
/// `i` fans out from its decision vertex to two branch vertices that meet in
/// a join, and that join is the next decision vertex. The last join is the
/// exit. Depth 0 is the single edge `0 -> 1`.
pub fn series_diamonds(depth: usize) -> Result<FlowGraph> {
    if depth > MAX_DOUBLING_DEPTH {
        return Err(Error::DepthTooLarge {
            depth,
            limit: MAX_DOUBLING_DEPTH,
        });
    }
    let mut edges = vec![(0, 1)];
    let mut decision = 1;
    for _ in 0..depth {
        let (left, right, join) = (decision + 1, decision + 2, decision + 3);
        edges.extend([
            (decision, left),
            (decision, right),
            (left, join),
            (right, join),
        ]);
        decision = join;
    }
    FlowGraph::new(edges, 0, decision)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DoublingRow {
    pub depth: usize,
    pub cycles: usize,
    pub prediction: usize,
    pub cyclomatic: usize,
}

/// Enumerates the cycles of a depth-`depth` diamond chain and pairs the
/// count with the `2^depth` prediction.
pub fn doubling_check(depth: usize) -> Result<DoublingRow> {
    let g = augment(&series_diamonds(depth)?)?;
    Ok(DoublingRow {
        depth,
        cycles: enumerate_cycles(&g)?.len(),
        prediction: 1 << depth,
        cyclomatic: cyclomatic_number(&g)?,
    })
}

/// Six-vertex if/else graph: 1 is the entry, 2 the decision point, 3 and 4
/// the two branches, 5 the join and 6 the exit.
pub fn sample_graph() -> FlowGraph {
    FlowGraph::new(vec![(1, 2), (2, 3), (2, 4), (3, 5), (4, 5), (5, 6)], 1, 6)
        .expect("built-in graph is valid")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExecutionTrace {
    pub input: u64,
    pub path: CyclePath,
}

/// A catalog function together with its flow graph and the branch decision
/// it makes at each vertex.
#[derive(Debug, Clone)]
pub struct Instrumented {
    pub id: &'static str,
    graph: FlowGraph,
    choose: fn(u64, usize, &[usize]) -> usize,
}

impl Instrumented {
    /// Augmented flow graph.
    pub fn graph(&self) -> &FlowGraph {
        &self.graph
    }

    /// Redirected evaluation: walk the graph the way the function would and
    /// return the cycle taken.
    pub fn trace(&self, x: u64) -> ExecutionTrace {
        let succ = self.graph.successors();
        let mut v = self.graph.entry;
        let mut path = vec![v];
        while v != self.graph.exit {
            let options = &succ[&v];
            v = if options.len() == 1 {
                options[0]
            } else {
                (self.choose)(x, v, options)
            };
            path.push(v);
        }
        ExecutionTrace {
            input: x,
            path: CyclePath(path),
        }
    }

    /// Position of the traced cycle in [`enumerate_cycles`] order.
    pub fn branch_index(&self, x: u64) -> usize {
        let cycles = enumerate_cycles(&self.graph).expect("instrumented graphs are augmented");
        let path = self.trace(x).path;
        cycles
            .iter()
            .position(|c| *c == path)
            .expect("trace follows an enumerated cycle")
    }
}

fn collatz_choice(x: u64, _vertex: usize, options: &[usize]) -> usize {
    // Vertex 2 tests parity: 3 halves, 4 computes 3x+1.
    if x.is_multiple_of(2) {
        options[0]
    } else {
        options[1]
    }
}

fn single_path(_x: u64, _vertex: usize, options: &[usize]) -> usize {
    options[0]
}

/// Every function shipped with a flow graph, each with exactly one
/// redirected wrapper.
pub fn instrumented() -> Vec<Instrumented> {
    let sine = FlowGraph::new(vec![(1, 2), (2, 3)], 1, 3).expect("valid");
    vec![
        Instrumented {
            id: "collatz",
            graph: augment(&sample_graph()).expect("not yet augmented"),
            choose: collatz_choice,
        },
        Instrumented {
            id: "sine",
            // The five-iteration loop has a fixed bound, so one path.
            graph: augment(&sine).expect("not yet augmented"),
            choose: single_path,
        },
    ]
}

pub fn instrumented_by_id(id: &str) -> Result<Instrumented> {
    instrumented()
        .into_iter()
        .find(|f| f.id == id)
        .ok_or_else(|| Error::UnknownFunction(id.to_string()))
}

/// Redirected evaluation of a catalog function.
pub fn trace(f: &str, x: u64) -> Result<ExecutionTrace> {
    Ok(instrumented_by_id(f)?.trace(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(v: &[usize]) -> CyclePath {
        CyclePath(v.to_vec())
    }

    #[test]
    fn sample_graph_augmentation() {
        let g = augment(&sample_graph()).unwrap();
        assert_eq!(g.edges().len(), 7);
        assert_eq!(g.vertices().len(), 6);
        assert_eq!(augment(&g), Err(Error::AlreadyAugmented));
    }

    #[test]
    fn sample_graph_cycles_and_number() {
        let g = augment(&sample_graph()).unwrap();
        assert_eq!(
            enumerate_cycles(&g).unwrap(),
            vec![cycle(&[1, 2, 3, 5, 6]), cycle(&[1, 2, 4, 5, 6])]
        );
        assert_eq!(cyclomatic_number(&g).unwrap(), 7 - 6 + 1);
    }

    #[test]
    fn unaugmented_graph_errors() {
        assert_eq!(enumerate_cycles(&sample_graph()), Err(Error::NotAugmented));
        assert_eq!(
            cyclomatic_number(&sample_graph()),
            Err(Error::NotStronglyConnected)
        );
    }

    #[test]
    fn two_vertex_chain() {
        let g = augment(&FlowGraph::new(vec![(0, 1)], 0, 1).unwrap()).unwrap();
        assert_eq!(enumerate_cycles(&g).unwrap(), vec![cycle(&[0, 1])]);
        assert_eq!(cyclomatic_number(&g).unwrap(), 1);
    }

    #[test]
    fn straight_chain_has_one_cycle() {
        for k in 2..10usize {
            let edges = (0..k - 1).map(|i| (i, i + 1)).collect();
            let g = augment(&FlowGraph::new(edges, 0, k - 1).unwrap()).unwrap();
            assert_eq!(enumerate_cycles(&g).unwrap().len(), 1);
            assert_eq!(cyclomatic_number(&g).unwrap(), 1);
        }
    }

    #[test]
    fn two_series_diamonds() {
        let g = augment(&series_diamonds(2).unwrap()).unwrap();
        assert_eq!(g.vertices().len(), 8);
        assert_eq!(g.edges().len(), 10);
        assert_eq!(enumerate_cycles(&g).unwrap().len(), 4);
        assert_eq!(cyclomatic_number(&g).unwrap(), 3);
    }

    #[test]
    fn loops_inside_the_graph_do_not_produce_extra_paths() {
        // 1 -> 2 -> 3 -> 2 (loop), 2 -> 4 exit.
        let g =
            augment(&FlowGraph::new(vec![(1, 2), (2, 3), (3, 2), (2, 4)], 1, 4).unwrap()).unwrap();
        assert_eq!(enumerate_cycles(&g).unwrap(), vec![cycle(&[1, 2, 4])]);
        assert_eq!(cyclomatic_number(&g).unwrap(), 2);
    }

    #[test]
    fn shape_validation() {
        assert!(FlowGraph::new(vec![(0, 1), (1, 0)], 0, 1).is_ok()); // already augmented
        assert!(FlowGraph::new(vec![(0, 1), (2, 0)], 0, 1).is_err()); // entry has incoming
        assert!(FlowGraph::new(vec![(0, 1), (1, 2)], 0, 1).is_err()); // exit has outgoing
        assert!(FlowGraph::new(vec![(0, 1), (0, 2)], 0, 1).is_err()); // dead end 2
        assert!(FlowGraph::new(vec![(0, 1), (0, 1)], 0, 1).is_err());
        assert!(FlowGraph::new(vec![], 0, 0).is_err());
    }

    #[test]
    fn doubling_examples() {
        let row = |d| {
            let r = doubling_check(d).unwrap();
            (r.cycles, r.prediction)
        };
        assert_eq!(row(0), (1, 1));
        assert_eq!(row(1), (2, 2));
        assert_eq!(row(5), (32, 32));
        assert_eq!(
            doubling_check(17),
            Err(Error::DepthTooLarge {
                depth: 17,
                limit: 16
            })
        );
    }

    #[test]
    fn doubling_law_up_to_the_limit() {
        for d in 0..=MAX_DOUBLING_DEPTH {
            let r = doubling_check(d).unwrap();
            assert_eq!(r.cycles, 1 << d);
            assert_eq!(r.cyclomatic, d + 1);
        }
    }

    #[test]
    fn cycle_count_matches_cyclomatic_only_up_to_one_decision() {
        for d in 0..=8 {
            let r = doubling_check(d).unwrap();
            if d <= 1 {
                assert_eq!(r.cycles, r.cyclomatic);
            } else {
                assert!(r.cycles > r.cyclomatic);
            }
        }
    }

    #[test]
    fn edge_list_round_trip() {
        let text = "# one decision\nentry 1\nexit 6\n1 2\n2 3\n2 4\n3 5\n4 5\n5 6\n";
        let g: FlowGraph = text.parse().unwrap();
        assert_eq!(g, sample_graph());
        assert_eq!(g.to_edge_list().parse::<FlowGraph>().unwrap(), g);
        assert!("entry 1\n1 2\n".parse::<FlowGraph>().is_err());
        assert!("entry 1\nexit 2\n1 2 3\n".parse::<FlowGraph>().is_err());
    }

    #[test]
    fn collatz_traces() {
        assert_eq!(trace("collatz", 6).unwrap().path, cycle(&[1, 2, 3, 5, 6]));
        assert_eq!(trace("collatz", 7).unwrap().path, cycle(&[1, 2, 4, 5, 6]));
        assert_eq!(trace("sine", 7).unwrap().path, cycle(&[1, 2, 3]));
        assert!(matches!(trace("gtd", 1), Err(Error::UnknownFunction(_))));
    }

    #[test]
    fn branch_frequencies_over_two_to_the_16() {
        let f = instrumented_by_id("collatz").unwrap();
        let cycles = enumerate_cycles(f.graph()).unwrap();
        let mut counts = [0usize; 2];
        for x in 1..=(1u64 << 16) {
            let p = f.trace(x).path;
            counts[cycles.iter().position(|c| *c == p).unwrap()] += 1;
        }
        assert_eq!(counts, [1 << 15, 1 << 15]);
    }

    #[test]
    fn every_trace_is_an_enumerated_cycle() {
        let all = instrumented();
        let ids: BTreeSet<&str> = all.iter().map(|f| f.id).collect();
        assert_eq!(ids.len(), all.len());
        for f in &all {
            let cycles = enumerate_cycles(f.graph()).unwrap();
            for x in 1..500 {
                assert!(cycles.contains(&f.trace(x).path));
            }
        }
    }
}
