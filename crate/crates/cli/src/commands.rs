use std::fmt::Display;

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use rankit_core::catalog::{analytic_inverse, forward, pack_bits, BBS_SEED};
use rankit_core::cfg::{
    self, augment, cyclomatic_number, doubling_check, enumerate_cycles, series_diamonds,
};
use rankit_core::complexity::{report, MappingParams};
use rankit_core::funcs::{
    arcsine, bbs_bits, bbs_next, bbs_valid_seeds, collatz_step, collatz_trajectory, taylor_sine,
    AngleDegrees, BbsState,
};
use rankit_core::inversion::{bisect_invert, exhaustive_invert_scalar, Bracket, DEFAULT_TOL};
use rankit_core::report::ranking_markdown;
use rankit_core::tables::{build_table, sine_table, IntRange, TableValue, TABLE1};
use rankit_core::tsp::{
    enumerate_tours, full_mapping, shortest_tour, sorted_mapping, tour_distance,
};
use rankit_core::{
    probe_budget, CostLedger, DistanceMatrix, Error, FlowGraph, FunctionId, MappingTable,
    OracleNotebook, Tour, View,
};

use crate::output::{Doc, Format, Section};
use crate::{Cli, Command, Instance, Method, TspMode, ViewArg};

const ORACLE_SEED: u64 = 1;

pub fn run(cli: &Cli) -> Result<Doc> {
    let tol = cli.tol.unwrap_or(DEFAULT_TOL);
    match &cli.command {
        Command::Eval {
            function,
            x,
            terms,
            trajectory,
            p,
            q,
            len,
            tour,
            instance,
        } => eval(
            *function,
            *x,
            *terms,
            *trajectory,
            (*p, *q, *len),
            cli.seed,
            tour.as_deref(),
            instance,
        ),
        Command::Table {
            function,
            lo,
            hi,
            step,
            terms,
            by,
            decimals,
            p,
            q,
            len,
            instance,
        } => table(
            *function,
            IntRange::new(*lo, *hi, *step)?,
            *terms,
            *by,
            *decimals,
            (*p, *q, *len),
            instance,
        ),
        Command::Invert {
            function,
            target,
            lo,
            hi,
            step,
            method,
            instance,
        } => invert(
            *function,
            *target,
            Bracket::new(*lo, *hi, *step)?,
            *method,
            tol,
            instance,
        ),
        Command::Oracle { queries, table1 } => {
            oracle(queries, *table1, cli.seed.unwrap_or(ORACLE_SEED))
        }
        Command::Tsp {
            instance,
            mode,
            tour,
        } => tsp(instance, *mode, tour.as_deref()),
        Command::Cfg {
            graph,
            diamonds,
            function,
            doubling,
            trace,
        } => {
            if let Some(d) = doubling {
                return doubling_rows(*d);
            }
            let g = match (graph, diamonds, function) {
                (Some(path), _, _) => {
                    let text = std::fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    text.parse::<FlowGraph>()?
                }
                (_, Some(d), _) => series_diamonds(*d)?,
                (_, _, Some(f)) => cfg::instrumented_by_id(f)?.graph().clone(),
                _ => cfg::sample_graph(),
            };
            let traced = match (function, trace) {
                (Some(f), Some(x)) => Some(cfg::trace(f, *x)?),
                _ => None,
            };
            flow_graph(g, traced)
        }
        Command::Complexity {
            function,
            cities,
            c,
        } => {
            let ids = match function {
                Some(id) => vec![*id],
                None => FunctionId::ALL.to_vec(),
            };
            complexity(&ids, MappingParams { cities: *cities }, *c)
        }
        Command::ReportAll => report_all(cli.seed.unwrap_or(ORACLE_SEED), tol),
    }
}

fn load(instance: &Instance) -> Result<DistanceMatrix> {
    Ok(match &instance.instance {
        Some(path) => DistanceMatrix::load(path, instance.allow_asymmetric)
            .with_context(|| format!("loading {}", path.display()))?,
        None => DistanceMatrix::five_city(),
    })
}

fn cost_json(ledger: &CostLedger) -> Value {
    serde_json::to_value(ledger).expect("ledger serializes")
}

fn kv_section(title: Option<&str>, pairs: &[(&str, String)]) -> Section {
    Section::new(
        title,
        &["field", "value"],
        pairs
            .iter()
            .map(|(k, v)| vec![k.to_string(), v.clone()])
            .collect(),
    )
}

#[allow(clippy::too_many_arguments)]
fn eval(
    id: FunctionId,
    x: Option<f64>,
    terms: usize,
    trajectory: Option<usize>,
    (p, q, len): (u64, u64, usize),
    seed: Option<u64>,
    tour: Option<&str>,
    instance: &Instance,
) -> Result<Doc> {
    let need_x = || x.ok_or_else(|| anyhow!("--x is required for {id}"));
    match id {
        FunctionId::Sine => {
            let x = need_x()?;
            let y = taylor_sine(AngleDegrees(x), terms)?;
            Ok(scalar_doc(id, x, y))
        }
        FunctionId::Arcsine => {
            let x = need_x()?;
            Ok(scalar_doc(id, x, arcsine(x)?.value()))
        }
        FunctionId::Collatz => {
            let x = need_x()?;
            if x < 1.0 || x.fract() != 0.0 || x > u64::MAX as f64 {
                bail!("collatz input must be a positive integer, got {x}");
            }
            let n = x as u64;
            match trajectory {
                None => Ok(scalar_doc(id, x, collatz_step(n)? as f64)),
                Some(max) => {
                    let t = collatz_trajectory(n, max)?;
                    let rows = t
                        .values
                        .iter()
                        .enumerate()
                        .map(|(i, v)| vec![i.to_string(), v.to_string()])
                        .collect();
                    Ok(Doc::new(
                        json!({"function": id, "input": n, "steps": t.steps(), "truncated": t.truncated, "trajectory": t.values}),
                        vec![Section::new(None, &["step", "value"], rows)],
                    ))
                }
            }
        }
        FunctionId::Bbs => {
            let seed = seed.unwrap_or(BBS_SEED);
            let mut s = BbsState::new(p, q, seed)?;
            let mut rows = Vec::with_capacity(len);
            let mut states = Vec::with_capacity(len);
            for i in 0..len {
                s = bbs_next(&s);
                states.push(s.state());
                rows.push(vec![
                    (i + 1).to_string(),
                    s.state().to_string(),
                    s.bit().to_string(),
                ]);
            }
            let bits = bbs_bits(p, q, seed, len)?;
            Ok(Doc::new(
                json!({"function": id, "p": p, "q": q, "modulus": p * q, "seed": seed, "states": states, "bits": bits}),
                vec![Section::new(None, &["step", "state", "bit"], rows)],
            ))
        }
        FunctionId::Gtd => {
            let m = load(instance)?;
            let tour: Tour = tour
                .ok_or_else(|| anyhow!("--tour is required for gtd"))?
                .parse()?;
            let d = tour_distance(&m, &tour)?;
            Ok(Doc::new(
                json!({"function": id, "tour": tour.to_string(), "distance": d}),
                vec![Section::new(
                    None,
                    &["tour", "distance"],
                    vec![vec![tour.to_string(), d.to_string()]],
                )],
            ))
        }
    }
}

fn scalar_doc(id: FunctionId, x: f64, y: f64) -> Doc {
    Doc::new(
        json!({"function": id, "input": x, "output": y}),
        vec![Section::new(
            None,
            &["input", "output"],
            vec![vec![x.to_string(), y.to_string()]],
        )],
    )
}

fn table_doc<I, O>(
    id: FunctionId,
    t: &MappingTable<I, O>,
    by: View,
    decimals: Option<usize>,
    ledger: &CostLedger,
) -> Doc
where
    I: Ord + Display + Serialize,
    O: TableValue + Serialize,
{
    let mut rows = Vec::with_capacity(t.len());
    let mut entries = Vec::with_capacity(t.len());
    for (i, (x, y)) in t.view(by).enumerate() {
        rows.push(vec![(i + 1).to_string(), x.to_string(), y.render(decimals)]);
        entries.push(json!({"index": i + 1, "input": x, "output": y}));
    }
    let view = match by {
        View::ByInput => "input",
        View::ByOutput => "output",
    };
    Doc::new(
        json!({"function": id, "view": view, "rows": t.len(), "cost": cost_json(ledger), "entries": entries}),
        vec![Section::new(None, &["index", "input", "output"], rows)],
    )
}

fn table(
    id: FunctionId,
    range: IntRange,
    terms: usize,
    by: ViewArg,
    decimals: usize,
    (p, q, len): (u64, u64, usize),
    instance: &Instance,
) -> Result<Doc> {
    let view = match by {
        ViewArg::Input => View::ByInput,
        ViewArg::Output => View::ByOutput,
    };
    let mut ledger = CostLedger::new();
    match id {
        FunctionId::Sine => {
            let t = sine_table(range, terms, &mut ledger)?;
            Ok(table_doc(id, &t, view, Some(decimals), &ledger))
        }
        FunctionId::Collatz => {
            if range.iter().any(|x| x < 1) {
                bail!("collatz is defined on positive integers");
            }
            let t = build_table(range.iter(), |&x| collatz_step(x as u64), &mut ledger)?;
            Ok(table_doc(id, &t, view, None, &ledger))
        }
        FunctionId::Bbs => {
            // Seed -> packed output prefix.
            let seeds = bbs_valid_seeds(p, q)?;
            let t = build_table(
                seeds.iter().copied(),
                |&s| Ok(pack_bits(&bbs_bits(p, q, s, len)?)),
                &mut ledger,
            )?;
            Ok(table_doc(id, &t, view, None, &ledger))
        }
        FunctionId::Gtd => {
            let m = load(instance)?;
            let t = sorted_mapping(&m, &mut ledger)?;
            Ok(table_doc(id, &t, view, None, &ledger))
        }
        FunctionId::Arcsine => Err(Error::Unsupported {
            function: "arcsine",
            operation: "integer-grid table",
        }
        .into()),
    }
}

fn invert(
    id: FunctionId,
    target: f64,
    bracket: Bracket,
    method: Method,
    tol: f64,
    instance: &Instance,
) -> Result<Doc> {
    if id == FunctionId::Gtd {
        return invert_gtd(target, method, tol, instance);
    }
    let f = forward(id)?;
    let mut ledger = CostLedger::new();
    let mut build = CostLedger::new();
    let x = match method {
        Method::Bisect => bisect_invert(&f, target, &bracket, tol, &mut ledger)?,
        Method::Exhaustive => {
            exhaustive_invert_scalar(bracket.iter(), |x| f(*x), target, tol, &mut ledger)?
        }
        Method::Table => {
            let t = build_table(0..bracket.points(), |&i| f(bracket.point(i)), &mut build)?;
            bracket.point(*t.lookup_by_output(target, tol, &mut ledger)?)
        }
        Method::Analytic => {
            let inv = analytic_inverse(id).ok_or(Error::Unsupported {
                function: id.as_str(),
                operation: "analytic inverse",
            })?;
            ledger.record_eval();
            inv(target)?
        }
    };
    let method_name = method_name(method);
    let budget = probe_budget(bracket.points());
    let probes = match method {
        Method::Table => ledger.table_probes,
        _ => ledger.forward_evals,
    };
    Ok(Doc::new(
        json!({
            "function": id,
            "method": method_name,
            "target": target,
            "tol": tol,
            "x": x,
            "probes": probes,
            "probe_budget": budget,
            "grid_points": bracket.points(),
            "cost": cost_json(&ledger),
            "table_build_cost": cost_json(&build),
        }),
        vec![kv_section(
            None,
            &[
                ("x", x.to_string()),
                ("method", method_name.to_string()),
                ("probes", probes.to_string()),
                ("probe_budget", budget.to_string()),
            ],
        )],
    ))
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Bisect => "bisect",
        Method::Exhaustive => "exhaustive",
        Method::Table => "table",
        Method::Analytic => "analytic",
    }
}

/// Every start-0 tour whose length is within `tol` of `target`.
fn invert_gtd(target: f64, method: Method, tol: f64, instance: &Instance) -> Result<Doc> {
    let m = load(instance)?;
    let mut ledger = CostLedger::new();
    let tours: Vec<Tour> = match method {
        Method::Exhaustive => {
            let mut found = Vec::new();
            for t in enumerate_tours(&m, 0)? {
                ledger.record_eval();
                ledger.record_comparison();
                if (tour_distance(&m, &t)? as f64 - target).abs() <= tol {
                    found.push(t);
                }
            }
            found
        }
        Method::Table => {
            let mut build = CostLedger::new();
            let t = sorted_mapping(&m, &mut build)?;
            let first = t.lookup_by_output(target, tol, &mut ledger)?.clone();
            // Ties sit next to each other in the output view.
            let d = tour_distance(&m, &first)?;
            t.view(View::ByOutput)
                .filter(|(_, y)| *y == d)
                .map(|(x, _)| x.clone())
                .collect()
        }
        other => {
            return Err(Error::Unsupported {
                function: "gtd",
                operation: method_name(other),
            }
            .into())
        }
    };
    if tours.is_empty() {
        return Err(Error::NotFound.into());
    }
    let rows = tours
        .iter()
        .map(|t| Ok(vec![t.to_string(), tour_distance(&m, t)?.to_string()]))
        .collect::<Result<Vec<_>>>()?;
    Ok(Doc::new(
        json!({
            "function": FunctionId::Gtd,
            "method": method_name(method),
            "target": target,
            "tol": tol,
            "tours": tours.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "cost": cost_json(&ledger),
        }),
        vec![Section::new(None, &["tour", "distance"], rows)],
    ))
}

fn oracle(queries: &[u64], table1: bool, seed: u64) -> Result<Doc> {
    let mut nb = if table1 {
        OracleNotebook::with_table1(seed)
    } else {
        OracleNotebook::new(seed)
    };
    let mut answers = Vec::with_capacity(queries.len());
    let mut rows = Vec::with_capacity(queries.len());
    for &q in queries {
        let fresh = !nb.recorded().contains_key(&q);
        let r = nb.query(q);
        answers.push(json!({"q": q, "r": r, "fresh": fresh}));
        rows.push(vec![q.to_string(), r.to_string(), fresh.to_string()]);
    }
    let notebook: Vec<Vec<String>> = nb
        .recorded()
        .iter()
        .map(|(q, r)| vec![q.to_string(), r.to_string()])
        .collect();
    let mut doc = Doc::new(
        json!({
            "seed": seed,
            "answers": answers,
            "generator_state": nb.generator_state(),
            "notebook": nb.recorded().iter().map(|(q, r)| json!({"q": q, "r": r})).collect::<Vec<_>>(),
        }),
        vec![Section::new(Some("Answers"), &["q", "r", "fresh"], rows)],
    );
    let full = Doc::new(
        Value::Null,
        vec![
            Section::new(
                Some("Answers"),
                &["q", "r", "fresh"],
                doc.sections[0].rows.clone(),
            ),
            Section::new(Some("Notebook"), &["q", "r"], notebook),
        ],
    );
    doc.markdown = Some(full.render(Format::Md)?);
    Ok(doc)
}

fn tsp(instance: &Instance, mode: TspMode, tour: Option<&str>) -> Result<Doc> {
    let m = load(instance)?;
    let mut ledger = CostLedger::new();
    match mode {
        TspMode::Shortest => {
            let (t, d) = shortest_tour(&m, &mut ledger)?;
            Ok(Doc::new(
                json!({"cities": m.n(), "tour": t.to_string(), "distance": d, "cost": cost_json(&ledger)}),
                vec![kv_section(
                    None,
                    &[
                        ("tour", t.to_string()),
                        ("distance", d.to_string()),
                        ("evaluations", ledger.forward_evals.to_string()),
                    ],
                )],
            ))
        }
        TspMode::Mapping => Ok(table_doc(
            FunctionId::Gtd,
            &sorted_mapping(&m, &mut ledger)?,
            View::ByOutput,
            None,
            &ledger,
        )),
        TspMode::All => Ok(table_doc(
            FunctionId::Gtd,
            &full_mapping(&m, &mut ledger)?,
            View::ByOutput,
            None,
            &ledger,
        )),
        TspMode::Eval => {
            let t: Tour = tour
                .ok_or_else(|| anyhow!("--tour is required with --mode eval"))?
                .parse()?;
            let d = tour_distance(&m, &t)?;
            Ok(Doc::new(
                json!({"tour": t.to_string(), "distance": d}),
                vec![Section::new(
                    None,
                    &["tour", "distance"],
                    vec![vec![t.to_string(), d.to_string()]],
                )],
            ))
        }
    }
}

fn flow_graph(g: FlowGraph, traced: Option<cfg::ExecutionTrace>) -> Result<Doc> {
    let g = if g.is_augmented() { g } else { augment(&g)? };
    let cycles = enumerate_cycles(&g)?;
    let cyclomatic = cyclomatic_number(&g)?;
    let rows = cycles
        .iter()
        .enumerate()
        .map(|(i, c)| vec![(i + 1).to_string(), c.to_string()])
        .collect();
    let mut json = json!({
        "vertices": g.vertices(),
        "edges": g.edges(),
        "entry": g.entry(),
        "exit": g.exit(),
        "adjacency": g.adjacency(),
        "cycle_count": cycles.len(),
        "cycles": cycles.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "cyclomatic_number": cyclomatic,
    });
    let mut sections = vec![
        Section::new(Some("Cycles"), &["cycle", "path"], rows),
        kv_section(
            Some("Summary"),
            &[
                ("cycles", cycles.len().to_string()),
                ("cyclomatic number", cyclomatic.to_string()),
            ],
        ),
    ];
    if let Some(t) = traced {
        json["trace"] = json!({"input": t.input, "path": t.path.to_string()});
        sections.push(kv_section(
            Some("Trace"),
            &[("input", t.input.to_string()), ("path", t.path.to_string())],
        ));
    }
    let (doubling, section) = doubling_table(GRAPH_DOUBLING_DEPTH)?;
    json["doubling"] = doubling;
    sections.push(section);
    Ok(Doc::new(json, sections))
}

/// Depths of the doubling table printed alongside a graph's cycles.
const GRAPH_DOUBLING_DEPTH: usize = 4;

fn doubling_table(max_depth: usize) -> Result<(Value, Section)> {
    let rows = (0..=max_depth)
        .map(doubling_check)
        .collect::<rankit_core::Result<Vec<_>>>()?;
    let table = rows
        .iter()
        .map(|r| {
            vec![
                r.depth.to_string(),
                r.cycles.to_string(),
                r.prediction.to_string(),
                r.cyclomatic.to_string(),
            ]
        })
        .collect();
    Ok((
        serde_json::to_value(&rows)?,
        Section::new(
            Some("Doubling check"),
            &["depth", "cycles", "2^depth", "cyclomatic number"],
            table,
        ),
    ))
}

fn doubling_rows(max_depth: usize) -> Result<Doc> {
    let (rows, section) = doubling_table(max_depth)?;
    Ok(Doc::new(json!({ "rows": rows }), vec![section]))
}

fn complexity(ids: &[FunctionId], params: MappingParams, c: u128) -> Result<Doc> {
    let reports = ids
        .iter()
        .map(|&id| report(id, params, c))
        .collect::<rankit_core::Result<Vec<_>>>()?;
    let rows = reports
        .iter()
        .map(|r| {
            let s = &r.ledgers.size;
            vec![
                r.function_id.to_string(),
                r.category.to_string(),
                s.description_bits.to_string(),
                s.mapping_bits.to_string(),
                s.table_bits.to_string(),
                r.verdict.to_string(),
            ]
        })
        .collect();
    let mut doc = Doc::new(
        serde_json::to_value(&reports)?,
        vec![Section::new(
            None,
            &[
                "function",
                "category",
                "description_bits",
                "mapping_bits",
                "table_bits",
                "verdict",
            ],
            rows,
        )],
    );
    doc.markdown = Some(ranking_markdown(&reports));
    Ok(doc)
}

fn report_all(seed: u64, tol: f64) -> Result<Doc> {
    let mut sections = Vec::new();

    let mut ledger = CostLedger::new();
    let sine = sine_table(
        IntRange::new(45, 76, 1)?,
        rankit_core::funcs::DEFAULT_SINE_TERMS,
        &mut ledger,
    )?;
    let sine_rows: Vec<Vec<String>> = sine
        .entries()
        .iter()
        .enumerate()
        .map(|(i, (d, v))| vec![(i + 1).to_string(), d.to_string(), v.render(Some(4))])
        .collect();
    sections.push(Section::new(
        Some("Sine table"),
        &["index", "degrees", "sine"],
        sine_rows.clone(),
    ));

    let f = forward(FunctionId::Sine)?;
    let bracket = Bracket::new(0.0, 90.0, 1.0)?;
    let mut bisect_cost = CostLedger::new();
    let bisect_x = bisect_invert(&f, 0.829, &bracket, tol, &mut bisect_cost)?;
    let arc = arcsine(0.829)?.value();
    sections.push(kv_section(
        Some("Inversion of 0.829"),
        &[
            ("bisection", bisect_x.to_string()),
            ("forward evaluations", bisect_cost.forward_evals.to_string()),
            ("probe budget", probe_budget(bracket.points()).to_string()),
            ("arcsine", format!("{arc:.4}")),
        ],
    ));

    let m = DistanceMatrix::five_city();
    let mut gtd_rows = Vec::new();
    let mut gtd_json = Vec::new();
    for text in ["0,2,1,3,4,0", "0,1,2,3,4,0", "2,3,0,1,4,2", "3,2,1,4,0,3"] {
        let t: Tour = text.parse()?;
        let norm = t.normalized().expect("tour visits city 0");
        let d = tour_distance(&m, &t)?;
        gtd_rows.push(vec![text.to_string(), norm.to_string(), d.to_string()]);
        gtd_json.push(json!({"tour": text, "normalized": norm.to_string(), "distance": d}));
    }
    sections.push(Section::new(
        Some("gTD rows"),
        &["tour", "normalized", "distance"],
        gtd_rows,
    ));
    let mut tsp_cost = CostLedger::new();
    let (best, best_d) = shortest_tour(&m, &mut tsp_cost)?;
    sections.push(kv_section(
        Some("Shortest tour"),
        &[
            ("tour", best.to_string()),
            ("distance", best_d.to_string()),
            ("evaluations", tsp_cost.forward_evals.to_string()),
        ],
    ));

    let g = augment(&cfg::sample_graph())?;
    let cycles = enumerate_cycles(&g)?;
    let cyclomatic = cyclomatic_number(&g)?;
    sections.push(kv_section(
        Some("Flow graph"),
        &[
            (
                "cycles",
                cycles
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            ),
            ("cyclomatic number", cyclomatic.to_string()),
        ],
    ));
    let doubling = (0..=10)
        .map(doubling_check)
        .collect::<rankit_core::Result<Vec<_>>>()?;
    sections.push(Section::new(
        Some("Doubling"),
        &["depth", "cycles", "2^depth"],
        doubling
            .iter()
            .map(|r| {
                vec![
                    r.depth.to_string(),
                    r.cycles.to_string(),
                    r.prediction.to_string(),
                ]
            })
            .collect(),
    ));

    let mut nb = OracleNotebook::with_table1(seed);
    let table1: Vec<(u64, u64)> = TABLE1.iter().map(|&(q, _)| (q, nb.query(q))).collect();
    let mut fresh = OracleNotebook::new(seed);
    let draws: Vec<u64> = (0..10).map(|q| fresh.query(q)).collect();
    sections.push(Section::new(
        Some("Oracle notebook"),
        &["q", "r"],
        table1
            .iter()
            .map(|(q, r)| vec![q.to_string(), r.to_string()])
            .collect(),
    ));

    let mut s = BbsState::new(7, 11, BBS_SEED)?;
    let bbs_states: Vec<u64> = (0..5)
        .map(|_| {
            s = bbs_next(&s);
            s.state()
        })
        .collect();
    let bbs = bbs_bits(7, 11, BBS_SEED, 4)?;

    let reports = FunctionId::ALL
        .into_iter()
        .map(|id| report(id, MappingParams::default(), 0))
        .collect::<rankit_core::Result<Vec<_>>>()?;
    let md_ranking = ranking_markdown(&reports);

    let json = json!({
        "sine_table": sine.entries().iter().map(|(d, v)| json!({"degrees": d, "sine": v})).collect::<Vec<_>>(),
        "bisection": {"target": 0.829, "x": bisect_x, "cost": cost_json(&bisect_cost), "probe_budget": probe_budget(bracket.points())},
        "arcsine": {"target": 0.829, "degrees": arc},
        "gtd_rows": gtd_json,
        "shortest_tour": {"tour": best.to_string(), "distance": best_d, "cost": cost_json(&tsp_cost)},
        "flow_graph": {"cycles": cycles.iter().map(|c| c.to_string()).collect::<Vec<_>>(), "cyclomatic_number": cyclomatic},
        "doubling": doubling,
        "oracle": {
            "seed": seed,
            "table1": table1.iter().map(|(q, r)| json!({"q": q, "r": r})).collect::<Vec<_>>(),
            "fresh_draws": draws,
        },
        "bbs": {"p": 7, "q": 11, "seed": BBS_SEED, "states": bbs_states, "bits": bbs},
        "reports": reports,
    });
    let mut doc = Doc::new(json, sections);
    let mut md = doc.render(Format::Md)?;
    md.push_str("\n### Ranking attributes\n\n");
    md.push_str(&md_ranking);
    doc.markdown = Some(md);
    Ok(doc)
}
