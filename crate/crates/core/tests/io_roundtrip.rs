use std::io::Write;

use rankit_core::cfg::{augment, cyclomatic_number, enumerate_cycles, sample_graph, FlowGraph};
use rankit_core::complexity::{report, MappingParams};
use rankit_core::report::to_json;
use rankit_core::tables::{sine_table, IntRange, OracleNotebook, View};
use rankit_core::tsp::{shortest_tour, DistanceMatrix};
use rankit_core::{CostLedger, Error, FunctionId};

#[test]
fn matrix_json_and_csv_files_agree() {
    let dir = std::env::temp_dir().join(format!("rankit-io-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let m = DistanceMatrix::five_city();

    let json_path = dir.join("five.json");
    std::fs::write(&json_path, m.to_json()).unwrap();
    let csv_path = dir.join("five.csv");
    let mut f = std::fs::File::create(&csv_path).unwrap();
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        writeln!(f, "{}", cells.join(",")).unwrap();
    }
    drop(f);

    let a = DistanceMatrix::load(&json_path, false).unwrap();
    let b = DistanceMatrix::load(&csv_path, false).unwrap();
    assert_eq!(a, m);
    assert_eq!(b, m);
    let mut ledger = CostLedger::new();
    assert_eq!(shortest_tour(&b, &mut ledger).unwrap().1, 1290);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn asymmetric_matrix_needs_opt_in() {
    let text = "0,1,2\n2,0,1\n1,2,0\n";
    assert!(DistanceMatrix::from_csv_reader(text.as_bytes(), false).is_err());
    assert!(DistanceMatrix::from_csv_reader(text.as_bytes(), true).is_ok());
}

#[test]
fn edge_list_round_trip() {
    let g = sample_graph();
    let back: FlowGraph = g.to_edge_list().parse().unwrap();
    assert_eq!(back, g);
    let aug = augment(&back).unwrap();
    assert_eq!(enumerate_cycles(&aug).unwrap().len(), 2);
    assert_eq!(cyclomatic_number(&aug).unwrap(), 2);
    assert!(matches!(
        "entry 1\n1 2\n".parse::<FlowGraph>(),
        Err(Error::Parse(_))
    ));
}

#[test]
fn sine_table_csv_views() {
    let mut ledger = CostLedger::new();
    let t = sine_table(IntRange::new(45, 48, 1).unwrap(), 5, &mut ledger).unwrap();
    let mut by_input = Vec::new();
    t.write_csv(&mut by_input, View::ByInput, Some(4)).unwrap();
    assert_eq!(
        String::from_utf8(by_input).unwrap(),
        "index,input,output\n1,45,0.7071\n2,46,0.7193\n3,47,0.7314\n4,48,0.7431\n"
    );
}

#[test]
fn oracle_csv_is_sorted_by_query() {
    let nb = OracleNotebook::with_table1(1);
    let mut out = Vec::new();
    nb.write_csv(&mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "q,r");
    assert_eq!(lines[1], "2,56");
    assert_eq!(lines.len(), 11);
}

#[test]
fn report_json_is_stable() {
    let build = || {
        let reports: Vec<_> = FunctionId::ALL
            .into_iter()
            .map(|id| report(id, MappingParams::default(), 0).unwrap())
            .collect();
        to_json(&reports).unwrap()
    };
    assert_eq!(build(), build());
}
