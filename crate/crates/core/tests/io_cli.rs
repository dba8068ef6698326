mod common;

use std::path::PathBuf;

use proptest::prelude::*;

use common::*;
use supergrid::cli::{run_cli, EXIT_EXTENSION_FAILED, EXIT_NO_CYCLE, EXIT_OK, EXIT_USAGE};
use supergrid::enumerate::{random_graph, EnumSpec};
use supergrid::grid::block;
use supergrid::io::{export_svg, parse_cycle, parse_lattice, render_lattice, write_cycle, IoError};
use supergrid::{find_hamiltonian_cycle, validate_cycle, Cycle, Point, Predicate, SupergridGraph};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["supergrid"];
    argv.extend_from_slice(args);
    let code = run_cli(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

proptest! {
    #[test]
    fn lattice_round_trip(rows in prop::collection::vec(prop::collection::vec(any::<bool>(), 1..8), 1..8)) {
        let width = rows.iter().map(Vec::len).max().unwrap();
        let text: String = rows.iter().map(|r| {
            let mut line: String = r.iter().map(|b| if *b { '#' } else { '.' }).collect();
            line.extend(std::iter::repeat_n('.', width - r.len()));
            line + "\n"
        }).collect();
        let g = parse_lattice(&text).unwrap();
        // rendering is canonical: trailing empty rows and columns are dropped
        let rendered = render_lattice(&g);
        prop_assert_eq!(parse_lattice(&rendered).unwrap(), g.clone());
        prop_assert_eq!(render_lattice(&parse_lattice(&rendered).unwrap()), rendered.clone());
        if rows.last().unwrap().iter().any(|b| *b) && rows.iter().any(|r| r.len() == width && r[width - 1]) {
            prop_assert_eq!(rendered, text);
        }
    }
}

#[test]
fn random_cycles_round_trip() {
    let mut tested = 0;
    for seed in 0..100 {
        let spec = EnumSpec::new(7, 7)
            .require(&[Predicate::TwoConnected, Predicate::LinearConvex])
            .seed(seed);
        let g = random_graph(&spec).unwrap();
        let c = find_hamiltonian_cycle(&g, true).cycle().unwrap().clone();
        let shifted = Cycle::new(c.verts().iter().map(|p| p.translate(-3, -2)).collect()).unwrap();
        for cycle in [c, shifted] {
            let text = write_cycle(&cycle);
            assert_eq!(text.lines().count(), cycle.len());
            assert_eq!(parse_cycle(&text).unwrap(), cycle);
        }
        tested += 1;
    }
    assert_eq!(tested, 100);
}

#[test]
fn svg_of_block_cycle_stays_in_bounds() {
    let c = find_hamiltonian_cycle(&block(3, 3), true)
        .cycle()
        .unwrap()
        .clone();
    let cell = 7;
    let svg = export_svg(&c, cell);
    let points = svg
        .split("points=\"")
        .nth(1)
        .and_then(|s| s.split('"').next())
        .unwrap();
    let coords: Vec<(i64, i64)> = points
        .split(' ')
        .map(|p| {
            let (x, y) = p.split_once(',').unwrap();
            (x.parse().unwrap(), y.parse().unwrap())
        })
        .collect();
    assert_eq!(coords.len(), 9);
    assert!(coords
        .iter()
        .all(|&(x, y)| (0..=14).contains(&x) && (0..=14).contains(&y)));
    let expected: Vec<(i64, i64)> = c
        .verts()
        .iter()
        .map(|p| (p.x as i64 * 7, p.y as i64 * 7))
        .collect();
    assert_eq!(coords, expected);
    assert_eq!(svg.matches("<polygon").count(), 1);
}

#[test]
fn invalid_character_positions_count_raw_lines() {
    match parse_lattice("; header\n##\n#?\n") {
        Err(IoError::InvalidCharacter { line, column }) => assert_eq!((line, column), (2, 1)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn hamcycle_on_square_prints_four_lines() {
    let (code, out, _) = run(&["hamcycle", &fixture("square2x2.txt"), "--strict"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 4);
    let g = parse_lattice(&std::fs::read_to_string(fixture("square2x2.txt")).unwrap()).unwrap();
    assert!(validate_cycle(&g, &parse_cycle(&out).unwrap()));
}

#[test]
fn hamcycle_writes_a_trace() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.jsonl");
    let (code, out, _) = run(&[
        "hamcycle",
        &fixture("block3x3.txt"),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 9);
    let lines: Vec<serde_json::Value> = std::fs::read_to_string(&trace)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 6);
    for (i, step) in lines.iter().enumerate() {
        assert_eq!(step["cycle_length_before"], 3 + i);
        assert!(step["rule"].is_string());
    }
}

#[test]
fn classify_reports_the_gap() {
    let (code, out, _) = run(&["classify", &fixture("gap.txt")]);
    assert_eq!(code, EXIT_OK);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["vertex_count"], 2);
    assert_eq!(report["linear_convex"], false);
    let gap = &report["violation_witness"]["linear_convex"];
    assert_eq!(gap["line"]["direction"], "horizontal");
    assert_eq!(gap["missing"], serde_json::json!([1, 0]));
}

#[test]
fn exit_codes_follow_the_contract() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    };
    let path = write("path.txt", "###\n");
    let ring = write("ring.txt", "###\n#.#\n###\n");
    let bad = write("bad.txt", "##\n#x\n");

    assert_eq!(run(&["hamcycle", &path]).0, EXIT_NO_CYCLE);
    // not linear-convex: strict refuses, permissive gets stuck on this ring
    assert_eq!(run(&["hamcycle", &ring, "--strict"]).0, EXIT_NO_CYCLE);
    let (code, out, _) = run(&["hamcycle", &ring, "--permissive"]);
    assert_eq!(code, EXIT_EXTENSION_FAILED);
    let witness: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(witness["graph"].as_array().unwrap().len(), 8);
    assert!(witness["cycle"].as_array().unwrap().len() >= 3);

    let (code, _, err) = run(&["classify", &bad]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 1, column 1"), "{err}");
    assert_eq!(
        run(&["hamcycle", &path, "--strict", "--permissive"]).0,
        EXIT_USAGE
    );
    assert_eq!(run(&["enumerate", "--box", "6x6"]).0, EXIT_USAGE);
    assert_eq!(run(&["verify", "--box", "4"]).0, EXIT_USAGE);
}

#[test]
fn oracle_command() {
    let (code, out, _) = run(&["oracle", &fixture("block3x3.txt")]);
    assert_eq!(code, EXIT_OK);
    let c = parse_cycle(&out).unwrap();
    assert!(covers_exactly(c.verts(), &cells_of(block(3, 3).vertices())));
    let (code, out, _) = run(&["oracle", &fixture("gap.txt")]);
    assert_eq!((code, out.as_str()), (EXIT_NO_CYCLE, "none\n"));
    assert_eq!(
        run(&["oracle", &fixture("block3x3.txt"), "--bound", "8"]).0,
        EXIT_USAGE
    );
}

#[test]
fn enumerate_command_counts_and_lists() {
    let (code, out, _) = run(&[
        "enumerate",
        "--box",
        "2x2",
        "--require",
        "two_connected,linear_convex",
        "--min-vertices",
        "3",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim_end(), "graphs: 5");

    let (_, out, _) = run(&[
        "enumerate",
        "--box",
        "2x2",
        "--min-vertices",
        "1",
        "--dedup",
        "--list",
    ]);
    assert!(out.ends_with("graphs: 5\n"));
    let docs: Vec<SupergridGraph> = out
        .trim_end()
        .split("\n\n")
        .filter(|d| !d.starts_with("graphs"))
        .map(|d| parse_lattice(d.trim_start()).unwrap())
        .collect();
    assert_eq!(docs.len(), 5);

    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("summary.csv");
    let (code, _, _) = run(&["enumerate", "--box", "3x2", "--csv", csv.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let headers = rows.headers().unwrap().clone();
    assert_eq!(&headers[0], "box");
    assert_eq!(headers.len(), 11);
    let record = rows.records().next().unwrap().unwrap();
    assert_eq!(&record[0], "3x2");
    assert_eq!(&record[1], "64");
}

#[test]
fn trace_command_draws_the_constructed_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("block.svg");
    let (code, _, _) = run(&[
        "trace",
        &fixture("block3x3.txt"),
        "--svg",
        svg.to_str().unwrap(),
        "--cell",
        "1",
    ]);
    assert_eq!(code, EXIT_OK);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<circle").count(), 9);
    // a listing that leaves the lattice is rejected
    let listing = dir.path().join("far.cycle");
    std::fs::write(&listing, "5,5\n6,5\n6,6\n").unwrap();
    let (code, _, _) = run(&[
        "trace",
        &fixture("block3x3.txt"),
        "--cycle",
        listing.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn verify_command_on_small_box() {
    let (code, out, _) = run(&["verify", "--box", "3x3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().any(|l| l == "violations: 0"));
    let (code, out, _) = run(&["verify", "--box", "2x3", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["subsets"], 64);
    assert_eq!(v["hamiltonian"]["rule_counts"]["fallback_search"], 0);
}

#[test]
fn point_json_is_a_pair() {
    assert_eq!(serde_json::to_string(&Point::new(3, -1)).unwrap(), "[3,-1]");
}
