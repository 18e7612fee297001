mod common;

use common::*;
use cutface::analyze;
use cutface::current::{derive, trace_circuits, validate, CurrentGraph, CurrentGraphError};

const VALID: [(&str, u32); 3] = [("z27_l2.cg", 27), ("z39_l2.cg", 39), ("z51_l2.cg", 51)];

#[test]
fn fixtures_pass_all_six_properties() {
    for (name, m) in VALID {
        let cg = fixture_cg(name);
        assert_eq!(cg.group().modulus(), m);
        let report = validate(&cg);
        assert!(report.is_valid(), "{name}: {report}");
        let cs = trace_circuits(&cg).unwrap();
        for log in &cs.logs {
            assert_eq!(log.len(), m as usize - 1, "{name}");
        }
    }
}

#[test]
fn derived_embeddings_triangulate_complete_graph_minus_an_edge() {
    for (name, m) in VALID {
        let cg = fixture_cg(name);
        let labeled = cg.labeled_vertices().len();
        let rs = derive(&cg).unwrap();
        let (_, s) = analyze(&rs).unwrap();
        let n = m as usize + labeled;
        assert_eq!(s.num_vertices, n, "{name}");
        assert_eq!(s.num_edges, n * (n - 1) / 2 - labeled * (labeled - 1) / 2, "{name}");
        assert!(s.is_triangular(), "{name}");
        assert_eq!(s.euler_characteristic(), 2 - 2 * s.genus as i64);
        // gamma(K_n) - 1 for n = 12s + 5.
        let gamma = cutface::bounds::genus_complete(n as u32).unwrap();
        assert_eq!(s.genus as u64, gamma - 1, "{name}");
        let (a, b) = (m, m + 1);
        assert!(!rs.has_edge(a, b));
    }
}

#[test]
fn derived_fixture_matches_engine_output() {
    let rs = derive(&fixture_cg("z27_l2.cg")).unwrap();
    assert_eq!(rs, fixture_rs("z27_l2_derived.txt"));
}

#[test]
fn current_graph_text_round_trips() {
    let cg = fixture_cg("z27_l2.cg");
    assert_eq!(CurrentGraph::parse(&cg.to_string()).unwrap(), cg);
}

#[test]
fn each_violation_class_is_detected() {
    let cg = fixture_cg("z27_l2.cg");
    for (property, what, bad) in negatives(&cg) {
        let report = validate(&bad);
        assert!(report.fails(property), "{what}: {report}");
        assert!(matches!(derive(&bad), Err(CurrentGraphError::Invalid(_))), "{what}");
    }
}

#[test]
fn single_property_negatives_flag_only_that_property() {
    let cg = fixture_cg("z27_l2.cg");
    for (property, what, bad) in negatives(&cg) {
        if ![3, 4, 5].contains(&property) {
            continue;
        }
        let report = validate(&bad);
        assert!(report.violations.iter().all(|v| v.property() == property), "{what}: {report}");
    }
}

#[test]
fn violation_messages_name_the_property() {
    let cg = fixture_cg("z27_l2.cg");
    let (_, _, bad) = negatives(&cg).into_iter().find(|(p, _, _)| *p == 2).unwrap();
    let text = validate(&bad).to_string();
    assert!(text.contains("violation (2)"));
    assert!(text.contains("exactly three circuits"));
}
