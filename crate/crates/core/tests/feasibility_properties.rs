//! End-to-end feasibility pipeline checks: the three family scans with
//! their exact verdict patterns, soundness on colorings that actually
//! exist, closed-form masses against the full pipeline, and a brute-force
//! count behind the shell obstruction.

use eqpart::codes::{
    extended_quotient_matrix, hexacode, verify_perfect_coloring, Code, Coloring, ExtendedFamily,
    PerfectnessOutcome,
};
use eqpart::feasibility::{
    analyze, extended_mass_closed_form, scan_extended, CheckName, ClosedMassFamily,
};
use eqpart::{GraphSpec, DEFAULT_ENUM_BUDGET};
use num_bigint::BigInt;
use num_rational::BigRational;

const BUDGET: u64 = DEFAULT_ENUM_BUDGET;

fn first_fail_name(row: &eqpart::feasibility::ScanRow) -> Option<CheckName> {
    row.report.first_fail().map(|c| c.name)
}

#[test]
fn ternary_scan_passes_only_at_l_one() {
    let rows = scan_extended(ExtendedFamily::Hamming { q: 3 }, 50, None).unwrap();
    assert_eq!(rows.len(), 50);
    for row in &rows {
        let n = (3u128.pow(row.l) + 1) / 2;
        assert_eq!(row.length, n, "l = {}", row.l);
        match row.l {
            1 => assert_eq!(first_fail_name(row), None),
            2 => assert_eq!(first_fail_name(row), Some(CheckName::Parity)),
            _ => assert_eq!(first_fail_name(row), Some(CheckName::MassIntegrality)),
        }
    }
    assert_eq!(rows[2].cardinality, "59049");
    assert_eq!(rows[49].cardinality, format!("3^{}", rows[49].length - 51));
}

#[test]
fn doob_scan_passes_only_at_l_one_and_two() {
    let rows = scan_extended(ExtendedFamily::Doob, 50, None).unwrap();
    assert_eq!(rows.len(), 50);
    for row in &rows {
        let n = (4u128.pow(row.l) + 2) / 3;
        assert_eq!(row.length, n, "l = {}", row.l);
        match row.l {
            1 | 2 => assert_eq!(first_fail_name(row), None),
            3 => assert_eq!(first_fail_name(row), Some(CheckName::ShellCount)),
            _ => assert_eq!(first_fail_name(row), Some(CheckName::MassIntegrality)),
        }
    }

    let shell = rows[2].report.shell.as_ref().expect("l = 3 reaches the shell counts");
    assert_eq!(shell.w1_1, BigInt::from(22));
    assert_eq!(shell.w0_2, BigRational::from_integer(BigInt::from(11)));
    assert_eq!(shell.w1_2, BigRational::from_integer(BigInt::from(484)));
    assert_eq!(shell.w0_3, BigRational::new(BigInt::from(440), BigInt::from(3)));
}

#[test]
fn binary_scan_never_fails() {
    let rows = scan_extended(ExtendedFamily::Hamming { q: 2 }, 50, None).unwrap();
    assert_eq!(rows.len(), 50);
    for row in &rows {
        assert_eq!(row.length, 2u128.pow(row.l), "l = {}", row.l);
        assert!(row.report.feasible(), "l = {}", row.l);
    }
}

#[test]
fn q5_scan_fails_parity_exactly_at_odd_lengths() {
    let rows = scan_extended(ExtendedFamily::Hamming { q: 5 }, 6, None).unwrap();
    for row in &rows {
        assert_eq!(row.length, (5u128.pow(row.l) + 3) / 4, "l = {}", row.l);
        let integrality = row.report.check(CheckName::MassIntegrality);
        assert!(
            matches!(
                integrality.verdict,
                eqpart::feasibility::Verdict::NotApplicable { .. }
            ),
            "integrality is only proven for q in 2..=4"
        );
        if row.length % 2 == 1 {
            assert_eq!(first_fail_name(row), Some(CheckName::Parity), "l = {}", row.l);
        } else {
            assert_eq!(first_fail_name(row), None, "l = {}", row.l);
        }
    }
}

/// Every coloring that actually exists must clear all necessary conditions.
#[test]
fn existing_colorings_pass_the_pipeline() {
    let mut cases: Vec<(Coloring, &str)> = Vec::new();
    for graph in [
        GraphSpec::hamming(3, 3).unwrap(),
        GraphSpec::hamming(4, 2).unwrap(),
        GraphSpec::doob(1, 1).unwrap(),
    ] {
        let base = graph.vertex_at(0, BUDGET).unwrap();
        let code = Code::new(graph, vec![base]).unwrap();
        cases.push((code.distance_coloring(BUDGET).unwrap(), "vertex distance coloring"));
    }
    cases.push((hexacode().distance_coloring(BUDGET).unwrap(), "hexacode"));
    {
        let graph = GraphSpec::doob(1, 0).unwrap();
        let colors: Vec<u8> = graph
            .vertices(BUDGET)
            .unwrap()
            .map(|v| u8::from(!(v.0[0] % 2 == 0 && v.0[1] % 2 == 0)))
            .collect();
        cases.push((
            Coloring::from_ranks(graph, colors, BUDGET).unwrap(),
            "Shrikhande independent set",
        ));
    }

    for (coloring, label) in cases {
        let matrix = match verify_perfect_coloring(&coloring, BUDGET).unwrap() {
            PerfectnessOutcome::Perfect(matrix) => matrix,
            PerfectnessOutcome::NotPerfect(_) => panic!("{label}: not perfect"),
        };
        let report = analyze(coloring.graph(), &matrix, None, None).unwrap();
        assert!(
            report.feasible(),
            "{label}: a real coloring failed {:?}",
            report.first_fail().map(|c| c.name)
        );
    }
}

/// The shell counts predicted for the hexacode's graph are exactly what a
/// walk through all distance-2 vertices finds.
#[test]
fn hexacode_shell_counts_match_brute_force() {
    let code = hexacode();
    let graph = *code.graph();
    let matrix = extended_quotient_matrix(&graph).unwrap();
    let report = analyze(&graph, &matrix, None, None).unwrap();
    let shell = report.shell.as_ref().expect("diameter 6 reaches the shell counts");
    assert_eq!(shell.w1_1, BigInt::from(6));
    assert_eq!(shell.w0_2, BigRational::from_integer(BigInt::from(3)));
    assert_eq!(shell.w1_2, BigRational::from_integer(BigInt::from(36)));
    assert_eq!(shell.w0_3, BigRational::from_integer(BigInt::from(8)));
    assert!(report.feasible());

    let coloring = code.distance_coloring(BUDGET).unwrap();
    let vertices: Vec<_> = graph.vertices(BUDGET).unwrap().collect();
    let shell_one: Vec<usize> = (0..vertices.len())
        .filter(|&r| coloring.color_of_rank(r as u64) == 1)
        .collect();
    let mut checked = 0;
    for (r, v) in vertices.iter().enumerate() {
        if coloring.color_of_rank(r as u64) != 2 {
            continue;
        }
        checked += 1;
        let mut at_two = 0u64;
        let mut at_three = 0u64;
        for w in code.words() {
            match graph.distance(v, w).unwrap() {
                2 => at_two += 1,
                3 => at_three += 1,
                d => assert!(d >= 2, "shell-2 vertex at distance {d} from a codeword"),
            }
        }
        assert_eq!(at_two, 3, "codewords at distance 2");
        assert_eq!(at_three, 8, "codewords at distance 3");

        let mut shell_one_at_two = 0u64;
        for &s in &shell_one {
            if graph.distance(v, &vertices[s]).unwrap() == 2 {
                shell_one_at_two += 1;
            }
        }
        assert_eq!(shell_one_at_two, 36, "distance-1 vertices two steps away");
    }
    assert_eq!(checked, 2880);
}

#[test]
fn closed_form_masses_match_the_pipeline() {
    for l in 1..=8u32 {
        let n = (3u128.pow(l) + 1) / 2;
        let graph = GraphSpec::hamming(n, 3).unwrap();
        let matrix = extended_quotient_matrix(&graph).unwrap();
        let report = analyze(&graph, &matrix, Some(0), None).unwrap();
        let lambda = -BigInt::from(n);
        let entry = report.colors[0]
            .entries
            .iter()
            .find(|e| e.eigenvalue == lambda)
            .expect("the negative eigenvalue carries the closed form");
        let closed = extended_mass_closed_form(ClosedMassFamily::Ternary, l).unwrap();
        assert_eq!(entry.mass_times_v, closed, "ternary l = {l}");
    }
    for l in 1..=8u32 {
        let len = (4u128.pow(l) + 2) / 3;
        let graph = GraphSpec::doob(len / 2, 0).unwrap();
        let matrix = extended_quotient_matrix(&graph).unwrap();
        let report = analyze(&graph, &matrix, Some(0), None).unwrap();
        let lambda = -BigInt::from(len);
        let entry = report.colors[0]
            .entries
            .iter()
            .find(|e| e.eigenvalue == lambda)
            .expect("the negative eigenvalue carries the closed form");
        let closed = extended_mass_closed_form(ClosedMassFamily::Doob, l).unwrap();
        assert_eq!(entry.mass_times_v, closed, "doob l = {l}");
    }
}

#[test]
fn closed_form_integrality_boundary() {
    for l in 1..=12u32 {
        let ternary = extended_mass_closed_form(ClosedMassFamily::Ternary, l).unwrap();
        assert_eq!(ternary.is_integer(), l <= 2, "ternary l = {l}");
        let doob = extended_mass_closed_form(ClosedMassFamily::Doob, l).unwrap();
        assert_eq!(doob.is_integer(), l <= 3, "doob l = {l}");
    }
}
