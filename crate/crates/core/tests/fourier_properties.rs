//! Character-sum oracle properties: pointwise eigenfunction verification,
//! Parseval's identity on arbitrary colorings, and exact agreement between
//! brute-force eigenspace masses and the moment-system masses on perfect
//! colorings (including zero mass off the quotient spectrum).

use eqpart::codes::{
    hexacode, verify_perfect_coloring, Code, Coloring, PerfectnessOutcome, QuotientMatrix,
};
use eqpart::feasibility::analyze;
use eqpart::fourier::{
    character_phase, eigenspace_masses, indicator_coefficient, verify_all_eigenfunctions,
    ORACLE_VERTEX_CAP,
};
use eqpart::spectra::{quotient_spectrum, SpectrumCheck};
use eqpart::{GraphSpec, DEFAULT_ENUM_BUDGET};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const BUDGET: u64 = DEFAULT_ENUM_BUDGET;

#[test]
fn every_character_is_an_eigenfunction() {
    for graph in [
        GraphSpec::hamming(12, 2).unwrap(),
        GraphSpec::hamming(7, 3).unwrap(),
        GraphSpec::hamming(6, 4).unwrap(),
        GraphSpec::doob(3, 0).unwrap(),
        GraphSpec::doob(2, 1).unwrap(),
        GraphSpec::doob(1, 1).unwrap(),
    ] {
        verify_all_eigenfunctions(&graph, ORACLE_VERTEX_CAP)
            .unwrap_or_else(|e| panic!("{graph}: {e}"));
    }
}

#[test]
fn character_pairing_is_symmetric() {
    for graph in [GraphSpec::doob(1, 1).unwrap(), GraphSpec::hamming(2, 3).unwrap()] {
        let vertices: Vec<_> = graph.vertices(BUDGET).unwrap().collect();
        for z in &vertices {
            for t in &vertices {
                assert_eq!(
                    character_phase(&graph, z, t).unwrap(),
                    character_phase(&graph, t, z).unwrap()
                );
            }
        }
    }
}

#[test]
fn parseval_holds_for_arbitrary_colorings() {
    let mut rng = StdRng::seed_from_u64(3);
    for graph in [
        GraphSpec::hamming(4, 3).unwrap(),
        GraphSpec::hamming(3, 4).unwrap(),
        GraphSpec::doob(1, 1).unwrap(),
    ] {
        let count = graph.vertex_count_checked(BUDGET).unwrap();
        let k = 3u8;
        let mut colors: Vec<u8> = (0..count).map(|_| rng.gen_range(0..k)).collect();
        // Guarantee surjectivity regardless of the draw.
        for c in 0..k {
            colors[c as usize] = c;
        }
        let coloring = Coloring::from_ranks(graph, colors, BUDGET).unwrap();
        let counts = coloring.class_counts();
        for color in 0..k {
            let masses = eigenspace_masses(&coloring, color, ORACLE_VERTEX_CAP).unwrap();
            let total: BigRational = masses.iter().map(|(_, m)| m.clone()).sum();
            let class = BigRational::from_integer(BigInt::from(counts[color as usize]));
            assert_eq!(total, class, "{graph}: Parseval for color {color}");

            let principal = masses
                .iter()
                .find(|(lambda, _)| *lambda == graph.degree())
                .map(|(_, m)| m.clone())
                .unwrap();
            let expected = &class * &class
                / BigRational::from_integer(BigInt::from(count));
            assert_eq!(principal, expected, "{graph}: principal mass of color {color}");
        }
    }
}

#[test]
fn the_zero_frequency_coefficient_counts_the_class() {
    let graph = GraphSpec::hamming(2, 3).unwrap();
    let colors: Vec<u8> = graph
        .vertices(BUDGET)
        .unwrap()
        .map(|v| u8::from(v.0 != vec![0, 0]))
        .collect();
    let coloring = Coloring::from_ranks(graph, colors, BUDGET).unwrap();
    let zero = graph.vertex_at(0, BUDGET).unwrap();
    assert_eq!(
        indicator_coefficient(&coloring, 1, &zero).unwrap().norm_sq(),
        64,
        "8 vertices away from the origin"
    );
}

/// Brute-force masses agree with the moment system eigenvalue by
/// eigenvalue, and vanish off the quotient spectrum.
fn assert_masses_agree(coloring: &Coloring, matrix: &QuotientMatrix) {
    let graph = coloring.graph();
    let count = BigInt::from(graph.vertex_count_checked(ORACLE_VERTEX_CAP).unwrap());
    let report = analyze(graph, matrix, None, None).unwrap();
    let spectrum = match quotient_spectrum(graph, matrix).unwrap() {
        SpectrumCheck::Splits(info) => info,
        SpectrumCheck::Violation { detail } => panic!("{graph}: {detail}"),
    };
    for mass_report in &report.colors {
        let color = mass_report.color;
        let class = BigInt::from(coloring.class_counts()[color]);
        let brute = eigenspace_masses(coloring, color as u8, ORACLE_VERTEX_CAP).unwrap();
        for (lambda, mass) in &brute {
            let expected = if *lambda == graph.degree() {
                BigRational::new(&class * &class, count.clone())
            } else if let Some(entry) =
                mass_report.entries.iter().find(|e| e.eigenvalue == *lambda)
            {
                entry.mass.to_rational().unwrap()
            } else {
                assert!(
                    !spectrum.contains(lambda),
                    "{graph}: quotient eigenvalue {lambda} missing from the mass report"
                );
                BigRational::zero()
            };
            assert_eq!(
                *mass, expected,
                "{graph}: color {color} mass at lambda = {lambda}"
            );
            let scaled = mass * BigRational::from_integer(count.clone());
            assert!(scaled.is_integer(), "{graph}: a*|V| at lambda = {lambda}");
            assert!(scaled >= BigRational::zero(), "{graph}: negative mass");
        }
    }
}

#[test]
fn brute_force_masses_match_the_moment_system() {
    let mut cases: Vec<Coloring> = Vec::new();
    for (spec, words) in [
        ("hamming:n=2,q=3", "0 0\n"),
        ("hamming:n=4,q=2", "0 0 0 0\n1 1 1 1\n"),
        ("hamming:n=2,q=4", "0 0\n"),
        ("doob:m=1,n=0", "0,0\n"),
        ("hamming:n=3,q=2", "0 0 0\n1 1 1\n"),
    ] {
        let code = Code::parse_file(&format!("{spec}\n{words}")).unwrap();
        cases.push(code.distance_coloring(BUDGET).unwrap());
    }
    cases.push(hexacode().distance_coloring(BUDGET).unwrap());
    {
        let graph = GraphSpec::doob(1, 0).unwrap();
        let colors: Vec<u8> = graph
            .vertices(BUDGET)
            .unwrap()
            .map(|v| u8::from(!(v.0[0] % 2 == 0 && v.0[1] % 2 == 0)))
            .collect();
        cases.push(Coloring::from_ranks(graph, colors, BUDGET).unwrap());
    }

    for coloring in &cases {
        let matrix = match verify_perfect_coloring(coloring, BUDGET).unwrap() {
            PerfectnessOutcome::Perfect(matrix) => matrix,
            PerfectnessOutcome::NotPerfect(_) => panic!("case is not perfect"),
        };
        assert_masses_agree(coloring, &matrix);
    }
}
