//! Brute-force validation of the code layer: the equivalence between
//! extended perfection and complete regularity with the three-class
//! quotient, sphere-packing perfection, projection behavior, and small
//! perfect 2-colorings.

use eqpart::codes::{
    extended_quotient_matrix, hexacode, verify_perfect_coloring, Code, CodeDistance, Coloring,
    PerfectnessOutcome, QuotientMatrix,
};
use eqpart::{GraphSpec, Vertex, DEFAULT_ENUM_BUDGET};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

const BUDGET: u64 = DEFAULT_ENUM_BUDGET;

fn all_vertices(graph: &GraphSpec) -> Vec<Vertex> {
    graph.vertices(BUDGET).unwrap().collect()
}

fn is_regular_with_extended_quotient(code: &Code) -> bool {
    let expected = extended_quotient_matrix(code.graph()).unwrap();
    match code.is_completely_regular(BUDGET).unwrap().matrix() {
        Some(matrix) => *matrix == expected,
        None => false,
    }
}

#[test]
fn extended_perfection_equivalence_over_all_pairs_in_h42() {
    let graph = GraphSpec::hamming(4, 2).unwrap();
    let vertices = all_vertices(&graph);
    let mut extended_pairs = 0;
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let code =
                Code::new(graph, vec![vertices[i].clone(), vertices[j].clone()]).unwrap();
            let extended = code.is_extended_one_perfect(BUDGET).unwrap();
            assert_eq!(
                extended,
                is_regular_with_extended_quotient(&code),
                "pair {i},{j}: the two characterizations disagree"
            );
            if extended {
                extended_pairs += 1;
                assert_eq!(code.code_distance().unwrap(), CodeDistance::Finite(4));
                for p in 1..=4 {
                    assert!(
                        code.projection(p).unwrap().is_one_perfect(BUDGET).unwrap(),
                        "pair {i},{j}: projection {p}"
                    );
                }
            }
        }
    }
    // Exactly the antipodal pairs reach distance 4 in H(4,2).
    assert_eq!(extended_pairs, 8);
}

#[test]
fn extended_perfection_equivalence_on_random_small_codes() {
    let mut rng = StdRng::seed_from_u64(42);
    for graph in [
        GraphSpec::hamming(4, 2).unwrap(),
        GraphSpec::hamming(3, 3).unwrap(),
        GraphSpec::doob(1, 1).unwrap(),
    ] {
        let vertices = all_vertices(&graph);
        for _ in 0..40 {
            let size = rng.gen_range(1..=6);
            let words: Vec<Vertex> = vertices
                .choose_multiple(&mut rng, size)
                .cloned()
                .collect();
            let code = Code::new(graph, words).unwrap();
            assert_eq!(
                code.is_extended_one_perfect(BUDGET).unwrap(),
                is_regular_with_extended_quotient(&code),
                "{graph}: random {size}-word code"
            );
        }
    }
}

#[test]
fn hexacode_is_extended_perfect_with_the_known_quotient() {
    let code = hexacode();
    assert_eq!(code.len(), 64);
    assert_eq!(code.code_distance().unwrap(), CodeDistance::Finite(4));
    assert!(code.is_extended_one_perfect(BUDGET).unwrap());
    assert_eq!(code.covering_radius(BUDGET).unwrap(), 2);

    let expected = QuotientMatrix::from_u64_rows(&[
        vec![0, 18, 0],
        vec![1, 2, 15],
        vec![0, 6, 12],
    ])
    .unwrap();
    assert_eq!(expected, extended_quotient_matrix(code.graph()).unwrap());
    let outcome = code.is_completely_regular(BUDGET).unwrap();
    assert_eq!(outcome.matrix(), Some(&expected));

    let coloring = code.distance_coloring(BUDGET).unwrap();
    assert_eq!(coloring.class_counts(), vec![64, 1152, 2880]);

    for p in 1..=6 {
        let projection = code.projection(p).unwrap();
        assert_eq!(projection.len(), 64, "projection {p} must stay injective");
        assert!(projection.is_one_perfect(BUDGET).unwrap(), "projection {p}");
    }
}

#[test]
fn perturbing_one_hexacode_symbol_breaks_the_equivalence_consistently() {
    let code = hexacode();
    let graph = *code.graph();
    let mut rng = StdRng::seed_from_u64(7);
    let mut still_extended = 0;
    for _ in 0..24 {
        let mut words = code.words().to_vec();
        let w = rng.gen_range(0..words.len());
        let pos = rng.gen_range(0..6);
        let bump = rng.gen_range(1..4u64);
        words[w].0[pos] = (words[w].0[pos] + bump) % 4;
        let perturbed = match Code::new(graph, words) {
            Ok(c) => c,
            // The flip may collide with an existing word; that is still a
            // legal (smaller) code, but rebuild it dedup-free instead.
            Err(_) => continue,
        };
        let extended = perturbed.is_extended_one_perfect(BUDGET).unwrap();
        assert_eq!(
            extended,
            is_regular_with_extended_quotient(&perturbed),
            "perturbed word {w} position {pos}"
        );
        still_extended += u32::from(extended);
    }
    assert_eq!(still_extended, 0, "a one-symbol dent should never stay extended");
}

/// Independent sphere-packing definition: every radius-1 ball holds
/// exactly one codeword.
fn brute_force_one_perfect(code: &Code) -> bool {
    let graph = code.graph();
    all_vertices(graph).iter().all(|v| {
        let mut hits = 0;
        for w in code.words() {
            if graph.distance(v, w).unwrap() <= 1 {
                hits += 1;
            }
        }
        hits == 1
    })
}

#[test]
fn one_perfect_matches_the_sphere_packing_count() {
    // Known 1-perfect codes: binary repetition, the ternary [4,2] code, a
    // singleton in H(1,q).
    let repetition = Code::parse_file("hamming:n=3,q=2\n0 0 0\n1 1 1\n").unwrap();
    assert!(brute_force_one_perfect(&repetition));
    assert!(repetition.is_one_perfect(BUDGET).unwrap());

    let h14 = GraphSpec::hamming(4, 3).unwrap();
    let words: Vec<Vertex> = (0..3u64)
        .flat_map(|a| (0..3u64).map(move |b| Vertex(vec![a, b, (a + b) % 3, (a + 2 * b) % 3])))
        .collect();
    let ternary = Code::new(h14, words).unwrap();
    assert_eq!(ternary.code_distance().unwrap(), CodeDistance::Finite(3));
    assert!(brute_force_one_perfect(&ternary));
    assert!(ternary.is_one_perfect(BUDGET).unwrap());

    let lone = Code::parse_file("hamming:n=1,q=5\n3\n").unwrap();
    assert!(brute_force_one_perfect(&lone));
    assert!(lone.is_one_perfect(BUDGET).unwrap());

    // Random codes agree with the brute-force definition either way.
    let mut rng = StdRng::seed_from_u64(11);
    for graph in [
        GraphSpec::hamming(3, 2).unwrap(),
        GraphSpec::hamming(2, 3).unwrap(),
        GraphSpec::hamming(4, 3).unwrap(),
    ] {
        let vertices = all_vertices(&graph);
        for _ in 0..30 {
            let size = rng.gen_range(1..=vertices.len() / 4 + 1);
            let words: Vec<Vertex> = vertices
                .choose_multiple(&mut rng, size)
                .cloned()
                .collect();
            let code = Code::new(graph, words).unwrap();
            assert_eq!(
                code.is_one_perfect(BUDGET).unwrap(),
                brute_force_one_perfect(&code),
                "{graph}: random {size}-word code"
            );
        }
    }
}

#[test]
fn projection_keeps_cardinality_at_distance_two_or_more() {
    let ternary = {
        let graph = GraphSpec::hamming(4, 3).unwrap();
        let words: Vec<Vertex> = (0..3u64)
            .flat_map(|a| {
                (0..3u64).map(move |b| Vertex(vec![a, b, (a + b) % 3, (a + 2 * b) % 3]))
            })
            .collect();
        Code::new(graph, words).unwrap()
    };
    for p in 1..=4 {
        assert_eq!(ternary.projection(p).unwrap().len(), 9);
    }

    let pair = Code::parse_file("hamming:n=4,q=2\n0 0 0 0\n1 1 1 1\n").unwrap();
    for p in 1..=4 {
        assert_eq!(pair.projection(p).unwrap().len(), 2);
    }
}

#[test]
fn parity_classes_form_a_perfect_two_coloring() {
    let graph = GraphSpec::hamming(4, 2).unwrap();
    let colors: Vec<u8> = all_vertices(&graph)
        .iter()
        .map(|v| (v.0.iter().sum::<u64>() % 2) as u8)
        .collect();
    let coloring = Coloring::from_ranks(graph, colors, BUDGET).unwrap();
    match verify_perfect_coloring(&coloring, BUDGET).unwrap() {
        PerfectnessOutcome::Perfect(matrix) => {
            assert_eq!(
                matrix,
                QuotientMatrix::from_u64_rows(&[vec![0, 4], vec![4, 0]]).unwrap()
            );
        }
        PerfectnessOutcome::NotPerfect(_) => panic!("parity classes must be perfect"),
    }
}

#[test]
fn shrikhande_independent_set_is_a_perfect_coloring() {
    let graph = GraphSpec::doob(1, 0).unwrap();
    let colors: Vec<u8> = all_vertices(&graph)
        .iter()
        .map(|v| u8::from(!(v.0[0] % 2 == 0 && v.0[1] % 2 == 0)))
        .collect();
    let coloring = Coloring::from_ranks(graph, colors, BUDGET).unwrap();
    match verify_perfect_coloring(&coloring, BUDGET).unwrap() {
        PerfectnessOutcome::Perfect(matrix) => {
            assert_eq!(
                matrix,
                QuotientMatrix::from_u64_rows(&[vec![0, 6], vec![2, 4]]).unwrap()
            );
        }
        PerfectnessOutcome::NotPerfect(ce) => {
            panic!("even-coordinate set must be perfect, differs at {}", ce.first_vertex)
        }
    }
}
