//! Character sums over vertex classes: an independent road to the eigenspace
//! masses that the moment equations compute symbolically.
//!
//! Vertices form a group (Z_q^n, resp. Z_4^(2m+n)); every z indexes a
//! character phi_z(t) = xi^<z,t> with xi a primitive q-th root of unity, and
//! phi_z is an adjacency eigenfunction. Summing phi_z over a color class and
//! taking norms, binned by the eigenvalue of z, yields the masses directly.
//! Everything stays in the ring Z[xi] (integers, Eisenstein integers, or
//! Gaussian integers), so the comparison with the exact pipeline is exact.
//! This brute force is only for graphs small enough to enumerate.

use crate::codes::Coloring;
use crate::graphs::{GraphSpec, Materialized, Vertex};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Largest graph the oracle will enumerate.
pub const ORACLE_VERTEX_CAP: u64 = 4096;

/// An element of Z[xi] for xi a primitive q-th root of unity, q in {2,3,4}.
///
/// Eisenstein integers are stored as a + b*omega with omega = e^(2*pi*i/3);
/// Gaussian integers as re + im*i.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycloValue {
    Real(i128),
    Eisenstein { a: i128, b: i128 },
    Gauss { re: i128, im: i128 },
}

impl CycloValue {
    pub fn zero(q: u64) -> Self {
        Self::from_exponent_tallies(q, &[0; 4])
    }

    /// xi^e as a ring element.
    pub fn root(q: u64, e: u64) -> Self {
        let mut tallies = [0i128; 4];
        tallies[(e % q) as usize] = 1;
        Self::from_exponent_tallies(q, &tallies)
    }

    /// The value sum_e tallies[e] * xi^e, reduced to the integral basis.
    pub fn from_exponent_tallies(q: u64, tallies: &[i128; 4]) -> Self {
        match q {
            2 => CycloValue::Real(tallies[0] - tallies[1]),
            // omega^2 = -1 - omega
            3 => CycloValue::Eisenstein {
                a: tallies[0] - tallies[2],
                b: tallies[1] - tallies[2],
            },
            4 => CycloValue::Gauss {
                re: tallies[0] - tallies[2],
                im: tallies[1] - tallies[3],
            },
            _ => panic!("unsupported root order {q}"),
        }
    }

    pub fn add(self, other: Self) -> Self {
        match (self, other) {
            (CycloValue::Real(x), CycloValue::Real(y)) => CycloValue::Real(x + y),
            (
                CycloValue::Eisenstein { a, b },
                CycloValue::Eisenstein { a: c, b: d },
            ) => CycloValue::Eisenstein { a: a + c, b: b + d },
            (CycloValue::Gauss { re, im }, CycloValue::Gauss { re: x, im: y }) => {
                CycloValue::Gauss { re: re + x, im: im + y }
            }
            _ => panic!("mixed cyclotomic rings"),
        }
    }

    pub fn scale(self, k: i128) -> Self {
        match self {
            CycloValue::Real(x) => CycloValue::Real(x * k),
            CycloValue::Eisenstein { a, b } => CycloValue::Eisenstein { a: a * k, b: b * k },
            CycloValue::Gauss { re, im } => CycloValue::Gauss { re: re * k, im: im * k },
        }
    }

    /// Multiply by xi once.
    pub fn rotate(self) -> Self {
        match self {
            CycloValue::Real(x) => CycloValue::Real(-x),
            // (a + b*omega)*omega = -b + (a - b)*omega
            CycloValue::Eisenstein { a, b } => CycloValue::Eisenstein { a: -b, b: a - b },
            CycloValue::Gauss { re, im } => CycloValue::Gauss { re: -im, im: re },
        }
    }

    pub fn is_zero(self) -> bool {
        self.norm_sq() == 0
    }

    /// Squared absolute value, a non-negative rational integer.
    pub fn norm_sq(self) -> u128 {
        match self {
            CycloValue::Real(x) => (x * x) as u128,
            // |a + b*omega|^2 = a^2 - a*b + b^2
            CycloValue::Eisenstein { a, b } => (a * a - a * b + b * b) as u128,
            CycloValue::Gauss { re, im } => (re * re + im * im) as u128,
        }
    }

    /// Eisenstein values as (2a - b, b): the coordinates over (1/2, sqrt(3)/2).
    /// The two components always share a parity, which is what makes the norm
    /// ((2a-b)^2 + 3b^2)/4 an integer.
    pub fn half_form(self) -> Option<(i128, i128)> {
        match self {
            CycloValue::Eisenstein { a, b } => Some((2 * a - b, b)),
            _ => None,
        }
    }
}

/// The alphabet when characters are available: q in {2,3,4} (Doob counts
/// as 4).
fn supported_base(graph: &GraphSpec) -> Result<u64> {
    match graph {
        GraphSpec::Doob { .. } => Ok(4),
        GraphSpec::Hamming { q, .. } if (2..=4).contains(q) => Ok(*q),
        GraphSpec::Hamming { q, .. } => Err(Error::unsupported(format!(
            "character sums are implemented for alphabets 2, 3, 4, not q = {q}"
        ))),
    }
}

/// The pairing <z,t> mod q behind the characters. Hamming graphs use the dot
/// product; Doob pairs contribute x*v + y*u so that the connecting-set sum
/// lands on the closed-form eigenvalue.
fn phase_flat(graph: &GraphSpec, q: u64, z: &[u64], t: &[u64]) -> u64 {
    let mut acc: u64 = 0;
    match *graph {
        GraphSpec::Hamming { .. } => {
            for (zi, ti) in z.iter().zip(t) {
                acc = (acc + zi * ti) % q;
            }
        }
        GraphSpec::Doob { m, n } => {
            for p in 0..m as usize {
                let (x, y) = (z[2 * p], z[2 * p + 1]);
                let (u, v) = (t[2 * p], t[2 * p + 1]);
                acc = (acc + x * v + y * u) % 4;
            }
            for j in 0..n as usize {
                let base = 2 * m as usize;
                acc = (acc + z[base + j] * t[base + j]) % 4;
            }
        }
    }
    acc
}

pub fn character_phase(graph: &GraphSpec, z: &Vertex, t: &Vertex) -> Result<u64> {
    let q = supported_base(graph)?;
    graph.check_vertex(z)?;
    graph.check_vertex(t)?;
    Ok(phase_flat(graph, q, &z.0, &t.0))
}

/// Adjacency eigenvalue of the character phi_z, per coordinate: a Hamming
/// coordinate contributes q-1 or -1; a Shrikhande pair contributes
/// 2(Re i^x + Re i^y + Re i^(x+y)), one of 6, 2, -2.
fn lambda_flat(graph: &GraphSpec, z: &[u64]) -> i128 {
    const RE_I: [i128; 4] = [1, 0, -1, 0];
    match *graph {
        GraphSpec::Hamming { q, .. } => z
            .iter()
            .map(|&c| if c == 0 { (q - 1) as i128 } else { -1 })
            .sum(),
        GraphSpec::Doob { m, n } => {
            let mut acc: i128 = 0;
            for p in 0..m as usize {
                let (x, y) = (z[2 * p] as usize, z[2 * p + 1] as usize);
                acc += 2 * (RE_I[x] + RE_I[y] + RE_I[(x + y) % 4]);
            }
            for j in 0..n as usize {
                acc += if z[2 * m as usize + j] == 0 { 3 } else { -1 };
            }
            acc
        }
    }
}

pub fn eigenvalue_of_character(graph: &GraphSpec, z: &Vertex) -> Result<BigInt> {
    supported_base(graph)?;
    graph.check_vertex(z)?;
    Ok(BigInt::from(lambda_flat(graph, &z.0)))
}

/// The unnormalized coefficient sum_{t in class} xi^(-<z,t>).
pub fn indicator_coefficient(coloring: &Coloring, color: u8, z: &Vertex) -> Result<CycloValue> {
    let graph = coloring.graph();
    let q = supported_base(graph)?;
    graph.check_vertex(z)?;
    let mat = Materialized::build(graph, u64::MAX)?;
    let mut tallies = [0i128; 4];
    for rank in coloring.class_ranks(color) {
        let t = mat.decode(rank);
        let e = phase_flat(graph, q, &z.0, &t);
        tallies[((q - e % q) % q) as usize] += 1;
    }
    Ok(CycloValue::from_exponent_tallies(q, &tallies))
}

/// Eigenspace masses of a color class, by brute-force character sums:
/// for each eigenvalue lambda of the graph,
///   mass(lambda) = (1/|V|) sum over z with lambda(z) = lambda of |alpha_z|^2.
/// Sorted by decreasing eigenvalue; every graph eigenvalue appears, so a
/// zero mass is evidence of absence, not of omission.
pub fn eigenspace_masses(
    coloring: &Coloring,
    color: u8,
    cap: u64,
) -> Result<Vec<(BigInt, BigRational)>> {
    let graph = coloring.graph();
    let q = supported_base(graph)?;
    let mat = Materialized::build(graph, cap)?;
    let count = mat.count;
    let members: Vec<Vec<u64>> = coloring
        .class_ranks(color)
        .into_iter()
        .map(|r| mat.decode(r))
        .collect();
    if members.is_empty() {
        return Err(Error::input(format!("color {color} is empty")));
    }

    let num_eigenvalues = graph.diameter() as usize + 1;
    let degree = graph
        .degree()
        .to_i128()
        .expect("enumerable graphs have small degrees");
    let mut sums: Vec<u128> = vec![0; num_eigenvalues];
    for zr in 0..count {
        let z = mat.decode(zr);
        let mut tallies = [0i128; 4];
        for t in &members {
            let e = phase_flat(graph, q, &z, t);
            tallies[((q - e % q) % q) as usize] += 1;
        }
        let coefficient = CycloValue::from_exponent_tallies(q, &tallies);
        let lambda = lambda_flat(graph, &z);
        // lambda = degree - q*i indexes the eigenvalue bins.
        let i = ((degree - lambda) / q as i128) as usize;
        sums[i] += coefficient.norm_sq();
    }

    let v = BigInt::from(count);
    Ok((0..num_eigenvalues)
        .map(|i| {
            (
                graph.eigenvalue_at(i as u128),
                BigRational::new(BigInt::from(sums[i]), v.clone()),
            )
        })
        .collect())
}

/// Confirms, vertex by vertex, that each character phi_z really is an
/// adjacency eigenfunction with the closed-form eigenvalue.
pub fn verify_all_eigenfunctions(graph: &GraphSpec, cap: u64) -> Result<()> {
    let q = supported_base(graph)?;
    let mat = Materialized::build(graph, cap)?;
    let count = mat.count as usize;
    let degree = mat.degree;
    let table = mat.neighbor_table();
    let mut phase = vec![0u8; count];
    for zr in 0..mat.count {
        let z = mat.decode(zr);
        let lambda = lambda_flat(graph, &z);
        for (x, slot) in phase.iter_mut().enumerate() {
            *slot = phase_flat(graph, q, &z, &mat.decode(x as u64)) as u8;
        }
        for x in 0..count {
            let mut tallies = [0i128; 4];
            for &nb in &table[x * degree..(x + 1) * degree] {
                tallies[phase[nb as usize] as usize] += 1;
            }
            let sum = CycloValue::from_exponent_tallies(q, &tallies);
            let expect = CycloValue::root(q, phase[x] as u64).scale(lambda);
            if sum != expect {
                return Err(Error::internal(format!(
                    "character z = {} is not an eigenfunction at vertex rank {x}: \
                     neighbor sum {sum:?}, expected {expect:?}",
                    graph.format_vertex(&Vertex(z))
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::Code;
    use crate::graphs::DEFAULT_ENUM_BUDGET as BUDGET;
    use num_traits::One;

    fn h(n: u128, q: u64) -> GraphSpec {
        GraphSpec::hamming(n, q).unwrap()
    }

    #[test]
    fn cyclo_tallies_and_rotation() {
        // 1 + omega + omega^2 = 0, and likewise for i.
        assert!(CycloValue::from_exponent_tallies(3, &[1, 1, 1, 0]).is_zero());
        assert!(CycloValue::from_exponent_tallies(4, &[1, 1, 1, 1]).is_zero());
        assert_eq!(CycloValue::from_exponent_tallies(2, &[3, 1, 0, 0]), CycloValue::Real(2));
        // Rotating q times is the identity.
        for q in [2u64, 3, 4] {
            let v = CycloValue::from_exponent_tallies(q, &[5, -2, 1, 0]);
            let mut w = v;
            for _ in 0..q {
                w = w.rotate();
            }
            assert_eq!(w, v);
        }
        assert_eq!(CycloValue::root(3, 1).norm_sq(), 1);
        assert_eq!(CycloValue::Eisenstein { a: 2, b: 1 }.norm_sq(), 3);
        assert_eq!(CycloValue::Gauss { re: 3, im: 4 }.norm_sq(), 25);
    }

    #[test]
    fn eisenstein_half_form_parity() {
        for a in -5i128..=5 {
            for b in -5i128..=5 {
                let v = CycloValue::Eisenstein { a, b };
                let (x, y) = v.half_form().unwrap();
                assert_eq!((x - y) % 2, 0, "components must share parity");
                assert_eq!(((x * x + 3 * y * y) / 4) as u128, v.norm_sq());
            }
        }
        assert!(CycloValue::Real(1).half_form().is_none());
    }

    #[test]
    fn phases_and_eigenvalues() {
        let g = h(2, 3);
        let z = Vertex(vec![1, 2]);
        let t = Vertex(vec![2, 2]);
        assert_eq!(character_phase(&g, &z, &t).unwrap(), 0); // 1*2 + 2*2 = 6
        assert_eq!(eigenvalue_of_character(&g, &Vertex(vec![0, 0])).unwrap(), g.degree());
        assert_eq!(eigenvalue_of_character(&g, &Vertex(vec![1, 0])).unwrap(), BigInt::one());

        // Every character eigenvalue is a graph eigenvalue.
        for g in [h(3, 2), h(2, 4), GraphSpec::doob(1, 1).unwrap()] {
            for z in g.vertices(BUDGET).unwrap() {
                let lambda = eigenvalue_of_character(&g, &z).unwrap();
                assert!(g.is_graph_eigenvalue(&lambda), "{lambda} in {g}");
            }
        }
    }

    #[test]
    fn characters_are_eigenfunctions_on_small_graphs() {
        for g in [h(2, 3), h(3, 2), h(2, 4), GraphSpec::doob(1, 0).unwrap()] {
            verify_all_eigenfunctions(&g, ORACLE_VERTEX_CAP).unwrap();
        }
    }

    #[test]
    fn masses_match_the_worked_example() {
        // Distance coloring of the singleton {00} in H(2,3): masses of the
        // code class are 1/9, 4/9, 4/9 on eigenvalues 4, 1, -2.
        let code = Code::new(h(2, 3), vec![Vertex(vec![0, 0])]).unwrap();
        let coloring = code.distance_coloring(BUDGET).unwrap();
        let masses = eigenspace_masses(&coloring, 0, ORACLE_VERTEX_CAP).unwrap();
        let as_strings: Vec<(String, String)> = masses
            .iter()
            .map(|(l, m)| (l.to_string(), m.to_string()))
            .collect();
        assert_eq!(
            as_strings,
            vec![
                ("4".to_string(), "1/9".to_string()),
                ("1".to_string(), "4/9".to_string()),
                ("-2".to_string(), "4/9".to_string()),
            ]
        );
        // Parseval: the masses of one class sum to its size.
        let total: BigRational = masses.into_iter().map(|(_, m)| m).sum();
        assert_eq!(total, BigRational::from(BigInt::one()));
    }

    #[test]
    fn unsupported_alphabets_and_caps() {
        let g = h(2, 5);
        let code = Code::new(g, vec![Vertex(vec![0, 0])]).unwrap();
        let coloring = code.distance_coloring(BUDGET).unwrap();
        assert!(matches!(
            eigenspace_masses(&coloring, 0, ORACLE_VERTEX_CAP),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            verify_all_eigenfunctions(&h(7, 4), ORACLE_VERTEX_CAP),
            Err(Error::Budget { .. })
        ));
    }
}
