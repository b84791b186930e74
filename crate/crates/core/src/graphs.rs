//! Hamming graphs H(n,q) and Doob graphs D(m,n).
//!
//! H(n,q) is the Cartesian product of n copies of the complete graph K_q:
//! vertices are words of length n over Z_q, adjacent when they differ in one
//! coordinate. D(m,n) is the product of m copies of the Shrikhande graph and
//! n copies of K_4: vertices are m pairs over Z_4 followed by n symbols of
//! Z_4. Both are distance-regular with the same parameters when 2m+n matches,
//! and D(0,n) is H(n,4) exactly.
//!
//! The Shrikhande graph is the Cayley graph on Z_4 × Z_4 with connecting set
//! {01, 10, 03, 30, 11, 33}; it is strongly regular with parameters
//! (16, 6, 2, 2).
//!
//! Length parameters are kept wide (u128) because feasibility scans reason
//! about graphs far beyond anything enumerable; every exhaustive operation
//! checks an explicit vertex budget first.

use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::fmt;

/// Default ceiling on exhaustive vertex enumeration (2^24 vertices).
pub const DEFAULT_ENUM_BUDGET: u64 = 1 << 24;

/// Hard cap on materializing per-vertex neighbor lists.
const NEIGHBOR_CAP: u128 = 1 << 28;

/// Hard cap on materializing full eigenvalue / intersection-number lists.
const LIST_CAP: u128 = 1 << 20;

/// Shrikhande connecting set: the six steps adjacent to a pair.
pub const SHRIKHANDE_STEPS: [(u64, u64); 6] = [(0, 1), (1, 0), (0, 3), (3, 0), (1, 1), (3, 3)];

/// A Hamming or Doob graph, identified by its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphSpec {
    /// H(n,q): words of length n over an alphabet of size q.
    Hamming { n: u128, q: u64 },
    /// D(m,n): m Shrikhande coordinates (pairs over Z_4) and n K_4 coordinates.
    Doob { m: u128, n: u128 },
}

/// A vertex, stored as its flat coordinate vector.
///
/// For H(n,q) that is the n word symbols; for D(m,n) the m pairs come first,
/// each flattened as two Z_4 entries, followed by the n K_4 symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(pub Vec<u64>);

impl GraphSpec {
    pub fn hamming(n: u128, q: u64) -> Result<Self> {
        let g = GraphSpec::Hamming { n, q };
        g.validate()?;
        Ok(g)
    }

    pub fn doob(m: u128, n: u128) -> Result<Self> {
        let g = GraphSpec::Doob { m, n };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            GraphSpec::Hamming { n, q } => {
                if n == 0 {
                    return Err(Error::input("hamming graph needs n >= 1"));
                }
                if q < 2 {
                    return Err(Error::input("hamming graph needs q >= 2"));
                }
            }
            GraphSpec::Doob { m, n } => {
                if m == 0 && n == 0 {
                    return Err(Error::input("doob graph needs m + n >= 1"));
                }
                m.checked_add(n)
                    .and_then(|s| s.checked_mul(2))
                    .ok_or_else(|| Error::input("doob parameters overflow"))?;
            }
        }
        Ok(())
    }

    /// Alphabet size of each flat coordinate: q for Hamming, 4 for Doob.
    pub fn alphabet(&self) -> u64 {
        match *self {
            GraphSpec::Hamming { q, .. } => q,
            GraphSpec::Doob { .. } => 4,
        }
    }

    /// Number of flat coordinates (n, resp. 2m+n).
    pub fn coord_len(&self) -> u128 {
        match *self {
            GraphSpec::Hamming { n, .. } => n,
            GraphSpec::Doob { m, n } => 2 * m + n,
        }
    }

    /// Diameter: n for H(n,q), 2m+n for D(m,n).
    pub fn diameter(&self) -> u128 {
        match *self {
            GraphSpec::Hamming { n, .. } => n,
            GraphSpec::Doob { m, n } => 2 * m + n,
        }
    }

    /// Vertex degree, exact.
    pub fn degree(&self) -> BigInt {
        match *self {
            GraphSpec::Hamming { n, q } => BigInt::from(n) * BigInt::from(q - 1),
            GraphSpec::Doob { m, n } => BigInt::from(6u8) * BigInt::from(m) + BigInt::from(3u8) * BigInt::from(n),
        }
    }

    /// Total number of vertices, exact (q^n may be astronomically large).
    pub fn vertex_count(&self) -> BigUint {
        let len = self.coord_len();
        if len > LIST_CAP {
            // Not representable in memory anyway; callers wanting an exact
            // count at this scale should reason about the exponent instead.
            panic!("vertex count with {len} coordinates will not fit in memory");
        }
        BigUint::from(self.alphabet()).pow(len as u32)
    }

    /// Human-readable vertex count ("q^n" once it stops being printable).
    pub fn vertex_count_string(&self) -> String {
        let len = self.coord_len();
        if len <= 128 {
            self.vertex_count().to_string()
        } else {
            format!("{}^{}", self.alphabet(), len)
        }
    }

    /// Vertex count as u64 if it passes the enumeration budget.
    pub fn vertex_count_checked(&self, budget: u64) -> Result<u64> {
        let len = self.coord_len();
        let over = || Error::Budget { count: self.vertex_count_string(), budget };
        if len > 64 {
            return Err(over());
        }
        let mut count: u128 = 1;
        for _ in 0..len {
            count = count.checked_mul(self.alphabet() as u128).ok_or_else(over)?;
            if count > budget as u128 {
                return Err(over());
            }
        }
        Ok(count as u64)
    }

    /// The graph eigenvalue indexed by i: (q-1)n - q·i, resp. 3(2m+n) - 4i.
    pub fn eigenvalue_at(&self, i: u128) -> BigInt {
        debug_assert!(i <= self.diameter());
        self.degree() - BigInt::from(self.alphabet()) * BigInt::from(i)
    }

    /// All distinct adjacency eigenvalues, strictly decreasing.
    pub fn graph_eigenvalues(&self) -> Result<Vec<BigInt>> {
        let d = self.diameter();
        if d >= LIST_CAP {
            return Err(Error::Budget {
                count: format!("{} candidate eigenvalues", d + 1),
                budget: LIST_CAP as u64,
            });
        }
        Ok((0..=d).map(|i| self.eigenvalue_at(i)).collect())
    }

    /// Membership test in the eigenvalue set, O(1) for any graph size.
    pub fn is_graph_eigenvalue(&self, lambda: &BigInt) -> bool {
        let deg = self.degree();
        let gap = &deg - lambda; // q·i for some 0 <= i <= diameter
        if gap.is_negative() {
            return false;
        }
        let q = BigInt::from(self.alphabet());
        let (i, rem) = gap.div_rem(&q);
        rem.is_zero() && i <= BigInt::from(self.diameter())
    }

    /// Intersection number b_i (neighbors one step further), 0 <= i < diameter.
    pub fn b_at(&self, i: u128) -> BigInt {
        assert!(i < self.diameter(), "b_i defined for i < diameter");
        BigInt::from(self.diameter() - i) * BigInt::from(self.alphabet() - 1)
    }

    /// Intersection number c_i (neighbors one step back), 1 <= i <= diameter.
    pub fn c_at(&self, i: u128) -> BigInt {
        assert!(i >= 1 && i <= self.diameter(), "c_i defined for 1 <= i <= diameter");
        BigInt::from(i)
    }

    /// Intersection number a_i (neighbors at the same distance).
    pub fn a_at(&self, i: u128) -> BigInt {
        assert!(i <= self.diameter());
        let b = if i < self.diameter() { self.b_at(i) } else { BigInt::zero() };
        let c = if i >= 1 { self.c_at(i) } else { BigInt::zero() };
        self.degree() - b - c
    }

    /// The full intersection array {b_0..b_{d-1}; c_1..c_d}.
    pub fn intersection_array(&self) -> Result<IntersectionArray> {
        let d = self.diameter();
        if d >= LIST_CAP {
            return Err(Error::Budget {
                count: format!("intersection array of length {d}"),
                budget: LIST_CAP as u64,
            });
        }
        Ok(IntersectionArray {
            b: (0..d).map(|i| self.b_at(i)).collect(),
            c: (1..=d).map(|i| self.c_at(i)).collect(),
        })
    }

    /// Checks shape and symbol range of a vertex.
    pub fn check_vertex(&self, v: &Vertex) -> Result<()> {
        let len = self.coord_len();
        if v.0.len() as u128 != len {
            return Err(Error::input(format!(
                "vertex has {} coordinates, graph {self} needs {len}",
                v.0.len()
            )));
        }
        let q = self.alphabet();
        if let Some(bad) = v.0.iter().find(|&&c| c >= q) {
            return Err(Error::input(format!("coordinate {bad} out of range for alphabet {q}")));
        }
        Ok(())
    }

    /// All neighbors of v, in a fixed coordinate-major order.
    pub fn neighbors(&self, v: &Vertex) -> Result<Vec<Vertex>> {
        self.check_vertex(v)?;
        let deg: u128 = match *self {
            GraphSpec::Hamming { n, q } => n * (q as u128 - 1),
            GraphSpec::Doob { m, n } => 6 * m + 3 * n,
        };
        if deg > NEIGHBOR_CAP {
            return Err(Error::Budget { count: format!("{deg} neighbors"), budget: NEIGHBOR_CAP as u64 });
        }
        let mut out = Vec::with_capacity(deg as usize);
        match *self {
            GraphSpec::Hamming { q, .. } => {
                for (i, &c) in v.0.iter().enumerate() {
                    for s in 0..q {
                        if s != c {
                            let mut w = v.0.clone();
                            w[i] = s;
                            out.push(Vertex(w));
                        }
                    }
                }
            }
            GraphSpec::Doob { m, .. } => {
                let m = m as usize;
                for p in 0..m {
                    for &(da, db) in &SHRIKHANDE_STEPS {
                        let mut w = v.0.clone();
                        w[2 * p] = (w[2 * p] + da) % 4;
                        w[2 * p + 1] = (w[2 * p + 1] + db) % 4;
                        out.push(Vertex(w));
                    }
                }
                for i in (2 * m)..v.0.len() {
                    for s in 0..4 {
                        if s != v.0[i] {
                            let mut w = v.0.clone();
                            w[i] = s;
                            out.push(Vertex(w));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Graph distance between two vertices.
    ///
    /// Hamming: number of differing coordinates. Doob: each Shrikhande pair
    /// contributes its Shrikhande distance (0, 1 if the difference lies in
    /// the connecting set, else 2), each K_4 coordinate 0 or 1.
    pub fn distance(&self, u: &Vertex, v: &Vertex) -> Result<u64> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let d = match *self {
            GraphSpec::Hamming { .. } => {
                u.0.iter().zip(&v.0).filter(|(a, b)| a != b).count() as u64
            }
            GraphSpec::Doob { m, .. } => {
                let m = m as usize;
                let mut d = 0u64;
                for p in 0..m {
                    d += shrikhande_distance(
                        diff_mod4(u.0[2 * p], v.0[2 * p]),
                        diff_mod4(u.0[2 * p + 1], v.0[2 * p + 1]),
                    );
                }
                d + u.0[2 * m..]
                    .iter()
                    .zip(&v.0[2 * m..])
                    .filter(|(a, b)| a != b)
                    .count() as u64
            }
        };
        Ok(d)
    }

    /// Iterator over all vertices in lexicographic order (leftmost coordinate
    /// most significant). Budget-checked.
    pub fn vertices(&self, budget: u64) -> Result<VertexIter> {
        let count = self.vertex_count_checked(budget)?;
        Ok(VertexIter { graph: *self, next: 0, count })
    }

    /// Rank of a vertex in the lexicographic enumeration.
    pub fn rank(&self, v: &Vertex, budget: u64) -> Result<u64> {
        self.check_vertex(v)?;
        self.vertex_count_checked(budget)?;
        let q = self.alphabet();
        Ok(v.0.iter().fold(0u64, |acc, &c| acc * q + c))
    }

    /// Inverse of [`rank`].
    pub fn vertex_at(&self, rank: u64, budget: u64) -> Result<Vertex> {
        let count = self.vertex_count_checked(budget)?;
        if rank >= count {
            return Err(Error::input(format!("rank {rank} out of range ({count} vertices)")));
        }
        let len = self.coord_len() as usize;
        let q = self.alphabet();
        let mut coords = vec![0u64; len];
        let mut r = rank;
        for i in (0..len).rev() {
            coords[i] = r % q;
            r /= q;
        }
        Ok(Vertex(coords))
    }

    /// Parses a vertex in the text format (see [`format_vertex`]).
    pub fn parse_vertex(&self, text: &str) -> Result<Vertex> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let q = self.alphabet();
        let parse_sym = |tok: &str| -> Result<u64> {
            tok.parse::<u64>()
                .map(|v| v % q)
                .map_err(|_| Error::input(format!("bad coordinate {tok:?}")))
        };
        match *self {
            GraphSpec::Hamming { n, .. } => {
                if tokens.len() as u128 != n {
                    return Err(Error::input(format!(
                        "expected {n} coordinates, got {}",
                        tokens.len()
                    )));
                }
                Ok(Vertex(tokens.iter().map(|t| parse_sym(t)).collect::<Result<_>>()?))
            }
            GraphSpec::Doob { m, n } => {
                if tokens.len() as u128 != m + n {
                    return Err(Error::input(format!(
                        "expected {m} pair tokens and {n} symbols, got {} tokens",
                        tokens.len()
                    )));
                }
                let mut coords = Vec::with_capacity(2 * m as usize + n as usize);
                for (idx, tok) in tokens.iter().enumerate() {
                    if (idx as u128) < m {
                        let (a, b) = tok.split_once(',').ok_or_else(|| {
                            Error::input(format!("pair token {tok:?} must look like a,b"))
                        })?;
                        coords.push(parse_sym(a)?);
                        coords.push(parse_sym(b)?);
                    } else {
                        if tok.contains(',') {
                            return Err(Error::input(format!(
                                "token {tok:?} is a pair but position {} is a K4 coordinate",
                                idx + 1
                            )));
                        }
                        coords.push(parse_sym(tok)?);
                    }
                }
                Ok(Vertex(coords))
            }
        }
    }

    /// Text form: symbols separated by spaces, Doob pairs as "a,b".
    pub fn format_vertex(&self, v: &Vertex) -> String {
        match *self {
            GraphSpec::Hamming { .. } => v
                .0
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" "),
            GraphSpec::Doob { m, .. } => {
                let m = m as usize;
                let mut parts = Vec::with_capacity(m + v.0.len() - 2 * m);
                for p in 0..m {
                    parts.push(format!("{},{}", v.0[2 * p], v.0[2 * p + 1]));
                }
                for c in &v.0[2 * m..] {
                    parts.push(c.to_string());
                }
                parts.join(" ")
            }
        }
    }

    /// Parses "hamming:n=4,q=2" or "doob:m=1,n=0".
    pub fn parse(text: &str) -> Result<Self> {
        let (family, params) = text
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::input(format!("graph spec {text:?} needs family:params")))?;
        let mut pairs = std::collections::BTreeMap::new();
        for item in params.split(',') {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::input(format!("bad parameter {item:?}")))?;
            let val: u128 = v
                .trim()
                .parse()
                .map_err(|_| Error::input(format!("bad value in {item:?}")))?;
            if pairs.insert(k.trim().to_string(), val).is_some() {
                return Err(Error::input(format!("duplicate parameter {k:?}")));
            }
        }
        let take = |pairs: &mut std::collections::BTreeMap<String, u128>, key: &str| {
            pairs
                .remove(key)
                .ok_or_else(|| Error::input(format!("graph spec {text:?} is missing {key}")))
        };
        let g = match family.trim() {
            "hamming" => {
                let n = take(&mut pairs, "n")?;
                let q = take(&mut pairs, "q")?;
                let q = u64::try_from(q).map_err(|_| Error::input("q too large"))?;
                GraphSpec::Hamming { n, q }
            }
            "doob" => {
                let m = take(&mut pairs, "m")?;
                let n = take(&mut pairs, "n")?;
                GraphSpec::Doob { m, n }
            }
            other => return Err(Error::input(format!("unknown graph family {other:?}"))),
        };
        if let Some(extra) = pairs.keys().next() {
            return Err(Error::input(format!("unknown parameter {extra:?}")));
        }
        g.validate()?;
        Ok(g)
    }
}

fn diff_mod4(a: u64, b: u64) -> u64 {
    (a + 4 - b) % 4
}

/// Distance in the Shrikhande graph between pairs differing by (da, db).
fn shrikhande_distance(da: u64, db: u64) -> u64 {
    if da == 0 && db == 0 {
        0
    } else if SHRIKHANDE_STEPS.contains(&(da, db)) {
        1
    } else {
        2
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GraphSpec::Hamming { n, q } => write!(f, "hamming:n={n},q={q}"),
            GraphSpec::Doob { m, n } => write!(f, "doob:m={m},n={n}"),
        }
    }
}

impl serde::Serialize for GraphSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for GraphSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        GraphSpec::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Intersection array of a distance-regular graph: b_i and c_i lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionArray {
    /// b_0 .. b_{d-1}
    pub b: Vec<BigInt>,
    /// c_1 .. c_d
    pub c: Vec<BigInt>,
}

impl IntersectionArray {
    pub fn diameter(&self) -> usize {
        self.c.len()
    }

    /// a_i = b_0 - b_i - c_i (with b_d = c_0 = 0).
    pub fn a_at(&self, i: usize) -> BigInt {
        let d = self.diameter();
        assert!(i <= d);
        let b_i = if i < d { self.b[i].clone() } else { BigInt::zero() };
        let c_i = if i >= 1 { self.c[i - 1].clone() } else { BigInt::zero() };
        &self.b[0] - b_i - c_i
    }
}

/// Lexicographic vertex enumeration.
pub struct VertexIter {
    graph: GraphSpec,
    next: u64,
    count: u64,
}

impl Iterator for VertexIter {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        if self.next >= self.count {
            return None;
        }
        let v = self
            .graph
            .vertex_at(self.next, u64::MAX)
            .expect("rank in range");
        self.next += 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.count - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for VertexIter {}

/// A small graph materialized for exhaustive work: rank arithmetic tables.
#[derive(Debug, Clone)]
pub(crate) struct Materialized {
    pub spec: GraphSpec,
    pub count: u64,
    pub len: usize,
    pub alpha: u64,
    pub strides: Vec<u64>,
    pub degree: usize,
}

impl Materialized {
    pub fn build(spec: &GraphSpec, budget: u64) -> Result<Self> {
        let count = spec.vertex_count_checked(budget)?;
        let len = spec.coord_len() as usize;
        let alpha = spec.alphabet();
        let mut strides = vec![1u64; len];
        for i in (0..len.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * alpha;
        }
        let degree = match *spec {
            GraphSpec::Hamming { n, q } => (n as usize) * (q as usize - 1),
            GraphSpec::Doob { m, n } => 6 * m as usize + 3 * n as usize,
        };
        Ok(Materialized { spec: *spec, count, len, alpha, strides, degree })
    }

    pub fn decode(&self, rank: u64) -> Vec<u64> {
        let mut coords = vec![0u64; self.len];
        let mut r = rank;
        for i in (0..self.len).rev() {
            coords[i] = r % self.alpha;
            r /= self.alpha;
        }
        coords
    }

    pub fn rank_of(&self, coords: &[u64]) -> u64 {
        coords.iter().fold(0u64, |acc, &c| acc * self.alpha + c)
    }

    /// Neighbor ranks of `rank`, appended to `out` (cleared first).
    pub fn neighbor_ranks(&self, rank: u64, out: &mut Vec<u64>) {
        out.clear();
        let coords = self.decode(rank);
        match self.spec {
            GraphSpec::Hamming { q, .. } => {
                for (i, &c) in coords.iter().enumerate() {
                    let base = rank - c * self.strides[i];
                    for s in 0..q {
                        if s != c {
                            out.push(base + s * self.strides[i]);
                        }
                    }
                }
            }
            GraphSpec::Doob { m, .. } => {
                let m = m as usize;
                for p in 0..m {
                    let (ia, ib) = (2 * p, 2 * p + 1);
                    let (a, b) = (coords[ia], coords[ib]);
                    let base = rank - a * self.strides[ia] - b * self.strides[ib];
                    for &(da, db) in &SHRIKHANDE_STEPS {
                        out.push(
                            base + ((a + da) % 4) * self.strides[ia]
                                + ((b + db) % 4) * self.strides[ib],
                        );
                    }
                }
                for i in (2 * m)..self.len {
                    let c = coords[i];
                    let base = rank - c * self.strides[i];
                    for s in 0..4 {
                        if s != c {
                            out.push(base + s * self.strides[i]);
                        }
                    }
                }
            }
        }
    }

    /// Full neighbor table, degree entries per vertex.
    pub fn neighbor_table(&self) -> Vec<u64> {
        let mut table = Vec::with_capacity(self.count as usize * self.degree);
        let mut buf = Vec::with_capacity(self.degree);
        for r in 0..self.count {
            self.neighbor_ranks(r, &mut buf);
            table.extend_from_slice(&buf);
        }
        table
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: u128, q: u64) -> GraphSpec {
        GraphSpec::hamming(n, q).unwrap()
    }

    fn d(m: u128, n: u128) -> GraphSpec {
        GraphSpec::doob(m, n).unwrap()
    }

    fn v(coords: &[u64]) -> Vertex {
        Vertex(coords.to_vec())
    }

    #[test]
    fn hamming_neighbors_match_by_hand() {
        let g = h(2, 3);
        let nbrs = g.neighbors(&v(&[0, 0])).unwrap();
        let expect: Vec<Vertex> = [[1, 0], [2, 0], [0, 1], [0, 2]].iter().map(|c| v(c)).collect();
        assert_eq!(nbrs.len(), 4);
        for e in &expect {
            assert!(nbrs.contains(e), "missing {e:?}");
        }
    }

    #[test]
    fn shrikhande_neighbors_are_the_connecting_set() {
        let g = d(1, 0);
        let nbrs = g.neighbors(&v(&[0, 0])).unwrap();
        let expect: Vec<Vertex> =
            [[0, 1], [1, 0], [0, 3], [3, 0], [1, 1], [3, 3]].iter().map(|c| v(c)).collect();
        assert_eq!(nbrs.len(), 6);
        for e in &expect {
            assert!(nbrs.contains(e), "missing {e:?}");
        }
    }

    #[test]
    fn distances_match_hand_computed_values() {
        assert_eq!(h(2, 3).distance(&v(&[0, 0]), &v(&[1, 2])).unwrap(), 2);
        assert_eq!(h(4, 2).distance(&v(&[0, 0, 0, 0]), &v(&[1, 1, 1, 1])).unwrap(), 4);
        // Shrikhande: difference (2,0) is outside the connecting set.
        assert_eq!(d(1, 0).distance(&v(&[0, 0]), &v(&[2, 0])).unwrap(), 2);
        // One Shrikhande step plus one K4 step.
        assert_eq!(d(1, 1).distance(&v(&[0, 0, 0]), &v(&[1, 1, 2])).unwrap(), 2);
    }

    #[test]
    fn vertex_counts_and_budget() {
        assert_eq!(h(4, 2).vertex_count_checked(1 << 24).unwrap(), 16);
        assert_eq!(d(1, 1).vertex_count_checked(1 << 24).unwrap(), 64);
        let err = h(40, 2).vertex_count_checked(1 << 24).unwrap_err();
        match err {
            Error::Budget { count, budget } => {
                assert_eq!(count, (1u128 << 40).to_string());
                assert_eq!(budget, 1 << 24);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn intersection_arrays() {
        let arr = h(4, 2).intersection_array().unwrap();
        assert_eq!(arr.b, (0..4).map(|i| BigInt::from(4 - i)).collect::<Vec<_>>());
        assert_eq!(arr.c, (1..=4).map(BigInt::from).collect::<Vec<_>>());
        // D(1,1) shares the array of H(3,4).
        let arr = d(1, 1).intersection_array().unwrap();
        let arr2 = h(3, 4).intersection_array().unwrap();
        assert_eq!(arr, arr2);
        assert_eq!(arr.b[0], BigInt::from(9));
        // a_i = i(q-2) for Hamming.
        assert_eq!(h(6, 4).a_at(2), BigInt::from(4));
        assert_eq!(h(5, 3).a_at(2), BigInt::from(2));
        assert_eq!(h(8, 2).a_at(2), BigInt::from(0));
    }

    #[test]
    fn eigenvalue_lists_and_membership() {
        let g = h(4, 2);
        let eigs = g.graph_eigenvalues().unwrap();
        assert_eq!(eigs, [4, 2, 0, -2, -4].map(BigInt::from).to_vec());
        let g = d(1, 1);
        assert_eq!(g.graph_eigenvalues().unwrap(), [9, 5, 1, -3].map(BigInt::from).to_vec());
        assert!(g.is_graph_eigenvalue(&BigInt::from(5)));
        assert!(!g.is_graph_eigenvalue(&BigInt::from(4)));
        assert!(!g.is_graph_eigenvalue(&BigInt::from(-7)));
        // Membership stays O(1) on graphs whose eigenvalue list cannot exist.
        let huge = h(1_743_392_201, 3);
        assert!(huge.is_graph_eigenvalue(&BigInt::from(1)));
        assert!(!huge.is_graph_eigenvalue(&BigInt::from(2)));
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["hamming:n=4,q=2", "doob:m=1,n=0", "hamming:n=1743392201,q=3"] {
            let g = GraphSpec::parse(s).unwrap();
            assert_eq!(g.to_string(), s);
        }
        assert!(GraphSpec::parse("hamming:n=0,q=2").is_err());
        assert!(GraphSpec::parse("hamming:n=2,q=1").is_err());
        assert!(GraphSpec::parse("doob:m=0,n=0").is_err());
        assert!(GraphSpec::parse("hamming:n=2").is_err());
        assert!(GraphSpec::parse("hamming:n=2,q=3,z=1").is_err());
        assert!(GraphSpec::parse("petersen:n=1").is_err());
    }

    #[test]
    fn vertex_text_round_trip_and_mod_reduction() {
        let g = h(3, 3);
        let parsed = g.parse_vertex("5 1 2").unwrap();
        assert_eq!(parsed, v(&[2, 1, 2]));
        assert_eq!(g.format_vertex(&parsed), "2 1 2");
        let g = d(1, 1);
        let parsed = g.parse_vertex("0,5 3").unwrap();
        assert_eq!(parsed, v(&[0, 1, 3]));
        assert_eq!(g.format_vertex(&parsed), "0,1 3");
        assert!(g.parse_vertex("0 1 3").is_err());
        assert!(h(2, 3).parse_vertex("1 2 0").is_err());
    }

    #[test]
    fn enumeration_is_lexicographic_and_ranks_invert() {
        let g = d(1, 1);
        let all: Vec<Vertex> = g.vertices(1 << 24).unwrap().collect();
        assert_eq!(all.len(), 64);
        assert_eq!(all[0], v(&[0, 0, 0]));
        assert_eq!(all[1], v(&[0, 0, 1]));
        assert_eq!(all[4], v(&[0, 1, 0]));
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        for (i, x) in all.iter().enumerate() {
            assert_eq!(g.rank(x, 1 << 24).unwrap(), i as u64);
            assert_eq!(&g.vertex_at(i as u64, 1 << 24).unwrap(), x);
        }
    }

    #[test]
    fn doob_without_shrikhande_part_is_quaternary_hamming() {
        let a = d(0, 2);
        let b = h(2, 4);
        assert_eq!(a.vertex_count_checked(100).unwrap(), b.vertex_count_checked(100).unwrap());
        assert_eq!(a.degree(), b.degree());
        assert_eq!(a.graph_eigenvalues().unwrap(), b.graph_eigenvalues().unwrap());
        for r in 0..16 {
            let va = a.vertex_at(r, 100).unwrap();
            let mut na: Vec<_> = a.neighbors(&va).unwrap();
            let mut nb: Vec<_> = b.neighbors(&va).unwrap();
            na.sort();
            nb.sort();
            assert_eq!(na, nb);
        }
    }

    #[test]
    fn materialized_neighbor_ranks_agree_with_neighbors() {
        for g in [h(3, 3), d(1, 1), h(4, 2)] {
            let mat = Materialized::build(&g, 1 << 24).unwrap();
            let mut buf = Vec::new();
            for r in 0..mat.count {
                let x = g.vertex_at(r, 1 << 24).unwrap();
                let mut expect: Vec<u64> = g
                    .neighbors(&x)
                    .unwrap()
                    .iter()
                    .map(|w| g.rank(w, 1 << 24).unwrap())
                    .collect();
                mat.neighbor_ranks(r, &mut buf);
                let mut got = buf.clone();
                expect.sort();
                got.sort();
                assert_eq!(expect, got, "graph {g} vertex {r}");
                assert_eq!(got.len(), mat.degree);
            }
        }
    }
}
