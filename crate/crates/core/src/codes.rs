//! Codes (vertex subsets), colorings, and quotient matrices.
//!
//! A coloring f: V -> {0..k-1} is *perfect* (an equitable partition) when the
//! number of color-j neighbors of a vertex depends only on its own color;
//! those counts form the quotient matrix S = (s_ij). A code C is *completely
//! regular* when its distance coloring (colors = distances to C) is perfect;
//! the matrix is then tridiagonal. 1-perfect codes meet every radius-1 ball
//! exactly once; extended 1-perfect codes have minimum distance 4 and project
//! onto 1-perfect codes when a coordinate is punctured.

use crate::graphs::{GraphSpec, Materialized, Vertex};
use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

/// Color-by-color neighbor counts of a perfect coloring (k x k, non-negative).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMatrix {
    k: usize,
    entries: Vec<BigInt>,
}

impl QuotientMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let k = rows.len();
        if k == 0 {
            return Err(Error::input("quotient matrix must have at least one row"));
        }
        let mut entries = Vec::with_capacity(k * k);
        for row in &rows {
            if row.len() != k {
                return Err(Error::input(format!(
                    "quotient matrix must be square: {k} rows but a row of length {}",
                    row.len()
                )));
            }
            for e in row {
                if e.is_negative() {
                    return Err(Error::input(format!("negative quotient entry {e}")));
                }
                entries.push(e.clone());
            }
        }
        Ok(QuotientMatrix { k, entries })
    }

    pub fn from_u64_rows(rows: &[Vec<u64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&e| BigInt::from(e)).collect())
                .collect(),
        )
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.k + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.k..(i + 1) * self.k]
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        (0..self.k).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn is_tridiagonal(&self) -> bool {
        (0..self.k).all(|i| {
            (0..self.k).all(|j| i.abs_diff(j) <= 1 || self.get(i, j).is_zero())
        })
    }

    /// True for 3-color matrices shaped like an extended-perfect quotient:
    /// s00 = s02 = s20 = 0 and s10 = 1.
    pub fn has_extended_shape(&self) -> bool {
        self.k == 3
            && self.get(0, 0).is_zero()
            && self.get(0, 2).is_zero()
            && self.get(2, 0).is_zero()
            && self.get(1, 0).is_one()
    }

    /// The tridiagonal quotient of a distance coloring of a single vertex:
    /// sub-diagonal c_i, diagonal a_i, super-diagonal b_i.
    pub fn from_intersection_array(arr: &crate::graphs::IntersectionArray) -> Self {
        let d = arr.diameter();
        let k = d + 1;
        let mut entries = vec![BigInt::zero(); k * k];
        for i in 0..k {
            if i >= 1 {
                entries[i * k + i - 1] = arr.c[i - 1].clone();
            }
            entries[i * k + i] = arr.a_at(i);
            if i < d {
                entries[i * k + i + 1] = arr.b[i].clone();
            }
        }
        QuotientMatrix { k, entries }
    }

    /// Parses the JSON form {"k": 3, "rows": [[0,4,0],...]}. Entries may be
    /// JSON integers or decimal strings (for values past 2^64).
    pub fn from_json(text: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::input(format!("bad matrix JSON: {e}")))?;
        let obj = v.as_object().ok_or_else(|| Error::input("matrix JSON must be an object"))?;
        let k = obj
            .get("k")
            .and_then(|k| k.as_u64())
            .ok_or_else(|| Error::input("matrix JSON needs an integer field \"k\""))?
            as usize;
        let rows_v = obj
            .get("rows")
            .and_then(|r| r.as_array())
            .ok_or_else(|| Error::input("matrix JSON needs an array field \"rows\""))?;
        if rows_v.len() != k {
            return Err(Error::input(format!("expected {k} rows, got {}", rows_v.len())));
        }
        let mut rows = Vec::with_capacity(k);
        for row_v in rows_v {
            let row_v = row_v
                .as_array()
                .ok_or_else(|| Error::input("each matrix row must be an array"))?;
            let mut row = Vec::with_capacity(k);
            for e in row_v {
                let val = match e {
                    serde_json::Value::Number(n) => n
                        .as_u64()
                        .map(BigInt::from)
                        .ok_or_else(|| Error::input(format!("entry {n} is not a non-negative integer"))),
                    serde_json::Value::String(s) => s
                        .parse::<BigInt>()
                        .map_err(|_| Error::input(format!("entry {s:?} is not an integer"))),
                    other => Err(Error::input(format!("entry {other} is not an integer"))),
                }?;
                row.push(val);
            }
            rows.push(row);
        }
        QuotientMatrix::new(rows)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = (0..self.k)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|e| match e.to_u64() {
                        Some(small) => serde_json::Value::from(small),
                        None => serde_json::Value::from(e.to_string()),
                    })
                    .collect()
            })
            .collect();
        serde_json::json!({ "k": self.k, "rows": rows })
    }
}

impl fmt::Display for QuotientMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strings: Vec<Vec<String>> = (0..self.k)
            .map(|i| self.row(i).iter().map(|e| e.to_string()).collect())
            .collect();
        let widths: Vec<usize> = (0..self.k)
            .map(|j| strings.iter().map(|r| r[j].len()).max().unwrap_or(1))
            .collect();
        for (i, row) in strings.iter().enumerate() {
            write!(f, "[")?;
            for (j, s) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{s:>w$}", w = widths[j])?;
            }
            write!(f, "]")?;
            if i + 1 < self.k {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for QuotientMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Minimum pairwise distance; singletons have no pairs and report Infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeDistance {
    Finite(u64),
    Infinite,
}

impl CodeDistance {
    fn satisfies_exactly_four(self) -> bool {
        matches!(self, CodeDistance::Finite(4) | CodeDistance::Infinite)
    }
}

impl fmt::Display for CodeDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeDistance::Finite(d) => write!(f, "{d}"),
            CodeDistance::Infinite => write!(f, "infinite"),
        }
    }
}

impl serde::Serialize for CodeDistance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CodeDistance::Finite(d) => s.serialize_u64(*d),
            CodeDistance::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// A nonempty set of distinct vertices of one graph.
#[derive(Debug, Clone)]
pub struct Code {
    graph: GraphSpec,
    words: Vec<Vertex>,
}

impl Code {
    pub fn new(graph: GraphSpec, mut words: Vec<Vertex>) -> Result<Self> {
        graph.validate()?;
        if words.is_empty() {
            return Err(Error::input("a code must contain at least one word"));
        }
        for w in &words {
            graph.check_vertex(w)?;
        }
        words.sort();
        if words.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input("code words must be distinct"));
        }
        Ok(Code { graph, words })
    }

    pub fn graph(&self) -> &GraphSpec {
        &self.graph
    }

    pub fn words(&self) -> &[Vertex] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the constructor rejects empty codes
    }

    /// Parses a code file: a graph spec line, then one vertex per line.
    pub fn parse_file(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let graph = GraphSpec::parse(
            lines.next().ok_or_else(|| Error::input("empty code file"))?,
        )?;
        let words: Vec<Vertex> = lines
            .map(|l| graph.parse_vertex(l))
            .collect::<Result<_>>()?;
        Code::new(graph, words)
    }

    pub fn format_file(&self) -> String {
        let mut out = format!("{}\n", self.graph);
        for w in &self.words {
            out.push_str(&self.graph.format_vertex(w));
            out.push('\n');
        }
        out
    }

    /// Minimum pairwise distance, exhaustive over word pairs.
    pub fn code_distance(&self) -> Result<CodeDistance> {
        let mut best: Option<u64> = None;
        for (i, u) in self.words.iter().enumerate() {
            for v in &self.words[i + 1..] {
                let d = self.graph.distance(u, v)?;
                best = Some(best.map_or(d, |b| b.min(d)));
            }
        }
        Ok(best.map_or(CodeDistance::Infinite, CodeDistance::Finite))
    }

    /// Distance from every vertex to the code, by multi-source breadth-first
    /// search over the whole graph. Index = vertex rank.
    fn distance_field(&self, budget: u64) -> Result<Vec<u8>> {
        let mat = Materialized::build(&self.graph, budget)?;
        let mut dist = vec![u8::MAX; mat.count as usize];
        let mut frontier: Vec<u64> = Vec::new();
        for w in &self.words {
            let r = mat.rank_of(&w.0);
            if dist[r as usize] == u8::MAX {
                dist[r as usize] = 0;
                frontier.push(r);
            }
        }
        let mut next = Vec::new();
        let mut buf = Vec::with_capacity(mat.degree);
        let mut level: u8 = 0;
        while !frontier.is_empty() {
            level += 1;
            next.clear();
            for &r in &frontier {
                mat.neighbor_ranks(r, &mut buf);
                for &nb in &buf {
                    if dist[nb as usize] == u8::MAX {
                        dist[nb as usize] = level;
                        next.push(nb);
                    }
                }
            }
            std::mem::swap(&mut frontier, &mut next);
        }
        Ok(dist)
    }

    /// Largest distance from any vertex to the code.
    pub fn covering_radius(&self, budget: u64) -> Result<u64> {
        let dist = self.distance_field(budget)?;
        Ok(dist.into_iter().max().unwrap_or(0) as u64)
    }

    /// The coloring sending each vertex to its distance from the code.
    pub fn distance_coloring(&self, budget: u64) -> Result<Coloring> {
        let dist = self.distance_field(budget)?;
        let k = dist.iter().copied().max().unwrap_or(0) as usize + 1;
        Ok(Coloring { graph: self.graph, colors: dist, k })
    }

    /// Removes coordinate `position` (1-based) from every word. For Doob
    /// graphs only the K_4 coordinates can be punctured. Projected words are
    /// de-duplicated.
    pub fn projection(&self, position: u128) -> Result<Code> {
        let (target, drop_index): (GraphSpec, usize) = match self.graph {
            GraphSpec::Hamming { n, q } => {
                if n < 2 {
                    return Err(Error::unsupported(
                        "projection needs a graph with at least two coordinates",
                    ));
                }
                if position < 1 || position > n {
                    return Err(Error::input(format!("position {position} out of 1..={n}")));
                }
                (GraphSpec::hamming(n - 1, q)?, (position - 1) as usize)
            }
            GraphSpec::Doob { m, n } => {
                if position < 1 || position > n {
                    return Err(Error::input(format!(
                        "doob projection punctures a K4 coordinate: position {position} out of 1..={n}"
                    )));
                }
                if m == 0 && n == 1 {
                    return Err(Error::unsupported(
                        "projection needs a graph with at least two coordinates",
                    ));
                }
                (GraphSpec::doob(m, n - 1)?, (2 * m + position - 1) as usize)
            }
        };
        let mut words: Vec<Vertex> = self
            .words
            .iter()
            .map(|w| {
                let mut c = w.0.clone();
                c.remove(drop_index);
                Vertex(c)
            })
            .collect();
        words.sort();
        words.dedup();
        Code::new(target, words)
    }

    /// True iff every radius-1 ball contains exactly one codeword.
    pub fn is_one_perfect(&self, budget: u64) -> Result<bool> {
        let mat = Materialized::build(&self.graph, budget)?;
        let members: HashSet<u64> = self.words.iter().map(|w| mat.rank_of(&w.0)).collect();
        let mut buf = Vec::with_capacity(mat.degree);
        for r in 0..mat.count {
            let mut hits = u64::from(members.contains(&r));
            mat.neighbor_ranks(r, &mut buf);
            for &nb in &buf {
                if members.contains(&nb) {
                    hits += 1;
                    if hits > 1 {
                        return Ok(false);
                    }
                }
            }
            if hits != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Extended 1-perfect test.
    ///
    /// With a coordinate available to puncture: minimum distance exactly 4
    /// (the infinite sentinel of singletons qualifies) and the projection at
    /// position 1 is 1-perfect. For D(m,0) there is no K_4 coordinate, so the
    /// parameter characterization is used instead: 2m = (4^l+2)/3 for some l,
    /// |C| = 4^(2m-l-1), and the same distance condition.
    pub fn is_extended_one_perfect(&self, budget: u64) -> Result<bool> {
        match self.graph {
            GraphSpec::Doob { m, n: 0 } => {
                let two_m = BigUint::from(2u8) * BigUint::from(m);
                let four = BigUint::from(4u8);
                let mut l = 1u32;
                let found = loop {
                    let num = four.pow(l) + BigUint::from(2u8);
                    let len = &num / BigUint::from(3u8);
                    if len > two_m {
                        break None;
                    }
                    if len == two_m && (&num % BigUint::from(3u8)).is_zero() {
                        break Some(l);
                    }
                    l += 1;
                };
                let Some(l) = found else { return Ok(false) };
                let exp = 2 * m as i128 - l as i128 - 1;
                if exp < 0 || exp > 200 {
                    return Ok(false);
                }
                let expect = four.pow(exp as u32);
                if BigUint::from(self.words.len()) != expect {
                    return Ok(false);
                }
                if self.words.len() == 1 {
                    return Ok(true);
                }
                Ok(self.code_distance()?.satisfies_exactly_four())
            }
            GraphSpec::Hamming { n, .. } if n < 2 => Ok(false),
            GraphSpec::Doob { m: 0, n } if n < 2 => Ok(false),
            _ => {
                if !self.code_distance()?.satisfies_exactly_four() {
                    return Ok(false);
                }
                self.projection(1)?.is_one_perfect(budget)
            }
        }
    }

    /// Distance coloring + perfectness check; Some(matrix) iff completely
    /// regular (the matrix is then tridiagonal).
    pub fn is_completely_regular(&self, budget: u64) -> Result<PerfectnessOutcome> {
        let coloring = self.distance_coloring(budget)?;
        let outcome = verify_perfect_coloring(&coloring, budget)?;
        if let PerfectnessOutcome::Perfect(m) = &outcome {
            debug_assert!(m.is_tridiagonal(), "distance colorings have tridiagonal quotients");
        }
        Ok(outcome)
    }
}

/// A total assignment of colors 0..k-1 to the vertices of a small graph.
#[derive(Debug, Clone)]
pub struct Coloring {
    graph: GraphSpec,
    /// Color of the vertex with each rank (lexicographic enumeration order).
    colors: Vec<u8>,
    k: usize,
}

impl Coloring {
    /// Builds from rank-indexed colors; colors must be surjective onto 0..k-1.
    pub fn from_ranks(graph: GraphSpec, colors: Vec<u8>, budget: u64) -> Result<Self> {
        let count = graph.vertex_count_checked(budget)?;
        if colors.len() as u64 != count {
            return Err(Error::input(format!(
                "coloring covers {} vertices, graph has {count}",
                colors.len()
            )));
        }
        let k = colors.iter().copied().max().map_or(0, |m| m as usize + 1);
        if k == 0 {
            return Err(Error::input("empty coloring"));
        }
        let mut seen = vec![false; k];
        for &c in &colors {
            seen[c as usize] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::input(format!(
                "colors must be surjective onto 0..{}: color {missing} unused",
                k - 1
            )));
        }
        Ok(Coloring { graph, colors, k })
    }

    pub fn graph(&self) -> &GraphSpec {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn color_of_rank(&self, rank: u64) -> u8 {
        self.colors[rank as usize]
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    /// Number of vertices of each color.
    pub fn class_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.k];
        for &c in &self.colors {
            counts[c as usize] += 1;
        }
        counts
    }

    /// Ranks of the vertices with the given color.
    pub fn class_ranks(&self, color: u8) -> Vec<u64> {
        self.colors
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == color)
            .map(|(r, _)| r as u64)
            .collect()
    }

    /// Parses a coloring file: graph spec line, then "vertex : color" lines
    /// covering every vertex exactly once.
    pub fn parse_file(text: &str, budget: u64) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let graph = GraphSpec::parse(
            lines.next().ok_or_else(|| Error::input("empty coloring file"))?,
        )?;
        let count = graph.vertex_count_checked(budget)?;
        let mut colors: Vec<Option<u8>> = vec![None; count as usize];
        for line in lines {
            let (vtx, col) = line
                .rsplit_once(':')
                .ok_or_else(|| Error::input(format!("line {line:?} needs \"vertex : color\"")))?;
            let vertex = graph.parse_vertex(vtx)?;
            let color: u8 = col
                .trim()
                .parse()
                .map_err(|_| Error::input(format!("bad color {:?}", col.trim())))?;
            let rank = graph.rank(&vertex, budget)? as usize;
            if colors[rank].is_some() {
                return Err(Error::input(format!(
                    "vertex {} colored twice",
                    graph.format_vertex(&vertex)
                )));
            }
            colors[rank] = Some(color);
        }
        let colors: Vec<u8> = colors
            .into_iter()
            .enumerate()
            .map(|(r, c)| {
                c.ok_or_else(|| {
                    let v = graph.vertex_at(r as u64, budget).expect("rank in range");
                    Error::input(format!("vertex {} has no color", graph.format_vertex(&v)))
                })
            })
            .collect::<Result<_>>()?;
        Coloring::from_ranks(graph, colors, budget)
    }

    pub fn format_file(&self) -> String {
        let mut out = format!("{}\n", self.graph);
        for (r, &c) in self.colors.iter().enumerate() {
            let v = self.graph.vertex_at(r as u64, u64::MAX).expect("rank in range");
            out.push_str(&format!("{} : {}\n", self.graph.format_vertex(&v), c));
        }
        out
    }
}

/// Outcome of a perfectness check.
#[derive(Debug, Clone)]
pub enum PerfectnessOutcome {
    Perfect(QuotientMatrix),
    NotPerfect(PerfectnessCounterexample),
}

impl PerfectnessOutcome {
    pub fn matrix(&self) -> Option<&QuotientMatrix> {
        match self {
            PerfectnessOutcome::Perfect(m) => Some(m),
            PerfectnessOutcome::NotPerfect(_) => None,
        }
    }
}

/// Two same-colored vertices whose neighbor color profiles differ.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PerfectnessCounterexample {
    pub color: u8,
    pub first_vertex: String,
    pub first_profile: Vec<u64>,
    pub second_vertex: String,
    pub second_profile: Vec<u64>,
}

/// Checks whether a coloring is perfect. Returns the quotient matrix, or the
/// first counterexample in enumeration order.
pub fn verify_perfect_coloring(
    coloring: &Coloring,
    budget: u64,
) -> Result<PerfectnessOutcome> {
    let mat = Materialized::build(coloring.graph(), budget)?;
    let k = coloring.k();
    let mut reference: Vec<Option<(u64, Vec<u64>)>> = vec![None; k];
    let mut buf = Vec::with_capacity(mat.degree);
    let mut profile = vec![0u64; k];
    for r in 0..mat.count {
        profile.iter_mut().for_each(|p| *p = 0);
        mat.neighbor_ranks(r, &mut buf);
        for &nb in &buf {
            profile[coloring.color_of_rank(nb) as usize] += 1;
        }
        let c = coloring.color_of_rank(r) as usize;
        match &reference[c] {
            None => reference[c] = Some((r, profile.clone())),
            Some((first, expect)) => {
                if *expect != profile {
                    let fmt_rank = |rank: u64| {
                        let v = coloring.graph().vertex_at(rank, budget).expect("rank in range");
                        coloring.graph().format_vertex(&v)
                    };
                    return Ok(PerfectnessOutcome::NotPerfect(PerfectnessCounterexample {
                        color: c as u8,
                        first_vertex: fmt_rank(*first),
                        first_profile: expect.clone(),
                        second_vertex: fmt_rank(r),
                        second_profile: profile.clone(),
                    }));
                }
            }
        }
    }
    let rows: Vec<Vec<BigInt>> = reference
        .into_iter()
        .map(|slot| {
            let (_, profile) = slot.expect("surjective coloring has every color");
            profile.into_iter().map(BigInt::from).collect()
        })
        .collect();
    Ok(PerfectnessOutcome::Perfect(QuotientMatrix::new(rows)?))
}

/// The quotient matrix an extended 1-perfect code's distance coloring must
/// have: rows index distance 0, 1, 2 from the code.
pub fn extended_quotient_matrix(graph: &GraphSpec) -> Result<QuotientMatrix> {
    if graph.diameter() < 2 {
        return Err(Error::unsupported(
            "extended quotient matrix needs diameter at least 2",
        ));
    }
    let rows = match *graph {
        GraphSpec::Hamming { n, q } => {
            let n = BigInt::from(n);
            let qm1 = BigInt::from(q - 1);
            let qm2 = BigInt::from(q) - BigInt::from(2u8);
            vec![
                vec![BigInt::zero(), &n * &qm1, BigInt::zero()],
                vec![BigInt::one(), qm2.clone(), (&n - BigInt::one()) * &qm1],
                vec![BigInt::zero(), n.clone(), &n * &qm2],
            ]
        }
        GraphSpec::Doob { m, n } => {
            let len = BigInt::from(2 * m + n); // 2m+n plays the role of n at q=4
            vec![
                vec![BigInt::zero(), BigInt::from(3u8) * &len, BigInt::zero()],
                vec![
                    BigInt::one(),
                    BigInt::from(2u8),
                    BigInt::from(3u8) * &len - BigInt::from(3u8),
                ],
                vec![BigInt::zero(), len.clone(), BigInt::from(2u8) * &len],
            ]
        }
    };
    QuotientMatrix::new(rows)
}

/// Code families admitting extended 1-perfect parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtendedFamily {
    /// H(n,q) with the given alphabet size.
    Hamming { q: u64 },
    /// D(m,n); the length parameter is 2m+n.
    Doob,
}

impl ExtendedFamily {
    pub fn alphabet(&self) -> u64 {
        match self {
            ExtendedFamily::Hamming { q } => *q,
            ExtendedFamily::Doob => 4,
        }
    }
}

/// Admissible parameters of an extended 1-perfect code at a given l.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedParams {
    /// Word length: n for Hamming, 2m+n for Doob.
    pub length: u128,
    /// |C| = q^cardinality_exp.
    pub cardinality_exp: u128,
}

/// length = (q^l + q - 2)/(q - 1) for Hamming (q=4 gives the Doob value
/// (4^l+2)/3), |C| = q^(length - l - 1). None when the division fails.
pub fn admissible_extended_params(family: ExtendedFamily, l: u32) -> Result<Option<ExtendedParams>> {
    if l == 0 {
        return Err(Error::input("parameter l must be at least 1"));
    }
    let q = family.alphabet() as u128;
    if q < 2 {
        return Err(Error::input("alphabet must be at least 2"));
    }
    let mut pow: u128 = 1;
    for _ in 0..l {
        pow = pow
            .checked_mul(q)
            .ok_or_else(|| Error::unsupported(format!("q^{l} overflows the supported range")))?;
    }
    let num = pow + q - 2;
    if num % (q - 1) != 0 {
        return Ok(None);
    }
    let length = num / (q - 1);
    if length < (l as u128) + 1 {
        return Ok(None);
    }
    Ok(Some(ExtendedParams { length, cardinality_exp: length - l as u128 - 1 }))
}

/// GF(4) multiplication on labels {0, 1, w=2, w2=3}; addition is XOR.
fn gf4_mul(a: u64, b: u64) -> u64 {
    const TABLE: [[u64; 4]; 4] = [
        [0, 0, 0, 0],
        [0, 1, 2, 3],
        [0, 2, 3, 1],
        [0, 3, 1, 2],
    ];
    TABLE[a as usize][b as usize]
}

/// A [6,3] code over GF(4) with minimum distance 4 (64 words in H(6,4)),
/// found by searching 3x3 parity blocks P and taking generator [I | P].
/// The search is deterministic (lexicographically first P); GF(4) labels map
/// to Z_4 symbols identically, which is harmless because Hamming adjacency
/// only compares symbols for equality.
pub fn hexacode() -> Code {
    static WORDS: OnceLock<Vec<Vertex>> = OnceLock::new();
    let words = WORDS.get_or_init(|| {
        // Every generator row e_i|P_i needs weight >= 4, so P has no zeros.
        let choices = [1u64, 2, 3];
        let mut block = [[0u64; 3]; 3];
        for idx in 0..choices.len().pow(9) {
            let mut t = idx;
            for i in 0..3 {
                for j in 0..3 {
                    block[i][j] = choices[t % 3];
                    t /= 3;
                }
            }
            if let Some(words) = codewords_if_distance_four(&block) {
                return words;
            }
        }
        unreachable!("some 3x3 parity block yields minimum distance 4");
    });
    Code::new(GraphSpec::Hamming { n: 6, q: 4 }, words.clone()).expect("valid by construction")
}

fn codewords_if_distance_four(block: &[[u64; 3]; 3]) -> Option<Vec<Vertex>> {
    let mut words = Vec::with_capacity(64);
    for u in 0u64..64 {
        let msg = [(u >> 4) & 3, (u >> 2) & 3, u & 3];
        let mut word = [0u64; 6];
        word[..3].copy_from_slice(&msg);
        for j in 0..3 {
            word[3 + j] = (0..3).fold(0, |acc, i| acc ^ gf4_mul(msg[i], block[i][j]));
        }
        let weight = word.iter().filter(|&&s| s != 0).count();
        if u != 0 && weight < 4 {
            return None;
        }
        words.push(Vertex(word.to_vec()));
    }
    Some(words)
}
