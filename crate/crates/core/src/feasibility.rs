//! Necessary-condition checks for perfect colorings with a given quotient
//! matrix, and scans over the admissible parameters of extended 1-perfect
//! codes.
//!
//! A check never errors out on an infeasible input: it returns Fail with a
//! witness. Errors are reserved for malformed inputs and for questions the
//! machinery genuinely cannot decide (under-determined class sizes).

use crate::codes::{
    admissible_extended_params, extended_quotient_matrix, ExtendedFamily, QuotientMatrix,
};
use crate::exact::ScaledRational;
use crate::graphs::GraphSpec;
use crate::spectra::{class_sizes, power_diagonals, quotient_spectrum};
use crate::spectra::{ClassSizeOutcome, SpectrumCheck, SpectrumInfo};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The checks, in the order they run and report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckName {
    SpectrumMembership,
    ClassSizes,
    MassNonnegativity,
    MassIntegrality,
    Parity,
    ShellCount,
}

impl CheckName {
    pub const ALL: [CheckName; 6] = [
        CheckName::SpectrumMembership,
        CheckName::ClassSizes,
        CheckName::MassNonnegativity,
        CheckName::MassIntegrality,
        CheckName::Parity,
        CheckName::ShellCount,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckName::SpectrumMembership => "spectrum_membership",
            CheckName::ClassSizes => "class_sizes",
            CheckName::MassNonnegativity => "mass_nonnegativity",
            CheckName::MassIntegrality => "mass_integrality",
            CheckName::Parity => "parity",
            CheckName::ShellCount => "shell_count",
        }
    }
}

impl std::fmt::Display for CheckName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail { witness: String },
    NotApplicable { reason: String },
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: CheckName,
    pub verdict: Verdict,
}

/// Mass of the indicator of one color class on one eigenspace.
#[derive(Debug, Clone)]
pub struct MassEntry {
    pub eigenvalue: BigInt,
    pub mass: ScaledRational,
    pub mass_times_v: ScaledRational,
}

/// The eigenspace masses of one color class, over the non-principal
/// eigenvalues of the quotient matrix.
#[derive(Debug, Clone)]
pub struct ColorMassReport {
    pub color: usize,
    pub entries: Vec<MassEntry>,
}

/// Codeword and neighbor counts seen from a vertex of the last class,
/// written w<color>_<distance>. Only defined for extended-shape matrices.
#[derive(Debug, Clone)]
pub struct ShellTable {
    /// Multiplier applied to w0_2 in the w0_3 recurrence.
    pub coefficient: BigInt,
    pub w1_1: BigInt,
    pub w2_1: BigInt,
    pub w0_2: BigRational,
    pub w1_2: BigRational,
    pub w0_3: BigRational,
}

/// Everything the analysis of one (graph, matrix) pair produced.
#[derive(Debug, Clone)]
pub struct FeasibilityReport {
    pub graph: GraphSpec,
    pub matrix: QuotientMatrix,
    pub spectrum: Option<SpectrumInfo>,
    pub class_sizes: Option<Vec<ScaledRational>>,
    pub colors: Vec<ColorMassReport>,
    pub checks: Vec<CheckResult>,
    pub shell: Option<ShellTable>,
}

impl FeasibilityReport {
    /// True when no check failed (passes and not-applicables only).
    pub fn feasible(&self) -> bool {
        self.checks.iter().all(|c| !c.verdict.is_fail())
    }

    pub fn first_fail(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.verdict.is_fail())
    }

    pub fn check(&self, name: CheckName) -> &CheckResult {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .expect("every report carries all checks")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rational = |r: &BigRational| {
            if r.is_integer() {
                r.to_integer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        };
        let checks: Vec<serde_json::Value> = self
            .checks
            .iter()
            .map(|c| match &c.verdict {
                Verdict::Pass => serde_json::json!({"name": c.name.as_str(), "verdict": "pass"}),
                Verdict::Fail { witness } => serde_json::json!({
                    "name": c.name.as_str(), "verdict": "fail", "witness": witness
                }),
                Verdict::NotApplicable { reason } => serde_json::json!({
                    "name": c.name.as_str(), "verdict": "not_applicable", "reason": reason
                }),
            })
            .collect();
        let colors: Vec<serde_json::Value> = self
            .colors
            .iter()
            .map(|c| {
                let entries: Vec<serde_json::Value> = c
                    .entries
                    .iter()
                    .map(|e| {
                        serde_json::json!({
                            "eigenvalue": e.eigenvalue.to_string(),
                            "mass": e.mass.to_string(),
                            "mass_times_v": e.mass_times_v.to_string(),
                        })
                    })
                    .collect();
                serde_json::json!({"color": c.color, "masses": entries})
            })
            .collect();
        serde_json::json!({
            "graph": self.graph.to_string(),
            "matrix": self.matrix.to_json(),
            "spectrum": self.spectrum.as_ref().map(|s| s.to_json()),
            "class_sizes": self
                .class_sizes
                .as_ref()
                .map(|s| s.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            "colors": colors,
            "checks": checks,
            "shell": self.shell.as_ref().map(|t| serde_json::json!({
                "coefficient": t.coefficient.to_string(),
                "w1_1": t.w1_1.to_string(),
                "w2_1": t.w2_1.to_string(),
                "w0_2": rational(&t.w0_2),
                "w1_2": rational(&t.w1_2),
                "w0_3": rational(&t.w0_3),
            })),
            "feasible": self.feasible(),
        })
    }
}

impl std::fmt::Display for FeasibilityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "graph: {}", self.graph)?;
        writeln!(f, "matrix:")?;
        writeln!(f, "{}", self.matrix)?;
        if let Some(s) = &self.spectrum {
            writeln!(f, "spectrum: {s}")?;
        }
        if let Some(sizes) = &self.class_sizes {
            let strings: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
            writeln!(f, "class sizes: {}", strings.join(", "))?;
        }
        for color in &self.colors {
            writeln!(f, "color {} eigenspace masses:", color.color)?;
            for e in &color.entries {
                writeln!(
                    f,
                    "  lambda = {}: a = {}, a*|V| = {}",
                    e.eigenvalue, e.mass, e.mass_times_v
                )?;
            }
        }
        if let Some(t) = &self.shell {
            writeln!(f, "shell counts (coefficient {}):", t.coefficient)?;
            writeln!(f, "  w1_1 = {}, w2_1 = {}", t.w1_1, t.w2_1)?;
            writeln!(f, "  w0_2 = {}, w1_2 = {}, w0_3 = {}", t.w0_2, t.w1_2, t.w0_3)?;
        }
        writeln!(f, "checks:")?;
        for c in &self.checks {
            match &c.verdict {
                Verdict::Pass => writeln!(f, "  {:<20} pass", c.name.as_str())?,
                Verdict::Fail { witness } => {
                    writeln!(f, "  {:<20} FAIL: {witness}", c.name.as_str())?
                }
                Verdict::NotApplicable { reason } => {
                    writeln!(f, "  {:<20} not applicable ({reason})", c.name.as_str())?
                }
            }
        }
        write!(f, "feasible: {}", if self.feasible() { "yes" } else { "no" })
    }
}

/// Runs the full check pipeline on a quotient matrix candidate.
///
/// `color` restricts the mass checks to a single class (all classes when
/// None); `shell_coefficient` overrides the w0_2 multiplier in the shell
/// recurrence (the graph's own a_2 when None).
pub fn analyze(
    graph: &GraphSpec,
    matrix: &QuotientMatrix,
    color: Option<usize>,
    shell_coefficient: Option<BigInt>,
) -> Result<FeasibilityReport> {
    graph.validate()?;
    let k = matrix.k();
    if let Some(c) = color {
        if c >= k {
            return Err(Error::input(format!("color {c} out of range 0..{k}")));
        }
    }

    let (spectrum, spectrum_verdict) = match quotient_spectrum(graph, matrix)? {
        SpectrumCheck::Splits(info) => (Some(info), Verdict::Pass),
        SpectrumCheck::Violation { detail } => (None, Verdict::Fail { witness: detail }),
    };

    let (sizes, sizes_verdict) = match class_sizes(graph, matrix)? {
        ClassSizeOutcome::Sizes(s) => (Some(s), Verdict::Pass),
        ClassSizeOutcome::Infeasible { witness } => (None, Verdict::Fail { witness }),
    };

    let mut colors = Vec::new();
    let (nonneg_verdict, integrality_verdict) = match (&spectrum, &sizes) {
        (Some(info), Some(sizes)) => {
            let selected: Vec<usize> = match color {
                Some(c) => vec![c],
                None => (0..k).collect(),
            };
            let mut nonneg = Verdict::Pass;
            let mut integral = integrality_applies(graph);
            for c in selected {
                let report = eigenspace_masses(graph, matrix, info, sizes, c)?;
                for e in &report.entries {
                    if e.mass.is_negative() {
                        if !nonneg.is_fail() {
                            nonneg = Verdict::Fail {
                                witness: format!(
                                    "color {c}: mass at eigenvalue {} is {}",
                                    e.eigenvalue, e.mass
                                ),
                            };
                        }
                    }
                    if integral == Verdict::Pass && !e.mass_times_v.is_integer() {
                        integral = Verdict::Fail {
                            witness: format!(
                                "color {c}: mass at eigenvalue {} times |V| is {}, not an integer",
                                e.eigenvalue, e.mass_times_v
                            ),
                        };
                    }
                }
                colors.push(report);
            }
            (nonneg, integral)
        }
        _ => {
            let reason = if spectrum.is_none() {
                "needs the quotient spectrum".to_string()
            } else {
                "needs the class sizes".to_string()
            };
            (
                Verdict::NotApplicable { reason: reason.clone() },
                Verdict::NotApplicable { reason },
            )
        }
    };

    let parity_verdict = parity_check(matrix);
    let (shell, shell_verdict) =
        shell_count_check(graph, matrix, &parity_verdict, shell_coefficient);

    let checks = vec![
        CheckResult { name: CheckName::SpectrumMembership, verdict: spectrum_verdict },
        CheckResult { name: CheckName::ClassSizes, verdict: sizes_verdict },
        CheckResult { name: CheckName::MassNonnegativity, verdict: nonneg_verdict },
        CheckResult { name: CheckName::MassIntegrality, verdict: integrality_verdict },
        CheckResult { name: CheckName::Parity, verdict: parity_verdict },
        CheckResult { name: CheckName::ShellCount, verdict: shell_verdict },
    ];

    Ok(FeasibilityReport {
        graph: *graph,
        matrix: matrix.clone(),
        spectrum,
        class_sizes: sizes,
        colors,
        checks,
        shell,
    })
}

/// Whether integrality of mass * |V| is guaranteed for this graph.
fn integrality_applies(graph: &GraphSpec) -> Verdict {
    match graph {
        GraphSpec::Doob { .. } => Verdict::Pass,
        GraphSpec::Hamming { q, .. } if (2..=4).contains(q) => Verdict::Pass,
        GraphSpec::Hamming { q, .. } => Verdict::NotApplicable {
            reason: format!("masses are only known to be integral times |V| for q in 2..=4, not q = {q}"),
        },
    }
}

/// Solves the moment equations for the eigenspace masses of one color.
///
/// For each power t, summing (S^t)_ii over a color class counts closed walks,
/// which Fourier analysis splits over the eigenspaces:
///   sum_j a_j lambda_j^t = |f_i| (S^t)_ii - (|f_i|^2/|V|) lambda_0^t,
/// where j runs over the non-principal distinct eigenvalues of S and a_j is
/// |V| times the mass of the indicator on the lambda_j eigenspace. Distinct
/// nodes make the system a Vandermonde solve.
fn eigenspace_masses(
    graph: &GraphSpec,
    matrix: &QuotientMatrix,
    spectrum: &SpectrumInfo,
    sizes: &[ScaledRational],
    color: usize,
) -> Result<ColorMassReport> {
    let degree = graph.degree();
    let lambdas: Vec<BigInt> = spectrum
        .eigenvalues
        .iter()
        .filter(|l| **l != degree)
        .cloned()
        .collect();
    let l = lambdas.len();
    let base = graph.alphabet();
    let coord_exp = BigInt::from(graph.coord_len());
    if l == 0 {
        return Ok(ColorMassReport { color, entries: Vec::new() });
    }

    let diag = power_diagonals(matrix, l - 1);
    let size = &sizes[color];
    let size_sq_over_v = size.mul(size).shift_exp(&-&coord_exp);
    let mut rhs = Vec::with_capacity(l);
    let mut lambda0_pow = BigInt::one();
    for t in 0..l {
        let walks = size.mul_int(&diag[t][color]);
        let principal = size_sq_over_v.mul_int(&lambda0_pow);
        rhs.push(walks.checked_sub(&principal)?);
        lambda0_pow *= &degree;
    }

    let masses = solve_vandermonde(base, &lambdas, &rhs)?;

    // Re-substitute as a self-check on the exact solver.
    for (t, want) in rhs.iter().enumerate() {
        let mut acc = ScaledRational::zero(base);
        for (j, lambda) in lambdas.iter().enumerate() {
            acc = acc.checked_add(&masses[j].mul_int(&lambda.pow(t as u32)))?;
        }
        if acc.cmp_value(want) != std::cmp::Ordering::Equal {
            return Err(Error::internal(format!(
                "mass system residual at power {t} for color {color}"
            )));
        }
    }

    let entries = lambdas
        .into_iter()
        .zip(masses)
        .map(|(eigenvalue, mass)| {
            let mass_times_v = mass.shift_exp(&coord_exp);
            MassEntry { eigenvalue, mass, mass_times_v }
        })
        .collect();
    Ok(ColorMassReport { color, entries })
}

/// Gaussian elimination on the Vandermonde system V[t][j] = lambda_j^t.
fn solve_vandermonde(
    base: u64,
    lambdas: &[BigInt],
    rhs: &[ScaledRational],
) -> Result<Vec<ScaledRational>> {
    let l = lambdas.len();
    let mut aug: Vec<Vec<ScaledRational>> = Vec::with_capacity(l);
    for t in 0..l {
        let mut row: Vec<ScaledRational> = lambdas
            .iter()
            .map(|lam| ScaledRational::from_int(base, lam.pow(t as u32)))
            .collect();
        row.push(rhs[t].clone());
        aug.push(row);
    }
    for col in 0..l {
        let pivot = (col..l)
            .find(|&r| !aug[r][col].is_zero())
            .ok_or_else(|| Error::internal("singular moment system despite distinct eigenvalues"))?;
        aug.swap(col, pivot);
        for r in (col + 1)..l {
            if aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].div(&aug[col][col])?;
            for c in col..=l {
                let sub = factor.mul(&aug[col][c]);
                aug[r][c] = aug[r][c].checked_sub(&sub)?;
            }
        }
    }
    let mut solution = vec![ScaledRational::zero(base); l];
    for row in (0..l).rev() {
        let mut acc = aug[row][l].clone();
        for c in (row + 1)..l {
            acc = acc.checked_sub(&aug[row][c].mul(&solution[c]))?;
        }
        solution[row] = acc.div(&aug[row][row])?;
    }
    Ok(solution)
}

/// Extended-shape matrices need an even s_21: the distance-1 vertices seen
/// from a distance-2 vertex pair up through shared codewords.
fn parity_check(matrix: &QuotientMatrix) -> Verdict {
    if !matrix.has_extended_shape() {
        return Verdict::NotApplicable {
            reason: "matrix is not shaped like an extended-perfect quotient".to_string(),
        };
    }
    let s21 = matrix.get(2, 1);
    if (s21 % BigInt::from(2u8)).is_zero() {
        Verdict::Pass
    } else {
        Verdict::Fail { witness: format!("s_21 = {s21} is odd, but these neighbors come in pairs") }
    }
}

/// Counts codewords and distance-1 vertices around a vertex of the last
/// class, three steps out. Each derived count must be a non-negative integer.
fn shell_count_check(
    graph: &GraphSpec,
    matrix: &QuotientMatrix,
    parity: &Verdict,
    coefficient: Option<BigInt>,
) -> (Option<ShellTable>, Verdict) {
    match parity {
        Verdict::NotApplicable { reason } => {
            return (None, Verdict::NotApplicable { reason: reason.clone() })
        }
        Verdict::Fail { .. } => {
            return (
                None,
                Verdict::NotApplicable { reason: "needs the parity check to pass".to_string() },
            )
        }
        Verdict::Pass => {}
    }
    if graph.diameter() < 3 {
        return (
            None,
            Verdict::NotApplicable {
                reason: format!("graph diameter {} is less than 3", graph.diameter()),
            },
        );
    }
    let coefficient = coefficient.unwrap_or_else(|| graph.a_at(2));
    let rat = |b: &BigInt| BigRational::from(b.clone());
    let s10 = matrix.get(1, 0);
    let s11 = matrix.get(1, 1);
    let s21 = matrix.get(2, 1);
    let s22 = matrix.get(2, 2);
    let a1 = graph.a_at(1);
    let c2 = graph.c_at(2);
    let c3 = graph.c_at(3);

    let w1_1 = s21.clone();
    let w2_1 = s22.clone();
    let w0_2 = rat(&(s21 * s10)) / rat(&c2);
    let walks_to_shell1 = rat(&(&w1_1 * s11 + &w2_1 * s21 - &a1 * &w1_1));
    let w1_2 = walks_to_shell1 / rat(&c2);
    let w0_3 = (&w1_2 * rat(s10) - rat(&coefficient) * &w0_2) / rat(&c3);

    let table = ShellTable { coefficient, w1_1, w2_1, w0_2, w1_2, w0_3 };
    let verdict = check_count("w1_2", &table.w1_2)
        .or_else(|| check_count("w0_3", &table.w0_3))
        .map_or(Verdict::Pass, |witness| Verdict::Fail { witness });
    (Some(table), verdict)
}

fn check_count(name: &str, value: &BigRational) -> Option<String> {
    if !value.is_integer() {
        Some(format!("{name} = {value} is not an integer"))
    } else if value.is_negative() {
        Some(format!("{name} = {value} is negative"))
    } else {
        None
    }
}

/// Families with a closed form for the deepest eigenspace mass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedMassFamily {
    Ternary,
    Doob,
}

/// The mass at the most negative eigenvalue of the extended quotient matrix,
/// times |V|, for the code class itself:
///   ternary: 3^(2n-l-3) * 8 / (3^(l-1) + 1) with n = (3^l+1)/2,
///   doob:    4^(2N-l-3) * 27 / (4^(l-1) + 2) with N = (4^l+2)/3.
/// Whether this is an integer decides the integrality check in closed form.
pub fn extended_mass_closed_form(family: ClosedMassFamily, l: u32) -> Result<ScaledRational> {
    if l == 0 {
        return Err(Error::input("parameter l must be at least 1"));
    }
    let (base, numerator, denominator, length): (u64, BigInt, BigInt, u128) = match family {
        ClosedMassFamily::Ternary => {
            let params = admissible_extended_params(ExtendedFamily::Hamming { q: 3 }, l)?
                .ok_or_else(|| Error::internal("ternary lengths are always integral"))?;
            let den = BigInt::from(3u8).pow(l - 1) + BigInt::one();
            (3, BigInt::from(8u8), den, params.length)
        }
        ClosedMassFamily::Doob => {
            let params = admissible_extended_params(ExtendedFamily::Doob, l)?
                .ok_or_else(|| Error::internal("doob lengths are always integral"))?;
            let den = BigInt::from(4u8).pow(l - 1) + BigInt::from(2u8);
            (4, BigInt::from(27u8), den, params.length)
        }
    };
    let exp = BigInt::from(2u8) * BigInt::from(length) - BigInt::from(l) - BigInt::from(3u8);
    Ok(ScaledRational::power_of_base(base, exp)
        .mul_int(&numerator)
        .div(&ScaledRational::from_int(base, denominator))?)
}

/// One row of a parameter scan.
#[derive(Debug, Clone)]
pub struct ScanRow {
    pub l: u32,
    /// Word length (n, or 2m+n for Doob).
    pub length: u128,
    /// Representative graph the analysis ran on.
    pub graph: GraphSpec,
    /// |C| as a power of the alphabet, rendered exactly.
    pub cardinality: String,
    pub report: FeasibilityReport,
}

impl ScanRow {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "l": self.l,
            "length": self.length.to_string(),
            "graph": self.graph.to_string(),
            "cardinality": self.cardinality,
            "feasible": self.report.feasible(),
            "first_fail": self.report.first_fail().map(|c| c.name.as_str()),
            "report": self.report.to_json(),
        })
    }
}

/// Analyzes the extended quotient matrix for every admissible parameter up
/// to l_max. Doob families are represented by D(N/2, 0); the checks depend
/// only on 2m+n.
pub fn scan_extended(
    family: ExtendedFamily,
    l_max: u32,
    shell_coefficient: Option<BigInt>,
) -> Result<Vec<ScanRow>> {
    let mut rows = Vec::new();
    for l in 1..=l_max {
        let Some(params) = admissible_extended_params(family, l)? else {
            continue;
        };
        let graph = match family {
            ExtendedFamily::Hamming { q } => GraphSpec::hamming(params.length, q)?,
            ExtendedFamily::Doob => GraphSpec::doob(params.length / 2, 0)?,
        };
        let matrix = extended_quotient_matrix(&graph)?;
        let report = analyze(&graph, &matrix, None, shell_coefficient.clone())?;
        let cardinality = ScaledRational::power_of_base(
            family.alphabet(),
            BigInt::from(params.cardinality_exp),
        )
        .to_string();
        rows.push(ScanRow { l, length: params.length, graph, cardinality, report });
    }
    Ok(rows)
}
