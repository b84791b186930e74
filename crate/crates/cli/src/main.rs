//! Command-line front end for the feasibility analyzer.

use clap::{Parser, Subcommand, ValueEnum};
use eqpart::codes::{
    extended_quotient_matrix, verify_perfect_coloring, Code, CodeDistance, Coloring,
    ExtendedFamily, PerfectnessOutcome, QuotientMatrix,
};
use eqpart::feasibility::{analyze, scan_extended, FeasibilityReport, ScanRow};
use eqpart::fourier::{eigenspace_masses, verify_all_eigenfunctions, ORACLE_VERTEX_CAP};
use eqpart::graphs::DEFAULT_ENUM_BUDGET;
use eqpart::{Error, GraphSpec};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::process::ExitCode;

/// Exit codes: 0 all checks pass, 1 a check failed, 2 bad input,
/// 3 enumeration budget exceeded.
const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "eqpart",
    version,
    about = "Feasibility checks for perfect colorings and completely regular codes \
             in Hamming and Doob graphs"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the necessary-condition checks on a quotient matrix candidate.
    Analyze {
        /// Graph, e.g. "hamming:n=4,q=2" or "doob:m=1,n=1".
        #[arg(long)]
        graph: String,
        /// Matrix as a JSON file path, or inline JSON starting with '{'.
        #[arg(long, required_unless_present = "extended", conflicts_with = "extended")]
        matrix: Option<String>,
        /// Use the extended-perfect quotient matrix of the graph.
        #[arg(long)]
        extended: bool,
        /// Restrict the mass checks to one color class.
        #[arg(long)]
        color: Option<usize>,
        /// Override the w0_2 multiplier in the shell recurrence.
        #[arg(long, value_parser = parse_bigint)]
        shell_coefficient: Option<BigInt>,
    },
    /// Check every admissible extended 1-perfect parameter up to l = LMAX.
    ScanExtended {
        #[arg(long, value_enum)]
        family: Family,
        /// Alphabet size; required for hamming, not allowed for doob.
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        lmax: u32,
        /// Override the w0_2 multiplier in the shell recurrence.
        #[arg(long, value_parser = parse_bigint)]
        shell_coefficient: Option<BigInt>,
    },
    /// Inspect a code file, optionally testing a specific property.
    VerifyCode {
        /// Code file: a graph line, then one vertex per line.
        #[arg(long)]
        file: String,
        /// Property to test; decides the exit code.
        #[arg(long, value_enum)]
        expect: Option<Expectation>,
    },
    /// Check that a coloring file is a perfect coloring and print its
    /// quotient matrix.
    VerifyColoring {
        /// Coloring file: a graph line, then "vertex : color" lines.
        #[arg(long)]
        file: String,
    },
    /// Brute-force character sums on a small graph, cross-checking the exact
    /// pipeline.
    Oracle {
        /// Verify that every character is an adjacency eigenfunction.
        #[arg(long, conflicts_with = "coloring", required_unless_present = "coloring")]
        graph: Option<String>,
        /// Compare character-sum masses of a perfect coloring against the
        /// moment-system masses.
        #[arg(long)]
        coloring: Option<String>,
        /// Restrict the comparison to one color class.
        #[arg(long, requires = "coloring")]
        color: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Hamming,
    Doob,
}

#[derive(Clone, Copy, ValueEnum)]
enum Expectation {
    /// Minimum distance 4 (or a singleton) projecting onto a 1-perfect code.
    ExtendedPerfect,
    /// Every radius-1 ball holds exactly one codeword.
    Perfect,
    /// The distance coloring is perfect.
    CompletelyRegular,
}

fn parse_bigint(s: &str) -> Result<BigInt, String> {
    s.parse::<BigInt>().map_err(|_| format!("{s:?} is not an integer"))
}

fn enumeration_budget() -> Result<u64, Error> {
    match std::env::var("EQPART_BUDGET") {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map_err(|_| Error::input(format!("EQPART_BUDGET={v:?} is not a vertex count"))),
        Err(_) => Ok(DEFAULT_ENUM_BUDGET),
    }
}

fn read_file(path: &str) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::input(format!("cannot read {path}: {e}")))
}

fn distance_json(d: CodeDistance) -> serde_json::Value {
    match d {
        CodeDistance::Finite(v) => serde_json::json!(v),
        CodeDistance::Infinite => serde_json::json!("infinite"),
    }
}

fn load_matrix(arg: &str) -> Result<QuotientMatrix, Error> {
    if arg.trim_start().starts_with('{') {
        QuotientMatrix::from_json(arg)
    } else {
        QuotientMatrix::from_json(&read_file(arg)?)
    }
}

fn main() -> ExitCode {
    // Die quietly when the reader closes the pipe, as `head` expects.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Budget { .. } => ExitCode::from(EXIT_BUDGET),
                _ => ExitCode::from(EXIT_INPUT),
            }
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Analyze { graph, matrix, extended, color, shell_coefficient } => {
            let graph = GraphSpec::parse(&graph)?;
            let matrix = if extended {
                extended_quotient_matrix(&graph)?
            } else {
                load_matrix(matrix.as_deref().expect("clap enforces the argument"))?
            };
            let report = analyze(&graph, &matrix, color, shell_coefficient)?;
            print_report(&report, cli.format);
            Ok(if report.feasible() { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::ScanExtended { family, q, lmax, shell_coefficient } => {
            let family = match (family, q) {
                (Family::Hamming, Some(q)) => ExtendedFamily::Hamming { q },
                (Family::Hamming, None) => {
                    return Err(Error::input("--family hamming needs --q"))
                }
                (Family::Doob, None) => ExtendedFamily::Doob,
                (Family::Doob, Some(_)) => {
                    return Err(Error::input("--family doob does not take --q"))
                }
            };
            let rows = scan_extended(family, lmax, shell_coefficient)?;
            print_scan(&rows, cli.format);
            Ok(EXIT_PASS)
        }
        Command::VerifyCode { file, expect } => verify_code(&file, expect, cli.format),
        Command::VerifyColoring { file } => verify_coloring(&file, cli.format),
        Command::Oracle { graph, coloring, color } => match (graph, coloring) {
            (Some(spec), None) => oracle_eigenfunctions(&spec, cli.format),
            (None, Some(path)) => oracle_masses(&path, color, cli.format),
            _ => unreachable!("clap enforces exactly one source"),
        },
    }
}

fn print_report(report: &FeasibilityReport, format: Format) {
    match format {
        Format::Text => println!("{report}"),
        Format::Json => print_json(&report.to_json()),
    }
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn print_scan(rows: &[ScanRow], format: Format) {
    match format {
        Format::Json => {
            let rows: Vec<serde_json::Value> = rows.iter().map(ScanRow::to_json).collect();
            print_json(&serde_json::json!({ "rows": rows }));
        }
        Format::Text => {
            println!("{:>3}  {:>24}  {:<28}  verdict", "l", "length", "cardinality");
            for row in rows {
                let verdict = match row.report.first_fail() {
                    None => "feasible".to_string(),
                    Some(check) => format!("fail: {}", check.name),
                };
                println!(
                    "{:>3}  {:>24}  {:<28}  {verdict}",
                    row.l, row.length, row.cardinality
                );
            }
        }
    }
}

fn verify_code(path: &str, expect: Option<Expectation>, format: Format) -> Result<u8, Error> {
    let code = Code::parse_file(&read_file(path)?)?;
    let budget = enumeration_budget()?;
    let distance = code.code_distance()?;

    if let Some(expect) = expect {
        let (label, holds) = match expect {
            Expectation::ExtendedPerfect => {
                ("extended-perfect", code.is_extended_one_perfect(budget)?)
            }
            Expectation::Perfect => ("perfect", code.is_one_perfect(budget)?),
            Expectation::CompletelyRegular => (
                "completely-regular",
                code.is_completely_regular(budget)?.matrix().is_some(),
            ),
        };
        match format {
            Format::Text => {
                println!("graph: {}", code.graph());
                println!("words: {}", code.len());
                println!("distance: {distance}");
                println!("{label}: {}", if holds { "yes" } else { "no" });
            }
            Format::Json => print_json(&serde_json::json!({
                "graph": code.graph().to_string(),
                "words": code.len(),
                "distance": distance_json(distance),
                "expect": label,
                "holds": holds,
            })),
        }
        return Ok(if holds { EXIT_PASS } else { EXIT_FAIL });
    }

    let radius = code.covering_radius(budget)?;
    let outcome = code.is_completely_regular(budget)?;
    let one_perfect = code.is_one_perfect(budget)?;
    let extended = code.is_extended_one_perfect(budget)?;

    // One entry per complete-graph coordinate: is the projection 1-perfect?
    let positions: u128 = match *code.graph() {
        GraphSpec::Hamming { n, .. } => {
            if n >= 2 {
                n
            } else {
                0
            }
        }
        GraphSpec::Doob { m, n } => {
            if m == 0 && n < 2 {
                0
            } else {
                n
            }
        }
    };
    let mut projections = Vec::new();
    for p in 1..=positions {
        projections.push((p, code.projection(p)?.is_one_perfect(budget)?));
    }

    match format {
        Format::Text => {
            println!("graph: {}", code.graph());
            println!("words: {}", code.len());
            println!("distance: {distance}");
            println!("covering radius: {radius}");
            println!("1-perfect: {}", if one_perfect { "yes" } else { "no" });
            println!("extended 1-perfect: {}", if extended { "yes" } else { "no" });
            for (p, perfect) in &projections {
                println!(
                    "projection at position {p}: {}",
                    if *perfect { "1-perfect" } else { "not 1-perfect" }
                );
            }
            match outcome.matrix() {
                Some(m) => println!("completely regular, quotient matrix:\n{m}"),
                None => println!("not completely regular"),
            }
        }
        Format::Json => {
            let projections: Vec<serde_json::Value> = projections
                .iter()
                .map(|(p, perfect)| {
                    serde_json::json!({"position": p.to_string(), "one_perfect": perfect})
                })
                .collect();
            print_json(&serde_json::json!({
                "graph": code.graph().to_string(),
                "words": code.len(),
                "distance": distance_json(distance),
                "covering_radius": radius,
                "one_perfect": one_perfect,
                "extended_one_perfect": extended,
                "projections": projections,
                "completely_regular": outcome.matrix().is_some(),
                "matrix": outcome.matrix().map(QuotientMatrix::to_json),
            }));
        }
    }
    Ok(EXIT_PASS)
}

fn verify_coloring(path: &str, format: Format) -> Result<u8, Error> {
    let budget = enumeration_budget()?;
    let coloring = Coloring::parse_file(&read_file(path)?, budget)?;
    let counts = coloring.class_counts();
    match verify_perfect_coloring(&coloring, budget)? {
        PerfectnessOutcome::Perfect(matrix) => {
            // A perfect coloring's matrix must clear every necessary
            // condition; running the pipeline on it doubles as a self-check.
            let report = analyze(coloring.graph(), &matrix, None, None)?;
            match format {
                Format::Text => {
                    println!("perfect coloring with {} colors", coloring.k());
                    let counts: Vec<String> = counts.iter().map(u64::to_string).collect();
                    println!("class sizes: {}", counts.join(", "));
                    println!("{report}");
                }
                Format::Json => print_json(&serde_json::json!({
                    "colors": coloring.k(),
                    "class_sizes": counts,
                    "perfect": true,
                    "report": report.to_json(),
                })),
            }
            Ok(if report.feasible() { EXIT_PASS } else { EXIT_FAIL })
        }
        PerfectnessOutcome::NotPerfect(ce) => {
            match format {
                Format::Text => {
                    println!("graph: {}", coloring.graph());
                    println!("not perfect: color {} has differing neighbor profiles", ce.color);
                    println!("  {} sees {:?}", ce.first_vertex, ce.first_profile);
                    println!("  {} sees {:?}", ce.second_vertex, ce.second_profile);
                }
                Format::Json => print_json(&serde_json::json!({
                    "graph": coloring.graph().to_string(),
                    "perfect": false,
                    "counterexample": ce,
                })),
            }
            Ok(EXIT_FAIL)
        }
    }
}

fn oracle_eigenfunctions(spec: &str, format: Format) -> Result<u8, Error> {
    let graph = GraphSpec::parse(spec)?;
    verify_all_eigenfunctions(&graph, ORACLE_VERTEX_CAP)?;
    match format {
        Format::Text => {
            println!("graph: {graph}");
            println!(
                "all {} characters are adjacency eigenfunctions with the closed-form eigenvalue",
                graph.vertex_count()
            );
        }
        Format::Json => print_json(&serde_json::json!({
            "graph": graph.to_string(),
            "characters": graph.vertex_count().to_string(),
            "eigenfunctions": true,
        })),
    }
    Ok(EXIT_PASS)
}

fn rational_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn oracle_masses(path: &str, color: Option<usize>, format: Format) -> Result<u8, Error> {
    use num_traits::Zero;

    let coloring = Coloring::parse_file(&read_file(path)?, ORACLE_VERTEX_CAP)?;
    let graph = *coloring.graph();
    let matrix = match verify_perfect_coloring(&coloring, ORACLE_VERTEX_CAP)? {
        PerfectnessOutcome::Perfect(m) => m,
        PerfectnessOutcome::NotPerfect(ce) => {
            match format {
                Format::Text => println!(
                    "coloring is not perfect: color {} differs at {} vs {}",
                    ce.color, ce.first_vertex, ce.second_vertex
                ),
                Format::Json => print_json(&serde_json::json!({
                    "perfect": false,
                    "counterexample": ce,
                })),
            }
            return Ok(EXIT_FAIL);
        }
    };
    let report = analyze(&graph, &matrix, color, None)?;
    let count = BigInt::from(graph.vertex_count_checked(ORACLE_VERTEX_CAP)?);
    let degree = graph.degree();

    let mut all_match = true;
    let mut color_outputs = Vec::new();
    for mass_report in &report.colors {
        let c = mass_report.color;
        let brute = eigenspace_masses(&coloring, c as u8, ORACLE_VERTEX_CAP)?;
        let class_size = BigInt::from(coloring.class_counts()[c]);
        let principal = BigRational::new(&class_size * &class_size, count.clone());
        let mut rows = Vec::new();
        for (lambda, brute_mass) in brute {
            let expected = if lambda == degree {
                Some(principal.clone())
            } else {
                match mass_report.entries.iter().find(|e| e.eigenvalue == lambda) {
                    Some(e) => Some(e.mass.to_rational().ok_or_else(|| {
                        Error::internal("oracle-scale masses expand to plain rationals")
                    })?),
                    None => Some(BigRational::zero()),
                }
            };
            let expected = expected.expect("every eigenvalue has an expectation");
            let ok = expected == brute_mass;
            all_match &= ok;
            rows.push((lambda, brute_mass, expected, ok));
        }
        color_outputs.push((c, rows));
    }

    match format {
        Format::Text => {
            println!("graph: {graph}");
            for (c, rows) in &color_outputs {
                println!("color {c}:");
                println!("  {:>12}  {:>16}  {:>16}  agree", "eigenvalue", "character sums", "moment system");
                for (lambda, brute, expected, ok) in rows {
                    println!(
                        "  {:>12}  {:>16}  {:>16}  {}",
                        lambda.to_string(),
                        rational_string(brute),
                        rational_string(expected),
                        if *ok { "yes" } else { "NO" }
                    );
                }
            }
            println!("verdict: {}", if all_match { "masses agree" } else { "MISMATCH" });
        }
        Format::Json => {
            let colors: Vec<serde_json::Value> = color_outputs
                .iter()
                .map(|(c, rows)| {
                    let masses: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|(lambda, brute, expected, ok)| {
                            serde_json::json!({
                                "eigenvalue": lambda.to_string(),
                                "character_sums": rational_string(brute),
                                "moment_system": rational_string(expected),
                                "match": ok,
                            })
                        })
                        .collect();
                    serde_json::json!({ "color": c, "masses": masses })
                })
                .collect();
            print_json(&serde_json::json!({
                "graph": graph.to_string(),
                "perfect": true,
                "colors": colors,
                "match": all_match,
            }));
        }
    }
    Ok(if all_match { EXIT_PASS } else { EXIT_FAIL })
}
