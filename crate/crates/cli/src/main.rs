//! `augpoly`: fingerprints of Newton polytopes, orbit tables and the
//! acceptance self-test from the command line.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical verification
//! fails, 2 on usage or parse errors.

use std::io::{self, Write};
use std::process::ExitCode;

use augpoly::acceptance::{run_all, SuiteConfig};
use augpoly::polytope::{newton_polytope, FingerprintRecord, PolytopeError};
use augpoly::scenarios::{
    alpha_expected_fingerprint, alpha_powers, det_is_unit, distinctness_verdict, orbit_table,
    torus_simplex_check, torus_value, Scenario, ScenarioError, Verdict, ALPHA_SEQUENCE,
};
use augpoly::{parse_poly, VariableList};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "augpoly",
    version,
    about = "Newton polytope fingerprints of augmented chord values"
)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Fingerprint of the Newton polytope of a polynomial.
    Newton {
        /// Polynomial, e.g. "x^2 + y^-1*x + 1".
        #[arg(long)]
        expr: String,
        /// Comma-separated variable order.
        #[arg(long)]
        vars: String,
    },
    /// Monomial counts and fingerprints of the alpha family.
    Alpha {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
        max: u64,
        /// Compare against the embedded sequence and closed forms.
        #[arg(long)]
        check: bool,
    },
    /// Orbit table and distinctness verdict of a scenario.
    Orbit {
        #[arg(long)]
        scenario: String,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..=200))]
        max: u64,
    },
    /// Torus-knot simplex checks.
    Torus {
        #[arg(long)]
        n: usize,
        /// Pinch index; all indices when absent.
        #[arg(long)]
        i: Option<usize>,
    },
    /// Runs the acceptance suite.
    Selftest {
        /// Replaces the embedded reference sequence (comma separated).
        #[arg(long, hide = true)]
        alpha_reference: Option<String>,
    },
}

/// A failed run: exit code plus a diagnostic for stderr.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn verification(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<ScenarioError> for Failure {
    fn from(e: ScenarioError) -> Self {
        if e.is_verification_failure() {
            Self::verification(e.to_string())
        } else {
            Self::usage(e.to_string())
        }
    }
}

impl From<PolytopeError> for Failure {
    fn from(e: PolytopeError) -> Self {
        match e {
            PolytopeError::ZeroPolynomial => Self::usage(e.to_string()),
            _ => Self::verification(e.to_string()),
        }
    }
}

/// Report text plus whether all checks passed.
struct Report {
    body: String,
    ok: bool,
    failure: Option<String>,
}

impl Report {
    fn ok(body: String) -> Self {
        Self {
            body,
            ok: true,
            failure: None,
        }
    }
}

fn json<T: Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Failure::verification(e.to_string()))
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io_err = |e: csv::Error| Failure::verification(e.to_string());
    w.write_record(header).map_err(io_err)?;
    for row in rows {
        w.write_record(row).map_err(io_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::verification(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::verification(e.to_string()))
}

/// Right-aligned columns separated by two spaces.
fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

fn fingerprint_cells(f: &FingerprintRecord) -> Vec<String> {
    vec![
        f.intrinsic_dim.to_string(),
        f.total.to_string(),
        f.boundary.to_string(),
        f.interior.to_string(),
        f.normalized_volume.map_or(String::new(), |v| v.to_string()),
    ]
}

const FINGERPRINT_COLUMNS: [&str; 5] = ["dim", "total", "boundary", "interior", "nvol"];

fn with_fingerprint_columns(lead: &[&'static str]) -> Vec<&'static str> {
    lead.iter().copied().chain(FINGERPRINT_COLUMNS).collect()
}

fn run_newton(expr: &str, vars: &str, format: Format) -> Result<Report, Failure> {
    let vars = VariableList::parse(vars).map_err(|e| Failure::usage(e.to_string()))?;
    let p = parse_poly(expr, &vars).map_err(|e| Failure::usage(e.to_string()))?;
    let polytope = newton_polytope(&p)?;
    let record = FingerprintRecord::new(polytope.fingerprint()?, &polytope);

    #[derive(Serialize)]
    struct NewtonReport<'a> {
        vars: &'a [String],
        ambient_dim: usize,
        fingerprint: &'a FingerprintRecord,
    }
    let mut row = vec![polytope.ambient_dim().to_string()];
    row.extend(fingerprint_cells(&record));
    let header = with_fingerprint_columns(&["ambient_dim"]);
    let body = match format {
        Format::Json => json(&NewtonReport {
            vars: vars.names(),
            ambient_dim: polytope.ambient_dim(),
            fingerprint: &record,
        })?,
        Format::Csv => csv_table(&header, &[row])?,
        Format::Text => {
            let vertices: Vec<String> = record.vertices.iter().map(|v| format!("{v:?}")).collect();
            text_table(&header, &[row]) + &format!("vertices: {}\n", vertices.join(" "))
        }
    };
    Ok(Report::ok(body))
}

fn run_alpha(max: u64, check: bool, format: Format) -> Result<Report, Failure> {
    let powers = alpha_powers(max as usize)?;

    #[derive(Serialize)]
    struct AlphaRow {
        n: u64,
        monomials: usize,
        fingerprint: FingerprintRecord,
    }
    #[derive(Serialize)]
    struct AlphaReport<'a> {
        max: u64,
        rows: &'a [AlphaRow],
        check: Option<&'a [String]>,
    }

    let mut rows = Vec::with_capacity(powers.len());
    for (k, p) in powers.iter().enumerate() {
        let polytope = newton_polytope(p)?;
        rows.push(AlphaRow {
            n: k as u64 + 1,
            monomials: p.monomial_count(),
            fingerprint: FingerprintRecord::new(polytope.fingerprint()?, &polytope),
        });
    }
    let mut mismatches = Vec::new();
    if check {
        for row in &rows {
            if let Some(&reference) = ALPHA_SEQUENCE.get(row.n as usize - 1) {
                if reference != row.monomials {
                    mismatches.push(format!(
                        "n={}: {} monomials, reference {reference}",
                        row.n, row.monomials
                    ));
                }
            }
            if alpha_expected_fingerprint(row.n) != Some(row.fingerprint.fingerprint()) {
                mismatches.push(format!(
                    "n={}: fingerprint differs from the closed form",
                    row.n
                ));
            }
        }
    }

    let header = with_fingerprint_columns(&["n", "monomials"]);
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut c = vec![r.n.to_string(), r.monomials.to_string()];
            c.extend(fingerprint_cells(&r.fingerprint));
            c
        })
        .collect();
    let mut body = match format {
        Format::Json => json(&AlphaReport {
            max,
            rows: &rows,
            check: check.then_some(mismatches.as_slice()),
        })?,
        Format::Csv => csv_table(&header, &cells)?,
        Format::Text => text_table(&header, &cells),
    };
    if check && format == Format::Text {
        body += &if mismatches.is_empty() {
            "check: ok\n".to_string()
        } else {
            format!("check: {} mismatches\n", mismatches.len())
        };
    }
    Ok(Report {
        body,
        ok: mismatches.is_empty(),
        failure: (!mismatches.is_empty()).then(|| mismatches.join("; ")),
    })
}

fn run_orbit(name: &str, max: u64, format: Format) -> Result<Report, Failure> {
    let scenario = Scenario::by_name(name)?;
    let rows = orbit_table(&scenario, max)?;
    let Verdict { distinct, witness } = distinctness_verdict(&rows);

    #[derive(Serialize)]
    struct OrbitReport<'a> {
        scenario: &'a str,
        rows: &'a [augpoly::scenarios::OrbitRow],
        distinct: bool,
        witness: Option<(usize, usize)>,
    }
    let header = with_fingerprint_columns(&["n", "monomials"]);
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut c = vec![r.n.to_string(), r.monomials.to_string()];
            c.extend(fingerprint_cells(&r.fingerprint));
            c
        })
        .collect();
    let body = match format {
        Format::Json => json(&OrbitReport {
            scenario: scenario.name(),
            rows: &rows,
            distinct,
            witness,
        })?,
        Format::Csv => csv_table(&header, &cells)?,
        Format::Text => {
            let verdict = match witness {
                None => "distinct: true\n".to_string(),
                Some((i, j)) => format!("distinct: false (rows {i} and {j} collide)\n"),
            };
            format!("scenario: {}\n", scenario.name()) + &text_table(&header, &cells) + &verdict
        }
    };
    Ok(Report {
        body,
        ok: distinct,
        failure: (!distinct).then(|| format!("fingerprints collide at rows {witness:?}")),
    })
}

fn run_torus(n: usize, i: Option<usize>, format: Format) -> Result<Report, Failure> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Failure::usage(format!(
            "--n must be odd and at least 3, got {n}"
        )));
    }
    let indices: Vec<usize> = match i {
        Some(i) if (1..=n).contains(&i) => vec![i],
        Some(i) => return Err(Failure::usage(format!("--i must be in 1..={n}, got {i}"))),
        None => (1..=n).collect(),
    };

    #[derive(Serialize)]
    struct TorusRow {
        i: usize,
        monomials: usize,
        simplex: bool,
        det: String,
        inverse_verified: bool,
    }
    #[derive(Serialize)]
    struct TorusReport<'a> {
        n: usize,
        rows: &'a [TorusRow],
    }
    let mut rows = Vec::with_capacity(indices.len());
    let mut ok = true;
    for i in indices {
        let t = torus_value(n, i)?;
        let row = TorusRow {
            i,
            monomials: t.value.monomial_count(),
            simplex: torus_simplex_check(&t)?,
            det: t.det_s()?.to_string(),
            inverse_verified: t.inverse_verified()?,
        };
        ok &= row.monomials == n && row.simplex && det_is_unit(&t)? && row.inverse_verified;
        rows.push(row);
    }
    let header = ["i", "monomials", "simplex", "det", "inverse_verified"];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.i.to_string(),
                r.monomials.to_string(),
                r.simplex.to_string(),
                r.det.clone(),
                r.inverse_verified.to_string(),
            ]
        })
        .collect();
    let body = match format {
        Format::Json => json(&TorusReport { n, rows: &rows })?,
        Format::Csv => csv_table(&header, &cells)?,
        Format::Text => format!("n: {n}\n") + &text_table(&header, &cells),
    };
    Ok(Report {
        body,
        ok,
        failure: (!ok).then(|| "a torus check failed".to_string()),
    })
}

fn run_selftest(alpha_reference: Option<&str>, format: Format) -> Result<Report, Failure> {
    let mut config = SuiteConfig::default();
    if let Some(list) = alpha_reference {
        config.alpha_reference = list
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| Failure::usage(format!("--alpha-reference: {e}")))?;
    }
    let results = run_all(&config);
    let failed: Vec<String> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("criterion {} ({})", r.id, r.name))
        .collect();
    let body = match format {
        Format::Json => json(&results)?,
        Format::Csv => csv_table(
            &["id", "name", "passed", "measured"],
            &results
                .iter()
                .map(|r| {
                    vec![
                        r.id.to_string(),
                        r.name.to_string(),
                        r.passed.to_string(),
                        r.measured.clone(),
                    ]
                })
                .collect::<Vec<_>>(),
        )?,
        Format::Text => results.iter().map(|r| format!("{r}\n")).collect(),
    };
    Ok(Report {
        body,
        ok: failed.is_empty(),
        failure: (!failed.is_empty()).then(|| format!("failed: {}", failed.join(", "))),
    })
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Newton { expr, vars } => run_newton(expr, vars, cli.format),
        Command::Alpha { max, check } => run_alpha(*max, *check, cli.format),
        Command::Orbit { scenario, max } => run_orbit(scenario, *max, cli.format),
        Command::Torus { n, i } => run_torus(*n, *i, cli.format),
        Command::Selftest { alpha_reference } => {
            run_selftest(alpha_reference.as_deref(), cli.format)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(report) => {
            // a closed stdout is not worth a panic
            let _ = io::stdout().lock().write_all(report.body.as_bytes());
            if let Some(message) = &report.failure {
                eprintln!("augpoly: {message}");
            }
            ExitCode::from(if report.ok { 0 } else { 1 })
        }
        Err(failure) => {
            eprintln!("augpoly: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
