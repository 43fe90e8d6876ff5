//! Command-line frontend: validate payloads, synthesize topologies from
//! point-closure maps, build equidistant quasi-metrics and their ball
//! topologies, draw specialization orders, and run the exhaustive checks.
//!
//! Exit codes: 0 success, 1 malformed input or usage, 2 well-formed input
//! describing an invalid object (and failed verification certificates),
//! 3 precondition failure (e.g. a non-T0 topology fed to `qmetric`).

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use alextop::json::{self, parse_payload, Payload, PayloadError};
use alextop::{
    census, check_topology_axioms, verify, CensusReport, FiniteTopology, MetricError,
    OracleError, QuasiMetric, TheoremCertificate, TheoremId,
};

const MALFORMED: u8 = 1;
const INVALID: u8 = 2;
const PRECONDITION: u8 = 3;

#[derive(Parser)]
#[command(
    name = "alextop",
    version,
    about = "Finite T0 topologies from point-closure data: validation, synthesis, \
             equidistant quasi-metrics, and exhaustive verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a topology, closure-map, or quasi-metric payload against its
    /// axioms and report every violation
    Validate(InputArgs),
    /// Build the topology a point-closure map generates
    Synthesize(InputArgs),
    /// Construct the equidistant quasi-metric of a T0 topology (or of the
    /// topology a closure map generates)
    Qmetric {
        #[command(flatten)]
        input: InputArgs,
        /// Distance between unrelated points: a positive rational such as 1 or 3/2
        #[arg(short = 't', long = "constant", default_value = "1")]
        constant: String,
    },
    /// Recover the topology generated by a quasi-metric's open balls
    Balls(InputArgs),
    /// Emit the specialization order of a T0 input as a DOT digraph
    Hasse {
        /// Input file, or '-' for standard input
        input: String,
        /// Output format (the diagram is DOT text)
        #[arg(long, value_enum, default_value_t = DotFormat::Dot)]
        format: DotFormat,
        /// Emit every strict order pair instead of only the covering relation
        #[arg(long)]
        full_relation: bool,
    },
    /// Count topologies, T0 topologies, and valid closure maps on a small
    /// carrier by exhaustive enumeration
    Enumerate(OracleArgs),
    /// Exhaustively check one named claim on a small carrier
    Verify {
        /// Claim id: T3.1, T3.4, P2.1, P2.3, C3.4 or E3.5
        theorem: String,
        #[command(flatten)]
        oracle: OracleArgs,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Input file, or '-' for standard input
    input: String,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct OracleArgs {
    /// Carrier size (number of points)
    n: usize,
    /// Permit the minutes-long five-point scan
    #[arg(long)]
    allow_slow: bool,
    /// Omit elapsed-time metadata for byte-stable output
    #[arg(long)]
    no_timing: bool,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DotFormat {
    Dot,
}

/// A diagnostic for standard error plus the exit code it carries.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

/// Finished standard output plus the exit code (nonzero for reports that
/// describe an invalid object or a failed certificate).
struct Outcome {
    stdout: String,
    code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { MALFORMED } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Validate(args) => cmd_validate(&args),
        Command::Synthesize(args) => cmd_synthesize(&args),
        Command::Qmetric { input, constant } => cmd_qmetric(&input, &constant),
        Command::Balls(args) => cmd_balls(&args),
        Command::Hasse { input, format: _, full_relation } => cmd_hasse(&input, full_relation),
        Command::Enumerate(args) => cmd_enumerate(&args),
        Command::Verify { theorem, oracle } => cmd_verify(&theorem, &oracle),
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::new(MALFORMED, format!("cannot read standard input: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(path)
            .map_err(|e| Failure::new(MALFORMED, format!("cannot read {path}: {e}")))
    }
}

/// Parse a payload; construction-time metric rejections (a negative
/// entry in a well-formed file) carry `fallback_code`.
fn read_payload(path: &str, fallback_code: u8) -> Result<Payload, Failure> {
    let text = read_input(path)?;
    parse_payload(&text).map_err(|e| match e {
        PayloadError::Json(err) => Failure::new(MALFORMED, err.to_string()),
        PayloadError::Metric(err) => Failure::new(fallback_code, err.to_string()),
    })
}

fn json_line(value: &Value) -> String {
    let mut line = serde_json::to_string(value).expect("report values serialize");
    line.push('\n');
    line
}

fn cmd_validate(args: &InputArgs) -> Result<Outcome, Failure> {
    let payload = read_payload(&args.input, INVALID)?;
    let (valid, report) = match &payload {
        Payload::Family(family) => {
            let r = check_topology_axioms(family);
            (r.is_valid(), json::family_report_value(&r, family.universe()))
        }
        Payload::ClosureMap(map) => {
            let r = map.validate();
            (r.is_valid(), json::closure_map_report_value(&r, map.universe()))
        }
        Payload::Metric(metric) => {
            let r = metric.validate();
            (r.is_valid(), json::metric_report_value(&r, metric.universe()))
        }
    };
    let stdout = match args.format {
        Format::Json => json_line(&report),
        Format::Text => render_report_text(&report),
    };
    Ok(Outcome { stdout, code: if valid { 0 } else { INVALID } })
}

fn cmd_synthesize(args: &InputArgs) -> Result<Outcome, Failure> {
    let Payload::ClosureMap(map) = read_payload(&args.input, PRECONDITION)? else {
        return Err(Failure::new(PRECONDITION, "synthesize expects a closure-map payload"));
    };
    let topology = map.synthesize().map_err(|_| invalid_map())?;
    Ok(Outcome::ok(render_topology(&topology, args.format)))
}

fn cmd_qmetric(args: &InputArgs, constant: &str) -> Result<Outcome, Failure> {
    let topology = match read_payload(&args.input, PRECONDITION)? {
        Payload::Family(family) => topology_from_family(family)?,
        Payload::ClosureMap(map) => map.synthesize().map_err(|_| invalid_map())?,
        Payload::Metric(_) => {
            return Err(Failure::new(
                PRECONDITION,
                "qmetric expects a topology or closure-map payload",
            ))
        }
    };
    let constant = json::parse_rational(constant)
        .map_err(|problem| Failure::new(MALFORMED, format!("--constant: {problem}")))?;
    let metric = QuasiMetric::from_topology(&topology, &constant).map_err(|e| match e {
        MetricError::NotT0 => Failure::new(PRECONDITION, "input topology is not T0"),
        MetricError::NonpositiveConstant => {
            Failure::new(MALFORMED, "--constant must be a positive rational")
        }
        other => Failure::new(PRECONDITION, other.to_string()),
    })?;
    let stdout = match args.format {
        Format::Json => json_line(&json::quasimetric_value(&metric)),
        Format::Text => render_metric_text(&metric),
    };
    Ok(Outcome::ok(stdout))
}

fn cmd_balls(args: &InputArgs) -> Result<Outcome, Failure> {
    let Payload::Metric(metric) = read_payload(&args.input, PRECONDITION)? else {
        return Err(Failure::new(PRECONDITION, "balls expects a quasi-metric payload"));
    };
    let topology = metric.ball_topology().map_err(|_| invalid_metric())?;
    Ok(Outcome::ok(render_topology(&topology, args.format)))
}

fn cmd_hasse(input: &str, full_relation: bool) -> Result<Outcome, Failure> {
    let topology = match read_payload(input, PRECONDITION)? {
        Payload::Family(family) => topology_from_family(family)?,
        Payload::ClosureMap(map) => map.synthesize().map_err(|_| invalid_map())?,
        Payload::Metric(metric) => metric.ball_topology().map_err(|_| invalid_metric())?,
    };
    if !topology.is_t0_closures() {
        return Err(Failure::new(PRECONDITION, "input topology is not T0"));
    }
    Ok(Outcome::ok(render_dot(&topology, full_relation)))
}

fn cmd_enumerate(args: &OracleArgs) -> Result<Outcome, Failure> {
    note_slow_scan(args);
    let report = census(args.n, args.allow_slow).map_err(oracle_failure)?;
    let stdout = match args.format {
        Format::Json => json_line(&report.to_value(!args.no_timing)),
        Format::Text => render_census_text(&report, !args.no_timing),
    };
    Ok(Outcome::ok(stdout))
}

fn cmd_verify(theorem: &str, args: &OracleArgs) -> Result<Outcome, Failure> {
    let theorem: TheoremId = theorem.parse().map_err(|_| {
        Failure::new(
            MALFORMED,
            format!("unknown theorem id {theorem:?} (expected one of T3.1, T3.4, P2.1, P2.3, C3.4, E3.5)"),
        )
    })?;
    note_slow_scan(args);
    let certificate = verify(theorem, args.n, args.allow_slow).map_err(oracle_failure)?;
    let stdout = match args.format {
        Format::Json => json_line(&certificate.to_value(!args.no_timing)),
        Format::Text => render_certificate_text(&certificate, !args.no_timing),
    };
    Ok(Outcome { stdout, code: if certificate.passed { 0 } else { INVALID } })
}

fn note_slow_scan(args: &OracleArgs) {
    if args.allow_slow
        && args.n > alextop::oracle::MAX_FAST_POINTS
        && args.n <= alextop::oracle::MAX_SLOW_POINTS
    {
        eprintln!(
            "note: scanning all 2^{} set families on {} points; this can take minutes",
            1u64 << args.n,
            args.n
        );
    }
}

fn topology_from_family(family: alextop::SetFamily) -> Result<FiniteTopology, Failure> {
    FiniteTopology::new(family).map_err(|_| {
        Failure::new(PRECONDITION, "input family is not a topology (run validate for witnesses)")
    })
}

fn invalid_map() -> Failure {
    Failure::new(PRECONDITION, "input closure map is invalid (run validate for witnesses)")
}

fn invalid_metric() -> Failure {
    Failure::new(
        PRECONDITION,
        "input quasi-metric violates the axioms (run validate for witnesses)",
    )
}

fn oracle_failure(e: OracleError) -> Failure {
    match e {
        OracleError::SlowEnumeration { n } => Failure::new(
            PRECONDITION,
            format!("enumeration at n = {n} takes minutes; pass --allow-slow to run it"),
        ),
        OracleError::UnsupportedSize { .. } | OracleError::UnknownTheorem { .. } => {
            Failure::new(MALFORMED, e.to_string())
        }
    }
}

fn render_topology(topology: &FiniteTopology, format: Format) -> String {
    match format {
        Format::Json => json_line(&json::topology_value(topology)),
        Format::Text => {
            let mut out = points_line(topology.universe().labels());
            out.push_str("opens:\n");
            for set in topology.opens().sets() {
                out.push_str(&format!("  {set}\n"));
            }
            out
        }
    }
}

fn points_line(labels: &[String]) -> String {
    if labels.is_empty() {
        "points:\n".to_string()
    } else {
        format!("points: {}\n", labels.join(" "))
    }
}

fn render_metric_text(metric: &QuasiMetric) -> String {
    let n = metric.universe().len();
    let cells: Vec<Vec<String>> = (0..n)
        .map(|x| (0..n).map(|y| json::format_rational(metric.distance(x, y))).collect())
        .collect();
    let widths: Vec<usize> = (0..n)
        .map(|y| cells.iter().map(|row| row[y].len()).max().unwrap_or(0))
        .collect();
    let mut out = points_line(metric.universe().labels());
    out.push_str("dist:\n");
    for row in &cells {
        let line: Vec<String> =
            row.iter().zip(&widths).map(|(cell, w)| format!("{cell:>w$}")).collect();
        out.push_str(&format!("  {}\n", line.join(" ")));
    }
    out
}

fn render_report_text(report: &Value) -> String {
    let mut out = format!("valid: {}\n", report["valid"] == Value::Bool(true));
    for violation in report["violations"].as_array().expect("report shape") {
        let fields = violation.as_object().expect("violation shape");
        let mut line =
            format!("violation: {}", fields["kind"].as_str().expect("violation kind"));
        for (key, value) in fields {
            if key != "kind" {
                line.push_str(&format!(" {key}={}", plain_value(value)));
            }
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn plain_value(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(plain_value).collect();
            format!("{{{}}}", inner.join(", "))
        }
        other => other.to_string(),
    }
}

fn render_census_text(report: &CensusReport, include_timing: bool) -> String {
    let mut rows = vec![
        ("n", report.n.to_string()),
        ("total_families", report.total_families.to_string()),
        ("topologies", report.topologies.to_string()),
        ("t0_topologies", report.t0_topologies.to_string()),
        ("valid_closure_maps", report.valid_closure_maps.to_string()),
    ];
    if include_timing {
        rows.push(("elapsed_ms", report.elapsed.as_millis().to_string()));
    }
    let key_width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let value_width = rows.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<key_width$}  {v:>value_width$}\n"))
        .collect()
}

fn render_certificate_text(certificate: &TheoremCertificate, include_timing: bool) -> String {
    let timing = if include_timing {
        format!(", {} ms", certificate.elapsed.as_millis())
    } else {
        String::new()
    };
    if certificate.passed {
        format!(
            "{}: passed, {} instances checked (n = {}{timing})\n",
            certificate.theorem, certificate.instances_checked, certificate.n
        )
    } else {
        let witness = certificate.counterexample.as_ref().expect("failed certificates carry one");
        format!(
            "{}: FAILED after {} instances (n = {}{timing})\ncounterexample: {}\n",
            certificate.theorem,
            certificate.instances_checked,
            certificate.n,
            serde_json::to_string(witness).expect("counterexamples serialize"),
        )
    }
}

/// DOT digraph of the specialization order; an edge `x -> y` means x lies
/// in the closure of {y}. Nodes appear in carrier order, edges in
/// lexicographic index order.
fn render_dot(topology: &FiniteTopology, full_relation: bool) -> String {
    let order = topology.specialization_order();
    let pairs = if full_relation { order.strict_pairs() } else { order.covering_pairs() };
    let universe = topology.universe();
    let mut out = String::from("digraph specialization {\n  rankdir=BT;\n");
    for label in universe.labels() {
        out.push_str(&format!("  {};\n", quote_dot(label)));
    }
    for (x, y) in pairs {
        out.push_str(&format!(
            "  {} -> {};\n",
            quote_dot(universe.label(x)),
            quote_dot(universe.label(y))
        ));
    }
    out.push_str("}\n");
    out
}

fn quote_dot(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}
