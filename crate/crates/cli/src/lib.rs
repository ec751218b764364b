//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage error (including malformed or infeasible
//! specs where a result is required), 3 verification mismatch.

use std::io::{self, Write};
use std::ops::RangeInclusive;

use capacity_urns::oracle::{verify_grid_with, GridBounds, OracleLimits, VerificationReport};
use capacity_urns::probability::ProbabilityRecord;
use capacity_urns::{
    classify, count, enumerate, prob_all_boxes_within, CountReport, Error, Natural, ProblemSpec,
    Sampler,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: &str = "1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "capacity-urns",
    version,
    about = "Exact counts of balls in boxes with occupancy bounds"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Bounds {
    /// Minimum balls per box.
    #[arg(long = "min", default_value_t = 0)]
    pub lower: u64,
    /// Maximum balls per box; unbounded when omitted.
    #[arg(long = "max")]
    pub upper: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count distributions of M balls into N boxes.
    Count {
        m: u64,
        n: u64,
        #[command(flatten)]
        bounds: Bounds,
        /// Print the inclusion-exclusion terms.
        #[arg(long)]
        verbose: bool,
    },
    /// Probability that no box exceeds KAPPA when every unrestricted outcome is equally likely.
    Prob {
        m: u64,
        n: u64,
        #[arg(long)]
        kappa: u64,
    },
    /// List every valid distribution in lexicographic order.
    Enumerate {
        m: u64,
        n: u64,
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Draw distributions uniformly at random.
    Sample {
        m: u64,
        n: u64,
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long, default_value_t = 1)]
        draws: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Counts over ranges of M and N.
    Table {
        #[arg(long = "m-range", value_parser = parse_range)]
        m_range: RangeInclusive<u64>,
        #[arg(long = "n-range", value_parser = parse_range)]
        n_range: RangeInclusive<u64>,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Check the closed form against both brute-force oracles over a grid.
    Verify {
        #[arg(long = "max-m")]
        max_m: u64,
        #[arg(long = "max-n")]
        max_n: u64,
        #[arg(long = "max-k")]
        max_k: u64,
        /// Worker threads; defaults to the number of CPUs.
        #[arg(long)]
        jobs: Option<usize>,
        /// Harness self-test: add one to the closed form at every grid point with m = max-m.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

/// Parses `a..b` (inclusive) or a single value `a`.
fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
        None => (s, s),
    };
    let lo: u64 = lo
        .trim()
        .parse()
        .map_err(|e| format!("bad range start {lo:?}: {e}"))?;
    let hi: u64 = hi
        .trim()
        .parse()
        .map_err(|e| format!("bad range end {hi:?}: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(lo..=hi)
}

/// The JSON document every command emits under `--format json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub schema_version: String,
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub case: Option<String>,
}

impl Envelope {
    fn new(command: &str, inputs: Value, result: Value, case: Option<&str>) -> Self {
        Envelope {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            inputs,
            result,
            case: case.map(str::to_string),
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Mismatch,
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

/// Parses `args` (including the program name) and runs the command, returning the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Mismatch) => EXIT_MISMATCH,
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let format = cli.format;
    match cli.command {
        Command::Count {
            m,
            n,
            bounds,
            verbose,
        } => cmd_count(m, n, bounds, verbose, format, out),
        Command::Prob { m, n, kappa } => cmd_prob(m, n, kappa, format, out),
        Command::Enumerate {
            m,
            n,
            bounds,
            limit,
        } => cmd_enumerate(m, n, bounds, limit, format, out),
        Command::Sample {
            m,
            n,
            bounds,
            draws,
            seed,
        } => cmd_sample(m, n, bounds, draws, seed, format, out),
        Command::Table {
            ref m_range,
            ref n_range,
            bounds,
        } => cmd_table(m_range.clone(), n_range.clone(), bounds, format, out),
        Command::Verify {
            max_m,
            max_n,
            max_k,
            jobs,
            inject_fault,
        } => cmd_verify(
            GridBounds::new(max_m, max_n, max_k),
            jobs,
            inject_fault,
            format,
            out,
            err,
        ),
    }
}

fn make_spec(m: u64, n: u64, bounds: Bounds) -> Result<ProblemSpec, Failure> {
    Ok(ProblemSpec::new(m, n, bounds.lower, bounds.upper)?)
}

fn spec_inputs(spec: &ProblemSpec) -> Value {
    json!({ "m": spec.balls, "n": spec.boxes, "k1": spec.lower, "k2": spec.upper })
}

fn upper_cell(upper: Option<u64>) -> String {
    upper.map_or_else(|| "inf".to_string(), |u| u.to_string())
}

fn write_json(out: &mut dyn Write, envelope: &Envelope) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, envelope)?;
    writeln!(out)?;
    Ok(())
}

fn cmd_count(
    m: u64,
    n: u64,
    bounds: Bounds,
    verbose: bool,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let spec = make_spec(m, n, bounds)?;
    let report = count(&spec);
    match format {
        Format::Json => {
            let envelope = Envelope::new(
                "count",
                spec_inputs(&spec),
                serde_json::to_value(&report)?,
                Some(report.label.section()),
            );
            write_json(out, &envelope)
        }
        Format::Tsv => {
            writeln!(out, "m\tn\tk1\tk2\tcount\tcase")?;
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                spec.balls,
                spec.boxes,
                spec.lower,
                upper_cell(spec.upper),
                report.count,
                report.label.section()
            )?;
            if verbose {
                write_terms(out, &report)?;
            }
            Ok(())
        }
        Format::Plain => {
            writeln!(out, "count: {}", report.count)?;
            writeln!(
                out,
                "case: {} ({})",
                report.label.section(),
                report.label.name()
            )?;
            if verbose {
                if let Some(s) = report.shifted {
                    writeln!(
                        out,
                        "shifted: m*={} k1*={} k2*={}",
                        s.residual_balls,
                        s.residual_lower,
                        upper_cell(s.residual_upper)
                    )?;
                }
                write_terms(out, &report)?;
            }
            Ok(())
        }
    }
}

fn write_terms(out: &mut dyn Write, report: &CountReport) -> Result<(), Failure> {
    if report.terms.is_empty() {
        return Ok(());
    }
    writeln!(
        out,
        "alpha\tsign\tC(n,alpha)\tC(m-alpha(k+1)+n-1,n-1)\tterm"
    )?;
    for t in &report.terms {
        let sign = if t.sign > 0 { '+' } else { '-' };
        writeln!(
            out,
            "{}\t{sign}\t{}\t{}\t{}",
            t.alpha, t.choose_boxes, t.remaining_count, t.term_value
        )?;
    }
    Ok(())
}

fn cmd_prob(
    m: u64,
    n: u64,
    kappa: u64,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    if n == 0 {
        return Err(Error::ZeroBoxes.into());
    }
    let report = prob_all_boxes_within(m, n, kappa);
    let label = classify(&ProblemSpec {
        balls: m,
        boxes: n,
        lower: 0,
        upper: Some(kappa),
    });
    match format {
        Format::Json => {
            let envelope = Envelope::new(
                "prob",
                json!({ "m": m, "n": n, "kappa": kappa }),
                serde_json::to_value(ProbabilityRecord::from(&report))?,
                Some(label.section()),
            );
            write_json(out, &envelope)
        }
        Format::Tsv => {
            writeln!(
                out,
                "m\tn\tkappa\tnumerator\tdenominator\tprobability\tdecimal"
            )?;
            writeln!(
                out,
                "{m}\t{n}\t{kappa}\t{}\t{}\t{}\t{:.6}",
                report.numerator_count,
                report.denominator_count,
                report.value,
                report.decimal_approx
            )?;
            Ok(())
        }
        Format::Plain => {
            if report.value.is_integer() {
                writeln!(out, "{}", report.value)?;
            } else {
                let raw = format!("{}/{}", report.numerator_count, report.denominator_count);
                let reduced = report.value.to_string();
                if raw == reduced {
                    writeln!(out, "{reduced} ≈ {:.6}", report.decimal_approx)?;
                } else {
                    writeln!(out, "{raw} = {reduced} ≈ {:.6}", report.decimal_approx)?;
                }
            }
            Ok(())
        }
    }
}

fn write_parts_tsv_header(out: &mut dyn Write, n: u64) -> Result<(), Failure> {
    let header: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    writeln!(out, "{}", header.join("\t"))?;
    Ok(())
}

fn write_parts_tsv(out: &mut dyn Write, parts: &[u64]) -> Result<(), Failure> {
    let row: Vec<String> = parts.iter().map(u64::to_string).collect();
    writeln!(out, "{}", row.join("\t"))?;
    Ok(())
}

fn cmd_enumerate(
    m: u64,
    n: u64,
    bounds: Bounds,
    limit: Option<usize>,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let spec = make_spec(m, n, bounds)?;
    let compositions = enumerate(&spec, limit);
    match format {
        Format::Json => {
            let parts: Vec<Vec<u64>> = compositions.map(|c| c.parts).collect();
            let total = parts.len();
            let mut inputs = spec_inputs(&spec);
            inputs["limit"] = json!(limit);
            let envelope = Envelope::new(
                "enumerate",
                inputs,
                json!({ "compositions": parts, "total": total.to_string() }),
                Some(spec.classify().section()),
            );
            write_json(out, &envelope)
        }
        Format::Tsv => {
            write_parts_tsv_header(out, n)?;
            for c in compositions {
                write_parts_tsv(out, &c.parts)?;
            }
            Ok(())
        }
        Format::Plain => {
            let mut total: u64 = 0;
            for c in compositions {
                writeln!(out, "{c}")?;
                total += 1;
            }
            writeln!(out, "total {total}")?;
            Ok(())
        }
    }
}

fn cmd_sample(
    m: u64,
    n: u64,
    bounds: Bounds,
    draws: usize,
    seed: u64,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let spec = make_spec(m, n, bounds)?;
    let sampler = Sampler::new(&spec, seed).map_err(|e| match e {
        Error::InfeasibleSpec => Failure::Usage(format!("{spec} admits no distribution to sample")),
        other => other.into(),
    })?;
    match format {
        Format::Json => {
            let parts: Vec<Vec<u64>> = sampler.take(draws).map(|c| c.parts).collect();
            let mut inputs = spec_inputs(&spec);
            inputs["draws"] = json!(draws);
            inputs["seed"] = json!(seed);
            let envelope = Envelope::new(
                "sample",
                inputs,
                json!({ "draws": parts }),
                Some(spec.classify().section()),
            );
            write_json(out, &envelope)
        }
        Format::Tsv => {
            write_parts_tsv_header(out, n)?;
            for c in sampler.take(draws) {
                write_parts_tsv(out, &c.parts)?;
            }
            Ok(())
        }
        Format::Plain => {
            for c in sampler.take(draws) {
                writeln!(out, "{c}")?;
            }
            Ok(())
        }
    }
}

#[derive(Debug, Serialize)]
struct TableRow {
    m: u64,
    n: u64,
    k1: u64,
    k2: Option<u64>,
    count: Natural,
    case: &'static str,
}

fn cmd_table(
    m_range: RangeInclusive<u64>,
    n_range: RangeInclusive<u64>,
    bounds: Bounds,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    if *n_range.start() == 0 {
        return Err(Error::ZeroBoxes.into());
    }
    // Validates the bounds once.
    make_spec(0, 1, bounds)?;
    let mut rows = Vec::new();
    for m in m_range.clone() {
        for n in n_range.clone() {
            let spec = ProblemSpec {
                balls: m,
                boxes: n,
                lower: bounds.lower,
                upper: bounds.upper,
            };
            let report = count(&spec);
            rows.push(TableRow {
                m,
                n,
                k1: spec.lower,
                k2: spec.upper,
                count: report.count,
                case: report.label.section(),
            });
        }
    }
    match format {
        Format::Json => {
            let inputs = json!({
                "m_range": [m_range.start(), m_range.end()],
                "n_range": [n_range.start(), n_range.end()],
                "k1": bounds.lower,
                "k2": bounds.upper,
            });
            let envelope = Envelope::new("table", inputs, json!({ "rows": rows }), None);
            write_json(out, &envelope)
        }
        Format::Tsv | Format::Plain => {
            writeln!(out, "m\tn\tk1\tk2\tcount\tcase")?;
            for r in &rows {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    r.m,
                    r.n,
                    r.k1,
                    upper_cell(r.k2),
                    r.count,
                    r.case
                )?;
            }
            Ok(())
        }
    }
}

fn cmd_verify(
    grid: GridBounds,
    jobs: Option<usize>,
    inject_fault: bool,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    if grid.max_n == 0 {
        return Err(Error::ZeroBoxes.into());
    }
    let limits = OracleLimits::from_env();
    let closed_form = |spec: &ProblemSpec| {
        let value = count(spec).count;
        if inject_fault && spec.balls == grid.max_m {
            &value + &Natural::one()
        } else {
            value
        }
    };
    let run = || verify_grid_with(grid, &limits, closed_form);
    let report: VerificationReport = match jobs {
        Some(0) => return Err(Failure::Usage("--jobs must be at least 1".into())),
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Failure::Usage(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    writeln!(err, "elapsed: {:.3}s", report.elapsed.as_secs_f64())?;
    match format {
        Format::Json => {
            let envelope = Envelope::new(
                "verify",
                json!({ "max_m": grid.max_m, "max_n": grid.max_n, "max_k": grid.max_k }),
                json!({
                    "specs_checked": report.specs_checked,
                    "mismatches": report.mismatches,
                }),
                None,
            );
            write_json(out, &envelope)?;
        }
        Format::Tsv => {
            writeln!(out, "m\tn\tk1\tk2\tclosed_form\toracle\toracle_value")?;
            for mm in &report.mismatches {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    mm.spec.balls,
                    mm.spec.boxes,
                    mm.spec.lower,
                    upper_cell(mm.spec.upper),
                    mm.closed_form,
                    mm.oracle_name,
                    mm.oracle
                )?;
            }
        }
        Format::Plain => {
            writeln!(out, "checked {} specs", report.specs_checked)?;
            for mm in &report.mismatches {
                writeln!(
                    out,
                    "mismatch {}: closed form {} vs {} oracle {}",
                    mm.spec, mm.closed_form, mm.oracle_name, mm.oracle
                )?;
            }
            writeln!(out, "{} mismatches", report.mismatches.len())?;
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}
