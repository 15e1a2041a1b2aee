//! `kurosh`: command-line front end for the operad engines.
//!
//! Exit codes: 0 success, 1 a verification or construction did not
//! succeed, 2 input error, 3 budget exceeded.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use kurosh_core::rational::format_rational;
use kurosh_core::{
    bound_series, euler_defect, free_component_dim, gs_binary_root, gs_criterion,
    is_nilpotent_element, parse_lincomb, parse_rational, strong_construct, verify_construction,
    weak_construct, Budget, CertificateRecord, ConstructionCertificate, Error, LinComb,
    Presentation, QuotientEngine, Rational, TruncatedSeries,
};

#[derive(Parser)]
#[command(
    name = "kurosh",
    version,
    about = "Exact computations for finitely presented operads"
)]
struct Cli {
    /// Truncation order for series.
    #[arg(long, global = true, default_value_t = 12)]
    order: usize,
    /// Largest arity computed (component cap and closure degree).
    #[arg(long = "max-degree", global = true, default_value_t = 8)]
    max_degree: usize,
    /// Cap on the number of terms materialized per component.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Presentation file.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesOp {
    Reciprocal,
    Reversion,
    Derivative,
    Add,
    Sub,
    Mul,
    Compose,
}

#[derive(Subcommand)]
enum Command {
    /// Truncated series arithmetic on coefficient lists "a0, a1, ...".
    Series {
        #[arg(long, value_enum)]
        op: SeriesOp,
        #[arg(long)]
        series: String,
        /// Second operand for add, sub, mul and compose (the inner series).
        #[arg(long)]
        with: Option<String>,
    },
    /// Dimensions of the free operad on the signature of --input.
    FreeDim,
    /// Free, ideal and quotient dimensions per arity.
    QuotientDim {
        /// A single arity instead of 1..=max-degree.
        #[arg(long)]
        arity: Option<usize>,
    },
    /// Normal form of an element modulo the ideal.
    Reduce {
        #[arg(long)]
        element: String,
    },
    /// Reduced suboperad closure of an element and its nilpotency.
    Closure {
        #[arg(long)]
        element: String,
    },
    /// Golod-Shafarevich criterion, bound series and Euler defect.
    GsCheck {
        /// Generator EGF; defaults to the signature of --input.
        #[arg(long)]
        generators: Option<String>,
        /// Relation EGF; defaults to the relation module of --input.
        #[arg(long)]
        relations: Option<String>,
    },
    /// Bracket a positive root of 1 - X/z + R/z for binary X.
    GsRoot {
        #[arg(long)]
        generators: String,
        #[arg(long)]
        relations: String,
        #[arg(long, default_value = "0,1")]
        interval: String,
        #[arg(long, default_value_t = 256)]
        grid: usize,
    },
    /// Weak construction: every processed element satisfies an identity.
    KuroshWeak {
        #[arg(long, default_value_t = 1)]
        elements: usize,
        #[arg(long = "presentation-out")]
        presentation_out: PathBuf,
        #[arg(long = "certificate-out")]
        certificate_out: PathBuf,
    },
    /// Strong construction: every processed element is nilpotent.
    KuroshStrong {
        #[arg(long, default_value_t = 1)]
        elements: usize,
        /// Largest spine length tried per element.
        #[arg(long = "max-depth", default_value_t = 8)]
        max_depth: usize,
        #[arg(long = "presentation-out")]
        presentation_out: PathBuf,
        #[arg(long = "certificate-out")]
        certificate_out: PathBuf,
    },
    /// Check a construction certificate against its presentation.
    BurnsideVerify {
        #[arg(long)]
        certificate: PathBuf,
        /// Extra elements whose nilpotency is reported (informational).
        #[arg(long = "element")]
        elements: Vec<String>,
    },
}

enum Failure {
    Input(String),
    Budget(String),
    Unsuccessful(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_budget() {
            return Failure::Budget(e.to_string());
        }
        match e {
            Error::VerificationFailed(_) | Error::ConstructionFailed { .. } => {
                Failure::Unsuccessful(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

/// Error for a flag value, with a caret under the offending byte.
fn flag_error(flag: &str, text: &str, e: Error) -> Failure {
    match e {
        Error::Syntax {
            position,
            ref message,
        } => Failure::Input(format!(
            "{flag}: syntax error at {position}: {message}\n  {text}\n  {}^",
            " ".repeat(position.min(text.len()))
        )),
        other => match Failure::from(other) {
            Failure::Input(m) => Failure::Input(format!("{flag}: {m}")),
            f => f,
        },
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_presentation(cli: &Cli) -> Result<Presentation, Failure> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| Failure::Input("--input FILE is required".into()))?;
    let text = read_file(path)?;
    Presentation::parse(&text).map_err(|e| match Failure::from(e) {
        Failure::Input(m) => Failure::Input(format!("{}: {m}", path.display())),
        f => f,
    })
}

fn parse_series(flag: &str, text: &str) -> Result<TruncatedSeries, Failure> {
    TruncatedSeries::parse(text).map_err(|e| flag_error(flag, text, e))
}

fn parse_element(text: &str, pres: &Presentation) -> Result<LinComb, Failure> {
    parse_lincomb(text, &pres.sig).map_err(|e| flag_error("--element", text, e))
}

fn parse_interval(text: &str) -> Result<(Rational, Rational), Failure> {
    let Some((a, b)) = text.split_once(',') else {
        return Err(Failure::Input(format!(
            "--interval: expected `a/b,c/d`, got `{text}`"
        )));
    };
    let lo = parse_rational(a).map_err(|e| flag_error("--interval", text, e))?;
    let hi = parse_rational(b).map_err(|e| {
        let shifted = match e {
            Error::Syntax { position, message } => Error::Syntax {
                position: position + a.len() + 1,
                message,
            },
            other => other,
        };
        flag_error("--interval", text, shifted)
    })?;
    Ok((lo, hi))
}

fn strings(s: &TruncatedSeries) -> Vec<String> {
    s.coeffs().iter().map(format_rational).collect()
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn series_cmd(cli: &Cli, op: SeriesOp, series: &str, with: Option<&str>) -> Outcome {
    let a = parse_series("--series", series)?.as_polynomial_to(cli.order);
    let other = || -> Result<TruncatedSeries, Failure> {
        let text =
            with.ok_or_else(|| Failure::Input("--with is required for this operation".into()))?;
        Ok(parse_series("--with", text)?.as_polynomial_to(cli.order))
    };
    let out = match op {
        SeriesOp::Reciprocal => a.reciprocal()?,
        SeriesOp::Reversion => a.reversion()?,
        SeriesOp::Derivative => a.derivative(),
        SeriesOp::Add => a.add(&other()?),
        SeriesOp::Sub => a.sub(&other()?),
        SeriesOp::Mul => a.mul(&other()?),
        SeriesOp::Compose => a.compose(&other()?)?,
    };
    Ok(match cli.format {
        Format::Tsv => {
            let mut s = String::new();
            for (n, c) in out.coeffs().iter().enumerate() {
                writeln!(s, "{n}\t{}", format_rational(c)).unwrap();
            }
            s
        }
        Format::Json => to_json(&json!({ "coefficients": strings(&out) })),
    })
}

fn free_dim_cmd(cli: &Cli) -> Outcome {
    let pres = load_presentation(cli)?;
    let dims: Vec<(usize, String)> = (1..=cli.order)
        .map(|n| (n, free_component_dim(&pres.sig, n).to_string()))
        .collect();
    Ok(match cli.format {
        Format::Tsv => dims.iter().map(|(n, d)| format!("{n}\t{d}\n")).collect(),
        Format::Json => to_json(
            &dims
                .iter()
                .map(|(n, d)| json!({ "n": n, "dim": d }))
                .collect::<Vec<_>>(),
        ),
    })
}

fn quotient_dim_cmd(cli: &Cli, budget: Budget, arity: Option<usize>) -> Outcome {
    let pres = load_presentation(cli)?;
    let mut engine = QuotientEngine::new(pres, budget);
    let arities: Vec<usize> = match arity {
        Some(n) => vec![n],
        None => (1..=cli.max_degree).collect(),
    };
    let mut rows = Vec::new();
    for n in arities {
        let q = engine.quotient_dim(n)?;
        let free = engine.free_dim(n);
        let ideal = &free - q;
        rows.push((n, free.to_string(), ideal.to_string(), q));
    }
    Ok(match cli.format {
        Format::Tsv => rows
            .iter()
            .map(|(n, g, i, q)| format!("{n}\t{g}\t{i}\t{q}\n"))
            .collect(),
        Format::Json => to_json(
            &rows
                .iter()
                .map(|(n, g, i, q)| json!({ "n": n, "free": g, "ideal": i, "quotient": q }))
                .collect::<Vec<_>>(),
        ),
    })
}

fn reduce_cmd(cli: &Cli, budget: Budget, element: &str) -> Outcome {
    let pres = load_presentation(cli)?;
    let v = parse_element(element, &pres)?;
    let mut engine = QuotientEngine::new(pres, budget);
    let r = engine.reduce(&v)?;
    let text = r.render(&engine.presentation().sig);
    Ok(match cli.format {
        Format::Tsv => format!("{text}\n"),
        Format::Json => {
            to_json(&json!({ "input": v.render(&engine.presentation().sig), "normal_form": text }))
        }
    })
}

fn closure_cmd(cli: &Cli, budget: Budget, element: &str) -> Outcome {
    let pres = load_presentation(cli)?;
    let v = parse_element(element, &pres)?;
    let mut engine = QuotientEngine::new(pres, budget);
    let report = is_nilpotent_element(&mut engine, &v, cli.max_degree)?;
    Ok(match cli.format {
        Format::Tsv => {
            let mut s = String::new();
            for (n, d) in &report.component_dims {
                writeln!(s, "{n}\t{d}").unwrap();
            }
            let by = report
                .nilpotent_by
                .map_or("none".to_string(), |b| b.to_string());
            writeln!(s, "nilpotent_by\t{by}").unwrap();
            s
        }
        Format::Json => to_json(&json!({
            "component_dims": report.component_dims.iter().map(|(n, d)| json!({ "n": n, "dim": d })).collect::<Vec<_>>(),
            "nilpotent_by": report.nilpotent_by,
            "max_degree": cli.max_degree,
        })),
    })
}

fn gs_check_cmd(
    cli: &Cli,
    budget: Budget,
    generators: Option<&str>,
    relations: Option<&str>,
) -> Outcome {
    let pres = match &cli.input {
        Some(_) => Some(load_presentation(cli)?),
        None => None,
    };
    let x = match (generators, &pres) {
        (Some(t), _) => parse_series("--generators", t)?,
        (None, Some(p)) => p.sig.egf(cli.order + 1),
        (None, None) => return Err(Failure::Input("give --generators or --input".into())),
    };
    let r = match (relations, &pres) {
        (Some(t), _) => parse_series("--relations", t)?,
        (None, Some(p)) => p.relation_series(cli.order + 1, &budget)?,
        (None, None) => TruncatedSeries::zero(0),
    };
    let mut report = gs_criterion(&x, &r, cli.order)?;
    report.bound_series = Some(bound_series(&x, &r, cli.order)?);
    if let Some(p) = pres {
        // the defect needs quotient dimensions, so it stops at the arity cap
        let order = cli.order.min(cli.max_degree);
        let mut engine = QuotientEngine::new(p, budget);
        report.euler_defect = Some(euler_defect(&mut engine, &x, &r, order)?);
    }
    let record = report.record();
    Ok(match cli.format {
        Format::Json => to_json(&record),
        Format::Tsv => {
            let mut s = String::new();
            writeln!(s, "order\t{}", record.order).unwrap();
            writeln!(s, "verdict\t{}", record.verdict).unwrap();
            let first = record
                .first_negative
                .map_or("none".to_string(), |n| n.to_string());
            writeln!(s, "first_negative\t{first}").unwrap();
            writeln!(s, "criterion\t{}", record.criterion.join(", ")).unwrap();
            if let Some(b) = &record.bound {
                writeln!(s, "bound\t{}", b.join(", ")).unwrap();
            }
            if let Some(e) = &record.euler_defect {
                writeln!(s, "euler_defect\t{}", e.join(", ")).unwrap();
                writeln!(
                    s,
                    "euler_defect_nonnegative\t{}",
                    record.euler_defect_nonnegative.unwrap()
                )
                .unwrap();
            }
            writeln!(s, "note\t{}", record.note).unwrap();
            s
        }
    })
}

fn gs_root_cmd(
    cli: &Cli,
    generators: &str,
    relations: &str,
    interval: &str,
    grid: usize,
) -> Outcome {
    let x = parse_series("--generators", generators)?;
    let r = parse_series("--relations", relations)?;
    let bracket = gs_binary_root(&x, &r, parse_interval(interval)?, grid)?;
    Ok(match (cli.format, bracket) {
        (Format::Tsv, None) => "none\n".to_string(),
        (Format::Tsv, Some(b)) => format!(
            "{}\t{}\t{}\n",
            format_rational(&b.lo),
            format_rational(&b.hi),
            b.derivative_nonzero
        ),
        (Format::Json, None) => to_json(&json!({ "bracket": null })),
        (Format::Json, Some(b)) => to_json(&json!({
            "bracket": [format_rational(&b.lo), format_rational(&b.hi)],
            "derivative_nonzero": b.derivative_nonzero,
        })),
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit_certificate(
    cli: &Cli,
    cert: &ConstructionCertificate,
    pres_out: &Path,
    cert_out: &Path,
) -> Outcome {
    let record = cert.record();
    write_file(pres_out, &cert.presentation.render())?;
    write_file(cert_out, &to_json(&record))?;
    Ok(match cli.format {
        Format::Json => to_json(&record),
        Format::Tsv => {
            let mut s = String::new();
            for p in &record.processed {
                writeln!(s, "{}\t{}\t{}", p.element, p.parameter, p.relation_arity).unwrap();
            }
            writeln!(s, "verdict\t{}", record.gs.verdict).unwrap();
            s
        }
    })
}

fn burnside_verify_cmd(
    cli: &Cli,
    budget: Budget,
    certificate: &Path,
    elements: &[String],
) -> Outcome {
    let pres = load_presentation(cli)?;
    let text = read_file(certificate)?;
    let record: CertificateRecord = serde_json::from_str(&text).map_err(|e| {
        Failure::Input(format!(
            "{}: line {} column {}: {e}",
            certificate.display(),
            e.line(),
            e.column()
        ))
    })?;
    let samples = elements
        .iter()
        .map(|e| parse_element(e, &pres))
        .collect::<Result<Vec<_>, _>>()?;
    let cert = ConstructionCertificate::from_record(&record, pres, &budget)?;
    let report = verify_construction(&cert, cli.max_degree, &samples, &budget)?;
    let out = match cli.format {
        Format::Json => to_json(&report),
        Format::Tsv => {
            let mut s = String::new();
            for c in &report.clauses {
                let status = if c.passed { "pass" } else { "fail" };
                writeln!(s, "clause\t{}\t{status}\t{}", c.clause, c.detail).unwrap();
            }
            for x in &report.samples {
                let by = x.nilpotent_by.map_or("none".to_string(), |b| b.to_string());
                writeln!(s, "sample\t{}\tnilpotent_by\t{by}", x.element).unwrap();
            }
            writeln!(
                s,
                "verdict\t{}",
                if report.passed { "pass" } else { "fail" }
            )
            .unwrap();
            s
        }
    };
    if report.passed {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Unsuccessful("verification failed".into()))
    }
}

fn run(cli: &Cli) -> Outcome {
    if cli.order == 0 || cli.budget == 0 {
        return Err(Failure::Input(
            "--order and --budget must be at least 1".into(),
        ));
    }
    let budget = Budget {
        max_arity: cli.max_degree,
        max_terms: cli.budget,
    };
    match &cli.command {
        Command::Series { op, series, with } => series_cmd(cli, *op, series, with.as_deref()),
        Command::FreeDim => free_dim_cmd(cli),
        Command::QuotientDim { arity } => quotient_dim_cmd(cli, budget, *arity),
        Command::Reduce { element } => reduce_cmd(cli, budget, element),
        Command::Closure { element } => closure_cmd(cli, budget, element),
        Command::GsCheck {
            generators,
            relations,
        } => gs_check_cmd(cli, budget, generators.as_deref(), relations.as_deref()),
        Command::GsRoot {
            generators,
            relations,
            interval,
            grid,
        } => gs_root_cmd(cli, generators, relations, interval, *grid),
        Command::KuroshWeak {
            elements,
            presentation_out,
            certificate_out,
        } => {
            let pres = load_presentation(cli)?;
            let cert = weak_construct(&pres.sig, *elements, cli.order, &budget)?;
            emit_certificate(cli, &cert, presentation_out, certificate_out)
        }
        Command::KuroshStrong {
            elements,
            max_depth,
            presentation_out,
            certificate_out,
        } => {
            let pres = load_presentation(cli)?;
            let cert = strong_construct(&pres.sig, *elements, *max_depth, cli.order, &budget)?;
            emit_certificate(cli, &cert, presentation_out, certificate_out)
        }
        Command::BurnsideVerify {
            certificate,
            elements,
        } => burnside_verify_cmd(cli, budget, certificate, elements),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Unsuccessful(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
