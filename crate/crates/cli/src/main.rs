use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mcluster::decomposition::{decompose_context, predict, PowerContext};
use mcluster::export::{quiver_document, to_dot, ComponentDoc, ConfigDoc, QuiverDocument};
use mcluster::homological::{classify_morphism, cone, HomologicalError, MorphismKind};
use mcluster::tquiver::build_gamma_m;
use mcluster::verify::{verify_cell, CellOptions, CellReport};
use mcluster::{Diagonal, PolygonConfig};
use rayon::prelude::*;
use serde::Serialize;

const DEFAULT_MAX_SIDES: u64 = 200;
const MAX_SIDES_VAR: &str = "CQ_MAX_N";

#[derive(Parser)]
#[command(
    name = "mcluster",
    version,
    about = "Diagonal quivers of polygons and their m-th powers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Args)]
struct Output {
    /// Output format (each command has its own default).
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the document here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// The quiver of m-diagonals of the (nm+2)-gon.
    Gamma {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Components of the m-th power of the diagonal quiver, with shapes.
    Decompose {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Third term of the triangle on the map (i,j) -> (k,l).
    Cone {
        i: i64,
        j: i64,
        k: i64,
        l: i64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Run every check over a grid of (n, m); ranges are inclusive, e.g. 2..5.
    Verify {
        #[arg(long)]
        n: Span,
        #[arg(long)]
        m: Span,
        /// Worker threads (defaults to the number of cores).
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, hide = true)]
        corrupt_prediction: bool,
        #[command(flatten)]
        output: Output,
    },
}

/// Inclusive range `a..b`, `a..=b`, or a single value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Span {
    lo: u32,
    hi: u32,
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => (num(s)?, num(s)?),
        };
        if lo > hi {
            return Err(format!("empty range {s}"));
        }
        Ok(Span { lo, hi })
    }
}

impl Span {
    fn values(self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Self {
            code: 2,
            message: message.to_string(),
        }
    }
}

/// Primary document plus whether every check passed.
struct Outcome {
    document: String,
    passed: bool,
}

fn max_sides() -> Result<u64, Failure> {
    match std::env::var(MAX_SIDES_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::input(format!("{MAX_SIDES_VAR}={v} is not a number"))),
        Err(_) => Ok(DEFAULT_MAX_SIDES),
    }
}

fn check_cap(n: u32, m: u32) -> Result<(), Failure> {
    let sides = n as u64 * m as u64 + 2;
    let cap = max_sides()?;
    if sides > cap {
        return Err(Failure::input(format!(
            "N = {sides} exceeds the cap of {cap} (set {MAX_SIDES_VAR} to raise it)"
        )));
    }
    Ok(())
}

fn config(n: u32, m: u32) -> Result<PolygonConfig, Failure> {
    check_cap(n, m)?;
    PolygonConfig::new(n, m).map_err(Failure::input)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn unsupported(command: &str, format: Format) -> Failure {
    Failure::input(format!("{command} does not support --format {format:?}").to_lowercase())
}

fn cmd_gamma(n: u32, m: u32, format: Format) -> Result<Outcome, Failure> {
    let cfg = config(n, m)?;
    let doc = quiver_document(&cfg, &build_gamma_m(&cfg));
    let document = match format {
        Format::Json => json(&doc),
        Format::Dot => to_dot(&doc),
        Format::Table => {
            let mut out = format!(
                "n={n} m={m} N={}: {} vertices\n",
                cfg.sides(),
                doc.vertices.len()
            );
            for [s, t] in &doc.arrows {
                let _ = writeln!(out, "{s} -> {t}");
            }
            out
        }
    };
    Ok(Outcome {
        document,
        passed: true,
    })
}

fn cmd_decompose(n: u32, m: u32, format: Format) -> Result<Outcome, Failure> {
    let cfg = config(n, m)?;
    let ctx = PowerContext::new(&cfg).map_err(|e| Failure {
        code: 3,
        message: e.to_string(),
    })?;
    let reports = decompose_context(&ctx).map_err(|e| Failure {
        code: 1,
        message: e.to_string(),
    })?;
    let mut doc: QuiverDocument = quiver_document(&cfg, ctx.power());
    doc.reports = reports.iter().map(ComponentDoc::from).collect();
    let document = match format {
        Format::Json => json(&doc),
        Format::Dot => to_dot(&doc),
        Format::Table => {
            let mut out = format!(
                "n={n} m={m} N={}: {} components (predicted {})\n",
                cfg.sides(),
                reports.len(),
                predict(&cfg).component_count()
            );
            for r in &doc.reports {
                let spec = r.spec.map_or_else(|| "-".to_string(), |s| s.to_string());
                let _ = write!(
                    out,
                    "{:<8} size {:<5} {:<15} {spec}",
                    r.name,
                    r.size,
                    r.shape.to_string()
                );
                if let Some(u) = r.u_cluster {
                    let _ = write!(out, " u={u}");
                }
                if r.gamma_m {
                    out.push_str(" [m-diagonals]");
                }
                out.push('\n');
            }
            out
        }
    };
    Ok(Outcome {
        document,
        passed: true,
    })
}

#[derive(Serialize)]
struct ConeDoc {
    config: ConfigDoc,
    source: [u32; 2],
    target: [u32; 2],
    hom_dim: usize,
    kind: MorphismKind,
    #[serde(rename = "C")]
    cone: Vec<[u32; 2]>,
}

fn pair(d: &Diagonal) -> [u32; 2] {
    [d.i(), d.j()]
}

fn cmd_cone(ends: [i64; 4], n: u32, m: u32, format: Format) -> Result<Outcome, Failure> {
    let cfg = config(n, m)?;
    let sides = cfg.sides();
    let d1 = Diagonal::new(ends[0], ends[1], sides).map_err(Failure::input)?;
    let d2 = Diagonal::new(ends[2], ends[3], sides).map_err(Failure::input)?;
    let c = cone(&d1, &d2, &cfg).map_err(|e| Failure {
        code: match e {
            HomologicalError::NoCanonicalTriangle { .. } => 3,
            _ => 2,
        },
        message: e.to_string(),
    })?;
    let class = classify_morphism(&d1, &d2, &cfg);
    let document = match format {
        Format::Json => json(&ConeDoc {
            config: (&cfg).into(),
            source: pair(&d1),
            target: pair(&d2),
            hom_dim: class.hom_dim,
            kind: class.kind,
            cone: c.summands.iter().map(pair).collect(),
        }),
        Format::Table => {
            let kind = format!("{:?}", class.kind).to_lowercase();
            format!("{d1} -> {d2} -> {c} -> Σ{d1}  [{kind}]\n")
        }
        Format::Dot => return Err(unsupported("cone", format)),
    };
    Ok(Outcome {
        document,
        passed: true,
    })
}

#[derive(Serialize)]
struct VerifySummary {
    passed: bool,
    cells: usize,
    failed: usize,
    results: Vec<CellReport>,
}

fn cmd_verify(
    ns: Span,
    ms: Span,
    jobs: Option<usize>,
    opts: CellOptions,
    format: Format,
) -> Result<Outcome, Failure> {
    check_cap(ns.hi, ms.hi)?;
    let mut configs = Vec::new();
    for n in ns.values() {
        for m in ms.values() {
            configs.push(PolygonConfig::new(n, m).map_err(Failure::input)?);
        }
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(Failure::input)?;
    let results: Vec<CellReport> = pool.install(|| {
        configs
            .par_iter()
            .map(|cfg| verify_cell(cfg, opts))
            .collect()
    });
    let failed = results.iter().filter(|r| !r.passed).count();
    for r in results.iter().filter(|r| !r.passed) {
        eprintln!("verification failed for n={} m={}", r.n, r.m);
    }
    let summary = VerifySummary {
        passed: failed == 0,
        cells: results.len(),
        failed,
        results,
    };
    let document = match format {
        Format::Json => json(&summary),
        Format::Table => {
            let mut out = String::new();
            for r in &summary.results {
                let status = if r.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "n={} m={} N={} {status}", r.n, r.m, r.sides);
                for c in &r.checks {
                    let mark = if c.passed { "ok  " } else { "FAIL" };
                    let _ = writeln!(out, "  {mark} {:<17} {}", c.name, c.detail);
                }
            }
            let _ = writeln!(out, "{} cells, {} failed", summary.cells, summary.failed);
            out
        }
        Format::Dot => return Err(unsupported("verify", format)),
    };
    Ok(Outcome {
        document,
        passed: summary.passed,
    })
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let (outcome, output) = match cli.command {
        Command::Gamma { n, m, output } => (
            cmd_gamma(n, m, output.format.unwrap_or(Format::Json)),
            output,
        ),
        Command::Decompose { n, m, output } => (
            cmd_decompose(n, m, output.format.unwrap_or(Format::Table)),
            output,
        ),
        Command::Cone {
            i,
            j,
            k,
            l,
            n,
            m,
            output,
        } => (
            cmd_cone([i, j, k, l], n, m, output.format.unwrap_or(Format::Json)),
            output,
        ),
        Command::Verify {
            n,
            m,
            jobs,
            corrupt_prediction,
            output,
        } => {
            let opts = CellOptions { corrupt_prediction };
            (
                cmd_verify(n, m, jobs, opts, output.format.unwrap_or(Format::Table)),
                output,
            )
        }
    };
    let outcome = outcome?;
    match &output.out {
        Some(path) => std::fs::write(path, &outcome.document)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?,
        None => print!("{}", outcome.document),
    }
    Ok(outcome)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(o) if o.passed => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_forms() {
        assert_eq!("2..5".parse::<Span>(), Ok(Span { lo: 2, hi: 5 }));
        assert_eq!("2..=5".parse::<Span>(), Ok(Span { lo: 2, hi: 5 }));
        assert_eq!("4".parse::<Span>(), Ok(Span { lo: 4, hi: 4 }));
        assert!("5..2".parse::<Span>().is_err());
        assert!("a..2".parse::<Span>().is_err());
        assert_eq!("1..3".parse::<Span>().unwrap().values().count(), 3);
    }
}
