//! `griesmer`: build, transform and certify Griesmer codes from the command
//! line.
//!
//! Exit status is 0 when everything requested was built and verified, 1 when
//! a verification failed, and 2 for invalid input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use griesmer::chains::{self, ChainBase, Theorem, VerificationReport};
use griesmer::constructs::{self, ConstructionRecord, Family, Options};
use griesmer::gf::Field;
use griesmer::mcode::{self, Analysis, PointMultiset, DEFAULT_MAX_ORACLE};
use griesmer::pg::{self, Flat};
use griesmer::transforms::{self, DualEntry};
use griesmer::{format, Error};

#[derive(Parser)]
#[command(
    name = "griesmer",
    version,
    about = "Construct and certify Griesmer codes over GF(q)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one of the arc-and-lines codes.
    Construct {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: usize,
        /// Allow the extended families at k = 5, and c2 at q < 5.
        #[arg(long)]
        allow_experimental: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write construction provenance as JSON.
        #[arg(long)]
        sidecar: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Projective dual of an m-divisible code.
    Dual {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        divisor: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Provenance of the input; lets the dual record where to search for lines.
        #[arg(long)]
        sidecar_in: Option<PathBuf>,
        #[arg(long)]
        sidecar_out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Remove disjoint lines, then single points.
    Puncture {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        lines: usize,
        #[arg(long, default_value_t = 0)]
        points: usize,
        /// Restrict the line search to the `search_flat` recorded in a dual sidecar.
        #[arg(long)]
        within_sidecar: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Build and certify the code of one distance in a theorem's range.
    Chain {
        #[arg(long)]
        theorem: u8,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Certify every distance in a theorem's range.
    Table {
        #[arg(long)]
        theorem: u8,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Txt)]
        format: TableFormat,
    },
    /// Recompute the parameters of a multiset file.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        expect_n: Option<u64>,
        #[arg(long)]
        expect_k: Option<usize>,
        #[arg(long)]
        expect_d: Option<u64>,
        /// Also enumerate every codeword (bounded by GRIESMER_MAX_ORACLE).
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Convert a multiset file to another format.
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        format: ExportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Txt,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Gmatrix,
}

/// A check that ran and did not hold.
#[derive(Debug)]
struct VerificationFailed(String);

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for VerificationFailed {}

#[derive(Debug, Default, Serialize, Deserialize)]
struct Sidecar {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    construction: Option<ConstructionRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dual: Option<DualRecord>,
    /// Where a line search should look, in the space of this code.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    search_flat: Option<Flat>,
}

#[derive(Debug, Serialize, Deserialize)]
struct DualRecord {
    divisor: u64,
    t: u64,
    entries: Vec<DualEntry>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let failed = e.downcast_ref::<VerificationFailed>().is_some()
                || e.downcast_ref::<Error>().is_some_and(Error::is_verification_failure);
            ExitCode::from(if failed { 1 } else { 2 })
        }
    }
}

fn read_multiset(path: &Path) -> anyhow::Result<PointMultiset> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    format::read_multiset(&text).map_err(anyhow::Error::from)
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write(path, &text)
}

fn summary(r: &VerificationReport) -> String {
    format!(
        "[{},{},{}]_{} divisor={} gamma0={} griesmer_n={} griesmer={}",
        r.n,
        r.k,
        r.d,
        r.q,
        r.divisor,
        r.gamma0,
        r.griesmer_n,
        if r.is_griesmer { "yes" } else { "no" }
    )
}

fn emit(
    code: &PointMultiset,
    analysis: &Analysis,
    provenance: Vec<String>,
    out: Option<&Path>,
    report: Option<&Path>,
) -> anyhow::Result<VerificationReport> {
    let r = VerificationReport::new(analysis, provenance);
    if let Some(p) = out {
        write(p, &format::write_multiset(code))?;
    }
    if let Some(p) = report {
        write_json(p, &r)?;
    }
    println!("{}", summary(&r));
    Ok(r)
}

fn oracle_bound() -> anyhow::Result<u128> {
    match std::env::var("GRIESMER_MAX_ORACLE") {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("GRIESMER_MAX_ORACLE={v:?} is not an integer")),
        Err(_) => Ok(DEFAULT_MAX_ORACLE),
    }
}

fn run(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Construct {
            family,
            q,
            k,
            allow_experimental,
            out,
            sidecar,
            report,
        } => {
            let field = Arc::new(Field::new(q)?);
            let c = constructs::construct(family, field, k, Options { allow_experimental })?;
            let step = format!("{} k={k} q={q} -> {}", family.name(), c.analysis.params);
            if let Some(p) = &sidecar {
                let s = Sidecar {
                    construction: Some(c.record()),
                    ..Default::default()
                };
                write_json(p, &s)?;
            }
            emit(&c.multiset, &c.analysis, vec![step], out.as_deref(), report.as_deref())?;
        }
        Command::Dual {
            input,
            divisor,
            out,
            sidecar_in,
            sidecar_out,
            report,
        } => {
            let m = read_multiset(&input)?;
            let dual = transforms::projective_dual(&m, divisor)?;
            let step = format!("projective dual m={divisor} t={} -> {}", dual.t, dual.analysis.params);
            if let Some(p) = &sidecar_out {
                let prior: Sidecar = match &sidecar_in {
                    Some(path) => serde_json::from_str(
                        &fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
                    )
                    .with_context(|| format!("parsing {}", path.display()))?,
                    None => Sidecar::default(),
                };
                let search_flat = prior
                    .construction
                    .as_ref()
                    .and_then(|c| c.q_points.first())
                    .map(|q1| Flat::of_hyperplane(m.field(), &pg::dual_hyperplane(q1)));
                let s = Sidecar {
                    construction: prior.construction,
                    dual: Some(DualRecord {
                        divisor,
                        t: dual.t,
                        entries: dual.entries.clone(),
                    }),
                    search_flat,
                };
                write_json(p, &s)?;
            }
            emit(
                &dual.multiset,
                &dual.analysis,
                vec![step],
                out.as_deref(),
                report.as_deref(),
            )?;
        }
        Command::Puncture {
            input,
            lines,
            points,
            within_sidecar,
            out,
            report,
        } => {
            let mut code = read_multiset(&input)?;
            let mut analysis = mcode::analyze(&code)?;
            let mut steps = vec![format!("input {}", analysis.params)];
            if lines > 0 {
                let within = match &within_sidecar {
                    Some(path) => {
                        let s: Sidecar = serde_json::from_str(&fs::read_to_string(path)?)
                            .with_context(|| format!("parsing {}", path.display()))?;
                        Some(s.search_flat.context("sidecar has no search_flat")?)
                    }
                    None => None,
                };
                for line in transforms::find_disjoint_lines(&code, lines, within.as_ref())? {
                    let p = transforms::puncture_flat_with(&code, &analysis, &line)?;
                    steps.push(format!("puncture line {line} -> {}", p.analysis.params));
                    (code, analysis) = (p.multiset, p.analysis);
                }
            }
            for _ in 0..points {
                let pt = transforms::select_puncture_point(&code)?;
                let p = transforms::puncture_point_with(&code, &analysis, &pt)?;
                steps.push(format!("puncture point {pt} -> {}", p.analysis.params));
                (code, analysis) = (p.multiset, p.analysis);
            }
            emit(&code, &analysis, steps, out.as_deref(), report.as_deref())?;
        }
        Command::Chain {
            theorem,
            q,
            k,
            d,
            out,
            report,
        } => {
            let theorem = Theorem::from_number(theorem)?;
            let base = ChainBase::new(theorem, q, k)?;
            let plan = base.plan(d)?;
            let (code, r) = base.build(&plan)?;
            if let Some(p) = &out {
                write(p, &format::write_multiset(&code))?;
            }
            if let Some(p) = &report {
                write_json(p, &r)?;
            }
            println!("{} (s={}, j={})", summary(&r), plan.s, plan.j);
        }
        Command::Table { theorem, q, k, format } => {
            let theorem = Theorem::from_number(theorem)?;
            let rows = chains::reproduce_table(theorem, q, k)?;
            match format {
                TableFormat::Json => println!("{}", serde_json::to_string_pretty(&rows)?),
                TableFormat::Txt => {
                    let wn = rows.iter().map(|r| r.n.to_string().len()).max().unwrap_or(1);
                    let wd = rows.iter().map(|r| r.d.to_string().len()).max().unwrap_or(1);
                    println!("{:>wn$} {:>wd$}", "n", "d");
                    for r in &rows {
                        println!("{:>wn$} {:>wd$}", r.n, r.d);
                    }
                }
            }
        }
        Command::Verify {
            input,
            expect_n,
            expect_k,
            expect_d,
            oracle,
            report,
        } => {
            let code = read_multiset(&input)?;
            let analysis = mcode::analyze(&code)?;
            let r = emit(
                &code,
                &analysis,
                vec![format!("verify {}", input.display())],
                None,
                report.as_deref(),
            )?;
            let mut problems = Vec::new();
            if expect_n.is_some_and(|n| n != r.n) {
                problems.push(format!("n = {}, expected {}", r.n, expect_n.unwrap()));
            }
            if expect_k.is_some_and(|k| k != r.k) {
                problems.push(format!("k = {}, expected {}", r.k, expect_k.unwrap()));
            }
            if expect_d.is_some_and(|d| d != r.d) {
                problems.push(format!("d = {}, expected {}", r.d, expect_d.unwrap()));
            }
            if oracle {
                let brute = mcode::oracle_weight_distribution(&code, oracle_bound()?)?;
                let from_spectrum = analysis.spectrum().weight_distribution(r.n, r.q);
                if brute == from_spectrum {
                    println!(
                        "oracle: {} codewords agree with the hyperplane spectrum",
                        brute.values().sum::<u64>()
                    );
                } else {
                    problems.push("codeword enumeration disagrees with the hyperplane spectrum".into());
                }
            }
            if !problems.is_empty() {
                bail!(VerificationFailed(problems.join("; ")));
            }
        }
        Command::Export {
            input,
            format: ExportFormat::Gmatrix,
            out,
        } => {
            let code = read_multiset(&input)?;
            let g = mcode::generator_matrix(&code)?;
            let text = format::write_matrix(code.q(), &g);
            match out {
                Some(p) => write(&p, &text)?,
                None => print!("{text}"),
            }
        }
    }
    Ok(())
}
