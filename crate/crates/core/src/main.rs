use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use tensor_atoms::bounds::{
    firstrow_scan, saturation_scan, theorem_scan, write_reports_csv, write_saturation_csv, BoundReport,
    ScanSummary,
};
use tensor_atoms::config::{parse_cap, Caps, Format, RunConfig, CAP_ENV};
use tensor_atoms::dist::rational_to_f64;
use tensor_atoms::lr::LrDecompositionJson;
use tensor_atoms::measure::{identity_report_capped, PatternSampler};
use tensor_atoms::rmt::{corollary_experiment, corollary_samples, write_samples_csv, Spectrum};
use tensor_atoms::{dim_checked, format_rational, lr_measure, Error, Result, Weight};

/// Exit status when a verification or statistical test fails.
const EXIT_TEST_FAILED: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "tensor-atoms", version, about = "Littlewood-Richardson measures, patterns and atom bounds")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// TOML run configuration; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Enumeration cap for every limit (overrides the config file and TENSOR_ATOMS_CAP).
    #[arg(long, global = true)]
    cap: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file (stdout if absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// json or csv.
    #[arg(long, global = true)]
    format: Option<Format>,
    #[arg(long, global = true)]
    significance: Option<f64>,
    /// Worker threads for scans and sampling.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Expected rank; weights of another length are rejected.
    #[arg(long, global = true)]
    n: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension of the irreducible representation with highest weight λ.
    Dim {
        #[arg(allow_hyphen_values = true)]
        weight: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// Decomposition of λ ⊗ μ.
    Lr {
        #[command(flatten)]
        pair: Pair,
        /// Include the exact measure c·d_ν/(d_λ d_μ) of each component.
        #[arg(long)]
        measure: bool,
    },
    /// Both exact laws of ν_1 and whether they agree.
    Identity {
        #[command(flatten)]
        pair: Pair,
    },
    /// Grid scan of atom bounds.
    Scan {
        #[arg(long, conflicts_with_all = ["firstrow", "saturation"])]
        theorem: bool,
        #[arg(long, conflicts_with = "saturation")]
        firstrow: bool,
        #[arg(long)]
        saturation: bool,
        /// Largest gap λ_1 - λ_n (theorem, firstrow) or largest N, M (saturation).
        #[arg(long, default_value_t = 4)]
        max_gap: u64,
        /// Restrict a first-row scan to one k.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Random-matrix comparison of the top eigenvalue of A + B with corner sums.
    Rmt {
        #[arg(long = "spec-a", allow_hyphen_values = true)]
        spec_a: String,
        #[arg(long = "spec-b", allow_hyphen_values = true)]
        spec_b: String,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        /// Also write raw samples as CSV.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Uniform random patterns of shape λ.
    Sample {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, alias = "count", default_value_t = 1)]
        samples: usize,
    },
}

#[derive(Args, Debug)]
struct Pair {
    #[arg(allow_hyphen_values = true)]
    lambda_pos: Option<String>,
    #[arg(allow_hyphen_values = true)]
    mu_pos: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
}

struct Ctx {
    cfg: RunConfig,
    n: Option<usize>,
    explicit_format: bool,
}

impl Ctx {
    fn from_global(g: &Global) -> Result<Ctx> {
        let mut cfg = match &g.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig { caps: Caps::from_env()?, ..RunConfig::default() },
        };
        if g.config.is_some() && std::env::var(CAP_ENV).is_ok() && g.cap.is_none() {
            cfg.caps = Caps::from_env()?;
        }
        if let Some(c) = &g.cap {
            cfg.caps = Caps::uniform(parse_cap(c)?);
        }
        if let Some(s) = g.seed {
            cfg.seed = s;
        }
        if let Some(p) = &g.out {
            cfg.output.path = Some(p.clone());
        }
        if let Some(f) = g.format {
            cfg.output.format = f;
        }
        if let Some(s) = g.significance {
            cfg.significance = s;
        }
        if g.workers.is_some() {
            cfg.workers = g.workers;
        }
        if g.n.is_some() {
            cfg.n = g.n;
        }
        cfg.validate()?;
        if let Some(w) = cfg.workers {
            rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build_global()
                .map_err(|e| Error::Internal(e.to_string()))?;
        }
        Ok(Ctx { n: cfg.n, explicit_format: g.format.is_some(), cfg })
    }

    fn weight(&self, text: &str) -> Result<Weight> {
        let w: Weight = text.parse()?;
        if let Some(n) = self.n {
            if w.rank() != n {
                return Err(Error::RankMismatch(n, w.rank()));
            }
        }
        let (d, offset) = w.normalize();
        eprintln!("input {w}  normalized {d} + {offset}·1");
        Ok(w)
    }

    /// Weight from a flag, a positional argument, or the config file's list.
    fn pick(&self, flag: &Option<String>, pos: &Option<String>, idx: usize, name: &str) -> Result<Weight> {
        let text = flag
            .clone()
            .or_else(|| pos.clone())
            .or_else(|| self.cfg.weights.get(idx).cloned())
            .ok_or_else(|| Error::InvalidArgument(format!("missing weight {name}")))?;
        self.weight(&text)
    }

    fn output(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.cfg.output.path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout())),
        })
    }

    fn write_json<T: Serialize>(&self, value: &T) -> Result<()> {
        let mut out = self.output()?;
        serde_json::to_writer_pretty(&mut out, value)?;
        writeln!(out)?;
        out.flush()?;
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let ctx = Ctx::from_global(&cli.global)?;
    match cli.command {
        Command::Dim { weight, lambda } => {
            let w = ctx.pick(&lambda, &weight, 0, "λ")?;
            let d = dim_checked(&w)?;
            let mut out = ctx.output()?;
            match ctx.cfg.output.format {
                _ if !ctx.explicit_format => writeln!(out, "{d}")?,
                Format::Json => writeln!(out, "{}", json!({ "lambda": w, "dim": d.to_string() }))?,
                Format::Csv => writeln!(out, "lambda,dim\n\"{w}\",{d}")?,
            }
            out.flush()?;
            Ok(0)
        }
        Command::Lr { pair, measure } => cmd_lr(&ctx, &pair, measure),
        Command::Identity { pair } => cmd_identity(&ctx, &pair),
        Command::Scan { theorem, firstrow, saturation, max_gap, k } => {
            cmd_scan(&ctx, theorem, firstrow, saturation, max_gap, k)
        }
        Command::Rmt { spec_a, spec_b, samples, dump } => cmd_rmt(&ctx, &spec_a, &spec_b, samples, dump),
        Command::Sample { lambda, samples } => {
            let w = ctx.weight(&lambda)?;
            let patterns = PatternSampler::new(&w, ctx.cfg.caps.sampler_rows)?.sample_many(samples, ctx.cfg.seed)?;
            match ctx.cfg.output.format {
                Format::Json => ctx.write_json(&patterns)?,
                Format::Csv => {
                    let mut wr = csv::Writer::from_writer(ctx.output()?);
                    wr.write_record(["index", "pattern"])?;
                    for (i, p) in patterns.iter().enumerate() {
                        wr.write_record([i.to_string(), p.to_string()])?;
                    }
                    wr.flush()?;
                }
            }
            Ok(0)
        }
    }
}

fn cmd_lr(ctx: &Ctx, pair: &Pair, measure: bool) -> Result<u8> {
    let lambda = ctx.pick(&pair.lambda, &pair.lambda_pos, 0, "λ")?;
    let mu = ctx.pick(&pair.mu, &pair.mu_pos, 1, "μ")?;
    let dec = lr_measure(&lambda, &mu)?;
    match ctx.cfg.output.format {
        Format::Json if measure => ctx.write_json(&LrDecompositionJson::from(&dec))?,
        Format::Json => ctx.write_json(&json!({
            "lambda": lambda,
            "mu": mu,
            "terms": dec.terms.iter().map(|(nu, t)| json!({
                "nu": nu,
                "c": t.multiplicity.to_string(),
            })).collect::<Vec<_>>(),
        }))?,
        Format::Csv => {
            let mut wr = csv::Writer::from_writer(ctx.output()?);
            let mut header = vec!["nu", "c", "dim"];
            if measure {
                header.extend(["atom_num", "atom_den", "approx"]);
            }
            wr.write_record(&header)?;
            for (nu, t) in &dec.terms {
                let mut rec = vec![nu.to_string(), t.multiplicity.to_string(), t.dim.to_string()];
                if measure {
                    rec.extend([
                        t.atom.numer().to_string(),
                        t.atom.denom().to_string(),
                        format!("{:.12}", rational_to_f64(&t.atom)),
                    ]);
                }
                wr.write_record(&rec)?;
            }
            wr.flush()?;
        }
    }
    Ok(0)
}

fn cmd_identity(ctx: &Ctx, pair: &Pair) -> Result<u8> {
    let lambda = ctx.pick(&pair.lambda, &pair.lambda_pos, 0, "λ")?;
    let mu = ctx.pick(&pair.mu, &pair.mu_pos, 1, "μ")?;
    let r = identity_report_capped(&lambda, &mu, ctx.cfg.caps.support)?;
    let verdict = if r.equal() { "equal" } else { "unequal" };
    match ctx.cfg.output.format {
        Format::Json => ctx.write_json(&json!({
            "lambda": lambda,
            "mu": mu,
            "max_convolution": r.max_convolution,
            "nu1_from_lr": r.nu1_from_lr,
            "verdict": verdict,
        }))?,
        Format::Csv => {
            let mut wr = csv::Writer::from_writer(ctx.output()?);
            wr.write_record(["side", "outcome", "numerator", "denominator"])?;
            for (side, d) in [("max_convolution", &r.max_convolution), ("nu1_from_lr", &r.nu1_from_lr)] {
                for (x, m) in d.masses() {
                    wr.write_record([side.to_string(), x.to_string(), m.numer().to_string(), m.denom().to_string()])?;
                }
            }
            wr.flush()?;
        }
    }
    eprintln!("{verdict}");
    Ok(if r.equal() { 0 } else { EXIT_TEST_FAILED })
}

fn summary_json(name: &str, s: &ScanSummary) -> serde_json::Value {
    json!({
        "constant": name,
        "supremum": s.supremum().map(format_rational),
        "witness": s.witness(),
        "cells": s.reports.len(),
        "vacuous": s.vacuous_count(),
        "reports": s.reports,
    })
}

fn print_supremum(name: &str, s: &ScanSummary) {
    match (s.supremum(), s.witness()) {
        (Some(q), Some(w)) => eprintln!(
            "{name} >= {} ≈ {:.6} at lambda={} mu_or_k={} witness={}",
            format_rational(q),
            rational_to_f64(q),
            w.input.lambda(),
            w.input.mu_or_k(),
            w.witness
        ),
        _ => eprintln!("{name}: no finite ratio on this grid"),
    }
}

fn cmd_scan(ctx: &Ctx, theorem: bool, firstrow: bool, saturation: bool, max_gap: u64, k: Option<usize>) -> Result<u8> {
    let n = ctx.n.ok_or_else(|| Error::InvalidArgument("scan needs --n".into()))?;
    if n < 2 {
        return Err(Error::InvalidArgument("scan needs n >= 2".into()));
    }
    if saturation {
        let rows = saturation_scan(n, max_gap)?;
        match ctx.cfg.output.format {
            Format::Csv => write_saturation_csv(&rows, ctx.output()?)?,
            Format::Json => ctx.write_json(
                &rows
                    .iter()
                    .map(|r| {
                        json!({
                            "N": r.big_n,
                            "M": r.big_m,
                            "support_size": r.support_size,
                            "literature_count": r.literature_count,
                            "count_matches_literature": r.count_matches_literature,
                            "support_ok": r.support_ok,
                            "multiplicities_one": r.multiplicities_one,
                            "lower_bound_ok": r.lower_bound_ok,
                            "report": r.report,
                        })
                    })
                    .collect::<Vec<_>>(),
            )?,
        }
        let ok = rows.iter().all(|r| r.support_ok && r.multiplicities_one && r.lower_bound_ok);
        let reports: Vec<BoundReport> = rows.into_iter().map(|r| r.report).collect();
        let summary = ScanSummary::from_reports(reports);
        print_supremum("saturation ratio", &summary);
        eprintln!("support and multiplicities {}", if ok { "as expected" } else { "NOT as expected" });
        return Ok(if ok { 0 } else { EXIT_TEST_FAILED });
    }
    let (name, mut summary) = if theorem || !firstrow {
        ("C_n", theorem_scan(n, max_gap)?)
    } else {
        ("D_n", firstrow_scan(n, max_gap)?)
    };
    if let Some(k) = k {
        if name == "D_n" {
            let kept = summary
                .reports
                .into_iter()
                .filter(|r| r.input.mu_or_k() == k.to_string())
                .collect();
            summary = ScanSummary::from_reports(kept);
        }
    }
    match ctx.cfg.output.format {
        Format::Csv => write_reports_csv(&summary.reports, ctx.output()?)?,
        Format::Json => ctx.write_json(&summary_json(name, &summary))?,
    }
    print_supremum(name, &summary);
    Ok(0)
}

fn cmd_rmt(ctx: &Ctx, spec_a: &str, spec_b: &str, samples: usize, dump: Option<PathBuf>) -> Result<u8> {
    let a: Spectrum = spec_a.parse()?;
    let b: Spectrum = spec_b.parse()?;
    if let Some(n) = ctx.n {
        if a.n() != n {
            return Err(Error::RankMismatch(n, a.n()));
        }
    }
    let report = corollary_experiment(&a, &b, samples, ctx.cfg.seed, ctx.cfg.significance)?;
    if let Some(p) = dump {
        let (top, corner) = corollary_samples(&a, &b, samples, ctx.cfg.seed)?;
        write_samples_csv(&top, &corner, BufWriter::new(File::create(p)?))?;
    }
    ctx.write_json(&report)?;
    eprintln!(
        "KS {:.6} vs critical {:.6}: {}",
        report.ks.statistic,
        report.ks.critical_value,
        if report.passed { "pass" } else { "FAIL" }
    );
    Ok(if report.passed { 0 } else { EXIT_TEST_FAILED })
}
