use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use strictloc::bounds::{bounds_causal_target, bounds_physical_target, BoundReport};
use strictloc::pulses::{gaussian_pulse, physical_target_from_seed, GaussianSpec};
use strictloc::signal::{fourier_forward, Grid, SampledSignal};
use strictloc::sweep::{fmt_num, linspace, logspace, run_figure_sweep, FigureId, SweepConfig};
use strictloc::verify::{run_suite, Suite};
use strictloc::Complex64;

#[derive(Parser)]
#[command(name = "strictloc", version, about = "Bounds and checks for strictly localized photon states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the CSV sweep behind one figure.
    Figure {
        /// fig2, fig3, fig4, fig5 or fig6.
        id: String,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Number of sweep points over the sweep range.
        #[arg(long)]
        points: Option<usize>,
        /// Sweep range as `start,end`.
        #[arg(long, value_delimiter = ',')]
        range: Option<Vec<f64>>,
        /// Comma-separated series values (ω₀σ for fig2/fig5, τ/σ otherwise).
        #[arg(long, value_delimiter = ',')]
        series: Option<Vec<f64>>,
        /// Samples per pulse grid (power of two).
        #[arg(long)]
        n_samples: Option<usize>,
        /// Photon number.
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Fidelity bounds for a single target.
    Report {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 1.0)]
        omega0_sigma: f64,
        #[arg(long, default_value_t = 3.0)]
        tau_over_sigma: f64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// CSV file with columns t,re,im on a uniform power-of-two grid.
        #[arg(long)]
        signal_file: Option<PathBuf>,
        #[arg(long, default_value_t = 1 << 16)]
        n_samples: usize,
        /// Print one CSV header and row instead of text.
        #[arg(long)]
        csv: bool,
    },
    /// Run self-checks; exits nonzero if any fails.
    Verify {
        #[arg(value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Causal,
    Physical,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Fock,
    Measurement,
    Signal,
    Demos,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Fock => Suite::Fock,
            SuiteArg::Measurement => Suite::Measurement,
            SuiteArg::Signal => Suite::Signal,
            SuiteArg::Demos => Suite::Demos,
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Figure { id, out: out_path, points, range, series, n_samples, n } => {
            let fig: FigureId = id.parse()?;
            let mut cfg = SweepConfig::default_for(fig);
            if points.is_some() || range.is_some() {
                let p = points.unwrap_or(cfg.sweep.len());
                if p < 2 {
                    bail!("--points must be at least 2");
                }
                let (a, b) = match range.as_deref() {
                    Some([a, b]) => (*a, *b),
                    Some(_) => bail!("--range takes exactly two values"),
                    None => (cfg.sweep[0], *cfg.sweep.last().unwrap()),
                };
                cfg.sweep = if matches!(fig, FigureId::Fig2 | FigureId::Fig5) {
                    linspace(a, b, p)
                } else {
                    if a <= 0.0 {
                        bail!("logarithmic sweep needs a positive range");
                    }
                    logspace(a, b, p)
                };
            }
            if let Some(s) = series {
                cfg.series = s;
            }
            if let Some(ns) = n_samples {
                cfg.n_samples = ns;
            }
            cfg.n_photon = n;
            let csv = run_figure_sweep(&cfg)?.to_csv();
            match out_path {
                Some(path) => {
                    fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?
                }
                None => out.write_all(csv.as_bytes())?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Report { kind, omega0_sigma, tau_over_sigma, n, signal_file, n_samples, csv } => {
            let report = match (kind, signal_file) {
                (Kind::Causal, Some(path)) => bounds_causal_target(&read_signal(&path)?, n)?,
                (Kind::Physical, Some(path)) => {
                    let spec = fourier_forward(&read_signal(&path)?).positive_part().normalized()?;
                    bounds_physical_target(&spec, n)?
                }
                (Kind::Causal, None) => {
                    let spec = GaussianSpec::dimensionless(omega0_sigma, tau_over_sigma, true)?;
                    let grid = spec.default_grid(n_samples)?;
                    bounds_causal_target(&gaussian_pulse(&spec, &grid)?, n)?
                }
                (Kind::Physical, None) => {
                    let spec = GaussianSpec::dimensionless(omega0_sigma, tau_over_sigma, false)?;
                    let grid = spec.default_grid(n_samples)?;
                    bounds_physical_target(&physical_target_from_seed(&spec, &grid)?, n)?
                }
            };
            print_report(&mut out, &report, csv)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite } => {
            let results = run_suite(suite.into());
            for r in &results {
                writeln!(out, "{r}")?;
                for row in &r.rows {
                    writeln!(out, "    {row}")?;
                }
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            writeln!(out, "{} checks, {failed} failed", results.len())?;
            Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

/// Reads `t,re,im` rows (header optional) sampled on a uniform grid.
fn read_signal(path: &PathBuf) -> Result<SampledSignal> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("opening {}", path.display()))?;
    let mut ts = Vec::new();
    let mut vals = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        if rec.len() != 3 {
            bail!("line {}: expected 3 columns, got {}", i + 1, rec.len());
        }
        let parsed: std::result::Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(v) => {
                ts.push(v[0]);
                vals.push(Complex64::new(v[1], v[2]));
            }
            Err(_) if i == 0 => continue,
            Err(e) => bail!("line {}: {e}", i + 1),
        }
    }
    if ts.len() < 2 {
        bail!("need at least two samples");
    }
    let dt = ts[1] - ts[0];
    for (k, w) in ts.windows(2).enumerate() {
        if ((w[1] - w[0]) - dt).abs() > 1e-9 * dt.abs().max(1.0) {
            bail!("non-uniform sampling at row {}", k + 2);
        }
    }
    let grid = Grid::new(ts.len(), dt, ts[0])?;
    Ok(SampledSignal::new(grid, vals)?.normalized()?)
}

fn print_report(out: &mut impl Write, r: &BoundReport, csv: bool) -> io::Result<()> {
    let opt = |v: Option<f64>| v.map(fmt_num).unwrap_or_default();
    let i = &r.inputs;
    let fields = [
        ("target", r.target_kind.label().to_string()),
        ("n", r.n_photon.to_string()),
        ("upper", fmt_num(r.upper)),
        ("lower", fmt_num(r.lower)),
        ("upper_first_order", opt(r.upper_first_order)),
        ("lower_first_order", opt(r.lower_first_order)),
        ("upper_single_photon", opt(r.upper_single_photon)),
        ("mu", opt(i.mu)),
        ("nu_abs", opt(i.nu_abs)),
        ("eta", fmt_num(i.eta)),
        ("eta_tilde", fmt_num(i.eta_tilde)),
        ("j_const", fmt_num(i.j_const)),
        ("gamma", fmt_num(i.gamma)),
        ("fidelity_n", fmt_num(i.fidelity_n)),
        ("invariants", if r.invariants_hold() { "ok" } else { "violated" }.to_string()),
    ];
    if csv {
        writeln!(out, "{}", fields.iter().map(|f| f.0).collect::<Vec<_>>().join(","))?;
        writeln!(out, "{}", fields.iter().map(|f| f.1.as_str()).collect::<Vec<_>>().join(","))?;
    } else {
        for (k, v) in fields {
            if !v.is_empty() {
                writeln!(out, "{k:>20}  {v}")?;
            }
        }
    }
    out.flush()
}
