use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use marketmap::centrality::ClosenessMode;
use marketmap::panel::{
    generate_synthetic_panel, write_metadata, write_prices, SectorSpec, SyntheticSpec,
};
use marketmap::pipeline::{parse_fit_range, parse_thresholds, run_pipeline, PartialConfig};

#[derive(Debug, Parser)]
#[command(
    name = "marketmap",
    version,
    about = "Correlation networks of asset price panels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the full analysis on a price CSV.
    Run(RunArgs),
    /// Write a synthetic sectored price panel and its metadata.
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// `key = value` config file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    prices: Option<PathBuf>,
    #[arg(long)]
    meta: Option<PathBuf>,
    /// `start:stop:step` or a comma-separated list.
    #[arg(long)]
    thresholds: Option<String>,
    #[arg(long)]
    shuffles: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// `sum` or `mean`.
    #[arg(long)]
    closeness: Option<String>,
    /// Quantile window `lo,hi` for power-law fits.
    #[arg(long)]
    fit_range: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SynthArgs {
    #[arg(long)]
    assets: usize,
    /// Number of price rows.
    #[arg(long)]
    days: usize,
    /// Required; synthetic data is always generated from an explicit seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Sector list `label:size:loading,...`; overrides the balanced default.
    #[arg(long)]
    sectors: Option<String>,
    /// Number of equal sectors when `--sectors` is absent.
    #[arg(long, default_value_t = 5)]
    sector_count: usize,
    #[arg(long, default_value_t = 0.5)]
    sector_loading: f64,
    #[arg(long, default_value_t = 0.3)]
    market_loading: f64,
    /// Directory receiving `prices.csv` and `meta.csv`.
    #[arg(long)]
    out: PathBuf,
}

fn parse_sectors(spec: &str) -> Result<Vec<SectorSpec>> {
    spec.split(',')
        .map(|item| {
            let parts: Vec<&str> = item.split(':').map(str::trim).collect();
            let [label, size, loading] = parts[..] else {
                bail!("sector {item:?} must be label:size:loading");
            };
            Ok(SectorSpec {
                label: label.to_owned(),
                size: size
                    .parse()
                    .with_context(|| format!("sector size in {item:?}"))?,
                loading: loading
                    .parse()
                    .with_context(|| format!("sector loading in {item:?}"))?,
            })
        })
        .collect()
}

fn run(args: RunArgs) -> Result<()> {
    let file = match &args.config {
        Some(path) => PartialConfig::load(path)?,
        None => PartialConfig::default(),
    };
    let flags = PartialConfig {
        prices: args.prices,
        meta: args.meta,
        thresholds: args
            .thresholds
            .as_deref()
            .map(parse_thresholds)
            .transpose()?,
        shuffles: args.shuffles,
        seed: args.seed,
        closeness: args
            .closeness
            .as_deref()
            .map(str::parse::<ClosenessMode>)
            .transpose()?,
        fit_range: args.fit_range.as_deref().map(parse_fit_range).transpose()?,
        out: args.out,
    };
    let config = file.merge(flags).resolve()?;
    let manifest = run_pipeline(&config)?;
    println!(
        "{} assets, {} returns; noise floor {:.4} ± {:.4}; {} files in {}",
        manifest.n_assets,
        manifest.n_returns,
        manifest.noise_threshold.mean,
        manifest.noise_threshold.std,
        manifest.files.len(),
        config.out.display()
    );
    for w in &manifest.warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}

fn synth(args: SynthArgs) -> Result<()> {
    let seed = args.seed.ok_or_else(|| {
        anyhow!("synth: --seed is required so the panel can be regenerated exactly")
    })?;
    let mut spec = SyntheticSpec::balanced(
        args.assets,
        args.days,
        args.sector_count,
        args.sector_loading,
        args.market_loading,
        seed,
    );
    if let Some(s) = &args.sectors {
        spec.sectors = parse_sectors(s)?;
    }
    let (panel, meta) = generate_synthetic_panel::<f64>(&spec).context("synth")?;
    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;
    write_prices(&panel, args.out.join("prices.csv")).context("synth: writing prices")?;
    write_metadata(&meta, args.out.join("meta.csv")).context("synth: writing metadata")?;
    println!(
        "{} assets × {} days written to {}",
        panel.n_assets(),
        panel.n_days(),
        args.out.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Synth(args) => synth(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
