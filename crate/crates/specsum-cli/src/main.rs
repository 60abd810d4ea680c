//! specsum: spectral queries for countable direct sums of operators.
//!
//! Every subcommand reads an operator family from a TOML config. Commands
//! that write files stamp each one with a manifest hash and drop a
//! `<name>.manifest.toml` sidecar recording the run.

mod config;
mod error;
mod manifest;
mod output;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use specsum_core::{
    classify_direct_sum_point, collect_moduli, counting_table, fit_asymptotic_exponent,
    spectral_scan, verify_family, ComplexPoint, ScanRegion, SpectralClass, VerifyConfig,
    VerifySuite,
};

use config::Config;
use error::CliError;
use manifest::{resolve_seed, RunManifest};
use output::{float_field, sup_field, CsvWriter};

#[derive(Parser)]
#[command(name = "specsum", version, about = "Spectral calculus for direct sums of operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one point of the complex plane
    Classify {
        /// Operator family description (TOML)
        #[arg(long)]
        config: PathBuf,
        /// Query point as RE,IM
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Classify every node of a rectangular grid and write a CSV table
    Scan {
        #[arg(long)]
        config: PathBuf,
        /// Rectangle as RE_START,RE_END,IM_START,IM_END
        #[arg(long, allow_hyphen_values = true)]
        region: String,
        /// Sample counts as RE_SAMPLES,IM_SAMPLES
        #[arg(long)]
        grid: String,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
    },
    /// Tabulate eigenvalue counts over a geometric ladder of radii
    Counting {
        #[arg(long)]
        config: PathBuf,
        /// Ladder as START,FACTOR,COUNT
        #[arg(long)]
        lambda_grid: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fit a power law to the merged eigenvalue moduli
    Fit {
        #[arg(long)]
        config: PathBuf,
        /// How many moduli to collect (default: the fit window top)
        #[arg(long)]
        count: Option<usize>,
        /// Fit window as LO,HI (1-based ranks, default from config)
        #[arg(long)]
        range: Option<String>,
        /// Optional CSV of rank, modulus, fitted prediction
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check engine results against dense linear algebra
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Coordinates included in the truncation (default from config)
        #[arg(long)]
        blocks: Option<u64>,
        /// Per-coordinate truncation size (default from config)
        #[arg(long)]
        size: Option<usize>,
        /// Optional CSV report
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Norm,
    Union,
    Resolvent,
    Counting,
}

impl From<SuiteArg> for VerifySuite {
    fn from(s: SuiteArg) -> VerifySuite {
        match s {
            SuiteArg::All => VerifySuite::All,
            SuiteArg::Norm => VerifySuite::Norm,
            SuiteArg::Union => VerifySuite::Union,
            SuiteArg::Resolvent => VerifySuite::Resolvent,
            SuiteArg::Counting => VerifySuite::Counting,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("specsum: {e}");
        std::process::exit(e.exit_code());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Classify { config, point } => classify(&config, &point),
        Command::Scan {
            config,
            region,
            grid,
            out,
        } => scan(&config, &region, &grid, &out),
        Command::Counting {
            config,
            lambda_grid,
            out,
        } => counting(&config, &lambda_grid, &out),
        Command::Fit {
            config,
            count,
            range,
            out,
        } => fit(&config, count, range.as_deref(), out.as_deref()),
        Command::Verify {
            config,
            suite,
            blocks,
            size,
            out,
        } => verify(&config, suite.into(), blocks, size, out.as_deref()),
    }
}

fn load(path: &Path) -> Result<(String, Config), CliError> {
    let text = std::fs::read_to_string(path)?;
    let config = Config::parse(&text)?;
    Ok((text, config))
}

fn parse_floats(text: &str, n: usize, what: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != n {
        return Err(CliError::Usage(format!(
            "{what}: expected {n} comma-separated values, got {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{what}: {p:?} is not a number")))
        })
        .collect()
}

fn classify(config_path: &Path, point: &str) -> Result<(), CliError> {
    let (_, config) = load(config_path)?;
    let family = config.family()?;
    let tol = config.tolerance();
    let parsed = parse_floats(point, 2, "--point")?;
    let lambda = ComplexPoint::new(parsed[0], parsed[1]);
    let row = classify_direct_sum_point(&family, lambda, &tol);
    match row.class {
        SpectralClass::Inconclusive => Err(CliError::Inconclusive(format!(
            "classification at {lambda} needs tail limits that were declared unknown"
        ))),
        SpectralClass::Resolvent => {
            let sup = row
                .resolvent_sup
                .finite()
                .expect("a resolvent point has a finite supremum");
            println!("{}, sup={sup:?}", row.class);
            Ok(())
        }
        _ => {
            match row.witness {
                Some(w) => println!("{} (witness {w})", row.class),
                None => println!("{} (divergent resolvent)", row.class),
            }
            Ok(())
        }
    }
}

fn scan(config_path: &Path, region: &str, grid: &str, out: &Path) -> Result<(), CliError> {
    let started = Instant::now();
    let (text, config) = load(config_path)?;
    let family = config.family()?;
    let tol = config.tolerance();
    let r = parse_floats(region, 4, "--region")?;
    let g = parse_floats(grid, 2, "--grid")?;
    let (re_samples, im_samples) = (g[0] as usize, g[1] as usize);
    if g[0].fract() != 0.0 || g[1].fract() != 0.0 || re_samples == 0 || im_samples == 0 {
        return Err(CliError::Usage(
            "--grid: sample counts must be positive integers".into(),
        ));
    }
    let scan_region = ScanRegion::new(r[0], r[1], r[2], r[3], re_samples, im_samples)?;
    let rows = spectral_scan(&family, &scan_region, &tol);

    let seed = resolve_seed(config.seed)?;
    let manifest = RunManifest::new(
        &format!("scan region={region} grid={grid}"),
        &text,
        seed,
        vec![out.display().to_string()],
    );
    let mut csv = CsvWriter::new(&manifest.manifest_hash, &["re", "im", "class", "witness", "sup"]);
    let mut inconclusive = 0usize;
    for row in &rows {
        if row.class == SpectralClass::Inconclusive {
            inconclusive += 1;
        }
        csv.row(&[
            float_field(row.point.re),
            float_field(row.point.im),
            row.class.to_string(),
            row.witness.map(|w| w.to_string()).unwrap_or_default(),
            sup_field(&row.resolvent_sup),
        ]);
    }
    csv.write(out)?;
    manifest.write_sidecar(out, started.elapsed().as_millis())?;
    if inconclusive > 0 {
        return Err(CliError::Inconclusive(format!(
            "{inconclusive} of {} grid nodes need tail limits that were declared unknown",
            rows.len()
        )));
    }
    Ok(())
}

fn counting(config_path: &Path, lambda_grid: &str, out: &Path) -> Result<(), CliError> {
    let started = Instant::now();
    let (text, config) = load(config_path)?;
    let family = config.family()?;
    let tol = config.tolerance();
    let parsed = parse_floats(lambda_grid, 3, "--lambda-grid")?;
    let (start, factor, count) = (parsed[0], parsed[1], parsed[2] as usize);
    if !(start > 0.0 && factor > 0.0) || parsed[2].fract() != 0.0 || count == 0 {
        return Err(CliError::Usage(
            "--lambda-grid: need START > 0, FACTOR > 0 and a positive integer COUNT".into(),
        ));
    }
    let mut lambdas = Vec::with_capacity(count);
    let mut lambda = start;
    for _ in 0..count {
        lambdas.push(lambda);
        lambda *= factor;
    }
    let rows = counting_table(&family, &lambdas, &tol)?;

    let seed = resolve_seed(config.seed)?;
    let manifest = RunManifest::new(
        &format!("counting lambda-grid={lambda_grid}"),
        &text,
        seed,
        vec![out.display().to_string()],
    );
    let mut csv = CsvWriter::new(&manifest.manifest_hash, &["lambda", "count", "overlap"]);
    for row in &rows {
        csv.row(&[
            float_field(row.lambda),
            row.count.to_string(),
            row.overlap.to_string(),
        ]);
    }
    csv.write(out)?;
    manifest.write_sidecar(out, started.elapsed().as_millis())?;
    Ok(())
}

fn fit(
    config_path: &Path,
    count: Option<usize>,
    range: Option<&str>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let started = Instant::now();
    let (text, config) = load(config_path)?;
    let family = config.family()?;
    let tol = config.tolerance();
    let window = match range {
        Some(r) => {
            let parsed = parse_floats(r, 2, "--range")?;
            if parsed[0].fract() != 0.0 || parsed[1].fract() != 0.0 {
                return Err(CliError::Usage("--range: ranks must be integers".into()));
            }
            (parsed[0] as usize, parsed[1] as usize)
        }
        None => (config.defaults.fit_lo, config.defaults.fit_hi),
    };
    let count = count.unwrap_or(window.1);
    let moduli = collect_moduli(&family, count, &tol)?;
    let fit = fit_asymptotic_exponent(&moduli, window)?;
    println!(
        "alpha={:?} gamma={:?} residual={:?} window={}..{}",
        fit.alpha, fit.gamma, fit.residual, window.0, window.1
    );

    if let Some(out) = out {
        let seed = resolve_seed(config.seed)?;
        let manifest = RunManifest::new(
            &format!("fit count={count} range={},{}", window.0, window.1),
            &text,
            seed,
            vec![out.display().to_string()],
        );
        let mut csv = CsvWriter::new(&manifest.manifest_hash, &["n", "modulus", "predicted"]);
        for (i, modulus) in moduli.iter().enumerate() {
            csv.row(&[
                (i + 1).to_string(),
                float_field(*modulus),
                float_field(fit.predict(i + 1)),
            ]);
        }
        csv.write(out)?;
        manifest.write_sidecar(out, started.elapsed().as_millis())?;
    }
    Ok(())
}

fn verify(
    config_path: &Path,
    suite: VerifySuite,
    blocks: Option<u64>,
    size: Option<usize>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let started = Instant::now();
    let (text, config) = load(config_path)?;
    let family = config.family()?;
    let tol = config.tolerance();
    let seed = resolve_seed(config.seed)?;
    let verify_config = VerifyConfig {
        blocks: blocks.unwrap_or(config.defaults.blocks),
        block_size: size.unwrap_or(config.defaults.size),
        counting_lambda: config.defaults.counting_lambda,
        seed: Some(seed),
        ..VerifyConfig::default()
    };
    let reports = verify_family(&family, suite, &verify_config, &tol)?;
    let mut failed = 0usize;
    for report in &reports {
        println!(
            "{}: engine={:?} oracle={:?} discrepancy={:.3e} tol={:.1e} {}",
            report.property,
            report.engine_value,
            report.oracle_value,
            report.discrepancy,
            report.tolerance,
            if report.pass { "PASS" } else { "FAIL" }
        );
        if !report.pass {
            failed += 1;
        }
    }

    if let Some(out) = out {
        let manifest = RunManifest::new(
            &format!(
                "verify suite={suite:?} blocks={} size={}",
                verify_config.blocks, verify_config.block_size
            ),
            &text,
            seed,
            vec![out.display().to_string()],
        );
        let mut csv = CsvWriter::new(
            &manifest.manifest_hash,
            &[
                "property",
                "blocks",
                "block_size",
                "engine_value",
                "oracle_value",
                "discrepancy",
                "tolerance",
                "pass",
                "seed",
            ],
        );
        for report in &reports {
            csv.row(&[
                report.property.clone(),
                report.blocks.to_string(),
                report.block_size.to_string(),
                float_field(report.engine_value),
                float_field(report.oracle_value),
                float_field(report.discrepancy),
                float_field(report.tolerance),
                report.pass.to_string(),
                report.seed.map(|s| s.to_string()).unwrap_or_default(),
            ]);
        }
        csv.write(out)?;
        manifest.write_sidecar(out, started.elapsed().as_millis())?;
    }

    if failed > 0 {
        return Err(CliError::VerifyFailed(format!(
            "{failed} of {} checks failed",
            reports.len()
        )));
    }
    Ok(())
}
