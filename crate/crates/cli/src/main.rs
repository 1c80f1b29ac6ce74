use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use toric_segre::cli::{self, Diagnostic, InputOptions, OutputFormat, Stage};
use toric_segre::Error;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Human,
    Json,
}

/// Push-forward Segre classes of subschemes of smooth projective toric varieties.
#[derive(Debug, Parser)]
#[command(name = "toric-segre", version)]
struct Args {
    /// Input document (JSON); reads standard input when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Seed for all random choices [default: 0].
    #[arg(long)]
    seed: Option<u64>,
    /// Coefficients of random forms are drawn from [-N, N] [default: 100].
    #[arg(long = "coeff-bound")]
    coeff_bound: Option<u64>,
    /// Number of resampling rounds after the first [default: 5].
    #[arg(long)]
    retries: Option<u32>,
    /// Output format [default: human].
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Run the invariant checks on the fan before computing.
    #[arg(long)]
    check: bool,
    /// Report progress on standard error.
    #[arg(long)]
    verbose: bool,
}

fn read_input(path: Option<&PathBuf>) -> Result<String, Diagnostic> {
    let io = |e: std::io::Error| Diagnostic { stage: Stage::Parse, error: Error::InvalidInput(e.to_string()) };
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(io),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(io)?;
            Ok(s)
        }
    }
}

fn execute(args: &Args) -> Result<String, Diagnostic> {
    let text = read_input(args.input.as_ref())?;
    let doc = cli::parse_input(&text).map_err(|error| Diagnostic { stage: Stage::Parse, error })?;
    let overrides = InputOptions {
        seed: args.seed,
        coeff_bound: args.coeff_bound,
        retries: args.retries,
        format: args.format.map(|f| match f {
            Format::Human => OutputFormat::Human,
            Format::Json => OutputFormat::Json,
        }),
    };
    let options = cli::resolve_options(&doc, &overrides);
    let format = overrides.format.or(doc.options.format).unwrap_or_default();
    if args.verbose {
        eprintln!("options: seed {}, coefficient bound {}, retries {}", options.seed, options.coeff_bound, options.retries);
    }
    if args.check {
        let setup = cli::build_setup(&doc)?;
        let report = cli::check_fan(&setup).map_err(|error| Diagnostic { stage: Stage::Chow, error })?;
        for line in report {
            eprintln!("check: {line}");
        }
    }
    let out = cli::run(&doc, &options)?;
    if args.verbose {
        eprintln!("alpha = {:?}, n = {}, k = {}, rounds used = {}", out.alpha, out.n, out.k, out.provenance.rounds_used);
        for r in &out.residuals {
            eprintln!(
                "d = {}: residual dimension {}, {} rows used, {} skipped, {} checks",
                r.d,
                r.dimension.map_or("empty".to_string(), |d| d.to_string()),
                r.rows_used,
                r.rows_skipped,
                r.consistency_rows
            );
        }
    }
    Ok(match format {
        OutputFormat::Human => cli::render_human(&out),
        OutputFormat::Json => cli::render_json(&out),
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(s) => {
            print!("{s}");
            if !s.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(d) => {
            eprintln!("{d}");
            ExitCode::from(u8::try_from(d.exit_code()).unwrap_or(1))
        }
    }
}
