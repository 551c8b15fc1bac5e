use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cpbspec::config::{parse_config, Axis, Format, RunConfig};
use cpbspec::{presets, runner, CliError};

#[derive(Parser)]
#[command(
    name = "spectrum",
    version,
    about = "Transient fluorescence spectrum of a Cooper-pair box in a cavity"
)]
struct Cli {
    /// Worker threads for grid evaluation (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one configuration.
    Run {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Repeat a run for each value of one parameter.
    Sweep {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        overrides: Overrides,
        #[arg(long, value_enum)]
        axis: Axis,
        /// Comma-separated values.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// JSON run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_parser = presets::PRESET_NAMES)]
    preset: Option<String>,
}

#[derive(Args)]
struct Overrides {
    /// Also run the time-domain cross-check.
    #[arg(long)]
    oracle: bool,
    /// Report offsets in units of λ = g/√2.
    #[arg(long)]
    paper_axis: bool,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load(source: &Source, overrides: &Overrides) -> Result<RunConfig, CliError> {
    let mut cfg = match (&source.config, &source.preset) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            parse_config(&text)?
        }
        (None, Some(name)) => presets::preset(name).expect("clap restricts preset names"),
        (None, None) => unreachable!("clap requires a source"),
    };
    cfg.oracle.enabled |= overrides.oracle;
    cfg.output.paper_axis |= overrides.paper_axis;
    if let Some(format) = overrides.format {
        cfg.output.format = format;
    }
    if let Some(out) = &overrides.out {
        cfg.output.path = Some(out.clone());
    }
    Ok(cfg)
}

fn parse_values(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| CliError::Usage(format!("`{s}` is not a number")))
        })
        .collect()
}

fn execute(cli: Cli) -> Result<Vec<PathBuf>, CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Run { source, overrides } => runner::run(&load(&source, &overrides)?),
        Command::Sweep {
            source,
            overrides,
            axis,
            values,
        } => {
            let values = parse_values(&values)?;
            runner::sweep(&load(&source, &overrides)?, axis, &values)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::Usage(e.render().to_string().trim().to_owned());
            eprintln!("{}", err.to_json());
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    match execute(cli) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
