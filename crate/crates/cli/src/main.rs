use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use spectral_fe_cli::{config, resolve_out_dir, CliError, Context, Format, Outcome};

#[derive(Parser)]
#[command(name = "spectral-fe", version, about = "Free-energy estimation from sampled trace components")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Experiment config (JSON).
    #[arg(short, long, global = true)]
    config: Option<PathBuf>,

    /// Config overrides, e.g. `-s budget.beta=2 -s run.seed=7`.
    #[arg(short = 's', long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,

    /// Output directory (falls back to $SPECTRAL_FE_OUT_DIR, then run.output_dir).
    #[arg(short, long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    format: OutputFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Print the sampling plan for the configured model and budget.
    Plan,
    /// Draw samples of g(t) and write them as CSV.
    Sample,
    /// Estimate Z and F from a sample file.
    Estimate {
        /// Sample CSV (default: samples.csv in the output directory).
        #[arg(long)]
        samples: Option<PathBuf>,
        /// Plan JSON to check the sample header against.
        #[arg(long)]
        plan: Option<PathBuf>,
    },
    /// Compare the window constants with their closed-form bounds.
    VerifyLemmas,
    /// Monte Carlo study of readout noise.
    NoiseMc,
    /// Planner outputs over a range of spin counts.
    Sweep,
    /// Plan, sample and estimate in one run.
    Pipeline,
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let text = match &cli.config {
        Some(path) => std::fs::read_to_string(path).map_err(|source| config::ConfigError::Read {
            path: path.display().to_string(),
            source,
        })?,
        None if matches!(cli.command, Command::VerifyLemmas) => {
            r#"{"model":{"model":"free","n":1,"h":1.0},"budget":{"beta":1.0,"gamma":0.1}}"#.to_string()
        }
        None => {
            return Err(CliError::Config(config::ConfigError::Field {
                path: "--config".into(),
                message: "a config file is required for this command".into(),
            }))
        }
    };
    let (config, hash) = config::load(&text, &cli.overrides)?;
    if let Some(n) = cli.threads {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let out_dir = resolve_out_dir(cli.out.clone(), &config);
    let ctx = Context {
        config,
        hash,
        out_dir,
        format: match cli.format {
            OutputFormat::Json => Format::Json,
            OutputFormat::Text => Format::Text,
        },
    };
    match cli.command {
        Command::Plan => spectral_fe_cli::cmd_plan(&ctx),
        Command::Sample => spectral_fe_cli::cmd_sample(&ctx),
        Command::Estimate { samples, plan } => {
            let samples = samples.unwrap_or_else(|| ctx.out_dir.join("samples.csv"));
            spectral_fe_cli::cmd_estimate(&ctx, &samples, plan.as_deref())
        }
        Command::VerifyLemmas => spectral_fe_cli::cmd_verify_lemmas(&ctx),
        Command::NoiseMc => spectral_fe_cli::cmd_noise_mc(&ctx),
        Command::Sweep => spectral_fe_cli::cmd_sweep(&ctx),
        Command::Pipeline => spectral_fe_cli::cmd_pipeline(&ctx),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
