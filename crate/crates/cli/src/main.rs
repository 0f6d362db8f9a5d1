use std::path::PathBuf;
use std::process::ExitCode;

use chanbound_cli::{
    cmd_analyze_channel, cmd_analyze_state, cmd_reproduce, cmd_zoo, CliError, Example, Format,
    ReeMode, ReproduceParams, RunConfig,
};
use chanbound_core::entropy::LogBase;
use chanbound_core::optimize::OptimizerConfig;
use clap::{Args, Parser, Subcommand};

/// Certified lower bounds on distances of quantum channels and states to
/// degradable, antidegradable, entanglement-breaking, separable and product sets.
#[derive(Parser, Debug)]
#[command(name = "chanbound", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Logarithm base: 2 or e.
    #[arg(long, global = true, default_value = "2")]
    log_base: LogBase,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    restarts: Option<usize>,
    #[arg(long, global = true)]
    max_iters: Option<usize>,
    /// Exit with code 3 if any search stops without converging.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Args, Debug)]
struct ReeFlags {
    /// Always run the PPT relative-entropy search.
    #[arg(long, conflicts_with = "no_ree")]
    ree: bool,
    /// Never run it.
    #[arg(long)]
    no_ree: bool,
}

impl ReeFlags {
    fn mode(&self) -> ReeMode {
        match (self.ree, self.no_ree) {
            (true, _) => ReeMode::On,
            (_, true) => ReeMode::Off,
            _ => ReeMode::Auto,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bounds for a channel given as Kraus JSON.
    AnalyzeChannel {
        path: PathBuf,
        #[command(flatten)]
        ree: ReeFlags,
    },
    /// Bounds for a bipartite state given as JSON.
    AnalyzeState {
        path: PathBuf,
        #[command(flatten)]
        ree: ReeFlags,
    },
    /// Closed-form tables for identity and erasure channels.
    Reproduce {
        #[arg(value_enum)]
        example: Example,
        /// Dimensions, comma separated or an inclusive range `lo..hi`.
        #[arg(long, value_parser = parse_dims)]
        dims: Option<Dims>,
        /// Erasure probabilities, comma separated.
        #[arg(long, value_delimiter = ',')]
        p_grid: Option<Vec<f64>>,
        /// Offset from 1/2 for the tightness scan.
        #[arg(long, default_value_t = 0.25)]
        x: f64,
    },
    /// Writes a named channel as Kraus JSON.
    Zoo { name: String, params: Vec<String> },
}

#[derive(Clone, Debug)]
struct Dims(Vec<usize>);

fn parse_dims(s: &str) -> Result<Dims, String> {
    let bad = |_| format!("bad dimension list {s}");
    let dims: Vec<usize> = if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(bad)?;
        let hi: usize = hi.trim().parse().map_err(bad)?;
        (lo..=hi).collect()
    } else {
        s.split(',').map(|t| t.trim().parse().map_err(bad)).collect::<Result<_, _>>()?
    };
    if dims.is_empty() || dims.contains(&0) {
        return Err(format!("bad dimension list {s}"));
    }
    Ok(Dims(dims))
}

fn run(cli: Cli) -> Result<(), CliError> {
    let c = cli.common;
    let defaults = OptimizerConfig::default();
    let mut cfg = RunConfig {
        optimizer: OptimizerConfig {
            restarts: c.restarts.unwrap_or(defaults.restarts),
            max_iters: c.max_iters.unwrap_or(defaults.max_iters),
            seed: c.seed,
            base: c.log_base,
            ..defaults
        },
        out: c.out,
        format: c.format,
        strict: c.strict,
        ree: ReeMode::Auto,
    };
    cfg.optimizer.validate()?;
    match cli.command {
        Command::AnalyzeChannel { path, ree } => {
            cfg.ree = ree.mode();
            cmd_analyze_channel(&path, &cfg).map(drop)
        }
        Command::AnalyzeState { path, ree } => {
            cfg.ree = ree.mode();
            cmd_analyze_state(&path, &cfg).map(drop)
        }
        Command::Reproduce { example, dims, p_grid, x } => {
            let params = ReproduceParams { dims: dims.map(|d| d.0), p_grid, x };
            cmd_reproduce(example, &params, &cfg).map(drop)
        }
        Command::Zoo { name, params } => cmd_zoo(&name, &params, &cfg).map(drop),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("chanbound: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
