use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use integral_cli::commands;
use integral_core::{CorrelationMode, TraceMethod};

#[derive(Parser)]
#[command(name = "integral", version, about = "Integral correlation indicators for panel time series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Pearson,
    Literal,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Incremental,
    Batch,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic panel from a factor-model config.
    Gen {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Compute G_i(t) for every epoch and the system indicator G.
    Analyze {
        #[arg(long)]
        panel: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "pearson")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "incremental")]
        method: Method,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare a baseline strategy with a sanctioned alternative.
    Compare {
        #[arg(long)]
        panel: PathBuf,
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        plots: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen { config, out, seed } => commands::gen(&config, &out, seed),
        Command::Analyze { panel, k, mode, method, out } => {
            let mode = match mode {
                Mode::Pearson => CorrelationMode::Pearson,
                Mode::Literal => CorrelationMode::Literal,
            };
            let method = match method {
                Method::Incremental => TraceMethod::Incremental,
                Method::Batch => TraceMethod::Batch,
            };
            commands::analyze(&panel, k, mode, method, &out)
        }
        Command::Compare { panel, scenario, out, plots } => {
            commands::compare(&panel, &scenario, &out, plots.as_deref())
        }
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            let color = std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty())
                && std::io::stderr().is_terminal();
            let prefix = if color { "\x1b[1;31merror\x1b[0m" } else { "error" };
            eprintln!("{prefix}: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
