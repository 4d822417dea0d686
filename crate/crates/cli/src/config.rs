//! Argument parsing and validation.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wronbeta_core::series::ReturnKind;
use wronbeta_core::{IndependenceThreshold, Model};

/// Environment variable holding the default independence threshold.
pub const EPSILON_ENV: &str = "WRONBETA_EPSILON";

#[derive(Debug, Parser)]
#[command(
    name = "wronbeta",
    version,
    about = "Rolling model-free alpha/beta estimation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Split a series into trailing-mean trend and fluctuation.
    Decompose(SingleArgs),
    /// One-step returns of a price series.
    Returns(SingleArgs),
    /// Rolling volatility of values or returns.
    Vol(SingleArgs),
    /// Rolling betas at one window length.
    Beta(BetaArgs),
    /// Rolling betas choosing the best-conditioned of several windows.
    Multibeta(BetaArgs),
}

#[derive(Debug, Args)]
struct Common {
    /// Value column to read from every input file.
    #[arg(long, default_value = "close")]
    column: String,
    /// Return definition used by return and volatility modes.
    #[arg(long, value_enum, default_value_t = KindArg::Simple)]
    kind: KindArg,
    /// Output CSV (stdout if omitted).
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Directory for per-figure two-column (x,y) files.
    #[arg(long)]
    plot_data: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SingleArgs {
    #[arg(long)]
    input: PathBuf,
    /// Window length in samples.
    #[arg(long)]
    window: Option<usize>,
    /// Series to work on (decompose and vol only).
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct BetaArgs {
    #[arg(long)]
    target: PathBuf,
    #[arg(long = "factor", required = true)]
    factors: Vec<PathBuf>,
    /// Window length in samples (beta).
    #[arg(long)]
    window: Option<usize>,
    /// Comma-separated candidate window lengths (multibeta).
    #[arg(long, value_delimiter = ',')]
    windows: Vec<usize>,
    #[arg(long, value_enum, default_value_t = ModelArg::BetasOnly)]
    model: ModelArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Value)]
    mode: ModeArg,
    /// Volatility window in volatility mode (defaults to the beta window).
    #[arg(long)]
    vol_window: Option<usize>,
    /// Independence threshold on |det| / prod(column norms).
    #[arg(long, allow_negative_numbers = true)]
    epsilon: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Simple,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    #[value(name = "with_alpha", alias = "with-alpha")]
    WithAlpha,
    #[value(name = "betas_only", alias = "betas-only")]
    BetasOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Value,
    Return,
    Volatility,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Decompose,
    Returns,
    Vol,
    Beta,
    Multibeta,
}

/// Which series the estimators see.
pub type Mode = ModeArg;

/// A validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    /// Target first, then factors; a single entry for decompose/returns/vol.
    pub inputs: Vec<PathBuf>,
    pub column: String,
    pub windows: Vec<usize>,
    pub model: Model,
    pub mode: Mode,
    pub vol_window: Option<usize>,
    pub kind: ReturnKind,
    pub threshold: IndependenceThreshold,
    pub output: Option<PathBuf>,
    pub plot_data: Option<PathBuf>,
}

impl RunConfig {
    pub fn n_factors(&self) -> usize {
        self.inputs.len().saturating_sub(1)
    }

    /// Volatility window in effect for `--mode volatility`.
    pub fn effective_vol_window(&self) -> usize {
        self.vol_window
            .unwrap_or_else(|| self.windows.iter().copied().max().unwrap_or(0))
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum UsageError {
    /// `--help` or `--version`: print and exit successfully.
    #[error("{0}")]
    Info(String),
    #[error("{0}")]
    Invalid(String),
}

impl UsageError {
    pub fn exit_code(&self) -> i32 {
        match self {
            UsageError::Info(_) => 0,
            UsageError::Invalid(_) => 2,
        }
    }
}

/// Parses `argv` (program name first), reading the default threshold from
/// the environment.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    parse_args_with_env(argv, std::env::var(EPSILON_ENV).ok())
}

/// As [`parse_args`] with an explicit value for the threshold variable.
pub fn parse_args_with_env<I, T>(
    argv: I,
    env_epsilon: Option<String>,
) -> Result<RunConfig, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        use clap::error::ErrorKind::*;
        match e.kind() {
            DisplayHelp | DisplayVersion | DisplayHelpOnMissingArgumentOrSubcommand => {
                UsageError::Info(e.to_string())
            }
            _ => UsageError::Invalid(e.to_string()),
        }
    })?;

    let mut problems = Vec::new();
    let check_window = |name: &str, w: usize, problems: &mut Vec<String>| {
        if w < 2 {
            problems.push(format!("--{name} must be at least 2 samples, got {w}"));
        }
    };
    let kind = |k: KindArg| match k {
        KindArg::Simple => ReturnKind::Simple,
        KindArg::Log => ReturnKind::Log,
    };

    let config = match cli.command {
        Command::Decompose(a) => {
            single(CommandKind::Decompose, a, &mut problems, check_window, kind)
        }
        Command::Returns(a) => single(CommandKind::Returns, a, &mut problems, check_window, kind),
        Command::Vol(a) => single(CommandKind::Vol, a, &mut problems, check_window, kind),
        Command::Beta(a) => betas(
            CommandKind::Beta,
            a,
            env_epsilon,
            &mut problems,
            check_window,
            kind,
        ),
        Command::Multibeta(a) => betas(
            CommandKind::Multibeta,
            a,
            env_epsilon,
            &mut problems,
            check_window,
            kind,
        ),
    };

    if problems.is_empty() {
        Ok(config)
    } else {
        Err(UsageError::Invalid(format!(
            "error: invalid arguments:\n  {}",
            problems.join("\n  ")
        )))
    }
}

type WindowCheck = fn(&str, usize, &mut Vec<String>);

fn single(
    command: CommandKind,
    a: SingleArgs,
    problems: &mut Vec<String>,
    check_window: WindowCheck,
    kind: fn(KindArg) -> ReturnKind,
) -> RunConfig {
    let needs_window = !matches!(command, CommandKind::Returns);
    let windows = match a.window {
        Some(w) => {
            check_window("window", w, problems);
            vec![w]
        }
        None if needs_window => {
            problems.push("--window is required".into());
            vec![]
        }
        None => vec![],
    };
    let mode = match (command, a.mode) {
        (CommandKind::Returns, Some(_)) => {
            problems.push("--mode does not apply to `returns`".into());
            ModeArg::Value
        }
        (_, Some(ModeArg::Volatility)) => {
            problems.push("--mode volatility applies to beta commands only".into());
            ModeArg::Value
        }
        (CommandKind::Vol, None) => ModeArg::Return,
        (_, m) => m.unwrap_or(ModeArg::Value),
    };
    RunConfig {
        command,
        inputs: vec![a.input],
        column: a.common.column,
        windows,
        model: Model::BetasOnly,
        mode,
        vol_window: None,
        kind: kind(a.common.kind),
        threshold: IndependenceThreshold::default(),
        output: a.common.output,
        plot_data: a.common.plot_data,
    }
}

fn betas(
    command: CommandKind,
    a: BetaArgs,
    env_epsilon: Option<String>,
    problems: &mut Vec<String>,
    check_window: WindowCheck,
    kind: fn(KindArg) -> ReturnKind,
) -> RunConfig {
    let windows = match command {
        CommandKind::Beta => {
            if !a.windows.is_empty() {
                problems.push("`beta` takes --window; use `multibeta` for --windows".into());
            }
            match a.window {
                Some(w) => vec![w],
                None => {
                    problems.push("--window is required".into());
                    vec![]
                }
            }
        }
        _ => {
            if a.window.is_some() {
                problems.push("`multibeta` takes --windows, not --window".into());
            }
            if a.windows.is_empty() {
                problems.push("--windows needs at least one window length".into());
            }
            a.windows.clone()
        }
    };
    let flag = if command == CommandKind::Beta {
        "window"
    } else {
        "windows"
    };
    for &w in &windows {
        check_window(flag, w, problems);
    }
    if let Some(v) = a.vol_window {
        check_window("vol-window", v, problems);
        if a.mode != ModeArg::Volatility {
            problems.push("--vol-window only applies with --mode volatility".into());
        }
    }

    let model = match a.model {
        ModelArg::WithAlpha => Model::WithAlpha,
        ModelArg::BetasOnly => Model::BetasOnly,
    };
    let rows = model.rows(a.factors.len());
    if let Some(&w) = windows.iter().min() {
        if w >= 2 && w < rows {
            problems.push(format!(
                "window {w} is shorter than the {rows} equations of {} factor(s)",
                a.factors.len()
            ));
        }
    }

    let epsilon = match (a.epsilon, env_epsilon) {
        (Some(e), _) => Some(e),
        (None, Some(raw)) => match raw.trim().parse::<f64>() {
            Ok(e) => Some(e),
            Err(_) => {
                problems.push(format!("{EPSILON_ENV}=`{raw}` is not a number"));
                None
            }
        },
        (None, None) => Some(IndependenceThreshold::DEFAULT_EPSILON),
    };
    let threshold = match epsilon.map(IndependenceThreshold::new) {
        Some(Ok(t)) => t,
        Some(Err(_)) => {
            problems.push(format!(
                "epsilon must be a positive number, got {}",
                epsilon.unwrap()
            ));
            IndependenceThreshold::default()
        }
        None => IndependenceThreshold::default(),
    };

    let mut inputs = vec![a.target];
    inputs.extend(a.factors);
    RunConfig {
        command,
        inputs,
        column: a.common.column,
        windows,
        model,
        mode: a.mode,
        vol_window: a.vol_window,
        kind: kind(a.common.kind),
        threshold,
        output: a.common.output,
        plot_data: a.common.plot_data,
    }
}
