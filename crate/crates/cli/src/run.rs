//! Executes a validated [`RunConfig`].

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use wronbeta_core::beta::{rolling_estimate, rolling_multiwindow};
use wronbeta_core::ingest::{align, format_number, load_csv, Aligned};
use wronbeta_core::moments::volatility;
use wronbeta_core::series::{decompose, returns};
use wronbeta_core::{BetaEstimate, FactorPanel, Model, TimeSeries, WindowSpec};

use crate::config::{CommandKind, Mode, RunConfig};

/// A failure after argument validation; always exit status 1.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct DataError(pub String);

impl DataError {
    pub fn exit_code(&self) -> i32 {
        1
    }
}

impl From<wronbeta_core::Error> for DataError {
    fn from(e: wronbeta_core::Error) -> Self {
        DataError(e.to_string())
    }
}

/// Columnar output plus optional per-figure series.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub csv: String,
    /// `(file stem, points)` for `--plot-data`.
    pub plots: Vec<(String, Vec<(f64, f64)>)>,
}

/// Runs the command, writing the CSV to `--output` (or stdout) and any plot
/// files.
pub fn run(config: &RunConfig) -> Result<(), DataError> {
    let report = execute(config)?;
    match &config.output {
        Some(path) => write_file(path, &report.csv)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(report.csv.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| DataError(format!("writing to stdout: {e}")))?;
        }
    }
    if let Some(dir) = &config.plot_data {
        fs::create_dir_all(dir).map_err(|e| DataError(format!("{}: {e}", dir.display())))?;
        for (name, points) in &report.plots {
            let mut text = String::from("x,y\n");
            for (x, y) in points {
                let _ = writeln!(text, "{},{}", format_number(*x), format_number(*y));
            }
            write_file(&dir.join(format!("{name}.csv")), &text)?;
        }
    }
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<(), DataError> {
    fs::write(path, text).map_err(|e| DataError(format!("{}: {e}", path.display())))
}

/// Computes the report without touching the filesystem beyond reading inputs.
pub fn execute(config: &RunConfig) -> Result<Report, DataError> {
    let data = load(&config.inputs, &config.column)?;
    match config.command {
        CommandKind::Decompose => run_decompose(config, &data),
        CommandKind::Returns => run_returns(config, &data),
        CommandKind::Vol => run_vol(config, &data),
        CommandKind::Beta | CommandKind::Multibeta => run_beta(config, &data),
    }
}

fn load(inputs: &[PathBuf], column: &str) -> Result<Aligned, DataError> {
    let datasets = inputs
        .iter()
        .map(|p| load_csv(p, column).map_err(|e| located(p, e)))
        .collect::<Result<Vec<_>, _>>()?;
    align(&datasets).map_err(DataError::from)
}

fn located(path: &Path, e: wronbeta_core::Error) -> DataError {
    match e {
        wronbeta_core::Error::Io { .. } => DataError(e.to_string()),
        _ => DataError(format!("{}: {e}", path.display())),
    }
}

/// A series ready for estimation plus the offset of its first sample in
/// the aligned dates.
struct Prepared {
    series: Vec<TimeSeries>,
    offset: usize,
}

fn prepare(config: &RunConfig, data: &Aligned, mode: Mode) -> Result<Prepared, DataError> {
    let prices = (0..data.names.len())
        .map(|k| data.series(k))
        .collect::<Result<Vec<_>, _>>()?;
    let with_names =
        |k: usize, e: wronbeta_core::Error| DataError(format!("{}: {e}", data.names[k]));
    match mode {
        Mode::Value => Ok(Prepared {
            series: prices,
            offset: 0,
        }),
        Mode::Return => Ok(Prepared {
            series: prices
                .iter()
                .enumerate()
                .map(|(k, p)| returns(p, config.kind).map_err(|e| with_names(k, e)))
                .collect::<Result<_, _>>()?,
            offset: 1,
        }),
        Mode::Volatility => {
            let r = prepare(config, data, Mode::Return)?;
            let w = WindowSpec::new(config.effective_vol_window())?;
            Ok(Prepared {
                series: r
                    .series
                    .iter()
                    .enumerate()
                    .map(|(k, s)| {
                        Ok(volatility(s, w)
                            .map_err(|e| with_names(k, e))?
                            .into_series())
                    })
                    .collect::<Result<_, DataError>>()?,
                offset: r.offset,
            })
        }
    }
}

struct Row<'a> {
    t: usize,
    date: NaiveDate,
    warmup: bool,
    rest: &'a [String],
}

fn push_row(csv: &mut String, row: Row<'_>) {
    let _ = write!(
        csv,
        "{},{},{}",
        row.t,
        row.date.format("%Y-%m-%d"),
        u8::from(row.warmup)
    );
    for cell in row.rest {
        csv.push(',');
        csv.push_str(cell);
    }
    csv.push('\n');
}

fn single_window(config: &RunConfig) -> Result<WindowSpec, DataError> {
    Ok(WindowSpec::new(config.windows[0])?)
}

fn run_decompose(config: &RunConfig, data: &Aligned) -> Result<Report, DataError> {
    let p = prepare(config, data, config.mode)?;
    let x = &p.series[0];
    let d = decompose(x, single_window(config)?)?;
    let mut csv = String::from("t,date,warmup,value,trend,fluctuation\n");
    let mut plots = vec![
        ("value".to_string(), Vec::new()),
        ("trend".to_string(), Vec::new()),
        ("fluctuation".to_string(), Vec::new()),
    ];
    for j in 0..x.len() {
        let t = j + p.offset;
        let cells = [
            x.values()[j],
            d.trend.values()[j],
            d.fluctuation.values()[j],
        ];
        let warm = d.trend.is_warmup(j);
        push_row(
            &mut csv,
            Row {
                t,
                date: data.dates[t],
                warmup: warm,
                rest: &cells.map(format_number),
            },
        );
        plots[0].1.push((t as f64, cells[0]));
        if !warm {
            plots[1].1.push((t as f64, cells[1]));
            plots[2].1.push((t as f64, cells[2]));
        }
    }
    Ok(Report { csv, plots })
}

fn run_returns(config: &RunConfig, data: &Aligned) -> Result<Report, DataError> {
    let p = prepare(config, data, Mode::Return)?;
    let r = &p.series[0];
    let mut csv = String::from("t,date,return\n");
    let mut points = Vec::with_capacity(r.len());
    for (j, &v) in r.values().iter().enumerate() {
        let t = j + p.offset;
        let _ = writeln!(
            csv,
            "{t},{},{}",
            data.dates[t].format("%Y-%m-%d"),
            format_number(v)
        );
        points.push((t as f64, v));
    }
    Ok(Report {
        csv,
        plots: vec![("return".into(), points)],
    })
}

fn run_vol(config: &RunConfig, data: &Aligned) -> Result<Report, DataError> {
    let p = prepare(config, data, config.mode)?;
    let v = volatility(&p.series[0], single_window(config)?)?.into_series();
    let mut csv = String::from("t,date,warmup,volatility\n");
    let mut points = Vec::new();
    for (j, &x) in v.values().iter().enumerate() {
        let t = j + p.offset;
        let warm = v.is_warmup(j);
        push_row(
            &mut csv,
            Row {
                t,
                date: data.dates[t],
                warmup: warm,
                rest: &[format_number(x)],
            },
        );
        if !warm {
            points.push((t as f64, x));
        }
    }
    Ok(Report {
        csv,
        plots: vec![("volatility".into(), points)],
    })
}

fn run_beta(config: &RunConfig, data: &Aligned) -> Result<Report, DataError> {
    let p = prepare(config, data, config.mode)?;
    let mut series = p.series.into_iter();
    let target = series.next().expect("target input");
    let panel = FactorPanel::new(target, series.collect())?;
    let n = panel.n_factors();
    let windows = config
        .windows
        .iter()
        .map(|&w| WindowSpec::new(w))
        .collect::<Result<Vec<_>, _>>()?;

    let estimates = match config.command {
        CommandKind::Beta => rolling_estimate(&panel, windows[0], config.model, config.threshold),
        _ => rolling_multiwindow(&panel, &windows, config.model, config.threshold),
    }
    .map_err(|e| match e {
        wronbeta_core::Error::EmptySeries => DataError(format!(
            "only {} aligned samples; the window needs more history",
            panel.len()
        )),
        e => e.into(),
    })?;

    let mut csv = String::from("t,date,warmup,independent,window,alpha");
    for i in 1..=n {
        let _ = write!(csv, ",beta_{i}");
    }
    csv.push_str(",wronskian\n");

    let mut plots: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    if config.model == Model::WithAlpha {
        plots.push(("alpha".into(), Vec::new()));
    }
    plots.extend((1..=n).map(|i| (format!("beta_{i}"), Vec::new())));
    plots.push(("wronskian".into(), Vec::new()));
    if config.command == CommandKind::Multibeta {
        plots.push(("window".into(), Vec::new()));
    }

    let first = estimates.first().map_or(panel.len(), |e| e.index);
    // independent=0, then blank window, alpha, betas and wronskian
    let mut blank = vec![String::new(); n + 4];
    blank[0] = "0".into();
    for j in 0..first {
        let t = j + p.offset;
        push_row(
            &mut csv,
            Row {
                t,
                date: data.dates[t],
                warmup: true,
                rest: &blank,
            },
        );
    }
    for est in &estimates {
        let t = est.index + p.offset;
        push_row(
            &mut csv,
            Row {
                t,
                date: data.dates[t],
                warmup: false,
                rest: &cells(est, n),
            },
        );
        collect_plots(&mut plots, est, t as f64, config);
    }
    Ok(Report { csv, plots })
}

/// `independent,window,alpha,beta_1..beta_n,wronskian`.
fn cells(est: &BetaEstimate, n: usize) -> Vec<String> {
    let mut out = Vec::with_capacity(n + 4);
    out.push(u8::from(est.independent).to_string());
    out.push(est.window.samples().to_string());
    out.push(est.alpha.map(format_number).unwrap_or_default());
    if est.betas.len() == n {
        out.extend(est.betas.iter().map(|&b| format_number(b)));
    } else {
        out.extend(std::iter::repeat_n(String::new(), n));
    }
    out.push(format_number(est.wronskian));
    out
}

fn collect_plots(
    plots: &mut [(String, Vec<(f64, f64)>)],
    est: &BetaEstimate,
    x: f64,
    config: &RunConfig,
) {
    let mut push = |name: &str, y: f64| {
        if let Some((_, points)) = plots.iter_mut().find(|(n, _)| n == name) {
            points.push((x, y));
        }
    };
    if let Some(a) = est.alpha {
        push("alpha", a);
    }
    for (i, &b) in est.betas.iter().enumerate() {
        push(&format!("beta_{}", i + 1), b);
    }
    push("wronskian", est.wronskian);
    if config.command == CommandKind::Multibeta {
        push("window", est.window.samples() as f64);
    }
}
