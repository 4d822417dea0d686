//! CSV price files: loading, validation, writing and date alignment.
//!
//! Files are UTF-8, comma-separated, with a header row containing a `date`
//! column (ISO-8601) and one or more numeric columns.

use std::io::{Read, Write};
use std::path::Path;

use chrono::NaiveDate;

use crate::error::{Error, Result};
use crate::series::{Role, SamplingGrid, TimeSeries};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriceRecord {
    pub date: NaiveDate,
    pub value: f64,
}

/// Named, date-sorted price records with strictly increasing dates.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: String,
    pub records: Vec<PriceRecord>,
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn values(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.value).collect()
    }
}

/// Renders with 12 significant digits, plain notation for moderate
/// exponents and scientific otherwise. Trailing zeros are trimmed.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    let negative = mantissa.starts_with('-');
    let mut digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    while digits.len() > 1 && digits.ends_with('0') {
        digits.pop();
    }
    let body = if (-6..15).contains(&exp) {
        if exp >= 0 {
            let e = exp as usize;
            if digits.len() <= e + 1 {
                format!("{digits}{}", "0".repeat(e + 1 - digits.len()))
            } else {
                format!("{}.{}", &digits[..=e], &digits[e + 1..])
            }
        } else {
            format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
        }
    } else if digits.len() > 1 {
        format!("{}.{}e{exp}", &digits[..1], &digits[1..])
    } else {
        format!("{digits}e{exp}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

fn parse_value(raw: &str, row: usize, column: &str) -> Result<f64> {
    let err = |message: String| Error::ParseError {
        row,
        column: column.to_string(),
        message,
    };
    let s = raw.trim();
    if s.is_empty() {
        return Err(err("missing value".into()));
    }
    // plain or scientific decimal only: no separators, no inf/nan words
    if !s
        .chars()
        .all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'))
    {
        return Err(err(format!("`{s}` is not a decimal number")));
    }
    let v: f64 = s
        .parse()
        .map_err(|_| err(format!("`{s}` is not a decimal number")))?;
    if !v.is_finite() {
        return Err(err(format!("`{s}` is not finite")));
    }
    Ok(v)
}

/// Parses CSV text from `reader`, taking values from `column`.
pub fn read_csv<R: Read>(reader: R, name: &str, column: &str) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header_err = |message: String| Error::ParseError {
        row: 1,
        column: column.to_string(),
        message,
    };
    let headers = rdr
        .headers()
        .map_err(|e| header_err(e.to_string()))?
        .clone();
    let date_idx = headers
        .iter()
        .position(|h| h == "date")
        .ok_or_else(|| header_err("no `date` column in header".into()))?;
    let value_idx = headers
        .iter()
        .position(|h| h == column)
        .ok_or_else(|| header_err(format!("no `{column}` column in header")))?;

    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let fallback = i + 2;
        let rec = rec.map_err(|e| Error::ParseError {
            row: e.position().map_or(fallback, |p| p.line() as usize),
            column: column.to_string(),
            message: e.to_string(),
        })?;
        let row = rec.position().map_or(fallback, |p| p.line() as usize);
        let raw_date = rec.get(date_idx).unwrap_or("");
        let date =
            NaiveDate::parse_from_str(raw_date, "%Y-%m-%d").map_err(|e| Error::ParseError {
                row,
                column: "date".into(),
                message: format!("`{raw_date}`: {e}"),
            })?;
        let value = parse_value(rec.get(value_idx).unwrap_or(""), row, column)?;
        if value <= 0.0 {
            return Err(Error::NonPositivePrice { index: row, value });
        }
        rows.push((row, PriceRecord { date, value }));
    }

    rows.sort_by_key(|(_, r)| r.date);
    if let Some(w) = rows.windows(2).find(|w| w[0].1.date >= w[1].1.date) {
        return Err(Error::NonMonotonicDates {
            row: w[1].0.max(w[0].0),
            date: w[1].1.date.to_string(),
        });
    }
    Ok(Dataset {
        name: name.to_string(),
        records: rows.into_iter().map(|(_, r)| r).collect(),
    })
}

/// Loads `path`, taking values from `column`. The dataset is named after the
/// file stem.
pub fn load_csv(path: impl AsRef<Path>, column: &str) -> Result<Dataset> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    read_csv(std::io::BufReader::new(file), &name, column)
}

/// Writes `date,<column>` rows with 12 significant digits.
pub fn write_csv<W: Write>(dataset: &Dataset, column: &str, mut out: W) -> std::io::Result<()> {
    writeln!(out, "date,{column}")?;
    for r in &dataset.records {
        writeln!(out, "{},{}", r.date, format_number(r.value))?;
    }
    out.flush()
}

/// Datasets restricted to their common dates, indexed by trading day.
#[derive(Debug, Clone, PartialEq)]
pub struct Aligned {
    pub dates: Vec<NaiveDate>,
    pub names: Vec<String>,
    /// `values[k][i]`: dataset `k` on `dates[i]`.
    pub values: Vec<Vec<f64>>,
    /// Dates dropped from each dataset by the join.
    pub dropped: Vec<usize>,
}

impl Aligned {
    pub fn len(&self) -> usize {
        self.dates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dates.is_empty()
    }

    /// Uniform grid with step one trading day.
    pub fn grid(&self) -> SamplingGrid {
        SamplingGrid::daily(self.dates.len()).expect("alignment is nonempty")
    }

    /// Price series of dataset `k` on the trading-day grid.
    pub fn series(&self, k: usize) -> Result<TimeSeries> {
        TimeSeries::with_role(self.grid(), self.values[k].clone(), Role::Price)
    }
}

/// Inner join on dates.
pub fn align(datasets: &[Dataset]) -> Result<Aligned> {
    if datasets.is_empty() {
        return Err(Error::EmptyIntersection);
    }
    let mut common: Vec<NaiveDate> = datasets[0].records.iter().map(|r| r.date).collect();
    for d in &datasets[1..] {
        let mut it = d.records.iter().map(|r| r.date).peekable();
        common.retain(|date| {
            while it.next_if(|x| x < date).is_some() {}
            it.peek() == Some(date)
        });
    }
    if common.is_empty() {
        return Err(Error::EmptyIntersection);
    }
    let values = datasets
        .iter()
        .map(|d| {
            let mut it = d.records.iter().peekable();
            common
                .iter()
                .map(|date| {
                    while it.next_if(|r| r.date < *date).is_some() {}
                    it.next().expect("date in intersection").value
                })
                .collect()
        })
        .collect();
    Ok(Aligned {
        dropped: datasets.iter().map(|d| d.len() - common.len()).collect(),
        names: datasets.iter().map(|d| d.name.clone()).collect(),
        dates: common,
        values,
    })
}
