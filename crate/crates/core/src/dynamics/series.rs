use std::io::Write;
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sampled observables on a shared time grid (ns).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    pub times: Vec<f64>,
    pub channels: IndexMap<String, Vec<f64>>,
    /// Number of samples at which the state norm was restored after drifting
    /// past 1e-9.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub renormalizations: usize,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

impl TimeSeries {
    pub fn new(times: Vec<f64>) -> Self {
        Self {
            times,
            channels: IndexMap::new(),
            renormalizations: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn channel(&self, name: &str) -> Result<&[f64]> {
        self.channels
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::MissingChannel(name.to_string()))
    }

    pub fn insert(&mut self, name: impl Into<String>, values: Vec<f64>) -> Result<()> {
        if values.len() != self.times.len() {
            return Err(Error::DimensionMismatch {
                expected: self.times.len(),
                found: values.len(),
            });
        }
        self.channels.insert(name.into(), values);
        Ok(())
    }

    pub fn max_of(&self, name: &str) -> Result<f64> {
        Ok(self.channel(name)?.iter().copied().fold(f64::NEG_INFINITY, f64::max))
    }

    pub fn same_grid(&self, other: &TimeSeries) -> bool {
        self.times.len() == other.times.len()
            && self
                .times
                .iter()
                .zip(&other.times)
                .all(|(a, b)| (a - b).abs() <= 1e-12 * a.abs().max(1.0))
    }

    /// CSV with a `time_ns` column followed by one column per channel.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["time_ns".to_string()];
        header.extend(self.channels.keys().cloned());
        w.write_record(&header)?;
        for (i, t) in self.times.iter().enumerate() {
            let mut row = vec![t.to_string()];
            row.extend(self.channels.values().map(|v| v[i].to_string()));
            w.write_record(&row)?;
        }
        w.flush().map_err(|e| Error::io("<csv>", e))?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    pub fn from_csv<R: std::io::Read>(input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let header = r.headers()?.clone();
        if header.get(0) != Some("time_ns") {
            return Err(Error::Config("first CSV column must be time_ns".into()));
        }
        let names: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
        let mut times = Vec::new();
        let mut cols = vec![Vec::new(); names.len()];
        for rec in r.records() {
            let rec = rec?;
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|e| Error::Config(format!("bad number '{s}': {e}")))
            };
            times.push(parse(&rec[0])?);
            for (col, field) in cols.iter_mut().zip(rec.iter().skip(1)) {
                col.push(parse(field)?);
            }
        }
        let mut ts = TimeSeries::new(times);
        for (n, c) in names.into_iter().zip(cols) {
            ts.insert(n, c)?;
        }
        Ok(ts)
    }

    pub fn save_csv(&self, path: &Path) -> Result<()> {
        let f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_csv(std::io::BufWriter::new(f))
    }

    pub fn save_json(&self, path: &Path) -> Result<()> {
        let doc = serde_json::to_string_pretty(self)?;
        std::fs::write(path, doc).map_err(|e| Error::io(path, e))
    }
}
