use serde::{Deserialize, Serialize};

use super::TimeSeries;
use crate::error::{Error, Result};

/// Points where the reference magnitude is below this are left out of the
/// relative metric.
pub const RELATIVE_FLOOR: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub max_abs_diff: f64,
    /// Relative to the reference series `b`.
    pub max_rel_diff: f64,
    /// Time of the largest absolute difference.
    pub time_of_max: f64,
    /// Time of the largest relative difference.
    pub time_of_max_rel: f64,
}

/// Compares `a` against the reference `b` on one channel.
pub fn compare_runs(a: &TimeSeries, b: &TimeSeries, channel: &str) -> Result<Discrepancy> {
    compare_channels(a, channel, b, channel)
}

/// Like [`compare_runs`] but with possibly different channel names.
pub fn compare_channels(a: &TimeSeries, channel_a: &str, b: &TimeSeries, channel_b: &str) -> Result<Discrepancy> {
    if !a.same_grid(b) {
        return Err(Error::GridMismatch);
    }
    let xa = a.channel(channel_a)?;
    let xb = b.channel(channel_b)?;
    let mut d = Discrepancy {
        max_abs_diff: 0.0,
        max_rel_diff: 0.0,
        time_of_max: a.times.first().copied().unwrap_or(0.0),
        time_of_max_rel: a.times.first().copied().unwrap_or(0.0),
    };
    for ((t, va), vb) in a.times.iter().zip(xa).zip(xb) {
        let diff = (va - vb).abs();
        if diff > d.max_abs_diff {
            d.max_abs_diff = diff;
            d.time_of_max = *t;
        }
        if vb.abs() >= RELATIVE_FLOOR {
            let rel = diff / vb.abs();
            if rel > d.max_rel_diff {
                d.max_rel_diff = rel;
                d.time_of_max_rel = *t;
            }
        }
    }
    Ok(d)
}
