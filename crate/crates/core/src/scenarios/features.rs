use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{find_peaks, fit_power_law, level_crossings, Series};

/// Peaks found by [`count_peaks`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeakCount {
    pub count: usize,
    pub positions: Vec<f64>,
    /// Differences between consecutive positions.
    pub spacings: Vec<f64>,
}

impl PeakCount {
    pub fn mean_spacing(&self) -> Option<f64> {
        if self.spacings.is_empty() {
            None
        } else {
            Some(self.spacings.iter().sum::<f64>() / self.spacings.len() as f64)
        }
    }
}

/// Interior local maxima with prominence of at least `min_prominence`
/// times the series maximum.
pub fn count_peaks(series: &Series, min_prominence: f64) -> Result<PeakCount> {
    if series.len() < 3 {
        return Err(Error::domain("count_peaks needs at least three samples"));
    }
    let positions: Vec<f64> = find_peaks(&series.x, &series.y, min_prominence)
        .iter()
        .map(|p| p.position)
        .collect();
    let spacings = positions.windows(2).map(|w| w[1] - w[0]).collect();
    Ok(PeakCount {
        count: positions.len(),
        positions,
        spacings,
    })
}

/// Interval between two consecutive midline crossings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfPeriod {
    pub start: f64,
    pub end: f64,
}

impl HalfPeriod {
    pub fn length(&self) -> f64 {
        self.end - self.start
    }

    /// Abscissa the interval is attributed to. For a period growing as `t²`
    /// the exact half-interval between crossings `t₁`, `t₂` equals half the
    /// local period at `(t₁ t₂)^½`, so the geometric mean is used when both
    /// ends are positive.
    pub fn centre(&self) -> f64 {
        if self.start > 0.0 && self.end > 0.0 {
            (self.start * self.end).sqrt()
        } else {
            0.5 * (self.start + self.end)
        }
    }
}

/// Successive intervals between crossings of the midline `(max + min)/2`.
pub fn extract_oscillation_periods(series: &Series) -> Result<Vec<HalfPeriod>> {
    let (max, min) = (series.max(), series.min());
    let crossings = if max > min {
        level_crossings(&series.x, &series.y, 0.5 * (max + min))
    } else {
        Vec::new()
    };
    if crossings.len() < 4 {
        return Err(Error::InsufficientOscillations {
            found: crossings.len(),
        });
    }
    Ok(crossings
        .windows(2)
        .map(|w| HalfPeriod { start: w[0], end: w[1] })
        .collect())
}

/// Power law `Ξ(t) = c t^p` fitted to full periods (twice the half
/// intervals) at their attributed abscissae; returns `(p, c)`.
pub fn fit_period_growth(intervals: &[HalfPeriod]) -> Result<(f64, f64)> {
    let points: Vec<(f64, f64)> = intervals.iter().map(|h| (h.centre(), 2.0 * h.length())).collect();
    fit_power_law(&points)
}
