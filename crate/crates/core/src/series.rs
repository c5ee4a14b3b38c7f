//! Sampled data series and the feature extraction shared by the oracle
//! comparisons: peak finding with prominence, midline crossings and
//! power-law fits.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub unit: String,
}

impl Axis {
    pub fn new(name: impl Into<String>, unit: impl Into<String>) -> Self {
        Axis {
            name: name.into(),
            unit: unit.into(),
        }
    }

    /// `name[unit]`, the column header used in CSV output.
    pub fn header(&self) -> String {
        format!("{}[{}]", self.name, self.unit)
    }
}

/// Ordered (abscissa, value) pairs with labelled axes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub x_axis: Axis,
    pub y_axis: Axis,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl Series {
    pub fn new(x_axis: Axis, y_axis: Axis, x: Vec<f64>, y: Vec<f64>) -> Self {
        assert_eq!(x.len(), y.len(), "series abscissa and values differ in length");
        Series { x_axis, y_axis, x, y }
    }

    /// Sample `f` on `n` evenly spaced points of `[start, end]`.
    pub fn tabulate(
        x_axis: Axis,
        y_axis: Axis,
        start: f64,
        end: f64,
        n: usize,
        mut f: impl FnMut(f64) -> Result<f64>,
    ) -> Result<Self> {
        let x = linspace(start, end, n);
        let y = x.iter().map(|&x| f(x)).collect::<Result<Vec<_>>>()?;
        Ok(Series::new(x_axis, y_axis, x, y))
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.x.iter().copied().zip(self.y.iter().copied())
    }

    pub fn max(&self) -> f64 {
        self.y.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.y.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Copy with values divided by the maximum.
    pub fn peak_normalized(&self) -> Series {
        let m = self.max();
        let mut out = self.clone();
        if m > 0.0 {
            out.y.iter_mut().for_each(|v| *v /= m);
        }
        out
    }

    /// Trapezoidal integral over the abscissa.
    pub fn integral(&self) -> f64 {
        self.x
            .windows(2)
            .zip(self.y.windows(2))
            .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
            .sum()
    }
}

pub fn linspace(start: f64, end: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (end - start) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { end } else { start + step * i as f64 })
                .collect()
        }
    }
}

/// A local maximum located to sub-sample precision.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Peak {
    pub index: usize,
    pub position: f64,
    pub height: f64,
    pub prominence: f64,
}

/// Interior local maxima whose topographic prominence is at least
/// `min_prominence` times the series maximum.
///
/// Flat tops are reported once at their centre. End points are never peaks.
pub fn find_peaks(x: &[f64], y: &[f64], min_prominence: f64) -> Vec<Peak> {
    let n = y.len();
    if n < 3 {
        return Vec::new();
    }
    let global_max = y.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let threshold = min_prominence * global_max.abs();

    let mut peaks = Vec::new();
    let mut i = 1;
    while i < n - 1 {
        if y[i] > y[i - 1] {
            // Walk over a possible plateau.
            let mut j = i;
            while j + 1 < n && y[j + 1] == y[i] {
                j += 1;
            }
            if j + 1 < n && y[j + 1] < y[i] {
                let centre = (i + j) / 2;
                let prominence = prominence_at(y, i, j);
                if prominence > 0.0 && prominence >= threshold {
                    peaks.push(Peak {
                        index: centre,
                        position: refine_vertex(x, y, centre),
                        height: y[centre],
                        prominence,
                    });
                }
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }
    peaks
}

fn prominence_at(y: &[f64], lo: usize, hi: usize) -> f64 {
    let h = y[lo];
    let mut left_min = h;
    for k in (0..lo).rev() {
        if y[k] > h {
            break;
        }
        left_min = left_min.min(y[k]);
    }
    let mut right_min = h;
    for &v in &y[hi + 1..] {
        if v > h {
            break;
        }
        right_min = right_min.min(v);
    }
    h - left_min.max(right_min)
}

/// Vertex of the parabola through three neighbouring samples.
fn refine_vertex(x: &[f64], y: &[f64], i: usize) -> f64 {
    if i == 0 || i + 1 >= y.len() {
        return x[i];
    }
    let (x0, x1, x2) = (x[i - 1], x[i], x[i + 1]);
    let (y0, y1, y2) = (y[i - 1], y[i], y[i + 1]);
    let d01 = (y1 - y0) / (x1 - x0);
    let d12 = (y2 - y1) / (x2 - x1);
    let curvature = (d12 - d01) / (x2 - x0);
    if curvature >= 0.0 || !curvature.is_finite() {
        return x1;
    }
    // y' = d01 + curvature (2x - x0 - x1) = 0
    let vertex = 0.5 * (x0 + x1) - d01 / (2.0 * curvature);
    vertex.clamp(x0, x2)
}

/// Abscissae where `y - level` changes sign, by linear interpolation.
pub fn level_crossings(x: &[f64], y: &[f64], level: f64) -> Vec<f64> {
    let mut out = Vec::new();
    for k in 0..y.len().saturating_sub(1) {
        let a = y[k] - level;
        let b = y[k + 1] - level;
        if a == 0.0 {
            if k == 0 || (y[k - 1] - level) * b < 0.0 {
                out.push(x[k]);
            }
        } else if a * b < 0.0 {
            out.push(x[k] + (x[k + 1] - x[k]) * a / (a - b));
        }
    }
    out
}

/// Least-squares fit of `y = c · x^p` in log-log space; returns `(p, c)`.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    if points.len() < 2 {
        return Err(Error::domain("power-law fit needs at least two points"));
    }
    if points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return Err(Error::domain("power-law fit needs positive data"));
    }
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-300 {
        return Err(Error::domain("power-law fit needs distinct abscissae"));
    }
    let p = (n * sxy - sx * sy) / denom;
    let c = ((sy - p * sx) / n).exp();
    Ok((p, c))
}
