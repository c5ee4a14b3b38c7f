use crate::error::{Error, Result};
use crate::series::{find_peaks, Series};

/// Minimum prominence, relative to the series maximum, of a fringe peak.
const FRINGE_PROMINENCE: f64 = 0.05;

/// Agreement between a numeric and an analytic pattern.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Comparison {
    /// Largest distance from an analytic fringe peak to the nearest numeric
    /// one, in abscissa units.
    pub peak_position_error: f64,
    /// Root-mean-square difference of the peak-normalized values.
    pub normalized_rms: f64,
}

/// Compare two patterns sampled on the same abscissa.
///
/// Both inputs should already have any slowly varying envelope divided
/// out; each is peak-normalized here. A flat analytic pattern has no
/// fringes to match and yields a zero position error. A numeric pattern
/// without peaks where the analytic one has them, or a series without any
/// positive value, is featureless.
pub fn compare_to_analytic(numeric: &Series, analytic: &Series) -> Result<Comparison> {
    if numeric.len() != analytic.len() || numeric.is_empty() {
        return Err(Error::config("compared series must have the same non-zero length"));
    }
    let tol = 1e-9 * analytic.x.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
    if numeric.x.iter().zip(&analytic.x).any(|(a, b)| (a - b).abs() > tol) {
        return Err(Error::config("compared series must share their abscissa"));
    }
    if numeric.max() <= 0.0 || analytic.max() <= 0.0 {
        return Err(Error::Featureless);
    }
    let n = numeric.peak_normalized();
    let a = analytic.peak_normalized();
    let rms = (n.y.iter().zip(&a.y).map(|(p, q)| (p - q).powi(2)).sum::<f64>() / n.len() as f64).sqrt();

    let analytic_peaks = find_peaks(&a.x, &a.y, FRINGE_PROMINENCE);
    let numeric_peaks = find_peaks(&n.x, &n.y, FRINGE_PROMINENCE);
    let peak_position_error = if analytic_peaks.is_empty() {
        0.0
    } else if numeric_peaks.is_empty() {
        return Err(Error::Featureless);
    } else {
        analytic_peaks
            .iter()
            .map(|ap| {
                numeric_peaks
                    .iter()
                    .map(|np| (np.position - ap.position).abs())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    Ok(Comparison {
        peak_position_error,
        normalized_rms: rms,
    })
}
