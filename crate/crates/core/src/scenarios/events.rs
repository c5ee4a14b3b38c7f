use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::series::{find_peaks, Series};

/// Name of the generator used for event sampling; part of the output
/// provenance so runs can be reproduced elsewhere.
pub const RNG_ALGORITHM: &str = "ChaCha20 (rand_chacha), seeded with seed_from_u64";

/// Counts of sampled events in bins centred on the density samples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EventHistogram {
    /// `counts.len() + 1` ascending edges; the outer edges are the first and
    /// last sample positions, inner edges the midpoints between samples.
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub total: u64,
    pub seed: u64,
}

/// Outcome of a chi-square goodness-of-fit test.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Piecewise-linear density through the series samples, with its
/// cumulative integral at every sample.
struct LinearDensity<'a> {
    x: &'a [f64],
    y: &'a [f64],
    cumulative: Vec<f64>,
}

impl<'a> LinearDensity<'a> {
    fn new(series: &'a Series) -> Result<Self> {
        let (x, y) = (&series.x[..], &series.y[..]);
        if x.len() < 2 {
            return Err(Error::Sampling("density needs at least two samples".into()));
        }
        if x.windows(2).any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater)) {
            return Err(Error::Sampling("density abscissa must be strictly increasing".into()));
        }
        if y.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::Sampling("density must be finite and nonnegative".into()));
        }
        let mut cumulative = Vec::with_capacity(x.len());
        cumulative.push(0.0);
        for k in 0..x.len() - 1 {
            let area = 0.5 * (x[k + 1] - x[k]) * (y[k] + y[k + 1]);
            cumulative.push(cumulative[k] + area);
        }
        if *cumulative.last().unwrap() <= 0.0 {
            return Err(Error::Sampling("density is zero everywhere".into()));
        }
        Ok(LinearDensity { x, y, cumulative })
    }

    fn total(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    /// Offset `s` into segment `k` where the partial area equals `r`.
    fn solve_in_segment(&self, k: usize, r: f64) -> f64 {
        let h = self.x[k + 1] - self.x[k];
        let f = self.y[k];
        let g = (self.y[k + 1] - f) / h;
        let disc = (f * f + 2.0 * g * r).max(0.0);
        let denom = f + disc.sqrt();
        let s = if denom > 0.0 { 2.0 * r / denom } else { 0.0 };
        s.clamp(0.0, h)
    }

    /// Inverse of the cumulative distribution for `r ∈ [0, total]`.
    fn inverse(&self, r: f64) -> f64 {
        let k = self.cumulative.partition_point(|&c| c <= r).clamp(1, self.x.len() - 1) - 1;
        self.x[k] + self.solve_in_segment(k, r - self.cumulative[k])
    }

    /// Cumulative integral from the first sample to `at`.
    fn cdf(&self, at: f64) -> f64 {
        if at <= self.x[0] {
            return 0.0;
        }
        let n = self.x.len();
        if at >= self.x[n - 1] {
            return self.total();
        }
        let k = self.x.partition_point(|&v| v <= at) - 1;
        let s = at - self.x[k];
        let g = (self.y[k + 1] - self.y[k]) / (self.x[k + 1] - self.x[k]);
        self.cumulative[k] + self.y[k] * s + 0.5 * g * s * s
    }
}

fn bin_edges(x: &[f64]) -> Vec<f64> {
    let mut edges = Vec::with_capacity(x.len() + 1);
    edges.push(x[0]);
    edges.extend(x.windows(2).map(|w| 0.5 * (w[0] + w[1])));
    edges.push(x[x.len() - 1]);
    edges
}

/// Draw `n_events` independent positions from the density by inverse-CDF
/// sampling and bin them. Identical inputs and seed give identical counts.
pub fn accumulate_events(density: &Series, n_events: u64, seed: u64) -> Result<EventHistogram> {
    if n_events == 0 {
        return Err(Error::Sampling("n_events must be > 0".into()));
    }
    let lin = LinearDensity::new(density)?;
    let edges = bin_edges(lin.x);
    let mut counts = vec![0u64; lin.x.len()];
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let total = lin.total();
    for _ in 0..n_events {
        // 53 random bits give a uniform double in [0, 1).
        let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        let x = lin.inverse(u * total);
        let bin = edges[1..edges.len() - 1].partition_point(|&e| e <= x);
        counts[bin] += 1;
    }
    Ok(EventHistogram {
        edges,
        counts,
        total: n_events,
        seed,
    })
}

impl EventHistogram {
    pub fn centres(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    /// Width of the widest bin.
    pub fn max_bin_width(&self) -> f64 {
        self.edges.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }

    /// Expected count per bin for the source density.
    pub fn expected(&self, density: &Series) -> Result<Vec<f64>> {
        let lin = LinearDensity::new(density)?;
        let norm = self.total as f64 / lin.total();
        Ok(self
            .edges
            .windows(2)
            .map(|w| (lin.cdf(w[1]) - lin.cdf(w[0])) * norm)
            .collect())
    }

    /// Pearson chi-square against the source density, merging adjacent
    /// bins until each expects at least five events.
    pub fn chi_square(&self, density: &Series) -> Result<ChiSquareTest> {
        let expected = self.expected(density)?;
        let mut cells: Vec<(f64, f64)> = Vec::new();
        let (mut obs, mut exp) = (0.0, 0.0);
        for (&c, &e) in self.counts.iter().zip(&expected) {
            obs += c as f64;
            exp += e;
            if exp >= 5.0 {
                cells.push((obs, exp));
                obs = 0.0;
                exp = 0.0;
            }
        }
        if exp > 0.0 || obs > 0.0 {
            match cells.last_mut() {
                Some(last) => {
                    last.0 += obs;
                    last.1 += exp;
                }
                None => cells.push((obs, exp)),
            }
        }
        if cells.len() < 2 {
            return Err(Error::Sampling("too few events for a chi-square test".into()));
        }
        let statistic: f64 = cells
            .iter()
            .filter(|(_, e)| *e > 0.0)
            .map(|(o, e)| (o - e) * (o - e) / e)
            .sum();
        let dof = cells.len() - 1;
        let dist = ChiSquared::new(dof as f64).map_err(|e| Error::Sampling(e.to_string()))?;
        Ok(ChiSquareTest {
            statistic,
            dof,
            p_value: dist.sf(statistic),
        })
    }

    /// `Σ |n_i/N - P_i|` between the empirical and the source bin probabilities.
    pub fn l1_distance(&self, density: &Series) -> Result<f64> {
        let n = self.total as f64;
        Ok(self
            .expected(density)?
            .iter()
            .zip(&self.counts)
            .map(|(e, &c)| (c as f64 / n - e / n).abs())
            .sum())
    }

    /// Merge consecutive bins in groups of `factor`; the last group may be
    /// smaller.
    pub fn rebin(&self, factor: usize) -> Result<EventHistogram> {
        if factor == 0 {
            return Err(Error::Sampling("rebin factor must be > 0".into()));
        }
        let n = self.counts.len();
        let mut edges = vec![self.edges[0]];
        let mut counts = Vec::with_capacity(n / factor + 1);
        for start in (0..n).step_by(factor) {
            let end = (start + factor).min(n);
            counts.push(self.counts[start..end].iter().sum());
            edges.push(self.edges[end]);
        }
        Ok(EventHistogram {
            edges,
            counts,
            total: self.total,
            seed: self.seed,
        })
    }

    /// Count per unit abscissa, which is comparable to a density even where
    /// the outer bins are half as wide.
    pub fn count_density(&self) -> Vec<f64> {
        self.counts
            .iter()
            .zip(self.edges.windows(2))
            .map(|(&c, w)| c as f64 / (w[1] - w[0]))
            .collect()
    }

    /// Bin centres of local minima of the count density whose depth is at
    /// least `min_prominence` times the largest count density.
    pub fn minima(&self, min_prominence: f64) -> Vec<f64> {
        let rate = self.count_density();
        let top = rate.iter().copied().fold(0.0, f64::max);
        let flipped: Vec<f64> = rate.iter().map(|r| top - r).collect();
        let centres = self.centres();
        let threshold = min_prominence * top / flipped.iter().copied().fold(0.0, f64::max).max(f64::MIN_POSITIVE);
        find_peaks(&centres, &flipped, threshold)
            .iter()
            .map(|p| centres[p.index])
            .collect()
    }
}
