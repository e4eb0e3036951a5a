//! Histograms, empirical CCDFs and log-log power-law slopes.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{Error, Result, Scalar};

/// Default quantile window for the power-law fit.
pub const DEFAULT_FIT_RANGE: (f64, f64) = (0.1, 0.9);

/// Frequencies over contiguous bins `[lower, lower + bin_width)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionTable {
    pub bin_width: usize,
    pub lower_edges: Vec<usize>,
    pub frequencies: Vec<usize>,
}

impl DistributionTable {
    pub fn total(&self) -> usize {
        self.frequencies.iter().sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_lower,bin_upper,frequency\n");
        for (lo, f) in self.lower_edges.iter().zip(&self.frequencies) {
            let _ = writeln!(out, "{lo},{},{f}", lo + self.bin_width);
        }
        out
    }
}

/// Bins run from the one holding the smallest degree to the one holding the
/// largest, including empty bins in between. `bin_width = 1` gives exact
/// counts per degree.
pub fn degree_distribution(degrees: &[usize], bin_width: usize) -> Result<DistributionTable> {
    if bin_width == 0 {
        return Err(Error::invalid("bin width must be at least 1"));
    }
    let (Some(&min), Some(&max)) = (degrees.iter().min(), degrees.iter().max()) else {
        return Ok(DistributionTable {
            bin_width,
            lower_edges: Vec::new(),
            frequencies: Vec::new(),
        });
    };
    let first = min / bin_width;
    let n_bins = max / bin_width - first + 1;
    let mut frequencies = vec![0; n_bins];
    for &d in degrees {
        frequencies[d / bin_width - first] += 1;
    }
    Ok(DistributionTable {
        bin_width,
        lower_edges: (0..n_bins).map(|b| (first + b) * bin_width).collect(),
        frequencies,
    })
}

/// `P(X ≥ x) ≈ c · x^(−alpha)` fitted by least squares in log10–log10 space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit<T> {
    pub alpha: T,
    pub c: T,
    /// Value window actually fitted.
    pub x_min: T,
    pub x_max: T,
    pub n_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CcdfSeries<T> {
    /// Distinct values, ascending.
    pub values: Vec<T>,
    /// Fraction of the sample `≥` each value.
    pub probabilities: Vec<T>,
    pub fit: Option<PowerLawFit<T>>,
}

impl<T: Scalar> CcdfSeries<T> {
    /// Two tab-separated columns, `value` and `ccdf`, after a `#` header line.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("# value\tccdf\n");
        for (x, p) in self.values.iter().zip(&self.probabilities) {
            let _ = writeln!(out, "{x}\t{p}");
        }
        out
    }

    pub fn write_tsv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_tsv()).map_err(|e| Error::io(path, e))
    }
}

/// Linear-interpolation sample quantile of sorted data.
fn quantile<T: Scalar>(sorted: &[T], q: T) -> T {
    let h = q * T::from_count(sorted.len() - 1);
    let lo = h.floor();
    let i = lo.to_usize().unwrap_or(0).min(sorted.len() - 1);
    let j = (i + 1).min(sorted.len() - 1);
    sorted[i] + (h - lo) * (sorted[j] - sorted[i])
}

/// Empirical complementary CDF at every distinct value. With `fit_range =
/// Some((q_lo, q_hi))`, fits a power law to the points whose value lies
/// between those sample quantiles, using strictly positive values only.
pub fn ccdf<T: Scalar>(values: &[T], fit_range: Option<(T, T)>) -> Result<CcdfSeries<T>> {
    if values.is_empty() {
        return Err(Error::invalid("ccdf of an empty sample"));
    }
    if values.iter().any(|v| v.is_nan()) {
        return Err(Error::invalid("ccdf input contains NaN"));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("NaN excluded"));
    let n = T::from_count(sorted.len());

    let mut xs = Vec::new();
    let mut ps = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        xs.push(sorted[i]);
        ps.push(T::from_count(sorted.len() - i) / n);
        while i < sorted.len() && sorted[i] == *xs.last().expect("just pushed") {
            i += 1;
        }
    }

    let fit = match fit_range {
        None => None,
        Some((q_lo, q_hi)) => {
            if !(T::zero() <= q_lo && q_lo < q_hi && q_hi <= T::one()) {
                return Err(Error::invalid(format!(
                    "fit range ({q_lo}, {q_hi}) must satisfy 0 ≤ lo < hi ≤ 1"
                )));
            }
            if sorted.iter().all(|&v| v <= T::zero()) {
                return Err(Error::invalid("cannot fit a power law: no positive values"));
            }
            let (x_min, x_max) = (quantile(&sorted, q_lo), quantile(&sorted, q_hi));
            let points: Vec<(T, T)> = xs
                .iter()
                .zip(&ps)
                .filter(|&(&x, _)| x > T::zero() && x >= x_min && x <= x_max)
                .map(|(&x, &p)| (x.log10(), p.log10()))
                .collect();
            if points.len() < 2 {
                return Err(Error::invalid(
                    "fewer than two positive distinct values inside the fit range",
                ));
            }
            let m = T::from_count(points.len());
            let mx = points.iter().map(|p| p.0).sum::<T>() / m;
            let my = points.iter().map(|p| p.1).sum::<T>() / m;
            let sxx: T = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
            let sxy: T = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
            let slope = sxy / sxx;
            Some(PowerLawFit {
                alpha: -slope,
                c: T::lit(10.0).powf(my - slope * mx),
                x_min,
                x_max,
                n_points: points.len(),
            })
        }
    };
    Ok(CcdfSeries {
        values: xs,
        probabilities: ps,
        fit,
    })
}
