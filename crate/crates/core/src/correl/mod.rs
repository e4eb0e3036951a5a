//! Spearman correlation, the `d = 1 − c` distance, and the shuffle-based
//! noise floor for distances.

mod io;
mod noise;
mod rank;

pub use io::{read_matrix_csv, write_matrix_csv};
pub use noise::{
    estimate_noise_threshold, noise_replicates, NoiseThreshold, MIN_OFFDIAGONAL_DISTANCE,
};
pub use rank::average_ranks;

use crate::matrix::SquareMatrix;
use crate::panel::ReturnPanel;
use crate::{Error, Result, Scalar};

/// Minimum observations per asset for a Spearman coefficient.
pub const MIN_OBSERVATIONS: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix<T> {
    tickers: Vec<String>,
    values: SquareMatrix<T>,
}

impl<T: Scalar> CorrelationMatrix<T> {
    /// Checks exact symmetry, unit diagonal and range `[−1, 1]`.
    pub fn new(tickers: Vec<String>, values: SquareMatrix<T>) -> Result<Self> {
        check_square(&tickers, &values)?;
        for i in 0..values.dim() {
            if values[(i, i)] != T::one() {
                return Err(Error::invalid(format!(
                    "correlation diagonal at {i} is not 1"
                )));
            }
        }
        for (i, j, c) in values.upper_triangle() {
            if !(c >= -T::one() && c <= T::one()) {
                return Err(Error::invalid(format!(
                    "correlation ({i}, {j}) = {c} outside [-1, 1]"
                )));
            }
        }
        Ok(Self { tickers, values })
    }

    pub fn tickers(&self) -> &[String] {
        &self.tickers
    }

    pub fn values(&self) -> &SquareMatrix<T> {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[(i, j)]
    }

    pub fn dim(&self) -> usize {
        self.tickers.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix<T> {
    tickers: Vec<String>,
    values: SquareMatrix<T>,
}

impl<T: Scalar> DistanceMatrix<T> {
    /// Checks exact symmetry, zero diagonal and off-diagonal range `[0, 2]`.
    pub fn new(tickers: Vec<String>, values: SquareMatrix<T>) -> Result<Self> {
        check_square(&tickers, &values)?;
        for i in 0..values.dim() {
            if values[(i, i)] != T::zero() {
                return Err(Error::invalid(format!("distance diagonal at {i} is not 0")));
            }
        }
        let two = T::lit(2.0);
        for (i, j, d) in values.upper_triangle() {
            if !(d >= T::zero() && d <= two) {
                return Err(Error::invalid(format!(
                    "distance ({i}, {j}) = {d} outside [0, 2]"
                )));
            }
        }
        Ok(Self { tickers, values })
    }

    pub fn tickers(&self) -> &[String] {
        &self.tickers
    }

    pub fn values(&self) -> &SquareMatrix<T> {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[(i, j)]
    }

    pub fn dim(&self) -> usize {
        self.tickers.len()
    }

    /// Same matrix with assets reordered so that new asset `k` is old `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            tickers: perm.iter().map(|&p| self.tickers[p].clone()).collect(),
            values: self.values.permuted(perm),
        }
    }
}

fn check_square<T: Scalar>(tickers: &[String], values: &SquareMatrix<T>) -> Result<()> {
    if tickers.len() != values.dim() {
        return Err(Error::invalid(format!(
            "{} tickers for a {}×{} matrix",
            tickers.len(),
            values.dim(),
            values.dim()
        )));
    }
    crate::panel::check_tickers(tickers)?;
    if let Some((row, column)) = values.asymmetry(T::zero()) {
        return Err(Error::NotSymmetric { row, column });
    }
    Ok(())
}

/// Average ranks minus their mean, with the sum of squares, one per asset.
/// Centered ranks are multiples of ½, so both are exact for realistic lengths.
pub(crate) fn centered_ranks<T: Scalar>(panel: &ReturnPanel<T>) -> Result<Vec<(Vec<T>, T)>> {
    let n_obs = panel.n_observations();
    if n_obs < MIN_OBSERVATIONS {
        return Err(Error::TooFewRows {
            needed: MIN_OBSERVATIONS,
            got: n_obs,
        });
    }
    // ranks 1..=n average to (n + 1) / 2
    let mean = T::from_count(n_obs + 1) / T::lit(2.0);
    panel
        .all_series()
        .iter()
        .zip(panel.tickers())
        .map(|(series, ticker)| {
            let z: Vec<T> = average_ranks(series)
                .into_iter()
                .map(|r| r - mean)
                .collect();
            let ss = dot(&z, &z);
            if ss == T::zero() {
                return Err(Error::ConstantSeries(ticker.clone()));
            }
            Ok((z, ss))
        })
        .collect()
}

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// Pearson correlation of the average (fractional) ranks of every pair of assets.
pub fn spearman_correlation<T: Scalar>(panel: &ReturnPanel<T>) -> Result<CorrelationMatrix<T>> {
    let z = centered_ranks(panel)?;
    let n = z.len();
    let mut values = SquareMatrix::zeros(n);
    for i in 0..n {
        values[(i, i)] = T::one();
        for j in (i + 1)..n {
            let c = dot(&z[i].0, &z[j].0) / (z[i].1 * z[j].1).sqrt();
            let c = c.max(-T::one()).min(T::one());
            values[(i, j)] = c;
            values[(j, i)] = c;
        }
    }
    Ok(CorrelationMatrix {
        tickers: panel.tickers().to_vec(),
        values,
    })
}

/// `d_ij = 1 − c_ij`, with an exact zero diagonal.
pub fn distance_from_correlation<T: Scalar>(corr: &CorrelationMatrix<T>) -> DistanceMatrix<T> {
    let n = corr.dim();
    let values = SquareMatrix::from_fn(n, |i, j| {
        if i == j {
            T::zero()
        } else {
            T::one() - corr.get(i, j)
        }
    });
    DistanceMatrix {
        tickers: corr.tickers.clone(),
        values,
    }
}

/// Inverse of [`distance_from_correlation`]: `c_ij = 1 − d_ij`.
pub fn correlation_from_distance<T: Scalar>(dist: &DistanceMatrix<T>) -> CorrelationMatrix<T> {
    let n = dist.dim();
    let values = SquareMatrix::from_fn(n, |i, j| {
        if i == j {
            T::one()
        } else {
            T::one() - dist.get(i, j)
        }
    });
    CorrelationMatrix {
        tickers: dist.tickers.clone(),
        values,
    }
}
