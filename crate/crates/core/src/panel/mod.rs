//! Price panels, asset metadata and log-returns.

mod io;
mod synth;

use chrono::NaiveDate;

pub use io::{
    load_metadata, load_prices, read_metadata, read_prices, write_metadata, write_prices,
};
pub use synth::{generate_synthetic_panel, SectorSpec, SyntheticSpec};

use crate::{Error, Result, Scalar};

/// Daily closing prices for a fixed set of assets, with no missing cells.
#[derive(Debug, Clone, PartialEq)]
pub struct PricePanel<T> {
    dates: Vec<NaiveDate>,
    tickers: Vec<String>,
    /// One series per asset, `series[asset][day]`.
    series: Vec<Vec<T>>,
}

impl<T: Scalar> PricePanel<T> {
    /// Validates every panel invariant: unique nonempty tickers, strictly
    /// increasing dates, complete and strictly positive prices.
    pub fn new(dates: Vec<NaiveDate>, tickers: Vec<String>, series: Vec<Vec<T>>) -> Result<Self> {
        if series.len() != tickers.len() {
            return Err(Error::invalid(format!(
                "{} tickers but {} series",
                tickers.len(),
                series.len()
            )));
        }
        check_tickers(&tickers)?;
        for (row, pair) in dates.windows(2).enumerate() {
            if pair[1] <= pair[0] {
                return Err(Error::NonIncreasingDate {
                    row: row + 1,
                    date: pair[1].to_string(),
                });
            }
        }
        for (ticker, s) in tickers.iter().zip(&series) {
            if s.len() != dates.len() {
                return Err(Error::invalid(format!(
                    "series {ticker:?} has {} prices for {} dates",
                    s.len(),
                    dates.len()
                )));
            }
            if let Some(row) = s.iter().position(|p| !(p.is_finite() && *p > T::zero())) {
                return Err(Error::Cell {
                    row,
                    column: ticker.clone(),
                    message: format!("price {} is not strictly positive", s[row]),
                });
            }
        }
        Ok(Self {
            dates,
            tickers,
            series,
        })
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn tickers(&self) -> &[String] {
        &self.tickers
    }

    pub fn series(&self, asset: usize) -> &[T] {
        &self.series[asset]
    }

    pub fn price(&self, day: usize, asset: usize) -> T {
        self.series[asset][day]
    }

    pub fn n_days(&self) -> usize {
        self.dates.len()
    }

    pub fn n_assets(&self) -> usize {
        self.tickers.len()
    }
}

pub(crate) fn check_tickers(tickers: &[String]) -> Result<()> {
    let mut seen = std::collections::HashSet::with_capacity(tickers.len());
    for t in tickers {
        if t.trim().is_empty() {
            return Err(Error::invalid("empty ticker"));
        }
        if !seen.insert(t.as_str()) {
            return Err(Error::DuplicateTicker(t.clone()));
        }
    }
    Ok(())
}

/// One row of the ticker/company/sector table.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct AssetMeta {
    pub ticker: String,
    pub company: String,
    pub sector: String,
}

/// First metadata record for `ticker`, if any.
pub fn find_meta<'a>(meta: &'a [AssetMeta], ticker: &str) -> Option<&'a AssetMeta> {
    meta.iter().find(|m| m.ticker == ticker)
}

/// Log-returns `ln P[t+1] − ln P[t]`, one series per asset.
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnPanel<T> {
    tickers: Vec<String>,
    series: Vec<Vec<T>>,
}

impl<T: Scalar> ReturnPanel<T> {
    /// Builds a panel directly from return series, e.g. for shuffled or
    /// simulated data. All series must share one length.
    pub fn new(tickers: Vec<String>, series: Vec<Vec<T>>) -> Result<Self> {
        if series.len() != tickers.len() {
            return Err(Error::invalid(format!(
                "{} tickers but {} series",
                tickers.len(),
                series.len()
            )));
        }
        check_tickers(&tickers)?;
        if let Some(first) = series.first() {
            if series.iter().any(|s| s.len() != first.len()) {
                return Err(Error::invalid("return series differ in length"));
            }
        }
        Ok(Self { tickers, series })
    }

    pub fn tickers(&self) -> &[String] {
        &self.tickers
    }

    pub fn series(&self, asset: usize) -> &[T] {
        &self.series[asset]
    }

    pub fn all_series(&self) -> &[Vec<T>] {
        &self.series
    }

    pub fn n_assets(&self) -> usize {
        self.tickers.len()
    }

    pub fn n_observations(&self) -> usize {
        self.series.first().map_or(0, Vec::len)
    }
}

pub fn compute_log_returns<T: Scalar>(panel: &PricePanel<T>) -> Result<ReturnPanel<T>> {
    if panel.n_days() < 2 {
        return Err(Error::TooFewRows {
            needed: 2,
            got: panel.n_days(),
        });
    }
    let series = panel
        .series
        .iter()
        .map(|s| s.windows(2).map(|w| w[1].ln() - w[0].ln()).collect())
        .collect();
    Ok(ReturnPanel {
        tickers: panel.tickers.clone(),
        series,
    })
}
