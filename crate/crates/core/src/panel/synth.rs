//! One-market-factor plus one-factor-per-sector Gaussian return model.
//!
//! For asset `i` in sector `s` with sector loading `b_s` and market loading `m`:
//!
//! ```text
//! r_i = m·F + b_s·G_s + sqrt(1 − m² − b_s²)·ε_i
//! ```
//!
//! with `F`, `G_s`, `ε_i` independent standard normals, so every standardized
//! return has unit variance. Returns are scaled by [`DAILY_VOLATILITY`] before
//! being compounded into prices that start at 100.

use chrono::{Datelike, Days, NaiveDate, Weekday};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{AssetMeta, PricePanel};
use crate::{Error, Result, Scalar};

pub const DAILY_VOLATILITY: f64 = 0.01;
pub const INITIAL_PRICE: f64 = 100.0;

#[derive(Debug, Clone, PartialEq)]
pub struct SectorSpec {
    pub label: String,
    pub size: usize,
    /// Loading on the sector factor, in `[0, 1)`.
    pub loading: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSpec {
    pub n_assets: usize,
    /// Number of price rows; the return panel has one fewer.
    pub n_days: usize,
    pub sectors: Vec<SectorSpec>,
    pub market_loading: f64,
    pub seed: u64,
}

impl SyntheticSpec {
    /// `n_sectors` sectors named `S1..` of near-equal size sharing one loading.
    pub fn balanced(
        n_assets: usize,
        n_days: usize,
        n_sectors: usize,
        sector_loading: f64,
        market_loading: f64,
        seed: u64,
    ) -> Self {
        let n_sectors = n_sectors.clamp(1, n_assets.max(1));
        let sectors = (0..n_sectors)
            .map(|s| SectorSpec {
                label: format!("S{}", s + 1),
                size: n_assets / n_sectors + usize::from(s < n_assets % n_sectors),
                loading: sector_loading,
            })
            .collect();
        Self {
            n_assets,
            n_days,
            sectors,
            market_loading,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        let total: usize = self.sectors.iter().map(|s| s.size).sum();
        if total != self.n_assets {
            return Err(Error::invalid(format!(
                "sector sizes sum to {total}, expected {}",
                self.n_assets
            )));
        }
        if self.n_assets == 0 || self.n_days == 0 {
            return Err(Error::invalid("need at least one asset and one day"));
        }
        let unit = 0.0..1.0;
        if !unit.contains(&self.market_loading) {
            return Err(Error::invalid(format!(
                "market loading {} outside [0, 1)",
                self.market_loading
            )));
        }
        for s in &self.sectors {
            if !unit.contains(&s.loading) {
                return Err(Error::invalid(format!(
                    "sector {:?} loading {} outside [0, 1)",
                    s.label, s.loading
                )));
            }
            if self.market_loading.powi(2) + s.loading.powi(2) >= 1.0 {
                return Err(Error::invalid(format!(
                    "sector {:?}: market² + sector² loading must be below 1",
                    s.label
                )));
            }
        }
        Ok(())
    }
}

/// Deterministic synthetic panel and matching metadata. Tickers are `A000`,
/// `A001`, ... assigned sector by sector in the order given.
pub fn generate_synthetic_panel<T: Scalar>(
    spec: &SyntheticSpec,
) -> Result<(PricePanel<T>, Vec<AssetMeta>)> {
    spec.validate()?;

    let width = spec.n_assets.saturating_sub(1).to_string().len().max(3);
    let mut sector_of = Vec::with_capacity(spec.n_assets);
    let mut meta = Vec::with_capacity(spec.n_assets);
    for (s, sector) in spec.sectors.iter().enumerate() {
        for _ in 0..sector.size {
            let i = sector_of.len();
            sector_of.push(s);
            meta.push(AssetMeta {
                ticker: format!("A{i:0width$}"),
                company: format!("Synthetic {i}"),
                sector: sector.label.clone(),
            });
        }
    }
    let residual: Vec<f64> = sector_of
        .iter()
        .map(|&s| (1.0 - spec.market_loading.powi(2) - spec.sectors[s].loading.powi(2)).sqrt())
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut log_price = vec![INITIAL_PRICE.ln(); spec.n_assets];
    let mut series: Vec<Vec<T>> = (0..spec.n_assets)
        .map(|_| {
            let mut s = Vec::with_capacity(spec.n_days);
            s.push(T::lit(INITIAL_PRICE));
            s
        })
        .collect();
    let mut sector_factor = vec![0.0; spec.sectors.len()];
    for _ in 1..spec.n_days {
        let market: f64 = StandardNormal.sample(&mut rng);
        for g in sector_factor.iter_mut() {
            *g = StandardNormal.sample(&mut rng);
        }
        for i in 0..spec.n_assets {
            let s = sector_of[i];
            let eps: f64 = StandardNormal.sample(&mut rng);
            let r = spec.market_loading * market
                + spec.sectors[s].loading * sector_factor[s]
                + residual[i] * eps;
            log_price[i] += DAILY_VOLATILITY * r;
            series[i].push(T::lit(log_price[i].exp()));
        }
    }

    let dates = trading_days(
        NaiveDate::from_ymd_opt(2010, 1, 4).expect("valid date"),
        spec.n_days,
    );
    let tickers = meta.iter().map(|m| m.ticker.clone()).collect();
    Ok((PricePanel::new(dates, tickers, series)?, meta))
}

/// `n` consecutive weekdays starting at `start` (or the next weekday).
fn trading_days(start: NaiveDate, n: usize) -> Vec<NaiveDate> {
    let mut out = Vec::with_capacity(n);
    let mut d = start;
    while out.len() < n {
        if !matches!(d.weekday(), Weekday::Sat | Weekday::Sun) {
            out.push(d);
        }
        d = d + Days::new(1);
    }
    out
}
