//! Correlation-network maps of a stock market.
//!
//! From a panel of daily prices the crate computes log-returns, the Spearman
//! rank correlation matrix and the distance `d = 1 − c`, then filters it into
//! a minimum spanning tree and threshold asset graphs. Each network can be
//! scored with degree, strength, eigenvector, betweenness and closeness
//! centralities and k-shell indices, summarized by histograms and log-log
//! CCDFs, and the distance matrix can be embedded in 3-D by principal
//! coordinates. A shuffle test estimates the distance floor of pure noise.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix it to `f64`.

pub mod centrality;
pub mod correl;
pub mod embed;
mod error;
pub mod linalg;
pub mod matrix;
pub mod netgraph;
pub mod panel;
pub mod pipeline;
mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type PricePanel = panel::PricePanel<f64>;
pub type ReturnPanel = panel::ReturnPanel<f64>;
pub type CorrelationMatrix = correl::CorrelationMatrix<f64>;
pub type DistanceMatrix = correl::DistanceMatrix<f64>;
pub type NoiseThreshold = correl::NoiseThreshold<f64>;
pub type AssetNetwork = netgraph::AssetNetwork<f64>;
pub type CentralityReport = centrality::CentralityReport<f64>;
pub type CcdfSeries = centrality::CcdfSeries<f64>;
pub type EmbeddingCoordinates = embed::EmbeddingCoordinates<f64>;
pub type SquareMatrix = matrix::SquareMatrix<f64>;
