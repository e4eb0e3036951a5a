//! Node centralities, k-shells and their distributions for any
//! [`AssetNetwork`].

mod betweenness;
mod closeness;
mod degree;
mod distribution;
mod eigenvector;
mod kshell;

pub use betweenness::{betweenness_centrality, betweenness_in};
pub use closeness::{closeness_centrality, shortest_distances, Closeness, ClosenessMode};
pub use degree::{node_degree, node_strength};
pub use distribution::{
    ccdf, degree_distribution, CcdfSeries, DistributionTable, PowerLawFit, DEFAULT_FIT_RANGE,
};
pub use eigenvector::{
    eigenvector_centrality, power_iteration, EigenvectorCentrality, DEFAULT_MAX_ITER,
    DEFAULT_TOLERANCE,
};
pub use kshell::{degree_vs_kshell, k_shell_decomposition};

use std::fs;
use std::path::Path;

use crate::netgraph::AssetNetwork;
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralityOptions<T> {
    pub closeness: ClosenessMode,
    pub tolerance: T,
    pub max_iter: usize,
}

impl<T: Scalar> Default for CentralityOptions<T> {
    fn default() -> Self {
        Self {
            closeness: ClosenessMode::Sum,
            tolerance: T::lit(DEFAULT_TOLERANCE),
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

/// Every per-node measure for one network.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityReport<T> {
    pub tickers: Vec<String>,
    pub sectors: Vec<String>,
    pub degree: Vec<usize>,
    pub strength: Vec<T>,
    /// `None` for an edgeless graph, where no dominant eigenvector exists.
    pub eigenvector: Option<EigenvectorCentrality<T>>,
    pub betweenness: Vec<T>,
    pub closeness: Vec<Closeness<T>>,
    pub kshell: Vec<usize>,
}

impl<T: Scalar> CentralityReport<T> {
    /// The eigenvector column is kept even if power iteration exhausts its
    /// budget; check `eigenvector.converged`.
    pub fn compute(net: &AssetNetwork<T>, options: &CentralityOptions<T>) -> Result<Self> {
        let eigenvector = match power_iteration(net, options.tolerance, options.max_iter) {
            Ok(ev) => Some(ev),
            Err(Error::EdgelessGraph) => None,
            Err(e) => return Err(e),
        };
        Ok(Self {
            tickers: net.nodes().iter().map(|v| v.id.clone()).collect(),
            sectors: net.nodes().iter().map(|v| v.sector.clone()).collect(),
            degree: node_degree(net),
            strength: node_strength(net),
            eigenvector,
            betweenness: betweenness_centrality(net),
            closeness: closeness_centrality(net, options.closeness),
            kshell: k_shell_decomposition(net),
        })
    }

    pub fn inv_closeness(&self) -> Vec<T> {
        self.closeness.iter().map(|c| c.inverse).collect()
    }

    /// Columns `ticker,sector,degree,strength,eigenvector,betweenness,closeness_len,inv_closeness,kshell`;
    /// undefined values are left empty.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "ticker",
            "sector",
            "degree",
            "strength",
            "eigenvector",
            "betweenness",
            "closeness_len",
            "inv_closeness",
            "kshell",
        ])?;
        for i in 0..self.tickers.len() {
            let eig = self
                .eigenvector
                .as_ref()
                .map_or(String::new(), |ev| ev.values[i].to_string());
            let len = self.closeness[i]
                .length
                .map_or(String::new(), |l| l.to_string());
            w.write_record([
                self.tickers[i].clone(),
                self.sectors[i].clone(),
                self.degree[i].to_string(),
                self.strength[i].to_string(),
                eig,
                self.betweenness[i].to_string(),
                len,
                self.closeness[i].inverse.to_string(),
                self.kshell[i].to_string(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::invalid(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_csv()?).map_err(|e| Error::io(path, e))
    }
}
