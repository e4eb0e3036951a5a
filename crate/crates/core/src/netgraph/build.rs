use std::cmp::Ordering;

use super::{nodes_for, AssetNetwork, Edge, NetworkKind, UnionFind};
use crate::correl::{DistanceMatrix, NoiseThreshold};
use crate::panel::AssetMeta;
use crate::{Error, Result, Scalar};

/// Kruskal over candidate edges ordered by `(distance, i, j)`, so ties always
/// resolve to the lexicographically smallest index pair. Edges above the
/// noise floor are flagged when `noise` is given.
pub fn build_mst<T: Scalar>(
    dist: &DistanceMatrix<T>,
    meta: &[AssetMeta],
    noise: Option<&NoiseThreshold<T>>,
) -> Result<AssetNetwork<T>> {
    let n = dist.dim();
    if n < 2 {
        return Err(Error::TooFewNodes { needed: 2, got: n });
    }
    let mut candidates: Vec<(usize, usize, T)> = dist.values().upper_triangle().collect();
    candidates.sort_by(|a, b| {
        a.2.partial_cmp(&b.2)
            .unwrap_or(Ordering::Equal)
            .then(a.0.cmp(&b.0))
            .then(a.1.cmp(&b.1))
    });

    let mut uf = UnionFind::new(n);
    let mut edges = Vec::with_capacity(n - 1);
    for (i, j, d) in candidates {
        if uf.union(i, j) {
            let mut e = Edge::new(i, j, d);
            e.random = noise.is_some_and(|t| t.is_random(d));
            edges.push(e);
            if edges.len() == n - 1 {
                break;
            }
        }
    }
    edges.sort_by_key(|e| (e.source, e.target));
    AssetNetwork::new(nodes_for(dist.tickers(), meta), edges, NetworkKind::Mst)
}

/// Every pair with `d_ij ≤ threshold`; isolated nodes stay in the node list.
pub fn build_asset_graph<T: Scalar>(
    dist: &DistanceMatrix<T>,
    meta: &[AssetMeta],
    threshold: T,
) -> Result<AssetNetwork<T>> {
    check_threshold(threshold)?;
    let edges = dist
        .values()
        .upper_triangle()
        .filter(|&(_, _, d)| d <= threshold)
        .map(|(i, j, d)| Edge::new(i, j, d))
        .collect();
    AssetNetwork::new(
        nodes_for(dist.tickers(), meta),
        edges,
        NetworkKind::AssetGraph { threshold },
    )
}

/// One asset graph per threshold; thresholds must be ascending.
pub fn threshold_sweep<T: Scalar>(
    dist: &DistanceMatrix<T>,
    meta: &[AssetMeta],
    thresholds: &[T],
) -> Result<Vec<AssetNetwork<T>>> {
    if thresholds.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::UnsortedThresholds);
    }
    thresholds
        .iter()
        .map(|&t| build_asset_graph(dist, meta, t))
        .collect()
}

fn check_threshold<T: Scalar>(threshold: T) -> Result<()> {
    if threshold >= T::zero() && threshold <= T::lit(2.0) {
        Ok(())
    } else {
        Err(Error::ThresholdOutOfRange(threshold.as_f64()))
    }
}
