use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::netgraph::AssetNetwork;
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClosenessMode {
    /// `ℓ_i = Σ_j d(i, j)` over reachable `j`.
    #[default]
    Sum,
    /// The sum divided by the node count `n`.
    Mean,
}

impl std::str::FromStr for ClosenessMode {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "sum" => Ok(Self::Sum),
            "mean" => Ok(Self::Mean),
            other => Err(crate::Error::invalid(format!(
                "closeness mode must be sum or mean, got {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Closeness<T> {
    /// Geodesic length `ℓ`; `None` for a node that reaches no other node.
    pub length: Option<T>,
    /// `1 / ℓ`, or 0 when `ℓ` is undefined.
    pub inverse: T,
}

#[derive(PartialEq)]
struct Frontier<T> {
    dist: T,
    node: usize,
}

impl<T: PartialOrd> Eq for Frontier<T> {}

impl<T: PartialOrd> Ord for Frontier<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on (dist, node)
        other
            .dist
            .partial_cmp(&self.dist)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl<T: PartialOrd> PartialOrd for Frontier<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Distance-weighted geodesic lengths from `source`; `None` where unreachable.
pub fn shortest_distances<T: Scalar>(net: &AssetNetwork<T>, source: usize) -> Vec<Option<T>> {
    dijkstra(&net.adjacency(), net, source)
}

fn dijkstra<T: Scalar>(
    adj: &[Vec<(usize, usize)>],
    net: &AssetNetwork<T>,
    source: usize,
) -> Vec<Option<T>> {
    let mut best: Vec<Option<T>> = vec![None; adj.len()];
    let mut done = vec![false; adj.len()];
    let mut heap = BinaryHeap::new();
    best[source] = Some(T::zero());
    heap.push(Frontier {
        dist: T::zero(),
        node: source,
    });
    while let Some(Frontier { dist, node }) = heap.pop() {
        if done[node] {
            continue;
        }
        done[node] = true;
        for &(next, k) in &adj[node] {
            let cand = dist + net.edges()[k].distance;
            if best[next].is_none_or(|b| cand < b) {
                best[next] = Some(cand);
                heap.push(Frontier {
                    dist: cand,
                    node: next,
                });
            }
        }
    }
    best
}

/// Closeness from distance-weighted geodesics. A node with `ℓ = 0` but
/// reachable neighbors (zero-length edges only) gets an infinite inverse.
pub fn closeness_centrality<T: Scalar>(
    net: &AssetNetwork<T>,
    mode: ClosenessMode,
) -> Vec<Closeness<T>> {
    let n = net.n_nodes();
    let adj = net.adjacency();
    (0..n)
        .into_par_iter()
        .map(|i| {
            let dist = dijkstra(&adj, net, i);
            let reached = dist
                .iter()
                .enumerate()
                .filter(|&(j, d)| j != i && d.is_some())
                .count();
            if reached == 0 {
                return Closeness {
                    length: None,
                    inverse: T::zero(),
                };
            }
            let sum: T = dist
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .filter_map(|(_, d)| *d)
                .sum();
            let length = match mode {
                ClosenessMode::Sum => sum,
                ClosenessMode::Mean => sum / T::from_count(n),
            };
            Closeness {
                length: Some(length),
                inverse: T::one() / length,
            }
        })
        .collect()
}
