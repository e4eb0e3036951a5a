//! Filtered correlation networks: the minimum spanning tree and threshold
//! asset graphs built from a [`DistanceMatrix`](crate::correl::DistanceMatrix).

mod build;
mod export;

pub use build::{build_asset_graph, build_mst, threshold_sweep};
pub use export::{export_network, read_network_json, render_network, ExportFormat};

use std::collections::HashSet;

use crate::panel::{find_meta, AssetMeta};
use crate::{Error, Result, Scalar};

/// Sector assigned to tickers without a metadata record.
pub const UNKNOWN_SECTOR: &str = "unknown";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    pub sector: String,
    pub company: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge<T> {
    /// Always `source < target`.
    pub source: usize,
    pub target: usize,
    pub distance: T,
    pub correlation: T,
    /// Set when the distance is above the noise floor.
    pub random: bool,
}

impl<T: Scalar> Edge<T> {
    /// Orders endpoints and derives `correlation = 1 − distance`.
    pub fn new(a: usize, b: usize, distance: T) -> Self {
        Self {
            source: a.min(b),
            target: a.max(b),
            distance,
            correlation: T::one() - distance,
            random: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NetworkKind<T> {
    Mst,
    /// Every pair with `d ≤ threshold`.
    AssetGraph {
        threshold: T,
    },
    /// Edges supplied by the caller with no construction rule.
    Custom,
}

impl<T: Scalar> NetworkKind<T> {
    /// Short label used in file names and reports: `mst`, `t0.7`, `custom`.
    pub fn label(&self) -> String {
        match self {
            NetworkKind::Mst => "mst".into(),
            NetworkKind::AssetGraph { threshold } => format!("t{threshold}"),
            NetworkKind::Custom => "custom".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssetNetwork<T> {
    nodes: Vec<Node>,
    edges: Vec<Edge<T>>,
    kind: NetworkKind<T>,
}

impl<T: Scalar> AssetNetwork<T> {
    /// Validates the structural invariants: endpoints in range, no self-loops
    /// or duplicates, distances in `[0, 2]`, and for [`NetworkKind::Mst`] a
    /// spanning tree.
    pub fn new(nodes: Vec<Node>, edges: Vec<Edge<T>>, kind: NetworkKind<T>) -> Result<Self> {
        let n = nodes.len();
        let ids: Vec<String> = nodes.iter().map(|v| v.id.clone()).collect();
        crate::panel::check_tickers(&ids)?;
        let mut seen = HashSet::with_capacity(edges.len());
        let two = T::lit(2.0);
        for e in &edges {
            if e.source >= e.target || e.target >= n {
                return Err(Error::invalid(format!(
                    "edge ({}, {}) must satisfy source < target < {n}",
                    e.source, e.target
                )));
            }
            if !seen.insert((e.source, e.target)) {
                return Err(Error::invalid(format!(
                    "duplicate edge ({}, {})",
                    e.source, e.target
                )));
            }
            if !(e.distance >= T::zero() && e.distance <= two) {
                return Err(Error::invalid(format!(
                    "edge distance {} outside [0, 2]",
                    e.distance
                )));
            }
            if e.correlation != T::one() - e.distance {
                return Err(Error::invalid("edge correlation must equal 1 − distance"));
            }
        }
        if let NetworkKind::AssetGraph { threshold } = kind {
            if !(threshold >= T::zero() && threshold <= two) {
                return Err(Error::ThresholdOutOfRange(threshold.as_f64()));
            }
            if let Some(e) = edges.iter().find(|e| e.distance > threshold) {
                return Err(Error::invalid(format!(
                    "edge ({}, {}) longer than threshold {threshold}",
                    e.source, e.target
                )));
            }
        }
        let net = Self { nodes, edges, kind };
        if kind == NetworkKind::Mst && !net.is_spanning_tree() {
            return Err(Error::invalid("MST edges do not form a spanning tree"));
        }
        Ok(net)
    }

    /// Arbitrary graph on `ids` with `(a, b, distance)` edges, every node in
    /// sector [`UNKNOWN_SECTOR`].
    pub fn custom(ids: &[&str], edges: &[(usize, usize, T)]) -> Result<Self> {
        let nodes = ids
            .iter()
            .map(|id| Node {
                id: (*id).to_owned(),
                sector: UNKNOWN_SECTOR.into(),
                company: None,
            })
            .collect();
        let edges = edges.iter().map(|&(a, b, d)| Edge::new(a, b, d)).collect();
        Self::new(nodes, edges, NetworkKind::Custom)
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn kind(&self) -> NetworkKind<T> {
        self.kind
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn total_distance(&self) -> T {
        self.edges.iter().map(|e| e.distance).sum()
    }

    /// `(source, target)` pairs, for subset comparisons.
    pub fn edge_set(&self) -> HashSet<(usize, usize)> {
        self.edges.iter().map(|e| (e.source, e.target)).collect()
    }

    /// Neighbor lists `(neighbor, edge index)`, in edge order.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for (k, e) in self.edges.iter().enumerate() {
            adj[e.source].push((e.target, k));
            adj[e.target].push((e.source, k));
        }
        adj
    }

    /// Number of connected components, counting isolated nodes.
    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.nodes.len());
        for e in &self.edges {
            uf.union(e.source, e.target);
        }
        (0..self.nodes.len()).filter(|&v| uf.find(v) == v).count()
    }

    fn is_spanning_tree(&self) -> bool {
        let n = self.nodes.len();
        if n == 0 || self.edges.len() != n - 1 {
            return false;
        }
        let mut uf = UnionFind::new(n);
        self.edges.iter().all(|e| uf.union(e.source, e.target))
    }

    /// Marks every edge whose distance lies above the noise floor.
    pub fn flag_random_edges(&mut self, noise: &crate::correl::NoiseThreshold<T>) {
        for e in &mut self.edges {
            e.random = noise.is_random(e.distance);
        }
    }
}

pub(crate) fn nodes_for(tickers: &[String], meta: &[AssetMeta]) -> Vec<Node> {
    tickers
        .iter()
        .map(|t| match find_meta(meta, t) {
            Some(m) => Node {
                id: t.clone(),
                sector: m.sector.clone(),
                company: Some(m.company.clone()),
            },
            None => Node {
                id: t.clone(),
                sector: UNKNOWN_SECTOR.into(),
                company: None,
            },
        })
        .collect()
}

/// Disjoint sets with path halving and union by size.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False if `a` and `b` were already connected.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_edges() {
        let ids = ["a", "b", "c"];
        assert!(AssetNetwork::custom(&ids, &[(0, 0, 0.5)]).is_err());
        assert!(AssetNetwork::custom(&ids, &[(0, 3, 0.5)]).is_err());
        assert!(AssetNetwork::custom(&ids, &[(0, 1, 0.5), (1, 0, 0.4)]).is_err());
        assert!(AssetNetwork::custom(&ids, &[(0, 1, 2.5)]).is_err());
        assert!(AssetNetwork::<f64>::custom(&["a", "a"], &[]).is_err());
        let net = AssetNetwork::custom(&ids, &[(2, 1, 0.5)]).unwrap();
        assert_eq!((net.edges()[0].source, net.edges()[0].target), (1, 2));
        assert_eq!(net.component_count(), 2);
    }

    #[test]
    fn mst_kind_requires_tree() {
        let nodes: Vec<Node> = ["a", "b", "c"]
            .iter()
            .map(|id| Node {
                id: (*id).into(),
                sector: "x".into(),
                company: None,
            })
            .collect();
        let cycle = vec![
            Edge::new(0, 1, 0.1_f64),
            Edge::new(1, 2, 0.1),
            Edge::new(0, 2, 0.1),
        ];
        assert!(AssetNetwork::new(nodes.clone(), cycle, NetworkKind::Mst).is_err());
        let tree = vec![Edge::new(0, 1, 0.1), Edge::new(1, 2, 0.1)];
        assert!(AssetNetwork::new(nodes, tree, NetworkKind::Mst).is_ok());
    }

    #[test]
    fn labels() {
        assert_eq!(NetworkKind::<f64>::Mst.label(), "mst");
        assert_eq!(NetworkKind::AssetGraph { threshold: 0.7 }.label(), "t0.7");
    }
}
