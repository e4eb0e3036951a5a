use crate::netgraph::AssetNetwork;
use crate::Scalar;

/// Number of incident edges per node; isolated nodes get 0.
pub fn node_degree<T: Scalar>(net: &AssetNetwork<T>) -> Vec<usize> {
    let mut deg = vec![0; net.n_nodes()];
    for e in net.edges() {
        deg[e.source] += 1;
        deg[e.target] += 1;
    }
    deg
}

/// Sum of the correlations on each node's incident edges, each edge counted once.
pub fn node_strength<T: Scalar>(net: &AssetNetwork<T>) -> Vec<T> {
    let mut s = vec![T::zero(); net.n_nodes()];
    for e in net.edges() {
        s[e.source] += e.correlation;
        s[e.target] += e.correlation;
    }
    s
}
