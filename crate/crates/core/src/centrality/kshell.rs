use crate::netgraph::AssetNetwork;
use crate::Scalar;

use super::node_degree;

/// Shell index of every node by iterative peeling: at stage `k` nodes whose
/// remaining degree is at most `k` are removed (repeatedly) and assigned
/// shell `k`. Isolated nodes get 0. Uses the linear-time bucket algorithm of
/// Batagelj and Zaversnik.
pub fn k_shell_decomposition<T: Scalar>(net: &AssetNetwork<T>) -> Vec<usize> {
    let n = net.n_nodes();
    if n == 0 {
        return Vec::new();
    }
    let adj = net.adjacency();
    let mut deg = node_degree(net);
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    // bin_start[d]: first slot of degree-d nodes in `order`
    let mut bin_start = vec![0usize; max_deg + 2];
    for &d in &deg {
        bin_start[d + 1] += 1;
    }
    for d in 1..bin_start.len() {
        bin_start[d] += bin_start[d - 1];
    }
    let mut next = bin_start.clone();
    let mut order = vec![0usize; n];
    let mut pos = vec![0usize; n];
    for v in 0..n {
        pos[v] = next[deg[v]];
        order[pos[v]] = v;
        next[deg[v]] += 1;
    }

    for i in 0..n {
        let v = order[i];
        for &(u, _) in &adj[v] {
            if deg[u] > deg[v] {
                let du = deg[u];
                let first = bin_start[du];
                let w = order[first];
                if u != w {
                    order.swap(pos[u], first);
                    pos[w] = pos[u];
                    pos[u] = first;
                }
                bin_start[du] += 1;
                deg[u] -= 1;
            }
        }
    }
    deg
}

/// `(kshell, degree)` per node, sorted by shell then degree.
pub fn degree_vs_kshell<T: Scalar>(net: &AssetNetwork<T>) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = k_shell_decomposition(net)
        .into_iter()
        .zip(node_degree(net))
        .collect();
    pairs.sort_unstable();
    pairs
}
