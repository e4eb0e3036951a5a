use std::collections::VecDeque;

use rayon::prelude::*;

use num_traits::NumAssign;

use crate::netgraph::AssetNetwork;
use crate::Scalar;

/// Brandes accumulation over hop-count geodesics, summed over ordered pairs
/// `(s, t)`; unreachable pairs contribute nothing. No normalization.
pub fn betweenness_centrality<T: Scalar>(net: &AssetNetwork<T>) -> Vec<T> {
    betweenness_in(net)
}

/// [`betweenness_centrality`] computed in any number type, e.g. an exact
/// rational for verification.
pub fn betweenness_in<N, T>(net: &AssetNetwork<T>) -> Vec<N>
where
    N: NumAssign + Clone + Send + Sync,
    T: Scalar,
{
    let n = net.n_nodes();
    let adj = net.adjacency();
    let per_source: Vec<Vec<N>> = (0..n)
        .into_par_iter()
        .map(|s| single_source_dependency(&adj, s))
        .collect();
    // fixed summation order keeps the result thread-count independent
    let mut total = vec![N::zero(); n];
    for delta in per_source {
        for (t, d) in total.iter_mut().zip(delta) {
            *t += d;
        }
    }
    total
}

fn single_source_dependency<N: NumAssign + Clone>(adj: &[Vec<(usize, usize)>], s: usize) -> Vec<N> {
    let n = adj.len();
    let mut sigma = vec![N::zero(); n];
    let mut dist: Vec<Option<usize>> = vec![None; n];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();

    sigma[s] = N::one();
    dist[s] = Some(0);
    queue.push_back(s);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        let dv = dist[v].expect("queued nodes have a distance");
        for &(w, _) in &adj[v] {
            if dist[w].is_none() {
                dist[w] = Some(dv + 1);
                queue.push_back(w);
            }
            if dist[w] == Some(dv + 1) {
                let add = sigma[v].clone();
                sigma[w] += add;
                preds[w].push(v);
            }
        }
    }

    let mut delta = vec![N::zero(); n];
    for &w in order.iter().rev() {
        let share = (N::one() + delta[w].clone()) / sigma[w].clone();
        for &v in &preds[w] {
            delta[v] += sigma[v].clone() * share.clone();
        }
    }
    delta[s] = N::zero();
    delta
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_counts_ordered_pairs() {
        let net = AssetNetwork::custom(&["a", "b", "c"], &[(0, 1, 0.5), (1, 2, 0.5)]).unwrap();
        assert_eq!(betweenness_centrality(&net), vec![0.0, 2.0, 0.0]);
    }

    #[test]
    fn star_and_complete() {
        let star = AssetNetwork::custom(
            &["c", "a", "b", "d", "e"],
            &[(0, 1, 0.1), (0, 2, 0.1), (0, 3, 0.1), (0, 4, 0.1)],
        )
        .unwrap();
        assert_eq!(
            betweenness_centrality(&star),
            vec![12.0, 0.0, 0.0, 0.0, 0.0]
        );
        let edges: Vec<_> = (0..5)
            .flat_map(|i| ((i + 1)..5).map(move |j| (i, j, 0.1)))
            .collect();
        let k5 = AssetNetwork::custom(&["a", "b", "c", "d", "e"], &edges).unwrap();
        assert!(betweenness_centrality(&k5).iter().all(|&b| b == 0.0));
    }

    #[test]
    fn square_splits_geodesics() {
        // 4-cycle: each opposite pair has two geodesics
        let c4 = AssetNetwork::custom(
            &["a", "b", "c", "d"],
            &[(0, 1, 0.1), (1, 2, 0.1), (2, 3, 0.1), (0, 3, 0.1)],
        )
        .unwrap();
        assert_eq!(betweenness_centrality(&c4), vec![1.0; 4]);
    }
}
