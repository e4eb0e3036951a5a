//! Brute-force reference implementations and random instance generators.
//! Nothing here calls into the code paths it is used to check.
#![allow(dead_code)]

use marketmap::matrix::SquareMatrix;
use marketmap::AssetNetwork;
use marketmap::DistanceMatrix;
use num_rational::Ratio;
use rand::Rng;

pub fn tickers(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("N{i}")).collect()
}

pub fn ids(n: usize) -> Vec<String> {
    tickers(n)
}

/// Average rank of `x[i]`: number of smaller values plus the mean position
/// among equal values.
pub fn brute_rank(x: &[f64]) -> Vec<f64> {
    x.iter()
        .map(|&v| {
            let less = x.iter().filter(|&&w| w < v).count() as f64;
            let equal = x.iter().filter(|&&w| w == v).count() as f64;
            less + (equal + 1.0) / 2.0
        })
        .collect()
}

pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    sxy / (sxx * syy).sqrt()
}

pub fn brute_spearman(x: &[f64], y: &[f64]) -> f64 {
    pearson(&brute_rank(x), &brute_rank(y))
}

/// Random panel with values drawn from a small grid so ties are common.
pub fn random_tied_series(rng: &mut impl Rng, n_assets: usize, n_days: usize) -> Vec<Vec<f64>> {
    (0..n_assets)
        .map(|_| loop {
            let s: Vec<f64> = (0..n_days)
                .map(|_| f64::from(rng.random_range(-4..=4_i32)) * 0.01)
                .collect();
            if s.iter().any(|&v| v != s[0]) {
                break s;
            }
        })
        .collect()
}

pub fn random_distance_matrix(rng: &mut impl Rng, n: usize) -> DistanceMatrix {
    let mut m = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let d = rng.random_range(0.0..2.0);
            m[(i, j)] = d;
            m[(j, i)] = d;
        }
    }
    DistanceMatrix::new(tickers(n), m).unwrap()
}

/// Every labeled tree on `n ≥ 2` nodes, decoded from all `n^(n−2)` Prüfer sequences.
pub fn all_labeled_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 2 {
        return vec![vec![(0, 1)]];
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    let mut out = Vec::with_capacity(total);
    let mut seq = vec![0usize; len];
    for code in 0..total {
        let mut c = code;
        for s in seq.iter_mut() {
            *s = c % n;
            c /= n;
        }
        let mut degree = vec![1usize; n];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &s in &seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf.min(s), leaf.max(s)));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(edges);
    }
    out
}

/// Minimum spanning-tree weight by exhaustive enumeration, summing each
/// tree's distances in ascending order.
pub fn brute_mst_weight(dist: &DistanceMatrix) -> (f64, Vec<(usize, usize)>) {
    let mut best: Option<(f64, Vec<(usize, usize)>)> = None;
    for tree in all_labeled_trees(dist.dim()) {
        let w = sorted_sum(tree.iter().map(|&(i, j)| dist.get(i, j)));
        if best.as_ref().is_none_or(|(b, _)| w < *b) {
            let mut t = tree.clone();
            t.sort();
            best = Some((w, t));
        }
    }
    best.unwrap()
}

pub fn sorted_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(f64::total_cmp);
    v.iter().sum()
}

/// Erdős–Rényi graph with uniform edge distances in `(0, 2)`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> AssetNetwork {
    let names = ids(n);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random_bool(p) {
                edges.push((i, j, rng.random_range(0.01..2.0)));
            }
        }
    }
    AssetNetwork::custom(&refs, &edges).unwrap()
}

pub fn adjacency_matrix(net: &AssetNetwork) -> Vec<Vec<bool>> {
    let n = net.n_nodes();
    let mut a = vec![vec![false; n]; n];
    for e in net.edges() {
        a[e.source][e.target] = true;
        a[e.target][e.source] = true;
    }
    a
}

/// Betweenness by listing every simple path for every ordered pair, in exact
/// rationals.
pub fn brute_betweenness(net: &AssetNetwork) -> Vec<Ratio<i64>> {
    let n = net.n_nodes();
    let adj = adjacency_matrix(net);
    let mut out = vec![Ratio::from_integer(0); n];
    for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            let mut paths = Vec::new();
            let mut stack = vec![s];
            simple_paths(&adj, t, &mut stack, &mut paths);
            let Some(shortest) = paths.iter().map(Vec::len).min() else {
                continue;
            };
            let geodesics: Vec<&Vec<usize>> =
                paths.iter().filter(|p| p.len() == shortest).collect();
            let m = geodesics.len() as i64;
            for (k, slot) in out.iter_mut().enumerate() {
                if k == s || k == t {
                    continue;
                }
                let through = geodesics.iter().filter(|p| p.contains(&k)).count() as i64;
                *slot += Ratio::new(through, m);
            }
        }
    }
    out
}

fn simple_paths(
    adj: &[Vec<bool>],
    target: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let v = *stack.last().unwrap();
    if v == target {
        out.push(stack.clone());
        return;
    }
    for w in 0..adj.len() {
        if adj[v][w] && !stack.contains(&w) {
            stack.push(w);
            simple_paths(adj, target, stack, out);
            stack.pop();
        }
    }
}

/// All-pairs weighted shortest distances; `INFINITY` where unreachable.
pub fn floyd_warshall(net: &AssetNetwork) -> Vec<Vec<f64>> {
    let n = net.n_nodes();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for e in net.edges() {
        d[e.source][e.target] = d[e.source][e.target].min(e.distance);
        d[e.target][e.source] = d[e.source][e.target];
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Core index as the largest `k` whose maximal min-degree-`k` subgraph
/// (found by deleting nodes of degree `< k` to a fixpoint) contains the node.
pub fn brute_core_index(net: &AssetNetwork) -> Vec<usize> {
    let n = net.n_nodes();
    let adj = adjacency_matrix(net);
    let mut core = vec![0; n];
    for k in 1..n {
        let mut alive = vec![true; n];
        loop {
            let mut changed = false;
            for v in 0..n {
                if alive[v] {
                    let deg = (0..n).filter(|&u| alive[u] && adj[v][u]).count();
                    if deg < k {
                        alive[v] = false;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if !alive.iter().any(|&a| a) {
            break;
        }
        for v in 0..n {
            if alive[v] {
                core[v] = k;
            }
        }
    }
    core
}

/// Inverse-transform Pareto sampler with scale 1: `P(X ≥ x) = x^(−alpha)`.
pub fn pareto_samples(rng: &mut impl Rng, alpha: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| {
            let u: f64 = 1.0 - rng.random::<f64>(); // (0, 1]
            u.powf(-1.0 / alpha)
        })
        .collect()
}
