//! Eigenvector centrality on the 0/1 adjacency matrix.
//!
//! Iterates `x ← (A + I)x / ‖(A + I)x‖` from the uniform vector. The unit
//! shift leaves the eigenvectors of `A` unchanged and breaks the `±λ` tie of
//! bipartite graphs (every tree), where plain `Ax` iteration oscillates.

use crate::netgraph::AssetNetwork;
use crate::{Error, Result, Scalar};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenvectorCentrality<T> {
    /// Nonnegative, unit L2 norm.
    pub values: Vec<T>,
    /// Rayleigh quotient `xᵀAx`.
    pub eigenvalue: T,
    /// `‖Ax − λx‖₂` at the returned iterate.
    pub residual: T,
    pub iterations: usize,
    pub converged: bool,
}

fn adjacency_times<T: Scalar>(adj: &[Vec<(usize, usize)>], x: &[T]) -> Vec<T> {
    adj.iter()
        .map(|nbrs| nbrs.iter().map(|&(u, _)| x[u]).sum())
        .collect()
}

/// Runs the iteration and returns the last iterate whether or not the
/// residual reached `tol`. Fails only on an edgeless graph.
pub fn power_iteration<T: Scalar>(
    net: &AssetNetwork<T>,
    tol: T,
    max_iter: usize,
) -> Result<EigenvectorCentrality<T>> {
    if net.n_edges() == 0 {
        return Err(Error::EdgelessGraph);
    }
    let adj = net.adjacency();
    let n = net.n_nodes();
    let mut x = vec![T::one() / T::from_count(n).sqrt(); n];
    let mut iterations = 0;
    loop {
        let ax = adjacency_times(&adj, &x);
        let lambda: T = x.iter().zip(&ax).map(|(&a, &b)| a * b).sum();
        let residual = x
            .iter()
            .zip(&ax)
            .map(|(&xi, &yi)| (yi - lambda * xi).powi(2))
            .sum::<T>()
            .sqrt();
        if residual <= tol || iterations >= max_iter {
            return Ok(EigenvectorCentrality {
                values: x,
                eigenvalue: lambda,
                residual,
                iterations,
                converged: residual <= tol,
            });
        }
        let mut y: Vec<T> = ax.iter().zip(&x).map(|(&a, &b)| a + b).collect();
        let norm = y.iter().map(|&v| v * v).sum::<T>().sqrt();
        y.iter_mut().for_each(|v| *v /= norm);
        x = y;
        iterations += 1;
    }
}

/// Dominant adjacency eigenvector, or [`Error::NotConverged`] if the residual
/// stays above `tol` after `max_iter` iterations.
pub fn eigenvector_centrality<T: Scalar>(
    net: &AssetNetwork<T>,
    tol: T,
    max_iter: usize,
) -> Result<EigenvectorCentrality<T>> {
    let out = power_iteration(net, tol, max_iter)?;
    if out.converged {
        Ok(out)
    } else {
        Err(Error::NotConverged {
            iterations: out.iterations,
            eigenvalue: out.eigenvalue.as_f64(),
        })
    }
}
