//! Three-dimensional principal-coordinates (classical scaling) maps of a
//! distance matrix.

use std::fs;
use std::path::Path;

use crate::correl::DistanceMatrix;
use crate::linalg::symmetric_eigen;
use crate::matrix::SquareMatrix;
use crate::panel::{find_meta, AssetMeta};
use crate::{Error, Result, Scalar};

/// Eigenvalues at or below this fraction of the largest give zero columns.
pub const EIGENVALUE_CUTOFF: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingCoordinates<T> {
    pub tickers: Vec<String>,
    /// `coords[i][k]`: coordinate `k` of asset `i`.
    pub coords: Vec<Vec<T>>,
    /// Leading eigenvalues of the centered Gram matrix, descending.
    pub eigenvalues: Vec<T>,
    /// `Σ|negative eigenvalues| / Σ|eigenvalues|`; 0 for Euclidean input.
    pub negative_mass: T,
    pub warnings: Vec<String>,
}

impl<T: Scalar> EmbeddingCoordinates<T> {
    pub fn dims(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Euclidean distance between embedded assets `i` and `j`.
    pub fn distance(&self, i: usize, j: usize) -> T {
        self.coords[i]
            .iter()
            .zip(&self.coords[j])
            .map(|(&a, &b)| (a - b) * (a - b))
            .sum::<T>()
            .sqrt()
    }

    /// `ticker,sector,x,y,z` for three dimensions, `c1..cN` columns otherwise.
    pub fn to_csv(&self, meta: &[AssetMeta]) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["ticker".to_owned(), "sector".to_owned()];
        if self.dims() == 3 {
            header.extend(["x", "y", "z"].map(String::from));
        } else {
            header.extend((1..=self.dims()).map(|k| format!("c{k}")));
        }
        w.write_record(&header)?;
        for (ticker, row) in self.tickers.iter().zip(&self.coords) {
            let sector = find_meta(meta, ticker)
                .map_or(crate::netgraph::UNKNOWN_SECTOR, |m| m.sector.as_str());
            let mut rec = vec![ticker.clone(), sector.to_owned()];
            rec.extend(row.iter().map(ToString::to_string));
            w.write_record(&rec)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::invalid(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn write_csv(&self, meta: &[AssetMeta], path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_csv(meta)?).map_err(|e| Error::io(path, e))
    }
}

pub fn pcoa_embedding<T: Scalar>(
    dist: &DistanceMatrix<T>,
    dims: usize,
) -> Result<EmbeddingCoordinates<T>> {
    classical_scaling(dist.tickers(), dist.values(), dims)
}

/// Classical scaling of any square dissimilarity matrix: `B = −½·H·D²·H`,
/// coordinates from the top `dims` eigenpairs scaled by `√λ`. Negative
/// eigenvalues are clamped to zero columns and reported in `negative_mass`.
/// Each column's largest-magnitude entry is made positive.
pub fn classical_scaling<T: Scalar>(
    tickers: &[String],
    values: &SquareMatrix<T>,
    dims: usize,
) -> Result<EmbeddingCoordinates<T>> {
    let n = values.dim();
    if tickers.len() != n {
        return Err(Error::invalid(format!(
            "{} tickers for {n} rows",
            tickers.len()
        )));
    }
    if n <= dims {
        return Err(Error::TooFewNodes {
            needed: dims + 1,
            got: n,
        });
    }
    if let Some((row, column)) = values.asymmetry(T::zero()) {
        return Err(Error::NotSymmetric { row, column });
    }

    let sq = values.map(|d| d * d);
    let nf = T::from_count(n);
    let row_mean: Vec<T> = sq
        .rows()
        .map(|r| r.iter().copied().sum::<T>() / nf)
        .collect();
    let grand = row_mean.iter().copied().sum::<T>() / nf;
    let half = T::lit(0.5);
    let gram = SquareMatrix::from_fn(n, |i, j| {
        -half * (sq[(i, j)] - row_mean[i] - row_mean[j] + grand)
    });

    let (eigenvalues, vectors) = symmetric_eigen(&gram);
    let total: T = eigenvalues.iter().map(|l| l.abs()).sum();
    let negative: T = eigenvalues
        .iter()
        .filter(|&&l| l < T::zero())
        .map(|l| l.abs())
        .sum();
    let negative_mass = if total > T::zero() {
        negative / total
    } else {
        T::zero()
    };

    let cutoff = T::lit(EIGENVALUE_CUTOFF) * eigenvalues[0].max(T::zero());
    let mut warnings = Vec::new();
    let mut coords = vec![vec![T::zero(); dims]; n];
    for k in 0..dims {
        let lambda = eigenvalues[k];
        if lambda.is_nan() || lambda <= cutoff {
            warnings.push(format!(
                "axis {} has eigenvalue {lambda} at or below cutoff; column set to zero",
                k + 1
            ));
            continue;
        }
        let scale = lambda.sqrt();
        let mut pivot = 0;
        for i in 1..n {
            if vectors[(i, k)].abs() > vectors[(pivot, k)].abs() {
                pivot = i;
            }
        }
        let sign = if vectors[(pivot, k)] < T::zero() {
            -T::one()
        } else {
            T::one()
        };
        for (i, row) in coords.iter_mut().enumerate() {
            row[k] = sign * scale * vectors[(i, k)];
        }
    }

    Ok(EmbeddingCoordinates {
        tickers: tickers.to_vec(),
        coords,
        eigenvalues: eigenvalues[..dims].to_vec(),
        negative_mass,
        warnings,
    })
}
