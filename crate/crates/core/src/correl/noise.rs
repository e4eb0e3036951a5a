//! Distance floor of randomized data.
//!
//! Each replicate permutes every asset's return series independently, which
//! keeps each marginal distribution and destroys cross-asset dependence. The
//! replicate statistic is the smallest off-diagonal distance of the shuffled
//! panel, i.e. one minus its strongest spurious correlation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{centered_ranks, dot};
use crate::panel::ReturnPanel;
use crate::{Error, Result, Scalar};

pub const MIN_OFFDIAGONAL_DISTANCE: &str = "min-offdiagonal-distance";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseThreshold<T> {
    pub mean: T,
    /// Sample standard deviation over replicates (0 for a single replicate).
    pub std: T,
    pub n_shuffles: usize,
    pub seed: u64,
    pub statistic: String,
}

impl<T: Scalar> NoiseThreshold<T> {
    /// Edges longer than the mean floor are indistinguishable from noise.
    pub fn is_random(&self, distance: T) -> bool {
        distance > self.mean
    }
}

/// Independent stream for one asset in one replicate.
fn shuffle_rng(seed: u64, replicate: u64, asset: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&replicate.to_le_bytes());
    key[16..24].copy_from_slice(&asset.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

fn fisher_yates<V>(items: &mut [V], rng: &mut impl Rng) {
    for i in (1..items.len()).rev() {
        let j = rng.random_range(0..=i);
        items.swap(i, j);
    }
}

/// Per-replicate minimum off-diagonal distances, in replicate order.
pub fn noise_replicates<T: Scalar>(
    panel: &ReturnPanel<T>,
    n_shuffles: usize,
    seed: u64,
) -> Result<Vec<T>> {
    if n_shuffles == 0 {
        return Err(Error::invalid("n_shuffles must be at least 1"));
    }
    if panel.n_assets() < 2 {
        return Err(Error::TooFewNodes {
            needed: 2,
            got: panel.n_assets(),
        });
    }
    // Ranking commutes with permutation, so shuffling the unit rank vectors
    // is equivalent to shuffling returns and re-ranking.
    let base: Vec<Vec<T>> = centered_ranks(panel)?
        .into_iter()
        .map(|(z, ss)| {
            let norm = ss.sqrt();
            z.into_iter().map(|v| v / norm).collect()
        })
        .collect();
    let stats = (0..n_shuffles as u64)
        .into_par_iter()
        .map(|r| {
            let shuffled: Vec<Vec<T>> = base
                .iter()
                .enumerate()
                .map(|(a, z)| {
                    let mut z = z.clone();
                    fisher_yates(&mut z, &mut shuffle_rng(seed, r, a as u64));
                    z
                })
                .collect();
            let mut max_corr = -T::one();
            for i in 0..shuffled.len() {
                for j in (i + 1)..shuffled.len() {
                    max_corr = max_corr.max(dot(&shuffled[i], &shuffled[j]));
                }
            }
            T::one() - max_corr.min(T::one())
        })
        .collect();
    Ok(stats)
}

/// Mean and spread of the minimum shuffled distance over `n_shuffles`
/// replicates. Identical inputs give identical output at any thread count.
pub fn estimate_noise_threshold<T: Scalar>(
    panel: &ReturnPanel<T>,
    n_shuffles: usize,
    seed: u64,
) -> Result<NoiseThreshold<T>> {
    let stats = noise_replicates(panel, n_shuffles, seed)?;
    let n = T::from_count(stats.len());
    let mean = stats.iter().copied().sum::<T>() / n;
    let std = if stats.len() > 1 {
        (stats.iter().map(|&s| (s - mean) * (s - mean)).sum::<T>() / (n - T::one())).sqrt()
    } else {
        T::zero()
    };
    Ok(NoiseThreshold {
        mean,
        std,
        n_shuffles,
        seed,
        statistic: MIN_OFFDIAGONAL_DISTANCE.to_owned(),
    })
}
