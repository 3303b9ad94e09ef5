use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BootstrapMse {
    pub mse_mean: f64,
    pub mse_std: f64,
}

/// Bootstrapped mean-squared error of `estimates` around `truth`.
pub fn mse_bootstrap(estimates: &[f64], truth: f64, n_resamples: usize, seed: u64) -> Result<BootstrapMse> {
    let errors: Vec<f64> = estimates.iter().map(|e| e - truth).collect();
    mse_bootstrap_errors(&errors, n_resamples, seed)
}

/// Resamples squared errors with replacement `n_resamples` times and returns
/// the mean and standard deviation of the resampled MSEs.
pub fn mse_bootstrap_errors(errors: &[f64], n_resamples: usize, seed: u64) -> Result<BootstrapMse> {
    if errors.len() < 2 {
        return Err(Error::Degenerate(format!(
            "bootstrap needs at least 2 estimates, got {}",
            errors.len()
        )));
    }
    if n_resamples < 2 {
        return Err(Error::Degenerate("bootstrap needs at least 2 resamples".into()));
    }
    let squared: Vec<f64> = errors.iter().map(|e| e * e).collect();
    let n = squared.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mses: Vec<f64> = (0..n_resamples)
        .map(|_| (0..n).map(|_| squared[rng.random_range(0..n)]).sum::<f64>() / n as f64)
        .collect();
    let mean = mses.iter().sum::<f64>() / n_resamples as f64;
    let var = mses.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (n_resamples - 1) as f64;
    Ok(BootstrapMse {
        mse_mean: mean,
        mse_std: var.sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_estimates_have_zero_mse() {
        let r = mse_bootstrap(&[1.2; 20], 1.2, 1000, 1).unwrap();
        assert_eq!(r.mse_mean, 0.0);
        assert_eq!(r.mse_std, 0.0);
    }

    #[test]
    fn symmetric_pair_gives_squared_offset() {
        let e = 0.01;
        let r = mse_bootstrap(&[1.2 + e, 1.2 - e], 1.2, 1000, 3).unwrap();
        assert!((r.mse_mean - e * e).abs() <= 5.0 * e * e / 1000f64.sqrt());
    }

    #[test]
    fn deterministic_given_seed() {
        let est = [1.19, 1.21, 1.3, 1.18, 1.2];
        let a = mse_bootstrap(&est, 1.2, 500, 9).unwrap();
        let b = mse_bootstrap(&est, 1.2, 500, 9).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, mse_bootstrap(&est, 1.2, 500, 10).unwrap());
    }

    #[test]
    fn too_few_estimates_rejected() {
        assert!(matches!(mse_bootstrap(&[], 1.2, 100, 1), Err(Error::Degenerate(_))));
        assert!(matches!(mse_bootstrap(&[1.0], 1.2, 100, 1), Err(Error::Degenerate(_))));
    }
}
