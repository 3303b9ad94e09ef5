//! Estimation and detection statistics on simulated contrast records:
//! least-squares fits of `(A, f₁)`, bootstrapped MSE, Fisher information,
//! Van Trees and design-adapted Cramér-Rao bounds, MAP tests and the Bayes
//! error.

mod bootstrap;
pub mod bounds;
mod fit;
mod hypothesis;
mod model;
mod quadrature;

pub use bootstrap::{mse_bootstrap, mse_bootstrap_errors, BootstrapMse};
pub use bounds::{
    adaptive_crb, bayesian_crb, default_prior_grid, fisher_information, van_trees_bound, BoundKind, BoundReport,
    FisherInfo,
};
pub use fit::{fit_least_squares, fit_multistart, EstimationResult, FitOptions};
pub use hypothesis::{bayes_error, map_test, Decision, Hypothesis, TestResult};
pub use model::ForwardModel;
pub use quadrature::gauss_hermite;
