use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use super::{gauss_hermite, ForwardModel};
use crate::error::{Error, Result};
use crate::filters::alpha_of_chirp;
use crate::sensing::{synth_signal, SignalSpec, QUADRATURE_PHASES};
use crate::timefreq::{energy_interval, frft};

/// Central-difference step in `f₁` (MHz).
pub const F1_STEP: f64 = 1e-4;
/// Central-difference step in `A`, relative to `max(|A|, 10⁻³)`.
pub const AMPLITUDE_STEP: f64 = 1e-4;
/// Gauss-Hermite nodes for prior expectations.
pub const PRIOR_NODES: usize = 31;
/// Prior standard deviations that must fit between the truth and each
/// band edge for a prior variance to be used by [`bayesian_crb`].
pub const PRIOR_CONTAINMENT: f64 = 3.0;
/// Frequency spacing of the spectrum scanned by [`adaptive_crb`] (MHz).
const SPECTRUM_STEP: f64 = 0.005;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundKind {
    Bcrb,
    AdaptiveCrb,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    /// Lower bound on the MSE of `f₁` (MHz²).
    pub value: f64,
    /// Prior variance attaining the bound (MHz²), for [`BoundKind::Bcrb`].
    pub prior_variance_argmax: Option<f64>,
    /// Adapted `f_j` range (MHz), for [`BoundKind::AdaptiveCrb`].
    pub sample_range: Option<(f64, f64)>,
}

/// Fisher information of the mean contrast vector in `(A, f₁)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FisherInfo {
    /// `JᵀJ/σ²`, parameter order `(A, f₁)`.
    pub matrix: [[f64; 2]; 2],
    /// Determinant below `10⁻³⁰` of the squared largest entry.
    pub singular: bool,
    /// Relative change of `I_f₁f₁` when both steps are halved.
    pub step_agreement: f64,
}

impl FisherInfo {
    pub fn f1f1(&self) -> f64 {
        self.matrix[1][1]
    }
}

fn jacobian(model: &ForwardModel, amplitude: f64, f1: f64, ha: f64, hf: f64) -> Result<[Vec<f64>; 2]> {
    let phases = model.unit_phases(f1)?;
    let col_a = phases
        .iter()
        .map(|p| (((amplitude + ha) * p).cos() - ((amplitude - ha) * p).cos()) / (2.0 * ha))
        .collect();
    let lo = model.unit_phases(f1 - hf)?;
    let hi = model.unit_phases(f1 + hf)?;
    let col_f = lo
        .iter()
        .zip(&hi)
        .map(|(l, h)| ((amplitude * h).cos() - (amplitude * l).cos()) / (2.0 * hf))
        .collect();
    Ok([col_a, col_f])
}

fn gram(j: &[Vec<f64>; 2], variance: f64) -> [[f64; 2]; 2] {
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() / variance;
    let off = dot(&j[0], &j[1]);
    [[dot(&j[0], &j[0]), off], [off, dot(&j[1], &j[1])]]
}

fn check_variance(variance: f64) -> Result<()> {
    if !(variance > 0.0) || !variance.is_finite() {
        return Err(Error::Domain(format!("noise variance must be positive, got {variance}")));
    }
    Ok(())
}

/// `I = JᵀJ/σ²` with a central-difference Jacobian at `(A, f₁)`.
pub fn fisher_information(model: &ForwardModel, at: (f64, f64), noise_variance: f64) -> Result<FisherInfo> {
    check_variance(noise_variance)?;
    let (a, f1) = at;
    let ha = AMPLITUDE_STEP * a.abs().max(1e-3);
    let matrix = gram(&jacobian(model, a, f1, ha, F1_STEP)?, noise_variance);
    let fine = gram(&jacobian(model, a, f1, ha / 2.0, F1_STEP / 2.0)?, noise_variance);
    let step_agreement = if matrix[1][1] == 0.0 && fine[1][1] == 0.0 {
        0.0
    } else {
        (matrix[1][1] - fine[1][1]).abs() / matrix[1][1].abs().max(fine[1][1].abs())
    };
    let scale = matrix.iter().flatten().fold(0.0_f64, |m, v| m.max(v.abs()));
    let det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0];
    Ok(FisherInfo {
        matrix,
        singular: scale == 0.0 || det.abs() < 1e-30 * scale * scale,
        step_agreement,
    })
}

/// `I_f₁f₁` at `f1` with `A` fixed, or `None` outside the filter band
/// `[min f_j, max f_j]`.
fn f1_information(model: &ForwardModel, amplitude: f64, f1: f64, variance: f64) -> Result<Option<f64>> {
    let (lo, hi) = model.band();
    if f1 - F1_STEP < lo || f1 + F1_STEP > hi || !model.supports(f1 + F1_STEP) {
        return Ok(None);
    }
    let ha = AMPLITUDE_STEP * amplitude.abs().max(1e-3);
    let j = jacobian(model, amplitude, f1, ha, F1_STEP)?;
    Ok(Some(j[1].iter().map(|d| d * d).sum::<f64>() / variance))
}

/// 40 log-spaced prior variances over `[10⁻⁸, 10²]` MHz².
pub fn default_prior_grid() -> Vec<f64> {
    log_grid(1e-8, 1e2, 40)
}

pub(crate) fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}

/// Van Trees bound `(E_prior[I(f₁)] + 1/σ_p²)⁻¹` maximized over the prior
/// variances in `prior_grid`; the prior is Gaussian, centred at `truth`.
///
/// `info` returns `None` where the information is undefined (outside the
/// model's band); the prior is then conditioned on the remaining nodes.
pub fn van_trees_bound<F>(info: F, truth: f64, prior_grid: &[f64]) -> Result<BoundReport>
where
    F: Fn(f64) -> Result<Option<f64>>,
{
    if prior_grid.is_empty() {
        return Err(Error::Degenerate("prior variance grid is empty".into()));
    }
    if let Some(v) = prior_grid.iter().find(|v| !(**v > 0.0) || !v.is_finite()) {
        return Err(Error::Domain(format!("prior variances must be positive, got {v}")));
    }
    let (nodes, weights) = gauss_hermite(PRIOR_NODES);
    let mut best: Option<(f64, f64)> = None;
    for &var in prior_grid {
        let sd = var.sqrt();
        let mut expected = 0.0;
        let mut mass = 0.0;
        for (x, w) in nodes.iter().zip(&weights) {
            if let Some(i) = info(truth + SQRT_2 * sd * x)? {
                expected += w * i;
                mass += w;
            }
        }
        if mass == 0.0 {
            return Err(Error::Degenerate(format!("no prior node inside the model band at f1 = {truth}")));
        }
        let bound = 1.0 / (expected / mass + 1.0 / var);
        if best.is_none_or(|(b, _)| bound > b) {
            best = Some((bound, var));
        }
    }
    let (value, var) = best.expect("grid is non-empty");
    Ok(BoundReport {
        kind: BoundKind::Bcrb,
        value,
        prior_variance_argmax: Some(var),
        sample_range: None,
    })
}

/// Bayesian CRB on `f₁` with `A` fixed at its true value.
///
/// Only prior variances whose `±3σ_p` range around the truth lies inside
/// the filter band are used; wider priors mostly weigh frequencies the
/// design never probes, and the maximized bound would then track the band
/// edges rather than the estimation problem at the truth.
pub fn bayesian_crb(model: &ForwardModel, truth: (f64, f64), noise_variance: f64, prior_grid: &[f64]) -> Result<BoundReport> {
    check_variance(noise_variance)?;
    if prior_grid.is_empty() {
        return Err(Error::Degenerate("prior variance grid is empty".into()));
    }
    let (a, f1) = truth;
    let (lo, hi) = model.band();
    let room = (f1 - lo).min(hi - f1);
    let admissible: Vec<f64> = prior_grid
        .iter()
        .copied()
        .filter(|v| PRIOR_CONTAINMENT * v.sqrt() <= room)
        .collect();
    if admissible.is_empty() {
        return Err(Error::Degenerate(format!(
            "no prior variance fits inside the filter band [{lo}, {hi}] MHz around f1 = {f1}"
        )));
    }
    van_trees_bound(|f| f1_information(model, a, f, noise_variance), f1, &admissible)
}

/// CRB `1/I_f₁f₁` after redistributing the filter frequencies over the
/// band holding `energy_fraction` of the signal energy.
///
/// The band comes from the signal's fractional spectrum at the template's
/// own order `α = arccot(q)`, on `u ∈ [0, 2·f_max·sin α]`; `n_samples`
/// frequencies `f_j = u/sin α` are spread evenly over it and measured with
/// both quadrature phases.
pub fn adaptive_crb(
    template: &ForwardModel,
    truth: (f64, f64),
    noise_variance: f64,
    n_samples: usize,
    energy_fraction: f64,
) -> Result<BoundReport> {
    check_variance(noise_variance)?;
    if n_samples < 2 {
        return Err(Error::Domain(format!("adaptive design needs at least 2 samples, got {n_samples}")));
    }
    let (a, f1) = truth;
    let signal = SignalSpec::new(a, f1, template.signal_chirp(), template.duration())?;
    let g = synth_signal(&signal.with_amplitude(1.0), template.grid())?;
    let alpha = alpha_of_chirp(template.q());
    let sin_a = alpha.sin();
    let u_max = 2.0 * signal.max_frequency() * sin_a;
    let du = SPECTRUM_STEP * sin_a;
    let n_u = (u_max / du).ceil() as usize + 1;
    let u: Vec<f64> = (0..n_u).map(|i| i as f64 * du).collect();
    let spectrum = frft(&g, alpha, &u)?;
    let (u_lo, u_hi) = energy_interval(&spectrum, energy_fraction)?;
    let f_lo = (u_lo / sin_a).max(du / sin_a);
    let f_hi = u_hi / sin_a;
    let f_grid: Vec<f64> = (0..n_samples)
        .map(|i| f_lo + (f_hi - f_lo) * i as f64 / (n_samples - 1) as f64)
        .collect();
    let adapted = ForwardModel::new(template.q(), template.signal_chirp(), template.duration(), &f_grid, &QUADRATURE_PHASES)?;
    let info = f1_information(&adapted, a, f1, noise_variance)?.unwrap_or(0.0);
    if !(info > 0.0) {
        return Err(Error::Degenerate(format!(
            "no Fisher information about f1 on the adapted band [{f_lo}, {f_hi}] MHz"
        )));
    }
    Ok(BoundReport {
        kind: BoundKind::AdaptiveCrb,
        value: 1.0 / info,
        prior_variance_argmax: None,
        sample_range: Some((f_lo, f_hi)),
    })
}
