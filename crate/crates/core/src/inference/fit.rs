use serde::{Deserialize, Serialize};

use super::ForwardModel;
use crate::error::{Error, Result};
use crate::sensing::{spectrum_from_record, MeasurementRecord};

/// Least-squares estimate of `(A, f₁)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimationResult {
    /// Amplitude estimate (rad/µs); the model is even in `A`, so `|A|` is reported.
    pub amplitude: f64,
    pub f1: f64,
    /// `‖c − μ(Â, f̂₁)‖`.
    pub residual_norm: f64,
    pub converged: bool,
    pub iterations: usize,
    /// Largest cosine between the residual and a Jacobian column at the end.
    pub gradient_norm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitOptions {
    /// Spacing of the `f₁` start grid (MHz).
    pub start_step: f64,
    /// How many of the lowest-cost starts are refined.
    pub refine_starts: usize,
    pub max_iterations: usize,
    /// Central-difference step in `f₁` (MHz).
    pub f1_step: f64,
    /// Relative central-difference step in `A`.
    pub amplitude_step: f64,
    /// Convergence threshold on the residual/Jacobian cosine.
    pub gradient_tolerance: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            start_step: 0.05,
            refine_starts: 6,
            max_iterations: 100,
            f1_step: 1e-4,
            amplitude_step: 1e-4,
            gradient_tolerance: 1e-8,
        }
    }
}

/// Amplitude candidates per start, spanning `(0, 3·A₀]`.
const AMPLITUDE_SCAN: usize = 30;

struct Problem<'a> {
    model: &'a ForwardModel,
    contrasts: Vec<f64>,
    f_lo: f64,
    f_hi: f64,
    options: FitOptions,
}

impl Problem<'_> {
    fn new<'a>(record: &MeasurementRecord, model: &'a ForwardModel, options: FitOptions) -> Result<Problem<'a>> {
        model.check_record(record)?;
        let freqs = model.frequencies();
        Ok(Problem {
            model,
            contrasts: record.contrasts(),
            f_lo: 0.0,
            f_hi: *freqs.last().ok_or_else(|| Error::Degenerate("empty filter design".into()))?,
            options,
        })
    }

    fn clamp(&self, f1: f64) -> f64 {
        f1.clamp(self.f_lo, self.f_hi)
    }

    fn residuals(&self, phases: &[f64], a: f64) -> Vec<f64> {
        self.contrasts.iter().zip(phases).map(|(c, p)| c - (a * p).cos()).collect()
    }

    /// Jacobian columns of the mean in `A` and `f₁`, by central differences.
    fn jacobian(&self, a: f64, f1: f64, phases: &[f64]) -> Result<[Vec<f64>; 2]> {
        let ha = self.options.amplitude_step * a.abs().max(1e-3);
        let col_a = phases
            .iter()
            .map(|p| (((a + ha) * p).cos() - ((a - ha) * p).cos()) / (2.0 * ha))
            .collect();
        let hf = self.options.f1_step;
        let lo = self.clamp(f1 - hf);
        let hi = self.clamp(f1 + hf);
        let plo = self.model.unit_phases(lo)?;
        let phi = self.model.unit_phases(hi)?;
        let col_f = plo
            .iter()
            .zip(&phi)
            .map(|(l, h)| ((a * h).cos() - (a * l).cos()) / (hi - lo))
            .collect();
        Ok([col_a, col_f])
    }

    /// Levenberg-Marquardt from `(a, f1)`.
    fn refine(&self, a: f64, f1: f64) -> Result<EstimationResult> {
        let mut p = [a, self.clamp(f1)];
        let mut phases = self.model.unit_phases(p[1])?;
        let mut r = self.residuals(&phases, p[0]);
        let mut cost = norm2(&r);
        let mut lambda = 1e-3;
        let mut iterations = 0;
        let mut converged = false;
        let mut gradient_norm = f64::INFINITY;
        while iterations < self.options.max_iterations {
            if cost.sqrt() < 1e-12 {
                converged = true;
                gradient_norm = 0.0;
                break;
            }
            iterations += 1;
            let j = self.jacobian(p[0], p[1], &phases)?;
            let g = [dot(&j[0], &r), dot(&j[1], &r)];
            let h = [[dot(&j[0], &j[0]), dot(&j[0], &j[1])], [0.0, dot(&j[1], &j[1])]];
            let r_norm = cost.sqrt();
            gradient_norm = (0..2)
                .map(|i| if h[i][i] > 0.0 { g[i].abs() / (h[i][i].sqrt() * r_norm) } else { 0.0 })
                .fold(0.0, f64::max);
            if gradient_norm < self.options.gradient_tolerance {
                converged = true;
                break;
            }
            let mut accepted = false;
            for _ in 0..30 {
                let a11 = h[0][0] * (1.0 + lambda);
                let a22 = h[1][1] * (1.0 + lambda);
                let a12 = h[0][1];
                let det = a11 * a22 - a12 * a12;
                if !(det.abs() > 0.0) {
                    lambda *= 10.0;
                    continue;
                }
                let step = [(a22 * g[0] - a12 * g[1]) / det, (a11 * g[1] - a12 * g[0]) / det];
                let trial = [p[0] + step[0], self.clamp(p[1] + step[1])];
                let trial_phases = self.model.unit_phases(trial[1])?;
                let trial_r = self.residuals(&trial_phases, trial[0]);
                let trial_cost = norm2(&trial_r);
                if trial_cost < cost {
                    let small = (trial[0] - p[0]).abs() <= 1e-14 * p[0].abs().max(1e-12)
                        && (trial[1] - p[1]).abs() <= 1e-14 * p[1].abs().max(1e-12);
                    p = trial;
                    phases = trial_phases;
                    r = trial_r;
                    cost = trial_cost;
                    lambda = (lambda / 10.0).max(1e-12);
                    accepted = true;
                    if small {
                        converged = true;
                    }
                    break;
                }
                lambda *= 10.0;
            }
            if !accepted || converged {
                // No downhill step at any damping: a stationary point up to
                // finite-difference accuracy.
                converged = converged || gradient_norm < 1e-4;
                break;
            }
        }
        Ok(EstimationResult {
            amplitude: p[0].abs(),
            f1: p[1],
            residual_norm: cost.sqrt(),
            converged,
            iterations,
            gradient_norm,
        })
    }
}

/// Damped Gauss-Newton fit of `(A, f₁)` started at `init`.
///
/// `f₁` is kept inside `[0, max f_j]`, where the model grid resolves the
/// signal.
pub fn fit_least_squares(record: &MeasurementRecord, model: &ForwardModel, init: (f64, f64)) -> Result<EstimationResult> {
    Problem::new(record, model, FitOptions::default())?.refine(init.0, init.1)
}

/// Multi-start fit: `f₁` starts every `start_step` across the filter band,
/// each with the amplitude that reproduces the record's peak phase
/// magnitude. The `refine_starts` lowest-cost starts are refined and the
/// lowest-residual result is returned.
pub fn fit_multistart(record: &MeasurementRecord, model: &ForwardModel, options: FitOptions) -> Result<EstimationResult> {
    let problem = Problem::new(record, model, options)?;
    let freqs = model.frequencies();
    let (lo, hi) = (freqs[0], freqs[freqs.len() - 1]);
    if !(options.start_step > 0.0) || options.refine_starts == 0 {
        return Err(Error::Domain("fit start grid needs a positive step and at least one start".into()));
    }
    let observed_peak = spectrum_from_record(record)
        .points
        .iter()
        .map(|p| p.magnitude)
        .fold(0.0, f64::max);

    let n_starts = ((hi - lo) / options.start_step + 1e-9).floor() as usize + 1;
    let mut starts = Vec::with_capacity(n_starts);
    for i in 0..n_starts {
        let f1 = lo + i as f64 * options.start_step;
        let phases = model.unit_phases(f1)?;
        let unit_peak = grouped_peak(model, &phases);
        let a0 = if unit_peak > 0.0 { observed_peak / unit_peak } else { 0.0 };
        // Coarse amplitude scan around the peak-matching value.
        let (cost, a) = (1..=AMPLITUDE_SCAN)
            .map(|k| a0 * k as f64 / (AMPLITUDE_SCAN / 3) as f64)
            .map(|a| (norm2(&problem.residuals(&phases, a)), a))
            .fold((f64::INFINITY, a0), |best, c| if c.0 < best.0 { c } else { best });
        starts.push((cost, a, f1));
    }
    starts.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut best: Option<EstimationResult> = None;
    for &(_, a, f1) in starts.iter().take(options.refine_starts) {
        let fit = problem.refine(a, f1)?;
        if best.is_none_or(|b| fit.residual_norm < b.residual_norm) {
            best = Some(fit);
        }
    }
    best.ok_or_else(|| Error::Degenerate("no fit starts".into()))
}

/// Largest per-frequency phase magnitude `√(Σ_φ Φ²)`.
fn grouped_peak(model: &ForwardModel, phases: &[f64]) -> f64 {
    let mut peak: f64 = 0.0;
    let mut current_f = f64::NAN;
    let mut acc = 0.0;
    for (f, p) in model.filters().iter().zip(phases) {
        if f.f_j() != current_f {
            peak = peak.max(acc);
            current_f = f.f_j();
            acc = 0.0;
        }
        acc = acc.hypot(*p);
    }
    peak.max(acc)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm2(r: &[f64]) -> f64 {
    dot(r, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sensing::{measure, NoiseModel, SignalSpec, QUADRATURE_PHASES};

    fn grid() -> Vec<f64> {
        (0..18).map(|i| 0.9 + 0.1 * i as f64).collect()
    }

    fn record(model: &ForwardModel, a: f64, f1: f64, variance: f64) -> MeasurementRecord {
        let signal = SignalSpec::new(a, f1, model.signal_chirp(), 9.6).unwrap();
        measure(&signal, model.filters(), &NoiseModel::new(variance, 5).unwrap()).unwrap()
    }

    #[test]
    fn noiseless_fit_from_truth_stays() {
        let model = ForwardModel::new(0.0, 0.0, 9.6, &grid(), &QUADRATURE_PHASES).unwrap();
        let rec = record(&model, 0.2428, 1.2, 0.0);
        let fit = fit_least_squares(&rec, &model, (0.2428, 1.2)).unwrap();
        assert!(fit.converged);
        assert!((fit.f1 - 1.2).abs() < 1e-6);
        assert!(fit.residual_norm < 1e-10);
    }

    #[test]
    fn noiseless_matched_fit_from_offset_start() {
        let model = ForwardModel::new(-0.125, -0.125, 9.6, &grid(), &QUADRATURE_PHASES).unwrap();
        let rec = record(&model, 0.2428, 1.2, 0.0);
        let fit = fit_least_squares(&rec, &model, (0.2428, 1.25)).unwrap();
        assert!((fit.f1 - 1.2).abs() < 1e-4, "{fit:?}");
        assert!((fit.amplitude - 0.2428).abs() < 1e-4);
    }

    #[test]
    fn multistart_finds_truth_without_init() {
        let model = ForwardModel::new(-0.05, -0.05, 9.6, &grid(), &QUADRATURE_PHASES).unwrap();
        let rec = record(&model, 0.2428, 1.3, 0.0);
        let fit = fit_multistart(&rec, &model, FitOptions::default()).unwrap();
        assert!((fit.f1 - 1.3).abs() < 1e-6, "{fit:?}");
        assert!(fit.residual_norm < 1e-10);
    }

    #[test]
    fn mismatched_record_rejected() {
        let model = ForwardModel::new(0.0, 0.0, 9.6, &grid(), &QUADRATURE_PHASES).unwrap();
        let other = ForwardModel::new(-0.05, 0.0, 9.6, &grid(), &QUADRATURE_PHASES).unwrap();
        let rec = record(&other, 0.2428, 1.2, 0.0);
        assert!(matches!(fit_least_squares(&rec, &model, (0.2, 1.2)), Err(Error::Contract(_))));
    }
}
