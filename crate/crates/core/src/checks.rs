//! Numerical identity checks with independent oracles, run by `verify` and
//! the acceptance suite. Each check reports its worst measured error
//! against a fixed tolerance.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::filters::{alpha_of_chirp, filter_kernel, FilterSpec};
use crate::rng::uniform;
use crate::sensing::{accumulated_phase, stochastic_phase_variance, synth_signal, SignalSpec};
use crate::timefreq::{
    frft, max_dt_for, overlap_integral, radon_projection, wigner, wigner_stochastic, FreqAxis, SampledWaveform,
    TimeGrid,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    /// Worst error observed (relative unless the detail says otherwise).
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &str, measured: f64, tolerance: f64, detail: String) -> Self {
        Self {
            name: name.into(),
            measured,
            tolerance,
            passed: measured < tolerance,
            detail,
        }
    }

    /// `PASS`/`FAIL` line for terminal tables.
    pub fn line(&self) -> String {
        format!(
            "{:<4} {:<34} measured {:.3e}  tol {:.1e}  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.measured,
            self.tolerance,
            self.detail
        )
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// `(∫g·h dt)²` against `∬W_g·W_h dt df` for randomized chirped signals and
/// filters near the signal's own chirp and frequency.
pub fn moyal_identity(pairs: usize, seed: u64) -> Result<CheckOutcome> {
    let duration = 4.0;
    let mut worst: f64 = 0.0;
    let mut smallest_overlap = f64::INFINITY;
    for i in 0..pairs as u64 {
        let u = |k: u64| uniform(seed, i, k);
        let q1 = -0.15 * u(0);
        let f1 = 0.6 + 0.8 * u(1);
        let signal = SignalSpec::new(0.5 + u(2), f1, q1, duration)?.with_phase(2.0 * PI * u(3));
        let q = if i % 5 == 0 { 0.0 } else { q1 + 0.02 * (u(4) - 0.5) };
        let f_j = f1 + 0.3 * (u(5) - 0.5);
        let phi = if u(6) < 0.5 { 0.0 } else { FRAC_PI_2 };
        let filter = FilterSpec::new(q, f_j, phi, duration)?;
        let f_max = filter.max_frequency().max(signal.max_frequency());
        let grid = TimeGrid::with_max_step(0.0, duration, max_dt_for(f_max))?;
        let g = synth_signal(&signal, &grid)?;
        let h = filter_kernel(&filter, &grid)?;
        let direct = accumulated_phase(&g, &h)?.powi(2);
        let axis = FreqAxis::full_band(grid.dt(), 2 * grid.len())?;
        let overlap = overlap_integral(&wigner(&g, &axis)?, &wigner(&h, &axis)?)?;
        worst = worst.max(rel(overlap, direct));
        smallest_overlap = smallest_overlap.min(direct / (g.energy() * h.energy()));
    }
    Ok(CheckOutcome::new(
        "overlap identity (Moyal)",
        worst,
        1e-3,
        format!("{pairs} pairs, smallest normalized overlap {smallest_overlap:.2e}"),
    ))
}

/// Direct trapezoid Fourier sum, written independently of [`frft`].
pub fn fourier_oracle(w: &SampledWaveform, f: f64) -> Complex64 {
    let grid = w.grid();
    w.values()
        .iter()
        .enumerate()
        .map(|(m, v)| v * Complex64::cis(-2.0 * PI * f * grid.time(m)) * grid.weight(m))
        .sum()
}

/// `frft` at `α = π/2` against the direct Fourier sum.
pub fn frft_fourier_agreement() -> Result<CheckOutcome> {
    let grid = TimeGrid::with_max_step(0.0, 9.6, max_dt_for(2.4))?;
    let signal = SignalSpec::new(0.2428, 1.2, -0.125, 9.6)?;
    let g = synth_signal(&signal, &grid)?;
    let f: Vec<f64> = (0..200).map(|k| 0.5 + 0.01 * k as f64).collect();
    let spec = frft(&g, FRAC_PI_2, &f)?;
    let scale = spec.values().iter().fold(0.0_f64, |m, v| m.max(v.norm()));
    let worst = f
        .iter()
        .zip(spec.values())
        .map(|(&fk, v)| (v - fourier_oracle(&g, fk)).norm() / scale)
        .fold(0.0, f64::max);
    Ok(CheckOutcome::new(
        "FRFT at pi/2 vs Fourier quadrature",
        worst,
        1e-6,
        "relative to spectrum peak, chirped default signal".into(),
    ))
}

fn gaussian_test_signal(grid: TimeGrid) -> SampledWaveform {
    SampledWaveform::sample_complex(grid, |t| {
        let x = (t - 0.4) / 1.3;
        Complex64::from_polar((-PI * x * x).exp(), 2.0 * PI * (0.3 * t + 0.05 * t * t))
    })
}

/// `F_β[F_α[g]] = F_{α+β}[g]` on a chirped, shifted Gaussian.
pub fn frft_additivity() -> Result<CheckOutcome> {
    let grid = TimeGrid::spanning(-6.0, 6.0, 2401)?;
    let u: Vec<f64> = grid.times().collect();
    let g = gaussian_test_signal(grid);
    let mut worst: f64 = 0.0;
    for (a, b) in [(0.6, 0.7), (0.3, 1.1), (1.2, 0.9)] {
        let first = frft(&g, a, &u)?;
        let stepped = SampledWaveform::from_complex(grid, first.values().to_vec())?;
        let chained = frft(&stepped, b, &u)?;
        let direct = frft(&g, a + b, &u)?;
        let diff: f64 = chained
            .values()
            .iter()
            .zip(direct.values())
            .map(|(x, y)| (x - y).norm_sqr())
            .sum();
        let norm: f64 = direct.values().iter().map(|y| y.norm_sqr()).sum();
        worst = worst.max((diff / norm).sqrt());
    }
    Ok(CheckOutcome::new(
        "FRFT order additivity",
        worst,
        1e-3,
        "relative L2, orders (0.6+0.7, 0.3+1.1, 1.2+0.9)".into(),
    ))
}

/// Radon projection of the Wigner map against `|F_α|²`.
pub fn wigner_projection() -> Result<CheckOutcome> {
    let grid = TimeGrid::spanning(-5.0, 5.0, 501)?;
    let g = gaussian_test_signal(grid);
    let axis = FreqAxis::spanning(-5.0, 5.0, 501)?;
    let map = wigner(&g, &axis)?;
    let u: Vec<f64> = (0..121).map(|k| -3.0 + 0.05 * k as f64).collect();
    let mut worst: f64 = 0.0;
    for alpha in [FRAC_PI_4, FRAC_PI_2] {
        let projected = radon_projection(&map, alpha, &u, 0.01)?;
        let power = frft(&g, alpha, &u)?.power();
        let diff: f64 = projected.iter().zip(&power).map(|(a, b)| (a - b).abs()).sum();
        let norm: f64 = power.iter().sum();
        worst = worst.max(diff / norm);
    }
    Ok(CheckOutcome::new(
        "Wigner projection vs |FRFT|^2",
        worst,
        1e-2,
        "relative L1 at alpha = pi/4, pi/2".into(),
    ))
}

/// Worst relative error of `|Φ_j|·π/(4√|sin α|)` against
/// `|F_α[g](f_j sin α)|` for filters around the peak of a `q`-matched
/// measurement with `f_j·T = f_t_product`.
pub fn limit_error(q: f64, f_t_product: f64) -> Result<f64> {
    let f1 = 1.2;
    let duration = f_t_product / f1;
    let alpha = alpha_of_chirp(q);
    let signal = SignalSpec::new(0.2428, f1, q, duration)?.with_phase(0.3);
    let offsets = [-0.2, -0.1, 0.0, 0.1, 0.2];
    let filters: Vec<[FilterSpec; 2]> = offsets
        .iter()
        .map(|d| {
            let f_j = f1 + d / duration;
            Ok([FilterSpec::new(q, f_j, 0.0, duration)?, FilterSpec::new(q, f_j, FRAC_PI_2, duration)?])
        })
        .collect::<Result<_>>()?;
    let f_max = filters
        .iter()
        .flatten()
        .map(FilterSpec::max_frequency)
        .fold(signal.max_frequency(), f64::max);
    let grid = TimeGrid::with_max_step(0.0, duration, max_dt_for(f_max))?;
    let g = synth_signal(&signal, &grid)?;
    let u: Vec<f64> = filters.iter().map(|p| p[0].f_j() * alpha.sin()).collect();
    let spectrum = frft(&g, alpha, &u)?;
    let mut worst: f64 = 0.0;
    for (pair, value) in filters.iter().zip(spectrum.values()) {
        let p0 = accumulated_phase(&g, &filter_kernel(&pair[0], &grid)?)?;
        let p1 = accumulated_phase(&g, &filter_kernel(&pair[1], &grid)?)?;
        let scaled = p0.hypot(p1) * PI / (4.0 * alpha.sin().abs().sqrt());
        worst = worst.max(rel(scaled, value.norm()));
    }
    Ok(worst)
}

/// Large-`T` limit of the phase against the (fractional) Fourier transform,
/// at `f_j·T = 50` and at twice the duration.
pub fn large_t_limit(q: f64) -> Result<CheckOutcome> {
    let at_50 = limit_error(q, 50.0)?;
    let at_100 = limit_error(q, 100.0)?;
    let mut out = CheckOutcome::new(
        &format!("large-T limit, q = {q}"),
        at_50,
        2e-2,
        format!("f_j*T = 50; error {at_100:.3e} at 2T"),
    );
    out.passed = out.passed && at_100 < at_50;
    Ok(out)
}

fn random_phase_ensemble(signal: SignalSpec, grid: TimeGrid, seed: u64, amplitude_scale: f64) -> impl Fn(u64) -> Result<SampledWaveform> {
    move |i| {
        let draw = signal
            .with_phase(2.0 * PI * uniform(seed, 0, i))
            .with_amplitude(signal.amplitude * amplitude_scale);
        synth_signal(&draw, &grid)
    }
}

/// Monte-Carlo `⟨Φ²⟩` against the Wigner-overlap prediction for a
/// random-phase chirped ensemble and its matched filter.
///
/// `variance_perturbation` inflates the variance of the draws feeding the
/// direct estimate; 0 is the real check, 0.1 the negative control.
pub fn stochastic_consistency(draws: usize, seed: u64, variance_perturbation: f64) -> Result<CheckOutcome> {
    let (duration, q1, f1) = (4.0, -0.1, 1.0);
    let signal = SignalSpec::new(0.3, f1, q1, duration)?;
    let filter = FilterSpec::new(q1, f1, 0.0, duration)?;
    let grid = TimeGrid::with_max_step(0.0, duration, max_dt_for(filter.max_frequency()))?;
    let h = filter_kernel(&filter, &grid)?;
    let clean = random_phase_ensemble(signal, grid, seed, 1.0);
    let inflated = random_phase_ensemble(signal, grid, seed, (1.0 + variance_perturbation).sqrt());
    let n = draws as u64;
    // Draws below n feed the direct estimate, the rest the autocorrelation.
    let estimate = stochastic_phase_variance(|i| if i < n { inflated(i) } else { clean(i) }, &h, draws)?;
    let name = if variance_perturbation == 0.0 {
        "stochastic phase variance".to_string()
    } else {
        format!("stochastic phase variance (+{:.0}% var)", 100.0 * variance_perturbation)
    };
    Ok(CheckOutcome::new(
        &name,
        rel(estimate.mc_estimate, estimate.wigner_prediction),
        5e-2,
        format!(
            "{draws} draws: MC {:.4e}, Wigner {:.4e}",
            estimate.mc_estimate, estimate.wigner_prediction
        ),
    ))
}

/// Wigner-overlap prediction for a stationary random-phase cosine does not
/// change when a short filter is moved inside the record.
pub fn stationary_shift_invariance() -> Result<CheckOutcome> {
    let (record, window, f0, amp) = (8.0, 2.0, 1.0, 0.3);
    let filter = FilterSpec::new(0.0, f0, 0.0, window)?;
    let grid = TimeGrid::with_max_step(0.0, record, max_dt_for(filter.max_frequency()))?;
    let axis = FreqAxis::full_band(grid.dt(), 2 * grid.len())?;
    let autocorr = |t: f64, tau: f64| {
        let inside = |x: f64| (-1e-12..=record + 1e-12).contains(&x);
        if inside(t + tau / 2.0) && inside(t - tau / 2.0) {
            0.5 * amp * amp * (2.0 * PI * f0 * tau).cos()
        } else {
            0.0
        }
    };
    let w_g = wigner_stochastic(autocorr, &grid, &axis)?;
    let window_samples = (window / grid.dt()).round() as usize;
    let mut values = Vec::new();
    for start in [0.25, 0.4, 0.55] {
        let first = (start * grid.len() as f64) as usize;
        let h = SampledWaveform::sample_real(grid, |t| {
            let i = ((t - grid.t_start()) / grid.dt()).round() as usize;
            if i < first || i > first + window_samples {
                0.0
            } else {
                filter.sign_at((i - first) as f64 * grid.dt())
            }
        });
        values.push(overlap_integral(&w_g, &wigner(&h, &axis)?)?);
    }
    let worst = values.iter().map(|v| rel(*v, values[0])).fold(0.0, f64::max);
    Ok(CheckOutcome::new(
        "stationary shift invariance",
        worst,
        1e-3,
        format!("3 filter positions, overlap {:.4e}", values[0]),
    ))
}

/// The full suite in a fixed order. `variance_perturbation` is forwarded to
/// the stochastic check (0 for a normal run).
pub fn run_all(variance_perturbation: f64) -> Result<Vec<CheckOutcome>> {
    Ok(vec![
        moyal_identity(50, 7)?,
        frft_fourier_agreement()?,
        frft_additivity()?,
        wigner_projection()?,
        large_t_limit(0.0)?,
        large_t_limit(-0.05)?,
        large_t_limit(-0.125)?,
        stochastic_consistency(10_000, 11, variance_perturbation)?,
        stationary_shift_invariance()?,
    ])
}
