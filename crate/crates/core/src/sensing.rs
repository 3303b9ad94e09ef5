//! Measurement simulation: stimulus synthesis, accumulated phase, noisy
//! contrast readout, spectrum sweeps and stochastic-signal ensembles.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::filters::{filter_kernel, FilterSpec};
use crate::io::csv_document;
use crate::rng;
use crate::timefreq::{
    check_sampling, max_dt_for, overlap_integral, wigner, wigner_stochastic, FreqAxis, SampledWaveform, TimeGrid,
};

/// NV electron gyromagnetic ratio, rad/µs per gauss (2π × 2.8 MHz/G).
pub const NV_GYROMAGNETIC_RATIO: f64 = 2.0 * PI * 2.8;

/// Phase offsets of the quadrature filter pair.
pub const QUADRATURE_PHASES: [f64; 2] = [0.0, FRAC_PI_2];

/// Angular signal amplitude `A = γ_NV·B₁` (rad/µs) for a field in tesla.
pub fn amplitude_from_field(b_tesla: f64) -> f64 {
    let gauss = b_tesla * 1e4;
    NV_GYROMAGNETIC_RATIO * gauss
}

/// Linearly chirped stimulus `A·cos[2πt(−q₁/2·t + f₁) + ϑ]` on `[0, T]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignalSpec {
    /// Angular amplitude (rad/µs).
    pub amplitude: f64,
    /// Frequency at `t = 0` (MHz).
    pub f1: f64,
    /// Chirp rate (MHz²); negative values chirp upward.
    pub q1: f64,
    /// Duration (µs).
    pub duration: f64,
    /// Carrier phase offset (rad).
    #[serde(default)]
    pub phase: f64,
}

impl SignalSpec {
    pub fn new(amplitude: f64, f1: f64, q1: f64, duration: f64) -> Result<Self> {
        let spec = Self {
            amplitude,
            f1,
            q1,
            duration,
            phase: 0.0,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_phase(self, phase: f64) -> Self {
        Self { phase, ..self }
    }

    pub fn with_amplitude(self, amplitude: f64) -> Self {
        Self { amplitude, ..self }
    }

    pub fn with_f1(self, f1: f64) -> Self {
        Self { f1, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [self.amplitude, self.f1, self.q1, self.duration, self.phase];
        if fields.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("signal parameters must be finite".into()));
        }
        if self.duration <= 0.0 {
            return Err(Error::Domain(format!("signal duration must be positive, got {}", self.duration)));
        }
        if self.amplitude < 0.0 {
            return Err(Error::Domain(format!("signal amplitude must be non-negative, got {}", self.amplitude)));
        }
        Ok(())
    }

    /// Bound on the instantaneous frequency used by the sampling rule, `|f₁| + |q₁|·T`.
    pub fn max_frequency(&self) -> f64 {
        self.f1.abs() + self.q1.abs() * self.duration
    }

    /// Carrier phase without amplitude, `2πt(−q₁/2·t + f₁) + ϑ`.
    pub fn phase_at(&self, t: f64) -> f64 {
        2.0 * PI * t * (-0.5 * self.q1 * t + self.f1) + self.phase
    }

    pub fn value_at(&self, t: f64) -> f64 {
        if t < 0.0 || t > self.duration {
            0.0
        } else {
            self.amplitude * self.phase_at(t).cos()
        }
    }
}

/// Samples the stimulus on `grid`, zero outside `[0, T]`.
pub fn synth_signal(spec: &SignalSpec, grid: &TimeGrid) -> Result<SampledWaveform> {
    spec.validate()?;
    check_sampling(grid, spec.max_frequency(), "signal")?;
    let tol = 1e-9 * grid.dt();
    Ok(SampledWaveform::sample_real(*grid, |t| {
        let t = if t.abs() <= tol {
            0.0
        } else if (t - spec.duration).abs() <= tol {
            spec.duration
        } else {
            t
        };
        spec.value_at(t)
    }))
}

/// Accumulated qubit phase `Φ = ∫ g·h dt` (rad), trapezoid rule.
pub fn accumulated_phase(g: &SampledWaveform, h: &SampledWaveform) -> Result<f64> {
    if !g.grid().matches(h.grid()) {
        return Err(Error::Contract("signal and filter sampled on different grids".into()));
    }
    let product: Vec<f64> = g.values().iter().zip(h.values()).map(|(a, b)| a.re * b.re).collect();
    Ok(g.grid().integrate(&product))
}

/// Gaussian readout noise on the contrast.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub variance: f64,
    pub seed: u64,
}

impl NoiseModel {
    pub fn new(variance: f64, seed: u64) -> Result<Self> {
        if !(variance >= 0.0) || !variance.is_finite() {
            return Err(Error::Domain(format!("noise variance must be non-negative, got {variance}")));
        }
        Ok(Self { variance, seed })
    }

    pub fn noiseless() -> Self {
        Self { variance: 0.0, seed: 0 }
    }

    /// Same variance, seed derived for a separate purpose.
    pub fn derived(&self, label: &str) -> Self {
        Self {
            variance: self.variance,
            seed: rng::derive_seed(self.seed, label),
        }
    }

    /// Noise sample for filter entry `entry` of trial `trial`.
    pub fn sample(&self, entry: u64, trial: u64) -> f64 {
        if self.variance == 0.0 {
            0.0
        } else {
            self.variance.sqrt() * rng::standard_normal(self.seed, entry, trial)
        }
    }
}

/// Filters of one measurement design, ordered by `f_j` then `φ`.
pub fn design_filters(q: f64, duration: f64, f_grid: &[f64], phases: &[f64]) -> Result<Vec<FilterSpec>> {
    let mut out = Vec::with_capacity(f_grid.len() * phases.len());
    for &f in f_grid {
        for &phi in phases {
            out.push(FilterSpec::new(q, f, phi, duration)?);
        }
    }
    out.sort_by(|a, b| a.f_j().total_cmp(&b.f_j()).then(a.phi().total_cmp(&b.phi())));
    Ok(out)
}

/// Simulation grid on `[0, T]` shared by a filter set and signals with
/// `|f₁| ≤ max f_j` and chirp `q₁`.
///
/// The step satisfies the sampling rule for every filter and for such
/// signals, so forward models and measurements agree sample for sample.
pub fn design_grid(filters: &[FilterSpec], q1: f64, f1: f64) -> Result<TimeGrid> {
    let first = filters
        .first()
        .ok_or_else(|| Error::Degenerate("measurement needs at least one filter".into()))?;
    let duration = first.duration();
    let q = first.q();
    for f in filters {
        if (f.duration() - duration).abs() > 1e-12 * duration || f.q() != q {
            return Err(Error::Contract("all filters of a measurement must share (q, T)".into()));
        }
    }
    let filter_max = filters.iter().map(FilterSpec::max_frequency).fold(0.0, f64::max);
    let top = filters.iter().map(FilterSpec::f_j).fold(f1.abs(), f64::max);
    let f_max = filter_max.max(top + q1.abs() * duration);
    TimeGrid::with_max_step(0.0, duration, max_dt_for(f_max))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementEntry {
    pub filter: FilterSpec,
    pub contrast: f64,
}

/// Noisy contrast readings of one trial, with provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub entries: Vec<MeasurementEntry>,
    pub noise: NoiseModel,
    pub signal: SignalSpec,
    pub trial: u64,
    pub grid: TimeGrid,
}

impl MeasurementRecord {
    pub fn contrasts(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.contrast).collect()
    }

    pub fn filters(&self) -> Vec<FilterSpec> {
        self.entries.iter().map(|e| e.filter).collect()
    }

    /// Number of contrasts outside `[−1, 1]`.
    pub fn clamp_count(&self) -> usize {
        self.entries.iter().filter(|e| e.contrast.abs() > 1.0).count()
    }

    /// Columns `q, f_j, phi, contrast`.
    pub fn to_csv(&self) -> String {
        let rows = self
            .entries
            .iter()
            .map(|e| vec![e.filter.q(), e.filter.f_j(), e.filter.phi(), e.contrast]);
        csv_document(&["q_mhz2", "f_j_mhz", "phi_rad", "contrast"], rows)
    }

    pub fn metadata(&self) -> Value {
        json!({
            "signal": self.signal,
            "noise": { "variance": self.noise.variance },
            "seed": self.noise.seed,
            "trial": self.trial,
            "grid": { "t_start": self.grid.t_start(), "dt": self.grid.dt(), "count": self.grid.len() },
            "clamp_count": self.clamp_count(),
        })
    }
}

/// One noisy measurement with trial index 0.
pub fn measure(signal: &SignalSpec, filters: &[FilterSpec], noise: &NoiseModel) -> Result<MeasurementRecord> {
    measure_trial(signal, filters, noise, 0)
}

/// Contrast `cos Φ_k + ε_k` for every filter `k`.
///
/// The noise for filter `k` is addressed by `(seed, k, trial)`, where `k`
/// is the filter's position in `filters`. Entries come back sorted by
/// `f_j` then `φ`.
pub fn measure_trial(
    signal: &SignalSpec,
    filters: &[FilterSpec],
    noise: &NoiseModel,
    trial: u64,
) -> Result<MeasurementRecord> {
    signal.validate()?;
    let grid = design_grid(filters, signal.q1, signal.f1)?;
    if (signal.duration - grid.t_end()).abs() > 1e-9 * signal.duration {
        return Err(Error::Contract(format!(
            "signal duration {} us differs from filter duration {} us",
            signal.duration,
            grid.t_end()
        )));
    }
    let g = synth_signal(signal, &grid)?;
    let mut entries = filters
        .iter()
        .enumerate()
        .map(|(k, filter)| {
            let h = filter_kernel(filter, &grid)?;
            let phase = accumulated_phase(&g, &h)?;
            Ok(MeasurementEntry {
                filter: *filter,
                contrast: phase.cos() + noise.sample(k as u64, trial),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    entries.sort_by(|a, b| {
        a.filter
            .f_j()
            .total_cmp(&b.filter.f_j())
            .then(a.filter.phi().total_cmp(&b.filter.phi()))
    });
    Ok(MeasurementRecord {
        entries,
        noise: *noise,
        signal: *signal,
        trial,
        grid,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumPoint {
    pub f_j: f64,
    pub magnitude: f64,
}

/// Phase-magnitude spectrum over a frequency grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSweep {
    pub q: f64,
    pub points: Vec<SpectrumPoint>,
    /// Contrasts that fell outside `[−1, 1]` and were clamped.
    pub clamp_count: usize,
}

impl SpectrumSweep {
    pub fn magnitudes(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.magnitude).collect()
    }

    pub fn peak(&self) -> SpectrumPoint {
        self.points
            .iter()
            .copied()
            .max_by(|a, b| a.magnitude.total_cmp(&b.magnitude))
            .unwrap_or(SpectrumPoint { f_j: 0.0, magnitude: 0.0 })
    }

    pub fn to_csv(&self) -> String {
        csv_document(&["f_j_mhz", "magnitude_rad"], self.points.iter().map(|p| vec![p.f_j, p.magnitude]))
    }
}

/// Phase magnitude per `f_j` from a record: `√(Σ_φ arccos(c_φ)²)` with
/// contrasts clamped to `[−1, 1]`.
pub fn spectrum_from_record(record: &MeasurementRecord) -> SpectrumSweep {
    let mut points: Vec<SpectrumPoint> = Vec::new();
    let mut clamp_count = 0;
    for entry in &record.entries {
        if entry.contrast.abs() > 1.0 {
            clamp_count += 1;
        }
        let phase = entry.contrast.clamp(-1.0, 1.0).acos();
        match points.last_mut() {
            Some(p) if p.f_j == entry.filter.f_j() => p.magnitude = p.magnitude.hypot(phase),
            _ => points.push(SpectrumPoint {
                f_j: entry.filter.f_j(),
                magnitude: phase,
            }),
        }
    }
    let q = record.entries.first().map(|e| e.filter.q()).unwrap_or(0.0);
    SpectrumSweep { q, points, clamp_count }
}

/// Sweeps quadrature filter pairs with chirp `q` over `f_grid`.
pub fn spectrum_sweep(
    signal: &SignalSpec,
    q: f64,
    f_grid: &[f64],
    noise: &NoiseModel,
    trial: u64,
) -> Result<SpectrumSweep> {
    let filters = design_filters(q, signal.duration, f_grid, &QUADRATURE_PHASES)?;
    let record = measure_trial(signal, &filters, noise, trial)?;
    Ok(spectrum_from_record(&record))
}

/// Monte-Carlo estimate of `⟨g(t + τ/2)·g(t − τ/2)⟩` on the sample-pair
/// lattice of [`wigner`]: `t ± τ/2` both on grid samples.
#[derive(Debug, Clone)]
pub struct EnsembleAutocorr {
    grid: TimeGrid,
    /// Row `c = a + b`, column `j = a − b ≥ 0`.
    sums: Vec<f64>,
    draws: usize,
}

impl EnsembleAutocorr {
    pub fn new(grid: TimeGrid) -> Self {
        let n = grid.len();
        Self {
            grid,
            sums: vec![0.0; (2 * n - 1) * n],
            draws: 0,
        }
    }

    pub fn add(&mut self, draw: &SampledWaveform) -> Result<()> {
        if !draw.grid().matches(&self.grid) {
            return Err(Error::Contract("ensemble draw on a different grid".into()));
        }
        if !draw.is_real() {
            return Err(Error::Contract("ensemble draws must be real".into()));
        }
        let n = self.grid.len();
        let v = draw.real_parts();
        for a in 0..n {
            for b in 0..=a {
                self.sums[(a + b) * n + (a - b)] += v[a] * v[b];
            }
        }
        self.draws += 1;
        Ok(())
    }

    pub fn draws(&self) -> usize {
        self.draws
    }

    /// Estimate at the lattice point nearest to `(t, τ)`; zero off the
    /// lattice or outside the record.
    pub fn value(&self, t: f64, tau: f64) -> f64 {
        let n = self.grid.len() as i64;
        let c = (2.0 * (t - self.grid.t_start()) / self.grid.dt()).round() as i64;
        let j = (tau.abs() / self.grid.dt()).round() as i64;
        if self.draws == 0 || (c + j) % 2 != 0 || c - j < 0 || c + j > 2 * (n - 1) {
            return 0.0;
        }
        self.sums[(c * n + j) as usize] / self.draws as f64
    }
}

/// Mean-square accumulated phase of a stochastic stimulus, two ways.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseVarianceEstimate {
    /// Sample mean of `(∫ g·h dt)²` over the draws.
    pub mc_estimate: f64,
    /// `∬ W_g·W_h dt df` with `W_g` from the Monte-Carlo autocorrelation.
    pub wigner_prediction: f64,
}

/// Compares the direct Monte-Carlo `⟨Φ²⟩` with the Wigner-overlap prediction.
///
/// `ensemble(i)` returns draw `i`. Draws `0..n_trials` feed the direct
/// estimate and draws `n_trials..2·n_trials` the autocorrelation behind the
/// prediction, so the two sides are statistically independent.
pub fn stochastic_phase_variance(
    ensemble: impl Fn(u64) -> Result<SampledWaveform>,
    h: &SampledWaveform,
    n_trials: usize,
) -> Result<PhaseVarianceEstimate> {
    if n_trials < 2 {
        return Err(Error::Degenerate(format!("need at least 2 ensemble draws, got {n_trials}")));
    }
    let grid = *h.grid();
    let mut mc = 0.0;
    for i in 0..n_trials as u64 {
        let g = ensemble(i)?;
        mc += accumulated_phase(&g, h)?.powi(2);
    }
    let mc_estimate = mc / n_trials as f64;

    let mut autocorr = EnsembleAutocorr::new(grid);
    for i in n_trials as u64..2 * n_trials as u64 {
        autocorr.add(&ensemble(i)?)?;
    }
    let axis = FreqAxis::full_band(grid.dt(), 2 * grid.len())?;
    let w_g = wigner_stochastic(|t, tau| autocorr.value(t, tau), &grid, &axis)?;
    let w_h = wigner(h, &axis)?;
    Ok(PhaseVarianceEstimate {
        mc_estimate,
        wigner_prediction: overlap_integral(&w_g, &w_h)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filters::make_filter_spec;

    const DEFAULT_T: f64 = 9.6;

    #[test]
    fn field_to_amplitude_conversion() {
        // 1.38 µT = 13.8 mG; 2π × 2.8 MHz/G × 0.0138 G = 2π × 0.03864 rad/µs.
        let a = amplitude_from_field(1.38e-6);
        assert!((a - 2.0 * PI * 0.03864).abs() < 1e-12);
        assert!((a - 0.2428).abs() < 1e-4);
    }

    #[test]
    fn zero_amplitude_is_zero_waveform() {
        let s = SignalSpec::new(0.0, 1.2, 0.0, DEFAULT_T).unwrap();
        let grid = TimeGrid::with_max_step(0.0, DEFAULT_T, max_dt_for(1.2)).unwrap();
        let g = synth_signal(&s, &grid).unwrap();
        assert!(g.values().iter().all(|v| v.re == 0.0));
    }

    #[test]
    fn unchirped_signal_periodic_and_starts_at_amplitude() {
        let s = SignalSpec::new(0.2428, 1.2, 0.0, DEFAULT_T).unwrap();
        assert_eq!(s.value_at(0.0), 0.2428);
        let period = 1.0 / 1.2;
        for t in [0.3, 1.7, 4.2] {
            assert!((s.value_at(t) - s.value_at(t + period)).abs() < 1e-12);
        }
        assert_eq!(s.value_at(-0.1), 0.0);
        assert_eq!(s.value_at(9.7), 0.0);
    }

    #[test]
    fn undersampled_signal_rejected() {
        let s = SignalSpec::new(1.0, 1.2, -0.125, DEFAULT_T).unwrap();
        let grid = TimeGrid::with_max_step(0.0, DEFAULT_T, max_dt_for(1.2)).unwrap();
        assert!(matches!(synth_signal(&s, &grid), Err(Error::Resolution { .. })));
    }

    #[test]
    fn invalid_signal_rejected() {
        assert!(SignalSpec::new(-1.0, 1.2, 0.0, DEFAULT_T).is_err());
        assert!(SignalSpec::new(1.0, 1.2, 0.0, 0.0).is_err());
    }

    #[test]
    fn phase_with_zero_filter_is_zero() {
        let grid = TimeGrid::with_max_step(0.0, DEFAULT_T, max_dt_for(1.2)).unwrap();
        let g = synth_signal(&SignalSpec::new(1.0, 1.2, 0.0, DEFAULT_T).unwrap(), &grid).unwrap();
        assert_eq!(accumulated_phase(&g, &SampledWaveform::zeros(grid)).unwrap(), 0.0);
    }

    #[test]
    fn phase_grid_mismatch_rejected() {
        let a = TimeGrid::spanning(0.0, 1.0, 100).unwrap();
        let b = TimeGrid::spanning(0.0, 1.0, 101).unwrap();
        let r = accumulated_phase(&SampledWaveform::zeros(a), &SampledWaveform::zeros(b));
        assert!(matches!(r, Err(Error::Contract(_))));
    }

    #[test]
    fn noiseless_zero_signal_gives_unit_contrast() {
        let s = SignalSpec::new(0.0, 1.2, 0.0, DEFAULT_T).unwrap();
        let filters = design_filters(0.0, DEFAULT_T, &[1.0, 1.2, 1.4], &QUADRATURE_PHASES).unwrap();
        let r = measure(&s, &filters, &NoiseModel::noiseless()).unwrap();
        assert!(r.contrasts().iter().all(|&c| c == 1.0));
    }

    #[test]
    fn record_sorted_by_frequency_then_phase() {
        let s = SignalSpec::new(0.2, 1.2, 0.0, DEFAULT_T).unwrap();
        let filters = vec![
            make_filter_spec(0.0, 1.4, FRAC_PI_2, DEFAULT_T).unwrap(),
            make_filter_spec(0.0, 1.2, 0.0, DEFAULT_T).unwrap(),
            make_filter_spec(0.0, 1.4, 0.0, DEFAULT_T).unwrap(),
        ];
        let r = measure(&s, &filters, &NoiseModel::noiseless()).unwrap();
        let keys: Vec<(f64, f64)> = r.entries.iter().map(|e| (e.filter.f_j(), e.filter.phi())).collect();
        assert_eq!(keys, vec![(1.2, 0.0), (1.4, 0.0), (1.4, FRAC_PI_2)]);
    }

    #[test]
    fn mixed_chirps_rejected() {
        let s = SignalSpec::new(0.2, 1.2, 0.0, DEFAULT_T).unwrap();
        let filters = vec![
            make_filter_spec(0.0, 1.2, 0.0, DEFAULT_T).unwrap(),
            make_filter_spec(-0.1, 1.2, 0.0, DEFAULT_T).unwrap(),
        ];
        assert!(matches!(measure(&s, &filters, &NoiseModel::noiseless()), Err(Error::Contract(_))));
    }

    #[test]
    fn fixed_seed_reproduces_record() {
        let s = SignalSpec::new(0.2428, 1.2, -0.05, DEFAULT_T).unwrap();
        let filters = design_filters(-0.05, DEFAULT_T, &[1.1, 1.2, 1.3], &QUADRATURE_PHASES).unwrap();
        let noise = NoiseModel::new(0.1493, 99).unwrap();
        let a = measure_trial(&s, &filters, &noise, 3).unwrap();
        let b = measure_trial(&s, &filters, &noise, 3).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        let c = measure_trial(&s, &filters, &noise, 4).unwrap();
        assert_ne!(a.to_csv(), c.to_csv());
    }

    #[test]
    fn zero_amplitude_sweep_is_flat_zero() {
        let s = SignalSpec::new(0.0, 1.2, -0.125, DEFAULT_T).unwrap();
        let f: Vec<f64> = (0..10).map(|k| 1.0 + 0.1 * k as f64).collect();
        let sweep = spectrum_sweep(&s, -0.125, &f, &NoiseModel::noiseless(), 0).unwrap();
        assert!(sweep.magnitudes().iter().all(|&m| m == 0.0));
        assert_eq!(sweep.clamp_count, 0);
    }

    #[test]
    fn noisy_sweep_counts_clamps() {
        let s = SignalSpec::new(0.0, 1.2, 0.0, DEFAULT_T).unwrap();
        let f: Vec<f64> = (0..20).map(|k| 1.0 + 0.05 * k as f64).collect();
        let sweep = spectrum_sweep(&s, 0.0, &f, &NoiseModel::new(0.1493, 5).unwrap(), 0).unwrap();
        // Contrast 1 + ε exceeds 1 for roughly half the draws.
        assert!(sweep.clamp_count > 5 && sweep.clamp_count < 35);
    }

    #[test]
    fn empty_ensemble_rejected() {
        let grid = TimeGrid::spanning(0.0, 1.0, 16).unwrap();
        let h = SampledWaveform::zeros(grid);
        let r = stochastic_phase_variance(|_| Ok(SampledWaveform::zeros(grid)), &h, 1);
        assert!(matches!(r, Err(Error::Degenerate(_))));
    }

    #[test]
    fn zero_ensemble_gives_zero_variance() {
        let grid = TimeGrid::spanning(0.0, 2.0, 64).unwrap();
        let h = SampledWaveform::sample_real(grid, |t| if t < 1.0 { 1.0 } else { -1.0 });
        let est = stochastic_phase_variance(|_| Ok(SampledWaveform::zeros(grid)), &h, 10).unwrap();
        assert_eq!(est.mc_estimate, 0.0);
        assert_eq!(est.wigner_prediction, 0.0);
    }
}
