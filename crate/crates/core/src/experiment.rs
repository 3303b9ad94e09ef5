//! Configured parameter sweeps: averaged spectra for chirp-matched and
//! unchirped filter designs, and the estimation/detection statistics.
//!
//! Sweep points are independent and run on the current rayon pool; results
//! are merged by index, so outputs do not depend on the thread count.

use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::inference::{
    adaptive_crb, bayes_error, bayesian_crb, fit_multistart, map_test, mse_bootstrap_errors, BoundReport,
    FitOptions, ForwardModel, Hypothesis,
};
use crate::io::csv_document;
use crate::sensing::{
    amplitude_from_field, design_filters, measure_trial, spectrum_from_record, NoiseModel, SignalSpec,
    QUADRATURE_PHASES,
};

/// Every default used by the sweeps, in one place.
pub mod defaults {
    pub use crate::inference::bounds::{AMPLITUDE_STEP as FD_STEP_AMPLITUDE, F1_STEP as FD_STEP_F1, PRIOR_NODES};

    /// Filter frequency grid: 0.9–2.6 MHz in 0.02 MHz steps.
    pub const F_GRID: (f64, f64, usize) = (0.9, 2.6, 86);
    /// Signal chirp sweep: 12 values over [−0.125, 0] MHz².
    pub const Q1_SWEEP: (f64, f64, usize) = (-0.125, 0.0, 12);
    /// Prior variances for the Bayesian CRB: 40 log-spaced values (MHz²).
    pub const PRIOR_GRID: (f64, f64, usize) = (1e-8, 1e2, 40);
    /// Record duration (µs).
    pub const DURATION: f64 = 9.6;
    /// Ground-truth signal frequencies (MHz); the two hypotheses of the test.
    pub const F1: [f64; 2] = [1.2, 1.3];
    /// Stimulus field amplitude (T).
    pub const FIELD_TESLA: f64 = 1.38e-6;
    /// Contrast noise variance.
    pub const NOISE_VARIANCE: f64 = 0.1493;
    pub const MASTER_SEED: u64 = 20_240_611;
    /// Spectra averaged per (q₁, mode, f₁).
    pub const SPECTRUM_TRIALS: usize = 10;
    /// Records per ground-truth `f₁` in the statistics sweep.
    pub const STATS_TRIALS_PER_F1: usize = 10;
    pub const BOOTSTRAP_RESAMPLES: usize = 1000;
    pub const ENERGY_FRACTION: f64 = 0.95;
    /// Filter frequencies in the adaptive design (same count as the grid).
    pub const ADAPTIVE_SAMPLES: usize = F_GRID.2;
    /// Prior probabilities of the two hypotheses.
    pub const HYPOTHESIS_PRIORS: (f64, f64) = (0.5, 0.5);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Units {
    #[default]
    #[serde(rename = "us-MHz")]
    MicrosecondMegahertz,
}

/// Filter chirp choice relative to the signal chirp `q₁`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FilterMode {
    /// `q = q₁`.
    Matched,
    /// `q = 0`.
    Unchirped,
}

impl FilterMode {
    pub fn chirp(self, q1: f64) -> f64 {
        match self {
            FilterMode::Matched => q1,
            FilterMode::Unchirped => 0.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FilterMode::Matched => "matched",
            FilterMode::Unchirped => "unchirped",
        }
    }
}

/// `count` evenly spaced values over `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearSweep {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl LinearSweep {
    fn from_tuple(t: (f64, f64, usize)) -> Self {
        Self {
            min: t.0,
            max: t.1,
            count: t.2,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.min + step * i as f64).collect()
    }

    fn validate(&self, what: &str) -> Result<()> {
        let ok = self.count >= 1
            && self.min.is_finite()
            && self.max.is_finite()
            && (self.count == 1 || self.max > self.min);
        if !ok {
            return Err(Error::Config(format!(
                "{what} needs finite min < max and count >= 1 (count 1 uses min), got {self:?}"
            )));
        }
        Ok(())
    }
}

/// `count` log-spaced values over `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LogSweep {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl LogSweep {
    pub fn values(&self) -> Vec<f64> {
        crate::inference::bounds::log_grid(self.min, self.max, self.count)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SignalConfig {
    /// Angular amplitude `A` (rad/µs).
    pub amplitude: f64,
    /// Ground-truth frequencies (MHz).
    pub f1: Vec<f64>,
    /// Duration `T` (µs), shared by signal and filters.
    pub duration: f64,
}

impl Default for SignalConfig {
    fn default() -> Self {
        Self {
            amplitude: amplitude_from_field(defaults::FIELD_TESLA),
            f1: defaults::F1.to_vec(),
            duration: defaults::DURATION,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NoiseConfig {
    pub variance: f64,
    /// Master seed; every stream in a run is derived from it.
    pub seed: u64,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        Self {
            variance: defaults::NOISE_VARIANCE,
            seed: defaults::MASTER_SEED,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SpectrumOptions {
    pub trials: usize,
    /// Subtract the averaged spectrum of an `A = 0` reference run.
    pub background_subtraction: bool,
    pub modes: Vec<FilterMode>,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        Self {
            trials: defaults::SPECTRUM_TRIALS,
            background_subtraction: true,
            modes: vec![FilterMode::Matched, FilterMode::Unchirped],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StatsOptions {
    pub trials_per_f1: usize,
    pub bootstrap_resamples: usize,
    pub prior_grid: LogSweep,
    pub energy_fraction: f64,
    pub adaptive_samples: usize,
    /// Prior probabilities of H0 (`f1[0]`) and H1 (`f1[1]`).
    pub priors: (f64, f64),
}

impl Default for StatsOptions {
    fn default() -> Self {
        let (min, max, count) = defaults::PRIOR_GRID;
        Self {
            trials_per_f1: defaults::STATS_TRIALS_PER_F1,
            bootstrap_resamples: defaults::BOOTSTRAP_RESAMPLES,
            prior_grid: LogSweep { min, max, count },
            energy_fraction: defaults::ENERGY_FRACTION,
            adaptive_samples: defaults::ADAPTIVE_SAMPLES,
            priors: defaults::HYPOTHESIS_PRIORS,
        }
    }
}

/// One JSON document describing a run; absent keys take the defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub units: Units,
    pub signal: SignalConfig,
    /// Signal chirp sweep `q₁` (MHz²).
    pub q1: LinearSweep,
    /// Filter frequencies `f_j` (MHz).
    pub f_grid: LinearSweep,
    pub noise: NoiseConfig,
    pub spectrum: SpectrumOptions,
    pub stats: StatsOptions,
    pub output_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            units: Units::default(),
            signal: SignalConfig::default(),
            q1: LinearSweep::from_tuple(defaults::Q1_SWEEP),
            f_grid: LinearSweep::from_tuple(defaults::F_GRID),
            noise: NoiseConfig::default(),
            spectrum: SpectrumOptions::default(),
            stats: StatsOptions::default(),
            output_dir: PathBuf::from("out"),
        }
    }
}

impl ExperimentConfig {
    /// Parses a config document; unknown keys are rejected.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Canonical JSON (fixed key order) used for hashing.
    pub fn canonical_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    /// Checks every derived signal and filter before anything runs.
    pub fn validate(&self) -> Result<()> {
        self.q1.validate("q1 sweep")?;
        self.f_grid.validate("f_grid")?;
        let s = &self.signal;
        if s.f1.is_empty() {
            return Err(Error::Config("signal.f1 needs at least one frequency".into()));
        }
        let f_grid = self.f_grid.values();
        let f_hi = f_grid[f_grid.len() - 1];
        for &f1 in &s.f1 {
            if !(f1 > 0.0 && f1 <= f_hi) {
                return Err(Error::Config(format!(
                    "signal f1 = {f1} MHz must be positive and inside the filter grid (max {f_hi} MHz)"
                )));
            }
        }
        NoiseModel::new(self.noise.variance, self.noise.seed)?;
        if self.spectrum.trials == 0 || self.spectrum.modes.is_empty() {
            return Err(Error::Config("spectrum needs at least one trial and one filter mode".into()));
        }
        let st = &self.stats;
        if st.trials_per_f1 == 0 || st.bootstrap_resamples < 2 {
            return Err(Error::Config("stats needs trials_per_f1 >= 1 and bootstrap_resamples >= 2".into()));
        }
        if !(st.energy_fraction > 0.0 && st.energy_fraction <= 1.0) || st.adaptive_samples < 2 {
            return Err(Error::Config("stats needs energy_fraction in (0, 1] and adaptive_samples >= 2".into()));
        }
        if !(st.prior_grid.min > 0.0 && st.prior_grid.max >= st.prior_grid.min && st.prior_grid.count >= 1) {
            return Err(Error::Config(format!("stats.prior_grid must be positive and ordered, got {:?}", st.prior_grid)));
        }
        if !(st.priors.0 > 0.0 && st.priors.1 > 0.0) {
            return Err(Error::Config(format!("stats.priors must be positive, got {:?}", st.priors)));
        }
        for q1 in self.q1.values() {
            for f1 in &s.f1 {
                SignalSpec::new(s.amplitude, *f1, q1, s.duration)?;
            }
            for mode in [FilterMode::Matched, FilterMode::Unchirped] {
                design_filters(mode.chirp(q1), s.duration, &f_grid, &QUADRATURE_PHASES)?;
            }
        }
        Ok(())
    }

    fn noise_model(&self) -> NoiseModel {
        NoiseModel {
            variance: self.noise.variance,
            seed: self.noise.seed,
        }
    }
}

/// Averaged magnitude spectrum for one `(q₁, mode, f₁)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSeries {
    pub q1: f64,
    pub mode: FilterMode,
    pub q: f64,
    pub f1: f64,
    pub f_grid: Vec<f64>,
    /// Trial-averaged magnitudes (rad).
    pub raw: Vec<f64>,
    /// Trial-averaged magnitudes of the `A = 0` reference run.
    pub background: Vec<f64>,
    pub clamp_count: usize,
}

impl SpectrumSeries {
    /// Background-corrected magnitudes.
    pub fn corrected(&self) -> Vec<f64> {
        self.raw.iter().zip(&self.background).map(|(r, b)| r - b).collect()
    }

    /// `(f_j, magnitude)` of the largest corrected magnitude.
    pub fn peak(&self) -> (f64, f64) {
        let c = self.corrected();
        let (i, m) = c
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |b, (i, &v)| if v > b.1 { (i, v) } else { b });
        (self.f_grid[i], m)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRun {
    pub series: Vec<SpectrumSeries>,
}

impl SpectrumRun {
    /// Long-format CSV, one row per `(q₁, mode, f₁, f_j)`.
    pub fn to_csv(&self) -> String {
        let rows = self.series.iter().flat_map(|s| {
            let corrected = s.corrected();
            (0..s.f_grid.len()).map(move |j| vec![s.q1, s.q, s.f1, s.f_grid[j], corrected[j], s.raw[j], s.background[j]])
        });
        csv_document(
            &["q1_mhz2", "q_mhz2", "f1_mhz", "f_j_mhz", "magnitude_rad", "raw_rad", "background_rad"],
            rows,
        )
    }

    /// Peak per series, with the ratio to the same mode and `f₁` at the
    /// `q₁` closest to zero.
    pub fn peaks(&self) -> Vec<PeakRow> {
        self.series
            .iter()
            .map(|s| {
                let reference = self
                    .series
                    .iter()
                    .filter(|r| r.mode == s.mode && r.f1 == s.f1)
                    .min_by(|a, b| a.q1.abs().total_cmp(&b.q1.abs()))
                    .expect("series is its own candidate");
                let (f_peak, magnitude) = s.peak();
                PeakRow {
                    q1: s.q1,
                    mode: s.mode,
                    q: s.q,
                    f1: s.f1,
                    f_peak,
                    magnitude,
                    relative: magnitude / reference.peak().1,
                }
            })
            .collect()
    }

    pub fn peaks_csv(&self) -> String {
        let rows = self
            .peaks()
            .into_iter()
            .map(|p| vec![p.q1, p.q, p.f1, p.f_peak, p.magnitude, p.relative]);
        csv_document(
            &["q1_mhz2", "q_mhz2", "f1_mhz", "peak_f_j_mhz", "peak_magnitude_rad", "relative_to_q1_zero"],
            rows,
        )
    }

    pub fn clamp_count(&self) -> usize {
        self.series.iter().map(|s| s.clamp_count).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeakRow {
    pub q1: f64,
    pub mode: FilterMode,
    pub q: f64,
    pub f1: f64,
    pub f_peak: f64,
    pub magnitude: f64,
    pub relative: f64,
}

/// Averaged spectra for every `q₁ × mode × f₁` of the config.
pub fn run_spectra(cfg: &ExperimentConfig) -> Result<SpectrumRun> {
    cfg.validate()?;
    let q1s = cfg.q1.values();
    let f_grid = cfg.f_grid.values();
    let noise = cfg.noise_model();
    let mut jobs = Vec::new();
    for (i, &q1) in q1s.iter().enumerate() {
        for &mode in &cfg.spectrum.modes {
            for (k, &f1) in cfg.signal.f1.iter().enumerate() {
                jobs.push((i, q1, mode, k, f1));
            }
        }
    }
    let series = jobs
        .par_iter()
        .map(|&(i, q1, mode, k, f1)| {
            let q = mode.chirp(q1);
            let filters = design_filters(q, cfg.signal.duration, &f_grid, &QUADRATURE_PHASES)?;
            let signal = SignalSpec::new(cfg.signal.amplitude, f1, q1, cfg.signal.duration)?;
            let label = format!("spectrum/{i}/{}/{k}", mode.name());
            let (raw, clamps) = averaged_spectrum(&signal, &filters, &noise.derived(&label), cfg.spectrum.trials)?;
            let background = if cfg.spectrum.background_subtraction {
                let reference = signal.with_amplitude(0.0);
                let bg_noise = noise.derived(&format!("{label}/background"));
                averaged_spectrum(&reference, &filters, &bg_noise, cfg.spectrum.trials)?.0
            } else {
                vec![0.0; f_grid.len()]
            };
            Ok(SpectrumSeries {
                q1,
                mode,
                q,
                f1,
                f_grid: f_grid.clone(),
                raw,
                background,
                clamp_count: clamps,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumRun { series })
}

fn averaged_spectrum(
    signal: &SignalSpec,
    filters: &[crate::filters::FilterSpec],
    noise: &NoiseModel,
    trials: usize,
) -> Result<(Vec<f64>, usize)> {
    let mut sum: Vec<f64> = Vec::new();
    let mut clamps = 0;
    for trial in 0..trials as u64 {
        let sweep = spectrum_from_record(&measure_trial(signal, filters, noise, trial)?);
        clamps += sweep.clamp_count;
        if sum.is_empty() {
            sum = vec![0.0; sweep.points.len()];
        }
        for (s, p) in sum.iter_mut().zip(&sweep.points) {
            *s += p.magnitude;
        }
    }
    Ok((sum.into_iter().map(|s| s / trials as f64).collect(), clamps))
}

/// Estimation and detection statistics for one `(q₁, mode)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeStats {
    pub mode: FilterMode,
    pub q: f64,
    /// Direct mean of the squared `f₁` errors over all records (MHz²).
    pub mse: f64,
    pub mse_bootstrap_mean: f64,
    pub mse_bootstrap_std: f64,
    /// `f̂₁ − f₁` per record, H0 records first.
    pub errors: Vec<f64>,
    pub converged: usize,
    pub map_errors: usize,
    pub map_error_rate: f64,
    pub bayes_error: f64,
    /// `None` when the noise variance is zero (the bounds vanish).
    pub bcrb: Option<BoundReport>,
    pub adaptive_crb: Option<BoundReport>,
    pub clamp_count: usize,
}

impl ModeStats {
    fn bcrb_value(&self) -> f64 {
        self.bcrb.map_or(0.0, |b| b.value)
    }

    fn adaptive_value(&self) -> f64 {
        self.adaptive_crb.map_or(0.0, |b| b.value)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsRow {
    pub q1: f64,
    pub matched: ModeStats,
    pub unchirped: ModeStats,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsRun {
    pub rows: Vec<StatsRow>,
    /// `f₁` at which the bounds are evaluated (H0).
    pub bound_f1: f64,
}

impl StatsRun {
    pub fn to_csv(&self) -> String {
        let rows = self.rows.iter().map(|r| {
            let (m, u) = (&r.matched, &r.unchirped);
            vec![
                r.q1,
                m.mse,
                m.mse_bootstrap_mean,
                m.mse_bootstrap_std,
                u.mse,
                u.mse_bootstrap_mean,
                u.mse_bootstrap_std,
                m.bcrb_value(),
                u.bcrb_value(),
                m.adaptive_value(),
                u.adaptive_value(),
                m.map_error_rate,
                u.map_error_rate,
                m.bayes_error,
                u.bayes_error,
            ]
        });
        csv_document(
            &[
                "q1_mhz2",
                "mse_matched",
                "mse_boot_matched",
                "mse_std_matched",
                "mse_unchirped",
                "mse_boot_unchirped",
                "mse_std_unchirped",
                "bcrb_matched",
                "bcrb_unchirped",
                "crb_adaptive_matched",
                "crb_adaptive_unchirped",
                "map_error_rate_matched",
                "map_error_rate_unchirped",
                "bayes_error_matched",
                "bayes_error_unchirped",
            ],
            rows,
        )
    }

    pub fn report(&self, cfg: &ExperimentConfig) -> Value {
        json!({
            "bound_f1_mhz": self.bound_f1,
            "fd_step_f1_mhz": defaults::FD_STEP_F1,
            "fd_step_amplitude_rel": defaults::FD_STEP_AMPLITUDE,
            "gauss_hermite_nodes": defaults::PRIOR_NODES,
            "prior_grid_mhz2": cfg.stats.prior_grid.values(),
            "rows": self.rows,
        })
    }
}

/// Least-squares, bootstrap, bounds and MAP statistics for every `q₁`.
///
/// Each `(q₁, mode)` draws `trials_per_f1` records under each of the two
/// ground truths `f1[0]` (H0) and `f1[1]` (H1).
pub fn run_stats(cfg: &ExperimentConfig) -> Result<StatsRun> {
    cfg.validate()?;
    if cfg.signal.f1.len() != 2 {
        return Err(Error::Config(format!(
            "stats needs exactly two f1 values (the hypotheses), got {}",
            cfg.signal.f1.len()
        )));
    }
    let q1s = cfg.q1.values();
    let jobs: Vec<(usize, f64, FilterMode)> = q1s
        .iter()
        .enumerate()
        .flat_map(|(i, &q1)| [FilterMode::Matched, FilterMode::Unchirped].map(|m| (i, q1, m)))
        .collect();
    let mut results = jobs
        .par_iter()
        .map(|&(i, q1, mode)| mode_stats(cfg, i, q1, mode))
        .collect::<Result<Vec<_>>>()?
        .into_iter();
    let mut rows = Vec::with_capacity(q1s.len());
    for &q1 in &q1s {
        let matched = results.next().expect("two results per q1");
        let unchirped = results.next().expect("two results per q1");
        rows.push(StatsRow { q1, matched, unchirped });
    }
    Ok(StatsRun {
        rows,
        bound_f1: cfg.signal.f1[0],
    })
}

fn mode_stats(cfg: &ExperimentConfig, index: usize, q1: f64, mode: FilterMode) -> Result<ModeStats> {
    let s = &cfg.signal;
    let st = &cfg.stats;
    let q = mode.chirp(q1);
    let model = ForwardModel::new(q, q1, s.duration, &cfg.f_grid.values(), &QUADRATURE_PHASES)?;
    let label = format!("stats/{index}/{}", mode.name());
    let noise = cfg.noise_model().derived(&label);
    let h0 = Hypothesis::from_model(&model, s.amplitude, s.f1[0])?;
    let h1 = Hypothesis::from_model(&model, s.amplitude, s.f1[1])?;

    let mut errors = Vec::new();
    let mut converged = 0;
    let mut map_errors = 0;
    let mut clamp_count = 0;
    for (k, &f1) in s.f1.iter().enumerate() {
        let signal = SignalSpec::new(s.amplitude, f1, q1, s.duration)?;
        for j in 0..st.trials_per_f1 {
            let trial = (k * st.trials_per_f1 + j) as u64;
            let record = measure_trial(&signal, model.filters(), &noise, trial)?;
            clamp_count += record.clamp_count();
            let fit = fit_multistart(&record, &model, FitOptions::default())?;
            errors.push(fit.f1 - f1);
            converged += usize::from(fit.converged);
            if !map_test(&record, &h0, &h1, st.priors)?.correct {
                map_errors += 1;
            }
        }
    }
    let n = errors.len();
    let mse = errors.iter().map(|e| e * e).sum::<f64>() / n as f64;
    let boot = mse_bootstrap_errors(&errors, st.bootstrap_resamples, noise.derived("bootstrap").seed)?;
    let variance = cfg.noise.variance;
    let truth = (s.amplitude, s.f1[0]);
    let (bcrb, adaptive) = if variance > 0.0 {
        (
            Some(bayesian_crb(&model, truth, variance, &st.prior_grid.values())?),
            Some(adaptive_crb(&model, truth, variance, st.adaptive_samples, st.energy_fraction)?),
        )
    } else {
        (None, None)
    };
    Ok(ModeStats {
        mode,
        q,
        mse,
        mse_bootstrap_mean: boot.mse_mean,
        mse_bootstrap_std: boot.mse_std,
        errors,
        converged,
        map_errors,
        map_error_rate: map_errors as f64 / n as f64,
        bayes_error: bayes_error(&h0, &h1, variance, st.priors)?,
        bcrb,
        adaptive_crb: adaptive,
        clamp_count,
    })
}
