//! Sampled waveforms on uniform time grids, the fractional Fourier
//! transform, Wigner distributions and the overlap integrals built on them.
//!
//! Units are fixed crate-wide: time in microseconds, frequency in MHz and
//! chirp rates in MHz² (MHz/µs). A chirp rate `q` corresponds to the FRFT
//! order `α = arccot(q)` in these units.

mod energy;
mod export;
mod frft;
mod smooth;
mod wigner;

pub use energy::energy_interval;
pub use export::{spectrum_csv, spectrum_sidecar, wigner_csv, wigner_sidecar};
pub use frft::{fourier, frft, radon_projection};
pub use smooth::smooth;
pub use wigner::{overlap_integral, wigner, wigner_stochastic};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimum number of samples per period of the fastest instantaneous
/// frequency on a grid. The sign discontinuities of bang-bang kernels need
/// dense sampling for the quadratures to hold at the 10⁻³ level.
pub const OVERSAMPLING: f64 = 64.0;

/// Largest time step (µs) allowed for a waveform whose instantaneous
/// frequency reaches `f_max` MHz.
pub fn max_dt_for(f_max: f64) -> f64 {
    1.0 / (OVERSAMPLING * f_max.abs())
}

/// Checks `grid` against the sampling rule for instantaneous frequency `f_max`.
pub fn check_sampling(grid: &TimeGrid, f_max: f64, what: &str) -> Result<()> {
    if f_max <= 0.0 {
        return Ok(());
    }
    let required = max_dt_for(f_max);
    if grid.dt() > required * (1.0 + 1e-9) {
        return Err(Error::Resolution {
            what: what.to_string(),
            required_dt: required,
            actual_dt: grid.dt(),
        });
    }
    Ok(())
}

/// Uniform time grid `t_i = t_start + i·dt`, `i = 0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    t_start: f64,
    dt: f64,
    n: usize,
}

impl TimeGrid {
    pub fn new(t_start: f64, dt: f64, n: usize) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::Domain(format!("time step must be positive, got {dt}")));
        }
        if n < 2 {
            return Err(Error::Domain(format!("time grid needs at least 2 samples, got {n}")));
        }
        if !t_start.is_finite() {
            return Err(Error::Domain("time grid start must be finite".into()));
        }
        Ok(Self { t_start, dt, n })
    }

    /// Grid with `n` samples whose first and last samples sit on `t0` and `t1`.
    pub fn spanning(t0: f64, t1: f64, n: usize) -> Result<Self> {
        if !(t1 > t0) {
            return Err(Error::Domain(format!("empty time span [{t0}, {t1}]")));
        }
        if n < 2 {
            return Err(Error::Domain(format!("time grid needs at least 2 samples, got {n}")));
        }
        Self::new(t0, (t1 - t0) / (n - 1) as f64, n)
    }

    /// Coarsest grid with endpoints on `t0` and `t1` and a step no larger than `max_dt`.
    pub fn with_max_step(t0: f64, t1: f64, max_dt: f64) -> Result<Self> {
        if !(max_dt > 0.0) {
            return Err(Error::Domain(format!("maximum step must be positive, got {max_dt}")));
        }
        let intervals = ((t1 - t0) / max_dt * (1.0 - 1e-12)).ceil().max(1.0) as usize;
        Self::spanning(t0, t1, intervals + 1)
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn time(&self, i: usize) -> f64 {
        self.t_start + i as f64 * self.dt
    }

    pub fn t_end(&self) -> f64 {
        self.time(self.n - 1)
    }

    /// `(n − 1)·dt`.
    pub fn span(&self) -> f64 {
        (self.n - 1) as f64 * self.dt
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.time(i))
    }

    /// Trapezoid weight of sample `i` (half at the two ends).
    pub fn weight(&self, i: usize) -> f64 {
        if i == 0 || i + 1 == self.n {
            0.5 * self.dt
        } else {
            self.dt
        }
    }

    /// Trapezoid-rule integral of real samples on this grid.
    pub fn integrate(&self, samples: &[f64]) -> f64 {
        debug_assert_eq!(samples.len(), self.n);
        let inner: f64 = samples.iter().sum();
        (inner - 0.5 * (samples[0] + samples[self.n - 1])) * self.dt
    }

    /// Grid equality up to floating-point noise in the derived fields.
    pub fn matches(&self, other: &TimeGrid) -> bool {
        let scale = self.dt.abs().max(other.dt.abs());
        self.n == other.n
            && (self.dt - other.dt).abs() <= 1e-12 * scale
            && (self.t_start - other.t_start).abs() <= 1e-9 * scale
    }

    /// Shifted copy with the same step and length.
    pub fn shifted(&self, samples: isize) -> TimeGrid {
        TimeGrid {
            t_start: self.t_start + samples as f64 * self.dt,
            ..*self
        }
    }
}

/// Samples of a signal on a [`TimeGrid`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledWaveform {
    grid: TimeGrid,
    values: Vec<Complex64>,
    real: bool,
}

impl SampledWaveform {
    pub fn from_real(grid: TimeGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Contract(format!(
                "waveform has {} samples but grid has {}",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self {
            grid,
            values: values.into_iter().map(|v| Complex64::new(v, 0.0)).collect(),
            real: true,
        })
    }

    pub fn from_complex(grid: TimeGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Contract(format!(
                "waveform has {} samples but grid has {}",
                values.len(),
                grid.len()
            )));
        }
        let real = values.iter().all(|v| v.im == 0.0);
        Ok(Self { grid, values, real })
    }

    pub fn zeros(grid: TimeGrid) -> Self {
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
            real: true,
        }
    }

    /// Real waveform sampled from `f(t)`.
    pub fn sample_real(grid: TimeGrid, f: impl Fn(f64) -> f64) -> Self {
        Self {
            grid,
            values: grid.times().map(|t| Complex64::new(f(t), 0.0)).collect(),
            real: true,
        }
    }

    /// Complex waveform sampled from `f(t)`.
    pub fn sample_complex(grid: TimeGrid, f: impl Fn(f64) -> Complex64) -> Self {
        let values: Vec<Complex64> = grid.times().map(f).collect();
        let real = values.iter().all(|v| v.im == 0.0);
        Self { grid, values, real }
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    /// Real parts of the samples.
    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    /// `∫|w|² dt` by the trapezoid rule.
    pub fn energy(&self) -> f64 {
        let sq: Vec<f64> = self.values.iter().map(|v| v.norm_sqr()).collect();
        self.grid.integrate(&sq)
    }

    /// Analytic signal `w + i·H[w]` of the real part, with negative
    /// frequencies removed by a zero-padded FFT.
    pub fn analytic(&self) -> SampledWaveform {
        let n = self.values.len();
        let padded = 2 * n;
        let mut planner = rustfft::FftPlanner::new();
        let mut buf: Vec<Complex64> = self.values.iter().map(|v| Complex64::new(v.re, 0.0)).collect();
        buf.resize(padded, Complex64::new(0.0, 0.0));
        planner.plan_fft_forward(padded).process(&mut buf);
        for (k, b) in buf.iter_mut().enumerate() {
            if k > n {
                *b = Complex64::new(0.0, 0.0);
            } else if k > 0 && k < n {
                *b *= 2.0;
            }
        }
        planner.plan_fft_inverse(padded).process(&mut buf);
        let scale = 1.0 / padded as f64;
        Self {
            grid: self.grid,
            values: buf[..n].iter().map(|v| v * scale).collect(),
            real: false,
        }
    }

    /// Pointwise linear combination `a·self + b·other` on a shared grid.
    pub fn combine(&self, a: f64, other: &SampledWaveform, b: f64) -> Result<SampledWaveform> {
        if !self.grid.matches(&other.grid) {
            return Err(Error::Contract("cannot combine waveforms on different grids".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| x * a + y * b)
            .collect();
        Ok(Self {
            grid: self.grid,
            values,
            real: self.real && other.real,
        })
    }

    /// The same samples placed on another grid of equal length.
    pub fn regrid(&self, grid: TimeGrid) -> Result<SampledWaveform> {
        if grid.len() != self.grid.len() {
            return Err(Error::Contract("regrid needs equal sample counts".into()));
        }
        Ok(Self { grid, ..self.clone() })
    }
}

/// Uniform frequency axis `f_k = start + k·step`, `k = 0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreqAxis {
    start: f64,
    step: f64,
    n: usize,
}

impl FreqAxis {
    pub fn new(start: f64, step: f64, n: usize) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() || !start.is_finite() {
            return Err(Error::Domain(format!("invalid frequency axis start {start}, step {step}")));
        }
        if n < 2 {
            return Err(Error::Domain(format!("frequency axis needs at least 2 points, got {n}")));
        }
        Ok(Self { start, step, n })
    }

    /// `n` points from `lo` to `hi` inclusive.
    pub fn spanning(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if !(hi > lo) || n < 2 {
            return Err(Error::Domain(format!("empty frequency span [{lo}, {hi}] with {n} points")));
        }
        Self::new(lo, (hi - lo) / (n - 1) as f64, n)
    }

    /// One full period `[−1/(4dt), 1/(4dt))` of the discrete Wigner
    /// distribution of a waveform with time step `dt`, sampled at `n` points.
    pub fn full_band(dt: f64, n: usize) -> Result<Self> {
        let width = 0.5 / dt;
        Self::new(-0.5 * width, width / n as f64, n)
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn freq(&self, k: usize) -> f64 {
        self.start + k as f64 * self.step
    }

    pub fn end(&self) -> f64 {
        self.freq(self.n - 1)
    }

    pub fn freqs(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |k| self.freq(k))
    }

    pub fn matches(&self, other: &FreqAxis) -> bool {
        let scale = self.step.abs().max(other.step.abs());
        self.n == other.n
            && (self.step - other.step).abs() <= 1e-12 * scale
            && (self.start - other.start).abs() <= 1e-9 * scale
    }

    /// Index of the axis point nearest to `f`.
    pub fn nearest(&self, f: f64) -> usize {
        let k = ((f - self.start) / self.step).round();
        k.clamp(0.0, (self.n - 1) as f64) as usize
    }
}

/// Complex amplitudes of an FRFT of order `alpha` on a set of `u` coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrftSpectrum {
    alpha: f64,
    u_points: Vec<f64>,
    values: Vec<Complex64>,
}

impl FrftSpectrum {
    pub fn new(alpha: f64, u_points: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if !(alpha > 0.0 && alpha < std::f64::consts::PI) {
            return Err(Error::Domain(format!("FRFT order must lie in (0, π), got {alpha}")));
        }
        check_increasing(&u_points, "u_points")?;
        if values.len() != u_points.len() {
            return Err(Error::Contract(format!(
                "{} values for {} u points",
                values.len(),
                u_points.len()
            )));
        }
        Ok(Self {
            alpha,
            u_points,
            values,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn u_points(&self) -> &[f64] {
        &self.u_points
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn power(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }

    /// Index of the largest `|value|`.
    pub fn peak_index(&self) -> usize {
        self.values
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .map(|(i, _)| i)
            .unwrap_or(0)
    }
}

pub(crate) fn check_increasing(points: &[f64], name: &str) -> Result<()> {
    if points.is_empty() {
        return Err(Error::Degenerate(format!("{name} is empty")));
    }
    if points.iter().any(|u| !u.is_finite()) {
        return Err(Error::Domain(format!("{name} contains non-finite values")));
    }
    if points.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Contract(format!("{name} must be strictly increasing")));
    }
    Ok(())
}

/// Real time-frequency density on a uniform `(t, f)` grid, rows indexed by time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WignerMap {
    t_axis: TimeGrid,
    f_axis: FreqAxis,
    values: Vec<f64>,
}

impl WignerMap {
    pub fn new(t_axis: TimeGrid, f_axis: FreqAxis, values: Vec<f64>) -> Result<Self> {
        if values.len() != t_axis.len() * f_axis.len() {
            return Err(Error::Contract(format!(
                "map has {} values for a {}x{} grid",
                values.len(),
                t_axis.len(),
                f_axis.len()
            )));
        }
        Ok(Self {
            t_axis,
            f_axis,
            values,
        })
    }

    pub fn t_axis(&self) -> &TimeGrid {
        &self.t_axis
    }

    pub fn f_axis(&self) -> &FreqAxis {
        &self.f_axis
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize, k: usize) -> f64 {
        self.values[i * self.f_axis.len() + k]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let nf = self.f_axis.len();
        &self.values[i * nf..(i + 1) * nf]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `∬ W dt df`: a plain sum over the lattice rows, and along `f` the
    /// periodic rectangle rule when the axis spans exactly one period
    /// `1/(4·row step)`, the trapezoid rule otherwise.
    pub fn total(&self) -> f64 {
        let rows: f64 = (0..self.t_axis.len()).map(|i| self.integrate_row(self.row(i))).sum();
        rows * self.t_axis.dt()
    }

    pub(crate) fn integrate_row(&self, row: &[f64]) -> f64 {
        let df = self.f_axis.step();
        let period = 0.25 / self.t_axis.dt();
        if ((row.len() as f64 * df) - period).abs() <= 1e-9 * period {
            row.iter().sum::<f64>() * df
        } else {
            trapezoid_uniform(row, df)
        }
    }

    /// Frequency of the row maximum for each time sample.
    pub fn ridge(&self) -> Vec<f64> {
        (0..self.t_axis.len())
            .map(|i| {
                let row = self.row(i);
                let k = row
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.total_cmp(b.1))
                    .map(|(k, _)| k)
                    .unwrap_or(0);
                self.f_axis.freq(k)
            })
            .collect()
    }
}

pub(crate) fn trapezoid_uniform(samples: &[f64], step: f64) -> f64 {
    match samples.len() {
        0 | 1 => 0.0,
        n => (samples.iter().sum::<f64>() - 0.5 * (samples[0] + samples[n - 1])) * step,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_span_reproducible() {
        let g = TimeGrid::spanning(0.0, 9.6, 1537).unwrap();
        assert_eq!(g.len(), 1537);
        assert!((g.span() - 9.6).abs() < 1e-12);
        assert!((g.t_end() - 9.6).abs() < 1e-12);
    }

    #[test]
    fn grid_rejects_bad_fields() {
        assert!(TimeGrid::new(0.0, 0.0, 10).is_err());
        assert!(TimeGrid::new(0.0, -1.0, 10).is_err());
        assert!(TimeGrid::new(0.0, 0.1, 1).is_err());
    }

    #[test]
    fn max_step_grid_respects_bound() {
        let g = TimeGrid::with_max_step(0.0, 9.6, max_dt_for(2.4)).unwrap();
        assert!(g.dt() <= max_dt_for(2.4));
        assert!(check_sampling(&g, 2.4, "test").is_ok());
        assert!(matches!(
            check_sampling(&g, 5.0, "test"),
            Err(Error::Resolution { .. })
        ));
    }

    #[test]
    fn waveform_length_checked() {
        let g = TimeGrid::new(0.0, 0.1, 4).unwrap();
        assert!(SampledWaveform::from_real(g, vec![0.0; 3]).is_err());
        let w = SampledWaveform::from_real(g, vec![1.0; 4]).unwrap();
        assert!(w.is_real());
        assert!(w.values().iter().all(|v| v.im == 0.0));
    }

    #[test]
    fn spectrum_rejects_unsorted_points() {
        let v = vec![Complex64::new(0.0, 0.0); 3];
        assert!(FrftSpectrum::new(1.0, vec![0.0, 2.0, 1.0], v.clone()).is_err());
        assert!(FrftSpectrum::new(0.0, vec![0.0, 1.0, 2.0], v.clone()).is_err());
        assert!(FrftSpectrum::new(1.0, vec![0.0, 1.0, 2.0], v).is_ok());
    }
}
