use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filters::{filter_kernel, FilterSpec};
use crate::sensing::{design_filters, design_grid, synth_signal, MeasurementRecord, SignalSpec};
use crate::timefreq::{TimeGrid, OVERSAMPLING};

/// A constant-sign stretch of a kernel: samples `start..end` with `sign`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct Run {
    start: usize,
    end: usize,
    sign: f64,
}

/// Noiseless contrast `cos Φ_k(A, f₁)` for a fixed filter design.
///
/// Signals share the design's chirp `q₁` and duration; `A` and `f₁` are free.
/// Kernels are stored as constant-sign runs so each phase is a handful of
/// prefix-sum differences; the result equals the trapezoid rule used by
/// [`crate::sensing::measure`] on the same grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForwardModel {
    signal_chirp: f64,
    filters: Vec<FilterSpec>,
    grid: TimeGrid,
    runs: Vec<Vec<Run>>,
}

impl ForwardModel {
    /// Design with chirp `q`, window `duration`, all `f_grid` × `phases`.
    pub fn new(q: f64, signal_chirp: f64, duration: f64, f_grid: &[f64], phases: &[f64]) -> Result<Self> {
        Self::from_filters(design_filters(q, duration, f_grid, phases)?, signal_chirp)
    }

    /// Model for the filters of `record`, with the record's signal chirp.
    pub fn for_record(record: &MeasurementRecord) -> Result<Self> {
        Self::from_filters(record.filters(), record.signal.q1)
    }

    pub fn from_filters(filters: Vec<FilterSpec>, signal_chirp: f64) -> Result<Self> {
        let grid = design_grid(&filters, signal_chirp, 0.0)?;
        let runs = filters
            .iter()
            .map(|f| Ok(runs_of(&filter_kernel(f, &grid)?.real_parts())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            signal_chirp,
            filters,
            grid,
            runs,
        })
    }

    pub fn filters(&self) -> &[FilterSpec] {
        &self.filters
    }

    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    /// Filter chirp `q`.
    pub fn q(&self) -> f64 {
        self.filters[0].q()
    }

    pub fn signal_chirp(&self) -> f64 {
        self.signal_chirp
    }

    pub fn duration(&self) -> f64 {
        self.filters[0].duration()
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    /// Distinct filter frequencies, ascending.
    pub fn frequencies(&self) -> Vec<f64> {
        let mut f: Vec<f64> = self.filters.iter().map(FilterSpec::f_j).collect();
        f.dedup();
        f
    }

    /// Lowest and highest filter frequency.
    pub fn band(&self) -> (f64, f64) {
        let fs = self.filters.iter().map(FilterSpec::f_j);
        (fs.clone().fold(f64::INFINITY, f64::min), fs.fold(f64::NEG_INFINITY, f64::max))
    }

    /// Whether a signal at `f1` is resolvable on the model grid.
    pub fn supports(&self, f1: f64) -> bool {
        let limit = 1.0 / (OVERSAMPLING * self.grid.dt());
        f1.abs() + self.signal_chirp.abs() * self.duration() <= limit * (1.0 + 1e-9)
    }

    /// Accumulated phases for unit amplitude.
    pub fn unit_phases(&self, f1: f64) -> Result<Vec<f64>> {
        let signal = SignalSpec {
            amplitude: 1.0,
            f1,
            q1: self.signal_chirp,
            duration: self.duration(),
            phase: 0.0,
        };
        let g = synth_signal(&signal, &self.grid)?.real_parts();
        let mut prefix = Vec::with_capacity(g.len() + 1);
        prefix.push(0.0);
        let mut acc = 0.0;
        for (i, v) in g.iter().enumerate() {
            acc += v * self.grid.weight(i);
            prefix.push(acc);
        }
        Ok(self
            .runs
            .iter()
            .map(|runs| runs.iter().map(|r| r.sign * (prefix[r.end] - prefix[r.start])).sum())
            .collect())
    }

    /// Mean contrast vector `cos(A·Φ_k(f₁))`.
    pub fn predict(&self, amplitude: f64, f1: f64) -> Result<Vec<f64>> {
        Ok(self.unit_phases(f1)?.into_iter().map(|p| (amplitude * p).cos()).collect())
    }

    /// Checks that `record` was taken with this model's filter design.
    pub fn check_record(&self, record: &MeasurementRecord) -> Result<()> {
        let same = record.entries.len() == self.filters.len()
            && record.entries.iter().zip(&self.filters).all(|(e, f)| e.filter == *f);
        if !same {
            return Err(Error::Contract("record and model use different filter designs".into()));
        }
        Ok(())
    }
}

fn runs_of(kernel: &[f64]) -> Vec<Run> {
    let mut runs: Vec<Run> = Vec::new();
    for (i, &s) in kernel.iter().enumerate() {
        if s == 0.0 {
            continue;
        }
        match runs.last_mut() {
            Some(r) if r.end == i && r.sign == s => r.end = i + 1,
            _ => runs.push(Run {
                start: i,
                end: i + 1,
                sign: s,
            }),
        }
    }
    runs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sensing::{measure, NoiseModel, QUADRATURE_PHASES};

    fn grid_f() -> Vec<f64> {
        (0..21).map(|k| 1.0 + 0.02 * k as f64).collect()
    }

    #[test]
    fn zero_amplitude_predicts_ones() {
        let m = ForwardModel::new(-0.125, -0.125, 9.6, &grid_f(), &QUADRATURE_PHASES).unwrap();
        assert!(m.predict(0.0, 1.2).unwrap().iter().all(|&c| c == 1.0));
    }

    #[test]
    fn prediction_matches_noiseless_measurement() {
        for q in [0.0, -0.125] {
            let signal = SignalSpec::new(0.2428, 1.2, -0.125, 9.6).unwrap();
            let m = ForwardModel::new(q, -0.125, 9.6, &grid_f(), &QUADRATURE_PHASES).unwrap();
            let r = measure(&signal, m.filters(), &NoiseModel::noiseless()).unwrap();
            m.check_record(&r).unwrap();
            let p = m.predict(0.2428, 1.2).unwrap();
            for (a, b) in p.iter().zip(r.contrasts()) {
                assert!((a - b).abs() < 1e-12, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn runs_cover_nonzero_samples() {
        let runs = runs_of(&[0.0, 1.0, 1.0, -1.0, -1.0, -1.0, 1.0, 0.0]);
        assert_eq!(runs.len(), 3);
        assert_eq!((runs[0].start, runs[0].end), (1, 3));
        assert_eq!((runs[1].start, runs[1].end), (3, 6));
        assert_eq!((runs[2].start, runs[2].end), (6, 7));
    }
}
