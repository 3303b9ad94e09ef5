//! Bang-bang dynamical-decoupling filters with optional linear chirp.
//!
//! A filter is the ±1 kernel `h(t) = rect·sgn{cos[2πt(−q/2·t + f_j) − φ]}`
//! on `[0, T]`. Its sign flips mark where instantaneous π pulses sit.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::{csv_document, json_document};
use crate::timefreq::{check_sampling, SampledWaveform, TimeGrid};

/// Parameters of one chirped DD filter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FilterSpec {
    /// Chirp rate `q = cot α` (MHz²).
    q: f64,
    /// Modulation frequency at `t = 0` (MHz).
    f_j: f64,
    /// Phase offset (rad).
    phi: f64,
    /// Window length `T` (µs).
    duration: f64,
}

/// Validates and builds a [`FilterSpec`].
///
/// The instantaneous frequency `f_j − q·t` must stay positive over `[0, T]`,
/// otherwise the filter's trajectory would cross the time axis.
pub fn make_filter_spec(q: f64, f_j: f64, phi: f64, duration: f64) -> Result<FilterSpec> {
    FilterSpec::new(q, f_j, phi, duration)
}

impl FilterSpec {
    pub fn new(q: f64, f_j: f64, phi: f64, duration: f64) -> Result<Self> {
        if !q.is_finite() || !f_j.is_finite() || !phi.is_finite() || !duration.is_finite() {
            return Err(Error::Domain("filter parameters must be finite".into()));
        }
        if duration <= 0.0 {
            return Err(Error::Domain(format!("filter duration must be positive, got {duration}")));
        }
        if f_j <= 0.0 {
            return Err(Error::ChirpThroughDc { f_end: f_j, t_end: 0.0 });
        }
        let f_end = f_j - q * duration;
        if f_end <= 0.0 {
            return Err(Error::ChirpThroughDc { f_end, t_end: duration });
        }
        Ok(Self { q, f_j, phi, duration })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn f_j(&self) -> f64 {
        self.f_j
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    /// FRFT order the filter measures in, `arccot(q)`.
    pub fn alpha(&self) -> f64 {
        alpha_of_chirp(self.q)
    }

    /// Instantaneous modulation frequency `f_j − q·t` (MHz).
    pub fn instantaneous_frequency(&self, t: f64) -> f64 {
        self.f_j - self.q * t
    }

    /// Largest instantaneous frequency over the window.
    pub fn max_frequency(&self) -> f64 {
        self.f_j.max(self.instantaneous_frequency(self.duration))
    }

    /// Argument of the cosine, `2πt(−q/2·t + f_j) − φ`.
    pub fn phase(&self, t: f64) -> f64 {
        2.0 * PI * t * (-0.5 * self.q * t + self.f_j) - self.phi
    }

    /// Kernel value: `sgn(cos(phase))` inside the closed window, 0 outside,
    /// with `sgn(0) = +1`.
    pub fn sign_at(&self, t: f64) -> f64 {
        if t < 0.0 || t > self.duration {
            0.0
        } else if self.phase(t).cos() >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// `α = arccot(q)` on the continuous branch `(0, π)`.
pub fn alpha_of_chirp(q: f64) -> f64 {
    1.0_f64.atan2(q)
}

/// Fractional-domain coordinate `u = f·sin α`.
pub fn u_alpha_of_f(f: f64, alpha: f64) -> f64 {
    f * alpha.sin()
}

/// Instantaneous π pulses of a filter: the sign flips of its kernel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PulseSequence {
    #[serde(rename = "T")]
    duration: f64,
    initial_sign: i8,
    #[serde(rename = "flips")]
    flip_times: Vec<f64>,
}

impl PulseSequence {
    pub fn duration(&self) -> f64 {
        self.duration
    }

    /// Kernel value just after `t = 0`.
    pub fn initial_sign(&self) -> i8 {
        self.initial_sign
    }

    pub fn flip_times(&self) -> &[f64] {
        &self.flip_times
    }

    /// Kernel value rebuilt from the flip list.
    pub fn sign_at(&self, t: f64) -> f64 {
        if t < 0.0 || t > self.duration {
            return 0.0;
        }
        let flips = self.flip_times.partition_point(|&f| f < t);
        let s = f64::from(self.initial_sign);
        if flips % 2 == 0 {
            s
        } else {
            -s
        }
    }

    /// One flip time per row in µs.
    pub fn to_csv(&self) -> String {
        csv_document(&["flip_time_us"], self.flip_times.iter().map(|&t| vec![t]))
    }

    /// Pulse table `{T, initial_sign, flips[]}`.
    pub fn to_json(&self) -> Result<String> {
        json_document(self)
    }
}

/// Sign-flip times of a filter.
///
/// Flips sit where the phase crosses `π/2 + kπ`, i.e. at the roots of
/// `q·t² − 2f_j·t + c = 0` with `c = (φ + π/2 + kπ)/π`. Only the root on
/// the rising branch `f_j − q·t > 0` is relevant, and it is taken in the
/// cancellation-free form `t = c / (f_j + √(f_j² − q·c))`, which also
/// covers `q = 0`.
pub fn flip_times(spec: &FilterSpec) -> PulseSequence {
    let theta0 = spec.phase(0.0);
    let theta_end = spec.phase(spec.duration);
    let k_first = ((theta0 - FRAC_PI_2) / PI).floor() as i64 + 1;
    let k_last = ((theta_end - FRAC_PI_2) / PI).ceil() as i64 - 1;

    let flips: Vec<f64> = (k_first..=k_last)
        .filter_map(|k| {
            let c = (spec.phi + FRAC_PI_2 + k as f64 * PI) / PI;
            let disc = spec.f_j * spec.f_j - spec.q * c;
            if disc < 0.0 {
                return None;
            }
            let t = c / (spec.f_j + disc.sqrt());
            (t > 0.0 && t < spec.duration).then_some(t)
        })
        .collect();

    let c0 = theta0.cos();
    let initial_sign = if c0.abs() > 1e-12 {
        if c0 > 0.0 {
            1
        } else {
            -1
        }
    } else if theta0.sin() <= 0.0 {
        // cos is rising through zero just after t = 0.
        1
    } else {
        -1
    };

    PulseSequence {
        duration: spec.duration,
        initial_sign,
        flip_times: flips,
    }
}

/// Samples the filter kernel on `grid`: ±1 inside `[0, T]`, 0 outside.
pub fn filter_kernel(spec: &FilterSpec, grid: &TimeGrid) -> Result<SampledWaveform> {
    let tol = 1e-9 * grid.dt();
    if grid.t_start() > tol || grid.t_end() < spec.duration - tol {
        return Err(Error::Contract(format!(
            "grid [{}, {}] us does not cover the filter window [0, {}] us",
            grid.t_start(),
            grid.t_end(),
            spec.duration
        )));
    }
    check_sampling(grid, spec.max_frequency(), "filter kernel")?;
    let values = grid
        .times()
        .map(|t| {
            // Snap endpoint samples that miss the closed window by rounding.
            let t = if t.abs() <= tol {
                0.0
            } else if (t - spec.duration).abs() <= tol {
                spec.duration
            } else {
                t
            };
            spec.sign_at(t)
        })
        .collect();
    SampledWaveform::from_real(*grid, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::timefreq::max_dt_for;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn reference_unchirped_spec_valid() {
        assert!(make_filter_spec(0.0, 1.2, 0.0, 9.6).is_ok());
    }

    #[test]
    fn chirp_through_dc_rejected() {
        match make_filter_spec(0.25, 1.2, 0.0, 9.6) {
            Err(Error::ChirpThroughDc { f_end, t_end }) => {
                assert!((f_end - (1.2 - 2.4)).abs() < 1e-12);
                assert_eq!(t_end, 9.6);
            }
            other => panic!("expected chirp-through-DC, got {other:?}"),
        }
    }

    #[test]
    fn up_chirp_valid() {
        let s = make_filter_spec(-0.125, 1.2, 0.0, 9.6).unwrap();
        assert!((s.instantaneous_frequency(0.0) - 1.2).abs() < 1e-12);
        assert!((s.instantaneous_frequency(9.6) - 2.4).abs() < 1e-12);
        assert!((s.max_frequency() - 2.4).abs() < 1e-12);
    }

    #[test]
    fn cosine_flips_at_quarter_periods() {
        let p = flip_times(&make_filter_spec(0.0, 1.0, 0.0, 2.0).unwrap());
        assert!(close(p.flip_times(), &[0.25, 0.75, 1.25, 1.75]));
        assert_eq!(p.initial_sign(), 1);
    }

    #[test]
    fn sine_flips_at_half_periods() {
        let p = flip_times(&make_filter_spec(0.0, 1.0, FRAC_PI_2, 2.0).unwrap());
        assert!(close(p.flip_times(), &[0.5, 1.0, 1.5]));
        assert_eq!(p.initial_sign(), 1);
    }

    #[test]
    fn chirped_flips_match_dense_sign_changes() {
        let spec = make_filter_spec(-0.125, 1.2, 0.0, 9.6).unwrap();
        let p = flip_times(&spec);
        let dt: f64 = 1e-4;
        let n = (9.6 / dt).round() as usize;
        let mut dense = Vec::new();
        let mut prev = spec.sign_at(0.0);
        for i in 1..=n {
            let t = i as f64 * dt;
            let s = spec.sign_at(t);
            if s != prev {
                dense.push(t);
                prev = s;
            }
        }
        assert_eq!(dense.len(), p.flip_times().len());
        for (a, b) in dense.iter().zip(p.flip_times()) {
            assert!((a - b).abs() <= dt, "{a} vs {b}");
        }
    }

    #[test]
    fn arccot_branches() {
        assert!((alpha_of_chirp(0.0) - FRAC_PI_2).abs() < 1e-15);
        assert!((alpha_of_chirp(1.0) - PI / 4.0).abs() < 1e-15);
        assert!((alpha_of_chirp(-1.0) - 3.0 * PI / 4.0).abs() < 1e-15);
        assert!((u_alpha_of_f(1.2, FRAC_PI_2) - 1.2).abs() < 1e-15);
        let r = 2.0_f64.sqrt();
        assert!((u_alpha_of_f(1.2, alpha_of_chirp(1.0)) - 1.2 / r).abs() < 1e-15);
        assert!((u_alpha_of_f(1.2, alpha_of_chirp(-1.0)) - 1.2 / r).abs() < 1e-15);
    }

    #[test]
    fn balanced_kernel_has_zero_mean() {
        let spec = make_filter_spec(0.0, 1.0, 0.0, 2.0).unwrap();
        let grid = TimeGrid::with_max_step(0.0, 2.0, max_dt_for(1.0) / 1.3).unwrap();
        let h = filter_kernel(&spec, &grid).unwrap();
        let mean = h.real_parts().iter().sum::<f64>() / grid.len() as f64;
        assert!(mean.abs() <= 1.0 / grid.len() as f64);
    }

    #[test]
    fn kernel_is_unit_magnitude_in_window() {
        let spec = make_filter_spec(-0.125, 1.2, FRAC_PI_2, 9.6).unwrap();
        let grid = TimeGrid::new(-0.5, max_dt_for(2.4), 3000).unwrap();
        let h = filter_kernel(&spec, &grid).unwrap();
        for (t, v) in grid.times().zip(h.real_parts()) {
            let inside = (0.0..=9.6).contains(&t);
            assert_eq!(v * v, if inside { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn coarse_grid_rejected() {
        let spec = make_filter_spec(0.0, 1.2, 0.0, 9.6).unwrap();
        let grid = TimeGrid::spanning(0.0, 9.6, 100).unwrap();
        assert!(matches!(filter_kernel(&spec, &grid), Err(Error::Resolution { .. })));
    }

    #[test]
    fn short_grid_rejected() {
        let spec = make_filter_spec(0.0, 1.2, 0.0, 9.6).unwrap();
        let grid = TimeGrid::with_max_step(0.0, 5.0, max_dt_for(1.2)).unwrap();
        assert!(matches!(filter_kernel(&spec, &grid), Err(Error::Contract(_))));
    }

    #[test]
    fn quadrature_variant_shifts_first_flip_by_quarter_period() {
        let a = flip_times(&make_filter_spec(0.0, 1.2, 0.0, 9.6).unwrap());
        let b = flip_times(&make_filter_spec(0.0, 1.2, FRAC_PI_2, 9.6).unwrap());
        let quarter = 0.25 / 1.2;
        assert!((b.flip_times()[0] - a.flip_times()[0] - quarter).abs() < 1e-12);
    }

    #[test]
    fn pulse_table_json_shape() {
        let p = flip_times(&make_filter_spec(0.0, 1.0, 0.0, 2.0).unwrap());
        let v: serde_json::Value = serde_json::from_str(&p.to_json().unwrap()).unwrap();
        assert_eq!(v["T"], 2.0);
        assert_eq!(v["initial_sign"], 1);
        assert_eq!(v["flips"].as_array().unwrap().len(), 4);
        assert!(p.to_csv().starts_with("flip_time_us\n0.25\n"));
    }
}
