use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::{check_increasing, FrftSpectrum, SampledWaveform, WignerMap};
use crate::error::{Error, Result};

/// Fractional Fourier transform of order `alpha` evaluated at `u_points`.
///
/// Direct quadrature of the FRFT integral
///
/// ```text
/// F_α(u) = √(1 − i·cot α) · e^{iπ·cot α·u²} · ∫ w(t) e^{−2πi(csc α·u·t − cot α·t²/2)} dt
/// ```
///
/// with trapezoid weights on the waveform's grid, so `O(n·m)` for `n`
/// samples and `m` output points. The square root is the principal branch.
/// At `alpha = π/2` this is exactly the trapezoid quadrature of the ordinary
/// Fourier transform `∫ w(t) e^{−2πi u t} dt`.
///
/// The kernel's chirp must advance by less than π per sample over the whole
/// grid and `u` range, otherwise a resolution error names the step required.
pub fn frft(w: &SampledWaveform, alpha: f64, u_points: &[f64]) -> Result<FrftSpectrum> {
    if !(alpha > 0.0 && alpha < PI) {
        return Err(Error::Domain(format!(
            "FRFT order must lie in the open interval (0, π), got {alpha}"
        )));
    }
    check_increasing(u_points, "u_points")?;

    let (cot, csc) = if alpha == FRAC_PI_2 {
        (0.0, 1.0)
    } else {
        (alpha.cos() / alpha.sin(), 1.0 / alpha.sin())
    };
    let grid = w.grid();

    // Instantaneous frequency of the kernel phase is csc·u − cot·t; its
    // extremes over the rectangle of (t, u) sit on the corners.
    let u_lo = u_points[0];
    let u_hi = u_points[u_points.len() - 1];
    let f_kernel = [
        (u_lo, grid.t_start()),
        (u_lo, grid.t_end()),
        (u_hi, grid.t_start()),
        (u_hi, grid.t_end()),
    ]
    .iter()
    .map(|&(u, t)| (csc * u - cot * t).abs())
    .fold(0.0, f64::max);
    if f_kernel > 0.0 && grid.dt() * f_kernel >= 0.5 {
        return Err(Error::Resolution {
            what: format!("FRFT kernel of order {alpha:.6} (peak frequency {f_kernel:.4} MHz)"),
            required_dt: 0.5 / f_kernel,
            actual_dt: grid.dt(),
        });
    }

    // Signal times the t-only chirp and the quadrature weight.
    let weighted: Vec<(f64, Complex64)> = w
        .values()
        .iter()
        .enumerate()
        .filter(|(_, v)| v.re != 0.0 || v.im != 0.0)
        .map(|(i, v)| {
            let t = grid.time(i);
            let chirp = Complex64::cis(PI * cot * t * t);
            (t, v * chirp * grid.weight(i))
        })
        .collect();

    let prefactor = (Complex64::new(1.0, -cot)).sqrt();
    let values = u_points
        .iter()
        .map(|&u| {
            let k = -2.0 * PI * csc * u;
            let sum: Complex64 = weighted.iter().map(|&(t, c)| c * Complex64::cis(k * t)).sum();
            prefactor * Complex64::cis(PI * cot * u * u) * sum
        })
        .collect();

    FrftSpectrum::new(alpha, u_points.to_vec(), values)
}

/// Ordinary Fourier transform `∫ w(t) e^{−2πi f t} dt` at `f_points`; the
/// FRFT at order π/2.
pub fn fourier(w: &SampledWaveform, f_points: &[f64]) -> Result<FrftSpectrum> {
    frft(w, FRAC_PI_2, f_points)
}

/// Integral projection of a time-frequency map onto the axis at angle
/// `alpha` from the time axis.
///
/// For each `u` the map is integrated along the line
/// `(t, f) = (u·cos α − v·sin α, u·sin α + v·cos α)` with step `dv`, using
/// bilinear interpolation and zero outside the map. For a Wigner map this
/// reproduces `|F_α(u)|²`.
pub fn radon_projection(map: &WignerMap, alpha: f64, u_points: &[f64], dv: f64) -> Result<Vec<f64>> {
    if !(dv > 0.0) {
        return Err(Error::Domain(format!("projection step must be positive, got {dv}")));
    }
    let ta = map.t_axis();
    let fa = map.f_axis();
    let (s, c) = alpha.sin_cos();

    // Lines through the map never extend past its bounding circle.
    let t_mid = 0.5 * (ta.t_start() + ta.t_end());
    let f_mid = 0.5 * (fa.start() + fa.end());
    let radius = (0.5 * ta.span()).hypot(0.5 * (fa.end() - fa.start()));

    let sample = |t: f64, f: f64| -> f64 {
        let x = (t - ta.t_start()) / ta.dt();
        let y = (f - fa.start()) / fa.step();
        if x < 0.0 || y < 0.0 {
            return 0.0;
        }
        let (i, k) = (x.floor() as usize, y.floor() as usize);
        if i + 1 >= ta.len() || k + 1 >= fa.len() {
            return 0.0;
        }
        let (dx, dy) = (x - i as f64, y - k as f64);
        map.get(i, k) * (1.0 - dx) * (1.0 - dy)
            + map.get(i + 1, k) * dx * (1.0 - dy)
            + map.get(i, k + 1) * (1.0 - dx) * dy
            + map.get(i + 1, k + 1) * dx * dy
    };

    Ok(u_points
        .iter()
        .map(|&u| {
            // Parameter of the point on the line closest to the map centre.
            let v0 = -s * t_mid + c * f_mid;
            let steps = (radius / dv).ceil() as i64 + 1;
            (-steps..=steps)
                .map(|j| {
                    let v = v0 + j as f64 * dv;
                    sample(u * c - v * s, u * s + v * c)
                })
                .sum::<f64>()
                * dv
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::timefreq::TimeGrid;

    fn rect(t_end: f64, n: usize) -> SampledWaveform {
        SampledWaveform::sample_real(TimeGrid::spanning(0.0, t_end, n).unwrap(), |_| 1.0)
    }

    #[test]
    fn rect_dc_value_is_width() {
        let w = rect(9.6, 2001);
        let s = fourier(&w, &[0.0]).unwrap();
        assert!((s.values()[0].re - 9.6).abs() < 1e-12);
        assert!(s.values()[0].im.abs() < 1e-12);
    }

    #[test]
    fn zero_waveform_has_zero_spectrum() {
        let w = SampledWaveform::zeros(TimeGrid::spanning(0.0, 9.6, 1001).unwrap());
        let s = fourier(&w, &[0.5, 1.2, 2.0]).unwrap();
        assert!(s.values().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn impulse_spectrum_is_flat() {
        let grid = TimeGrid::spanning(0.0, 1.0, 1001).unwrap();
        let mut v = vec![0.0; 1001];
        v[500] = 1.0 / grid.dt();
        let w = SampledWaveform::from_real(grid, v).unwrap();
        let f: Vec<f64> = (0..200).map(|k| -100.0 + k as f64).collect();
        let s = fourier(&w, &f).unwrap();
        for v in s.values() {
            assert!((v.norm() - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn cosine_peak_is_half_area() {
        // f0·T = 60.
        let (f0, t_end) = (6.0, 10.0);
        let grid = TimeGrid::with_max_step(0.0, t_end, 1.0 / (64.0 * f0)).unwrap();
        let w = SampledWaveform::sample_real(grid, |t| 2.0 * (2.0 * PI * f0 * t).cos());
        let s = fourier(&w, &[f0]).unwrap();
        assert!((s.values()[0].norm() - t_end).abs() / t_end < 0.01);
    }

    #[test]
    fn cosine_at_default_duration() {
        let grid = TimeGrid::with_max_step(0.0, 9.6, 1.0 / (64.0 * 1.2)).unwrap();
        let w = SampledWaveform::sample_real(grid, |t| (2.0 * PI * 1.2 * t).cos());
        let s = fourier(&w, &[1.2]).unwrap();
        assert!((s.values()[0].norm() - 4.8).abs() / 4.8 < 0.01);
    }

    #[test]
    fn order_outside_open_interval_rejected() {
        let w = rect(1.0, 11);
        for a in [0.0, PI, -0.1, 4.0] {
            assert!(matches!(frft(&w, a, &[0.0]), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn coarse_grid_rejected_with_required_step() {
        let w = rect(10.0, 11);
        match fourier(&w, &[0.0, 5.0]) {
            Err(Error::Resolution { required_dt, .. }) => assert!((required_dt - 0.1).abs() < 1e-12),
            other => panic!("expected resolution error, got {other:?}"),
        }
    }

    #[test]
    fn matched_chirp_peaks_at_scaled_frequency() {
        // q = cot α = 1 (α = π/4), f1 = 2 MHz, T = 20 µs. The instantaneous
        // frequency f1 − q·t runs negative late in the record, which the
        // transform handles like any other content.
        let (q, f1, t_end) = (1.0_f64, 2.0_f64, 20.0);
        let alpha = (1.0 / q).atan();
        let f_max = f1.abs() + q.abs() * t_end;
        let grid = TimeGrid::with_max_step(0.0, t_end, 1.0 / (4.0 * f_max)).unwrap();
        let w = SampledWaveform::sample_real(grid, |t| (2.0 * PI * t * (-q / 2.0 * t + f1)).cos());
        let target = f1 * alpha.sin();
        let du = 0.005;
        let u: Vec<f64> = (0..161).map(|k| target - 0.4 + k as f64 * du).collect();
        let s = frft(&w, alpha, &u).unwrap();
        let peak = s.u_points()[s.peak_index()];
        assert!((peak - target).abs() <= du, "peak at {peak}, expected {target}");
    }
}
