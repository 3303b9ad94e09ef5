use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::{FreqAxis, SampledWaveform, TimeGrid, WignerMap};
use crate::error::{Error, Result};

/// Wigner distribution `W(t, f) = ∫ w(t + τ/2)·w*(t − τ/2)·e^{−2πifτ} dτ`.
///
/// Discretized on the sample-pair lattice: row `c` sits at
/// `t_start + c·dt/2` (`2n − 1` rows) and sums the products `w_a·w_b*` with
/// `a + b = c`, lag `τ = (a − b)·dt`, weight `2dt`. Only recorded samples
/// enter, no interpolation. Samples carry the square root of their
/// trapezoid weight, so the identities below match trapezoid quadrature on
/// the waveform grid.
///
/// Along `f` each row repeats with period `1/(2dt)` up to a sign. Over one
/// period ([`FreqAxis::full_band`]) with at least `n` points,
/// [`overlap_integral`] equals `|∫ a·b* dt|²` and the frequency marginal
/// `Σ_rows W·dt/2` equals `|∫ w·e^{−2πift} dt|²`, both to rounding. Axes
/// reaching past `±1/(2dt)` are rejected.
pub fn wigner(w: &SampledWaveform, f_axis: &FreqAxis) -> Result<WignerMap> {
    let grid = *w.grid();
    check_nyquist(&grid, f_axis)?;

    let n = grid.len();
    let x: Vec<Complex64> = w
        .values()
        .iter()
        .enumerate()
        .map(|(m, v)| v * (grid.weight(m) / grid.dt()).sqrt())
        .collect();
    let lags = 2 * n - 1;
    let czt = LagTransform::new(lags, n - 1, grid.dt(), f_axis);

    let mut values = Vec::with_capacity(lags * f_axis.len());
    let mut buf = vec![Complex64::new(0.0, 0.0); lags];
    for c in 0..lags {
        buf.iter_mut().for_each(|b| *b = Complex64::new(0.0, 0.0));
        for j in row_lags(c, n) {
            let v = x[(c + j) / 2] * x[(c - j) / 2].conj() * 2.0;
            buf[n - 1 + j] = v;
            buf[n - 1 - j] = v.conj();
        }
        czt.apply(&buf, &mut values);
    }
    finish(row_axis(&grid)?, *f_axis, values)
}

/// Wigner distribution of a real stochastic process from its
/// autocorrelation `R(t, τ) = ⟨g(t + τ/2)·g(t − τ/2)⟩`.
///
/// Same lattice as [`wigner`]: `R` is evaluated only where `t ± τ/2` both
/// fall on samples of `t_axis`. The autocorrelation must be even in `τ`; an
/// asymmetric one is a contract violation.
pub fn wigner_stochastic(
    autocorr: impl Fn(f64, f64) -> f64,
    t_axis: &TimeGrid,
    f_axis: &FreqAxis,
) -> Result<WignerMap> {
    check_nyquist(t_axis, f_axis)?;
    let n = t_axis.len();
    let dt = t_axis.dt();
    let lags = 2 * n - 1;
    let rows = row_axis(t_axis)?;

    let czt = LagTransform::new(lags, n - 1, dt, f_axis);
    let mut values = Vec::with_capacity(lags * f_axis.len());
    let mut buf = vec![Complex64::new(0.0, 0.0); lags];
    let mut scale = 0.0_f64;
    let mut worst = 0.0_f64;
    for c in 0..lags {
        let t = rows.time(c);
        buf.iter_mut().for_each(|b| *b = Complex64::new(0.0, 0.0));
        for j in row_lags(c, n) {
            let tau = j as f64 * dt;
            let pos = autocorr(t, tau);
            let neg = autocorr(t, -tau);
            scale = scale.max(pos.abs()).max(neg.abs());
            worst = worst.max((pos - neg).abs());
            let weight = (t_axis.weight((c + j) / 2) * t_axis.weight((c - j) / 2)).sqrt() / dt;
            let v = Complex64::new(2.0 * weight * pos, 0.0);
            buf[n - 1 + j] = v;
            buf[n - 1 - j] = v;
        }
        czt.apply(&buf, &mut values);
    }
    if worst > 1e-9 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::Contract(format!(
            "autocorrelation is not even in the lag (max asymmetry {worst:.3e})"
        )));
    }
    finish(rows, *f_axis, values)
}

/// `∬ Wa·Wb dt df`, with the quadrature of [`WignerMap::total`].
pub fn overlap_integral(a: &WignerMap, b: &WignerMap) -> Result<f64> {
    if !a.t_axis().matches(b.t_axis()) || !a.f_axis().matches(b.f_axis()) {
        return Err(Error::Contract("overlap needs maps on identical (t, f) axes".into()));
    }
    let rows: Vec<f64> = (0..a.t_axis().len())
        .map(|i| {
            let prod: Vec<f64> = a.row(i).iter().zip(b.row(i)).map(|(x, y)| x * y).collect();
            a.integrate_row(&prod)
        })
        .collect();
    Ok(rows.iter().sum::<f64>() * a.t_axis().dt())
}

/// Non-negative lags `j` of lattice row `c`: same parity as `c`, with both
/// `(c ± j)/2` inside `0..n`.
fn row_lags(c: usize, n: usize) -> impl Iterator<Item = usize> {
    let reach = c.min(2 * (n - 1) - c);
    (c % 2..=reach).step_by(2)
}

fn row_axis(grid: &TimeGrid) -> Result<TimeGrid> {
    TimeGrid::new(grid.t_start(), 0.5 * grid.dt(), 2 * grid.len() - 1)
}

fn check_nyquist(grid: &TimeGrid, f_axis: &FreqAxis) -> Result<()> {
    let nyquist = 0.5 / grid.dt();
    let tol = 1e-9 * nyquist;
    if f_axis.start() < -nyquist - tol || f_axis.end() > nyquist + tol {
        return Err(Error::Domain(format!(
            "frequency axis [{}, {}] MHz exceeds the Nyquist limit ±{nyquist} MHz of the grid",
            f_axis.start(),
            f_axis.end()
        )));
    }
    Ok(())
}

fn finish(t_axis: TimeGrid, f_axis: FreqAxis, values: Vec<Complex64>) -> Result<WignerMap> {
    let peak = values.iter().fold(0.0_f64, |m, v| m.max(v.re.abs()));
    let residue = values.iter().fold(0.0_f64, |m, v| m.max(v.im.abs()));
    if residue > 1e-10 * peak.max(1e-300) && residue > 1e-300 {
        return Err(Error::Contract(format!(
            "Wigner map has imaginary residue {residue:.3e} against peak {peak:.3e}"
        )));
    }
    WignerMap::new(t_axis, f_axis, values.into_iter().map(|v| v.re).collect())
}

/// Chirp-z evaluation of `dt·Σ_k x_k·e^{−2πi f_j (k − centre)·dt}` on a
/// uniform frequency axis.
struct LagTransform {
    len: usize,
    bins: usize,
    dt: f64,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    pre: Vec<Complex64>,
    kernel: Vec<Complex64>,
    post: Vec<Complex64>,
}

impl LagTransform {
    fn new(len: usize, centre: usize, dt: f64, f_axis: &FreqAxis) -> Self {
        let bins = f_axis.len();
        let size = (len + bins - 1).next_power_of_two();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(size);
        let inverse = planner.plan_fft_inverse(size);

        let beta = f_axis.step() * dt;
        let f0 = f_axis.start();
        // e^{−2πi·k·j·β} = e^{−iπβ(k² + j² − (j − k)²)}
        let half_sq = |n: i64| -> f64 {
            let sq = (n * n) as f64;
            PI * (beta * sq).rem_euclid(2.0)
        };
        let pre = (0..len as i64)
            .map(|k| Complex64::cis(-2.0 * PI * (f0 * k as f64 * dt).rem_euclid(1.0) - half_sq(k)))
            .collect();
        let mut kernel = vec![Complex64::new(0.0, 0.0); size];
        for j in 0..bins as i64 {
            kernel[j as usize] = Complex64::cis(half_sq(j));
        }
        for k in 1..len as i64 {
            kernel[size - k as usize] = Complex64::cis(half_sq(k));
        }
        forward.process(&mut kernel);
        let post = (0..bins)
            .map(|j| {
                let f = f_axis.freq(j);
                let shift = (f * centre as f64 * dt).rem_euclid(1.0);
                Complex64::cis(2.0 * PI * shift - half_sq(j as i64)) * (dt / size as f64)
            })
            .collect();
        Self {
            len,
            bins,
            dt,
            forward,
            inverse,
            pre,
            kernel,
            post,
        }
    }

    fn apply(&self, x: &[Complex64], out: &mut Vec<Complex64>) {
        debug_assert_eq!(x.len(), self.len);
        debug_assert!(self.dt > 0.0);
        let mut buf = vec![Complex64::new(0.0, 0.0); self.kernel.len()];
        for (b, (xv, p)) in buf.iter_mut().zip(x.iter().zip(&self.pre)) {
            *b = xv * p;
        }
        self.forward.process(&mut buf);
        for (b, k) in buf.iter_mut().zip(&self.kernel) {
            *b *= k;
        }
        self.inverse.process(&mut buf);
        out.extend(buf[..self.bins].iter().zip(&self.post).map(|(b, p)| b * p));
    }
}
