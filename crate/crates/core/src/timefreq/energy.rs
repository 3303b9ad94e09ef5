use super::FrftSpectrum;
use crate::error::{Error, Result};

/// Smallest contiguous `u` interval, grown symmetrically around the
/// cumulative-energy median, holding at least `fraction` of `Σ|F(u)|²·du`.
///
/// Each sample owns the cell between the midpoints to its neighbours; the
/// returned bounds are cell edges clipped to `[u_first, u_last]`.
pub fn energy_interval(spectrum: &FrftSpectrum, fraction: f64) -> Result<(f64, f64)> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::Domain(format!("energy fraction must lie in (0, 1], got {fraction}")));
    }
    let u = spectrum.u_points();
    let n = u.len();
    if spectrum.values().iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::Domain("spectrum has non-finite values".into()));
    }
    if n == 1 {
        return Ok((u[0], u[0]));
    }

    let edge = |i: usize| -> f64 {
        // Left edge of cell i; i == n gives the right edge of the last cell.
        match i {
            0 => u[0] - 0.5 * (u[1] - u[0]),
            i if i == n => u[n - 1] + 0.5 * (u[n - 1] - u[n - 2]),
            i => 0.5 * (u[i - 1] + u[i]),
        }
    };
    let energy: Vec<f64> = spectrum
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| v.norm_sqr() * (edge(i + 1) - edge(i)))
        .collect();
    let total: f64 = energy.iter().sum();
    if !(total > 0.0) {
        return Err(Error::Degenerate("spectrum carries no energy".into()));
    }

    let mut cumulative = 0.0;
    let median = energy
        .iter()
        .position(|e| {
            cumulative += e;
            cumulative >= 0.5 * total
        })
        .unwrap_or(n - 1);

    let target = fraction * total * (1.0 - 1e-12);
    let (mut lo, mut hi) = (median, median);
    let mut held = energy[median];
    while held < target && (lo > 0 || hi + 1 < n) {
        if lo > 0 {
            lo -= 1;
            held += energy[lo];
        }
        if hi + 1 < n {
            hi += 1;
            held += energy[hi];
        }
    }
    Ok((edge(lo).max(u[0]), edge(hi + 1).min(u[n - 1])))
}
