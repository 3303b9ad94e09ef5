use super::WignerMap;
use crate::error::{Error, Result};

/// Separable Gaussian blur of a map with widths in axis units (µs, MHz).
///
/// Kernels are truncated at 4σ and normalized to unit mass; values beyond
/// the map edges count as zero. A width of zero leaves that axis untouched.
/// Intended for display only.
pub fn smooth(map: &WignerMap, sigma_t: f64, sigma_f: f64) -> Result<WignerMap> {
    if !(sigma_t >= 0.0) || !(sigma_f >= 0.0) {
        return Err(Error::Domain(format!(
            "smoothing widths must be non-negative, got ({sigma_t}, {sigma_f})"
        )));
    }
    let nt = map.t_axis().len();
    let nf = map.f_axis().len();
    let mut values = map.values().to_vec();

    if sigma_f > 0.0 {
        let kernel = gaussian_kernel(sigma_f / map.f_axis().step());
        for row in values.chunks_mut(nf) {
            let out = convolve(row, &kernel);
            row.copy_from_slice(&out);
        }
    }
    if sigma_t > 0.0 {
        let kernel = gaussian_kernel(sigma_t / map.t_axis().dt());
        for k in 0..nf {
            let column: Vec<f64> = (0..nt).map(|i| values[i * nf + k]).collect();
            let out = convolve(&column, &kernel);
            for (i, v) in out.into_iter().enumerate() {
                values[i * nf + k] = v;
            }
        }
    }
    WignerMap::new(*map.t_axis(), *map.f_axis(), values)
}

fn gaussian_kernel(sigma: f64) -> Vec<f64> {
    let radius = (4.0 * sigma).ceil().max(1.0) as i64;
    let raw: Vec<f64> = (-radius..=radius)
        .map(|k| (-0.5 * (k as f64 / sigma).powi(2)).exp())
        .collect();
    let mass: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / mass).collect()
}

fn convolve(x: &[f64], kernel: &[f64]) -> Vec<f64> {
    let radius = (kernel.len() / 2) as i64;
    let n = x.len() as i64;
    (0..n)
        .map(|i| {
            kernel
                .iter()
                .enumerate()
                .filter_map(|(j, w)| {
                    let src = i + j as i64 - radius;
                    (0..n).contains(&src).then(|| w * x[src as usize])
                })
                .sum()
        })
        .collect()
}
