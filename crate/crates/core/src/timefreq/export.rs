use serde_json::{json, Value};

use super::{FrftSpectrum, WignerMap};
use crate::io::csv_document;

/// CSV with one row per `(t, f)` grid point.
pub fn wigner_csv(map: &WignerMap) -> String {
    let t = map.t_axis();
    let f = map.f_axis();
    let rows = (0..t.len()).flat_map(move |i| (0..f.len()).map(move |k| vec![t.time(i), f.freq(k), map.get(i, k)]));
    csv_document(&["t_us", "f_mhz", "value"], rows)
}

/// Grid metadata accompanying [`wigner_csv`].
pub fn wigner_sidecar(map: &WignerMap) -> Value {
    let t = map.t_axis();
    let f = map.f_axis();
    json!({
        "kind": "wigner_map",
        "units": { "t": "us", "f": "MHz" },
        "t_axis": { "start": t.t_start(), "step": t.dt(), "count": t.len() },
        "f_axis": { "start": f.start(), "step": f.step(), "count": f.len() },
        "layout": "row per (t, f), time-major",
    })
}

/// CSV with one row per `u` point: coordinate and complex amplitude.
pub fn spectrum_csv(spectrum: &FrftSpectrum) -> String {
    let rows = spectrum
        .u_points()
        .iter()
        .zip(spectrum.values())
        .map(|(u, v)| vec![*u, v.re, v.im]);
    csv_document(&["u_mhz", "re", "im"], rows)
}

pub fn spectrum_sidecar(spectrum: &FrftSpectrum) -> Value {
    let alpha = spectrum.alpha();
    json!({
        "kind": "frft_spectrum",
        "alpha_rad": alpha,
        "chirp_mhz2": alpha.cos() / alpha.sin(),
        "units": { "u": "MHz (u = f·sin α)", "t": "us" },
        "count": spectrum.u_points().len(),
    })
}
