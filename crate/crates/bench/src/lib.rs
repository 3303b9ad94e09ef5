//! Shared fixtures for the benchmarks: default-scale signals and filters.

use fracsense::sensing::design_grid;
use fracsense::{filter_kernel, make_filter_spec, synth_signal, SampledWaveform, SignalSpec, TimeGrid};

pub const DURATION: f64 = 9.6;
pub const AMPLITUDE: f64 = 0.2428;

/// Chirped stimulus and its matched kernel on the shared design grid.
pub fn matched_pair(q1: f64, f1: f64) -> (TimeGrid, SampledWaveform, SampledWaveform) {
    let spec = make_filter_spec(q1, f1, 0.0, DURATION).expect("valid filter");
    let grid = design_grid(&[spec], q1, f1).expect("valid grid");
    let g = synth_signal(&SignalSpec::new(AMPLITUDE, f1, q1, DURATION).expect("valid signal"), &grid)
        .expect("sampled signal");
    let h = filter_kernel(&spec, &grid).expect("sampled kernel");
    (grid, g, h)
}

/// The default 86-point filter frequency grid, 0.9 to 2.6 MHz.
pub fn default_f_grid() -> Vec<f64> {
    (0..86).map(|i| 0.9 + 0.02 * i as f64).collect()
}
