//! Simulation and analysis of qubit sensing in fractional Fourier domains.
//!
//! Chirped bang-bang decoupling filters ([`filters`]) act on a stimulus
//! through the accumulated phase `Φ = ∫ g·h dt` ([`sensing`]). Time-frequency
//! tools ([`timefreq`]) relate that phase to fractional Fourier transforms and
//! Wigner overlaps, and [`inference`] runs the estimation and detection
//! statistics on simulated records. [`experiment`] drives configured sweeps
//! and [`checks`] bundles the numerical identity checks.
//!
//! Units: µs, MHz, MHz² for chirp rates, rad/µs for signal amplitudes.

pub mod checks;
pub mod error;
pub mod experiment;
pub mod filters;
pub mod inference;
pub mod io;
pub mod rng;
pub mod sensing;
pub mod timefreq;

pub use error::{Error, Result};
pub use filters::{alpha_of_chirp, filter_kernel, flip_times, make_filter_spec, u_alpha_of_f, FilterSpec, PulseSequence};
pub use sensing::{
    accumulated_phase, measure, measure_trial, spectrum_sweep, synth_signal, MeasurementRecord, NoiseModel, SignalSpec,
    SpectrumSweep,
};
pub use timefreq::{FreqAxis, FrftSpectrum, SampledWaveform, TimeGrid, WignerMap};
