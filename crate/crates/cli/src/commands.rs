use std::path::{Path, PathBuf};

use fracsense::checks::{run_all, CheckOutcome};
use fracsense::experiment::{run_spectra, run_stats, ExperimentConfig};
use fracsense::io::{json_document, sig12};
use fracsense::timefreq::{frft, max_dt_for, smooth, spectrum_csv, spectrum_sidecar, wigner, wigner_csv, wigner_sidecar};
use fracsense::{alpha_of_chirp, filter_kernel, flip_times, synth_signal, FilterSpec, FreqAxis, SampledWaveform, SignalSpec, TimeGrid};
use serde_json::{json, Value};
use thiserror::Error;

use crate::args::{Cli, Command, Figure, FilterArgs, FrftArgs, SourceArgs, VerifyArgs, WignerArgs};
use crate::output::OutputWriter;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] fracsense::Error),

    #[error("{0}")]
    Usage(String),

    #[error("{failed} of {total} checks failed")]
    ChecksFailed { failed: usize, total: usize },
}

type Result<T> = std::result::Result<T, CliError>;

pub fn run(cli: Cli) -> Result<()> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot size worker pool: {e}")))?;
    }
    let cfg = load_config(&cli)?;
    let written = match &cli.command {
        Command::Filter(args) => cmd_filter(&cfg, args)?,
        Command::Spectrum => cmd_spectrum(&cfg, &cfg.output_dir, "spectrum")?,
        Command::Stats => cmd_stats(&cfg, &cfg.output_dir, "stats")?,
        Command::Frft(args) => cmd_frft(&cfg, args)?,
        Command::Wigner(args) => cmd_wigner(&cfg, args)?,
        Command::Verify(args) => cmd_verify(&cfg, args)?,
        Command::Reproduce { figure: Figure::Fig3 } => cmd_spectrum(&cfg, &cfg.output_dir.join("fig3"), "reproduce fig3")?,
        Command::Reproduce { figure: Figure::Fig4 } => cmd_stats(&cfg, &cfg.output_dir.join("fig4"), "reproduce fig4")?,
    };
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(())
}

/// Defaults, then the config file, then flags.
fn load_config(cli: &Cli) -> Result<ExperimentConfig> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
            ExperimentConfig::from_json(&text)?
        }
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.noise.seed = seed;
    }
    if let Some(out) = &cli.out {
        cfg.output_dir = out.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn config_value(cfg: &ExperimentConfig) -> Result<Value> {
    Ok(serde_json::from_str(&cfg.canonical_json()?).map_err(fracsense::Error::from)?)
}

const APPROXIMATE_GRIDS: &str =
    "f and q1 grids approximate the unpublished experimental grids; see the defaults table";

fn cmd_filter(cfg: &ExperimentConfig, args: &FilterArgs) -> Result<Vec<PathBuf>> {
    let duration = args.duration.unwrap_or(cfg.signal.duration);
    let spec = FilterSpec::new(args.q, args.f, args.phi, duration)?;
    let pulses = flip_times(&spec);
    let grid = TimeGrid::with_max_step(0.0, duration, max_dt_for(spec.max_frequency()))?;
    let kernel = filter_kernel(&spec, &grid)?;
    let inputs = json!({ "q_mhz2": args.q, "f_j_mhz": args.f, "phi_rad": args.phi, "duration_us": duration });
    let mut out = OutputWriter::new(&cfg.output_dir, "filter", inputs, cfg.noise.seed)?;
    let meta = json!({ "flip_count": pulses.flip_times().len(), "initial_sign": pulses.initial_sign() });
    out.write("filter_pulses.csv", &pulses.to_csv(), meta.clone())?;
    out.write("filter_pulses.json", &pulses.to_json()?, meta)?;
    let kernel_csv = fracsense::io::csv_document(&["t_us", "h"], grid.times().zip(kernel.real_parts()).map(|(t, h)| vec![t, h]));
    out.write("filter_kernel.csv", &kernel_csv, json!({ "dt_us": grid.dt(), "samples": grid.len() }))?;
    Ok(out.written().to_vec())
}

fn cmd_spectrum(cfg: &ExperimentConfig, dir: &Path, command: &str) -> Result<Vec<PathBuf>> {
    let run = run_spectra(cfg)?;
    let mut out = OutputWriter::new(dir, command, config_value(cfg)?, cfg.noise.seed)?;
    let meta = json!({
        "layout": "row per (q1, filter mode, f1, f_j); magnitude = |raw - background| phase (rad)",
        "clamped_contrasts": run.clamp_count(),
        "note": APPROXIMATE_GRIDS,
    });
    out.write("spectra.csv", &run.to_csv(), meta.clone())?;
    out.write("spectrum_peaks.csv", &run.peaks_csv(), meta)?;
    Ok(out.written().to_vec())
}

fn cmd_stats(cfg: &ExperimentConfig, dir: &Path, command: &str) -> Result<Vec<PathBuf>> {
    let run = run_stats(cfg)?;
    let mut out = OutputWriter::new(dir, command, config_value(cfg)?, cfg.noise.seed)?;
    let meta = json!({ "bound_f1_mhz": run.bound_f1, "note": APPROXIMATE_GRIDS });
    out.write("stats.csv", &run.to_csv(), meta.clone())?;
    out.write("stats_report.json", &json_document(&run.report(cfg))?, meta)?;
    Ok(out.written().to_vec())
}

/// The configured signal, or a filter kernel when `--kernel-f` is set, on
/// a grid fine enough for its fastest frequency.
fn source_waveform(cfg: &ExperimentConfig, src: &SourceArgs) -> Result<(SampledWaveform, Value)> {
    let duration = cfg.signal.duration;
    match src.kernel_f {
        Some(f_j) => {
            let spec = FilterSpec::new(src.kernel_q, f_j, src.kernel_phi, duration)?;
            let grid = TimeGrid::with_max_step(0.0, duration, max_dt_for(spec.max_frequency()))?;
            let desc = json!({ "source": "kernel", "q_mhz2": src.kernel_q, "f_j_mhz": f_j, "phi_rad": src.kernel_phi, "duration_us": duration });
            Ok((filter_kernel(&spec, &grid)?, desc))
        }
        None => {
            let f1 = src.f1.unwrap_or(cfg.signal.f1[0]);
            let spec = SignalSpec::new(cfg.signal.amplitude, f1, src.q1, duration)?;
            let grid = TimeGrid::with_max_step(0.0, duration, max_dt_for(spec.max_frequency()))?;
            let desc = json!({ "source": "signal", "amplitude_rad_per_us": cfg.signal.amplitude, "f1_mhz": f1, "q1_mhz2": src.q1, "duration_us": duration });
            Ok((synth_signal(&spec, &grid)?, desc))
        }
    }
}

fn cmd_frft(cfg: &ExperimentConfig, args: &FrftArgs) -> Result<Vec<PathBuf>> {
    let alpha = match (args.alpha, args.order_q) {
        (Some(a), _) => a,
        (None, Some(q)) => alpha_of_chirp(q),
        (None, None) => return Err(CliError::Usage("give the order with --alpha or --order-q".into())),
    };
    if args.u_points < 2 || !(args.u_max > args.u_min) {
        return Err(CliError::Usage("u axis needs u_max > u_min and at least 2 points".into()));
    }
    let (w, mut inputs) = source_waveform(cfg, &args.source)?;
    let step = (args.u_max - args.u_min) / (args.u_points - 1) as f64;
    let u: Vec<f64> = (0..args.u_points).map(|i| args.u_min + step * i as f64).collect();
    let spectrum = frft(&w, alpha, &u)?;
    inputs["alpha_rad"] = json!(alpha);
    inputs["u_axis"] = json!({ "min": args.u_min, "max": args.u_max, "points": args.u_points });
    let mut out = OutputWriter::new(&cfg.output_dir, "frft", inputs, cfg.noise.seed)?;
    out.write("frft.csv", &spectrum_csv(&spectrum), spectrum_sidecar(&spectrum))?;
    Ok(out.written().to_vec())
}

fn cmd_wigner(cfg: &ExperimentConfig, args: &WignerArgs) -> Result<Vec<PathBuf>> {
    let axis = FreqAxis::spanning(args.f_min, args.f_max, args.f_points)?;
    let (w, mut inputs) = source_waveform(cfg, &args.source)?;
    let w = if args.analytic { w.analytic() } else { w };
    let mut map = wigner(&w, &axis)?;
    if args.smooth_t > 0.0 || args.smooth_f > 0.0 {
        map = smooth(&map, args.smooth_t, args.smooth_f)?;
    }
    inputs["f_axis"] = json!({ "min": args.f_min, "max": args.f_max, "points": args.f_points });
    inputs["analytic"] = json!(args.analytic);
    inputs["smoothing"] = json!({ "t_us": args.smooth_t, "f_mhz": args.smooth_f });
    let mut out = OutputWriter::new(&cfg.output_dir, "wigner", inputs, cfg.noise.seed)?;
    out.write("wigner.csv", &wigner_csv(&map), wigner_sidecar(&map))?;
    Ok(out.written().to_vec())
}

fn verify_csv(outcomes: &[CheckOutcome]) -> String {
    let mut s = String::from("check,measured,tolerance,passed\n");
    for o in outcomes {
        s.push_str(&format!("{},{},{},{}\n", o.name.replace(',', ";"), sig12(o.measured), sig12(o.tolerance), o.passed));
    }
    s
}

fn cmd_verify(cfg: &ExperimentConfig, args: &VerifyArgs) -> Result<Vec<PathBuf>> {
    if !(args.perturb_variance >= 0.0) {
        return Err(CliError::Usage("--perturb-variance must be non-negative".into()));
    }
    let outcomes = run_all(args.perturb_variance)?;
    for o in &outcomes {
        println!("{}", o.line());
    }
    let inputs = json!({ "perturb_variance": args.perturb_variance });
    let mut out = OutputWriter::new(&cfg.output_dir, "verify", inputs, cfg.noise.seed)?;
    out.write("verify.csv", &verify_csv(&outcomes), json!({}))?;
    out.write("verify.json", &json_document(&outcomes)?, json!({}))?;
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    for path in out.written() {
        println!("wrote {}", path.display());
    }
    if failed > 0 {
        return Err(CliError::ChecksFailed { failed, total: outcomes.len() });
    }
    Ok(Vec::new())
}
