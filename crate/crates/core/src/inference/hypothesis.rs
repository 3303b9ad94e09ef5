use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use super::ForwardModel;
use crate::error::{Error, Result};
use crate::sensing::MeasurementRecord;

/// A simple hypothesis: the mean contrast vector under a given `f₁`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub f1: f64,
    pub mean: Vec<f64>,
}

impl Hypothesis {
    pub fn from_model(model: &ForwardModel, amplitude: f64, f1: f64) -> Result<Self> {
        Ok(Self {
            f1,
            mean: model.predict(amplitude, f1)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Decision {
    H0,
    H1,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub decision: Decision,
    /// `f₁` of the chosen hypothesis.
    pub decided_f1: f64,
    /// Log posterior scores (up to a shared constant) for H0 and H1.
    pub scores: [f64; 2],
    /// Whether the decision matches the record's ground truth.
    pub correct: bool,
}

/// MAP decision between two Gaussian hypotheses with the record's noise
/// variance. Score: `ln π_h − ‖c − μ_h‖²/(2σ²)`; ties go to H0. A noiseless
/// record uses `−‖c − μ_h‖²`.
pub fn map_test(record: &MeasurementRecord, h0: &Hypothesis, h1: &Hypothesis, priors: (f64, f64)) -> Result<TestResult> {
    check_priors(priors)?;
    let c = record.contrasts();
    if h0.mean.len() != c.len() || h1.mean.len() != c.len() {
        return Err(Error::Contract("hypothesis means do not match the record length".into()));
    }
    let var = record.noise.variance;
    let sq_dist = |h: &Hypothesis| -> f64 { c.iter().zip(&h.mean).map(|(x, m)| (x - m).powi(2)).sum() };
    // Zero variance takes the σ → 0 limit of the rule: nearest mean wins.
    let score = |h: &Hypothesis, prior: f64| -> f64 {
        if var > 0.0 {
            prior.ln() - sq_dist(h) / (2.0 * var)
        } else {
            -sq_dist(h)
        }
    };
    let scores = [score(h0, priors.0), score(h1, priors.1)];
    let decision = if scores[1] > scores[0] { Decision::H1 } else { Decision::H0 };
    let decided_f1 = match decision {
        Decision::H0 => h0.f1,
        Decision::H1 => h1.f1,
    };
    let truth = record.signal.f1;
    let truth_is_h1 = (truth - h1.f1).abs() < (truth - h0.f1).abs();
    Ok(TestResult {
        decision,
        decided_f1,
        scores,
        correct: truth_is_h1 == (decision == Decision::H1),
    })
}

/// Minimum error probability of the binary test between equal-variance
/// Gaussian hypotheses.
///
/// With `d = ‖μ₁ − μ₀‖/σ` and threshold `η = ln(π₀/π₁)`, the error is
/// `π₀·Q(d/2 + η/d) + π₁·Q(d/2 − η/d)`, `Q(x) = ½·erfc(x/√2)`; equal priors
/// reduce this to `½·erfc(d/(2√2))`.
pub fn bayes_error(h0: &Hypothesis, h1: &Hypothesis, noise_variance: f64, priors: (f64, f64)) -> Result<f64> {
    check_priors(priors)?;
    if h0.mean.len() != h1.mean.len() {
        return Err(Error::Contract("hypothesis means differ in length".into()));
    }
    if !(noise_variance >= 0.0) || !noise_variance.is_finite() {
        return Err(Error::Domain(format!("noise variance must be non-negative, got {noise_variance}")));
    }
    let dist2: f64 = h0.mean.iter().zip(&h1.mean).map(|(a, b)| (a - b).powi(2)).sum();
    if noise_variance == 0.0 {
        // Noiseless: distinct means are told apart without error.
        let total = priors.0 + priors.1;
        return Ok(if dist2 > 0.0 { 0.0 } else { priors.0.min(priors.1) / total });
    }
    Ok(bayes_error_from_distance(dist2.sqrt() / noise_variance.sqrt(), priors))
}

pub(crate) fn bayes_error_from_distance(d: f64, priors: (f64, f64)) -> f64 {
    let total = priors.0 + priors.1;
    let (p0, p1) = (priors.0 / total, priors.1 / total);
    if d == 0.0 {
        return p0.min(p1);
    }
    let q = |x: f64| 0.5 * erfc(x / std::f64::consts::SQRT_2);
    let eta = (p0 / p1).ln();
    p0 * q(d / 2.0 + eta / d) + p1 * q(d / 2.0 - eta / d)
}

fn check_priors(priors: (f64, f64)) -> Result<()> {
    if !(priors.0 > 0.0 && priors.1 > 0.0) || !priors.0.is_finite() || !priors.1.is_finite() {
        return Err(Error::Domain(format!("priors must be positive, got {priors:?}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sensing::{NoiseModel, SignalSpec, MeasurementEntry};
    use crate::filters::make_filter_spec;
    use crate::timefreq::TimeGrid;

    fn record(contrasts: &[f64], f1: f64, variance: f64) -> MeasurementRecord {
        let entries = contrasts
            .iter()
            .enumerate()
            .map(|(k, &c)| MeasurementEntry {
                filter: make_filter_spec(0.0, 1.0 + 0.1 * k as f64, 0.0, 9.6).unwrap(),
                contrast: c,
            })
            .collect();
        MeasurementRecord {
            entries,
            noise: NoiseModel::new(variance, 0).unwrap(),
            signal: SignalSpec::new(0.2, f1, 0.0, 9.6).unwrap(),
            trial: 0,
            grid: TimeGrid::spanning(0.0, 9.6, 10).unwrap(),
        }
    }

    fn hyp(f1: f64, mean: &[f64]) -> Hypothesis {
        Hypothesis { f1, mean: mean.to_vec() }
    }

    #[test]
    fn noiseless_record_under_h1_decides_h1() {
        let h0 = hyp(1.2, &[0.1, 0.9, 1.0]);
        let h1 = hyp(1.3, &[1.0, 0.2, 0.5]);
        let r = map_test(&record(&h1.mean, 1.3, 0.1493), &h0, &h1, (0.5, 0.5)).unwrap();
        assert_eq!(r.decision, Decision::H1);
        assert!(r.correct);
    }

    #[test]
    fn identical_means_tie_to_h0() {
        let h = hyp(1.2, &[0.3, 0.4]);
        let h1 = Hypothesis { f1: 1.3, ..h.clone() };
        let r = map_test(&record(&[0.5, 0.5], 1.3, 0.1), &h, &h1, (0.5, 0.5)).unwrap();
        assert_eq!(r.decision, Decision::H0);
        assert_eq!(r.scores[0], r.scores[1]);
        assert!(!r.correct);
    }

    #[test]
    fn prior_scaling_keeps_decision() {
        let h0 = hyp(1.2, &[0.1, 0.9, 1.0]);
        let h1 = hyp(1.3, &[1.0, 0.2, 0.5]);
        let rec = record(&[0.6, 0.5, 0.8], 1.2, 0.1493);
        let a = map_test(&rec, &h0, &h1, (0.3, 0.7)).unwrap();
        let b = map_test(&rec, &h0, &h1, (3.0, 7.0)).unwrap();
        assert_eq!(a.decision, b.decision);
        assert!((a.scores[0] - a.scores[1] - (b.scores[0] - b.scores[1])).abs() < 1e-12);
    }

    #[test]
    fn identical_means_give_half_error() {
        let h = hyp(1.2, &[0.3, 0.4]);
        assert_eq!(bayes_error(&h, &h, 0.1493, (0.5, 0.5)).unwrap(), 0.5);
        assert!((bayes_error(&h, &h, 0.1493, (0.2, 0.8)).unwrap() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn bayes_error_decreases_with_separation() {
        let mut last = 0.5;
        for k in 1..40 {
            let d = 0.25 * k as f64;
            let p = bayes_error_from_distance(d, (0.5, 0.5));
            assert!(p < last);
            last = p;
        }
        assert!(last < 1e-6);
    }

    #[test]
    fn bayes_error_symmetric_in_hypotheses() {
        let h0 = hyp(1.2, &[0.1, 0.9, 1.0]);
        let h1 = hyp(1.3, &[1.0, 0.2, 0.5]);
        let a = bayes_error(&h0, &h1, 0.5, (0.5, 0.5)).unwrap();
        let b = bayes_error(&h1, &h0, 0.5, (0.5, 0.5)).unwrap();
        assert_eq!(a, b);
        let c = bayes_error(&h0, &h1, 0.5, (0.3, 0.7)).unwrap();
        let d = bayes_error(&h1, &h0, 0.5, (0.7, 0.3)).unwrap();
        assert!((c - d).abs() < 1e-15);
    }

    #[test]
    fn unequal_priors_lower_error() {
        for d in [0.5, 1.0, 2.0] {
            let equal = bayes_error_from_distance(d, (0.5, 0.5));
            let skewed = bayes_error_from_distance(d, (0.1, 0.9));
            assert!(skewed < equal);
            assert!(skewed <= 0.1);
        }
    }
}
