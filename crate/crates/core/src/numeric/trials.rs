use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::random::{derive_seed, random_spectrum, random_state, SpectrumKind};
use super::{hermitian_eigenvalues, partial_trace};
use crate::error::{Error, Result};
use crate::inequalities::{check_spectra, InequalitySystem};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrialOptions {
    pub kind: SpectrumKind,
    pub tol: f64,
}

impl Default for TrialOptions {
    fn default() -> Self {
        Self {
            kind: SpectrumKind::Hermitian,
            tol: 1e-9,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    /// Seed of this trial's generator, derived from the run seed and `trial`.
    pub seed: u64,
    #[serde(rename = "d_A")]
    pub d_a: usize,
    #[serde(rename = "d_B")]
    pub d_b: usize,
    pub lambda: Vec<f64>,
    pub reduced: Vec<f64>,
    pub trace_gap: f64,
    pub slacks: Vec<f64>,
    /// Indices of violated inequalities.
    pub violations: Vec<usize>,
}

impl TrialRecord {
    pub fn passed(&self, tol: f64) -> bool {
        self.violations.is_empty() && self.trace_gap.abs() <= tol
    }
}

fn run_trial(
    system: &InequalitySystem,
    seed: u64,
    index: u64,
    opts: TrialOptions,
) -> Result<TrialRecord> {
    let (d_a, d_b) = (system.d_a(), system.d_b());
    let trial_seed = derive_seed(seed, index);
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
    let lambda = random_spectrum(d_a * d_b, opts.kind, &mut rng);
    let state = random_state(&lambda, derive_seed(trial_seed, u64::MAX));
    let reduced = hermitian_eigenvalues(&partial_trace(&state, d_a, d_b)?)?;
    let report = check_spectra(&lambda, &reduced, system, opts.tol)?;
    Ok(TrialRecord {
        trial: index,
        seed: trial_seed,
        d_a,
        d_b,
        lambda: lambda.values().to_vec(),
        reduced: reduced.values().to_vec(),
        trace_gap: report.trace_gap,
        slacks: report.slacks,
        violations: report.violations.iter().map(|v| v.index).collect(),
    })
}

/// Samples random spectra, random states with those spectra, and checks
/// the system on each partial trace. Records come back in trial order
/// regardless of how the work was scheduled.
pub fn necessity_trials(
    d_a: usize,
    d_b: usize,
    trials: u64,
    seed: u64,
    system: &InequalitySystem,
    opts: TrialOptions,
) -> Result<Vec<TrialRecord>> {
    if system.d_a() != d_a || system.d_b() != d_b {
        return Err(Error::ContextMismatch(system.d_a(), system.d_b(), d_a, d_b));
    }
    (0..trials)
        .into_par_iter()
        .map(|i| run_trial(system, seed, i, opts))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialSummary {
    pub trials: usize,
    pub failed_trials: usize,
    pub max_trace_gap: f64,
    /// Smallest slack seen for each inequality.
    pub min_slack: Vec<f64>,
}

pub fn summarize(records: &[TrialRecord], tol: f64) -> TrialSummary {
    let width = records.first().map_or(0, |r| r.slacks.len());
    let mut min_slack = vec![f64::INFINITY; width];
    for r in records {
        for (m, s) in min_slack.iter_mut().zip(&r.slacks) {
            *m = m.min(*s);
        }
    }
    TrialSummary {
        trials: records.len(),
        failed_trials: records.iter().filter(|r| !r.passed(tol)).count(),
        max_trace_gap: records.iter().fold(0.0, |m, r| m.max(r.trace_gap.abs())),
        min_slack,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inequalities::{pruned_system, SpectralInequality};

    #[test]
    fn small_run_passes() {
        let s = pruned_system(3, 2).unwrap();
        let records = necessity_trials(3, 2, 50, 1, &s, TrialOptions::default()).unwrap();
        assert_eq!(records.len(), 50);
        assert_eq!(summarize(&records, 1e-9).failed_trials, 0);
    }

    #[test]
    fn reproducible_by_index() {
        let s = pruned_system(2, 2).unwrap();
        let all = necessity_trials(2, 2, 8, 7, &s, TrialOptions::default()).unwrap();
        let again = run_trial(&s, 7, 5, TrialOptions::default()).unwrap();
        assert_eq!(all[5], again);
    }

    #[test]
    fn false_inequality_is_caught() {
        let mut s = pruned_system(2, 2).unwrap();
        s.push(SpectralInequality::new("10".parse().unwrap(), "0110".parse().unwrap()).unwrap())
            .unwrap();
        let records = necessity_trials(2, 2, 100, 3, &s, TrialOptions::default()).unwrap();
        assert!(summarize(&records, 1e-9).failed_trials > 0);
    }

    #[test]
    fn mismatched_system_rejected() {
        let s = pruned_system(2, 2).unwrap();
        assert!(necessity_trials(3, 2, 1, 0, &s, TrialOptions::default()).is_err());
    }
}
