//! Repeated trials on `G(n, p)`.

use std::time::Instant;

use brushgame_core::random::{couple_kn_mimic, discrepancy_d, gnp, heuristic_length, RandomError};
use brushgame_core::rate::{FractionParam, RateError};
use brushgame_core::seed::derive;
use num_rational::Ratio;
use rayon::prelude::*;
use thiserror::Error;

use crate::records::{ExperimentRecord, TrialMode};

/// Largest denominator of the rate that stands in for a real `p`.
pub const RATE_DENOMINATOR_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Random(#[from] RandomError),
    #[error("couple mode needs a positive rate: {0}")]
    Rate(#[from] RateError),
    #[error("need at least one trial")]
    NoTrials,
}

/// `p·n²/e`.
pub fn reference_length(n: usize, p: f64) -> f64 {
    p * (n as f64) * (n as f64) / std::f64::consts::E
}

/// Trial `i` samples its graph with `derive(seed, i)` and seeds its players
/// with `derive(derive(seed, i), 0)`. Trials run in parallel; records come
/// back in trial order.
pub fn experiment(
    manifest: &str,
    n: usize,
    p: f64,
    trials: u64,
    seed: u64,
    mode: TrialMode,
) -> Result<Vec<ExperimentRecord>, ExperimentError> {
    if trials == 0 {
        return Err(ExperimentError::NoTrials);
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(RandomError::BadProbability(p).into());
    }
    let rate = match mode {
        TrialMode::Couple => Some(FractionParam::closest(p, RATE_DENOMINATOR_CAP)?),
        TrialMode::Heuristic => None,
    };
    (0..trials).into_par_iter().map(|trial| run_trial(manifest, n, p, rate, trial, seed, mode)).collect()
}

fn run_trial(
    manifest: &str,
    n: usize,
    p: f64,
    rate: Option<FractionParam>,
    trial: u64,
    root: u64,
    mode: TrialMode,
) -> Result<ExperimentRecord, ExperimentError> {
    let start = Instant::now();
    let trial_seed = derive(root, trial);
    let sample = gnp(n, p, trial_seed)?;
    let play_seed = derive(trial_seed, 0);
    let (length, pause_turns, pause_bound, holds) = match rate {
        None => (heuristic_length(&sample.graph, play_seed), None, None, None),
        Some(rate) => {
            let run = couple_kn_mimic(&sample.graph, rate, play_seed);
            let bound = discrepancy_d(&sample.graph, &run.firing_order, rate.ratio())? * 2;
            let holds = Ratio::from_integer(run.pause_turns) <= bound;
            (run.length, Some(run.pause_turns), Some(bound.to_string()), Some(holds))
        }
    };
    let reference = reference_length(n, p);
    let (min_strategy, max_strategy) = match mode {
        TrialMode::Heuristic => ("greedy", "balanced"),
        TrialMode::Couple => ("mimic-greedy", "balanced"),
    };
    Ok(ExperimentRecord {
        manifest: manifest.into(),
        mode,
        n,
        p,
        rate: rate.map(|r| r.to_string()),
        trial,
        seed: trial_seed,
        edges: sample.graph.edge_count(),
        min_strategy: min_strategy.into(),
        max_strategy: max_strategy.into(),
        length,
        reference,
        ratio: (reference > 0.0).then(|| length as f64 / reference),
        pause_turns,
        pause_bound,
        pause_bound_holds: holds,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strip_time(mut records: Vec<ExperimentRecord>) -> Vec<ExperimentRecord> {
        for r in &mut records {
            r.wall_ms = 0.0;
        }
        records
    }

    #[test]
    fn empty_edge_probability() {
        let r = experiment("m", 1000, 0.0, 1, 5, TrialMode::Heuristic).unwrap();
        assert_eq!(r[0].length, 0);
        assert_eq!(r[0].ratio, None);
        assert!(matches!(
            experiment("m", 10, 0.0, 1, 5, TrialMode::Couple),
            Err(ExperimentError::Rate(_))
        ));
        assert_eq!(experiment("m", 10, 0.5, 0, 5, TrialMode::Heuristic), Err(ExperimentError::NoTrials));
    }

    #[test]
    fn repeatable() {
        for mode in [TrialMode::Heuristic, TrialMode::Couple] {
            let a = strip_time(experiment("m", 80, 0.3, 4, 11, mode).unwrap());
            let b = strip_time(experiment("m", 80, 0.3, 4, 11, mode).unwrap());
            assert_eq!(a, b);
            assert_eq!(a.iter().map(|r| r.trial).collect::<Vec<_>>(), [0, 1, 2, 3]);
        }
    }

    #[test]
    fn couple_records_carry_the_bound() {
        let r = experiment("m", 120, 0.25, 2, 3, TrialMode::Couple).unwrap();
        for rec in r {
            assert_eq!(rec.rate.as_deref(), Some("1/4"));
            assert_eq!(rec.pause_bound_holds, Some(true));
        }
    }
}
