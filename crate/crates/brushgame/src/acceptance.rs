//! The acceptance criteria, grouped into suites.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use brushgame_core::brush_number::brush_number;
use brushgame_core::chips::{chip_bound, chips_play, Adversary};
use brushgame_core::coupling::couple;
use brushgame_core::families::{bouquet, comb_union_seeded, complete, cycle, g_nk, path, star};
use brushgame_core::ode::{ode_constants, ode_f, ode_fprime, ode_rhs};
use brushgame_core::rate::FractionParam;
use brushgame_core::seed::derive;
use brushgame_core::solver::{game_value, SymmetryMode};
use brushgame_core::strategy::{Balanced, Greedy};
use brushgame_core::triangle::{kn_full_cross_check, kn_game_length, simulate_fractional_kn};
use brushgame_core::{BrushState, Graph, Player};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::experiment::experiment;
use crate::records::TrialMode;

const SOLVE_BUDGET: u64 = 50_000_000;
const BRUSH_BUDGET: u64 = 10_000_000;
const ROOT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Exact,
    Asymptotic,
    Fractional,
    Random,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown suite {0:?} (expected exact, asymptotic, fractional, random or all)")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Suite::Exact),
            "asymptotic" => Ok(Suite::Asymptotic),
            "fractional" => Ok(Suite::Fractional),
            "random" => Ok(Suite::Random),
            "all" => Ok(Suite::All),
            _ => Err(UnknownSuite(s.into())),
        }
    }
}

impl Suite {
    pub fn criteria(self) -> &'static [u8] {
        match self {
            Suite::Exact => &[1, 2, 3, 4, 5, 12],
            Suite::Asymptotic => &[6, 7, 8],
            Suite::Fractional => &[9, 10],
            Suite::Random => &[11],
            Suite::All => &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    /// `"7"`, or `"12 (stretch)"` for the optional part of a criterion.
    pub label: String,
    pub title: &'static str,
    pub passed: bool,
    /// Stretch parts are reported but do not decide the exit code.
    pub required: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:<13} {:<28} {:>8.2}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.label,
            self.title,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

pub fn all_required_pass(outcomes: &[Outcome]) -> bool {
    outcomes.iter().filter(|o| o.required).all(|o| o.passed)
}

/// Runs every criterion of `suite` in order.
pub fn run_suite(suite: Suite) -> Vec<Outcome> {
    suite.criteria().iter().flat_map(|&id| run_criterion(id)).collect()
}

pub fn run_criterion(id: u8) -> Vec<Outcome> {
    let start = Instant::now();
    let (title, result): (&'static str, Result<String, String>) = match id {
        1 => ("exact small values", exact_values()),
        2 => ("seeded comb unions", seeded_combs()),
        3 => ("random graph sweep", sweep()),
        4 => ("configuration domination", domination()),
        5 => ("order independence", abelian()),
        6 => ("complete graph cross-checks", nash()),
        7 => ("complete graph asymptotics", asymptotics()),
        8 => ("continuous model", ode()),
        9 => ("chip stacking", chip_stacking()),
        10 => ("fractional scaling", fractional()),
        11 => ("random graphs", random_graphs()),
        12 => return g_nk_values(start),
        _ => ("unknown", Err(format!("no criterion {id}"))),
    };
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    vec![Outcome { label: id.to_string(), title, passed, required: true, detail, elapsed: start.elapsed() }]
}

fn value(g: &Graph, init: &[u64], mover: Player) -> Result<u32, String> {
    let mode = SymmetryMode::None;
    let report = game_value(g, init, mover, mode, SOLVE_BUDGET).map_err(|e| e.to_string())?;
    report.value.ok_or_else(|| format!("solver budget of {SOLVE_BUDGET} positions exhausted"))
}

fn both_values(g: &Graph) -> Result<(u32, u32), String> {
    let zero = vec![0; g.vertex_count()];
    Ok((value(g, &zero, Player::Min)?, value(g, &zero, Player::Max)?))
}

fn expect(what: &str, got: (u32, u32), want: (u32, u32)) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got (b_g, b^_g) = {got:?}, expected {want:?}"))
    }
}

fn exact_values() -> Result<String, String> {
    expect("P3", both_values(&path(3).unwrap())?, (1, 2))?;
    for n in 3..=6 {
        expect(&format!("C{n}"), both_values(&cycle(n).unwrap())?, (3, 2))?;
    }
    for k in 1..=3u32 {
        let leaves = 3 * k as usize - 1;
        expect(&format!("K1,{leaves}"), both_values(&star(leaves).unwrap())?, (2 * k - 1, 2 * k))?;
    }
    Ok("P3, C3..C6, K1,2 K1,5 K1,8 all match".into())
}

fn seeded_combs() -> Result<String, String> {
    let lists: [&[usize]; 5] = [&[2], &[3], &[2, 2], &[2, 3], &[3, 3]];
    for sizes in lists {
        let inst = comb_union_seeded(sizes).map_err(|e| e.to_string())?;
        let want = (sizes.iter().sum::<usize>() - sizes.len()) as u32;
        for mover in [Player::Min, Player::Max] {
            let got = value(&inst.graph, &inst.init, mover)?;
            if got != want {
                return Err(format!("{} with {mover} first: {got}, expected {want}", inst.label));
            }
        }
    }
    Ok("5 unions, both movers".into())
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                g.add_edge(u, v).expect("fresh pair");
            }
        }
    }
    g
}

fn random_connected(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    loop {
        let n = rng.gen_range(2..=max_n);
        let density = rng.gen_range(0.25..0.85);
        let g = random_graph(rng, n, density);
        if g.is_connected() {
            return g;
        }
    }
}

fn sweep() -> Result<String, String> {
    const GRAPHS: u64 = 240;
    let failures: Vec<String> = (0..GRAPHS)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive(ROOT_SEED, 300 + i));
            let g = random_connected(&mut rng, 7);
            let check = || -> Result<(), String> {
                let b = brush_number(&g, BRUSH_BUDGET).map_err(|e| e.to_string())?.value as u32;
                let (bg, bhg) = both_values(&g)?;
                let ok = bg.abs_diff(bhg) <= 1
                    && b <= bg
                    && bg <= (2 * b).saturating_sub(1)
                    && b <= bhg
                    && bhg <= 2 * b;
                if ok {
                    Ok(())
                } else {
                    Err(format!("graph {:?}: b = {b}, b_g = {bg}, b^_g = {bhg}", g.edges()))
                }
            };
            check().err()
        })
        .collect();
    match failures.first() {
        None => Ok(format!("{GRAPHS} connected graphs on at most 7 vertices")),
        Some(f) => Err(format!("{} failures, first {f}", failures.len())),
    }
}

fn domination() -> Result<String, String> {
    const PAIRS: u64 = 150;
    let failures: Vec<String> = (0..PAIRS)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive(ROOT_SEED, 600 + i));
            let n = rng.gen_range(1..=6);
            let g = random_graph(&mut rng, n, 0.5);
            let f: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
            let lower: Vec<u64> = f.iter().map(|&x| rng.gen_range(0..=x)).collect();
            let extra: u32 = f.iter().zip(&lower).map(|(a, b)| (a - b) as u32).sum();
            let check = || -> Result<(), String> {
                for mover in [Player::Min, Player::Max] {
                    let vf = value(&g, &f, mover)?;
                    let vg = value(&g, &lower, mover)?;
                    if !(vf <= vg && vg <= vf + 2 * extra) {
                        return Err(format!("graph {:?}, f {f:?}, g {lower:?}, {mover}: {vf} vs {vg}", g.edges()));
                    }
                }
                Ok(())
            };
            check().err()
        })
        .collect();
    match failures.first() {
        None => Ok(format!("{PAIRS} pairs, both movers")),
        Some(f) => Err(format!("{} failures, first {f}", failures.len())),
    }
}

fn abelian() -> Result<String, String> {
    const INSTANCES: u64 = 1000;
    const ORDERS: usize = 10;
    let failures: Vec<String> = (0..INSTANCES)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive(ROOT_SEED, 1000 + i));
            let n = rng.gen_range(1..=50);
            let density = rng.gen_range(0.02..0.4);
            let g = random_graph(&mut rng, n, density);
            let den = rng.gen_range(2..=6);
            let rational = FractionParam::new(rng.gen_range(1..den), den).expect("a rate in (0, 1)");
            [FractionParam::ONE, rational].into_iter().enumerate().filter_map(move |(j, rate)| {
                let mut rng = ChaCha8Rng::seed_from_u64(derive(derive(ROOT_SEED, 1000 + i), j as u64));
                let mut start = BrushState::with_rate(&g, rate);
                for v in 0..n {
                    let cap = rate.ceil_times(g.degree(v) as u64 + 1) * rate.denom();
                    start.add_units(v, rng.gen_range(0..=cap));
                }
                let mut reference = start.clone();
                reference.stabilize();
                let want = reference.outcome();
                (0..ORDERS).find_map(|_| {
                    let mut s = start.clone();
                    s.stabilize_with(|eligible| rng.gen_range(0..eligible.len()));
                    (s.outcome() != want).then(|| format!("instance {i} at rate {rate}"))
                })
            })
        })
        .collect();
    match failures.first() {
        None => Ok(format!("{INSTANCES} instances x {ORDERS} orders, integer and rational rates")),
        Some(f) => Err(format!("{} mismatches, first {f}", failures.len())),
    }
}

fn nash() -> Result<String, String> {
    let mut solved = Vec::new();
    for n in 2..=5 {
        let g = complete(n).unwrap();
        let report = game_value(&g, &vec![0; n], Player::Min, SymmetryMode::Sorted, SOLVE_BUDGET)
            .map_err(|e| e.to_string())?;
        let v = report.value.ok_or("solver budget exhausted")? as u64;
        if kn_game_length(n) != v {
            return Err(format!("K{n}: column game {} but solver {v}", kn_game_length(n)));
        }
        solved.push(v);
    }
    if solved[..3] != [1, 3, 5] {
        return Err(format!("solver values {solved:?}"));
    }
    if let Some(n) = (3..=200).into_par_iter().find_any(|&n| kn_game_length(n) != kn_full_cross_check(n)) {
        return Err(format!("K{n}: column game {} but full engine {}", kn_game_length(n), kn_full_cross_check(n)));
    }
    Ok(format!("b_g(K2..K5) = {solved:?}; column game = full engine for n = 3..200"))
}

fn asymptotics() -> Result<String, String> {
    let mut detail = Vec::new();
    for (n, tol) in [(5000usize, 0.02), (10000, 0.01)] {
        let ratio = kn_game_length(n) as f64 / ((n * n) as f64 / std::f64::consts::E);
        detail.push(format!("n = {n}: {ratio:.6}"));
        if (ratio - 1.0).abs() > tol {
            return Err(format!("n = {n}: length/(n^2/e) = {ratio:.6}, tolerance {tol}"));
        }
    }
    Ok(detail.join(", "))
}

fn ode() -> Result<String, String> {
    let (t0, f0) = ode_constants();
    let mut worst: f64 = 0.0;
    for k in 0..=9990 {
        let t = k as f64 / 10_000.0;
        let f = ode_f(t).map_err(|e| e.to_string())?;
        let fp = ode_fprime(t).map_err(|e| e.to_string())?;
        worst = worst.max((fp - ode_rhs(t, f)).abs());
    }
    let fp0 = ode_fprime(t0).map_err(|e| e.to_string())?;
    let e_inv = (-1.0f64).exp();
    if worst >= 1e-9 || (f0 - e_inv).abs() > 1e-12 || fp0.abs() > 1e-9 {
        return Err(format!("residual {worst:e}, f(t0) - 1/e = {:e}, f'(t0) = {fp0:e}", f0 - e_inv));
    }
    Ok(format!("max residual {worst:.1e} on 9991 points; t0 = {t0:.9}"))
}

fn chip_stacking() -> Result<String, String> {
    let mut cases = Vec::new();
    for k in [1u64, 2, 5] {
        for n in [10usize, 100, 1000] {
            for adversary in Adversary::ALL {
                for s in 0..5 {
                    cases.push((k, n, adversary, s));
                }
            }
        }
    }
    let violations: Vec<String> = cases
        .par_iter()
        .filter_map(|&(k, n, adversary, s)| {
            let run = chips_play(k, n, adversary, 100_000, derive(ROOT_SEED, s));
            let bound = chip_bound(k, n as u64);
            (run.history_max > bound)
                .then(|| format!("k = {k}, n = {n}, {}: {} > {bound}", adversary.name(), run.history_max))
        })
        .collect();
    match violations.first() {
        None => Ok(format!("{} runs of 100000 rounds, zero violations", cases.len())),
        Some(v) => Err(format!("{} violations, first {v}", violations.len())),
    }
}

fn fractional() -> Result<String, String> {
    let n = 2000;
    let ordinary = kn_game_length(n) as f64;
    let mut detail = Vec::new();
    for (a, b) in [(1, 2), (1, 4)] {
        let p = FractionParam::new(a, b).unwrap();
        let scaled = p.to_f64() * ordinary;
        let err = (simulate_fractional_kn(n, p) as f64 - scaled).abs() / scaled;
        detail.push(format!("p = {p}: relative error {err:.5}"));
        if err > 0.10 {
            return Err(detail.join(", "));
        }
    }
    let graphs = [complete(9).unwrap(), complete(40).unwrap(), cycle(10).unwrap(), g_nk(3, 1).unwrap()];
    for g in &graphs {
        for a_is in [Player::Min, Player::Max] {
            let r = couple(g, FractionParam::ONE, a_is, &mut Greedy, &mut Balanced, ROOT_SEED);
            let clean = r.ordinary_length == r.fractional_length
                && r.oracle_ordinary == 0
                && r.oracle_fractional == Ratio::from_integer(0);
            if !clean {
                return Err(format!("unit-rate coupling diverged: {r:?}"));
            }
        }
    }
    detail.push("unit-rate couplings agree exactly".into());
    Ok(detail.join(", "))
}

fn random_graphs() -> Result<String, String> {
    let n = 1000;
    let mut detail = Vec::new();
    for (i, p) in [0.1, 0.3].into_iter().enumerate() {
        let seed = derive(ROOT_SEED, 2000 + i as u64);
        let heuristic = experiment("accept", n, p, 3, seed, TrialMode::Heuristic).map_err(|e| e.to_string())?;
        for r in &heuristic {
            let ratio = r.ratio.expect("p > 0");
            if (ratio - 1.0).abs() > 0.10 {
                return Err(format!("p = {p}, trial {}: length ratio {ratio:.4}", r.trial));
            }
        }
        let mimic = experiment("accept", n, p, 3, seed, TrialMode::Couple).map_err(|e| e.to_string())?;
        for r in &mimic {
            if r.pause_bound_holds != Some(true) {
                return Err(format!("p = {p}, trial {}: {:?} pauses over bound {:?}", r.trial, r.pause_turns, r.pause_bound));
            }
        }
        let ratios: Vec<String> = heuristic.iter().map(|r| format!("{:.3}", r.ratio.unwrap_or(0.0))).collect();
        detail.push(format!("p = {p}: ratios {}", ratios.join("/")));
    }
    detail.push("pause bound held on all 6 mimic runs".into());
    Ok(detail.join("; "))
}

fn g_nk_values(start: Instant) -> Vec<Outcome> {
    let required = (|| -> Result<String, String> {
        let g = g_nk(3, 1).unwrap();
        let b = brush_number(&g, BRUSH_BUDGET).map_err(|e| e.to_string())?.value;
        let (bg, _) = both_values(&g)?;
        if (b, bg) == (3, 3) {
            Ok("b(G3,1) = 3, b_g(G3,1) = 3".into())
        } else {
            Err(format!("b(G3,1) = {b}, b_g(G3,1) = {bg}"))
        }
    })();
    let first = Outcome {
        label: "12".into(),
        title: "G3,1 brush numbers",
        passed: required.is_ok(),
        required: true,
        detail: required.unwrap_or_else(|e| e),
        elapsed: start.elapsed(),
    };

    let start = Instant::now();
    let stretch = stretch_values();
    let passed = stretch == Ok((4, 9, 8));
    let detail = match stretch {
        Ok((g32, b1, bh1)) => format!("b_g(G3,2) = {g32} (expected 4); bouquet(1): b_g = {b1}, b^_g = {bh1} (expected 9, 8)"),
        Err(e) => e,
    };
    let second = Outcome {
        label: "12 (stretch)".into(),
        title: "G3,2 and bouquet values",
        passed,
        required: false,
        detail,
        elapsed: start.elapsed(),
    };
    vec![first, second]
}

/// `(b_g(G_{3,2}), b_g(bouquet(1)), b̂_g(bouquet(1)))`.
pub fn stretch_values() -> Result<(u32, u32, u32), String> {
    let g32 = value(&g_nk(3, 2).unwrap(), &[0; 12], Player::Min)?;
    let b = bouquet(1).unwrap();
    let zero = vec![0; b.vertex_count()];
    let sorted = |mover| -> Result<u32, String> {
        let r = game_value(&b, &zero, mover, SymmetryMode::Sorted, SOLVE_BUDGET).map_err(|e| e.to_string())?;
        r.value.ok_or_else(|| "budget exhausted".to_string())
    };
    Ok((g32, sorted(Player::Min)?, sorted(Player::Max)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_parse_and_cover_everything() {
        assert_eq!("exact".parse::<Suite>(), Ok(Suite::Exact));
        assert!("bogus".parse::<Suite>().is_err());
        let mut ids: Vec<u8> = [Suite::Exact, Suite::Asymptotic, Suite::Fractional, Suite::Random]
            .iter()
            .flat_map(|s| s.criteria().iter().copied())
            .collect();
        ids.sort();
        assert_eq!(ids, Suite::All.criteria());
    }

    #[test]
    fn unknown_criterion_fails() {
        let out = run_criterion(13);
        assert!(!out[0].passed);
    }

    #[test]
    fn stretch_parts_do_not_decide() {
        let mk = |passed, required| Outcome {
            label: "x".into(),
            title: "t",
            passed,
            required,
            detail: String::new(),
            elapsed: Duration::ZERO,
        };
        assert!(all_required_pass(&[mk(true, true), mk(false, false)]));
        assert!(!all_required_pass(&[mk(false, true), mk(true, false)]));
    }
}
