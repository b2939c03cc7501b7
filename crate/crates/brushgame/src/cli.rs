//! Command-line front end.
//!
//! Every subcommand accepts `--config FILE`: `key=value` lines that mirror
//! the long flags (`budget=1000` for `--budget 1000`, `transcript=true` for a
//! bare switch). Flags given on the command line win over the file.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 budget exceeded, 3 an
//! internal invariant failed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use brushgame_core::chips::{chip_bound, chips_play, Adversary};
use brushgame_core::coupling::{couple, ROUND_SLACK};
use brushgame_core::families;
use brushgame_core::solver::{game_value, SolveError, SymmetryMode};
use brushgame_core::strategy::{run_match_with_rate, Balanced, Greedy, StrategyKind};
use brushgame_core::triangle::{
    kn_full_cross_check, kn_game_length, simulate_fractional_kn, simulate_triangle, ColumnStrategy,
};
use brushgame_core::{Graph, Player};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::json;
use thiserror::Error;

use crate::acceptance::{all_required_pass, run_suite, Suite};
use crate::experiment::experiment;
use crate::format::{parse_config, parse_edge_list, parse_rate, write_config, write_edge_list, FormatError};
use crate::records::{append, write_summary, InputDigest, RunManifest, TrialMode};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error("{0}")]
    Budget(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Format { .. } => 1,
            CliError::Budget(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

#[derive(Debug, Parser)]
#[command(name = "brushgame", version, about = "Graph brushing games: exact solving, simulation and experiments")]
#[command(args_override_self = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a named graph family as an edge list.
    Families(FamiliesArgs),
    /// Play one game between two strategies.
    Play(PlayArgs),
    /// Solve a game exactly.
    Solve(SolveArgs),
    /// Greedy Min against balanced Max on complete graphs.
    Kn(KnArgs),
    /// The fractional game on a complete graph.
    Frac(FracArgs),
    /// The chip-stacking game against one adversary.
    Chips(ChipsArgs),
    /// Couple an ordinary game with a fractional one.
    Couple(CoupleArgs),
    /// Trials on random graphs.
    Random(RandomArgs),
    /// Run an acceptance suite: exact, asymptotic, fractional, random or all.
    Accept(AcceptArgs),
}

#[derive(Debug, Args)]
struct Common {
    /// key=value lines mirroring the long flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    Path,
    Cycle,
    Star,
    Complete,
    Comb,
    Sunlet,
    GNk,
    Bouquet,
    CombUnion,
}

#[derive(Debug, Args)]
struct FamiliesArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Vertex count (leaves for a star, spine length for combs and sunlets).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Comb sizes for comb-union, comma separated.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    /// Where to write the edge list (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where to write the seeded configuration of comb-union.
    #[arg(long)]
    config_out: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum First {
    Min,
    Max,
}

impl From<First> for Player {
    fn from(f: First) -> Player {
        match f {
            First::Min => Player::Min,
            First::Max => Player::Max,
        }
    }
}

#[derive(Debug, Args)]
struct PlayArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    init: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "min")]
    first: First,
    #[arg(long, default_value = "greedy")]
    min_strategy: String,
    #[arg(long, default_value = "balanced")]
    max_strategy: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Firing rate `A/B` for the fractional game.
    #[arg(long, default_value = "1/1")]
    p: String,
    /// Also emit one record per move.
    #[arg(long)]
    transcript: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Symmetry {
    None,
    Sorted,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    init: Option<PathBuf>,
    #[arg(long, value_enum)]
    first: First,
    #[arg(long, value_enum, default_value = "none")]
    symmetry: Symmetry,
    /// Most positions to memoize before giving up.
    #[arg(long, default_value_t = 50_000_000)]
    budget: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Model {
    Triangle,
    Full,
}

#[derive(Debug, Args)]
struct KnArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value = "triangle")]
    model: Model,
    /// Board width, height and opening Max turns for the bare column game.
    #[arg(long, requires_all = ["h", "t"])]
    w: Option<usize>,
    #[arg(long, requires_all = ["w", "t"])]
    h: Option<usize>,
    #[arg(long, requires_all = ["w", "h"])]
    t: Option<u64>,
    /// `FROM,TO,STEP`: emit CSV rows for every n in the range.
    #[arg(long, value_delimiter = ',')]
    sweep: Vec<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct FracArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct ChipsArgs {
    #[arg(long)]
    k: u64,
    #[arg(long)]
    piles: usize,
    /// stack-one, spread, target-second-largest or random.
    #[arg(long)]
    adversary: String,
    #[arg(long, default_value_t = 100_000)]
    rounds: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct CoupleArgs {
    #[arg(long, conflicts_with = "kn")]
    graph: Option<PathBuf>,
    #[arg(long)]
    kn: Option<usize>,
    #[arg(long)]
    p: String,
    /// The player whose strategy is transferred from the ordinary game.
    #[arg(long, value_enum, default_value = "min")]
    a: First,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Heuristic,
    Couple,
}

#[derive(Debug, Args)]
struct RandomArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 1)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "heuristic")]
    mode: Mode,
    /// Record file to append to.
    #[arg(long, default_value = "results.jsonl")]
    results: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct AcceptArgs {
    suite: String,
    #[command(flatten)]
    common: Common,
}

/// Inserts the pairs from `--config FILE` right after the subcommand name so
/// that later command-line flags override them.
fn expand_config(argv: Vec<String>) -> Result<Vec<String>, CliError> {
    let mut path = None;
    let mut rest = Vec::with_capacity(argv.len());
    let mut it = argv.into_iter();
    while let Some(arg) = it.next() {
        if arg == "--config" {
            path = Some(it.next().ok_or_else(|| usage("--config needs a file"))?);
        } else if let Some(p) = arg.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(arg);
        }
    }
    let Some(path) = path else { return Ok(rest) };
    let path = PathBuf::from(path);
    let text = fs::read_to_string(&path).map_err(io_err(&path))?;
    let mut pairs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("{}:{}: expected key=value", path.display(), i + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        match value {
            "true" => pairs.push(format!("--{key}")),
            "false" => {}
            _ => pairs.extend([format!("--{key}"), value.to_string()]),
        }
    }
    // argv[0], then the subcommand
    let at = rest.len().min(2);
    rest.splice(at..at, pairs);
    Ok(rest)
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// exit code.
pub fn dispatch(argv: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let args = match expand_config(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match run(cli, &args, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn run(cli: Cli, argv: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let w = |r: std::io::Result<()>| r.map_err(io_err(Path::new("<stdout>")));
    match cli.command {
        Command::Families(a) => families_cmd(a, out),
        Command::Play(a) => play_cmd(a, out),
        Command::Solve(a) => solve_cmd(a, out),
        Command::Kn(a) => kn_cmd(a, out),
        Command::Frac(a) => {
            let p = parse_rate(&a.p).map_err(usage)?;
            let frac = simulate_fractional_kn(a.n, p);
            let scaled = p.to_f64() * kn_game_length(a.n) as f64;
            let rel = if scaled > 0.0 { (frac as f64 - scaled).abs() / scaled } else { 0.0 };
            w(writeln!(out, "length {frac}\nscaled_ordinary {scaled}\nrelative_difference {rel:.6}"))?;
            Ok(0)
        }
        Command::Chips(a) => {
            let adversary = Adversary::from_name(&a.adversary).map_err(usage)?;
            if a.k == 0 || a.piles == 0 {
                return Err(usage("need --k >= 1 and --piles >= 1"));
            }
            let run = chips_play(a.k, a.piles, adversary, a.rounds, a.seed);
            let bound = chip_bound(a.k, a.piles as u64);
            w(writeln!(out, "history_max {}\nbound {bound}", run.history_max))?;
            if run.history_max > bound {
                return Err(CliError::Invariant(format!("pile reached {} above {bound}", run.history_max)));
            }
            Ok(0)
        }
        Command::Couple(a) => couple_cmd(a, out),
        Command::Random(a) => random_cmd(a, argv, out),
        Command::Accept(a) => {
            let suite: Suite = a.suite.parse().map_err(usage)?;
            let outcomes = run_suite(suite);
            for o in &outcomes {
                w(writeln!(out, "{o}"))?;
            }
            Ok(if all_required_pass(&outcomes) { 0 } else { 3 })
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_edge_list(&text).map_err(|source| CliError::Format { path: path.to_path_buf(), source })
}

fn read_init(path: Option<&Path>, g: &Graph) -> Result<Vec<u64>, CliError> {
    match path {
        None => Ok(vec![0; g.vertex_count()]),
        Some(path) => {
            let text = fs::read_to_string(path).map_err(io_err(path))?;
            parse_config(&text, g.vertex_count())
                .map_err(|source| CliError::Format { path: path.to_path_buf(), source })
        }
    }
}

fn write_to(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(io_err(p)),
        None => out.write_all(text.as_bytes()).map_err(io_err(Path::new("<stdout>"))),
    }
}

fn families_cmd(a: FamiliesArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let need = |x: Option<usize>, flag: &str| x.ok_or_else(|| usage(format!("this family needs --{flag}")));
    let (graph, init) = match a.family {
        Family::Path => (families::path(need(a.n, "n")?), None),
        Family::Cycle => (families::cycle(need(a.n, "n")?), None),
        Family::Star => (families::star(need(a.n, "n")?), None),
        Family::Complete => (families::complete(need(a.n, "n")?), None),
        Family::Comb => (families::comb(need(a.n, "n")?), None),
        Family::Sunlet => (families::sunlet(need(a.n, "n")?), None),
        Family::GNk => (families::g_nk(need(a.n, "n")?, need(a.k, "k")?), None),
        Family::Bouquet => (families::bouquet(need(a.k, "k")?), None),
        Family::CombUnion => {
            let inst = families::comb_union_seeded(&a.sizes).map_err(usage)?;
            (Ok(inst.graph), Some(inst.init))
        }
    };
    let graph = graph.map_err(usage)?;
    if a.config_out.is_some() && init.is_none() {
        return Err(usage("only comb-union has a seeded configuration"));
    }
    write_to(a.out.as_deref(), &write_edge_list(&graph), out)?;
    if let (Some(path), Some(init)) = (a.config_out.as_deref(), init) {
        write_to(Some(path), &write_config(&init), out)?;
    }
    Ok(0)
}

fn strategy(name: &str) -> Result<StrategyKind, CliError> {
    StrategyKind::from_name(name)
        .ok_or_else(|| usage(format!("unknown strategy {name:?} (greedy, balanced, random or optimal)")))
}

fn play_cmd(a: PlayArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let graph = read_graph(&a.graph)?;
    let init = read_init(a.init.as_deref(), &graph)?;
    let rate = parse_rate(&a.p).map_err(usage)?;
    let (min_kind, max_kind) = (strategy(&a.min_strategy)?, strategy(&a.max_strategy)?);
    let (mut min, mut max) = (min_kind.build(), max_kind.build());
    let outcome = run_match_with_rate(&graph, rate, &init, min.as_mut(), max.as_mut(), a.first.into(), a.seed)
        .map_err(|e| CliError::Invariant(e.to_string()))?;
    let line = |v: serde_json::Value, out: &mut dyn Write| {
        writeln!(out, "{v}").map_err(io_err(Path::new("<stdout>")))
    };
    if a.transcript {
        for (turn, (player, v)) in outcome.transcript.iter().enumerate() {
            line(json!({"kind": "move", "turn": turn + 1, "player": player.name(), "vertex": v}), out)?;
        }
    }
    line(
        json!({
            "kind": "game",
            "length": outcome.length,
            "first": Player::from(a.first).name(),
            "min_strategy": min_kind.name(),
            "max_strategy": max_kind.name(),
            "rate": rate.to_string(),
            "seed": a.seed,
        }),
        out,
    )?;
    Ok(0)
}

fn solve_cmd(a: SolveArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let path = a.graph.ok_or_else(|| usage("solve needs --graph FILE"))?;
    let graph = read_graph(&path)?;
    let init = read_init(a.init.as_deref(), &graph)?;
    let mode = match a.symmetry {
        Symmetry::None => SymmetryMode::None,
        Symmetry::Sorted => SymmetryMode::Sorted,
    };
    let report = game_value(&graph, &init, a.first.into(), mode, a.budget).map_err(|e| match e {
        SolveError::BudgetExceeded(_) => CliError::Budget(e.to_string()),
        _ => usage(e),
    })?;
    let w = |r: std::io::Result<()>| r.map_err(io_err(Path::new("<stdout>")));
    match report.value {
        Some(v) => {
            w(writeln!(out, "{v}"))?;
            let principal = report.principal_move.map_or("none".to_string(), |m| m.to_string());
            w(writeln!(out, "principal_move {principal}\npositions_explored {}", report.positions_explored))?;
            Ok(0)
        }
        None => Err(CliError::Budget(format!(
            "budget of {} positions exhausted after exploring {}",
            a.budget, report.positions_explored
        ))),
    }
}

fn kn_cmd(a: KnArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let w = |r: std::io::Result<()>| r.map_err(io_err(Path::new("<stdout>")));
    let length_of = |n: usize| match a.model {
        Model::Triangle => kn_game_length(n),
        Model::Full => kn_full_cross_check(n),
    };
    let inv_e = (-1.0f64).exp();
    if let (Some(bw), Some(bh), Some(bt)) = (a.w, a.h, a.t) {
        let len = simulate_triangle(bw, bh, bt, ColumnStrategy::Greedy, ColumnStrategy::Balanced);
        w(writeln!(out, "length {len}"))?;
        return Ok(0);
    }
    if !a.sweep.is_empty() {
        let [from, to, step] = a.sweep[..] else {
            return Err(usage("--sweep takes FROM,TO,STEP"));
        };
        if from == 0 || step == 0 || from > to {
            return Err(usage("--sweep needs 1 <= FROM <= TO and STEP >= 1"));
        }
        w(writeln!(out, "n,length,ratio"))?;
        for n in (from..=to).step_by(step) {
            let len = length_of(n);
            w(writeln!(out, "{n},{len},{:.8}", len as f64 / (n * n) as f64))?;
        }
        return Ok(0);
    }
    let n = a.n.ok_or_else(|| usage("kn needs --n N, --sweep FROM,TO,STEP or --w/--h/--t"))?;
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let len = length_of(n);
    let ratio = len as f64 / (n * n) as f64;
    w(writeln!(out, "length {len}\nratio {ratio:.8}\nreference {inv_e:.8}"))?;
    Ok(0)
}

fn couple_cmd(a: CoupleArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let graph = match (a.graph, a.kn) {
        (Some(path), None) => read_graph(&path)?,
        (None, Some(n)) => families::complete(n).map_err(usage)?,
        _ => return Err(usage("couple needs exactly one of --graph FILE and --kn N")),
    };
    let rate = parse_rate(&a.p).map_err(usage)?;
    let a_is: Player = a.a.into();
    let r = match a_is {
        Player::Min => couple(&graph, rate, a_is, &mut Greedy, &mut Balanced, a.seed),
        Player::Max => couple(&graph, rate, a_is, &mut Balanced, &mut Greedy, a.seed),
    };
    let w = |r: std::io::Result<()>| r.map_err(io_err(Path::new("<stdout>")));
    w(writeln!(
        out,
        "ordinary_length {}\nfractional_length {}\noracle_ordinary {}\noracle_fractional {}\n\
         max_d_a {}\nmin_d_b {}\nlength_gap {}",
        r.ordinary_length,
        r.fractional_length,
        r.oracle_ordinary,
        r.oracle_fractional,
        r.max_d_a,
        r.min_d_b,
        r.length_gap()
    ))?;
    if r.allowance_violations > 0 || r.ledger_failures > 0 {
        return Err(CliError::Invariant(format!(
            "{} allowance violations, {} ledger failures",
            r.allowance_violations, r.ledger_failures
        )));
    }
    let gap = r.length_gap();
    let slack = r.oracle_total() + Ratio::from_integer(ROUND_SLACK);
    if gap > slack || -gap > slack {
        return Err(CliError::Invariant(format!("length gap {gap} exceeds oracle total plus {ROUND_SLACK}")));
    }
    Ok(0)
}

fn random_cmd(a: RandomArgs, argv: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let mode = match a.mode {
        Mode::Heuristic => TrialMode::Heuristic,
        Mode::Couple => TrialMode::Couple,
    };
    let inputs: Vec<InputDigest> = match &a.common.config {
        Some(p) => vec![InputDigest::of_file(p).map_err(io_err(p))?],
        None => Vec::new(),
    };
    let manifest = RunManifest::new(argv[1..].to_vec(), Some(a.seed), inputs);
    let records = experiment(&manifest.id, a.n, a.p, a.trials, a.seed, mode).map_err(usage)?;
    append(&a.results, &manifest, &records).map_err(io_err(&a.results))?;
    write_summary(&mut *out, &records).map_err(|e| usage(format!("writing summary: {e}")))?;
    if let Some(r) = records.iter().find(|r| r.pause_bound_holds == Some(false)) {
        return Err(CliError::Invariant(format!("trial {} paused more than the bound allows", r.trial)));
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn config_pairs_come_before_flags() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("c.conf");
        fs::write(&cfg, "# defaults\nbudget = 10\ntranscript=true\nquiet=false\n").unwrap();
        let expanded =
            expand_config(argv(&format!("bg solve --config {} --budget 20", cfg.display()))).unwrap();
        assert_eq!(expanded, argv("bg solve --budget 10 --transcript --budget 20"));
        assert!(expand_config(argv("bg solve --config")).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 1);
        assert_eq!(CliError::Budget("x".into()).exit_code(), 2);
        assert_eq!(CliError::Invariant("x".into()).exit_code(), 3);
    }

    #[test]
    fn kn_and_frac_output() {
        let mut out = Vec::new();
        assert_eq!(dispatch(argv("bg kn --n 4"), &mut out, &mut Vec::new()), 0);
        assert!(String::from_utf8(out).unwrap().starts_with("length 5\n"));
        let mut out = Vec::new();
        assert_eq!(dispatch(argv("bg kn --sweep 2,4,1 --model full"), &mut out, &mut Vec::new()), 0);
        assert_eq!(String::from_utf8(out).unwrap().lines().count(), 4);
        let mut out = Vec::new();
        assert_eq!(dispatch(argv("bg frac --n 2 --p 1/2"), &mut out, &mut Vec::new()), 0);
        assert!(String::from_utf8(out).unwrap().starts_with("length 1\n"));
        assert_eq!(dispatch(argv("bg frac --n 2 --p 0/2"), &mut Vec::new(), &mut Vec::new()), 1);
    }
}
