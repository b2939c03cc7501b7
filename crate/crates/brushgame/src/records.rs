//! Run manifests and experiment records.
//!
//! A results file holds one JSON object per line: a manifest line, then the
//! records of that run, each naming the manifest id. Files are only ever
//! appended to. The manifest id hashes the command line, seed, version and
//! input digests, so reruns of the same command produce identical lines apart
//! from `timestamp` and `wall_ms`.

use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of_file(path: &Path) -> io::Result<Self> {
        let bytes = std::fs::read(path)?;
        Ok(InputDigest { path: path.display().to_string(), sha256: hex::encode(Sha256::digest(&bytes)) })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub id: String,
    pub command_line: Vec<String>,
    pub seed: Option<u64>,
    pub version: String,
    pub timestamp: u64,
    pub inputs: Vec<InputDigest>,
}

impl RunManifest {
    pub fn new(command_line: Vec<String>, seed: Option<u64>, inputs: Vec<InputDigest>) -> Self {
        let mut h = Sha256::new();
        for arg in &command_line {
            h.update(arg.as_bytes());
            h.update([0]);
        }
        h.update(seed.map(|s| s.to_le_bytes()).unwrap_or_default());
        h.update(VERSION.as_bytes());
        for input in &inputs {
            h.update(input.sha256.as_bytes());
        }
        let id = hex::encode(&h.finalize()[..8]);
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        RunManifest { id, command_line, seed, version: VERSION.into(), timestamp, inputs }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrialMode {
    Heuristic,
    Couple,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub manifest: String,
    pub mode: TrialMode,
    pub n: usize,
    pub p: f64,
    /// The exact rate used by the imaginary game in couple mode.
    pub rate: Option<String>,
    pub trial: u64,
    pub seed: u64,
    pub edges: usize,
    pub min_strategy: String,
    pub max_strategy: String,
    pub length: u64,
    /// `p·n²/e`.
    pub reference: f64,
    /// `length / reference`, absent when the reference is 0.
    pub ratio: Option<f64>,
    pub pause_turns: Option<u64>,
    /// Twice the discrepancy of the realized firing order, as `A/B`.
    pub pause_bound: Option<String>,
    pub pause_bound_holds: Option<bool>,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Line {
    Manifest(RunManifest),
    Record(ExperimentRecord),
}

/// Appends a manifest and its records to `path`, creating it if needed.
pub fn append(path: &Path, manifest: &RunManifest, records: &[ExperimentRecord]) -> io::Result<()> {
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let mut w = io::BufWriter::new(file);
    serde_json::to_writer(&mut w, &Line::Manifest(manifest.clone()))?;
    writeln!(w)?;
    for r in records {
        serde_json::to_writer(&mut w, &Line::Record(r.clone()))?;
        writeln!(w)?;
    }
    w.flush()
}

pub fn read_lines(path: &Path) -> io::Result<Vec<Line>> {
    let reader = BufReader::new(File::open(path)?);
    reader
        .lines()
        .filter(|l| !matches!(l, Ok(s) if s.trim().is_empty()))
        .map(|l| serde_json::from_str(&l?).map_err(io::Error::from))
        .collect()
}

/// CSV summary: `n,p,trial,mode,length,ratio`.
pub fn write_summary<W: Write>(out: W, records: &[ExperimentRecord]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "p", "trial", "mode", "length", "ratio"])?;
    for r in records {
        let mode = match r.mode {
            TrialMode::Heuristic => "heuristic",
            TrialMode::Couple => "couple",
        };
        w.write_record([
            r.n.to_string(),
            r.p.to_string(),
            r.trial.to_string(),
            mode.to_string(),
            r.length.to_string(),
            r.ratio.map(|x| format!("{x:.6}")).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
