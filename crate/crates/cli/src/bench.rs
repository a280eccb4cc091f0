//! Benchmark harness: runs `<input> <alg>` manifest rows and appends one
//! JSON record per row to a results file.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use vcdim::format::read_input;

use crate::error::CliError;
use crate::run::{self, Alg, Timings};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct RunRecord {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub command: String,
    pub input: String,
    pub input_sha256: Option<String>,
    pub algorithm: String,
    pub status: &'static str,
    pub error: Option<String>,
    pub vc_dimension: Option<i64>,
    pub certificate: Option<Value>,
    pub timings_ns: TimingColumns,
    pub peak_states: u64,
    pub subsets_examined: u64,
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct TimingColumns {
    pub decompose: u64,
    pub solve: u64,
    pub total: u64,
}

struct Row {
    input: PathBuf,
    alg: Alg,
}

fn parse_manifest(text: &str, base: &Path) -> Result<Vec<Row>, CliError> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let input = toks.next().expect("non-empty line");
        let alg = match toks.next() {
            None => Alg::Auto,
            Some(a) => a
                .parse()
                .map_err(|e| CliError::input(format!("manifest line {}: {e}", i + 1)))?,
        };
        if toks.next().is_some() {
            return Err(CliError::input(format!("manifest line {}: expected `<input> [alg]`", i + 1)));
        }
        let path = Path::new(input);
        let input = if path.is_absolute() { path.to_path_buf() } else { base.join(path) };
        rows.push(Row { input, alg });
    }
    Ok(rows)
}

fn run_row(row: &Row, pattern_cap: usize) -> RunRecord {
    let command = format!("vcdim solve --alg {} {}", row.alg, row.input.display());
    let mut record = RunRecord {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION"),
        command,
        input: row.input.display().to_string(),
        input_sha256: None,
        algorithm: row.alg.to_string(),
        status: "failed",
        error: None,
        vc_dimension: None,
        certificate: None,
        timings_ns: TimingColumns::default(),
        peak_states: 0,
        subsets_examined: 0,
    };
    let bytes = match fs::read(&row.input) {
        Ok(b) => b,
        Err(e) => {
            record.error = Some(e.to_string());
            return record;
        }
    };
    record.input_sha256 = Some(hex::encode(Sha256::digest(&bytes)));
    let start = Instant::now();
    let outcome = std::str::from_utf8(&bytes)
        .map_err(|e| CliError::input(e.to_string()))
        .and_then(|text| read_input(text).map_err(CliError::from))
        .and_then(|input| run::solve(&input, row.alg, None, pattern_cap));
    let total = start.elapsed().as_nanos() as u64;
    match outcome {
        Ok(o) => {
            let Timings { decompose_ns, solve_ns } = o.timings;
            record.status = "ok";
            record.vc_dimension = Some(o.document.vc_dimension);
            record.certificate = Some(o.document.to_json());
            record.timings_ns = TimingColumns { decompose: decompose_ns, solve: solve_ns, total };
            record.peak_states = o.stats.peak_states;
            record.subsets_examined = o.stats.subsets_examined;
        }
        Err(e) => {
            record.error = Some(e.message);
            record.timings_ns.total = total;
        }
    }
    record
}

pub fn run(manifest: &Path, results: &Path, jobs: usize, pattern_cap: usize) -> Result<(), CliError> {
    let text = fs::read_to_string(manifest).map_err(|e| CliError::input(format!("{}: {e}", manifest.display())))?;
    let base = manifest.parent().unwrap_or(Path::new("."));
    let rows = parse_manifest(&text, base)?;
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(results)
        .map_err(|e| CliError::input(format!("{}: {e}", results.display())))?;
    let writer = Mutex::new(file);
    let slots: Vec<Mutex<Option<RunRecord>>> = rows.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let write_error: Mutex<Option<std::io::Error>> = Mutex::new(None);

    std::thread::scope(|s| {
        for _ in 0..jobs.max(1).min(rows.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(row) = rows.get(i) else { break };
                let record = run_row(row, pattern_cap);
                let mut line = serde_json::to_string(&record).expect("records serialize");
                line.push('\n');
                {
                    let mut f = writer.lock().expect("writer lock");
                    if let Err(e) = f.write_all(line.as_bytes()) {
                        write_error.lock().expect("error lock").get_or_insert(e);
                    }
                }
                *slots[i].lock().expect("slot lock") = Some(record);
            });
        }
    });
    if let Some(e) = write_error.into_inner().expect("error lock") {
        return Err(CliError::input(format!("{}: {e}", results.display())));
    }

    println!("{:<40} {:<13} {:<7} {:>5} {:>12} {:>12}", "input", "algorithm", "status", "vc", "peak_states", "time_ms");
    for slot in slots {
        let r = slot.into_inner().expect("slot lock").expect("every row ran");
        let vc = r.vc_dimension.map_or("-".to_string(), |v| v.to_string());
        println!(
            "{:<40} {:<13} {:<7} {:>5} {:>12} {:>12.3}",
            r.input,
            r.algorithm,
            r.status,
            vc,
            r.peak_states,
            r.timings_ns.total as f64 / 1e6
        );
        if let Some(e) = &r.error {
            println!("  error: {e}");
        }
    }
    Ok(())
}
