//! Permissibility classification of graph6 corpora into resumable JSON lines.

use std::collections::HashSet;
use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use misnet::graph6::{is_data_line, parse_graph6};
use misnet::permis::{find_permis_with, is_permis, Method, PermisOutcome, SearchOptions};
use misnet::Word;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::report::{tally, Tally};

/// Graphs this large need `allow_long`.
pub const LONG_RUN_VERTICES: usize = 9;

/// Lines classified between checkpoints.
const BATCH: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Permissible,
    NonPermissible,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurveyRecord {
    /// 1-based line number in the input file.
    pub line: usize,
    pub graph6: String,
    pub n: usize,
    pub verdict: Classification,
    pub permis: Option<Word>,
    /// Absent for unknown verdicts.
    pub method: Option<Method>,
    /// Seconds spent on this graph.
    pub elapsed: f64,
}

/// An input line that could not be classified.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorEntry {
    pub line: usize,
    pub input: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Record(SurveyRecord),
    Error(ErrorEntry),
}

impl Entry {
    pub fn line(&self) -> usize {
        match self {
            Entry::Record(r) => r.line,
            Entry::Error(e) => e.line,
        }
    }
}

/// Classifies one graph6 line. Every permis is re-verified before it is
/// recorded.
pub fn classify_line(line: usize, input: &str) -> Entry {
    let error = |e: String| {
        Entry::Error(ErrorEntry {
            line,
            input: input.to_string(),
            error: e,
        })
    };
    let start = Instant::now();
    let g = match parse_graph6(input) {
        Ok(g) => g,
        Err(e) => return error(e.to_string()),
    };
    let opts = SearchOptions {
        parallel: false,
        ..SearchOptions::default()
    };
    let outcome = match find_permis_with(&g, opts) {
        Ok(o) => o,
        Err(e) => return error(e.to_string()),
    };
    let (verdict, permis, method) = match outcome {
        PermisOutcome::Found { permis, method } => {
            match is_permis(&g, &permis) {
                Ok(r) if r.is_permis => {}
                _ => return error("internal: found permutation failed verification".into()),
            }
            (Classification::Permissible, Some(permis), Some(method))
        }
        PermisOutcome::NotPermissible { method } => (Classification::NonPermissible, None, Some(method)),
        PermisOutcome::Unknown { .. } => (Classification::Unknown, None, None),
    };
    Entry::Record(SurveyRecord {
        line,
        graph6: input.to_string(),
        n: g.n(),
        verdict,
        permis,
        method,
        elapsed: start.elapsed().as_secs_f64(),
    })
}

#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    pub input: PathBuf,
    pub output: PathBuf,
    pub resume: bool,
    pub allow_long: bool,
}

/// Data lines of a graph6 file with 1-based line numbers, trimmed.
fn data_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| is_data_line(l))
        .map(|(i, l)| (i + 1, l.trim()))
        .collect()
}

/// Rough single-thread cost per graph, in seconds, by vertex count.
fn estimated_seconds(n: usize) -> f64 {
    match n {
        0..=8 => 1e-5,
        9 => 2e-4,
        10 => 1e-2,
        _ => 1.0,
    }
}

/// Refuses large inputs unless allowed, and warns with an estimate if so.
fn gate_long_run(lines: &[(usize, &str)], allow_long: bool) -> Result<()> {
    let sizes: Vec<usize> = lines
        .iter()
        .filter_map(|(_, l)| parse_graph6(l).ok().map(|g| g.n()))
        .filter(|&n| n >= LONG_RUN_VERTICES)
        .collect();
    if sizes.is_empty() {
        return Ok(());
    }
    let threads = rayon::current_num_threads() as f64;
    let estimate = sizes.iter().map(|&n| estimated_seconds(n)).sum::<f64>() / threads;
    let msg = format!(
        "{} graphs have {LONG_RUN_VERTICES} or more vertices; rough estimate {:.0} s on {threads} threads",
        sizes.len(),
        estimate
    );
    if !allow_long {
        bail!("{msg}; rerun with --allow-long");
    }
    eprintln!("warning: {msg}");
    Ok(())
}

/// Input lines already present in `output`. A trailing partial line from an
/// interrupted run is cut off; any other unreadable line is an error.
fn completed_lines(output: &PathBuf) -> Result<HashSet<usize>> {
    let text = fs::read_to_string(output).with_context(|| format!("reading {}", output.display()))?;
    let keep = text.rfind('\n').map_or(0, |i| i + 1);
    if keep < text.len() {
        let f = OpenOptions::new().write(true).open(output)?;
        f.set_len(keep as u64)?;
    }
    let mut done = HashSet::new();
    for (i, line) in text[..keep].lines().enumerate() {
        let entry: Entry = serde_json::from_str(line)
            .with_context(|| format!("{} line {} is not a survey entry; cannot resume", output.display(), i + 1))?;
        done.insert(entry.line());
    }
    Ok(done)
}

/// Classifies every data line of the input on the current rayon pool,
/// appending one entry per line in input order and flushing per batch.
/// Returns the tally of the whole output file.
pub fn classify(opts: &ClassifyOptions) -> Result<Tally> {
    let text = fs::read_to_string(&opts.input).with_context(|| format!("reading {}", opts.input.display()))?;
    let lines = data_lines(&text);
    gate_long_run(&lines, opts.allow_long)?;

    let done = if opts.output.exists() {
        if !opts.resume {
            bail!("{} exists; pass --resume to continue it", opts.output.display());
        }
        completed_lines(&opts.output)?
    } else {
        HashSet::new()
    };
    let pending: Vec<(usize, &str)> = lines.into_iter().filter(|(i, _)| !done.contains(i)).collect();

    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&opts.output)
        .with_context(|| format!("opening {}", opts.output.display()))?;
    let mut out = BufWriter::new(file);
    for batch in pending.chunks(BATCH) {
        let entries: Vec<Entry> = batch.par_iter().map(|&(i, l)| classify_line(i, l)).collect();
        for e in &entries {
            serde_json::to_writer(&mut out, e)?;
            out.write_all(b"\n")?;
        }
        out.flush()?;
    }
    drop(out);
    let written = fs::read_to_string(&opts.output)?;
    Ok(tally(&written))
}

/// Writes all connected graphs on `min..=max` vertices as graph6 lines.
pub fn generate(min: usize, max: usize, out: &mut impl Write) -> Result<usize> {
    let mut count = 0;
    for n in min..=max {
        for g in misnet::enumerate::connected_graphs(n)? {
            writeln!(out, "{}", misnet::graph6::format_graph6(&g)?)?;
            count += 1;
        }
    }
    Ok(count)
}

/// Creates `path` for writing, refusing to overwrite.
pub fn create_new(path: &PathBuf) -> Result<File> {
    OpenOptions::new()
        .write(true)
        .create_new(true)
        .open(path)
        .with_context(|| format!("creating {}", path.display()))
}
