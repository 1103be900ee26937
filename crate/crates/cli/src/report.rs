//! Tallies of survey output: per-n verdict counts and method histogram.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use anyhow::Result;
use misnet::graph6::parse_graph6;
use misnet::permis::{is_permis, Method};

use crate::survey::{Classification, Entry, SurveyRecord};

/// Connected graphs on `n` vertices, indexed by `n`.
pub const CONNECTED_COUNTS: [usize; 10] = [0, 1, 1, 2, 6, 21, 112, 853, 11117, 261080];

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Row {
    pub total: usize,
    pub permissible: usize,
    pub non_permissible: usize,
    pub unknown: usize,
    pub near_comparability: usize,
    pub search: usize,
    pub tethered_shortcut: usize,
}

impl Row {
    fn add(&mut self, r: &SurveyRecord) {
        self.total += 1;
        match r.verdict {
            Classification::Permissible => self.permissible += 1,
            Classification::NonPermissible => self.non_permissible += 1,
            Classification::Unknown => self.unknown += 1,
        }
        match r.method {
            Some(Method::NearComparability) => self.near_comparability += 1,
            Some(Method::Search) => self.search += 1,
            Some(Method::TetheredShortcut) => self.tethered_shortcut += 1,
            None => {}
        }
    }

    fn merge(&mut self, o: &Row) {
        self.total += o.total;
        self.permissible += o.permissible;
        self.non_permissible += o.non_permissible;
        self.unknown += o.unknown;
        self.near_comparability += o.near_comparability;
        self.search += o.search;
        self.tethered_shortcut += o.tethered_shortcut;
    }

    fn cells(&self) -> [usize; 7] {
        [
            self.total,
            self.permissible,
            self.non_permissible,
            self.unknown,
            self.near_comparability,
            self.search,
            self.tethered_shortcut,
        ]
    }
}

const HEADER: [&str; 8] = [
    "n",
    "total",
    "permissible",
    "non_permissible",
    "unknown",
    "near_comparability",
    "search",
    "tethered_shortcut",
];

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub rows: BTreeMap<usize, Row>,
    /// Input line numbers of error entries.
    pub errors: Vec<usize>,
    /// Output line number (1-based) and reason for each rejected line.
    pub corrupt: Vec<(usize, String)>,
}

impl Tally {
    pub fn all(&self) -> Row {
        let mut all = Row::default();
        for r in self.rows.values() {
            all.merge(r);
        }
        all
    }

    /// Every row for `1..=9` present and matching the connected-graph counts.
    pub fn is_complete_connected_corpus(&self) -> bool {
        !self.rows.is_empty()
            && self
                .rows
                .iter()
                .all(|(&n, r)| n < CONNECTED_COUNTS.len() && r.total == CONNECTED_COUNTS[n])
    }
}

/// Why a record cannot be counted, if it cannot.
fn validate(r: &SurveyRecord) -> Option<String> {
    let g = match parse_graph6(&r.graph6) {
        Ok(g) => g,
        Err(e) => return Some(format!("graph6 does not parse: {e}")),
    };
    if g.n() != r.n {
        return Some(format!("n = {} but the graph has {} vertices", r.n, g.n()));
    }
    match (r.verdict, &r.permis) {
        (Classification::Permissible, None) => Some("permissible without a permis".into()),
        (Classification::Permissible, Some(w)) => match is_permis(&g, w) {
            Ok(rep) if rep.is_permis => None,
            Ok(_) => Some("stored permis does not verify".into()),
            Err(e) => Some(format!("stored permis is invalid: {e}")),
        },
        (_, Some(_)) => Some("permis stored for a graph not classified permissible".into()),
        (Classification::NonPermissible, None) if r.method.is_none() => {
            Some("non-permissible without a method".into())
        }
        _ => None,
    }
}

/// Tallies JSON-lines survey output. Lines that fail to parse, fail
/// re-verification, or repeat an input line are listed and excluded.
pub fn tally(text: &str) -> Tally {
    let mut t = Tally::default();
    let mut seen = HashSet::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let entry: Entry = match serde_json::from_str(line) {
            Ok(e) => e,
            Err(e) => {
                t.corrupt.push((i + 1, format!("not a survey entry: {e}")));
                continue;
            }
        };
        if !seen.insert(entry.line()) {
            t.corrupt.push((i + 1, format!("input line {} appears twice", entry.line())));
            continue;
        }
        match entry {
            Entry::Error(e) => t.errors.push(e.line),
            Entry::Record(r) => match validate(&r) {
                Some(reason) => t.corrupt.push((i + 1, reason)),
                None => t.rows.entry(r.n).or_default().add(&r),
            },
        }
    }
    t.errors.sort_unstable();
    t
}

/// Aligned text table followed by error and corrupt-line notes.
pub fn render_text(t: &Tally) -> String {
    let widths: Vec<usize> = HEADER.iter().map(|h| h.len().max(6)).collect();
    let mut out = String::new();
    let mut line = |cells: &[String]| {
        let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        writeln!(out, "{}", parts.join("  ")).expect("writing to a string");
    };
    line(&HEADER.map(String::from));
    let row_cells = |label: String, r: &Row| {
        std::iter::once(label)
            .chain(r.cells().iter().map(usize::to_string))
            .collect::<Vec<_>>()
    };
    for (n, r) in &t.rows {
        line(&row_cells(n.to_string(), r));
    }
    line(&row_cells("all".into(), &t.all()));
    writeln!(out, "error entries: {}", t.errors.len()).expect("writing to a string");
    if t.is_complete_connected_corpus() {
        writeln!(
            out,
            "per-n totals match the connected-graph counts; {} graphs in all",
            t.all().total
        )
        .expect("writing to a string");
    }
    for (line_no, reason) in &t.corrupt {
        writeln!(out, "corrupt record at line {line_no}: {reason}").expect("writing to a string");
    }
    out
}

/// CSV with one row per `n`.
pub fn render_csv(t: &Tally) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HEADER)?;
    for (n, r) in &t.rows {
        w.write_record(std::iter::once(n.to_string()).chain(r.cells().iter().map(usize::to_string)))?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
