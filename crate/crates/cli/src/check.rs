//! One-off decision queries with a verdict and a JSON certificate.

use anyhow::Result;
use misnet::batch::first_unfixed;
use misnet::decide::{
    dom_fixing_word, fixes_mis, ind_fixing_word, is_constituency, is_district, is_fixing_set, prefixes_mis,
    suffixes_mis, Decision,
};
use misnet::kernelfix::kernel_fixable;
use misnet::permis::{find_permis, is_permis, PermisOutcome};
use misnet::reach::mis_universal;
use misnet::{Config, DiGraph, NetworkKind, VertexSet, Word};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    /// Process exit code: 0 yes, 1 no, 2 unknown.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Yes => 0,
            Verdict::No => 1,
            Verdict::Unknown => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Query {
    Constituency(VertexSet),
    District(VertexSet),
    FixingWord(Word),
    FixingSet(VertexSet),
    /// Verify the given permutation, or search for one when absent.
    Permis(Option<Word>),
    Universal(Config),
    Prefix(Word),
    Suffix(Word),
    KernelFixable,
    IndFixing(Word),
    DomFixing(Word),
}

impl Query {
    pub fn name(&self) -> &'static str {
        match self {
            Query::Constituency(_) => "constituency",
            Query::District(_) => "district",
            Query::FixingWord(_) => "fixing-word",
            Query::FixingSet(_) => "fixing-set",
            Query::Permis(_) => "permis",
            Query::Universal(_) => "universal",
            Query::Prefix(_) => "prefix",
            Query::Suffix(_) => "suffix",
            Query::KernelFixable => "kernel-fixable",
            Query::IndFixing(_) => "ind-fixing",
            Query::DomFixing(_) => "dom-fixing",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Answer {
    pub query: &'static str,
    pub verdict: Verdict,
    pub certificate: Value,
}

fn decision(d: Decision) -> (Verdict, Value) {
    (Verdict::from_bool(d.answer), json!(d.certificate))
}

/// A word fixes a network iff no start configuration ends off a fixed point;
/// the certificate is the smallest such start.
fn fixing(g: &DiGraph, kind: NetworkKind, w: &Word, answer: bool) -> Result<(Verdict, Value)> {
    let witness = if answer { None } else { first_unfixed(g, kind, w)? };
    let certificate = match witness {
        Some(x) => json!({ "kind": "witness_config", "config": x }),
        None => json!({ "kind": "none" }),
    };
    Ok((Verdict::from_bool(answer), certificate))
}

pub fn run_query(g: &DiGraph, q: &Query) -> Result<Answer> {
    let (verdict, certificate) = match q {
        Query::Constituency(s) => decision(is_constituency(g, s)?),
        Query::District(s) => decision(is_district(g, s)?),
        Query::FixingWord(w) => decision(fixes_mis(g, w)?),
        Query::FixingSet(s) => decision(is_fixing_set(g, s)?),
        Query::Prefix(w) => decision(prefixes_mis(g, w)?),
        Query::Suffix(w) => decision(suffixes_mis(g, w)?),
        Query::Universal(x) => {
            let (b, c) = mis_universal(g, x)?;
            (Verdict::from_bool(b), json!(c))
        }
        Query::Permis(Some(w)) => {
            let r = is_permis(g, w)?;
            (Verdict::from_bool(r.is_permis), json!(r))
        }
        Query::Permis(None) => {
            let out = find_permis(g)?;
            let v = match out {
                PermisOutcome::Found { .. } => Verdict::Yes,
                PermisOutcome::NotPermissible { .. } => Verdict::No,
                PermisOutcome::Unknown { .. } => Verdict::Unknown,
            };
            (v, json!(out))
        }
        Query::KernelFixable => {
            let f = kernel_fixable(g)?;
            let v = f.answer().map_or(Verdict::Unknown, Verdict::from_bool);
            (v, json!(f))
        }
        Query::IndFixing(w) => fixing(g, NetworkKind::Independent, w, ind_fixing_word(g, w)?)?,
        Query::DomFixing(w) => fixing(g, NetworkKind::Dominating, w, dom_fixing_word(g, w)?)?,
    };
    Ok(Answer {
        query: q.name(),
        verdict,
        certificate,
    })
}
