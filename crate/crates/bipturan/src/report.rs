//! JSON documents for search results, certificates, lemma reports and
//! containment checks. Field order is fixed by the struct definitions, so
//! equal values always serialize to identical bytes.

use std::fs;
use std::path::Path;

use bipturan_core::search::Mode;
use bipturan_core::{BipartiteGraph, Certificate, Embedding, Pattern, TuranQuery, TuranResult, VertexRef};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub a: usize,
    pub b: usize,
    pub pattern: Pattern,
    pub mode: Mode,
    /// `null` when no connected pattern-free graph exists, or when the
    /// search was interrupted.
    pub value: Option<usize>,
    /// `false` for an interrupted search; `lower_bound` is then the best
    /// edge count seen.
    pub exact: bool,
    pub lower_bound: Option<usize>,
    pub witness_count: usize,
    pub witnesses: Vec<BipartiteGraph>,
    pub nodes_explored: u64,
    pub elapsed_ms: u64,
}

impl SearchReport {
    pub fn from_result(r: &TuranResult, with_witnesses: bool) -> Self {
        SearchReport {
            a: r.a,
            b: r.b,
            pattern: r.pattern,
            mode: r.mode,
            value: r.value,
            exact: true,
            lower_bound: r.value,
            witness_count: r.witnesses.len(),
            witnesses: if with_witnesses { r.witnesses.clone() } else { Vec::new() },
            nodes_explored: r.nodes_explored,
            elapsed_ms: r.elapsed.as_millis() as u64,
        }
    }

    pub fn interrupted(q: &TuranQuery, lower_bound: Option<usize>, nodes: u64, elapsed_ms: u64) -> Self {
        SearchReport {
            a: q.a,
            b: q.b,
            pattern: q.pattern,
            mode: q.mode,
            value: None,
            exact: false,
            lower_bound,
            witness_count: 0,
            witnesses: Vec::new(),
            nodes_explored: nodes,
            elapsed_ms,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub pattern: Pattern,
    pub free: bool,
    pub spine: Vec<VertexRef>,
    pub leaves: Vec<VertexRef>,
}

impl CheckReport {
    pub fn new(pattern: Pattern, embedding: Option<&Embedding>) -> Self {
        CheckReport {
            pattern,
            free: embedding.is_none(),
            spine: embedding.map(|e| e.spine.clone()).unwrap_or_default(),
            leaves: embedding.map(|e| e.leaves.clone()).unwrap_or_default(),
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types always serialize");
    s.push('\n');
    s
}

pub fn certificate_to_json(cert: &Certificate) -> String {
    to_json(cert)
}

pub fn certificate_from_json(text: &str) -> serde_json::Result<Certificate> {
    serde_json::from_str(text)
}

pub fn read_certificate_file(path: &Path) -> Result<Certificate> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
    certificate_from_json(&text).map_err(|source| Error::Json { path: path.into(), source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use bipturan_core::lemmas::check_endpoint_lemma;
    use bipturan_core::{build_certificate, path_extremal, turan_search};

    #[test]
    fn result_serializes_value() {
        let q = TuranQuery::new(3, 3, Pattern::Path { m: 6 }, Mode::BranchAndBound);
        let r = turan_search(&q).unwrap();
        let json = to_json(&SearchReport::from_result(&r, true));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["value"], 5);
        assert_eq!(v["pattern"], "path:6");
        assert_eq!(v["mode"], "branch-and-bound");
        assert_eq!(v["exact"], true);
        let back: SearchReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.witnesses, r.witnesses);
    }

    #[test]
    fn interrupted_is_flagged() {
        let q = TuranQuery::new(5, 5, Pattern::Path { m: 8 }, Mode::Oracle);
        let v: serde_json::Value = serde_json::from_str(&to_json(&SearchReport::interrupted(&q, Some(12), 9, 1))).unwrap();
        assert_eq!(v["exact"], false);
        assert_eq!(v["value"], serde_json::Value::Null);
        assert_eq!(v["lower_bound"], 12);
    }

    #[test]
    fn certificate_round_trip() {
        let cert = build_certificate(&path_extremal(4, 6, 4).unwrap(), 4).unwrap();
        let json = certificate_to_json(&cert);
        assert_eq!(certificate_from_json(&json).unwrap(), cert);
        assert!(json.contains("\"step\": \"remove_one\""));
        assert!(json.contains("\"victim\": \"B:"));
    }

    #[test]
    fn lemma_report_fields() {
        let r = check_endpoint_lemma(&path_extremal(3, 5, 3).unwrap(), 3).unwrap();
        let v: serde_json::Value = serde_json::from_str(&to_json(&r)).unwrap();
        assert_eq!(v["lemma"], "endpoint");
        assert_eq!(v["hypotheses_met"], true);
        assert_eq!(v["conclusion_holds"], true);
    }
}
