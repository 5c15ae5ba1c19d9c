//! Table, JSON and CSV rendering.

use std::fmt::Write as _;

use anyhow::Result;
use glueback::corpus::CorpusEntry;
use glueback::verify::{Status, SuiteReport, VerificationReport};
use serde::Serialize;

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn opt_join<T: ToString>(items: &Option<Vec<T>>, sep: &str) -> String {
    items.as_deref().map(|v| join(v, sep)).unwrap_or_default()
}

#[derive(Serialize)]
struct Row<'a> {
    check: &'a str,
    status: &'a str,
    entry: &'a str,
    mu: &'a str,
    polytope: &'a str,
    v0: String,
    m: String,
    lambda: String,
    step: String,
    components: String,
    cells: String,
    betti: String,
    hrk: String,
    note: String,
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::NotApplicable => "n/a",
    }
}

fn note(r: &VerificationReport) -> String {
    match &r.expected {
        glueback::verify::Expected::NotApplicable { reason } => reason.clone(),
        other => serde_json::to_string(other).unwrap_or_default(),
    }
}

fn row(r: &VerificationReport) -> Row<'_> {
    let c = &r.computed;
    Row {
        check: r.check.name(),
        status: status_name(r.status),
        entry: r.inputs.entry.as_deref().unwrap_or(""),
        mu: r.inputs.mu_name.as_deref().unwrap_or(""),
        polytope: &r.inputs.polytope,
        v0: opt_join(&r.inputs.v0, " "),
        m: r.inputs.m.map(|m| m.to_string()).unwrap_or_default(),
        lambda: opt_join(&r.inputs.lambda, " "),
        step: r.inputs.step.map(|j| j.to_string()).unwrap_or_default(),
        components: c.components.map(|x| x.to_string()).unwrap_or_default(),
        cells: opt_join(&c.cells_per_dim, " "),
        betti: opt_join(&c.betti, " "),
        hrk: c.hrk.map(|x| x.to_string()).unwrap_or_default(),
        note: note(r),
    }
}

pub fn suite_csv(report: &SuiteReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &report.reports {
        w.serialize(row(r))?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn suite_json(report: &SuiteReport) -> Result<String> {
    Ok(serde_json::to_string_pretty(report)? + "\n")
}

/// Counts per check, then every failure with its inputs.
pub fn suite_table(report: &SuiteReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "m={} limit={} seed={}{}",
        report.m,
        report.limit,
        report.seed,
        report
            .lambda
            .as_ref()
            .map(|l| format!(" lambda={}", join(l, ",")))
            .unwrap_or_default()
    );
    let _ = writeln!(out, "{:<12} {:>7} {:>7} {:>7}", "check", "pass", "fail", "n/a");
    for &check in &report.checks {
        let count = |s: Status| report.reports.iter().filter(|r| r.check == check && r.status == s).count();
        let _ = writeln!(
            out,
            "{:<12} {:>7} {:>7} {:>7}",
            check.name(),
            count(Status::Pass),
            count(Status::Fail),
            count(Status::NotApplicable)
        );
    }
    for r in report.reports.iter().filter(|r| r.status == Status::Fail) {
        let _ = writeln!(out, "FAIL {}", serde_json::to_string(r).unwrap_or_default());
    }
    let s = &report.summary;
    let _ = writeln!(
        out,
        "total {}: {} pass, {} fail, {} not applicable",
        s.total, s.passed, s.failed, s.not_applicable
    );
    out
}

#[derive(Serialize)]
struct CorpusRow<'a> {
    name: &'a str,
    n: usize,
    d: usize,
    k: usize,
    vertices: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    v0: Option<Vec<usize>>,
    functions: Vec<Function<'a>>,
}

#[derive(Serialize)]
struct Function<'a> {
    name: &'a str,
    labels: Vec<String>,
}

fn corpus_rows(corpus: &[CorpusEntry]) -> Vec<CorpusRow<'_>> {
    corpus
        .iter()
        .map(|e| CorpusRow {
            name: &e.name,
            n: e.polytope.dim(),
            d: e.polytope.facet_count(),
            k: e.polytope.k(),
            vertices: e.polytope.vertices().len(),
            v0: e.v0.map(|v| v.labels()),
            functions: e
                .mus
                .iter()
                .map(|m| Function {
                    name: &m.name,
                    labels: m.labels.iter().map(ToString::to_string).collect(),
                })
                .collect(),
        })
        .collect()
}

pub fn corpus_json(corpus: &[CorpusEntry]) -> Result<String> {
    Ok(serde_json::to_string_pretty(&corpus_rows(corpus))? + "\n")
}

pub fn corpus_table(corpus: &[CorpusEntry]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<18} {:>2} {:>3} {:>3} {:>5}  functions", "name", "n", "d", "k", "verts");
    for r in corpus_rows(corpus) {
        let fns: Vec<String> = r
            .functions
            .iter()
            .map(|f| format!("{}=({})", f.name, f.labels.join(",")))
            .collect();
        let _ = writeln!(
            out,
            "{:<18} {:>2} {:>3} {:>3} {:>5}  {}",
            r.name,
            r.n,
            r.d,
            r.k,
            r.vertices,
            fns.join(" ")
        );
    }
    out
}

pub fn corpus_csv(corpus: &[CorpusEntry]) -> Result<String> {
    #[derive(Serialize)]
    struct Flat<'a> {
        name: &'a str,
        n: usize,
        d: usize,
        k: usize,
        vertices: usize,
        function: &'a str,
        labels: String,
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in corpus_rows(corpus) {
        for f in &r.functions {
            w.serialize(Flat {
                name: r.name,
                n: r.n,
                d: r.d,
                k: r.k,
                vertices: r.vertices,
                function: f.name,
                labels: f.labels.join(" "),
            })?;
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
