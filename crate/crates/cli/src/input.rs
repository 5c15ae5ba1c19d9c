//! Loading polytopes, labels and subgroups from files or the built-in corpus.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use glueback::coloring::ColoringDoc;
use glueback::corpus::{lookup, CorpusEntry, NamedLabels};
use glueback::polytope::parse_polytope;
use glueback::{BitVector, FacetSet, SimplePolytope};
use serde::Deserialize;

const BUILTIN: &str = "builtin:";

/// A polytope and, when it came from the corpus, its entry.
pub struct Loaded {
    pub polytope: Arc<SimplePolytope>,
    pub entry: Option<CorpusEntry>,
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(Path::new(path)).with_context(|| format!("{path}: cannot read"))
}

/// `builtin:NAME` or a JSON file. Unknown fields are reported on stderr, or
/// rejected with `strict`.
pub fn load_polytope(arg: &str, strict: bool) -> Result<Loaded> {
    if let Some(name) = arg.strip_prefix(BUILTIN) {
        let entry = lookup(name).ok_or_else(|| anyhow!("no built-in polytope {name:?}; see `glueback corpus`"))?;
        return Ok(Loaded {
            polytope: entry.polytope.clone(),
            entry: Some(entry),
        });
    }
    let parsed = parse_polytope(&read(arg)?, strict).with_context(|| arg.to_string())?;
    for w in &parsed.warnings {
        eprintln!("warning: {arg}: {w}");
    }
    Ok(Loaded {
        polytope: Arc::new(parsed.value),
        entry: None,
    })
}

/// `builtin:NAME` (a function of the built-in polytope) or a coloring file
/// `{"r": .., "labels": [..]}`.
pub fn load_labels(arg: &str, polytope: &Loaded) -> Result<NamedLabels> {
    if let Some(name) = arg.strip_prefix(BUILTIN) {
        let entry = polytope
            .entry
            .as_ref()
            .ok_or_else(|| anyhow!("{arg}: built-in labels need a built-in polytope"))?;
        let found = entry.mu(name).ok_or_else(|| {
            let names: Vec<&str> = entry.mus.iter().map(|m| m.name.as_str()).collect();
            anyhow!("{} has no function {name:?}; available: {}", entry.name, names.join(", "))
        })?;
        return Ok(found.clone());
    }
    let doc: ColoringDoc =
        serde_json::from_str(&read(arg)?).with_context(|| format!("{arg}: schema error"))?;
    let coloring = doc.to_coloring().with_context(|| arg.to_string())?;
    Ok(NamedLabels {
        name: Path::new(arg)
            .file_stem()
            .map_or_else(|| arg.to_string(), |s| s.to_string_lossy().into_owned()),
        labels: coloring.labels().to_vec(),
    })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum LambdaDoc {
    Bare(Vec<String>),
    Full {
        lambda: Vec<String>,
        #[serde(default)]
        m: Option<usize>,
    },
}

/// Panel colors: `["01", "10"]` or `{"lambda": [...], "m": 2}`. Returns `m`
/// when stated or implied by the strings.
pub fn load_lambda(path: &str) -> Result<(Option<usize>, Vec<BitVector>)> {
    let doc: LambdaDoc = serde_json::from_str(&read(path)?)
        .with_context(|| format!("{path}: schema error: expected a list of bit strings or {{\"lambda\": [...]}}"))?;
    let (strings, m) = match doc {
        LambdaDoc::Bare(s) => (s, None),
        LambdaDoc::Full { lambda, m } => (lambda, m),
    };
    let lambda = strings
        .iter()
        .map(|s| s.parse::<BitVector>())
        .collect::<Result<Vec<_>, _>>()
        .with_context(|| path.to_string())?;
    let m = m.or_else(|| lambda.first().map(|l| l.width()));
    if let Some(m) = m {
        if let Some(bad) = lambda.iter().find(|l| l.width() != m) {
            bail!("{path}: color {bad} does not have width {m}");
        }
    }
    Ok((m, lambda))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SubgroupDoc {
    Bare(Vec<String>),
    Full { generators: Vec<String> },
}

/// Subgroup generators: `["1100", ...]` or `{"generators": [...]}`.
pub fn load_generators(path: &str) -> Result<Vec<BitVector>> {
    let doc: SubgroupDoc = serde_json::from_str(&read(path)?)
        .with_context(|| format!("{path}: schema error: expected a list of bit strings or {{\"generators\": [...]}}"))?;
    let strings = match doc {
        SubgroupDoc::Bare(s) | SubgroupDoc::Full { generators: s } => s,
    };
    strings
        .iter()
        .map(|s| s.parse::<BitVector>())
        .collect::<Result<Vec<_>, _>>()
        .with_context(|| path.to_string())
}

/// `3,4` as 1-based facet labels.
pub fn parse_v0(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| format!("{t:?}: {e}"))
                .and_then(|f| if f == 0 { Err("facets are numbered from 1".into()) } else { Ok(f) })
        })
        .collect()
}

/// Checks that the labels name facets of `p` and form a vertex.
pub fn vertex(p: &SimplePolytope, labels: &[usize]) -> Result<FacetSet> {
    if let Some(&f) = labels.iter().find(|&&f| f > p.facet_count()) {
        bail!("v0 names facet {f}, but the polytope has {} facets", p.facet_count());
    }
    let v0 = FacetSet::from_labels(labels);
    if !p.is_vertex(v0) {
        bail!("v0 {v0} is not a vertex of {}", p.name());
    }
    Ok(v0)
}
