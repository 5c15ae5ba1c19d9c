//! `glueback`: builds quotient cell complexes of simple polytopes, computes
//! their mod-2 homology and runs the verification suite.
//!
//! Exit status: 0 success, 1 invalid input, 2 a check failed, 3 internal error.

mod input;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use glueback::coloring::{
    glue_back_coloring, moment_angle_coloring, partial_quotient_coloring, rank_info, validate_characteristic,
    Coloring, CutFrame,
};
use glueback::complex::{components, export, ComplexError};
use glueback::corpus::{builtin, CorpusEntry};
use glueback::verify::{run_suite, Check, Status, SuiteOptions, VerifyError, SCHEMA};
use glueback::{betti, build_complex, BettiReport, GlueSpec, Subspace};
use serde::Serialize;

use input::{load_generators, load_labels, load_lambda, load_polytope, parse_v0, vertex, Loaded};

/// Largest coloring count `--enumerate` accepts.
const ENUMERATE_CAP: usize = 1 << 20;
const DEFAULT_LIMIT: usize = 256;

#[derive(Parser)]
#[command(name = "glueback", version, about = "GF(2) cell complexes of small covers, moment-angle manifolds and glue-backs")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "GLUEBACK_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a polytope file and characteristic functions over it.
    Validate(ValidateArgs),
    /// Build one complex and print its cells, Betti numbers and components.
    Build(BuildArgs),
    /// Run verification checks and emit a report.
    Verify(VerifyArgs),
    /// List the built-in polytopes and characteristic functions.
    Corpus(CorpusArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BuildFormat {
    Table,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CorpusKind {
    Builtin,
}

#[derive(Clone, Debug)]
struct V0(Vec<usize>);

fn v0_arg(s: &str) -> Result<V0, String> {
    parse_v0(s).map(V0)
}

#[derive(Args)]
struct ValidateArgs {
    /// Polytope file or `builtin:NAME`.
    polytope: String,
    /// Characteristic function files (or `builtin:NAME`) to check against it.
    mu: Vec<String>,
    /// Reject unknown fields instead of warning.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("base").required(true).args(["mu", "moment_angle"])))]
struct BuildArgs {
    /// Polytope file or `builtin:NAME`.
    #[arg(long)]
    polytope: String,
    /// Characteristic function: builds the small cover, or with
    /// `--glue-back` the glue-back over it.
    #[arg(long)]
    mu: Option<String>,
    /// Build the real moment-angle complex.
    #[arg(long)]
    moment_angle: bool,
    /// Panel colors file: `["01", "10"]` or `{"lambda": [...], "m": 2}`.
    #[arg(long, requires = "mu")]
    glue_back: Option<String>,
    /// Cut vertex as 1-based facet labels, e.g. `3,4`.
    #[arg(long, value_parser = v0_arg)]
    v0: Option<V0>,
    /// Color width when the panel colors file does not determine it.
    #[arg(long)]
    m: Option<usize>,
    /// Subgroup generators file; quotients the moment-angle complex by it.
    #[arg(long, requires = "moment_angle")]
    partial_quotient: Option<String>,
    /// Write the cells and boundary maps as JSON.
    #[arg(long)]
    export: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = BuildFormat::Table)]
    format: BuildFormat,
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).args(["corpus", "polytope"])))]
struct VerifyArgs {
    /// Comma-separated checks: hc, components, dj, caolu, maxequiv, monotone,
    /// doublecover, pq, facial, or all.
    checks: String,
    /// Run over the built-in corpus.
    #[arg(long, value_enum, conflicts_with = "polytope")]
    corpus: Option<CorpusKind>,
    /// Restrict the corpus to these entries.
    #[arg(long, requires = "corpus")]
    entry: Vec<String>,
    /// Polytope file or `builtin:NAME`.
    #[arg(long)]
    polytope: Option<String>,
    /// Characteristic functions over `--polytope`; a built-in polytope
    /// defaults to all of its functions.
    #[arg(long, requires = "polytope")]
    mu: Vec<String>,
    /// Cut vertex as 1-based facet labels.
    #[arg(long, value_parser = v0_arg, requires = "polytope")]
    v0: Option<V0>,
    /// Color width (default 2, or the width of `--lambda`).
    #[arg(long)]
    m: Option<usize>,
    /// Every coloring, up to 2^20 of them.
    #[arg(long, conflicts_with_all = ["sample", "lambda"])]
    enumerate: bool,
    /// At most LIMIT colorings: all when there are that few, otherwise a
    /// seeded uniform sample. Without a coloring source the suite uses
    /// `--sample 256 --seed 0`.
    #[arg(long, value_name = "LIMIT", requires = "seed", conflicts_with = "lambda")]
    sample: Option<usize>,
    #[arg(long, requires = "sample")]
    seed: Option<u64>,
    /// A single explicit coloring file.
    #[arg(long, requires = "polytope")]
    lambda: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Record wall-clock time per check (makes reports non-reproducible).
    #[arg(long)]
    timings: bool,
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

enum Failure {
    Invalid(anyhow::Error),
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Internal(e)
    }
}

trait Invalid<T> {
    fn invalid(self) -> Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> Invalid<T> for Result<T, E> {
    fn invalid(self) -> Result<T, Failure> {
        self.map_err(|e| Failure::Invalid(e.into()))
    }
}

fn complex_failure(e: ComplexError) -> Failure {
    match e {
        ComplexError::TooLarge { .. } | ComplexError::Coloring(_) => Failure::Invalid(e.into()),
        other => Failure::Internal(other.into()),
    }
}

fn verify_failure(e: VerifyError) -> Failure {
    match e {
        VerifyError::Complex(c) => complex_failure(c),
        VerifyError::Gf2(_) => Failure::Internal(e.into()),
        other => Failure::Invalid(other.into()),
    }
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("{}: cannot write", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_validate(args: &ValidateArgs) -> Result<u8, Failure> {
    let loaded = match load_polytope(&args.polytope, args.strict) {
        Ok(l) => l,
        Err(e) => {
            println!("{}: invalid: {e:#}", args.polytope);
            return Ok(1);
        }
    };
    let p = &loaded.polytope;
    println!("{}: valid, n={} d={} k={}", args.polytope, p.dim(), p.facet_count(), p.k());
    let mut status = 0;
    for path in &args.mu {
        let checked = load_labels(path, &loaded)
            .and_then(|named| validate_characteristic(p, named.labels).map_err(anyhow::Error::from));
        match checked {
            Ok(_) => println!("{path}: valid characteristic function"),
            Err(e) => {
                println!("{path}: invalid: {e:#}");
                status = 1;
            }
        }
    }
    Ok(status)
}

#[derive(Serialize)]
struct BuildOutput<'a> {
    schema: u32,
    kind: &'a str,
    polytope: &'a str,
    width: usize,
    #[serde(flatten)]
    report: &'a BettiReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    rank_lambda: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected_components: Option<u64>,
    warnings: Vec<String>,
}

fn cut_frame(loaded: &Loaded, v0: Option<&V0>) -> Result<CutFrame, Failure> {
    let p = &loaded.polytope;
    let v0 = match v0 {
        Some(V0(labels)) => Some(vertex(p, labels).invalid()?),
        None => loaded.entry.as_ref().and_then(|e| e.v0),
    };
    match v0 {
        Some(v0) => CutFrame::new(p, v0).invalid(),
        None => Ok(CutFrame::default_for(p)),
    }
}

fn cmd_build(args: &BuildArgs) -> Result<u8, Failure> {
    let loaded = load_polytope(&args.polytope, args.strict).invalid()?;
    let p = &loaded.polytope;
    let mut rank = None;
    let mut expected_components = None;
    let (kind, coloring): (&str, Coloring) = if args.moment_angle {
        match &args.partial_quotient {
            None => ("moment-angle", moment_angle_coloring(p)),
            Some(path) => {
                let gens = load_generators(path).invalid()?;
                let h = Subspace::span(p.facet_count(), &gens).invalid()?;
                let c = partial_quotient_coloring(p, &moment_angle_coloring(p), &h).invalid()?;
                ("partial-quotient", c)
            }
        }
    } else {
        let arg = args.mu.as_deref().expect("clap requires mu or moment-angle");
        let mu = validate_characteristic(p, load_labels(arg, &loaded).invalid()?.labels).invalid()?;
        match &args.glue_back {
            None => ("small-cover", mu.coloring().clone()),
            Some(path) => {
                let (file_m, lambda) = load_lambda(path).invalid()?;
                let m = match (file_m, args.m) {
                    (Some(a), Some(b)) if a != b => return Err(Failure::Invalid(anyhow!("{path} has m={a}, but --m {b}"))),
                    (a, b) => a.or(b).unwrap_or(0),
                };
                let frame = cut_frame(&loaded, args.v0.as_ref())?;
                let spec = GlueSpec::with_frame(p.clone(), mu, frame, m, lambda).invalid()?;
                let info = rank_info(&spec);
                rank = Some(info.rank);
                expected_components = Some(1u64 << (m - info.rank));
                ("glue-back", glue_back_coloring(&spec))
            }
        }
    };
    let cx = build_complex(p, &coloring).map_err(complex_failure)?;
    let b = betti(&cx);
    debug_assert_eq!(components(&cx).count as u64, b.components);
    let warnings: Vec<String> = cx.warnings().iter().map(ToString::to_string).collect();
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    if let Some(path) = &args.export {
        let text = serde_json::to_string(&export(&cx)).context("serializing export")?;
        fs::write(path, text).with_context(|| format!("{}: cannot write", path.display()))?;
    }
    let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
    match args.format {
        BuildFormat::Json => {
            let out = BuildOutput {
                schema: SCHEMA,
                kind,
                polytope: p.name(),
                width: coloring.width(),
                report: &b,
                rank_lambda: rank,
                expected_components,
                warnings,
            };
            println!("{}", serde_json::to_string_pretty(&out).context("serializing")?);
        }
        BuildFormat::Table => {
            println!("complex:    {kind} over {} (width {})", p.name(), coloring.width());
            println!("cells:      {}", join(&b.cells_per_dim));
            println!("betti:      {}", join(&b.betti));
            println!("hrk:        {}", b.hrk);
            println!("euler:      {}", b.euler);
            println!("components: {}", b.components);
            if let (Some(r), Some(c)) = (rank, expected_components) {
                println!("rank:       {r} (2^(m - rank) = {c})");
            }
        }
    }
    Ok(0)
}

fn verify_corpus(args: &VerifyArgs) -> Result<Vec<CorpusEntry>, Failure> {
    if args.corpus.is_some() {
        let all = builtin();
        if args.entry.is_empty() {
            return Ok(all);
        }
        return args
            .entry
            .iter()
            .map(|name| {
                let name = match name.as_str() {
                    "triangle" => "polygon3",
                    "square" => "polygon4",
                    other => other,
                };
                all.iter()
                    .find(|e| e.name == name)
                    .cloned()
                    .ok_or_else(|| Failure::Invalid(anyhow!("no corpus entry {name:?}; see `glueback corpus`")))
            })
            .collect();
    }
    let arg = args.polytope.as_deref().expect("clap requires corpus or polytope");
    let loaded = load_polytope(arg, args.strict).invalid()?;
    let mut entry = match &loaded.entry {
        Some(e) if args.mu.is_empty() => e.clone(),
        Some(e) => CorpusEntry { mus: Vec::new(), ..e.clone() },
        None => CorpusEntry::new(loaded.polytope.name(), (*loaded.polytope).clone()),
    };
    for mu in &args.mu {
        entry.mus.push(load_labels(mu, &loaded).invalid()?);
    }
    if entry.mus.is_empty() {
        return Err(Failure::Invalid(anyhow!("--mu is required for a polytope file")));
    }
    if let Some(V0(labels)) = &args.v0 {
        entry.v0 = Some(vertex(&loaded.polytope, labels).invalid()?);
    }
    Ok(vec![entry])
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8, Failure> {
    let checks = Check::parse_list(&args.checks).map_err(verify_failure)?;
    if checks.is_empty() {
        return Err(Failure::Invalid(anyhow!("no checks selected")));
    }
    let corpus = verify_corpus(args)?;
    let mut opts = SuiteOptions {
        m: args.m.unwrap_or(2),
        limit: DEFAULT_LIMIT,
        seed: 0,
        timings: args.timings,
        lambda: None,
    };
    if let Some(path) = &args.lambda {
        let (file_m, lambda) = load_lambda(path).invalid()?;
        opts.m = match (file_m, args.m) {
            (Some(a), Some(b)) if a != b => return Err(Failure::Invalid(anyhow!("{path} has m={a}, but --m {b}"))),
            (a, b) => a.or(b).unwrap_or(0),
        };
        opts.limit = 1;
        opts.lambda = Some(lambda);
    } else if args.enumerate {
        for e in &corpus {
            let bits = opts.m * e.polytope.k();
            if bits > ENUMERATE_CAP.trailing_zeros() as usize {
                return Err(Failure::Invalid(anyhow!(
                    "{} has 2^{bits} colorings with m={}; use --sample LIMIT --seed SEED",
                    e.name,
                    opts.m
                )));
            }
        }
        opts.limit = ENUMERATE_CAP;
    } else if let Some(limit) = args.sample {
        opts.limit = limit;
        opts.seed = args.seed.expect("clap requires seed with sample");
    }
    if opts.limit == 0 {
        return Err(Failure::Invalid(anyhow!("--sample must be positive")));
    }
    let suite = run_suite(&corpus, &checks, &opts).map_err(verify_failure)?;
    let text = match args.format {
        Format::Table => report::suite_table(&suite),
        Format::Json => report::suite_json(&suite)?,
        Format::Csv => report::suite_csv(&suite)?,
    };
    emit(&text, args.output.as_ref())?;
    let na = suite.reports.iter().filter(|r| r.status == Status::NotApplicable).count();
    if na > 0 {
        eprintln!("warning: {na} of {} checks not applicable", suite.summary.total);
    }
    Ok(if suite.success() { 0 } else { 2 })
}

fn cmd_corpus(args: &CorpusArgs) -> Result<u8, Failure> {
    let corpus = builtin();
    let text = match args.format {
        Format::Table => report::corpus_table(&corpus),
        Format::Json => report::corpus_json(&corpus)?,
        Format::Csv => report::corpus_csv(&corpus)?,
    };
    emit(&text, None)?;
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Failure::Invalid(anyhow!("--threads must be positive")));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    match &cli.command {
        Command::Validate(a) => cmd_validate(a),
        Command::Build(a) => cmd_build(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Corpus(a) => cmd_corpus(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {e:#}");
            ExitCode::from(3)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn sampling_requires_a_seed() {
        assert!(Cli::try_parse_from(["glueback", "verify", "hc", "--corpus", "builtin", "--sample", "5"]).is_err());
        assert!(Cli::try_parse_from(["glueback", "verify", "hc", "--corpus", "builtin", "--sample", "5", "--seed", "1"]).is_ok());
        assert!(Cli::try_parse_from(["glueback", "verify", "hc", "--corpus", "builtin", "--enumerate", "--sample", "5", "--seed", "1"]).is_err());
    }

    #[test]
    fn one_input_source() {
        assert!(Cli::try_parse_from(["glueback", "verify", "hc"]).is_err());
        assert!(Cli::try_parse_from(["glueback", "verify", "hc", "--corpus", "builtin", "--polytope", "x.json"]).is_err());
    }

}
