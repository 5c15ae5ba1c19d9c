//! Executable checks with structured reports.
//!
//! Every check builds the complexes involved, computes ranks of their boundary
//! matrices and records the numbers in [`Computed`]. The verdict is a pure
//! function of [`Computed`] and [`Expected`] (see [`evaluate`]), so a persisted
//! report can be re-judged without recomputation.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{
    complete_to_max, glue_back_coloring, moment_angle_coloring, moment_angle_coloring_cut_first,
    n_star_subgroup, partial_quotient_coloring, rank_info, sigma_image, validate_characteristic,
    CharacteristicFunction, ColoringError, CutFrame, GlueSpec,
};
use crate::complex::{
    betti, build_complex, complexes_identical, components, facial_subcomplex, restrict_to_component,
    split_components, ComplexError, QuotientCellComplex,
};
use crate::corpus::CorpusEntry;
use crate::gf2::{solve_label_isomorphism, BitVector, Gf2Error, Gf2Matrix};
use crate::polytope::SimplePolytope;

/// Report format version.
pub const SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error("corpus entry {entry}, mu {mu}: {source}")]
    Entry {
        entry: String,
        mu: String,
        source: ColoringError,
    },
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("sample limit must be positive")]
    ZeroLimit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Check {
    #[serde(rename = "hc")]
    HalperinCarlsson,
    #[serde(rename = "components")]
    ComponentFormula,
    #[serde(rename = "dj")]
    DjBetti,
    #[serde(rename = "caolu")]
    CaoLu,
    #[serde(rename = "maxequiv")]
    MaxIndependentEquivalence,
    #[serde(rename = "monotone")]
    HrkMonotonicity,
    #[serde(rename = "doublecover")]
    DoubleCoverBound,
    #[serde(rename = "pq")]
    PartialQuotient,
    #[serde(rename = "facial")]
    FacialInduction,
}

impl Check {
    /// Canonical order; `all` selects these.
    pub const ALL: [Check; 9] = [
        Check::CaoLu,
        Check::DjBetti,
        Check::HalperinCarlsson,
        Check::ComponentFormula,
        Check::MaxIndependentEquivalence,
        Check::HrkMonotonicity,
        Check::DoubleCoverBound,
        Check::PartialQuotient,
        Check::FacialInduction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::HalperinCarlsson => "hc",
            Check::ComponentFormula => "components",
            Check::DjBetti => "dj",
            Check::CaoLu => "caolu",
            Check::MaxIndependentEquivalence => "maxequiv",
            Check::HrkMonotonicity => "monotone",
            Check::DoubleCoverBound => "doublecover",
            Check::PartialQuotient => "pq",
            Check::FacialInduction => "facial",
        }
    }

    /// Parses a comma-separated list; `all` expands to [`Check::ALL`].
    /// The result is deduplicated and in canonical order.
    pub fn parse_list(s: &str) -> Result<Vec<Check>, VerifyError> {
        let mut out = BTreeSet::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Check::ALL);
            } else {
                out.insert(part.parse()?);
            }
        }
        Ok(Check::ALL.into_iter().filter(|c| out.contains(c)).collect())
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| VerifyError::UnknownCheck(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

/// Everything needed to reproduce a check.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entry: Option<String>,
    pub polytope: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v0: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<String>>,
    /// Second coloring of a pairwise check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_other: Option<Vec<String>>,
    /// Basis of the subgroup a partial quotient is taken by.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Vec<String>>,
    /// Step `j` of a completion chain.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<usize>,
}

/// Numbers computed by a check. Fields a check does not produce stay `None`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Computed {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_lambda: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells_per_dim: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hrk: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_vector: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component_cells: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component_betti: Option<Vec<Vec<u64>>>,
    /// `hrk` along a completion chain.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain_hrk: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover_betti: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_betti: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components_before: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components_after: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other_cells_per_dim: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other_betti: Option<Vec<u64>>,
    /// Whether the subgroup acted freely.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isomorphism_found: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identical: Option<bool>,
    /// `hrk` of the facial subcomplex over each cut facet.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facial_hrk: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Expected {
    HrkAtLeast { bound: u64 },
    /// This many components, all with the same cell counts and Betti numbers.
    Components { count: u64 },
    BettiEqualsH,
    NonIncreasing,
    /// `beta_i(cover) <= 2 beta_i(base)` and twice as many components before.
    DoubleCover,
    /// Equal cell counts and Betti numbers, a label isomorphism, and identical
    /// complexes under it.
    Equivalent,
    FacialHrkAtLeast { bound: u64 },
    NotApplicable { reason: String },
}

fn all_equal<T: PartialEq>(items: &[T]) -> bool {
    items.windows(2).all(|w| w[0] == w[1])
}

/// The verdict from the computed numbers alone.
pub fn evaluate(expected: &Expected, c: &Computed) -> Status {
    let ok = match expected {
        Expected::NotApplicable { .. } => return Status::NotApplicable,
        Expected::HrkAtLeast { bound } => c.hrk.is_some_and(|h| h >= *bound),
        Expected::Components { count } => match (c.components, &c.component_cells, &c.component_betti) {
            (Some(n), Some(cells), Some(b)) => {
                n == *count && cells.len() as u64 == n && b.len() as u64 == n && all_equal(cells) && all_equal(b)
            }
            _ => false,
        },
        Expected::BettiEqualsH => match (&c.betti, &c.h_vector) {
            (Some(b), Some(h)) => b.len() == h.len() && b.iter().zip(h).all(|(&x, &y)| x as i64 == y),
            _ => false,
        },
        Expected::NonIncreasing => c
            .chain_hrk
            .as_ref()
            .is_some_and(|v| !v.is_empty() && v.windows(2).all(|w| w[0] >= w[1])),
        Expected::DoubleCover => match (&c.cover_betti, &c.base_betti, c.components_before, c.components_after) {
            (Some(cover), Some(base), Some(before), Some(after)) => {
                cover.len() == base.len()
                    && cover.iter().zip(base).all(|(&x, &y)| x <= 2 * y)
                    && before == 2 * after
            }
            _ => false,
        },
        Expected::Equivalent => {
            c.free != Some(false)
                && c.isomorphism_found == Some(true)
                && c.identical == Some(true)
                && c.cells_per_dim.is_some()
                && c.cells_per_dim == c.other_cells_per_dim
                && c.betti.is_some()
                && c.betti == c.other_betti
        }
        Expected::FacialHrkAtLeast { bound } => c
            .facial_hrk
            .as_ref()
            .is_some_and(|v| !v.is_empty() && v.iter().all(|&h| h >= *bound)),
    };
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: Check,
    pub inputs: Inputs,
    pub computed: Computed,
    pub expected: Expected,
    pub status: Status,
    pub pass: bool,
    /// Wall-clock time; only filled in on request so that reports stay
    /// reproducible byte for byte.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl VerificationReport {
    pub fn new(check: Check, inputs: Inputs, computed: Computed, expected: Expected) -> Self {
        let status = evaluate(&expected, &computed);
        Self {
            check,
            inputs,
            computed,
            expected,
            status,
            pass: status == Status::Pass,
            runtime_ms: None,
        }
    }

    fn not_applicable(check: Check, inputs: Inputs, computed: Computed, reason: impl Into<String>) -> Self {
        Self::new(check, inputs, computed, Expected::NotApplicable { reason: reason.into() })
    }

    /// Re-derives `pass` from `computed` and `expected`.
    pub fn recompute_pass(&self) -> bool {
        evaluate(&self.expected, &self.computed) == Status::Pass
    }
}

fn strings(labels: &[BitVector]) -> Vec<String> {
    labels.iter().map(ToString::to_string).collect()
}

fn spec_inputs(spec: &GlueSpec) -> Inputs {
    Inputs {
        polytope: spec.polytope().name().to_string(),
        mu: Some(spec.mu().coloring().to_strings()),
        v0: Some(spec.v0().labels()),
        m: Some(spec.m()),
        lambda: Some(strings(spec.lambda())),
        ..Inputs::default()
    }
}

fn spec_computed(spec: &GlueSpec) -> Computed {
    Computed {
        m: Some(spec.m()),
        k: Some(spec.k()),
        rank_lambda: Some(rank_info(spec).rank),
        ..Computed::default()
    }
}

fn glue_complex(spec: &GlueSpec) -> Result<QuotientCellComplex, VerifyError> {
    Ok(build_complex(spec.polytope(), &glue_back_coloring(spec))?)
}

fn hrk_of(cx: &QuotientCellComplex) -> u64 {
    betti(cx).hrk
}

/// `hrk >= 2^m` for the glue-back complex.
pub fn check_halperin_carlsson(spec: &GlueSpec) -> Result<VerificationReport, VerifyError> {
    let cx = glue_complex(spec)?;
    let b = betti(&cx);
    let computed = Computed {
        components: Some(components(&cx).count as u64),
        cells_per_dim: Some(b.cells_per_dim),
        betti: Some(b.betti),
        hrk: Some(b.hrk),
        ..spec_computed(spec)
    };
    Ok(VerificationReport::new(
        Check::HalperinCarlsson,
        spec_inputs(spec),
        computed,
        Expected::HrkAtLeast { bound: 1 << spec.m() },
    ))
}

/// `2^(m - rank lambda)` components with identical cell counts and Betti
/// numbers.
pub fn check_component_formula(spec: &GlueSpec) -> Result<VerificationReport, VerifyError> {
    let cx = glue_complex(spec)?;
    let b = betti(&cx);
    let parts = split_components(&cx);
    let per: Vec<_> = parts.par_iter().map(betti).collect();
    let computed = Computed {
        components: Some(parts.len() as u64),
        cells_per_dim: Some(b.cells_per_dim),
        betti: Some(b.betti),
        hrk: Some(b.hrk),
        component_cells: Some(per.iter().map(|r| r.cells_per_dim.clone()).collect()),
        component_betti: Some(per.iter().map(|r| r.betti.clone()).collect()),
        ..spec_computed(spec)
    };
    let rank = computed.rank_lambda.unwrap_or(0);
    Ok(VerificationReport::new(
        Check::ComponentFormula,
        spec_inputs(spec),
        computed,
        Expected::Components {
            count: 1 << (spec.m() - rank),
        },
    ))
}

/// Betti numbers of the small cover equal the h-vector.
pub fn check_dj_betti(p: &SimplePolytope, mu: &CharacteristicFunction) -> Result<VerificationReport, VerifyError> {
    let cx = build_complex(p, mu.coloring())?;
    let b = betti(&cx);
    let inputs = Inputs {
        polytope: p.name().to_string(),
        mu: Some(mu.coloring().to_strings()),
        m: Some(0),
        ..Inputs::default()
    };
    let computed = Computed {
        m: Some(0),
        components: Some(components(&cx).count as u64),
        cells_per_dim: Some(b.cells_per_dim),
        betti: Some(b.betti),
        hrk: Some(b.hrk),
        h_vector: Some(p.fh_vector().h),
        ..Computed::default()
    };
    Ok(VerificationReport::new(Check::DjBetti, inputs, computed, Expected::BettiEqualsH))
}

/// `hrk(Z_P) >= 2^(d - n)`.
pub fn check_cao_lu(p: &SimplePolytope) -> Result<VerificationReport, VerifyError> {
    let cx = build_complex(p, &moment_angle_coloring(p))?;
    let b = betti(&cx);
    let inputs = Inputs {
        polytope: p.name().to_string(),
        ..Inputs::default()
    };
    let computed = Computed {
        k: Some(p.k()),
        components: Some(components(&cx).count as u64),
        cells_per_dim: Some(b.cells_per_dim),
        betti: Some(b.betti),
        hrk: Some(b.hrk),
        h_vector: Some(p.fh_vector().h),
        ..Computed::default()
    };
    Ok(VerificationReport::new(
        Check::CaoLu,
        inputs,
        computed,
        Expected::HrkAtLeast { bound: 1 << p.k() },
    ))
}

/// `id_n + phi`, acting on `(mu | lambda)` labels.
fn block_map(n: usize, phi: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
    let m = phi.col_count();
    let w = n + m;
    let mut columns = Vec::with_capacity(w);
    for i in 0..n {
        columns.push(BitVector::unit(w, i)?);
    }
    for j in 0..m {
        columns.push(phi.apply(BitVector::unit(m, j)?)?.embed(w, n)?);
    }
    Gf2Matrix::from_columns(&columns, w)
}

/// Two maximally independent colorings over the same data give identical
/// complexes under `id + phi` with `phi lambda_1 = lambda_2`.
pub fn check_max_independent_equivalence(a: &GlueSpec, b: &GlueSpec) -> Result<VerificationReport, VerifyError> {
    let mut inputs = spec_inputs(a);
    inputs.lambda_other = Some(strings(b.lambda()));
    let computed = spec_computed(a);
    let same_base = a.polytope().same_combinatorics(b.polytope())
        && a.mu() == b.mu()
        && a.v0() == b.v0()
        && a.m() == b.m();
    if !same_base {
        return Ok(VerificationReport::not_applicable(
            Check::MaxIndependentEquivalence,
            inputs,
            computed,
            "colorings differ in polytope, mu, v0 or m",
        ));
    }
    if !rank_info(a).maximally_independent || !rank_info(b).maximally_independent {
        return Ok(VerificationReport::not_applicable(
            Check::MaxIndependentEquivalence,
            inputs,
            computed,
            "both colorings must be maximally independent",
        ));
    }
    let (cx1, cx2) = rayon::join(|| glue_complex(a), || glue_complex(b));
    let (cx1, cx2) = (cx1?, cx2?);
    let (b1, b2) = rayon::join(|| betti(&cx1), || betti(&cx2));
    let phi = solve_label_isomorphism(a.lambda(), b.lambda())?;
    let identical = match &phi {
        Some(phi) => Some(complexes_identical(&cx1, &cx2, &block_map(a.polytope().dim(), phi)?)?),
        None => None,
    };
    let computed = Computed {
        components: Some(b1.components),
        cells_per_dim: Some(b1.cells_per_dim),
        betti: Some(b1.betti),
        hrk: Some(b1.hrk),
        other_cells_per_dim: Some(b2.cells_per_dim),
        other_betti: Some(b2.betti),
        isomorphism_found: Some(phi.is_some()),
        identical,
        ..computed
    };
    Ok(VerificationReport::new(
        Check::MaxIndependentEquivalence,
        inputs,
        computed,
        Expected::Equivalent,
    ))
}

/// `hrk` does not increase along the completion chain. Requires `m = k`.
pub fn check_hrk_monotonicity(spec: &GlueSpec) -> Result<VerificationReport, VerifyError> {
    let inputs = spec_inputs(spec);
    let computed = spec_computed(spec);
    if spec.m() != spec.k() {
        return Ok(VerificationReport::not_applicable(
            Check::HrkMonotonicity,
            inputs,
            computed,
            format!("requires m = k = {}", spec.k()),
        ));
    }
    let chain = complete_to_max(spec)?;
    let chain_hrk = chain
        .par_iter()
        .map(|s| glue_complex(s).map(|cx| hrk_of(&cx)))
        .collect::<Result<Vec<_>, _>>()?;
    let computed = Computed {
        hrk: chain_hrk.first().copied(),
        chain_hrk: Some(chain_hrk),
        ..computed
    };
    Ok(VerificationReport::new(Check::HrkMonotonicity, inputs, computed, Expected::NonIncreasing))
}

/// Step `j >= 1` of the completion chain: a component of `M(lambda_j)` double
/// covers a component of `M(lambda_{j-1})`; compares their Betti numbers.
pub fn check_double_cover_bound(spec: &GlueSpec, j: usize) -> Result<VerificationReport, VerifyError> {
    let mut inputs = spec_inputs(spec);
    inputs.step = Some(j);
    let computed = spec_computed(spec);
    if spec.m() != spec.k() {
        return Ok(VerificationReport::not_applicable(
            Check::DoubleCoverBound,
            inputs,
            computed,
            format!("requires m = k = {}", spec.k()),
        ));
    }
    let chain = complete_to_max(spec)?;
    if j == 0 || j >= chain.len() {
        return Ok(VerificationReport::not_applicable(
            Check::DoubleCoverBound,
            inputs,
            computed,
            format!("completion chain has no step {j}"),
        ));
    }
    let (before, after) = rayon::join(|| glue_complex(&chain[j - 1]), || glue_complex(&chain[j]));
    let (before, after) = (before?, after?);
    let (count_before, count_after) = (components(&before).count, components(&after).count);
    let base = restrict_to_component(&before, 0)?;
    let cover = restrict_to_component(&after, 0)?;
    let (base_b, cover_b) = rayon::join(|| betti(&base), || betti(&cover));
    let computed = Computed {
        cover_betti: Some(cover_b.betti),
        base_betti: Some(base_b.betti),
        components_before: Some(count_before as u64),
        components_after: Some(count_after as u64),
        ..computed
    };
    Ok(VerificationReport::new(Check::DoubleCoverBound, inputs, computed, Expected::DoubleCover))
}

/// A connected glue-back equals the partial quotient `Z_P / sigma(N*)`.
pub fn check_partial_quotient(spec: &GlueSpec) -> Result<VerificationReport, VerifyError> {
    let mut inputs = spec_inputs(spec);
    let computed = spec_computed(spec);
    let n_star = match n_star_subgroup(spec) {
        Ok(n) => n,
        Err(e @ ColoringError::Disconnected { .. }) => {
            return Ok(VerificationReport::not_applicable(
                Check::PartialQuotient,
                inputs,
                computed,
                e.to_string(),
            ))
        }
        Err(e) => return Err(e.into()),
    };
    let p = spec.polytope();
    let h = sigma_image(spec.mu(), spec.frame(), &n_star)?;
    inputs.subgroup = Some(strings(h.basis()));
    let glue = glue_back_coloring(spec);
    let pq = match partial_quotient_coloring(p, &moment_angle_coloring_cut_first(p, spec.frame()), &h) {
        Ok(c) => c,
        Err(ColoringError::NotFree(_)) => {
            let computed = Computed {
                free: Some(false),
                ..computed
            };
            return Ok(VerificationReport::new(Check::PartialQuotient, inputs, computed, Expected::Equivalent));
        }
        Err(e) => return Err(e.into()),
    };
    let (cx1, cx2) = rayon::join(|| build_complex(p, &glue), || build_complex(p, &pq));
    let (cx1, cx2) = (cx1?, cx2?);
    let (b1, b2) = rayon::join(|| betti(&cx1), || betti(&cx2));
    let phi = if glue.width() == pq.width() {
        solve_label_isomorphism(glue.labels(), pq.labels())?
    } else {
        None
    };
    let identical = match &phi {
        Some(phi) => Some(complexes_identical(&cx1, &cx2, phi)?),
        None => None,
    };
    let computed = Computed {
        components: Some(b1.components),
        cells_per_dim: Some(b1.cells_per_dim),
        betti: Some(b1.betti),
        hrk: Some(b1.hrk),
        other_cells_per_dim: Some(b2.cells_per_dim),
        other_betti: Some(b2.betti),
        free: Some(true),
        isomorphism_found: Some(phi.is_some()),
        identical,
        ..computed
    };
    Ok(VerificationReport::new(Check::PartialQuotient, inputs, computed, Expected::Equivalent))
}

/// For a maximally independent coloring, the part over every cut facet has
/// `hrk >= 2^k`.
pub fn check_facial_induction(spec: &GlueSpec) -> Result<VerificationReport, VerifyError> {
    let inputs = spec_inputs(spec);
    let computed = spec_computed(spec);
    if computed.rank_lambda != Some(spec.k()) {
        return Ok(VerificationReport::not_applicable(
            Check::FacialInduction,
            inputs,
            computed,
            "requires a maximally independent coloring",
        ));
    }
    let cx = glue_complex(spec)?;
    let facial_hrk = spec
        .frame()
        .cut()
        .par_iter()
        .map(|&f| facial_subcomplex(&cx, f + 1).map(|sub| hrk_of(&sub)))
        .collect::<Result<Vec<_>, _>>()?;
    let b = betti(&cx);
    let computed = Computed {
        components: Some(b.components),
        cells_per_dim: Some(b.cells_per_dim),
        betti: Some(b.betti),
        hrk: Some(b.hrk),
        facial_hrk: Some(facial_hrk),
        ..computed
    };
    Ok(VerificationReport::new(
        Check::FacialInduction,
        inputs,
        computed,
        Expected::FacialHrkAtLeast { bound: 1 << spec.k() },
    ))
}

/// The colorings produced by [`enumerate_colorings`].
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub specs: Vec<GlueSpec>,
    /// Whether every coloring was produced.
    pub exhaustive: bool,
}

/// Panel colorings in `(Z_2)^m`: all of them, in lexicographic order of the
/// concatenated bit strings, when there are at most `limit`; otherwise
/// `limit` distinct ones drawn uniformly with a ChaCha8 generator seeded by
/// `seed`, in the same order.
pub fn enumerate_colorings(
    p: &Arc<SimplePolytope>,
    mu: &CharacteristicFunction,
    frame: &CutFrame,
    m: usize,
    limit: usize,
    seed: u64,
) -> Result<Enumeration, VerifyError> {
    if limit == 0 {
        return Err(VerifyError::ZeroLimit);
    }
    let k = frame.k();
    let bits = m * k;
    let make = |lambda: Vec<BitVector>| GlueSpec::with_frame(p.clone(), mu.clone(), frame.clone(), m, lambda);
    let mask = if m == 0 { 0 } else { u64::MAX >> (64 - m) };
    let from_index = |t: u64| -> Result<GlueSpec, VerifyError> {
        // panel i, coordinate c sits at string position i*m + c
        let lambda = (0..k)
            .map(|i| {
                let coords: Vec<usize> = (0..m).filter(|&c| (t >> (bits - 1 - (i * m + c))) & 1 == 1).collect();
                BitVector::from_coords(m, &coords)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(make(lambda)?)
    };
    let total = if bits < 64 { Some(1u64 << bits) } else { None };
    if let Some(total) = total.filter(|&t| t <= limit as u64) {
        let specs = (0..total).map(from_index).collect::<Result<Vec<_>, _>>()?;
        return Ok(Enumeration { specs, exhaustive: true });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let specs = if bits < 64 {
        let mut picks = index::sample(&mut rng, 1usize << bits, limit).into_vec();
        picks.sort_unstable();
        picks
            .into_iter()
            .map(|t| from_index(t as u64))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        let mut seen = BTreeSet::new();
        while seen.len() < limit {
            let words: Vec<u64> = (0..k).map(|_| rng.gen::<u64>() & mask).collect();
            seen.insert(words);
        }
        seen.into_iter()
            .map(|words| {
                // lexicographic string order is bit-reversed order within a panel
                let lambda = words
                    .iter()
                    .map(|&w| BitVector::from_bits(m, w.reverse_bits() >> (64 - m)))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(make(lambda)?)
            })
            .collect::<Result<Vec<_>, VerifyError>>()?
    };
    Ok(Enumeration {
        specs,
        exhaustive: false,
    })
}

/// Suite parameters. `limit` and `seed` are recorded in the report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOptions {
    pub m: usize,
    pub limit: usize,
    pub seed: u64,
    #[serde(skip)]
    pub timings: bool,
    /// A single explicit coloring used instead of the enumeration.
    #[serde(skip)]
    pub lambda: Option<Vec<BitVector>>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            m: 2,
            limit: 256,
            seed: 0,
            timings: false,
            lambda: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub not_applicable: usize,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
        Self {
            total: reports.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            not_applicable: count(Status::NotApplicable),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub m: usize,
    pub limit: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<String>>,
    pub checks: Vec<Check>,
    pub summary: Summary,
    pub reports: Vec<VerificationReport>,
}

impl SuiteReport {
    pub fn success(&self) -> bool {
        self.summary.failed == 0
    }
}

enum Task {
    CaoLu(usize),
    Dj(usize, usize),
    Single(Check, usize, usize, GlueSpec),
    Pair(usize, usize, GlueSpec, GlueSpec),
    Step(usize, usize, GlueSpec, usize),
    Skip(Check, usize, usize, GlueSpec, String),
}

/// Runs `checks` over every entry, characteristic function and enumerated
/// coloring of `corpus`. Work runs in parallel; the report order is fixed by
/// the corpus order, then [`Check::ALL`], then coloring order.
pub fn run_suite(corpus: &[CorpusEntry], checks: &[Check], opts: &SuiteOptions) -> Result<SuiteReport, VerifyError> {
    let mut mus = Vec::with_capacity(corpus.len());
    for e in corpus {
        let frame = match e.v0 {
            Some(v0) => CutFrame::new(&e.polytope, v0).map_err(|source| VerifyError::Entry {
                entry: e.name.clone(),
                mu: String::new(),
                source,
            })?,
            None => CutFrame::default_for(&e.polytope),
        };
        let mut list = Vec::with_capacity(e.mus.len());
        for named in &e.mus {
            let mu = validate_characteristic(&e.polytope, named.labels.clone()).map_err(|source| {
                VerifyError::Entry {
                    entry: e.name.clone(),
                    mu: named.name.clone(),
                    source,
                }
            })?;
            list.push(mu);
        }
        mus.push((frame, list));
    }
    let selected = |c: Check| checks.contains(&c);
    let needs_colorings = Check::ALL
        .into_iter()
        .any(|c| selected(c) && !matches!(c, Check::CaoLu | Check::DjBetti));

    let mut tasks = Vec::new();
    for (ei, e) in corpus.iter().enumerate() {
        if selected(Check::CaoLu) {
            tasks.push(Task::CaoLu(ei));
        }
        let (frame, list) = &mus[ei];
        for (mi, mu) in list.iter().enumerate() {
            if selected(Check::DjBetti) {
                tasks.push(Task::Dj(ei, mi));
            }
            if !needs_colorings {
                continue;
            }
            let specs = match &opts.lambda {
                Some(lambda) => {
                    let spec = GlueSpec::with_frame(e.polytope.clone(), mu.clone(), frame.clone(), opts.m, lambda.clone())
                        .map_err(|source| VerifyError::Entry {
                            entry: e.name.clone(),
                            mu: e.mus[mi].name.clone(),
                            source,
                        })?;
                    vec![spec]
                }
                None => enumerate_colorings(&e.polytope, mu, frame, opts.m, opts.limit, opts.seed)?.specs,
            };
            for check in Check::ALL.into_iter().filter(|&c| selected(c)) {
                match check {
                    Check::CaoLu | Check::DjBetti => {}
                    Check::MaxIndependentEquivalence => {
                        let reference = specs.iter().find(|s| rank_info(s).maximally_independent);
                        for s in &specs {
                            match reference {
                                Some(r) => tasks.push(Task::Pair(ei, mi, r.clone(), s.clone())),
                                None => tasks.push(Task::Skip(
                                    check,
                                    ei,
                                    mi,
                                    s.clone(),
                                    "no maximally independent coloring among those enumerated".into(),
                                )),
                            }
                        }
                    }
                    Check::DoubleCoverBound => {
                        for s in &specs {
                            let steps = if s.m() == s.k() { complete_to_max(s)?.len() } else { 0 };
                            if steps <= 1 {
                                tasks.push(Task::Step(ei, mi, s.clone(), 0));
                            }
                            for j in 1..steps {
                                tasks.push(Task::Step(ei, mi, s.clone(), j));
                            }
                        }
                    }
                    _ => {
                        for s in &specs {
                            tasks.push(Task::Single(check, ei, mi, s.clone()));
                        }
                    }
                }
            }
        }
    }

    let reports = tasks
        .par_iter()
        .map(|task| {
            let start = Instant::now();
            let (ei, mi, mut report) = match task {
                Task::CaoLu(ei) => (*ei, None, check_cao_lu(&corpus[*ei].polytope)?),
                Task::Dj(ei, mi) => (*ei, Some(*mi), check_dj_betti(&corpus[*ei].polytope, &mus[*ei].1[*mi])?),
                Task::Single(check, ei, mi, s) => {
                    let r = match check {
                        Check::HalperinCarlsson => check_halperin_carlsson(s)?,
                        Check::ComponentFormula => check_component_formula(s)?,
                        Check::HrkMonotonicity => check_hrk_monotonicity(s)?,
                        Check::PartialQuotient => check_partial_quotient(s)?,
                        Check::FacialInduction => check_facial_induction(s)?,
                        other => unreachable!("{other} is not a single-coloring check"),
                    };
                    (*ei, Some(*mi), r)
                }
                Task::Pair(ei, mi, a, b) => (*ei, Some(*mi), check_max_independent_equivalence(a, b)?),
                Task::Step(ei, mi, s, j) => {
                    let r = if *j == 0 && s.m() == s.k() {
                        VerificationReport::not_applicable(
                            Check::DoubleCoverBound,
                            spec_inputs(s),
                            spec_computed(s),
                            "coloring is already maximally independent",
                        )
                    } else {
                        check_double_cover_bound(s, *j)?
                    };
                    (*ei, Some(*mi), r)
                }
                Task::Skip(check, ei, mi, s, reason) => (
                    *ei,
                    Some(*mi),
                    VerificationReport::not_applicable(*check, spec_inputs(s), spec_computed(s), reason.clone()),
                ),
            };
            report.inputs.entry = Some(corpus[ei].name.clone());
            report.inputs.mu_name = mi.map(|mi| corpus[ei].mus[mi].name.clone());
            if opts.timings {
                report.runtime_ms = Some(start.elapsed().as_millis() as u64);
            }
            Ok(report)
        })
        .collect::<Result<Vec<_>, VerifyError>>()?;

    Ok(SuiteReport {
        schema: SCHEMA,
        m: opts.m,
        limit: opts.limit,
        seed: opts.seed,
        lambda: opts.lambda.as_deref().map(strings),
        checks: Check::ALL.into_iter().filter(|&c| selected(c)).collect(),
        summary: Summary::of(&reports),
        reports,
    })
}
