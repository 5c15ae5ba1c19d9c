//! Label systems on the facets of a polytope.
//!
//! A [`Coloring`] assigns a vector of `(Z_2)^r` to every facet. The quotient
//! `P x (Z_2)^r / ~` it defines is built in [`crate::complex`]. This module
//! produces the colorings of interest: characteristic functions of small
//! covers, the moment-angle coloring, the combined labels of a glue-back
//! construction, and partial quotients of the moment-angle coloring, together
//! with the subgroups `H_mu`, `N*` and the map `sigma` that relate them.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{quotient_projection, solve_label_isomorphism, BitVector, Gf2Error, Gf2Matrix, Subspace};
use crate::polytope::{FacetSet, SimplePolytope};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error("coloring has {found} labels but the polytope has {expected} facets")]
    LabelCount { expected: usize, found: usize },
    #[error("label {facet} has width {found}, expected {expected}")]
    LabelWidth { facet: usize, expected: usize, found: usize },
    #[error("characteristic function must have width n={expected}, found {found}")]
    NotCharacteristicWidth { expected: usize, found: usize },
    #[error("labels are linearly dependent at vertex {0}")]
    SingularAtVertex(FacetSet),
    #[error("{0} is not a vertex of the polytope")]
    NotAVertex(FacetSet),
    #[error("lambda has {found} panel colors, expected k={expected}")]
    PanelCount { expected: usize, found: usize },
    #[error("operation requires m = k = {k}, got m = {m}")]
    NotSquare { m: usize, k: usize },
    #[error("rank(lambda) = {rank} < m = {m}: the glue-back is disconnected; reduce m first")]
    Disconnected { rank: usize, m: usize },
    #[error("subgroup meets the isotropy group at vertex {0}: the action is not free")]
    NotFree(FacetSet),
    #[error("subgroup lives in (Z_2)^{found}, expected (Z_2)^{expected}")]
    SubgroupWidth { expected: usize, found: usize },
    #[error("malformed document: {0}")]
    Document(String),
}

/// Facet labels in `(Z_2)^width`, indexed by 0-based facet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    width: usize,
    labels: Vec<BitVector>,
}

impl Coloring {
    pub fn new(width: usize, labels: Vec<BitVector>) -> Result<Self, ColoringError> {
        for (i, l) in labels.iter().enumerate() {
            if l.width() != width {
                return Err(ColoringError::LabelWidth {
                    facet: i + 1,
                    expected: width,
                    found: l.width(),
                });
            }
        }
        Ok(Self { width, labels })
    }

    /// Checks that the label count matches the polytope's facet count.
    pub fn for_polytope(self, p: &SimplePolytope) -> Result<Self, ColoringError> {
        if self.labels.len() != p.facet_count() {
            return Err(ColoringError::LabelCount {
                expected: p.facet_count(),
                found: self.labels.len(),
            });
        }
        Ok(self)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn labels(&self) -> &[BitVector] {
        &self.labels
    }

    /// Label of the facet with 0-based index `facet`.
    pub fn label(&self, facet: usize) -> BitVector {
        self.labels[facet]
    }

    /// `G_sigma`: span of the labels of the facets in `sigma`.
    pub fn isotropy(&self, sigma: FacetSet) -> Subspace {
        let gens: Vec<BitVector> = sigma.indices().map(|i| self.labels[i]).collect();
        Subspace::span(self.width, &gens).expect("labels share the coloring width")
    }

    /// First vertex whose labels are dependent, if any.
    pub fn first_singular_vertex(&self, p: &SimplePolytope) -> Option<FacetSet> {
        p.vertices()
            .iter()
            .copied()
            .find(|&v| self.isotropy(v).rank() != v.len())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.labels.iter().map(ToString::to_string).collect()
    }
}

/// A coloring of width `n` that is independent at every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharacteristicFunction(Coloring);

impl CharacteristicFunction {
    pub fn coloring(&self) -> &Coloring {
        &self.0
    }

    pub fn label(&self, facet: usize) -> BitVector {
        self.0.label(facet)
    }
}

/// Validates `labels` as a characteristic function over `p`. Checking the
/// vertices suffices: every face's facet set lies inside some vertex's.
pub fn validate_characteristic(
    p: &SimplePolytope,
    labels: Vec<BitVector>,
) -> Result<CharacteristicFunction, ColoringError> {
    if let Some(w) = labels.first().map(|l| l.width()).filter(|&w| w != p.dim()) {
        return Err(ColoringError::NotCharacteristicWidth {
            expected: p.dim(),
            found: w,
        });
    }
    let coloring = Coloring::new(p.dim(), labels)?.for_polytope(p)?;
    match coloring.first_singular_vertex(p) {
        Some(v) => Err(ColoringError::SingularAtVertex(v)),
        None => Ok(CharacteristicFunction(coloring)),
    }
}

/// `mu_0(F_i) = e_i` in `(Z_2)^d`, facet order.
pub fn moment_angle_coloring(p: &SimplePolytope) -> Coloring {
    let d = p.facet_count();
    let labels = (0..d).map(|i| BitVector::unit(d, i).expect("d <= 64")).collect();
    Coloring { width: d, labels }
}

/// The facets not incident to a chosen vertex `v0` (the cut facets, ascending)
/// and the facets through `v0` (ascending). Fixes the `(Z_2)^k + (Z_2)^n`
/// coordinate split: coordinate `i < k` belongs to `cut[i]`, coordinate
/// `k + j` to `base[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CutFrame {
    v0: FacetSet,
    cut: Vec<usize>,
    base: Vec<usize>,
}

impl CutFrame {
    pub fn new(p: &SimplePolytope, v0: FacetSet) -> Result<Self, ColoringError> {
        if !p.is_vertex(v0) {
            return Err(ColoringError::NotAVertex(v0));
        }
        let (base, cut) = (0..p.facet_count()).partition(|&i| v0.contains(i));
        Ok(Self { v0, cut, base })
    }

    /// The lexicographically last vertex, used when no `v0` is given.
    pub fn default_for(p: &SimplePolytope) -> Self {
        let v0 = *p.vertices().last().expect("a valid polytope has vertices");
        Self::new(p, v0).expect("v0 is a vertex")
    }

    pub fn v0(&self) -> FacetSet {
        self.v0
    }

    /// 0-based indices of the cut facets `F_1..F_k`, ascending.
    pub fn cut(&self) -> &[usize] {
        &self.cut
    }

    /// 0-based indices of the facets through `v0`, ascending.
    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn k(&self) -> usize {
        self.cut.len()
    }

    pub fn n(&self) -> usize {
        self.base.len()
    }
}

/// Moment-angle coloring in the cut-first coordinates of `frame`:
/// `cut[i] -> e_i`, `base[j] -> e_{k+j}`.
pub fn moment_angle_coloring_cut_first(p: &SimplePolytope, frame: &CutFrame) -> Coloring {
    let d = p.facet_count();
    let mut labels = vec![BitVector::zero(d).expect("d <= 64"); d];
    for (pos, &facet) in frame.cut.iter().chain(&frame.base).enumerate() {
        labels[facet] = BitVector::unit(d, pos).expect("d <= 64");
    }
    Coloring { width: d, labels }
}

/// Input of a glue-back construction `M(V, lambda)` over a small cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlueSpec {
    polytope: Arc<SimplePolytope>,
    mu: CharacteristicFunction,
    frame: CutFrame,
    m: usize,
    lambda: Vec<BitVector>,
}

impl GlueSpec {
    pub fn new(
        polytope: Arc<SimplePolytope>,
        mu: CharacteristicFunction,
        v0: FacetSet,
        m: usize,
        lambda: Vec<BitVector>,
    ) -> Result<Self, ColoringError> {
        let frame = CutFrame::new(&polytope, v0)?;
        Self::with_frame(polytope, mu, frame, m, lambda)
    }

    pub fn with_frame(
        polytope: Arc<SimplePolytope>,
        mu: CharacteristicFunction,
        frame: CutFrame,
        m: usize,
        lambda: Vec<BitVector>,
    ) -> Result<Self, ColoringError> {
        if mu.0.labels.len() != polytope.facet_count() {
            return Err(ColoringError::LabelCount {
                expected: polytope.facet_count(),
                found: mu.0.labels.len(),
            });
        }
        if lambda.len() != frame.k() {
            return Err(ColoringError::PanelCount {
                expected: frame.k(),
                found: lambda.len(),
            });
        }
        for (i, l) in lambda.iter().enumerate() {
            if l.width() != m {
                return Err(ColoringError::LabelWidth {
                    facet: frame.cut[i] + 1,
                    expected: m,
                    found: l.width(),
                });
            }
        }
        if polytope.dim() + m > crate::gf2::MAX_WIDTH {
            return Err(Gf2Error::WidthTooLarge(polytope.dim() + m).into());
        }
        Ok(Self {
            polytope,
            mu,
            frame,
            m,
            lambda,
        })
    }

    pub fn polytope(&self) -> &Arc<SimplePolytope> {
        &self.polytope
    }

    pub fn mu(&self) -> &CharacteristicFunction {
        &self.mu
    }

    pub fn frame(&self) -> &CutFrame {
        &self.frame
    }

    pub fn v0(&self) -> FacetSet {
        self.frame.v0
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.frame.k()
    }

    /// Panel colors `lambda(P_1..P_k)`, in cut order.
    pub fn lambda(&self) -> &[BitVector] {
        &self.lambda
    }

    /// Same polytope, mu and v0 with a different panel coloring.
    pub fn with_lambda(&self, m: usize, lambda: Vec<BitVector>) -> Result<Self, ColoringError> {
        Self::with_frame(self.polytope.clone(), self.mu.clone(), self.frame.clone(), m, lambda)
    }
}

/// Combined labels on `(Z_2)^(n+m)`: `(mu(F) | lambda(P_i))` on the `i`-th cut
/// facet, `(mu(F) | 0)` on the facets through `v0`.
pub fn glue_back_coloring(spec: &GlueSpec) -> Coloring {
    let m = spec.m;
    let zero = BitVector::zero(m).expect("m validated");
    let mut block = vec![zero; spec.polytope.facet_count()];
    for (&facet, &color) in spec.frame.cut.iter().zip(&spec.lambda) {
        block[facet] = color;
    }
    let labels = spec
        .mu
        .0
        .labels
        .iter()
        .zip(block)
        .map(|(&mu, lam)| mu.concat(lam).expect("width validated"))
        .collect();
    Coloring {
        width: spec.polytope.dim() + m,
        labels,
    }
}

/// `L_lambda` and its rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankInfo {
    pub l_lambda: Subspace,
    pub rank: usize,
    /// `rank == k`.
    pub maximally_independent: bool,
}

pub fn rank_info(spec: &GlueSpec) -> RankInfo {
    let l_lambda = Subspace::span(spec.m, &spec.lambda).expect("widths validated");
    let rank = l_lambda.rank();
    RankInfo {
        l_lambda,
        rank,
        maximally_independent: rank == spec.k(),
    }
}

/// Splits the panels into a greedy basis of `L_lambda` (first independent
/// panels in cut order) and the remaining panels, in order.
fn basis_panels(lambda: &[BitVector], m: usize) -> (Vec<usize>, Vec<usize>) {
    let mut span = Subspace::zero(m).expect("m validated");
    let mut basis = Vec::new();
    let mut rest = Vec::new();
    for (i, &l) in lambda.iter().enumerate() {
        if span.insert(l).expect("widths validated") {
            basis.push(i);
        } else {
            rest.push(i);
        }
    }
    (basis, rest)
}

/// Completion of `L_lambda` to `(Z_2)^m` by unit vectors, taken in order.
fn completion_vectors(l_lambda: &Subspace) -> Vec<BitVector> {
    let m = l_lambda.ambient_width();
    let mut span = l_lambda.clone();
    (0..m)
        .map(|i| BitVector::unit(m, i).expect("i < m"))
        .filter(|&e| span.insert(e).expect("width m"))
        .collect()
}

/// The chain `lambda_0 = lambda, lambda_1, ..., lambda_{k-s}` that replaces the
/// non-basis panels one at a time by completion vectors `omega_1, omega_2, ...`.
/// Each step raises the rank by one; the last coloring is maximally independent.
pub fn complete_to_max(spec: &GlueSpec) -> Result<Vec<GlueSpec>, ColoringError> {
    if spec.m != spec.k() {
        return Err(ColoringError::NotSquare {
            m: spec.m,
            k: spec.k(),
        });
    }
    let info = rank_info(spec);
    let (_, rest) = basis_panels(&spec.lambda, spec.m);
    let omegas = completion_vectors(&info.l_lambda);
    debug_assert_eq!(rest.len(), omegas.len());
    let mut chain = vec![spec.clone()];
    let mut lambda = spec.lambda.clone();
    for (&panel, &omega) in rest.iter().zip(&omegas) {
        lambda[panel] = omega;
        chain.push(spec.with_lambda(spec.m, lambda.clone())?);
    }
    Ok(chain)
}

/// Automorphism `A` of `(Z_2)^n` with `A mu(base_j) = e_j`; normalizes `mu`
/// at `v0` so that its values can be placed in the second coordinate block.
fn normalizer(mu: &CharacteristicFunction, frame: &CutFrame) -> Gf2Matrix {
    let n = frame.n();
    let at_v0: Vec<BitVector> = frame.base.iter().map(|&f| mu.label(f)).collect();
    let units: Vec<BitVector> = (0..n).map(|j| BitVector::unit(n, j).expect("j < n")).collect();
    solve_label_isomorphism(&at_v0, &units)
        .expect("equal lengths")
        .expect("mu is independent at v0")
}

/// `sigma(e_i) = e_i + iota(mu(F_i))` for `i = 1..k`, as a `(k+n) x k` matrix.
/// `iota` places the normalized value `A mu(F_i)` in coordinates `k..k+n`.
pub fn sigma_matrix(mu: &CharacteristicFunction, frame: &CutFrame) -> Gf2Matrix {
    let (k, n) = (frame.k(), frame.n());
    let a = normalizer(mu, frame);
    let columns: Vec<BitVector> = frame
        .cut
        .iter()
        .enumerate()
        .map(|(i, &facet)| {
            let image = a.apply(mu.label(facet)).expect("width n");
            BitVector::unit(k + n, i).expect("k+n <= 64") + image.embed(k + n, k).expect("fits")
        })
        .collect();
    Gf2Matrix::from_columns(&columns, k + n).expect("width k+n")
}

/// `H_mu`: the rank-`k` subgroup of `(Z_2)^(k+n)` spanned by `e_i + mu(F_i)`.
pub fn h_mu_subgroup(p: &SimplePolytope, mu: &CharacteristicFunction, frame: &CutFrame) -> Subspace {
    debug_assert_eq!(frame.n(), p.dim());
    let k = frame.k();
    sigma_image(mu, frame, &Subspace::full(k).expect("k <= 64")).expect("width k")
}

/// `sigma(N)` for a subgroup `N` of `(Z_2)^k`.
pub fn sigma_image(
    mu: &CharacteristicFunction,
    frame: &CutFrame,
    n: &Subspace,
) -> Result<Subspace, ColoringError> {
    if n.ambient_width() != frame.k() {
        return Err(ColoringError::SubgroupWidth {
            expected: frame.k(),
            found: n.ambient_width(),
        });
    }
    Ok(n.image(&sigma_matrix(mu, frame))?)
}

/// `N*_lambda` for a connected glue-back (`rank(lambda) = m`), in panel
/// coordinates of `(Z_2)^k`.
///
/// With the greedy basis panels `b_1..b_m` and the remaining panels
/// `q_1..q_{k-m}`, coordinates are taken in the adapted basis
/// `{lambda(b_1), .., lambda(b_m), omega_1, .., omega_{k-m}}` with `omega_j`
/// attached to panel `q_j`. The generator `lambda(q_j) + omega_j` then reads
/// `e_{q_j} + sum_i c_ji e_{b_i}` where `lambda(q_j) = sum_i c_ji lambda(b_i)`.
pub fn n_star_subgroup(spec: &GlueSpec) -> Result<Subspace, ColoringError> {
    let info = rank_info(spec);
    if info.rank < spec.m {
        return Err(ColoringError::Disconnected {
            rank: info.rank,
            m: spec.m,
        });
    }
    let k = spec.k();
    let (basis, rest) = basis_panels(&spec.lambda, spec.m);
    let basis_values: Vec<BitVector> = basis.iter().map(|&i| spec.lambda[i]).collect();
    // coordinates of x in the panel basis: phi(lambda(b_i)) = e_{b_i}
    let targets: Vec<BitVector> = basis
        .iter()
        .map(|&i| BitVector::unit(k, i).expect("i < k"))
        .collect();
    let generators: Vec<BitVector> = if basis.is_empty() {
        rest.iter().map(|&q| BitVector::unit(k, q).expect("q < k")).collect()
    } else {
        let coords = solve_label_isomorphism(&basis_values, &targets)?
            .expect("greedy basis is independent");
        rest.iter()
            .map(|&q| coords.apply(spec.lambda[q]).expect("width m") + BitVector::unit(k, q).expect("q < k"))
            .collect()
    };
    Ok(Subspace::span(k, &generators)?)
}

/// Labels of the partial quotient by `h`: `Q label(i)` with `Q` the quotient
/// projection. Requires `h` to meet every vertex isotropy group trivially.
pub fn partial_quotient_coloring(
    p: &SimplePolytope,
    c: &Coloring,
    h: &Subspace,
) -> Result<Coloring, ColoringError> {
    if h.ambient_width() != c.width {
        return Err(ColoringError::SubgroupWidth {
            expected: c.width,
            found: h.ambient_width(),
        });
    }
    for &v in p.vertices() {
        if !c.isotropy(v).meets_trivially(h)? {
            return Err(ColoringError::NotFree(v));
        }
    }
    let q = quotient_projection(h);
    let labels = c
        .labels
        .iter()
        .map(|&l| q.apply(l))
        .collect::<Result<Vec<_>, _>>()?;
    Coloring::new(q.row_count(), labels)
}

/// Finds a characteristic function by depth-first search over nonzero labels,
/// pinning `e_1..e_n` on the facets of the first vertex. Returns the
/// lexicographically first solution in that search order.
pub fn search_characteristic(p: &SimplePolytope) -> Option<CharacteristicFunction> {
    let n = p.dim();
    let d = p.facet_count();
    let first = p.vertices()[0];
    let mut labels: Vec<Option<BitVector>> = vec![None; d];
    for (j, f) in first.indices().enumerate() {
        labels[f] = Some(BitVector::unit(n, j).ok()?);
    }
    let order: Vec<usize> = (0..d).filter(|&f| labels[f].is_none()).collect();
    let candidates: Vec<BitVector> = (1u64..1 << n)
        .map(|b| BitVector::from_bits(n, b).expect("fits"))
        .collect();

    fn consistent(p: &SimplePolytope, labels: &[Option<BitVector>], facet: usize) -> bool {
        p.vertices().iter().filter(|v| v.contains(facet)).all(|v| {
            let assigned: Vec<BitVector> = v.indices().filter_map(|i| labels[i]).collect();
            let width = assigned[0].width();
            Subspace::span(width, &assigned).map(|s| s.rank() == assigned.len()).unwrap_or(false)
        })
    }

    fn go(
        p: &SimplePolytope,
        labels: &mut Vec<Option<BitVector>>,
        order: &[usize],
        candidates: &[BitVector],
    ) -> bool {
        let Some((&facet, rest)) = order.split_first() else {
            return true;
        };
        for &c in candidates {
            labels[facet] = Some(c);
            if consistent(p, labels, facet) && go(p, labels, rest, candidates) {
                return true;
            }
        }
        labels[facet] = None;
        false
    }

    if !go(p, &mut labels, &order, &candidates) {
        return None;
    }
    validate_characteristic(p, labels.into_iter().map(|l| l.expect("assigned")).collect()).ok()
}

/// `{"r": int, "labels": ["0101", ...]}`, leftmost character = coordinate 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringDoc {
    pub r: usize,
    pub labels: Vec<String>,
}

impl ColoringDoc {
    pub fn to_coloring(&self) -> Result<Coloring, ColoringError> {
        let labels = self
            .labels
            .iter()
            .map(|s| s.parse::<BitVector>())
            .collect::<Result<Vec<_>, _>>()?;
        Coloring::new(self.r, labels)
    }
}

impl From<&Coloring> for ColoringDoc {
    fn from(c: &Coloring) -> Self {
        ColoringDoc {
            r: c.width,
            labels: c.to_strings(),
        }
    }
}

/// `{"mu": coloring, "v0": [int, ...], "lambda": ["01", ...]}`. `m` is the
/// common length of the lambda strings; an explicit `"m"` is accepted so that
/// `m = 0` can be stated even though every string is then empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlueSpecDoc {
    pub mu: ColoringDoc,
    pub v0: Vec<usize>,
    pub lambda: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
}

impl GlueSpecDoc {
    pub fn to_spec(&self, p: Arc<SimplePolytope>) -> Result<GlueSpec, ColoringError> {
        let mu = validate_characteristic(&p, self.mu.to_coloring()?.labels)?;
        let lambda = self
            .lambda
            .iter()
            .map(|s| s.parse::<BitVector>())
            .collect::<Result<Vec<_>, _>>()?;
        let m = self
            .m
            .or_else(|| lambda.first().map(|l| l.width()))
            .unwrap_or(0);
        if self.v0.iter().any(|&f| f == 0 || f > p.facet_count()) {
            return Err(ColoringError::Document(format!("v0 {:?} names a facet out of range", self.v0)));
        }
        GlueSpec::new(p, mu, FacetSet::from_labels(&self.v0), m, lambda)
    }
}

impl From<&GlueSpec> for GlueSpecDoc {
    fn from(spec: &GlueSpec) -> Self {
        GlueSpecDoc {
            mu: ColoringDoc::from(spec.mu.coloring()),
            v0: spec.v0().labels(),
            lambda: spec.lambda.iter().map(ToString::to_string).collect(),
            m: Some(spec.m),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{cube, dodecahedron, polygon, product, simplex};

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn bvs(items: &[&str]) -> Vec<BitVector> {
        items.iter().map(|s| bv(s)).collect()
    }

    fn square_torus() -> (Arc<SimplePolytope>, CharacteristicFunction) {
        let p = Arc::new(polygon(4).unwrap());
        let mu = validate_characteristic(&p, bvs(&["10", "01", "10", "01"])).unwrap();
        (p, mu)
    }

    fn torus_spec(m: usize, lambda: &[&str]) -> GlueSpec {
        let (p, mu) = square_torus();
        GlueSpec::new(p, mu, FacetSet::from_labels(&[3, 4]), m, bvs(lambda)).unwrap()
    }

    #[test]
    fn characteristic_examples() {
        let tri = polygon(3).unwrap();
        assert!(validate_characteristic(&tri, bvs(&["10", "01", "11"])).is_ok());
        let sq = polygon(4).unwrap();
        assert!(validate_characteristic(&sq, bvs(&["10", "01", "10", "01"])).is_ok());
        assert_eq!(
            validate_characteristic(&sq, bvs(&["10", "10", "01", "01"])).unwrap_err(),
            ColoringError::SingularAtVertex(FacetSet::from_labels(&[1, 2]))
        );
        assert!(matches!(
            validate_characteristic(&sq, bvs(&["10", "01", "10"])),
            Err(ColoringError::LabelCount { .. })
        ));
        assert!(matches!(
            validate_characteristic(&sq, bvs(&["100", "010", "100", "010"])),
            Err(ColoringError::NotCharacteristicWidth { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn moment_angle_examples() {
        let tri = polygon(3).unwrap();
        assert_eq!(moment_angle_coloring(&tri).labels(), bvs(&["100", "010", "001"]).as_slice());
        let sq = polygon(4).unwrap();
        let c = moment_angle_coloring(&sq);
        assert_eq!(c.width(), 4);
        for p in [tri, sq, cube(3).unwrap()] {
            let c = moment_angle_coloring(&p);
            assert_eq!(Subspace::span(c.width(), c.labels()).unwrap().rank(), p.facet_count());
        }
    }

    #[test]
    fn glue_back_labels() {
        let spec = torus_spec(2, &["10", "01"]);
        assert_eq!(
            glue_back_coloring(&spec).labels(),
            bvs(&["1010", "0101", "1000", "0100"]).as_slice()
        );
        let small = torus_spec(0, &["", ""]);
        assert_eq!(glue_back_coloring(&small), *spec.mu().coloring());
    }

    #[test]
    fn glue_spec_validation() {
        let (p, mu) = square_torus();
        assert_eq!(
            GlueSpec::new(p.clone(), mu.clone(), FacetSet::from_labels(&[1, 3]), 1, bvs(&["1", "1"])).unwrap_err(),
            ColoringError::NotAVertex(FacetSet::from_labels(&[1, 3]))
        );
        assert!(matches!(
            GlueSpec::new(p.clone(), mu.clone(), FacetSet::from_labels(&[3, 4]), 1, bvs(&["1"])),
            Err(ColoringError::PanelCount { expected: 2, found: 1 })
        ));
        assert!(matches!(
            GlueSpec::new(p, mu, FacetSet::from_labels(&[3, 4]), 2, bvs(&["1", "1"])),
            Err(ColoringError::LabelWidth { .. })
        ));
    }

    #[test]
    fn rank_examples() {
        let r = rank_info(&torus_spec(2, &["10", "01"]));
        assert_eq!((r.rank, r.maximally_independent), (2, true));
        let r = rank_info(&torus_spec(2, &["10", "10"]));
        assert_eq!((r.rank, r.maximally_independent), (1, false));
        assert_eq!(rank_info(&torus_spec(2, &["00", "00"])).rank, 0);
    }

    #[test]
    fn completion_examples() {
        let chain = complete_to_max(&torus_spec(2, &["10", "01"])).unwrap();
        assert_eq!(chain.len(), 1);

        let chain = complete_to_max(&torus_spec(2, &["10", "10"])).unwrap();
        let lambdas: Vec<Vec<BitVector>> = chain.iter().map(|s| s.lambda().to_vec()).collect();
        assert_eq!(lambdas, vec![bvs(&["10", "10"]), bvs(&["10", "01"])]);

        let chain = complete_to_max(&torus_spec(2, &["00", "00"])).unwrap();
        let lambdas: Vec<Vec<BitVector>> = chain.iter().map(|s| s.lambda().to_vec()).collect();
        assert_eq!(lambdas, vec![bvs(&["00", "00"]), bvs(&["10", "00"]), bvs(&["10", "01"])]);

        assert_eq!(
            complete_to_max(&torus_spec(1, &["1", "0"])).unwrap_err(),
            ColoringError::NotSquare { m: 1, k: 2 }
        );
    }

    #[test]
    fn completion_raises_rank_by_one() {
        for bits in 0..16u64 {
            let lambda = vec![
                BitVector::from_bits(2, bits & 3).unwrap(),
                BitVector::from_bits(2, bits >> 2).unwrap(),
            ];
            let (p, mu) = square_torus();
            let spec = GlueSpec::new(p, mu, FacetSet::from_labels(&[3, 4]), 2, lambda).unwrap();
            let chain = complete_to_max(&spec).unwrap();
            let base = rank_info(&spec).rank;
            for (j, s) in chain.iter().enumerate() {
                assert_eq!(rank_info(s).rank, base + j);
            }
            assert!(rank_info(chain.last().unwrap()).maximally_independent);
        }
    }

    #[test]
    fn h_mu_examples() {
        let (p, mu) = square_torus();
        let frame = CutFrame::new(&p, FacetSet::from_labels(&[3, 4])).unwrap();
        let h = h_mu_subgroup(&p, &mu, &frame);
        assert_eq!(h, Subspace::span(4, &bvs(&["1010", "0101"])).unwrap());

        let tri = polygon(3).unwrap();
        let mu = validate_characteristic(&tri, bvs(&["10", "01", "11"])).unwrap();
        let frame = CutFrame::default_for(&tri);
        assert_eq!(frame.cut(), &[0]);
        let h = h_mu_subgroup(&tri, &mu, &frame);
        assert_eq!(h.rank(), 1);
        // mu at v0 = {2,3} is (01, 11); normalized: A*01 = 10, A*11 = 01, so A*mu(F1) = 11
        assert_eq!(h.basis(), &[bv("111")]);
    }

    #[test]
    fn n_star_examples() {
        let spec = torus_spec(2, &["10", "01"]);
        assert_eq!(n_star_subgroup(&spec).unwrap().rank(), 0);

        let spec = torus_spec(1, &["1", "1"]);
        assert_eq!(n_star_subgroup(&spec).unwrap(), Subspace::span(2, &bvs(&["11"])).unwrap());

        let spec = torus_spec(2, &["10", "10"]);
        assert_eq!(
            n_star_subgroup(&spec).unwrap_err(),
            ColoringError::Disconnected { rank: 1, m: 2 }
        );
        // m = 0: every panel generates
        assert_eq!(n_star_subgroup(&torus_spec(0, &["", ""])).unwrap().rank(), 2);
    }

    #[test]
    fn n_star_is_the_relation_space_of_lambda() {
        // brute force: N* = {y : sum y_i lambda_i = 0}
        for bits in 0..16u64 {
            let lambda = vec![
                BitVector::from_bits(2, bits & 3).unwrap(),
                BitVector::from_bits(2, bits >> 2).unwrap(),
            ];
            let spec = torus_spec(2, &["00", "00"]).with_lambda(2, lambda.clone()).unwrap();
            let Ok(n_star) = n_star_subgroup(&spec) else {
                assert!(rank_info(&spec).rank < 2);
                continue;
            };
            for y in 0..4u64 {
                let yv = BitVector::from_bits(2, y).unwrap();
                let sum = yv.ones().fold(BitVector::zero(2).unwrap(), |acc, i| acc + lambda[i]);
                assert_eq!(n_star.contains(yv).unwrap(), sum.is_zero());
            }
        }
    }

    #[test]
    fn sigma_examples() {
        let (p, mu) = square_torus();
        let frame = CutFrame::new(&p, FacetSet::from_labels(&[3, 4])).unwrap();
        assert_eq!(sigma_image(&mu, &frame, &Subspace::zero(2).unwrap()).unwrap().rank(), 0);
        let image = sigma_image(&mu, &frame, &Subspace::span(2, &bvs(&["10"])).unwrap()).unwrap();
        assert_eq!(image, Subspace::span(4, &bvs(&["1010"])).unwrap());
        let full = Subspace::full(2).unwrap();
        assert_eq!(sigma_image(&mu, &frame, &full).unwrap().rank(), 2);
        assert!(sigma_image(&mu, &frame, &Subspace::zero(3).unwrap()).is_err());
    }

    #[test]
    fn partial_quotient_examples() {
        let (p, mu) = square_torus();
        let z = moment_angle_coloring(&p);
        assert_eq!(partial_quotient_coloring(&p, &z, &Subspace::zero(4).unwrap()).unwrap(), z);

        let frame = CutFrame::new(&p, FacetSet::from_labels(&[3, 4])).unwrap();
        let h = h_mu_subgroup(&p, &mu, &frame);
        let q = partial_quotient_coloring(&p, &moment_angle_coloring_cut_first(&p, &frame), &h).unwrap();
        assert_eq!(q.labels(), bvs(&["10", "01", "10", "01"]).as_slice());

        let bad = Subspace::span(4, &bvs(&["1100"])).unwrap();
        assert_eq!(
            partial_quotient_coloring(&p, &z, &bad).unwrap_err(),
            ColoringError::NotFree(FacetSet::from_labels(&[1, 2]))
        );
    }

    #[test]
    fn h_mu_acts_freely_on_corpus() {
        let corpus = [
            polygon(3).unwrap(),
            polygon(5).unwrap(),
            polygon(8).unwrap(),
            cube(3).unwrap(),
            simplex(3).unwrap(),
            product(&polygon(5).unwrap(), &simplex(1).unwrap()).unwrap(),
            dodecahedron(),
        ];
        for p in &corpus {
            let mu = search_characteristic(p).expect("corpus polytopes admit small covers");
            for &v0 in p.vertices() {
                let frame = CutFrame::new(p, v0).unwrap();
                let h = h_mu_subgroup(p, &mu, &frame);
                assert_eq!(h.rank(), p.k());
                let z = moment_angle_coloring_cut_first(p, &frame);
                let q = partial_quotient_coloring(p, &z, &h).unwrap();
                // the quotient labels are mu up to an automorphism
                assert!(solve_label_isomorphism(mu.coloring().labels(), q.labels())
                    .unwrap()
                    .is_some());
            }
        }
    }

    #[test]
    fn characteristic_iff_small_glue_back_is_independent() {
        let sq = Arc::new(polygon(4).unwrap());
        for bits in 0..256u64 {
            let labels: Vec<BitVector> = (0..4)
                .map(|i| BitVector::from_bits(2, bits >> (2 * i) & 3).unwrap())
                .collect();
            let direct = Coloring::new(2, labels.clone()).unwrap().first_singular_vertex(&sq).is_none();
            assert_eq!(validate_characteristic(&sq, labels.clone()).is_ok(), direct);
            if let Ok(mu) = validate_characteristic(&sq, labels) {
                let spec = GlueSpec::new(sq.clone(), mu, FacetSet::from_labels(&[3, 4]), 0, bvs(&["", ""])).unwrap();
                assert!(glue_back_coloring(&spec).first_singular_vertex(&sq).is_none());
            }
        }
    }

    #[test]
    fn documents_round_trip() {
        let spec = torus_spec(2, &["10", "11"]);
        let doc = GlueSpecDoc::from(&spec);
        let text = serde_json::to_string(&doc).unwrap();
        let back: GlueSpecDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_spec(spec.polytope().clone()).unwrap(), spec);

        let doc: GlueSpecDoc =
            serde_json::from_str(r#"{"mu":{"r":2,"labels":["10","01","10","01"]},"v0":[3,4],"lambda":["",""]}"#)
                .unwrap();
        let (p, _) = square_torus();
        assert_eq!(doc.to_spec(p).unwrap().m(), 0);
    }
}
