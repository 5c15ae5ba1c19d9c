//! Quotient cell complexes `P x (Z_2)^r / ~`.
//!
//! `(p, g) ~ (p, g')` whenever `g - g'` lies in `G_sigma`, the span of the
//! labels of the facets containing `p`. Every face `sigma` of `P` contributes
//! one cell per coset of `G_sigma`; cell `(sigma, C)` has dimension
//! `n - |sigma|` and its boundary is the sum of the cells
//! `(sigma + {j}, C mod G_{sigma + {j}})` over the facets `j` with
//! `sigma + {j}` a face. Identifications act only on the group coordinate, so
//! each boundary face of a product cell is hit exactly once and every incidence
//! coefficient is 1.
//!
//! Cells are ordered by dimension, then face (graded lexicographic), then
//! coset index. Boundary matrices are therefore reproducible bit for bit.

use std::collections::HashMap;
use std::fmt;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Coloring, ColoringError};
use crate::gf2::{BitVector, Gf2Error, Gf2Matrix, Subspace};
use crate::polytope::{face_positions, FacetSet, SimplePolytope};

/// Refuse to materialize complexes with more cells than this.
pub const MAX_CELLS: u128 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error("complex would have {cells} cells (limit {MAX_CELLS})")]
    TooLarge { cells: u128 },
    #[error("boundary of boundary is nonzero in dimension {dim}")]
    BoundaryNotNilpotent { dim: usize },
    #[error("no component with id {0}")]
    UnknownComponent(usize),
    #[error("facet {facet} outside 1..={d}")]
    FacetOutOfRange { facet: usize, d: usize },
    #[error("translation does not preserve the complex (dimension {dim}, cell {cell})")]
    NotInvariant { dim: usize, cell: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// A cell `(sigma, C)`: the face named by `sigma` times the coset with
/// canonical representative `rep`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    pub face: FacetSet,
    pub rep: BitVector,
}

/// Vertex at which the labels are dependent; the quotient there is not a
/// manifold chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NonManifoldWarning {
    pub vertex: FacetSet,
}

impl fmt::Display for NonManifoldWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "labels are dependent at vertex {}; the quotient is not a closed manifold", self.vertex)
    }
}

/// Boundary map in compressed form: column `i` lists the `(q-1)`-cells in the
/// boundary of `q`-cell `i`, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseBoundary {
    offsets: Vec<usize>,
    entries: Vec<u32>,
    target_count: usize,
}

impl SparseBoundary {
    fn from_columns(columns: Vec<Vec<u32>>, target_count: usize) -> Self {
        let mut offsets = Vec::with_capacity(columns.len() + 1);
        let mut entries = Vec::new();
        offsets.push(0);
        for col in columns {
            entries.extend(col);
            offsets.push(entries.len());
        }
        Self {
            offsets,
            entries,
            target_count,
        }
    }

    pub fn source_count(&self) -> usize {
        self.offsets.len().saturating_sub(1)
    }

    pub fn target_count(&self) -> usize {
        self.target_count
    }

    pub fn column(&self, i: usize) -> &[u32] {
        &self.entries[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[u32]> {
        (0..self.source_count()).map(move |i| self.column(i))
    }

    pub fn nonzeros(&self) -> usize {
        self.entries.len()
    }

    /// Dense matrix, rows = `(q-1)`-cells, columns = `q`-cells.
    pub fn to_matrix(&self) -> Gf2Matrix {
        Gf2Matrix::from_entries(
            self.target_count,
            self.source_count(),
            self.columns()
                .enumerate()
                .flat_map(|(j, col)| col.iter().map(move |&i| (i as usize, j))),
        )
    }

    /// GF(2) rank, eliminating along the shorter side.
    pub fn rank(&self) -> usize {
        let (targets, sources) = (self.target_count, self.source_count());
        if targets == 0 || sources == 0 {
            return 0;
        }
        let m = if sources > targets {
            // rows = sources, so rows are only `targets` bits wide
            Gf2Matrix::from_entries(
                sources,
                targets,
                self.columns()
                    .enumerate()
                    .flat_map(|(j, col)| col.iter().map(move |&i| (j, i as usize))),
            )
        } else {
            self.to_matrix()
        };
        m.rank()
    }
}

/// The quotient cell complex of a polytope under a coloring, or a
/// subcomplex of one.
#[derive(Debug, Clone)]
pub struct QuotientCellComplex {
    polytope_dim: usize,
    facet_count: usize,
    width: usize,
    top_dim: usize,
    groups: HashMap<FacetSet, Subspace>,
    cells: Vec<Vec<Cell>>,
    boundary: Vec<SparseBoundary>,
    lookup: Vec<HashMap<Cell, u32>>,
    warnings: Vec<NonManifoldWarning>,
}

/// Builds the quotient complex of `p` under `c`.
pub fn build_complex(p: &SimplePolytope, c: &Coloring) -> Result<QuotientCellComplex, ComplexError> {
    if c.labels().len() != p.facet_count() {
        return Err(ColoringError::LabelCount {
            expected: p.facet_count(),
            found: c.labels().len(),
        }
        .into());
    }
    let n = p.dim();
    let r = c.width();
    let faces = p.faces();
    let positions = face_positions(&faces);

    let warnings = p
        .vertices()
        .iter()
        .filter(|&&v| c.isotropy(v).rank() != v.len())
        .map(|&vertex| NonManifoldWarning { vertex })
        .collect();

    let groups: HashMap<FacetSet, Subspace> = faces
        .par_iter()
        .flatten()
        .map(|&f| (f, c.isotropy(f)))
        .collect();

    let total: u128 = groups.values().map(|g| g.coset_count()).sum();
    if total > MAX_CELLS {
        return Err(ComplexError::TooLarge { cells: total });
    }

    // cells of dimension q come from faces with |sigma| = n - q
    let mut cells: Vec<Vec<Cell>> = Vec::with_capacity(n + 1);
    let mut face_offset: HashMap<FacetSet, u32> = HashMap::new();
    for q in 0..=n {
        let mut list = Vec::new();
        for &face in &faces[n - q] {
            face_offset.insert(face, list.len() as u32);
            let g = &groups[&face];
            let count = g.coset_count() as u64;
            list.extend((0..count).map(|i| Cell {
                face,
                rep: g.rep_of_index(i).expect("index below coset count"),
            }));
        }
        cells.push(list);
    }

    // cofaces of each face one level down, as (face, group, offset)
    let cofaces = |face: FacetSet| -> Vec<(&Subspace, u32)> {
        (0..p.facet_count())
            .filter(|&j| !face.contains(j))
            .map(|j| face.with(j))
            .filter(|t| positions.contains_key(t))
            .map(|t| (&groups[&t], face_offset[&t]))
            .collect()
    };

    let mut boundary = vec![SparseBoundary::default()];
    for q in 1..=n {
        let columns: Vec<Vec<u32>> = faces[n - q]
            .par_iter()
            .flat_map_iter(|&face| {
                let targets = cofaces(face);
                let g = &groups[&face];
                (0..g.coset_count() as u64).map(move |i| {
                    let rep = g.rep_of_index(i).expect("index below coset count");
                    let mut col: Vec<u32> = targets
                        .iter()
                        .map(|(gt, off)| off + gt.coset_index_unchecked(rep) as u32)
                        .collect();
                    col.sort_unstable();
                    col
                })
            })
            .collect();
        boundary.push(SparseBoundary::from_columns(columns, cells[q - 1].len()));
    }

    let complex = QuotientCellComplex::assemble(n, p.facet_count(), r, n, groups, cells, boundary, warnings);
    complex.check_nilpotent()?;
    Ok(complex)
}

impl QuotientCellComplex {
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        polytope_dim: usize,
        facet_count: usize,
        width: usize,
        top_dim: usize,
        groups: HashMap<FacetSet, Subspace>,
        cells: Vec<Vec<Cell>>,
        boundary: Vec<SparseBoundary>,
        warnings: Vec<NonManifoldWarning>,
    ) -> Self {
        let lookup = cells
            .par_iter()
            .map(|list| list.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect())
            .collect();
        Self {
            polytope_dim,
            facet_count,
            width,
            top_dim,
            groups,
            cells,
            boundary,
            lookup,
            warnings,
        }
    }

    fn check_nilpotent(&self) -> Result<(), ComplexError> {
        for q in 2..=self.top_dim {
            let lower = &self.boundary[q - 1];
            let ok = self.boundary[q].columns().collect::<Vec<_>>().par_iter().all(|col| {
                let mut acc: Vec<u32> = col.iter().flat_map(|&e| lower.column(e as usize)).copied().collect();
                acc.sort_unstable();
                acc.chunks(2).all(|pair| pair.len() == 2 && pair[0] == pair[1])
            });
            if !ok {
                return Err(ComplexError::BoundaryNotNilpotent { dim: q });
            }
        }
        Ok(())
    }

    /// Top dimension.
    pub fn dim(&self) -> usize {
        self.top_dim
    }

    /// Label width `r`.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn warnings(&self) -> &[NonManifoldWarning] {
        &self.warnings
    }

    pub fn cells(&self, q: usize) -> &[Cell] {
        self.cells.get(q).map_or(&[], Vec::as_slice)
    }

    pub fn cells_per_dim(&self) -> Vec<u64> {
        self.cells.iter().map(|c| c.len() as u64).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    /// `G_sigma` for a face of the underlying polytope.
    pub fn group(&self, face: FacetSet) -> Option<&Subspace> {
        self.groups.get(&face)
    }

    /// Boundary map from `q`-cells to `(q-1)`-cells, `1 <= q <= dim`.
    pub fn boundary(&self, q: usize) -> &SparseBoundary {
        &self.boundary[q]
    }

    /// Dense boundary matrix (rows `(q-1)`-cells, columns `q`-cells).
    pub fn boundary_matrix(&self, q: usize) -> Gf2Matrix {
        self.boundary[q].to_matrix()
    }

    pub fn index_of(&self, q: usize, cell: Cell) -> Option<usize> {
        self.lookup.get(q)?.get(&cell).map(|&i| i as usize)
    }

    /// Alternating cell count.
    pub fn euler(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(q, c)| if q % 2 == 0 { c.len() as i64 } else { -(c.len() as i64) })
            .sum()
    }

    /// Keeps the cells selected by `keep` (which must be closed under taking
    /// boundaries) with top dimension `top_dim`.
    fn subcomplex(&self, top_dim: usize, keep: impl Fn(usize, usize, &Cell) -> bool + Sync) -> Self {
        let mut cells = Vec::with_capacity(top_dim + 1);
        let mut remap: Vec<Vec<Option<u32>>> = Vec::with_capacity(top_dim + 1);
        for q in 0..=top_dim {
            let mut kept = Vec::new();
            let mut map = vec![None; self.cells[q].len()];
            for (i, cell) in self.cells[q].iter().enumerate() {
                if keep(q, i, cell) {
                    map[i] = Some(kept.len() as u32);
                    kept.push(*cell);
                }
            }
            cells.push(kept);
            remap.push(map);
        }
        let mut boundary = vec![SparseBoundary::default()];
        for q in 1..=top_dim {
            let columns = (0..self.cells[q].len())
                .filter(|&i| remap[q][i].is_some())
                .map(|i| {
                    self.boundary[q]
                        .column(i)
                        .iter()
                        .map(|&e| remap[q - 1][e as usize].expect("subcomplex closed under boundary"))
                        .collect()
                })
                .collect();
            boundary.push(SparseBoundary::from_columns(columns, cells[q - 1].len()));
        }
        let faces: std::collections::HashSet<FacetSet> = cells.iter().flatten().map(|c| c.face).collect();
        let groups = self
            .groups
            .iter()
            .filter(|(f, _)| faces.contains(f))
            .map(|(f, g)| (*f, g.clone()))
            .collect();
        Self::assemble(
            self.polytope_dim,
            self.facet_count,
            self.width,
            top_dim,
            groups,
            cells,
            boundary,
            self.warnings.clone(),
        )
    }
}

/// Betti numbers and derived quantities over GF(2).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiReport {
    pub betti: Vec<u64>,
    pub hrk: u64,
    pub euler: i64,
    pub components: u64,
    pub cells_per_dim: Vec<u64>,
}

/// Ranks of `d_1..d_dim`; entry `q` is `rank d_q`, entry 0 is 0.
pub fn boundary_ranks(cx: &QuotientCellComplex) -> Vec<usize> {
    let mut ranks: Vec<usize> = (0..=cx.top_dim)
        .into_par_iter()
        .map(|q| if q == 0 { 0 } else { cx.boundary[q].rank() })
        .collect();
    ranks.push(0);
    ranks
}

/// `beta_q = dim C_q - rank d_q - rank d_{q+1}`.
pub fn betti(cx: &QuotientCellComplex) -> BettiReport {
    let ranks = boundary_ranks(cx);
    let cells_per_dim = cx.cells_per_dim();
    let betti: Vec<u64> = cells_per_dim
        .iter()
        .enumerate()
        .map(|(q, &c)| c - ranks[q] as u64 - ranks[q + 1] as u64)
        .collect();
    BettiReport {
        hrk: betti.iter().sum(),
        euler: betti
            .iter()
            .enumerate()
            .map(|(q, &b)| if q % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum(),
        components: betti.first().copied().unwrap_or(0),
        betti,
        cells_per_dim,
    }
}

/// Connected components of a complex with a label for every cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabeling {
    pub count: usize,
    /// `labels[q][i]`: component of `q`-cell `i`. Ids follow first appearance
    /// among the 0-cells.
    pub labels: Vec<Vec<usize>>,
}

/// Components via union-find over the 1-skeleton.
pub fn components(cx: &QuotientCellComplex) -> ComponentLabeling {
    let vertex_count = cx.cells(0).len();
    let mut uf = UnionFind::<u32>::new(vertex_count);
    if cx.top_dim >= 1 {
        for edge in cx.boundary[1].columns() {
            for pair in edge.windows(2) {
                uf.union(pair[0], pair[1]);
            }
        }
    }
    let mut ids: HashMap<u32, usize> = HashMap::new();
    let vertex_labels: Vec<usize> = (0..vertex_count as u32)
        .map(|v| {
            let root = uf.find(v);
            let next = ids.len();
            *ids.entry(root).or_insert(next)
        })
        .collect();
    let mut labels = vec![vertex_labels];
    for q in 1..=cx.top_dim {
        let below = &labels[q - 1];
        let here = cx.boundary[q]
            .columns()
            .map(|col| below[*col.first().expect("cells of positive dimension have a boundary") as usize])
            .collect();
        labels.push(here);
    }
    ComponentLabeling {
        count: ids.len(),
        labels,
    }
}

/// The subcomplex of cells in component `id`.
pub fn restrict_to_component(cx: &QuotientCellComplex, id: usize) -> Result<QuotientCellComplex, ComplexError> {
    let labeling = components(cx);
    if id >= labeling.count {
        return Err(ComplexError::UnknownComponent(id));
    }
    Ok(cx.subcomplex(cx.top_dim, |q, i, _| labeling.labels[q][i] == id))
}

/// Every component as its own complex, in id order.
pub fn split_components(cx: &QuotientCellComplex) -> Vec<QuotientCellComplex> {
    let labeling = components(cx);
    (0..labeling.count)
        .map(|id| cx.subcomplex(cx.top_dim, |q, i, _| labeling.labels[q][i] == id))
        .collect()
}

/// Cells over the facet `F_facet` (1-based): the preimage of the facet,
/// a closed complex of dimension one less.
pub fn facial_subcomplex(cx: &QuotientCellComplex, facet: usize) -> Result<QuotientCellComplex, ComplexError> {
    if facet == 0 || facet > cx.facet_count {
        return Err(ComplexError::FacetOutOfRange {
            facet,
            d: cx.facet_count,
        });
    }
    if cx.top_dim == 0 {
        return Err(ComplexError::DimensionMismatch("a 0-dimensional complex has no facial subcomplex".into()));
    }
    let j = facet - 1;
    Ok(cx.subcomplex(cx.top_dim - 1, |_, _, c| c.face.contains(j)))
}

/// A dimension-preserving permutation of cells: `map[q][i]` is the image of
/// `q`-cell `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellPermutation {
    pub map: Vec<Vec<u32>>,
}

impl CellPermutation {
    pub fn is_identity(&self) -> bool {
        self.map
            .iter()
            .all(|m| m.iter().enumerate().all(|(i, &j)| i as u32 == j))
    }

    pub fn fixed_points(&self) -> usize {
        self.map
            .iter()
            .map(|m| m.iter().enumerate().filter(|&(i, &j)| i as u32 == j).count())
            .sum()
    }

    pub fn is_involution(&self) -> bool {
        self.map
            .iter()
            .all(|m| m.iter().enumerate().all(|(i, &j)| m[j as usize] as usize == i))
    }

    /// Number of 2-cycles among the `q`-cells.
    pub fn transpositions(&self, q: usize) -> usize {
        self.map[q]
            .iter()
            .enumerate()
            .filter(|&(i, &j)| (j as usize) > i && self.map[q][j as usize] as usize == i)
            .count()
    }

    /// `P d = d P` on every boundary map.
    pub fn commutes_with_boundary(&self, cx: &QuotientCellComplex) -> bool {
        (1..=cx.top_dim).all(|q| {
            let lower = &self.map[q - 1];
            cx.boundary[q].columns().enumerate().all(|(i, col)| {
                let mut image: Vec<u32> = col.iter().map(|&e| lower[e as usize]).collect();
                image.sort_unstable();
                image == cx.boundary[q].column(self.map[q][i] as usize)
            })
        })
    }
}

/// Translation by `g`: `(sigma, C) -> (sigma, C + g mod G_sigma)`.
pub fn translate_action(cx: &QuotientCellComplex, g: BitVector) -> Result<CellPermutation, ComplexError> {
    if g.width() != cx.width {
        return Err(Gf2Error::WidthMismatch {
            expected: cx.width,
            found: g.width(),
        }
        .into());
    }
    let mut map = Vec::with_capacity(cx.top_dim + 1);
    for q in 0..=cx.top_dim {
        let images = cx.cells[q]
            .iter()
            .enumerate()
            .map(|(i, cell)| {
                let rep = cx.groups[&cell.face].reduce_unchecked(cell.rep + g);
                cx.lookup[q]
                    .get(&Cell { face: cell.face, rep })
                    .copied()
                    .ok_or(ComplexError::NotInvariant { dim: q, cell: i })
            })
            .collect::<Result<Vec<u32>, _>>()?;
        map.push(images);
    }
    Ok(CellPermutation { map })
}

/// Whether `(sigma, C) -> (sigma, phi C mod G'_sigma)` is a well-defined
/// bijection from the cells of `a` onto those of `b` that intertwines the
/// boundary maps exactly.
pub fn complexes_identical(
    a: &QuotientCellComplex,
    b: &QuotientCellComplex,
    phi: &Gf2Matrix,
) -> Result<bool, ComplexError> {
    if a.top_dim != b.top_dim {
        return Err(ComplexError::DimensionMismatch(format!(
            "top dimensions {} and {}",
            a.top_dim, b.top_dim
        )));
    }
    if phi.col_count() != a.width || phi.row_count() != b.width {
        return Err(ComplexError::DimensionMismatch(format!(
            "map is {}x{}, complexes have widths {} and {}",
            phi.row_count(),
            phi.col_count(),
            a.width,
            b.width
        )));
    }
    if a.cells_per_dim() != b.cells_per_dim() {
        return Ok(false);
    }
    // phi must carry each G_sigma into G'_sigma
    for (face, g) in &a.groups {
        let Some(target) = b.groups.get(face) else {
            return Ok(false);
        };
        for &v in g.basis() {
            if !target.contains(phi.apply(v)?)? {
                return Ok(false);
            }
        }
    }
    let mut perm = Vec::with_capacity(a.top_dim + 1);
    for q in 0..=a.top_dim {
        let mut hit = vec![false; b.cells[q].len()];
        let mut images = Vec::with_capacity(a.cells[q].len());
        for cell in &a.cells[q] {
            let rep = b.groups[&cell.face].reduce(phi.apply(cell.rep)?)?;
            let Some(&j) = b.lookup[q].get(&Cell { face: cell.face, rep }) else {
                return Ok(false);
            };
            if std::mem::replace(&mut hit[j as usize], true) {
                return Ok(false);
            }
            images.push(j);
        }
        perm.push(images);
    }
    let perm = CellPermutation { map: perm };
    Ok((1..=a.top_dim).all(|q| {
        a.boundary[q].columns().enumerate().all(|(i, col)| {
            let mut image: Vec<u32> = col.iter().map(|&e| perm.map[q - 1][e as usize]).collect();
            image.sort_unstable();
            image == b.boundary[q].column(perm.map[q][i] as usize)
        })
    }))
}

/// One exported cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub dim: usize,
    pub index: usize,
    pub sigma: Vec<usize>,
    pub coset_rep: String,
}

/// One nonzero boundary entry: `(q-1)`-cell `row` lies in the boundary of
/// `q`-cell `col`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryTriple {
    pub q: usize,
    pub row: usize,
    pub col: usize,
}

/// Stable export: cells in complex order, triples by `q`, then column, then row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexExport {
    pub schema: u32,
    pub width: usize,
    pub dim: usize,
    pub cells_per_dim: Vec<u64>,
    pub cells: Vec<CellRecord>,
    pub boundary: Vec<BoundaryTriple>,
}

pub fn export(cx: &QuotientCellComplex) -> ComplexExport {
    let cells = cx
        .cells
        .iter()
        .enumerate()
        .flat_map(|(dim, list)| {
            list.iter().enumerate().map(move |(index, c)| CellRecord {
                dim,
                index,
                sigma: c.face.labels(),
                coset_rep: c.rep.to_string(),
            })
        })
        .collect();
    let boundary = (1..=cx.top_dim)
        .flat_map(|q| {
            cx.boundary[q].columns().enumerate().flat_map(move |(col, entries)| {
                entries.iter().map(move |&row| BoundaryTriple {
                    q,
                    row: row as usize,
                    col,
                })
            })
        })
        .collect();
    ComplexExport {
        schema: 1,
        width: cx.width,
        dim: cx.top_dim,
        cells_per_dim: cx.cells_per_dim(),
        cells,
        boundary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{moment_angle_coloring, validate_characteristic};
    use crate::polytope::{polygon, simplex};

    fn bvs(items: &[&str]) -> Vec<BitVector> {
        items.iter().map(|s| s.parse().unwrap()).collect()
    }

    fn small_cover(p: &SimplePolytope, labels: &[&str]) -> QuotientCellComplex {
        let mu = validate_characteristic(p, bvs(labels)).unwrap();
        build_complex(p, mu.coloring()).unwrap()
    }

    #[test]
    fn cell_counts() {
        let tri = polygon(3).unwrap();
        assert_eq!(small_cover(&tri, &["10", "01", "11"]).cells_per_dim(), vec![3, 6, 4]);
        let sq = polygon(4).unwrap();
        assert_eq!(small_cover(&sq, &["10", "01", "10", "01"]).cells_per_dim(), vec![4, 8, 4]);
        let pent = polygon(5).unwrap();
        let z = build_complex(&pent, &moment_angle_coloring(&pent)).unwrap();
        assert_eq!(z.cells_per_dim(), vec![40, 80, 32]);
    }

    #[test]
    fn betti_examples() {
        let tri = polygon(3).unwrap();
        let rp2 = betti(&small_cover(&tri, &["10", "01", "11"]));
        assert_eq!((rp2.betti.clone(), rp2.hrk), (vec![1, 1, 1], 3));

        let sq = polygon(4).unwrap();
        let t2 = betti(&small_cover(&sq, &["10", "01", "10", "01"]));
        assert_eq!((t2.betti.clone(), t2.hrk), (vec![1, 2, 1], 4));

        let pent = polygon(5).unwrap();
        let z = betti(&build_complex(&pent, &moment_angle_coloring(&pent)).unwrap());
        assert_eq!((z.betti.clone(), z.hrk, z.euler), (vec![1, 10, 1], 12, -8));
    }

    #[test]
    fn rp2_boundary_ranks_by_hand() {
        // ranks of the 3x6 and 6x4 matrices: 2 and 3
        let tri = polygon(3).unwrap();
        let cx = small_cover(&tri, &["10", "01", "11"]);
        assert_eq!(cx.boundary_matrix(1).rank(), 2);
        assert_eq!(cx.boundary_matrix(2).rank(), 3);
        assert!(cx.boundary_matrix(1).mul(&cx.boundary_matrix(2)).unwrap().is_zero());
    }

    #[test]
    fn dependent_labels_warn() {
        let sq = polygon(4).unwrap();
        let c = Coloring::new(2, bvs(&["10", "10", "01", "01"])).unwrap();
        let cx = build_complex(&sq, &c).unwrap();
        assert_eq!(cx.warnings().len(), 2);
        assert!(cx.warnings()[0].to_string().contains("{1,2}"));
    }

    #[test]
    fn component_examples() {
        let sq = polygon(4).unwrap();
        let torus = small_cover(&sq, &["10", "01", "10", "01"]);
        assert_eq!(components(&torus).count, 1);
        assert_eq!(restrict_to_component(&torus, 0).unwrap().cells_per_dim(), torus.cells_per_dim());
        assert!(matches!(restrict_to_component(&torus, 1), Err(ComplexError::UnknownComponent(1))));

        // two copies: labels (mu | 0) with one extra zero coordinate
        let doubled = Coloring::new(3, bvs(&["100", "010", "100", "010"])).unwrap();
        let cx = build_complex(&sq, &doubled).unwrap();
        let labeling = components(&cx);
        assert_eq!(labeling.count, 2);
        for part in split_components(&cx) {
            assert_eq!(part.cells_per_dim(), vec![4, 8, 4]);
            assert_eq!(betti(&part).betti, vec![1, 2, 1]);
        }
    }

    #[test]
    fn facial_examples() {
        let tri = polygon(3).unwrap();
        let rp2 = small_cover(&tri, &["10", "01", "11"]);
        let circle = facial_subcomplex(&rp2, 1).unwrap();
        assert_eq!(circle.cells_per_dim(), vec![2, 2]);
        let b = betti(&circle);
        assert_eq!((b.betti, b.hrk), (vec![1, 1], 2));

        let sq = polygon(4).unwrap();
        let torus = small_cover(&sq, &["10", "01", "10", "01"]);
        assert_eq!(betti(&facial_subcomplex(&torus, 1).unwrap()).betti, vec![1, 1]);

        let pent = polygon(5).unwrap();
        let z = build_complex(&pent, &moment_angle_coloring(&pent)).unwrap();
        let f = facial_subcomplex(&z, 1).unwrap();
        assert_eq!(f.cells_per_dim(), vec![16, 16]);
        let b = betti(&f);
        // disjoint circles: beta_0 = beta_1
        assert_eq!(b.betti[0], b.betti[1]);
        assert_eq!(b.betti[0], 4);

        assert!(facial_subcomplex(&z, 6).is_err());
        assert!(facial_subcomplex(&z, 0).is_err());
    }

    #[test]
    fn translation_examples() {
        let sq = polygon(4).unwrap();
        let z = build_complex(&sq, &moment_angle_coloring(&sq)).unwrap();
        let id = translate_action(&z, BitVector::zero(4).unwrap()).unwrap();
        assert!(id.is_identity());

        let g: BitVector = "1111".parse().unwrap();
        let perm = translate_action(&z, g).unwrap();
        assert_eq!(perm.transpositions(2), 8);
        assert_eq!(perm.map[2].iter().enumerate().filter(|&(i, &j)| i as u32 == j).count(), 0);
        assert!(perm.commutes_with_boundary(&z));
        assert!(translate_action(&z, "11".parse().unwrap()).is_err());
    }

    #[test]
    fn identical_under_identity() {
        let p = simplex(3).unwrap();
        let c = moment_angle_coloring(&p);
        let a = build_complex(&p, &c).unwrap();
        let b = build_complex(&p, &c).unwrap();
        assert!(complexes_identical(&a, &b, &Gf2Matrix::identity(4)).unwrap());
        assert!(complexes_identical(&a, &b, &Gf2Matrix::identity(3)).is_err());
    }

    #[test]
    fn export_is_ordered() {
        let tri = polygon(3).unwrap();
        let cx = small_cover(&tri, &["10", "01", "11"]);
        let e = export(&cx);
        assert_eq!(e.cells.len(), 13);
        assert_eq!(e.boundary.len(), 6 * 2 + 4 * 3);
        assert_eq!(e.cells[0].sigma, vec![1, 2]);
        let keys: Vec<(usize, usize, usize)> = e.boundary.iter().map(|t| (t.q, t.col, t.row)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
