//! Simple polytopes, carried as their dual simplicial complexes.
//!
//! A polytope with facets `F_1..F_d` is stored through its vertices, each
//! vertex being the set of `n` facets that meet there. Any complex passing the
//! ridge and connectivity checks is accepted; downstream code only uses the
//! combinatorics.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Facet counts are capped so that the moment-angle coloring fits one word.
pub const MAX_FACETS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("dimension n={n} with d={d} facets: need n >= 1 and d >= n + 1")]
    BadDimensions { n: usize, d: usize },
    #[error("{d} facets exceed the cap of {MAX_FACETS}")]
    TooManyFacets { d: usize },
    #[error("vertex {vertex:?} names facet {facet} outside 1..={d}")]
    FacetOutOfRange { vertex: Vec<usize>, facet: usize, d: usize },
    #[error("vertex {vertex:?} has {found} distinct facets, expected {expected}")]
    WrongCardinality { vertex: Vec<usize>, expected: usize, found: usize },
    #[error("vertex {0:?} is listed twice")]
    DuplicateVertex(Vec<usize>),
    #[error("facet {0} appears in no vertex")]
    UnusedFacet(usize),
    #[error("ridge {ridge:?} lies in {count} vertices (must be exactly 2)")]
    RidgeCondition { ridge: Vec<usize>, count: usize },
    #[error("vertex {0:?} is not connected to the first vertex through shared ridges")]
    Disconnected(Vec<usize>),
    #[error("facet_names has {found} entries, expected {expected}")]
    FacetNames { expected: usize, found: usize },
    #[error("unknown field {0:?}")]
    UnknownField(String),
    #[error("invalid builder parameter: {0}")]
    Parameter(String),
}

/// A set of facet indices (0-based internally, printed 1-based).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FacetSet(u64);

impl FacetSet {
    pub const EMPTY: FacetSet = FacetSet(0);

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        FacetSet(indices.into_iter().fold(0, |m, i| {
            assert!(i < MAX_FACETS, "facet index {i} out of range");
            m | 1 << i
        }))
    }

    /// From 1-based facet labels.
    pub fn from_labels(labels: &[usize]) -> Self {
        Self::from_indices(labels.iter().map(|&l| l - 1))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < MAX_FACETS && self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        FacetSet(self.0 | 1 << i)
    }

    #[inline]
    pub fn without(self, i: usize) -> Self {
        FacetSet(self.0 & !(1 << i))
    }

    #[inline]
    pub fn is_subset(self, other: FacetSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            (bits != 0).then(|| {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                i
            })
        })
    }

    pub fn labels(self) -> Vec<usize> {
        self.indices().map(|i| i + 1).collect()
    }

    /// Every subset, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = FacetSet> {
        // standard submask walk, starting from the full mask
        let full = self.0;
        let mut next = Some(full);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 { None } else { Some((cur - 1) & full) };
            Some(FacetSet(cur))
        })
    }

    /// Order used for faces: by size, then lexicographic on sorted indices.
    pub fn graded_cmp(&self, other: &FacetSet) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

impl fmt::Debug for FacetSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FacetSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, l) in self.labels().into_iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

/// A face, named by the set of facets containing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Face {
    pub sigma: FacetSet,
    pub dim: usize,
}

/// Face numbers and h-vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FHVector {
    /// `f[i]` = number of `i`-dimensional faces, `i = 0..n-1`.
    pub f: Vec<u64>,
    /// `h[0..=n]`.
    pub h: Vec<i64>,
}

/// A validated simple polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplePolytope {
    name: String,
    n: usize,
    d: usize,
    facet_names: Vec<String>,
    vertices: Vec<FacetSet>,
}

impl SimplePolytope {
    /// Validates a dual complex given by 1-based vertex lists.
    pub fn new(
        name: impl Into<String>,
        n: usize,
        d: usize,
        facet_names: Option<Vec<String>>,
        vertices: &[Vec<usize>],
    ) -> Result<Self, PolytopeError> {
        if n == 0 || d < n + 1 {
            return Err(PolytopeError::BadDimensions { n, d });
        }
        if d > MAX_FACETS {
            return Err(PolytopeError::TooManyFacets { d });
        }
        let facet_names = match facet_names {
            Some(names) if names.len() != d => {
                return Err(PolytopeError::FacetNames {
                    expected: d,
                    found: names.len(),
                })
            }
            Some(names) => names,
            None => (1..=d).map(|i| format!("F{i}")).collect(),
        };

        let mut sets = Vec::with_capacity(vertices.len());
        let mut seen = HashSet::new();
        for vertex in vertices {
            if let Some(&facet) = vertex.iter().find(|&&f| f == 0 || f > d) {
                return Err(PolytopeError::FacetOutOfRange {
                    vertex: vertex.clone(),
                    facet,
                    d,
                });
            }
            let set = FacetSet::from_labels(vertex);
            if set.len() != n || vertex.len() != n {
                return Err(PolytopeError::WrongCardinality {
                    vertex: vertex.clone(),
                    expected: n,
                    found: set.len(),
                });
            }
            if !seen.insert(set) {
                return Err(PolytopeError::DuplicateVertex(set.labels()));
            }
            sets.push(set);
        }
        sets.sort_by(FacetSet::graded_cmp);

        let used = sets.iter().fold(0u64, |m, s| m | s.bits());
        if let Some(unused) = (0..d).find(|&i| used >> i & 1 == 0) {
            return Err(PolytopeError::UnusedFacet(unused + 1));
        }

        let mut ridges: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (vi, &v) in sets.iter().enumerate() {
            for i in v.indices() {
                ridges.entry(v.without(i).labels()).or_default().push(vi);
            }
        }
        if let Some((ridge, owners)) = ridges.iter().find(|(_, owners)| owners.len() != 2) {
            return Err(PolytopeError::RidgeCondition {
                ridge: ridge.clone(),
                count: owners.len(),
            });
        }

        let mut adjacency = vec![Vec::new(); sets.len()];
        for owners in ridges.values() {
            adjacency[owners[0]].push(owners[1]);
            adjacency[owners[1]].push(owners[0]);
        }
        let mut reached = vec![false; sets.len()];
        let mut queue = VecDeque::from([0]);
        reached[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[v] {
                if !reached[w] {
                    reached[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if let Some(lost) = reached.iter().position(|&r| !r) {
            return Err(PolytopeError::Disconnected(sets[lost].labels()));
        }

        Ok(Self {
            name: name.into(),
            n,
            d,
            facet_names,
            vertices: sets,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Dimension `n`.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of facets `d`.
    pub fn facet_count(&self) -> usize {
        self.d
    }

    /// `k = d - n`.
    pub fn k(&self) -> usize {
        self.d - self.n
    }

    pub fn facet_names(&self) -> &[String] {
        &self.facet_names
    }

    /// Vertices in graded (lexicographic) order.
    pub fn vertices(&self) -> &[FacetSet] {
        &self.vertices
    }

    pub fn is_vertex(&self, set: FacetSet) -> bool {
        self.vertices.binary_search_by(|v| v.graded_cmp(&set)).is_ok()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Same dual complex (names ignored).
    pub fn same_combinatorics(&self, other: &SimplePolytope) -> bool {
        self.n == other.n && self.d == other.d && self.vertices == other.vertices
    }

    /// Faces graded by `|sigma|`: entry `s` lists the faces of dimension `n - s`,
    /// lexicographically. Entry 0 is the polytope itself, entry `n` the vertices.
    pub fn faces(&self) -> Vec<Vec<FacetSet>> {
        let mut all: HashSet<FacetSet> = HashSet::new();
        for v in &self.vertices {
            all.extend(v.subsets());
        }
        let mut graded = vec![Vec::new(); self.n + 1];
        for s in all {
            graded[s.len()].push(s);
        }
        for level in graded.iter_mut() {
            level.sort_by(FacetSet::graded_cmp);
        }
        graded
    }

    /// Faces flattened in graded order.
    pub fn face_list(&self) -> Vec<Face> {
        self.faces()
            .into_iter()
            .flatten()
            .map(|sigma| Face {
                sigma,
                dim: self.n - sigma.len(),
            })
            .collect()
    }

    pub fn fh_vector(&self) -> FHVector {
        let faces = self.faces();
        let n = self.n;
        // f[i] counts i-dimensional faces, which have |sigma| = n - i
        let f: Vec<u64> = (0..n).map(|i| faces[n - i].len() as u64).collect();
        // sum_i h_i t^(n-i) = sum_j c_j (t-1)^(n-j), c_j = #{sigma : |sigma| = j}
        let mut poly = vec![0i64; n + 1]; // poly[e] = coefficient of t^e
        for (j, level) in faces.iter().enumerate() {
            let c = level.len() as i64;
            let e = n - j;
            for (t, binom) in binomials(e).into_iter().enumerate() {
                let sign = if (e - t).is_multiple_of(2) { 1 } else { -1 };
                poly[t] += c * sign * binom;
            }
        }
        let h = (0..=n).map(|i| poly[n - i]).collect();
        FHVector { f, h }
    }
}

fn binomials(e: usize) -> Vec<i64> {
    let mut row = vec![1i64];
    for _ in 0..e {
        let mut next = vec![1i64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

/// On-disk polytope document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolytopeDoc {
    pub name: String,
    pub n: usize,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facet_names: Option<Vec<String>>,
    pub vertices: Vec<Vec<usize>>,
    #[serde(flatten, skip_serializing)]
    pub extra: BTreeMap<String, serde_json::Value>,
}

impl From<&SimplePolytope> for PolytopeDoc {
    fn from(p: &SimplePolytope) -> Self {
        PolytopeDoc {
            name: p.name.clone(),
            n: p.n,
            d: p.d,
            facet_names: Some(p.facet_names.clone()),
            vertices: p.vertices.iter().map(|v| v.labels()).collect(),
            extra: BTreeMap::new(),
        }
    }
}

/// A parsed polytope together with non-fatal warnings (unknown fields).
#[derive(Debug, Clone)]
pub struct Parsed<T> {
    pub value: T,
    pub warnings: Vec<String>,
}

/// Parses and validates a polytope JSON document. Unknown fields produce a
/// warning, or an error when `strict` is set.
pub fn parse_polytope(text: &str, strict: bool) -> Result<Parsed<SimplePolytope>, PolytopeError> {
    let doc: PolytopeDoc =
        serde_json::from_str(text).map_err(|e| PolytopeError::Schema(e.to_string()))?;
    let mut warnings = Vec::new();
    for key in doc.extra.keys() {
        if strict {
            return Err(PolytopeError::UnknownField(key.clone()));
        }
        warnings.push(format!("ignoring unknown field {key:?}"));
    }
    let value = SimplePolytope::new(doc.name, doc.n, doc.d, doc.facet_names, &doc.vertices)?;
    Ok(Parsed { value, warnings })
}

/// The `n`-simplex: `n + 1` facets, every `n`-subset a vertex.
pub fn simplex(n: usize) -> Result<SimplePolytope, PolytopeError> {
    if n == 0 || n + 1 > MAX_FACETS {
        return Err(PolytopeError::Parameter(format!("simplex dimension {n}")));
    }
    let vertices: Vec<Vec<usize>> = (1..=n + 1)
        .rev()
        .map(|skip| (1..=n + 1).filter(|&i| i != skip).collect())
        .collect();
    SimplePolytope::new(format!("simplex{n}"), n, n + 1, None, &vertices)
}

/// The `n`-cube as a product of segments; facets `2i-1` and `2i` are opposite.
pub fn cube(n: usize) -> Result<SimplePolytope, PolytopeError> {
    if n == 0 || 2 * n > MAX_FACETS {
        return Err(PolytopeError::Parameter(format!("cube dimension {n}")));
    }
    let segment = simplex(1)?;
    let mut p = segment.clone();
    for _ in 1..n {
        p = product(&p, &segment)?;
    }
    Ok(p.with_name(format!("cube{n}")))
}

/// The `m`-gon with facets (edges) in cyclic order.
pub fn polygon(m: usize) -> Result<SimplePolytope, PolytopeError> {
    if !(3..=MAX_FACETS).contains(&m) {
        return Err(PolytopeError::Parameter(format!("polygon with {m} sides")));
    }
    let vertices: Vec<Vec<usize>> = (1..=m).map(|i| vec![i, i % m + 1]).collect();
    SimplePolytope::new(format!("polygon{m}"), 2, m, None, &vertices)
}

/// Product polytope; facets of `q` are renumbered after those of `p`.
pub fn product(p: &SimplePolytope, q: &SimplePolytope) -> Result<SimplePolytope, PolytopeError> {
    let d = p.d + q.d;
    if d > MAX_FACETS {
        return Err(PolytopeError::TooManyFacets { d });
    }
    let mut vertices = Vec::with_capacity(p.vertices.len() * q.vertices.len());
    for a in &p.vertices {
        for b in &q.vertices {
            let mut v = a.labels();
            v.extend(b.labels().into_iter().map(|l| l + p.d));
            vertices.push(v);
        }
    }
    let names = p
        .facet_names
        .iter()
        .map(|s| format!("{s}x"))
        .chain(q.facet_names.iter().map(|s| format!("x{s}")))
        .collect();
    SimplePolytope::new(
        format!("{}x{}", p.name, q.name),
        p.n + q.n,
        d,
        Some(names),
        &vertices,
    )
}

/// Regular dodecahedron: 12 pentagonal facets, 20 vertices. Facet 1 and
/// facet 12 are opposite; facets 2..6 ring facet 1 and 7..11 ring facet 12.
pub fn dodecahedron() -> SimplePolytope {
    // the vertices are the triangles of the icosahedron on the 12 facet labels
    let mut vertices = Vec::new();
    for i in 0..5 {
        let (u, u_next) = (2 + i, 2 + (i + 1) % 5);
        let (l, l_next) = (7 + i, 7 + (i + 1) % 5);
        vertices.push(vec![1, u, u_next]);
        vertices.push(vec![u, u_next, l]);
        vertices.push(vec![u_next, l, l_next]);
        vertices.push(vec![12, l, l_next]);
    }
    SimplePolytope::new("dodecahedron", 3, 12, None, &vertices)
        .expect("hard-coded dodecahedron is a valid dual complex")
}

/// Lookup helper for faces: graded position of every face.
pub(crate) fn face_positions(faces: &[Vec<FacetSet>]) -> HashMap<FacetSet, (usize, usize)> {
    faces
        .iter()
        .enumerate()
        .flat_map(|(s, level)| level.iter().enumerate().map(move |(i, &f)| (f, (s, i))))
        .collect()
}
