#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use glueback::coloring::{validate_characteristic, GlueSpec};
use glueback::complex::{betti, build_complex, restrict_to_component, translate_action};
use glueback::corpus::{builtin, CorpusEntry};
use glueback::gf2::{solve_label_isomorphism, BitVector, Gf2Matrix, Subspace};
use glueback::verify::{run_suite, Check, SuiteOptions};
use glueback::{Coloring, CutFrame, SimplePolytope};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub const SMALL: [&str; 7] = [
    "polygon3",
    "polygon4",
    "polygon5",
    "polygon6",
    "simplex3",
    "cube3",
    "pentagonal-prism",
];

pub fn corpus() -> &'static [CorpusEntry] {
    static CORPUS: OnceLock<Vec<CorpusEntry>> = OnceLock::new();
    CORPUS.get_or_init(builtin)
}

pub fn entry(name: &str) -> &'static CorpusEntry {
    corpus().iter().find(|e| e.name == name).expect("builtin entry")
}

fn bv(width: usize, bits: u64) -> BitVector {
    BitVector::from_bits(width, bits & mask(width)).expect("width <= 64")
}

fn mask(width: usize) -> u64 {
    if width == 0 {
        0
    } else {
        u64::MAX >> (64 - width)
    }
}

/// Arbitrary facet labels of a fixed width on a small polytope.
#[derive(Debug, Clone)]
pub struct ColoringCase {
    pub entry: &'static str,
    pub width: usize,
    pub bits: Vec<u64>,
}

impl ColoringCase {
    pub fn polytope(&self) -> &'static SimplePolytope {
        &entry(self.entry).polytope
    }

    pub fn coloring(&self) -> Coloring {
        Coloring::new(self.width, self.bits.iter().map(|&b| bv(self.width, b)).collect()).unwrap()
    }
}

pub fn coloring_case() -> impl Strategy<Value = ColoringCase> {
    (0..SMALL.len(), 1usize..=5).prop_flat_map(|(i, width)| {
        let name = SMALL[i];
        let d = entry(name).polytope.facet_count();
        prop::collection::vec(0..1u64 << width, d).prop_map(move |bits| ColoringCase {
            entry: name,
            width,
            bits,
        })
    })
}

/// A glue-back over a corpus characteristic function.
#[derive(Debug, Clone)]
pub struct GlueCase {
    pub entry: &'static str,
    pub mu: usize,
    pub vertex: usize,
    pub m: usize,
    pub bits: Vec<u64>,
}

impl GlueCase {
    pub fn spec(&self) -> GlueSpec {
        let e = entry(self.entry);
        let mu = validate_characteristic(&e.polytope, e.mus[self.mu].labels.clone()).unwrap();
        let v0 = e.polytope.vertices()[self.vertex % e.polytope.vertices().len()];
        let frame = CutFrame::new(&e.polytope, v0).unwrap();
        let lambda = self.bits.iter().map(|&b| bv(self.m, b)).collect();
        GlueSpec::with_frame(Arc::clone(&e.polytope), mu, frame, self.m, lambda).unwrap()
    }
}

pub fn glue_case() -> impl Strategy<Value = GlueCase> {
    (0..SMALL.len(), 0usize..8, 0usize..64, 0usize..=3).prop_flat_map(|(i, mu, vertex, m)| {
        let name = SMALL[i];
        let e = entry(name);
        let mu = mu % e.mus.len();
        prop::collection::vec(0..1u64 << m, e.polytope.k()).prop_map(move |bits| GlueCase {
            entry: name,
            mu,
            vertex,
            m,
            bits,
        })
    })
}

/// Every `(q-2)`-cell meets the boundary of the boundary of a `q`-cell an even
/// number of times.
pub fn boundary_squares_to_zero(case: &ColoringCase) -> Result<(), TestCaseError> {
    let cx = build_complex(case.polytope(), &case.coloring()).unwrap();
    for q in 2..=cx.dim() {
        let (upper, lower) = (cx.boundary(q), cx.boundary(q - 1));
        for col in upper.columns() {
            let mut parity: HashMap<u32, bool> = HashMap::new();
            for &face in col {
                for &e in lower.column(face as usize) {
                    *parity.entry(e).or_default() ^= true;
                }
            }
            prop_assert!(parity.values().all(|&odd| !odd), "d{} d{} != 0 on {:?}", q - 1, q, case);
        }
    }
    Ok(())
}

/// Mod-2 Poincare duality on a component of a glue-back, a closed manifold.
pub fn poincare_duality(case: &GlueCase) -> Result<(), TestCaseError> {
    let spec = case.spec();
    let cx = build_complex(spec.polytope(), &glueback::coloring::glue_back_coloring(&spec)).unwrap();
    prop_assert!(cx.warnings().is_empty());
    let part = restrict_to_component(&cx, 0).unwrap();
    let b = betti(&part).betti;
    let n = b.len() - 1;
    prop_assert_eq!(b[0], 1);
    for q in 0..=n {
        prop_assert_eq!(b[q], b[n - q], "betti {:?} for {:?}", b, case);
    }
    Ok(())
}

/// Reduction, coset index and representative depend only on the coset.
pub fn coset_rep_well_defined(width: usize, gens: &[u64], v: u64, pick: u64) -> Result<(), TestCaseError> {
    let gens: Vec<BitVector> = gens.iter().map(|&g| bv(width, g)).collect();
    let h = Subspace::span(width, &gens).unwrap();
    let v = bv(width, v);
    let g = gens
        .iter()
        .enumerate()
        .filter(|(i, _)| pick >> i & 1 == 1)
        .fold(bv(width, 0), |acc, (_, &x)| acc + x);
    let rep = h.reduce(v).unwrap();
    prop_assert_eq!(h.reduce(v + g).unwrap(), rep);
    prop_assert_eq!(h.coset_index(v + g).unwrap(), h.coset_index(v).unwrap());
    prop_assert_eq!(h.rep_of_index(h.coset_index(v).unwrap()).unwrap(), rep);
    prop_assert!(h.contains(v + rep).unwrap());
    prop_assert_eq!(h.reduce(rep).unwrap(), rep);
    Ok(())
}

/// Translation is a cellular involution commuting with the boundary.
pub fn translation_commutes(case: &ColoringCase, g: u64) -> Result<(), TestCaseError> {
    let cx = build_complex(case.polytope(), &case.coloring()).unwrap();
    let perm = translate_action(&cx, bv(case.width, g)).unwrap();
    for (q, map) in perm.map.iter().enumerate() {
        let mut seen = vec![false; cx.cells(q).len()];
        for &j in map {
            prop_assert!(!std::mem::replace(&mut seen[j as usize], true));
        }
    }
    prop_assert!(perm.is_involution());
    prop_assert!(perm.commutes_with_boundary(&cx));
    Ok(())
}

/// Suite reports are byte-identical for 1, 4 and 8 worker threads.
pub fn reports_deterministic(m: usize, seed: u64, limit: usize) -> Result<(), TestCaseError> {
    let entries: Vec<CorpusEntry> = ["polygon3", "polygon4", "polygon5"]
        .iter()
        .map(|n| entry(n).clone())
        .collect();
    let opts = SuiteOptions {
        m,
        limit,
        seed,
        ..SuiteOptions::default()
    };
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| serde_json::to_string(&run_suite(&entries, &Check::ALL, &opts).unwrap()).unwrap())
    };
    let one = run(1);
    prop_assert_eq!(&one, &run(4));
    prop_assert_eq!(&one, &run(8));
    Ok(())
}

pub fn matrix_case() -> impl Strategy<Value = (usize, usize, Vec<(usize, usize)>)> {
    (1usize..70, 1usize..140).prop_flat_map(|(r, c)| {
        (Just(r), Just(c), prop::collection::vec((0..r, 0..c), 0..400))
    })
}

pub fn rank_equals_transpose_rank(rows: usize, cols: usize, entries: &[(usize, usize)]) -> Result<(), TestCaseError> {
    let m = Gf2Matrix::from_entries(rows, cols, entries.iter().copied());
    let r = m.rank();
    prop_assert_eq!(r, m.transpose().rank());
    prop_assert!(r <= rows.min(cols));
    Ok(())
}

fn relations(labels: &[BitVector], width: usize) -> Vec<u64> {
    (0u64..1 << labels.len())
        .filter(|s| {
            labels
                .iter()
                .enumerate()
                .filter(|(i, _)| s >> i & 1 == 1)
                .fold(bv(width, 0), |acc, (_, &x)| acc + x)
                .is_zero()
        })
        .collect()
}

/// A label isomorphism exists exactly when the relation spaces agree.
pub fn label_isomorphism_iff_relations(width: usize, a: &[u64], b: &[u64]) -> Result<(), TestCaseError> {
    let a: Vec<BitVector> = a.iter().map(|&x| bv(width, x)).collect();
    let b: Vec<BitVector> = b.iter().map(|&x| bv(width, x)).collect();
    let same = relations(&a, width) == relations(&b, width);
    let phi = solve_label_isomorphism(&a, &b).unwrap();
    prop_assert_eq!(phi.is_some(), same);
    if let Some(phi) = phi {
        for (&x, &y) in a.iter().zip(&b) {
            prop_assert_eq!(phi.apply(x).unwrap(), y);
        }
        prop_assert_eq!(phi.rank(), width);
    }
    Ok(())
}

pub fn span_idempotent(width: usize, vs: &[u64]) -> Result<(), TestCaseError> {
    let vs: Vec<BitVector> = vs.iter().map(|&x| bv(width, x)).collect();
    let s = Subspace::span(width, &vs).unwrap();
    let again = Subspace::span(width, s.basis()).unwrap();
    prop_assert_eq!(&again, &s);
    let mut grown = s.clone();
    for &v in &vs {
        prop_assert!(!grown.insert(v).unwrap());
    }
    prop_assert_eq!(grown, s);
    Ok(())
}
