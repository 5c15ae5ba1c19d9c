//! Built-in polytopes with characteristic functions.
//!
//! Entry and function names are stable: reports and command lines refer to
//! them by name.

use std::sync::Arc;

use crate::coloring::{search_characteristic, validate_characteristic, CharacteristicFunction, ColoringError};
use crate::gf2::BitVector;
use crate::polytope::{cube, dodecahedron, polygon, product, simplex, FacetSet, SimplePolytope};

/// Raw facet labels with a name. Validation happens when they are used, so a
/// corpus may carry invalid input and have it reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedLabels {
    pub name: String,
    pub labels: Vec<BitVector>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub polytope: Arc<SimplePolytope>,
    pub mus: Vec<NamedLabels>,
    /// Cut vertex; `None` selects the lexicographically last vertex.
    pub v0: Option<FacetSet>,
}

impl CorpusEntry {
    pub fn new(name: impl Into<String>, polytope: SimplePolytope) -> Self {
        Self {
            name: name.into(),
            polytope: Arc::new(polytope),
            mus: Vec::new(),
            v0: None,
        }
    }

    pub fn with_mu(mut self, name: impl Into<String>, labels: Vec<BitVector>) -> Self {
        self.mus.push(NamedLabels {
            name: name.into(),
            labels,
        });
        self
    }

    pub fn with_v0(mut self, v0: FacetSet) -> Self {
        self.v0 = Some(v0);
        self
    }

    pub fn mu(&self, name: &str) -> Option<&NamedLabels> {
        self.mus.iter().find(|m| m.name == name)
    }

    pub fn characteristic(&self, name: &str) -> Option<Result<CharacteristicFunction, ColoringError>> {
        self.mu(name)
            .map(|m| validate_characteristic(&self.polytope, m.labels.clone()))
    }
}

fn labels(width: usize, items: &[&[usize]]) -> Vec<BitVector> {
    items
        .iter()
        .map(|coords| BitVector::from_coords(width, coords).expect("width fits"))
        .collect()
}

fn unit(width: usize, i: usize) -> BitVector {
    BitVector::unit(width, i).expect("i < width")
}

/// `e_1..e_n` on the first `n` facets and `e_1 + .. + e_n` on the last.
pub fn simplex_mu(n: usize) -> Vec<BitVector> {
    let mut out: Vec<BitVector> = (0..n).map(|i| unit(n, i)).collect();
    out.push(all_ones(n));
    out
}

/// Opposite facets `2i-1`, `2i` both labelled `e_i`.
pub fn cube_mu(n: usize) -> Vec<BitVector> {
    (0..2 * n).map(|f| unit(n, f / 2)).collect()
}

/// Alternating `e_1, e_2` around the polygon; for odd `m` the last edge gets
/// `e_1 + e_2`.
pub fn polygon_mu(m: usize) -> Vec<BitVector> {
    let mut out: Vec<BitVector> = (0..m).map(|i| unit(2, i % 2)).collect();
    if m % 2 == 1 {
        out[m - 1] = all_ones(2);
    }
    out
}

fn all_ones(width: usize) -> BitVector {
    (0..width).map(|i| unit(width, i)).fold(BitVector::zero(width).expect("width fits"), |a, b| a + b)
}

fn prism_mu(sides: usize) -> Vec<BitVector> {
    polygon_mu(sides)
        .into_iter()
        .map(|l| l.embed(3, 0).expect("2 <= 3"))
        .chain([unit(3, 2), unit(3, 2)])
        .collect()
}

/// The built-in corpus, in a fixed order.
pub fn builtin() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for n in 2..=4 {
        let name = format!("simplex{n}");
        let mut e = CorpusEntry::new(&name, simplex(n).expect("valid")).with_mu("standard", simplex_mu(n));
        if n == 2 {
            e = e.with_mu("rp2", labels(2, &[&[0], &[1], &[0, 1]]));
        }
        out.push(e);
    }
    for n in 2..=4 {
        let mut e = CorpusEntry::new(format!("cube{n}"), cube(n).expect("valid")).with_mu("pairing", cube_mu(n));
        if n == 2 {
            e = e
                .with_mu("torus", labels(2, &[&[0], &[0], &[1], &[1]]))
                .with_mu("klein", labels(2, &[&[0], &[0], &[1], &[0, 1]]));
        }
        out.push(e);
    }
    for m in 3..=8 {
        let mut e = CorpusEntry::new(format!("polygon{m}"), polygon(m).expect("valid"))
            .with_mu("standard", polygon_mu(m));
        match m {
            3 => e = e.with_mu("rp2", labels(2, &[&[0], &[1], &[0, 1]])),
            4 => {
                e = e
                    .with_mu("torus", labels(2, &[&[0], &[1], &[0], &[1]]))
                    .with_mu("klein", labels(2, &[&[0], &[1], &[0, 1], &[1]]))
                    .with_v0(FacetSet::from_labels(&[3, 4]))
            }
            _ => {}
        }
        out.push(e);
    }
    let prism = product(&polygon(5).expect("valid"), &simplex(1).expect("valid"))
        .expect("7 facets")
        .with_name("pentagonal-prism");
    out.push(CorpusEntry::new("pentagonal-prism", prism).with_mu("standard", prism_mu(5)));
    let dodeca = dodecahedron();
    let found = search_characteristic(&dodeca).expect("the dodecahedron admits a characteristic function");
    let found = found.coloring().labels().to_vec();
    out.push(CorpusEntry::new("dodecahedron", dodeca).with_mu("standard", found));
    out
}

/// Looks an entry up by name; `triangle` and `square` are accepted for
/// `polygon3` and `polygon4`.
pub fn lookup(name: &str) -> Option<CorpusEntry> {
    let name = match name {
        "triangle" => "polygon3",
        "square" => "polygon4",
        other => other,
    };
    builtin().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_stable() {
        let names: Vec<String> = builtin().into_iter().map(|e| e.name).collect();
        assert_eq!(
            names,
            [
                "simplex2",
                "simplex3",
                "simplex4",
                "cube2",
                "cube3",
                "cube4",
                "polygon3",
                "polygon4",
                "polygon5",
                "polygon6",
                "polygon7",
                "polygon8",
                "pentagonal-prism",
                "dodecahedron"
            ]
        );
    }

    #[test]
    fn every_mu_is_characteristic() {
        for e in builtin() {
            assert!(!e.mus.is_empty(), "{}", e.name);
            for m in &e.mus {
                let r = validate_characteristic(&e.polytope, m.labels.clone());
                assert!(r.is_ok(), "{} / {}: {:?}", e.name, m.name, r);
            }
            if let Some(v0) = e.v0 {
                assert!(e.polytope.is_vertex(v0));
            }
        }
    }

    #[test]
    fn dimensions() {
        let dims: Vec<(usize, usize)> = builtin()
            .iter()
            .map(|e| (e.polytope.dim(), e.polytope.facet_count()))
            .collect();
        assert_eq!(
            dims,
            [
                (2, 3),
                (3, 4),
                (4, 5),
                (2, 4),
                (3, 6),
                (4, 8),
                (2, 3),
                (2, 4),
                (2, 5),
                (2, 6),
                (2, 7),
                (2, 8),
                (3, 7),
                (3, 12)
            ]
        );
    }

    #[test]
    fn aliases() {
        assert_eq!(lookup("square").unwrap().name, "polygon4");
        assert_eq!(lookup("triangle").unwrap().name, "polygon3");
        assert!(lookup("nonesuch").is_none());
    }
}
