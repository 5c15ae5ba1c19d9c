//! Small covers, real moment-angle manifolds and glue-back constructions as
//! explicit GF(2) cell complexes.
//!
//! The crate builds the quotient `P x (Z_2)^r / ~` of a simple polytope `P`
//! under a facet coloring, computes its mod-2 homology from bit-packed
//! boundary matrices, and checks the Halperin-Carlsson type bounds, component
//! counts and equivalences that relate these spaces.

pub mod coloring;
pub mod complex;
pub mod corpus;
pub mod gf2;
pub mod polytope;
pub mod verify;

pub use coloring::{CharacteristicFunction, Coloring, ColoringError, CutFrame, GlueSpec};
pub use complex::{betti, build_complex, BettiReport, ComplexError, QuotientCellComplex};
pub use gf2::{BitVector, Gf2Error, Gf2Matrix, Subspace};
pub use polytope::{FacetSet, PolytopeError, SimplePolytope};
