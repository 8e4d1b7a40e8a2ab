//! Triangulations of cyclic polytopes `C(m, delta)` in any dimension via
//! tuple calculus, the two higher Stasheff-Tamari orders on them, and the
//! combinatorial dictionary to tilting modules and maximal green sequences of
//! the higher Auslander algebras of type A.
//!
//! Everything is exact integer combinatorics on vertex tuples; there is no
//! geometry and no linear algebra anywhere. All values are immutable and all
//! operations are pure, so the library is safe to drive from any number of
//! threads.

pub mod algebra;
pub mod bits;
pub mod error;
pub mod even;
pub mod odd;
pub mod poset;
pub mod tuple;

pub use error::{Error, OddDefect, Result};
pub use even::EvenTriangulation;
pub use odd::OddTriangulation;
pub use poset::StasheffTamariPoset;
pub use tuple::{Circuit, FacetKind, TupleClass, VertexTuple};
