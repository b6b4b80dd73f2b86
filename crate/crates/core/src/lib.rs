//! Combinatorial core for a family of knots in a genus-2 handlebody.
//!
//! The handlebody is cut by a 3-punctured sphere `P` into two pieces; the
//! boundary of a distinguished nonseparating disk `E` traces an arc system
//! on `P` and on its complementary pants `R`.  This crate builds those arc
//! patterns for coprime parameters `(p, q)`, verifies their combinatorial
//! invariants (gluing identities, region census, homology windings), and
//! exhaustively searches for boundary-compressing disk configurations that
//! the pattern admits.

pub mod arith;
pub mod construction;
pub mod disksearch;
pub mod homology;
pub mod pants;
pub mod twobridge;

pub use arith::Slope;
pub use construction::ConstructionParams;
pub use pants::{ArcKind, ArcLabel, Circle, GluedSurface, PantsPattern, Side};
