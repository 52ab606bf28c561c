//! Geometric model of m-cluster categories of type A.
//!
//! Diagonal quivers of polygons, powers of translation quivers and their
//! component decompositions, mesh categories, and the triangle calculus on
//! diagonals.

pub mod decomposition;
pub mod export;
pub mod homological;
mod linalg;
pub mod mesh;
pub mod polygon;
pub mod tquiver;
pub mod verify;

pub use polygon::{Diagonal, PolygonConfig};
pub use tquiver::{QuotientSpec, TranslationQuiver, VertexLabel};
