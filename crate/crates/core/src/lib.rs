//! Exact computation of the symmetries of an implicit planar algebraic curve
//! and of the similarities between two such curves.
//!
//! The engine works over exact arithmetic throughout: rational coefficients,
//! Gaussian rationals for the complex form `F(z, z̄)` of a curve, and boxed
//! algebraic numbers for irrational similarity parameters. The pipeline
//! repeatedly applies the Laplace operator to reduce a curve to a harmonic
//! polynomial (or a conic / line-circle configuration), derives finitely many
//! candidate transformations from the associated complex polynomial `g(z)`,
//! and confirms every candidate by exact substitution.

pub mod algebraic;
pub mod bipoly;
pub mod cpoly;
pub mod error;
pub mod conic;
pub mod harmonic;
pub mod interval;
pub mod parse;
pub mod reduce;
pub mod report;
pub mod similarity;
pub mod symmetry;
pub mod rpoly;
pub mod scalars;
pub mod svg;

pub use algebraic::AlgebraicNumber;
pub use bipoly::{BiPoly, MapKind, PlaneMap, ZPoly};
pub use cpoly::CPoly;
pub use error::Error;
pub use scalars::{ComplexScalar, GaussRat, Rat};
