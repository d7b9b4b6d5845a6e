//! Algebra-valued invariants of rooted trees and forests.
//!
//! A family of invariants `Ψ` is fixed by a commutative algebra `A` and a
//! linear operator `Ξ` on it: a leaf gets `Ξ(1)`, an inner vertex gets `Ξ`
//! of the product of its children's values, and a forest gets the product of
//! its trees' values. Choosing `Ξ` as an inverse difference operator yields
//! strict and weak order polynomials; choosing it on quasi-symmetric
//! functions yields their quasi-symmetric refinements.
//!
//! Modules:
//! - [`forest`]: canonical rooted trees and forests, enumeration, automorphisms.
//! - [`algebra`]: exact algebras (polynomials, quasi-symmetric functions,
//!   series, free words, tensor words).
//! - [`operators`]: the operator library and operator arithmetic.
//! - [`invariant`]: the recursive evaluator, built-in invariants, oracles.
//! - [`genfun`]: generating functions and their functional equations.
//! - [`planar`]: labeled planar trees over noncommutative algebras.

pub mod algebra;
pub mod error;
pub mod forest;
pub mod genfun;
pub mod invariant;
pub mod operators;
pub mod planar;
pub mod verify;

pub use error::{Error, Result};
