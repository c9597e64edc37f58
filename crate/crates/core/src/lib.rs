//! Weight-preserving isomorphisms between spaces of finite-field-valued
//! functions on finite measured spaces.
//!
//! A [`FunctionSpace`] is a linear space of functions `X -> GF(q)` on a
//! finite set `X` with a strictly positive measure; the Hamming weight of a
//! function is the measure of the set where it is nonzero. The crate decides
//! whether a linear map between two such spaces preserves weights or
//! disjointness of supports, builds the quotient of `X` by the points the
//! space cannot tell apart, and writes qualifying maps as weighted
//! composition operators `Hf(y) = omega(y) f(h(y))`. With the counting
//! measure this recovers monomial equivalence of linear codes.

pub mod cli;
pub mod decompose;
pub mod error;
pub mod funspace;
pub mod gen;
pub mod gf;
pub mod limits;
pub mod linalg;
pub mod linmap;
pub mod macwilliams;
pub mod quotient;
pub mod schema;
pub mod selftest;
pub mod space;

pub use decompose::{decompose, Decomposition, Functional, Outcome, Refutation};
pub use error::{Error, Result};
pub use funspace::{CozRing, Func, FunctionSpace};
pub use gf::{Elem, Field};
pub use limits::Limits;
pub use linmap::{CheckMode, LinMap};
pub use macwilliams::MonomialMap;
pub use quotient::Quotient;
pub use space::{PointSet, PointSpace, Rational};
