//! Exact symbolic kernel for radical evaluations of algebraic Gauss
//! hypergeometric functions on Darboux curves.
//!
//! The crate is organized around a small tower:
//!
//! - [`rat`], [`quad`]: arbitrary-precision rationals and quadratic field
//!   elements a + b*sqrt(d);
//! - [`poly`], [`ratfun`], [`series`]: dense univariate polynomials, rational
//!   functions and truncated Puiseux series with exact coefficients;
//! - [`intpoly`]: factorization of integer polynomials (squarefree, Hensel,
//!   Zassenhaus recombination);
//! - [`hypergeom`], [`contiguous`]: the Gauss series, Riemann schemes,
//!   Schwartz classification and contiguous-relation elimination;
//! - [`elliptic`], [`curvefunc`]: Weierstrass curves xi^2 = G(x), their group
//!   law, Q-divisors with closed points, function-field arithmetic,
//!   valuations and principal divisors;
//! - [`darboux`]: covering maps, branching data, Hurwitz genus, fiber
//!   products and candidate divisors for radical solutions;
//! - [`evaluations`]: the shipped catalog of 56 evaluations, the series
//!   verifier and the contiguous derivation engine.

pub mod bipoly;
pub mod contiguous;
pub mod curvefunc;
pub mod darboux;
pub mod elliptic;
pub mod error;
pub mod evaluations;
pub mod hypergeom;
pub mod intpoly;
pub mod poly;
pub mod quad;
pub mod rat;
pub mod ratfun;
pub mod series;

pub use error::CoreError;
pub use rat::Rat;
