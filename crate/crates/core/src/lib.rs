//! Exact computation of jet matrices, diagrams of initial exponents,
//! Hilbert–Samuel functions and Chevalley functions of polynomial maps.
//!
//! The crate is organized bottom-up:
//!
//! - [`scalar`], [`multi_index`], [`poly`], [`series`], [`matrix`],
//!   [`subspace`]: exact rational arithmetic, polynomials, truncated series
//!   and linear algebra.
//! - [`staircase`]: the degree-first monomial order, diagrams of initial
//!   exponents, truncated division and ν-orders.
//! - [`jet`]: jet matrices of a map at a point or a fibred tuple, and the
//!   subspaces `E^l`, `E^{lk}`.
//! - [`wedge`]: the exterior-power operator `ad^r B` and the composite
//!   operators `Θ^{lk}`.
//! - [`engine`]: stabilized `R^k`, Hilbert–Samuel functions, Chevalley
//!   functions and generic-leaf sampling.
//! - [`experiments`] and [`scenario`]: batch tables, linear-bound fitting,
//!   ν/μ probes, consistency sweeps and JSON/CSV output.

pub mod censored;
pub mod engine;
pub mod error;
pub mod experiments;
pub mod jet;
pub mod matrix;
pub mod multi_index;
pub mod poly;
pub mod scalar;
pub mod scenario;
pub mod series;
pub mod staircase;
pub mod subspace;
pub mod wedge;

pub use censored::Censored;
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use multi_index::{MonomialBasis, MultiIndex};
pub use poly::{Poly, PolyMap};
pub use scalar::Scalar;
pub use series::{taylor, TruncatedSeries};
pub use subspace::Subspace;
