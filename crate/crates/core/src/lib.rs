//! Exact one-point disk invariants of odd-dimensional Calabi-Yau complete
//! intersections `X_a` in `P^{n-1}` with odd degrees `a`.
//!
//! Two independent routes produce the disk potential `Z^disk_1`:
//!
//! * [`disk`]: the closed formula, a nested chain of `q d/dq` and divisions
//!   by the series `I_p(q)` applied to `tau(q) / I_0(q)`;
//! * [`localization`]: sums over torus fixed points with concrete rational
//!   weights.
//!
//! Both are pushed through the mirror map `Q = q e^{J(q)}` and compared
//! coefficient by coefficient. Everything is exact rational arithmetic.

pub mod cli;
pub mod combinat;
pub mod disk;
pub mod error;
pub mod geometry;
pub mod localization;
pub mod mirror;
pub mod series;

pub use error::{Error, Result};
pub use geometry::{Geometry, GeometryError};
pub use num_rational::BigRational;
