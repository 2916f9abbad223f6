//! Plane-curve geometry with complex numbers.
//!
//! Polar curves `r = f(θ)` are handled as the point sets `f(θ)e^{iθ}`: their
//! intersections, periods and symmetries, and the areas of the regions they
//! bound. Roulettes are traced by rolling a circle without slipping along an
//! arbitrary regular parameterized curve.
//!
//! ```
//! use curvekit::{intersect, PolarCurve};
//!
//! let circle = PolarCurve::parse("cos(theta)").unwrap();
//! let cardioid = PolarCurve::parse("1 - cos(theta)").unwrap();
//! let found = intersect::intersections(&circle, &cardioid).unwrap();
//! assert!(found.origin);
//! assert_eq!(found.points.len(), 2);
//! ```

// `!(a < b)` is used on purpose so that NaN inputs are rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::should_implement_trait)]

pub mod area;
mod error;
pub mod expr;
pub mod geometry;
pub mod intersect;
pub mod montecarlo;
pub mod numerics;
pub mod polar;
pub mod raster;
pub mod roulette;

pub use error::{Error, Result};
pub use expr::{parse, Expr, ExprError, Params};
pub use polar::{ComplexPoint, PolarCurve, PolarPoint};
