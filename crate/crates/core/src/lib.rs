//! Biharmonic mappings of the unit disk.
//!
//! The crate evaluates the disk kernels (Green functions, Poisson-type
//! boundary kernels), solves the clamped Dirichlet problem for `Δ²u = 0` by
//! boundary integration, constructs the family ℱ of biharmonic extensions
//! `u = H + (1/2)(1 - |z|^2) r dH/dr`, and checks univalence, sense
//! preservation and Schwarz-type bounds numerically.
//!
//! Numerical code is generic over [`Scalar`] (`f32`, `f64`); the aliases
//! below fix the double-precision instantiation used by the command line.

// `!(x < y)` range checks are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod biharmonic;
pub mod error;
pub mod grid;
pub mod harmonic;
pub mod holomorphic;
pub mod io;
pub mod kernels;
pub mod render;
pub mod scalar;
pub mod schwarz;
pub mod univalence;
pub mod verify;

pub use biharmonic::{BiharmonicMap, BoundaryData, MapKind, PlanarMap, WirtingerPair};
pub use error::{Error, Result};
pub use grid::{AnalyticSeries, BoundaryQuadrature, PolarGrid};
pub use harmonic::HarmonicMap;
pub use scalar::Scalar;

pub type Complex64 = num_complex::Complex<f64>;
pub type Series = AnalyticSeries<f64>;
pub type Harmonic = HarmonicMap<f64>;
pub type Biharmonic = BiharmonicMap<f64>;
pub type Boundary = BoundaryData<f64>;
pub type Quadrature = BoundaryQuadrature<f64>;
pub type Grid = PolarGrid<f64>;
