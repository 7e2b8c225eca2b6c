//! Spherical Fourier analysis on the Heisenberg group `H_n` for radial (U(n)-invariant) functions:
//! the Gelfand transform, the spectral calculus of the sub-Laplacian, Littlewood–Paley wavelets
//! and four computable Besov norms.
//!
//! Numerical types are generic over [`Real`] (`f32`/`f64`); the `*64` aliases fix `f64`.

pub mod besov;
pub mod calculus;
pub mod config;
pub mod error;
pub mod family;
pub mod gelfand;
pub mod heisenberg;
pub mod interp;
pub mod io;
pub mod littlewood_paley;
pub mod quadrature;
pub mod scalar;
pub mod selftest;
pub mod special;

pub use error::{Error, Result};
pub use num_complex;
pub use scalar::Real;

pub type GroupElement64 = heisenberg::GroupElement<f64>;
pub type RadialMesh64 = heisenberg::RadialMesh<f64>;
pub type RadialFunction64 = heisenberg::RadialFunction<f64>;
pub type BoxGrid64 = heisenberg::BoxGrid<f64>;
pub type BoxFunction3D64 = heisenberg::BoxFunction3D<f64>;
pub type GelfandGrid64 = gelfand::GelfandGrid<f64>;
pub type SpectralFunction64 = gelfand::SpectralFunction<f64>;
pub type Multiplier64 = calculus::Multiplier<f64>;
pub type SmoothPartition64 = littlewood_paley::SmoothPartition<f64>;
pub type BesovParams64 = besov::BesovParams<f64>;
