//! Scattering of a quantum particle on Y-junctions of one-dimensional wires
//! and on rings built from two such junctions.
//!
//! A junction is a U(3) boundary condition `(U − I)Ψ + iL₀(U + I)Ψ′ = 0`;
//! [`junction`] turns its nine angles and the length `L₀` into S-matrices.
//! [`ring`] couples two junctions into a ring and solves for the six
//! plane-wave amplitudes three different ways, and [`spectrum`] sweeps the
//! result over wavenumber and locates perfect transmission and reflection.

pub mod error;
pub mod junction;
pub mod ring;
pub mod smallmat;
pub mod spectrum;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use junction::{EulerAngles, JunctionParams, Orientation, ScatteringMatrix};
pub use ring::{RingAmplitudes, RingConfig, SymmetryMode};
pub use smallmat::{Mat2, Mat3, Vec2, Vec3};
pub use spectrum::{Resonance, ResonanceKind, Spectrum, SpectrumPoint};
