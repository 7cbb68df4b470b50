//! Path loss engine for reconfigurable-intelligent-surface (RIS) enabled
//! single-input single-output links.
//!
//! The engine evaluates the exact coherent sum over every RIS element path,
//! the far-case closed forms, classical benchmarks (flat plate scattering,
//! specular reflection, free space) and the RIS sizing rule. The
//! [`experiments`] module wires everything into sweep and table generators
//! that are exposed through the `ris` command line tool.
//!
//! ```
//! use ris_core::{coeffs, geometry, link, pattern};
//!
//! let wavelength = 1.0;
//! let ris = geometry::build_square_grid(20, 20, wavelength / 2.0).unwrap();
//! let tx = geometry::TerminalPlacement::polar(1000.0, 0.0, 0.0).unwrap();
//! let rx = geometry::TerminalPlacement::polar(1000.0, 30f64.to_radians(), 0.0).unwrap();
//! let scenario = link::Scenario::new(wavelength, ris, pattern::benchmark_pattern(), tx, rx).unwrap();
//! let b = coeffs::focusing(&scenario).unwrap();
//! let result = link::path_loss(&scenario, &b).unwrap();
//! assert!(result.loss_db > 0.0);
//! ```

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coeffs;
pub mod db;
pub mod error;
pub mod experiments;
pub mod farfield;
pub mod geometry;
pub mod link;
pub mod pattern;
pub mod selfcheck;
pub mod sum;

pub use error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
