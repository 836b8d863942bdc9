//! Numerical laboratory for Lipschitz classes of mappings between metric
//! spaces.
//!
//! The crate provides the metric substrate (polyline curves, curve integrals,
//! weighted and quasi-hyperbolic distances), seminorm and regularity
//! estimators (Hölder, local Hölder, Bloch, upper dilatation), Möbius
//! transforms of the complex unit ball with their differentials, polynomial
//! maps with exact Jacobians, and a harness that certifies the quantitative
//! inequalities connecting all of these — with their explicit constants — on
//! desk-scale domains.
//!
//! Sampling conventions: every sampled seminorm is a lower bound of its
//! supremum and is labeled as such; inequality checks place sampling bias on
//! the safe side or apply a documented slack. All randomness flows from
//! explicitly seeded generators, so reports are reproducible byte for byte.

pub mod analytic;
pub mod config;
pub mod curve;
pub mod domain;
pub mod error;
pub mod estimators;
pub mod grid;
pub mod harness;
pub mod linalg;
pub mod majorant;
pub mod maps;
pub mod metric;
pub mod moebius;
pub mod poly;
pub mod report;
pub mod search;
pub mod space;
pub mod suite;
pub mod uniform;
pub mod weight;

pub use error::{Error, Result};

/// Version string embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
