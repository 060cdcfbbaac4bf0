//! Community recovery on multilayer `d`-uniform hypergraph stochastic block
//! models.
//!
//! * [`model`]: exact sampling of communities and hypergraph layers, and the
//!   aggregated similarity matrix.
//! * [`theory`]: assortativity, the tilting function `psi`, the information
//!   quantity and exact finite-`n` co-incidence expectations.
//! * [`sdp`]: the semidefinite relaxation (ADMM and low-rank backends),
//!   eigenvector rounding, dual certificates and a brute-force bisection
//!   oracle.
//! * [`metrics`]: classification error, adjusted Rand index, exact recovery.
//! * [`harness`]: configurable seed sweeps with CSV/JSON reports.

pub mod combinatorics;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod metrics;
pub mod model;
pub mod rng;
pub mod sdp;
pub mod theory;

pub use error::{Error, Result};
