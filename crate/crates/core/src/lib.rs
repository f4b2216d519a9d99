//! Two-particle Kapitza-Dirac scattering in the Bragg regime.
//!
//! A pair of massive particles crosses a thick standing light wave. Each
//! particle leaves in one of two momentum orders (`+k` or `-k`), so a pair
//! ends up in one of four exit channels. This crate computes those channel
//! probabilities for distinguishable particles, bosons and fermions, for
//! single-mode states and for Gaussian multi-mode states, and provides
//! independent numerical oracles to check the closed forms against.
//!
//! Module map:
//!
//! - [`params`]: physical inputs and the derived scalars `w`, `ε`, `σ_k`, `σ_v`.
//! - [`special`]: `erf` / `erfc`.
//! - [`single_mode`]: scattering coefficients and single-mode channel tables.
//! - [`multi_mode`]: scatterable fractions, effective coefficients, exchange
//!   overlap and multi-mode channel tables.
//! - [`oracle`]: tensor-product brute force, quadrature and Monte Carlo checks.
//! - [`cli`]: sweeps, dip finding, overlap estimation and the self-check suite.

pub mod cli;
pub mod error;
pub mod multi_mode;
pub mod oracle;
pub mod params;
pub mod single_mode;
pub mod special;

pub use error::{Error, Result};
pub use multi_mode::{GaussianMode, ScatterFractions};
pub use params::{DerivedQuantities, InteractionParams, Window};
pub use single_mode::{ChannelTable, Scenario, ScatterCoefficients, Statistics};
