//! Command-line operations: figure sweeps, dip finding, overlap estimation
//! and the self-check suite. The binary in `main.rs` only parses arguments
//! and dispatches here.

pub mod check;
pub mod config;
pub mod dip;
pub mod estimate;
pub mod sweep;

pub use check::{check, CheckOutcome};
pub use dip::dip_find;
pub use estimate::{overlap_estimate, OverlapEstimate};
pub use sweep::{sweep, Grid, Model, MultiModeParams, Preset, SweepPlan, SweepSpec};
