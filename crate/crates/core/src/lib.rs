//! Democratic spectrum sharing (DSS) for wireless access points.
//!
//! Access points on an interference graph vote on which sub-bands each of
//! them should occupy. Every node takes the bands its neighbors leave free
//! (the social decision) and then, if that does not reach its minimum
//! datarate, claims the least contested remaining bands (the selfish
//! decision). Decisions fire on independent Poisson clocks and are executed
//! one at a time by a discrete-event scheduler.
//!
//! The crate covers the whole evaluation pipeline:
//!
//! - [`deployment`]: Poisson point process deployments, AP dataset
//!   ingestion, projection, grid partitioning, nearest-neighbor distances
//! - [`graph`]: the weighted interference graph
//! - [`radio`]: path gain, SINR and Shannon rates
//! - [`engine`]: voting, social/selfish decisions, the scheduler and the
//!   greedy baseline
//! - [`metrics`]: Jain fairness, spectral efficiency, rate coverage,
//!   improvements
//! - [`experiment`]: synthetic sweeps, grid-wise dataset analysis and
//!   sample-network bundles, plus their CSV/JSON outputs

pub mod deployment;
pub mod engine;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod metrics;
pub mod model;
pub mod radio;
pub mod rng;

pub use error::{ConfigErrors, ConfigViolation, DssError, Result};
pub use model::{
    validate_config, AllocationResult, InitialState, Node, NodeSet, RadioConfig, Sbos, Scheme,
    SimConfig, ValidatedConfig,
};
