use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

/// One violated configuration constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigViolation {
    SubBands,
    Bandwidth,
    TransmitPower,
    CoverageRadius,
    PathLossExponent,
    NoiseDensity,
    MinDistance,
    RefDistanceOrder,
    NeighborhoodRadius,
    ClockRate,
    MaxSimTime,
    ConvergenceWindow,
}

impl ConfigViolation {
    /// Short machine-readable name of the offending field.
    pub fn field(self) -> &'static str {
        match self {
            Self::SubBands => "S",
            Self::Bandwidth => "W",
            Self::TransmitPower => "P_T",
            Self::CoverageRadius => "R",
            Self::PathLossExponent => "alpha",
            Self::NoiseDensity => "noise_density",
            Self::MinDistance => "d_min",
            Self::RefDistanceOrder => "d_ref",
            Self::NeighborhoodRadius => "R_N",
            Self::ClockRate => "clock_rate",
            Self::MaxSimTime => "max_sim_time",
            Self::ConvergenceWindow => "convergence_window",
        }
    }
}

impl fmt::Display for ConfigViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            Self::SubBands => "S must be ≥ 1",
            Self::Bandwidth => "W must be > 0",
            Self::TransmitPower => "P_T must be > 0",
            Self::CoverageRadius => "R must be > 0",
            Self::PathLossExponent => "alpha must be ≥ 2",
            Self::NoiseDensity => "noise_density must be > 0",
            Self::MinDistance => "d_min must be > 0",
            Self::RefDistanceOrder => "d_ref must be ≥ d_min",
            Self::NeighborhoodRadius => "R_N must be > 0",
            Self::ClockRate => "clock_rate must be > 0",
            Self::MaxSimTime => "max_sim_time must be > 0",
            Self::ConvergenceWindow => "convergence_window must be ≥ 1",
        };
        f.write_str(msg)
    }
}

/// Every constraint a configuration violated, in field order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigErrors(pub Vec<ConfigViolation>);

impl ConfigErrors {
    pub fn contains(&self, v: ConfigViolation) -> bool {
        self.0.contains(&v)
    }
}

impl fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigErrors {}

#[derive(Debug, Error)]
pub enum DssError {
    #[error("invalid configuration: {0}")]
    Config(#[from] ConfigErrors),

    #[error("{path}: line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("density must be non-negative, got {0}")]
    NegativeDensity(f64),

    #[error("region must have positive width and height")]
    InvalidRegion,

    #[error("latitude {0} is outside (-90, 90)")]
    InvalidLatitude(f64),

    #[error("grid must have at least one row and one column")]
    InvalidGrid,

    #[error("node set is empty")]
    EmptyNodeSet,

    #[error("at least two nodes are required, got {0}")]
    TooFewNodes(usize),

    #[error("fairness is undefined when every rate is zero")]
    AllZeroRates,

    #[error("fairness requires at least one rate")]
    NoRates,

    #[error("thresholds cover {got} nodes but the network has {expected}")]
    ThresholdLength { expected: usize, got: usize },

    #[error("selection matched no nodes")]
    EmptySelection,

    #[error("node id {id} out of range for {count} nodes")]
    UnknownNode { id: usize, count: usize },

    #[error("invalid sweep: {0}")]
    InvalidSweep(&'static str),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl DssError {
    /// Stable identifier for machine-readable error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Config(_) => "config",
            Self::Parse { .. } => "parse",
            Self::Io { .. } => "io",
            Self::NegativeDensity(_) => "negative_density",
            Self::InvalidRegion => "invalid_region",
            Self::InvalidLatitude(_) => "invalid_latitude",
            Self::InvalidGrid => "invalid_grid",
            Self::EmptyNodeSet => "empty_node_set",
            Self::TooFewNodes(_) => "too_few_nodes",
            Self::AllZeroRates => "all_zero_rates",
            Self::NoRates => "no_rates",
            Self::ThresholdLength { .. } => "threshold_length",
            Self::EmptySelection => "empty_selection",
            Self::UnknownNode { .. } => "unknown_node",
            Self::InvalidSweep(_) => "invalid_sweep",
            Self::Json(_) => "json",
            Self::Csv(_) => "csv",
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = DssError> = std::result::Result<T, E>;
