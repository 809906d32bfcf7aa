//! Domain types shared by every stage of the pipeline: node sets, sub-band
//! occupation states, radio and simulation configuration, and per-scheme
//! allocation results.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ConfigErrors, ConfigViolation};

/// An access point at a planar position in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub id: usize,
    pub x: f64,
    pub y: f64,
}

impl Node {
    pub fn distance(&self, other: &Node) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// A deployment of access points with contiguous ids starting at 0.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct NodeSet {
    nodes: Vec<Node>,
}

impl NodeSet {
    /// Builds a node set from positions, assigning ids in order.
    ///
    /// Panics if a coordinate is not finite.
    pub fn from_positions<I>(positions: I) -> Self
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let nodes = positions
            .into_iter()
            .enumerate()
            .map(|(id, (x, y))| {
                assert!(
                    x.is_finite() && y.is_finite(),
                    "node {id} has a non-finite position ({x}, {y})"
                );
                Node { id, x, y }
            })
            .collect();
        Self { nodes }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn get(&self, id: usize) -> Option<&Node> {
        self.nodes.get(id)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Node> {
        self.nodes.iter()
    }

    pub fn positions(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().map(|n| (n.x, n.y))
    }

    /// New node set holding the given members, re-indexed from 0 in the
    /// order given.
    pub fn subset(&self, ids: &[usize]) -> Self {
        Self::from_positions(ids.iter().map(|&i| (self.nodes[i].x, self.nodes[i].y)))
    }

    /// Axis-aligned bounding box as `(min_x, min_y, max_x, max_y)`.
    pub fn bounding_box(&self) -> Option<(f64, f64, f64, f64)> {
        let first = self.nodes.first()?;
        Some(self.nodes.iter().fold(
            (first.x, first.y, first.x, first.y),
            |(x0, y0, x1, y1), n| (x0.min(n.x), y0.min(n.y), x1.max(n.x), y1.max(n.y)),
        ))
    }
}

impl<'a> IntoIterator for &'a NodeSet {
    type Item = &'a Node;
    type IntoIter = std::slice::Iter<'a, Node>;

    fn into_iter(self) -> Self::IntoIter {
        self.nodes.iter()
    }
}

/// Sub-band occupation state: for every sub-band, occupied (+1) or free (-1).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<i8>", try_from = "Vec<i8>")]
pub struct Sbos {
    occupied: Vec<bool>,
}

impl Sbos {
    /// Every sub-band free.
    pub fn vacant(bands: usize) -> Self {
        Self {
            occupied: vec![false; bands],
        }
    }

    /// Every sub-band occupied.
    pub fn full(bands: usize) -> Self {
        Self {
            occupied: vec![true; bands],
        }
    }

    pub fn from_occupied(occupied: Vec<bool>) -> Self {
        Self { occupied }
    }

    /// Parses a `±1` state vector. Any other entry is rejected.
    pub fn from_states(states: &[i8]) -> Result<Self, InvalidState> {
        states
            .iter()
            .enumerate()
            .map(|(index, &s)| match s {
                1 => Ok(true),
                -1 => Ok(false),
                value => Err(InvalidState { index, value }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self::from_occupied)
    }

    pub fn len(&self) -> usize {
        self.occupied.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occupied.is_empty()
    }

    pub fn is_occupied(&self, band: usize) -> bool {
        self.occupied[band]
    }

    /// State of `band` as +1 (occupied) or -1 (free).
    pub fn state(&self, band: usize) -> i8 {
        if self.occupied[band] {
            1
        } else {
            -1
        }
    }

    pub fn set(&mut self, band: usize, occupied: bool) {
        self.occupied[band] = occupied;
    }

    pub fn states(&self) -> Vec<i8> {
        (0..self.len()).map(|k| self.state(k)).collect()
    }

    pub fn occupied_count(&self) -> usize {
        self.occupied.iter().filter(|&&o| o).count()
    }

    pub fn is_full(&self) -> bool {
        self.occupied.iter().all(|&o| o)
    }

    pub fn occupied_bands(&self) -> impl Iterator<Item = usize> + '_ {
        self.occupied
            .iter()
            .enumerate()
            .filter_map(|(k, &o)| o.then_some(k))
    }

    /// `1`/`0` string, band 0 first.
    pub fn bitstring(&self) -> String {
        self.occupied
            .iter()
            .map(|&o| if o { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for Sbos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sbos({})", self.bitstring())
    }
}

impl From<Sbos> for Vec<i8> {
    fn from(s: Sbos) -> Self {
        s.states()
    }
}

impl TryFrom<Vec<i8>> for Sbos {
    type Error = InvalidState;

    fn try_from(v: Vec<i8>) -> Result<Self, Self::Error> {
        Sbos::from_states(&v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("sub-band state at index {index} is {value}, expected -1 or +1")]
pub struct InvalidState {
    pub index: usize,
    pub value: i8,
}

/// Link-budget constants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "RadioConfigFile")]
pub struct RadioConfig {
    /// Number of sub-bands.
    #[serde(rename = "S")]
    pub sub_bands: usize,
    /// Bandwidth of one sub-band in Hz.
    #[serde(rename = "W")]
    pub bandwidth_hz: f64,
    /// Transmit power in watts.
    #[serde(rename = "P_T")]
    pub tx_power_w: f64,
    /// Coverage radius in meters.
    #[serde(rename = "R")]
    pub coverage_radius_m: f64,
    /// Path-loss exponent.
    pub alpha: f64,
    /// Noise power spectral density in W/Hz.
    pub noise_density: f64,
    /// Propagation distances are clamped to at least this many meters.
    pub d_min: f64,
    /// Distance from an AP to the user it serves when estimating rates.
    pub d_ref: f64,
}

impl Default for RadioConfig {
    fn default() -> Self {
        Self {
            sub_bands: 10,
            bandwidth_hz: 20e6,
            tx_power_w: 1.0,
            coverage_radius_m: 30.0,
            alpha: 4.0,
            noise_density: 4e-21,
            d_min: 1.0,
            d_ref: 30.0,
        }
    }
}

impl RadioConfig {
    /// Noise power over one sub-band (`n0`).
    pub fn noise_power(&self) -> f64 {
        self.noise_density * self.bandwidth_hz
    }

    /// Total system bandwidth `S·W`.
    pub fn total_bandwidth(&self) -> f64 {
        self.sub_bands as f64 * self.bandwidth_hz
    }
}

// `d_ref` falls back to `R` when omitted.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RadioConfigFile {
    #[serde(rename = "S")]
    sub_bands: Option<usize>,
    #[serde(rename = "W")]
    bandwidth_hz: Option<f64>,
    #[serde(rename = "P_T")]
    tx_power_w: Option<f64>,
    #[serde(rename = "R")]
    coverage_radius_m: Option<f64>,
    alpha: Option<f64>,
    noise_density: Option<f64>,
    d_min: Option<f64>,
    d_ref: Option<f64>,
}

impl From<RadioConfigFile> for RadioConfig {
    fn from(f: RadioConfigFile) -> Self {
        let d = RadioConfig::default();
        let coverage_radius_m = f.coverage_radius_m.unwrap_or(d.coverage_radius_m);
        Self {
            sub_bands: f.sub_bands.unwrap_or(d.sub_bands),
            bandwidth_hz: f.bandwidth_hz.unwrap_or(d.bandwidth_hz),
            tx_power_w: f.tx_power_w.unwrap_or(d.tx_power_w),
            coverage_radius_m,
            alpha: f.alpha.unwrap_or(d.alpha),
            noise_density: f.noise_density.unwrap_or(d.noise_density),
            d_min: f.d_min.unwrap_or(d.d_min),
            d_ref: f.d_ref.unwrap_or(coverage_radius_m),
        }
    }
}

/// Sub-band occupation every node holds before its first trigger.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialState {
    /// Every sub-band occupied independently with probability 1/2, drawn
    /// from the run seed.
    #[default]
    Random,
    /// All sub-bands free.
    Vacant,
    /// All sub-bands occupied, i.e. the greedy allocation.
    Greedy,
}

/// Discrete-event simulation parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    /// Neighborhood radius in meters.
    #[serde(rename = "R_N")]
    pub neighborhood_radius_m: f64,
    /// Poisson clock rate of each node, triggers per second.
    pub clock_rate: f64,
    /// Simulation horizon in seconds.
    pub max_sim_time: f64,
    /// Consecutive unchanged triggers needed to declare convergence, on top
    /// of every node having re-confirmed its SBOS since the last change.
    /// `None` means three times the node count.
    pub convergence_window: Option<usize>,
    pub seed: u64,
    pub initial_state: InitialState,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            neighborhood_radius_m: 300.0,
            clock_rate: 1.0,
            max_sim_time: 100.0,
            convergence_window: None,
            seed: 0,
            initial_state: InitialState::Random,
        }
    }
}

impl SimConfig {
    /// Convergence window in effect for a network of `nodes` nodes.
    pub fn window_for(&self, nodes: usize) -> usize {
        self.convergence_window.unwrap_or(3 * nodes).max(1)
    }
}

/// A radio/simulation configuration pair that passed [`validate_config`].
#[derive(Debug, Clone, PartialEq)]
pub struct ValidatedConfig {
    pub radio: RadioConfig,
    pub sim: SimConfig,
}

/// Checks every field invariant, collecting all violations.
pub fn validate_config(
    radio: &RadioConfig,
    sim: &SimConfig,
) -> Result<ValidatedConfig, ConfigErrors> {
    use ConfigViolation::*;

    let positive = |x: f64| x > 0.0 && x.is_finite();
    let mut errors = Vec::new();
    let mut check = |ok: bool, v: ConfigViolation| {
        if !ok {
            errors.push(v);
        }
    };

    check(radio.sub_bands >= 1, SubBands);
    check(positive(radio.bandwidth_hz), Bandwidth);
    check(positive(radio.tx_power_w), TransmitPower);
    check(positive(radio.coverage_radius_m), CoverageRadius);
    check(
        radio.alpha >= 2.0 && radio.alpha.is_finite(),
        PathLossExponent,
    );
    check(positive(radio.noise_density), NoiseDensity);
    check(positive(radio.d_min), MinDistance);
    check(
        radio.d_ref.is_finite() && radio.d_ref >= radio.d_min,
        RefDistanceOrder,
    );
    check(positive(sim.neighborhood_radius_m), NeighborhoodRadius);
    check(positive(sim.clock_rate), ClockRate);
    check(positive(sim.max_sim_time), MaxSimTime);
    check(sim.convergence_window != Some(0), ConvergenceWindow);

    if errors.is_empty() {
        Ok(ValidatedConfig {
            radio: radio.clone(),
            sim: sim.clone(),
        })
    } else {
        Err(ConfigErrors(errors))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Dss,
    Greedy,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Dss => "dss",
            Scheme::Greedy => "greedy",
        })
    }
}

/// Final allocation of one scheme over a network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AllocationResult {
    pub scheme: Scheme,
    pub sbos_per_node: Vec<Sbos>,
    /// Realized datarate of every node in bits/s.
    pub rate_per_node: Vec<f64>,
    /// Datarate over total system bandwidth, bits/s/Hz.
    pub se_per_node: Vec<f64>,
    pub triggers_executed: u64,
    pub converged: bool,
}

impl AllocationResult {
    pub fn node_count(&self) -> usize {
        self.rate_per_node.len()
    }

    pub fn mean_rate(&self) -> f64 {
        mean(&self.rate_per_node)
    }
}

pub(crate) fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        0.0
    } else {
        xs.iter().sum::<f64>() / xs.len() as f64
    }
}
