//! Link budget: path gain, per-sub-band SINR and Shannon datarates.
//!
//! The served user of every AP sits at `d_ref` from it; interference is
//! measured AP-to-AP. Two scopes exist. [`Scope::Local`] counts only
//! interferers that are graph neighbors, which is everything a node knows
//! when it decides. [`Scope::Global`] counts every occupying node in the
//! network and is used for reported rates.

use serde::{Deserialize, Serialize};

use crate::graph::InterferenceGraph;
use crate::model::{Node, NodeSet, RadioConfig, Sbos};

/// `max(d, d_min)^-alpha`.
pub fn path_gain(d: f64, radio: &RadioConfig) -> f64 {
    let d = d.max(radio.d_min);
    if radio.alpha.fract() == 0.0 && radio.alpha.abs() < i32::MAX as f64 {
        d.powi(-(radio.alpha as i32))
    } else {
        d.powf(-radio.alpha)
    }
}

/// Received signal power at the reference user.
pub fn signal_power(radio: &RadioConfig) -> f64 {
    radio.tx_power_w * path_gain(radio.d_ref, radio)
}

/// Interference-free capacity of one sub-band, bits/s.
pub fn clean_band_rate(radio: &RadioConfig) -> f64 {
    radio.bandwidth_hz * (1.0 + signal_power(radio) / radio.noise_power()).log2()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Local,
    Global,
}

/// Snapshot of every node's occupation over a fixed deployment.
#[derive(Debug, Clone)]
pub struct NetworkState<'a> {
    pub sbos: Vec<Sbos>,
    pub nodes: &'a NodeSet,
    pub graph: &'a InterferenceGraph,
    pub radio: &'a RadioConfig,
    /// Extra noise power per sub-band at each node, watts. Used to fold in
    /// sensed interference from nodes that do not take part in voting.
    pub extra_noise: Vec<f64>,
}

impl<'a> NetworkState<'a> {
    pub fn new(
        nodes: &'a NodeSet,
        graph: &'a InterferenceGraph,
        radio: &'a RadioConfig,
        sbos: Vec<Sbos>,
    ) -> Self {
        assert_eq!(sbos.len(), graph.node_count(), "one SBOS per graph node");
        assert_eq!(
            nodes.len(),
            graph.node_count(),
            "graph built over another node set"
        );
        assert!(
            sbos.iter().all(|b| b.len() == radio.sub_bands),
            "SBOS length must equal the sub-band count"
        );
        Self {
            sbos,
            nodes,
            graph,
            radio,
            extra_noise: vec![0.0; nodes.len()],
        }
    }

    pub fn with_extra_noise(mut self, extra_noise: Vec<f64>) -> Self {
        assert_eq!(extra_noise.len(), self.nodes.len());
        self.extra_noise = extra_noise;
        self
    }

    pub fn node_count(&self) -> usize {
        self.sbos.len()
    }

    /// Noise floor of `v` on any one sub-band.
    pub fn noise(&self, v: usize) -> f64 {
        self.radio.noise_power() + self.extra_noise[v]
    }

    fn interference(&self, v: usize, band: usize, scope: Scope) -> f64 {
        let p = self.radio.tx_power_w;
        match scope {
            Scope::Local => self
                .graph
                .neighbors(v)
                .iter()
                .filter(|e| self.sbos[e.node].is_occupied(band))
                .map(|e| p * path_gain(e.distance, self.radio))
                .sum(),
            Scope::Global => {
                let me = &self.nodes.nodes()[v];
                self.nodes
                    .iter()
                    .filter(|u| u.id != v && self.sbos[u.id].is_occupied(band))
                    .map(|u| p * path_gain(me.distance(u), self.radio))
                    .sum()
            }
        }
    }
}

/// SINR of node `v` on sub-band `band`.
pub fn sinr(v: usize, band: usize, state: &NetworkState<'_>, scope: Scope) -> f64 {
    signal_power(state.radio) / (state.noise(v) + state.interference(v, band, scope))
}

/// Capacity `v` would get on `band` if it occupied it.
pub fn band_rate(v: usize, band: usize, state: &NetworkState<'_>, scope: Scope) -> f64 {
    state.radio.bandwidth_hz * (1.0 + sinr(v, band, state, scope)).log2()
}

/// Datarate of `v` when it occupies the bands in `b`, other nodes as in
/// `state`. Bits/s.
pub fn node_rate(v: usize, b: &Sbos, state: &NetworkState<'_>, scope: Scope) -> f64 {
    b.occupied_bands()
        .map(|k| band_rate(v, k, state, scope))
        .sum()
}

/// Rate a node can estimate from its neighbors' occupation alone.
pub fn estimate_qos(v: usize, b: &Sbos, state: &NetworkState<'_>) -> f64 {
    node_rate(v, b, state, Scope::Local)
}

/// Local-scope capacity of every sub-band for `v`. Summing the entries of
/// the occupied bands in index order reproduces [`estimate_qos`] exactly.
pub fn local_band_rates(v: usize, state: &NetworkState<'_>) -> Vec<f64> {
    (0..state.radio.sub_bands)
        .map(|k| band_rate(v, k, state, Scope::Local))
        .collect()
}

/// Global-scope datarate of every node under its own SBOS in `state`.
pub fn global_rates(state: &NetworkState<'_>) -> Vec<f64> {
    let radio = state.radio;
    let signal = signal_power(radio);
    let pts = state.nodes.nodes();
    (0..state.node_count())
        .map(|v| {
            let mine = &state.sbos[v];
            if mine.occupied_count() == 0 {
                return 0.0;
            }
            // accumulate in node order per band, as `sinr` does
            let mut interference = vec![0.0; radio.sub_bands];
            for u in pts.iter().filter(|u| u.id != v) {
                let g = radio.tx_power_w * path_gain(pts[v].distance(u), radio);
                for k in state.sbos[u.id].occupied_bands() {
                    interference[k] += g;
                }
            }
            let noise = state.noise(v);
            mine.occupied_bands()
                .map(|k| radio.bandwidth_hz * (1.0 + signal / (noise + interference[k])).log2())
                .sum()
        })
        .collect()
}

/// Noise power each node senses from non-participating transmitters at
/// `rogues`, assuming they occupy every sub-band at `power_w`.
pub fn rogue_noise(
    nodes: &NodeSet,
    rogues: &[(f64, f64)],
    power_w: f64,
    radio: &RadioConfig,
) -> Vec<f64> {
    nodes
        .iter()
        .map(|n| {
            rogues
                .iter()
                .map(|&(x, y)| {
                    let r = Node {
                        id: usize::MAX,
                        x,
                        y,
                    };
                    power_w * path_gain(n.distance(&r), radio)
                })
                .sum()
        })
        .collect()
}
