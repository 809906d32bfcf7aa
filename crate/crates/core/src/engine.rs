//! Democratic spectrum sharing.
//!
//! On every trigger of its Poisson clock a node
//!
//! 1. tallies its neighbors' occupation into a vote per sub-band, each
//!    neighbor weighted by its edge weight ([`tally_votes`]);
//! 2. occupies exactly the sub-bands whose vote is not positive
//!    ([`social_decision`]);
//! 3. while its estimated rate stays below its threshold and a sub-band is
//!    still free, takes the free sub-band with the smallest positive vote
//!    ([`selfish_escalation`]).
//!
//! Decisions run one at a time: a node never decides while another decision
//! is in flight, so every decision reads a consistent snapshot.

use std::io::{self, Write};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use serde::{Deserialize, Serialize};

use crate::error::{DssError, Result};
use crate::graph::InterferenceGraph;
use crate::model::{AllocationResult, InitialState, NodeSet, RadioConfig, Sbos, Scheme, SimConfig};
use crate::radio::{global_rates, local_band_rates, NetworkState};
use crate::rng;

/// Weighted neighbor votes, one entry per sub-band. Positive entries mean
/// the neighborhood leans towards occupying that sub-band.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VoteVector(pub Vec<f64>);

impl VoteVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

/// Sums `w(v, v') · b_v'[k]` over the neighbors of `v`.
pub fn tally_votes(v: usize, state: &NetworkState<'_>) -> VoteVector {
    let mut votes = vec![0.0; state.radio.sub_bands];
    for e in state.graph.neighbors(v) {
        let b = &state.sbos[e.node];
        for (k, vote) in votes.iter_mut().enumerate() {
            *vote += e.weight * f64::from(b.state(k));
        }
    }
    VoteVector(votes)
}

/// `b[k] = -sgn(votes[k])`, with a zero vote counting as "occupy".
pub fn social_decision(votes: &VoteVector) -> Sbos {
    Sbos::from_occupied(votes.0.iter().map(|&x| x <= 0.0).collect())
}

/// Escalates `b` towards `threshold` given per-band capacities. Returns the
/// final occupation and the order in which bands were added.
pub fn escalate(
    mut b: Sbos,
    votes: &[f64],
    band_rates: &[f64],
    threshold: f64,
) -> (Sbos, Vec<usize>) {
    let mut votes = votes.to_vec();
    let mut order = Vec::new();
    let estimate = |b: &Sbos| b.occupied_bands().map(|k| band_rates[k]).sum::<f64>();

    let mut rate = estimate(&b);
    while rate < threshold && !b.is_full() {
        let least_positive = (0..b.len())
            .filter(|&k| votes[k] > 0.0 && !b.is_occupied(k))
            .fold(None, |best: Option<usize>, k| match best {
                Some(j) if votes[j] <= votes[k] => Some(j),
                _ => Some(k),
            });
        // Only reachable when `b` was not the social decision for `votes`.
        let k = least_positive.unwrap_or_else(|| {
            (0..b.len())
                .find(|&k| !b.is_occupied(k))
                .expect("b is not full")
        });
        b.set(k, true);
        votes[k] = -1.0;
        order.push(k);
        rate = estimate(&b);
    }
    (b, order)
}

/// Occupies the least-contested free sub-bands of `v` until its local rate
/// estimate reaches `threshold` or every sub-band is taken. At most `S`
/// iterations.
pub fn selfish_escalation(
    v: usize,
    b: Sbos,
    votes: &VoteVector,
    state: &NetworkState<'_>,
    threshold: f64,
) -> Sbos {
    escalate(b, &votes.0, &local_band_rates(v, state), threshold).0
}

/// Everything one trigger computed.
#[derive(Debug, Clone, PartialEq)]
pub struct Decision {
    pub votes: VoteVector,
    pub social: Sbos,
    pub sbos: Sbos,
    /// Bands added by the selfish step, in the order taken.
    pub escalations: Vec<usize>,
    /// Local rate estimate of `sbos`.
    pub estimated_rate: f64,
}

/// Runs the full decision for `v` without touching `state`.
pub fn decide(v: usize, state: &NetworkState<'_>, threshold: f64) -> Decision {
    let votes = tally_votes(v, state);
    let social = social_decision(&votes);
    let rates = local_band_rates(v, state);
    let (sbos, escalations) = escalate(social.clone(), &votes.0, &rates, threshold);
    let estimated_rate = sbos.occupied_bands().map(|k| rates[k]).sum();
    Decision {
        votes,
        social,
        sbos,
        escalations,
        estimated_rate,
    }
}

/// Decides for `v` and publishes the result into `state`.
pub fn on_trigger(v: usize, state: &mut NetworkState<'_>, threshold: f64) -> Sbos {
    let d = decide(v, state, threshold);
    state.sbos[v] = d.sbos.clone();
    d.sbos
}

/// Per-node minimum datarates, bits/s.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Thresholds(Vec<f64>);

impl Thresholds {
    /// Panics on a negative or NaN entry.
    pub fn new(values: Vec<f64>) -> Self {
        assert!(
            values.iter().all(|&t| t >= 0.0),
            "thresholds must be non-negative"
        );
        Self(values)
    }

    pub fn uniform(n: usize, value: f64) -> Self {
        Self::new(vec![value; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> f64 {
        self.0[v]
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

/// Uses each node's greedy datarate, times `factor`, as its threshold.
pub fn thresholds_from_greedy(greedy: &AllocationResult, factor: f64) -> Thresholds {
    Thresholds::new(greedy.rate_per_node.iter().map(|r| r * factor).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriggerEvent {
    pub time: f64,
    pub node: usize,
}

/// Superposition of `n` independent rate-`rate` Poisson clocks: one
/// exponential clock at rate `n·rate` whose ticks go to a uniformly chosen
/// node.
#[derive(Debug, Clone)]
pub struct PoissonClock {
    rng: ChaCha8Rng,
    gap: Option<Exp<f64>>,
    nodes: usize,
    time: f64,
}

impl PoissonClock {
    pub fn new(nodes: usize, rate: f64, seed: u64) -> Self {
        let gap = (nodes > 0).then(|| Exp::new(nodes as f64 * rate).expect("positive clock rate"));
        Self {
            rng: rng::stream(seed, 1),
            gap,
            nodes,
            time: 0.0,
        }
    }
}

impl Iterator for PoissonClock {
    type Item = TriggerEvent;

    fn next(&mut self) -> Option<TriggerEvent> {
        let gap = self.gap.as_ref()?;
        self.time += gap.sample(&mut self.rng);
        let node = self.rng.random_range(0..self.nodes);
        Some(TriggerEvent {
            time: self.time,
            node,
        })
    }
}

/// One row of a convergence trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub time_s: f64,
    pub node_id: usize,
    pub sbos: String,
    pub estimated_rate_bps: f64,
}

/// Writes `(time_s, node_id, sbos_bitstring, estimated_rate_bps)` rows.
pub fn write_trace_csv<W: Write>(records: &[TraceRecord], writer: W) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["time_s", "node_id", "sbos_bitstring", "estimated_rate_bps"])?;
    for r in records {
        w.write_record([
            r.time_s.to_string(),
            r.node_id.to_string(),
            r.sbos.clone(),
            r.estimated_rate_bps.to_string(),
        ])?;
    }
    w.flush()
}

/// Output of [`Simulation::run`].
#[derive(Debug, Clone, PartialEq)]
pub struct SimOutcome {
    pub result: AllocationResult,
    /// Simulated time of the last executed trigger.
    pub end_time: f64,
    pub trace: Vec<TraceRecord>,
}

/// A configured DSS discrete-event run.
#[derive(Debug, Clone)]
pub struct Simulation<'a> {
    nodes: &'a NodeSet,
    graph: &'a InterferenceGraph,
    radio: &'a RadioConfig,
    sim: &'a SimConfig,
    thresholds: &'a Thresholds,
    extra_noise: Option<Vec<f64>>,
    trace: bool,
}

impl<'a> Simulation<'a> {
    pub fn new(
        nodes: &'a NodeSet,
        graph: &'a InterferenceGraph,
        radio: &'a RadioConfig,
        sim: &'a SimConfig,
        thresholds: &'a Thresholds,
    ) -> Result<Self> {
        if thresholds.len() != nodes.len() {
            return Err(DssError::ThresholdLength {
                expected: nodes.len(),
                got: thresholds.len(),
            });
        }
        Ok(Self {
            nodes,
            graph,
            radio,
            sim,
            thresholds,
            extra_noise: None,
            trace: false,
        })
    }

    /// Per-node extra noise power, see [`NetworkState::extra_noise`].
    pub fn with_extra_noise(mut self, extra_noise: Vec<f64>) -> Self {
        self.extra_noise = Some(extra_noise);
        self
    }

    pub fn with_trace(mut self, trace: bool) -> Self {
        self.trace = trace;
        self
    }

    pub fn run(&self) -> SimOutcome {
        let n = self.nodes.len();
        let s = self.radio.sub_bands;
        let initial: Vec<Sbos> = match self.sim.initial_state {
            InitialState::Vacant => vec![Sbos::vacant(s); n],
            InitialState::Greedy => vec![Sbos::full(s); n],
            InitialState::Random => {
                let mut rng = rng::stream(self.sim.seed, 2);
                (0..n)
                    .map(|_| Sbos::from_occupied((0..s).map(|_| rng.random_bool(0.5)).collect()))
                    .collect()
            }
        };
        let mut state = NetworkState::new(self.nodes, self.graph, self.radio, initial);
        if let Some(noise) = &self.extra_noise {
            state = state.with_extra_noise(noise.clone());
        }

        let window = self.sim.window_for(n);
        let mut quiet = 0usize;
        // nodes that have confirmed their SBOS since the last change anywhere
        let mut confirmed = vec![false; n];
        let mut unconfirmed = n;
        let mut triggers = 0u64;
        let mut converged = n == 0;
        let mut end_time = 0.0;
        let mut trace = Vec::new();

        for event in PoissonClock::new(n, self.sim.clock_rate, self.sim.seed) {
            if event.time > self.sim.max_sim_time {
                break;
            }
            let v = event.node;
            let d = decide(v, &state, self.thresholds.get(v));
            triggers += 1;
            end_time = event.time;
            if self.trace {
                trace.push(TraceRecord {
                    time_s: event.time,
                    node_id: v,
                    sbos: d.sbos.bitstring(),
                    estimated_rate_bps: d.estimated_rate,
                });
            }
            if d.sbos == state.sbos[v] {
                quiet += 1;
                if !confirmed[v] {
                    confirmed[v] = true;
                    unconfirmed -= 1;
                }
            } else {
                quiet = 0;
                state.sbos[v] = d.sbos;
                confirmed.fill(false);
                unconfirmed = n;
            }
            // a quiet window alone can close before some node ever decided
            if quiet >= window && unconfirmed == 0 {
                converged = true;
                break;
            }
        }

        SimOutcome {
            result: allocation(Scheme::Dss, &state, triggers, converged),
            end_time,
            trace,
        }
    }
}

/// Runs DSS to convergence or the time horizon.
pub fn run_dss(
    nodes: &NodeSet,
    graph: &InterferenceGraph,
    radio: &RadioConfig,
    sim: &SimConfig,
    thresholds: &Thresholds,
) -> Result<AllocationResult> {
    Ok(Simulation::new(nodes, graph, radio, sim, thresholds)?
        .run()
        .result)
}

/// Every node occupies every sub-band.
pub fn run_greedy(
    nodes: &NodeSet,
    graph: &InterferenceGraph,
    radio: &RadioConfig,
) -> AllocationResult {
    run_greedy_with_noise(nodes, graph, radio, vec![0.0; nodes.len()])
}

pub fn run_greedy_with_noise(
    nodes: &NodeSet,
    graph: &InterferenceGraph,
    radio: &RadioConfig,
    extra_noise: Vec<f64>,
) -> AllocationResult {
    let state = NetworkState::new(
        nodes,
        graph,
        radio,
        vec![Sbos::full(radio.sub_bands); nodes.len()],
    )
    .with_extra_noise(extra_noise);
    allocation(Scheme::Greedy, &state, 0, true)
}

fn allocation(
    scheme: Scheme,
    state: &NetworkState<'_>,
    triggers: u64,
    converged: bool,
) -> AllocationResult {
    let rate_per_node = global_rates(state);
    let total = state.radio.total_bandwidth();
    AllocationResult {
        scheme,
        se_per_node: rate_per_node.iter().map(|r| r / total).collect(),
        rate_per_node,
        sbos_per_node: state.sbos.clone(),
        triggers_executed: triggers,
        converged,
    }
}
