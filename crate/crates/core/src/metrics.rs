//! Figures of merit for an allocation and DSS-versus-greedy comparisons.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::error::{DssError, Result};
use crate::model::{mean, AllocationResult, RadioConfig};

/// Jain's index `(Σx)² / (n·Σx²)`.
pub fn jain_fairness(rates: &[f64]) -> Result<f64> {
    if rates.is_empty() {
        return Err(DssError::NoRates);
    }
    let sum: f64 = rates.iter().sum();
    let sum_sq: f64 = rates.iter().map(|x| x * x).sum();
    if sum_sq == 0.0 {
        return Err(DssError::AllZeroRates);
    }
    Ok(sum * sum / (rates.len() as f64 * sum_sq))
}

/// Sum of node datarates per Hz of system bandwidth per km².
pub fn area_spectral_efficiency(
    result: &AllocationResult,
    area_km2: f64,
    radio: &RadioConfig,
) -> f64 {
    let total: f64 = result.rate_per_node.iter().sum();
    total / (radio.total_bandwidth() * area_km2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CcdfPoint {
    pub threshold_bps: f64,
    pub coverage: f64,
}

/// Fraction of `rates` strictly above each threshold.
pub fn rate_ccdf(rates: &[f64], thresholds: &[f64]) -> Vec<CcdfPoint> {
    let n = rates.len();
    thresholds
        .iter()
        .map(|&t| CcdfPoint {
            threshold_bps: t,
            coverage: if n == 0 {
                0.0
            } else {
                rates.iter().filter(|&&r| r > t).count() as f64 / n as f64
            },
        })
        .collect()
}

/// `points` evenly spaced thresholds from 0 to `max`, inclusive.
pub fn ccdf_grid(max: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..points)
            .map(|i| max * i as f64 / (points - 1) as f64)
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub mean_rate_bps: f64,
    /// `None` when every node has rate zero.
    pub fairness_index: Option<f64>,
    pub mean_se_bps_per_hz: f64,
    /// `None` for a degenerate zero-area region.
    pub ase_bps_per_hz_per_km2: Option<f64>,
    pub ccdf: Vec<CcdfPoint>,
}

impl MetricReport {
    pub fn from_result(
        result: &AllocationResult,
        area_km2: f64,
        radio: &RadioConfig,
        ccdf_thresholds: &[f64],
    ) -> Self {
        Self {
            mean_rate_bps: mean(&result.rate_per_node),
            fairness_index: jain_fairness(&result.rate_per_node).ok(),
            mean_se_bps_per_hz: mean(&result.se_per_node),
            ase_bps_per_hz_per_km2: (area_km2 > 0.0)
                .then(|| area_spectral_efficiency(result, area_km2, radio)),
            ccdf: rate_ccdf(&result.rate_per_node, ccdf_thresholds),
        }
    }
}

/// DSS relative to greedy. Percentages are `100·(dss − greedy)/greedy`;
/// `None` where the greedy value is zero or missing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Improvement {
    pub mean_rate_pct: Option<f64>,
    pub fairness_pct: Option<f64>,
    pub fairness_abs: Option<f64>,
    pub mean_se_pct: Option<f64>,
    pub ase_pct: Option<f64>,
}

pub fn improvement(dss: &MetricReport, greedy: &MetricReport) -> Improvement {
    fn pct(d: Option<f64>, g: Option<f64>) -> Option<f64> {
        match (d, g) {
            (Some(d), Some(g)) if g != 0.0 => Some(100.0 * (d - g) / g),
            _ => None,
        }
    }
    Improvement {
        mean_rate_pct: pct(Some(dss.mean_rate_bps), Some(greedy.mean_rate_bps)),
        fairness_pct: pct(dss.fairness_index, greedy.fairness_index),
        fairness_abs: dss
            .fairness_index
            .zip(greedy.fairness_index)
            .map(|(d, g)| d - g),
        mean_se_pct: pct(
            Some(dss.mean_se_bps_per_hz),
            Some(greedy.mean_se_bps_per_hz),
        ),
        ase_pct: pct(dss.ase_bps_per_hz_per_km2, greedy.ase_bps_per_hz_per_km2),
    }
}

/// Flat CSV export of reports keyed by `(experiment, scheme)`.
pub fn write_reports_csv<W: Write>(
    rows: &[(String, String, MetricReport)],
    writer: W,
) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record([
        "experiment",
        "scheme",
        "mean_rate_bps",
        "mean_rate_mbps",
        "fairness_index",
        "mean_se_bps_per_hz",
        "ase_bps_per_hz_per_km2",
    ])?;
    for (experiment, scheme, r) in rows {
        w.write_record([
            experiment.clone(),
            scheme.clone(),
            r.mean_rate_bps.to_string(),
            (r.mean_rate_bps / 1e6).to_string(),
            opt(r.fairness_index),
            r.mean_se_bps_per_hz.to_string(),
            opt(r.ase_bps_per_hz_per_km2),
        ])?;
    }
    w.flush()
}

pub(crate) fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}
