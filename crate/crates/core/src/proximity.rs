//! Distance-based pairwise metrics: clearing distance, space violation rate
//! and collision index. All distances are center to center.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{ensure_same_grid, MetricsConfig, Trajectory};

/// A maximal run of samples during which two agents are within sensing range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Encounter {
    pub start_index: usize,
    pub end_index: usize,
    pub min_distance: f64,
    pub min_distance_time: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClearingDistance {
    /// Mean of the per-encounter minimum distances; `None` without encounters.
    pub cd_avg: Option<f64>,
    pub cd_max: Option<f64>,
    pub encounters: Vec<Encounter>,
}

/// Euclidean center distance at every sample.
pub fn center_distance_series(a: &Trajectory, b: &Trajectory) -> Result<Vec<f64>> {
    ensure_same_grid(a, b)?;
    Ok(a.samples()
        .iter()
        .zip(b.samples())
        .map(|(sa, sb)| sa.position.distance(sb.position))
        .collect())
}

pub fn clearing_distance(a: &Trajectory, b: &Trajectory, cfg: &MetricsConfig) -> Result<ClearingDistance> {
    let distances = center_distance_series(a, b)?;
    let mut encounters = Vec::new();
    let mut current: Option<Encounter> = None;
    for (k, &d) in distances.iter().enumerate() {
        if d < cfg.encounter_sensing_range {
            let t = a.samples()[k].t;
            let enc = current.get_or_insert(Encounter {
                start_index: k,
                end_index: k,
                min_distance: d,
                min_distance_time: t,
            });
            enc.end_index = k;
            if d < enc.min_distance {
                enc.min_distance = d;
                enc.min_distance_time = t;
            }
        } else if let Some(enc) = current.take() {
            encounters.push(enc);
        }
    }
    encounters.extend(current);

    let (cd_avg, cd_max) = if encounters.is_empty() {
        (None, None)
    } else {
        let sum: f64 = encounters.iter().map(|e| e.min_distance).sum();
        let max = encounters
            .iter()
            .map(|e| e.min_distance)
            .fold(f64::NEG_INFINITY, f64::max);
        (Some(sum / encounters.len() as f64), Some(max))
    };
    Ok(ClearingDistance {
        cd_avg,
        cd_max,
        encounters,
    })
}

/// Fraction of samples with the agents closer than the personal-space radius.
pub fn space_violation_rate(a: &Trajectory, b: &Trajectory, cfg: &MetricsConfig) -> Result<f64> {
    let distances = center_distance_series(a, b)?;
    let inside = distances.iter().filter(|&&d| d < cfg.personal_space_radius).count();
    Ok(inside as f64 / distances.len() as f64)
}

/// Gaussian criticality of a single center distance.
pub fn collision_index_at(distance: f64, sigma: f64) -> f64 {
    (-(distance * distance) / (2.0 * sigma * sigma)).exp()
}

/// Peak over time of `exp(-d^2 / (2 sigma^2))`.
pub fn collision_index(a: &Trajectory, b: &Trajectory, cfg: &MetricsConfig) -> Result<f64> {
    let distances = center_distance_series(a, b)?;
    let d_min = distances.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(collision_index_at(d_min, cfg.ci_sigma))
}
