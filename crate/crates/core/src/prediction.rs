//! Constant-velocity projection metrics.
//!
//! Relative quantities follow one convention throughout: `r = p_b - p_a` and
//! `v = v_b - v_a`. Swapping the agents negates both, which leaves every
//! result here unchanged.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{ensure_same_grid, AgentSample, MetricsConfig, Trajectory, Vec2};

/// Closest encounter of two agents extrapolated at constant velocity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EncounterPrediction {
    /// Predicted distance at closest encounter (m).
    pub pdce: f64,
    /// Time to closest encounter (s), never negative.
    pub ttce: f64,
    pub relative_position: Vec2,
    pub relative_velocity: Vec2,
}

/// Minimises `|r + v t|` over `t >= 0`.
///
/// While the agents are approaching this is the perpendicular distance
/// `|r x v| / |v|`. Receding or co-moving agents are already at their closest,
/// so the current distance is returned with `ttce = 0`.
pub fn predict_closest_encounter(r: Vec2, v: Vec2) -> EncounterPrediction {
    let speed_sq = v.norm_squared();
    let ttce = if speed_sq > 0.0 {
        (-r.dot(v) / speed_sq).max(0.0)
    } else {
        0.0
    };
    let pdce = if ttce > 0.0 {
        r.cross(v).abs() / speed_sq.sqrt()
    } else {
        r.norm()
    };
    EncounterPrediction {
        pdce,
        ttce,
        relative_position: r,
        relative_velocity: v,
    }
}

/// Relative state of `b` with respect to `a`.
pub fn relative_state(a: &AgentSample, b: &AgentSample) -> (Vec2, Vec2) {
    (b.position - a.position, b.velocity - a.velocity)
}

/// Earliest `t >= 0` at which the two body circles touch, if the constant
/// velocity extrapolation predicts a collision at all. Overlapping agents
/// report zero.
pub fn time_to_collision(r: Vec2, v: Vec2, s_sum: f64) -> Option<f64> {
    let c = r.norm_squared() - s_sum * s_sum;
    if c <= 0.0 {
        return Some(0.0);
    }
    let a = v.norm_squared();
    let b = r.dot(v);
    if a == 0.0 || b >= 0.0 {
        return None;
    }
    let disc = b * b - a * c;
    if disc < 0.0 {
        return None;
    }
    // smaller root of a t^2 + 2 b t + c, written without cancellation
    Some(c / (-b + disc.sqrt()))
}

/// Minimum time-to-collision over the recording, `None` if a collision is
/// never predicted.
pub fn min_ttc(a: &Trajectory, b: &Trajectory) -> Result<Option<f64>> {
    ensure_same_grid(a, b)?;
    let s_sum = a.radius() + b.radius();
    Ok(a.samples()
        .iter()
        .zip(b.samples())
        .filter_map(|(sa, sb)| {
            let (r, v) = relative_state(sa, sb);
            time_to_collision(r, v, s_sum)
        })
        .reduce(f64::min))
}

/// Frontal safety zone of an agent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SafetyZone {
    /// Rectangle ahead of the agent, aligned with its heading.
    Rect {
        center: Vec2,
        axis: Vec2,
        half_length: f64,
        half_width: f64,
    },
    /// A stationary agent's zone collapses to its footprint.
    Disc { center: Vec2, radius: f64 },
}

impl SafetyZone {
    pub fn for_agent(sample: &AgentSample, radius: f64, cfg: &MetricsConfig) -> SafetyZone {
        let speed = sample.velocity.norm();
        let length = speed * cfg.safety_zone_horizon;
        match sample.velocity.normalized() {
            Some(axis) if length > 0.0 => SafetyZone::Rect {
                center: sample.position + axis * (0.5 * length),
                axis,
                half_length: 0.5 * length,
                half_width: 0.5 * cfg.safety_zone_width_factor * radius,
            },
            _ => SafetyZone::Disc {
                center: sample.position,
                radius,
            },
        }
    }

    /// Strict overlap: zones that only touch do not count.
    pub fn overlaps(&self, other: &SafetyZone) -> bool {
        use SafetyZone::*;
        match (*self, *other) {
            (
                Rect {
                    center: c1,
                    axis: u1,
                    half_length: l1,
                    half_width: w1,
                },
                Rect {
                    center: c2,
                    axis: u2,
                    half_length: l2,
                    half_width: w2,
                },
            ) => {
                let offset = c2 - c1;
                let extent = |u: Vec2, l: f64, w: f64, axis: Vec2| l * u.dot(axis).abs() + w * u.perp().dot(axis).abs();
                [u1, u1.perp(), u2, u2.perp()]
                    .into_iter()
                    .all(|axis| offset.dot(axis).abs() < extent(u1, l1, w1, axis) + extent(u2, l2, w2, axis))
            }
            (
                Rect {
                    center,
                    axis,
                    half_length,
                    half_width,
                },
                Disc { center: c, radius },
            )
            | (
                Disc { center: c, radius },
                Rect {
                    center,
                    axis,
                    half_length,
                    half_width,
                },
            ) => {
                let local = c - center;
                let along = local.dot(axis);
                let across = local.dot(axis.perp());
                let dx = along - along.clamp(-half_length, half_length);
                let dy = across - across.clamp(-half_width, half_width);
                dx * dx + dy * dy < radius * radius
            }
            (Disc { center: c1, radius: r1 }, Disc { center: c2, radius: r2 }) => c1.distance(c2) < r1 + r2,
        }
    }
}

/// Total time during which the two agents' safety zones overlap.
pub fn projected_path_duration(a: &Trajectory, b: &Trajectory, cfg: &MetricsConfig) -> Result<f64> {
    ensure_same_grid(a, b)?;
    let overlapping = a
        .samples()
        .iter()
        .zip(b.samples())
        .filter(|(sa, sb)| {
            SafetyZone::for_agent(sa, a.radius(), cfg).overlaps(&SafetyZone::for_agent(sb, b.radius(), cfg))
        })
        .count();
    Ok(overlapping as f64 * a.dt())
}
