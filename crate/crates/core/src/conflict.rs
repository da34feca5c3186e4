//! Conflict potential, conflict intensity, conflict contribution and
//! responsibility.
//!
//! The conflict potential of a pair is the predicted overlap of the two body
//! circles at their closest encounter, `max(0, 1 - pdce / (s_a + s_b))`. Its
//! time integral is the conflict intensity. An agent's conflict contribution
//! at step `k` is how much the potential would have been higher had that agent
//! kept its velocity from step `k - 1`; its responsibility is the integrated
//! contribution rate normalised by the potential at the start of the
//! interaction. Contributions are signed so that reducing the conflict counts
//! positively, and responsibilities are not clamped: an agent that worsens
//! the conflict ends up negative.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ensure_same_grid, AgentId, MetricsConfig, ScenarioRecording, Trajectory, Vec2};
use crate::prediction::{predict_closest_encounter, relative_state};

/// Step-wise conflict quantities of one agent pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConflictSeries {
    pub times: Vec<f64>,
    pub potential: Vec<f64>,
    pub contribution_a: Vec<f64>,
    pub contribution_b: Vec<f64>,
    /// Potential at the start of the interaction, if there is one.
    pub c0: Option<f64>,
    pub interaction_start_index: Option<usize>,
}

impl ConflictSeries {
    pub fn has_interaction(&self) -> bool {
        self.interaction_start_index.is_some()
    }
}

/// Task-wise verdict for one pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub intensity: f64,
    pub responsibility_a: f64,
    pub responsibility_b: f64,
}

pub fn conflict_potential(r: Vec2, v: Vec2, s_sum: f64) -> f64 {
    let pdce = predict_closest_encounter(r, v).pdce;
    (1.0 - pdce / s_sum).max(0.0)
}

/// Composite trapezoidal rule on a uniform grid.
pub fn trapezoid(values: &[f64], dt: f64) -> f64 {
    match values {
        [] | [_] => 0.0,
        [first, inner @ .., last] => dt * (0.5 * (first + last) + inner.iter().sum::<f64>()),
    }
}

pub fn conflict_series(a: &Trajectory, b: &Trajectory, cfg: &MetricsConfig) -> Result<ConflictSeries> {
    ensure_same_grid(a, b)?;
    let s_sum = a.radius() + b.radius();
    let (sa, sb) = (a.samples(), b.samples());
    let n = sa.len();

    let mut potential = Vec::with_capacity(n);
    let mut contribution_a = Vec::with_capacity(n);
    let mut contribution_b = Vec::with_capacity(n);
    for k in 0..n {
        let (r, v) = relative_state(&sa[k], &sb[k]);
        let cp = conflict_potential(r, v, s_sum);
        potential.push(cp);
        if k == 0 {
            contribution_a.push(0.0);
            contribution_b.push(0.0);
            continue;
        }
        // each agent's counterfactual: its previous velocity, everything else current
        let a_kept = sb[k].velocity - sa[k - 1].velocity;
        let b_kept = sb[k - 1].velocity - sa[k].velocity;
        contribution_a.push(conflict_potential(r, a_kept, s_sum) - cp);
        contribution_b.push(conflict_potential(r, b_kept, s_sum) - cp);
    }

    let interaction_start_index = potential.iter().position(|&cp| cp > cfg.conflict_start_threshold);
    Ok(ConflictSeries {
        times: sa.iter().map(|s| s.t).collect(),
        c0: interaction_start_index.map(|i| potential[i]),
        potential,
        contribution_a,
        contribution_b,
        interaction_start_index,
    })
}

/// Time integral of the conflict potential over the whole series.
pub fn intensity(series: &ConflictSeries, dt: f64) -> f64 {
    trapezoid(&series.potential, dt)
}

/// Responsibilities `(r_a, r_b)`; `(0, 0)` when the pair never interacts.
///
/// Contributions are per-step changes, so they are integrated as rates
/// (`contribution / dt`) from the interaction start onward.
pub fn responsibility(series: &ConflictSeries, dt: f64) -> (f64, f64) {
    let (Some(start), Some(c0)) = (series.interaction_start_index, series.c0) else {
        return (0.0, 0.0);
    };
    let share = |contribution: &[f64]| trapezoid(&contribution[start..], dt) / dt / c0;
    (share(&series.contribution_a), share(&series.contribution_b))
}

pub fn pair_verdict(a: &Trajectory, b: &Trajectory, cfg: &MetricsConfig) -> Result<(PairVerdict, ConflictSeries)> {
    let series = conflict_series(a, b, cfg)?;
    let dt = a.dt();
    let (responsibility_a, responsibility_b) = responsibility(&series, dt);
    let verdict = PairVerdict {
        intensity: intensity(&series, dt),
        responsibility_a,
        responsibility_b,
    };
    Ok((verdict, series))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairEntry {
    pub other: AgentId,
    /// Verdict with the ego agent in the `a` slot.
    pub verdict: PairVerdict,
    pub interacting: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseAggregate {
    pub ego: AgentId,
    /// Means over interacting pairs only; `None` if no pair interacts.
    pub mean_intensity: Option<f64>,
    pub mean_ego_responsibility: Option<f64>,
    pub pairs: Vec<PairEntry>,
}

/// Ego-centred averages of intensity and responsibility over all partners.
pub fn aggregate_pairwise(
    recording: &ScenarioRecording,
    ego_id: &AgentId,
    cfg: &MetricsConfig,
) -> Result<PairwiseAggregate> {
    let ego = recording
        .agent(ego_id)
        .ok_or_else(|| Error::UnknownAgent(ego_id.to_string()))?;
    let count = recording.trajectories().len();
    if count < 2 {
        return Err(Error::TooFewAgents { need: 2, got: count });
    }

    let pairs = recording
        .trajectories()
        .iter()
        .filter(|t| t.agent_id() != ego_id)
        .map(|other| {
            let (verdict, series) = pair_verdict(ego, other, cfg)?;
            Ok(PairEntry {
                other: other.agent_id().clone(),
                verdict,
                interacting: series.has_interaction(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let active: Vec<&PairVerdict> = pairs.iter().filter(|p| p.interacting).map(|p| &p.verdict).collect();
    let mean = |f: fn(&PairVerdict) -> f64| {
        (!active.is_empty()).then(|| active.iter().map(|v| f(v)).sum::<f64>() / active.len() as f64)
    };
    Ok(PairwiseAggregate {
        ego: ego_id.clone(),
        mean_intensity: mean(|v| v.intensity),
        mean_ego_responsibility: mean(|v| v.responsibility_a),
        pairs,
    })
}
