use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::catalog::{scenario, EGO_ID, OTHER_ID};
use super::config::BenchConfig;
use crate::conflict::{aggregate_pairwise, conflict_series, pair_verdict};
use crate::error::{Error, Result};
use crate::kinematics::{kinematic_summary, KinematicSummary};
use crate::model::{AgentId, ScenarioRecording, Trajectory};
use crate::prediction::{min_ttc, predict_closest_encounter, projected_path_duration, relative_state};
use crate::proximity::{center_distance_series, clearing_distance, collision_index, space_violation_rate};
use crate::sim::run_scenario;

/// Every pairwise metric for one unordered agent pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    pub agent_a: AgentId,
    pub agent_b: AgentId,
    pub cd_avg: Option<f64>,
    pub cd_max: Option<f64>,
    pub encounters: usize,
    pub svr: f64,
    pub collision_index: f64,
    pub min_ttc: Option<f64>,
    pub ppd: f64,
    pub intensity: f64,
    /// `(agent_a, agent_b)`.
    pub responsibility: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EgoSummary {
    pub ego_id: AgentId,
    pub mean_intensity: Option<f64>,
    pub mean_responsibility: Option<f64>,
}

/// Task-wise results of one recording.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub scenario_name: String,
    pub dt: f64,
    pub duration: f64,
    pub samples: usize,
    pub truncated: bool,
    /// `None` for agents with too few samples for jerk.
    pub per_agent: BTreeMap<AgentId, Option<KinematicSummary>>,
    pub per_pair: Vec<PairReport>,
    pub ego: EgoSummary,
    pub config_echo: BenchConfig,
}

impl MetricReport {
    pub fn pair(&self, a: &str, b: &str) -> Option<&PairReport> {
        self.per_pair.iter().find(|p| {
            (p.agent_a.as_str(), p.agent_b.as_str()) == (a, b) || (p.agent_a.as_str(), p.agent_b.as_str()) == (b, a)
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn pair_report(a: &Trajectory, b: &Trajectory, config: &BenchConfig) -> Result<PairReport> {
    let cfg = &config.metrics;
    let cd = clearing_distance(a, b, cfg)?;
    let (verdict, _) = pair_verdict(a, b, cfg)?;
    Ok(PairReport {
        agent_a: a.agent_id().clone(),
        agent_b: b.agent_id().clone(),
        cd_avg: cd.cd_avg,
        cd_max: cd.cd_max,
        encounters: cd.encounters.len(),
        svr: space_violation_rate(a, b, cfg)?,
        collision_index: collision_index(a, b, cfg)?,
        min_ttc: min_ttc(a, b)?,
        ppd: projected_path_duration(a, b, cfg)?,
        intensity: verdict.intensity,
        responsibility: (verdict.responsibility_a, verdict.responsibility_b),
    })
}

/// Computes every metric for all agents and all unordered pairs. Pairs that
/// involve the ego agent list it first.
pub fn evaluate(recording: &ScenarioRecording, ego_id: &AgentId, config: &BenchConfig) -> Result<MetricReport> {
    if recording.agent(ego_id).is_none() {
        return Err(Error::UnknownAgent(ego_id.to_string()));
    }
    let trajectories = recording.trajectories();
    let per_agent = trajectories
        .iter()
        .map(|t| (t.agent_id().clone(), kinematic_summary(t).ok()))
        .collect();

    let mut per_pair = Vec::new();
    for (i, a) in trajectories.iter().enumerate() {
        for b in &trajectories[i + 1..] {
            let (a, b) = if b.agent_id() == ego_id { (b, a) } else { (a, b) };
            per_pair.push(pair_report(a, b, config)?);
        }
    }

    let ego = if trajectories.len() >= 2 {
        let agg = aggregate_pairwise(recording, ego_id, &config.metrics)?;
        EgoSummary {
            ego_id: ego_id.clone(),
            mean_intensity: agg.mean_intensity,
            mean_responsibility: agg.mean_ego_responsibility,
        }
    } else {
        EgoSummary {
            ego_id: ego_id.clone(),
            mean_intensity: None,
            mean_responsibility: None,
        }
    };

    Ok(MetricReport {
        scenario_name: recording.name().to_owned(),
        dt: recording.dt(),
        duration: recording.duration(),
        samples: recording.sample_count(),
        truncated: recording.truncated,
        per_agent,
        per_pair,
        ego,
        config_echo: *config,
    })
}

/// Writes the step-wise series of one pair as CSV with columns
/// `t,distance,pdce,conflict_potential,contribution_a,contribution_b`.
pub fn export_series<W: Write>(
    recording: &ScenarioRecording,
    pair: (&AgentId, &AgentId),
    config: &BenchConfig,
    writer: W,
) -> Result<()> {
    let a = recording
        .agent(pair.0)
        .ok_or_else(|| Error::UnknownAgent(pair.0.to_string()))?;
    let b = recording
        .agent(pair.1)
        .ok_or_else(|| Error::UnknownAgent(pair.1.to_string()))?;
    let series = conflict_series(a, b, &config.metrics)?;
    let distance = center_distance_series(a, b)?;

    let mut out = csv::Writer::from_writer(writer);
    out.write_record([
        "t",
        "distance",
        "pdce",
        "conflict_potential",
        "contribution_a",
        "contribution_b",
    ])?;
    for (k, (sa, sb)) in a.samples().iter().zip(b.samples()).enumerate() {
        let (r, v) = relative_state(sa, sb);
        let pdce = predict_closest_encounter(r, v).pdce;
        out.write_record([
            series.times[k].to_string(),
            distance[k].to_string(),
            pdce.to_string(),
            series.potential[k].to_string(),
            series.contribution_a[k].to_string(),
            series.contribution_b[k].to_string(),
        ])?;
    }
    out.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}

/// Simulates a catalog scenario with the given configuration.
pub fn simulate(name: &str, radius: f64, config: &BenchConfig) -> Result<ScenarioRecording> {
    let specs = scenario(name, radius)?;
    run_scenario(name, &specs, &config.sim, &config.social_force)
}

/// One line of the benchmark table: the robot's kinematics and the
/// robot/human pair metrics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub scenario: String,
    pub robot: KinematicSummary,
    pub pair: PairReport,
}

/// Simulates and evaluates s1 to s4, one thread per scenario.
pub fn run_table(radius: f64, config: &BenchConfig) -> Result<Vec<TableRow>> {
    let names = ["s1", "s2", "s3", "s4"];
    let results: Vec<Result<TableRow>> = std::thread::scope(|scope| {
        let handles: Vec<_> = names
            .iter()
            .map(|name| {
                scope.spawn(move || {
                    let rec = simulate(name, radius, config)?;
                    let report = evaluate(&rec, &EGO_ID.into(), config)?;
                    let robot = report.per_agent[&AgentId::from(EGO_ID)].ok_or(Error::TooFewSamples {
                        need: 4,
                        got: rec.sample_count(),
                    })?;
                    let pair = report
                        .pair(EGO_ID, OTHER_ID)
                        .cloned()
                        .ok_or_else(|| Error::UnknownAgent(OTHER_ID.into()))?;
                    Ok(TableRow {
                        scenario: name.to_string(),
                        robot,
                        pair,
                    })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scenario thread panicked"))
            .collect()
    });
    results.into_iter().collect()
}
