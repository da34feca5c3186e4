//! Fixed-step two-dimensional pedestrian simulator.
//!
//! Agents either walk blindly toward their goal at constant speed or follow a
//! social force model: relaxation toward the desired velocity plus a pairwise
//! repulsion whose direction blends relative velocity with the line of sight
//! and whose reach grows with the closing speed (Moussaïd et al., 2009).
//!
//! All agents are advanced synchronously from the previous state. Velocity is
//! integrated first, then position with the new velocity, so a sample's
//! velocity is the one that carried the agent to that sample's position.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{AgentId, AgentSample, ScenarioRecording, Trajectory, Vec2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Planner {
    /// Ignores every other agent.
    ConstantVelocity,
    SocialForce,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentSpec {
    pub id: AgentId,
    pub start: Vec2,
    pub goal: Vec2,
    pub desired_speed: f64,
    pub radius: f64,
    pub planner: Planner,
}

impl AgentSpec {
    fn validate(&self) -> Result<()> {
        if !(self.desired_speed > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "agent `{}`: desired_speed must be positive",
                self.id
            )));
        }
        if !(self.radius > 0.0) {
            return Err(Error::InvalidRadius(self.radius));
        }
        if self.start == self.goal {
            return Err(Error::InvalidConfig(format!("agent `{}`: start equals goal", self.id)));
        }
        Ok(())
    }
}

/// Interaction parameters of the social force model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SocialForceParams {
    /// Interaction strength `A` (m/s^2).
    pub a_strength: f64,
    /// Weight `lambda` of the relative velocity in the interaction direction.
    pub lambda: f64,
    /// Range factor `gamma`; the decay length is `gamma * |interaction vector|`.
    pub gamma: f64,
    /// Angular sharpness `n` of the sideways component.
    pub n: f64,
    /// Angular sharpness `n'` of the braking component.
    pub n_prime: f64,
    /// Relaxation time toward the desired velocity (s).
    pub relaxation_time: f64,
}

impl Default for SocialForceParams {
    fn default() -> Self {
        SocialForceParams {
            a_strength: 5.1,
            lambda: 3.0,
            gamma: 0.35,
            n: 1.0,
            n_prime: 3.0,
            relaxation_time: 1.0,
        }
    }
}

impl SocialForceParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("a_strength", self.a_strength),
            ("lambda", self.lambda),
            ("gamma", self.gamma),
            ("n", self.n),
            ("n_prime", self.n_prime),
            ("relaxation_time", self.relaxation_time),
        ];
        for (name, value) in fields {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::InvalidConfig(format!("{name} must be positive, got {value}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    pub dt: f64,
    pub max_duration: f64,
    pub goal_tolerance: f64,
    /// Speed cap as a multiple of each agent's desired speed.
    pub speed_cap_factor: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            dt: 0.1,
            max_duration: 40.0,
            goal_tolerance: 0.3,
            speed_cap_factor: 1.3,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::InvalidConfig(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.max_duration >= self.dt) {
            return Err(Error::InvalidConfig("max_duration must be at least dt".into()));
        }
        if !(self.goal_tolerance > 0.0) || !(self.speed_cap_factor > 0.0) {
            return Err(Error::InvalidConfig(
                "goal_tolerance and speed_cap_factor must be positive".into(),
            ));
        }
        Ok(())
    }
}

fn reached(position: Vec2, goal: Vec2, tolerance: f64) -> bool {
    position.distance(goal) <= tolerance
}

fn hold(state: &AgentSample, dt: f64) -> AgentSample {
    AgentSample::new(state.t + dt, state.position, Vec2::ZERO)
}

/// Blind straight-line step toward the goal.
pub fn step_constant_velocity(
    state: &AgentSample,
    goal: Vec2,
    desired_speed: f64,
    goal_tolerance: f64,
    dt: f64,
) -> AgentSample {
    if reached(state.position, goal, goal_tolerance) {
        return hold(state, dt);
    }
    let heading = (goal - state.position).normalized().unwrap_or(Vec2::ZERO);
    let velocity = heading * desired_speed;
    AgentSample::new(state.t + dt, state.position + velocity * dt, velocity)
}

/// Repulsion exerted on an agent at `position` moving with `velocity` by a
/// neighbour.
pub fn interaction_force(position: Vec2, velocity: Vec2, neighbor: &AgentSample, params: &SocialForceParams) -> Vec2 {
    let offset = neighbor.position - position;
    let distance = offset.norm();
    let Some(line_of_sight) = offset.normalized() else {
        // coincident centres: push sideways, to the right of the own heading
        let side = velocity.normalized().map(|u| -u.perp()).unwrap_or(Vec2::new(1.0, 0.0));
        return side * params.a_strength;
    };
    let interaction = (velocity - neighbor.velocity) * params.lambda + line_of_sight;
    let reach = interaction.norm();
    let Some(direction) = interaction.normalized() else {
        return Vec2::ZERO;
    };
    let range = params.gamma * reach;
    let theta = wrap_angle(direction.angle() - line_of_sight.angle());
    let decay = (-distance / range).exp();
    let braking = (-(params.n_prime * range * theta).powi(2)).exp();
    let turning = (-(params.n * range * theta).powi(2)).exp();
    // turn away from the side the neighbour is on; dead ahead, keep right
    let side = if theta > 0.0 {
        direction.perp()
    } else {
        -direction.perp()
    };
    (direction * -braking + side * turning) * (params.a_strength * decay)
}

fn wrap_angle(a: f64) -> f64 {
    use std::f64::consts::{PI, TAU};
    if a > PI {
        a - TAU
    } else if a <= -PI {
        a + TAU
    } else {
        a
    }
}

/// Social force step: goal relaxation plus neighbour repulsion, with the
/// resulting speed capped at `speed_cap`.
#[allow(clippy::too_many_arguments)]
pub fn step_social_force(
    state: &AgentSample,
    goal: Vec2,
    desired_speed: f64,
    neighbors: &[AgentSample],
    params: &SocialForceParams,
    speed_cap: f64,
    goal_tolerance: f64,
    dt: f64,
) -> AgentSample {
    if reached(state.position, goal, goal_tolerance) {
        return hold(state, dt);
    }
    let desired = (goal - state.position).normalized().unwrap_or(Vec2::ZERO) * desired_speed;
    let mut accel = (desired - state.velocity) / params.relaxation_time;
    for n in neighbors {
        accel += interaction_force(state.position, state.velocity, n, params);
    }
    let mut velocity = state.velocity + accel * dt;
    let speed = velocity.norm();
    if speed > speed_cap {
        velocity = velocity * (speed_cap / speed);
    }
    AgentSample::new(state.t + dt, state.position + velocity * dt, velocity)
}

/// Runs all agents synchronously until each is within tolerance of its goal
/// or `max_duration` elapses (in which case the recording is flagged as
/// truncated). Every agent starts at its desired velocity.
pub fn run_scenario(
    name: &str,
    agents: &[AgentSpec],
    sim: &SimConfig,
    params: &SocialForceParams,
) -> Result<ScenarioRecording> {
    if agents.is_empty() {
        return Err(Error::TooFewAgents { need: 1, got: 0 });
    }
    sim.validate()?;
    params.validate()?;
    for a in agents {
        a.validate()?;
    }

    let initial: Vec<AgentSample> = agents
        .iter()
        .map(|a| {
            let heading = (a.goal - a.start).normalized().unwrap_or(Vec2::ZERO);
            AgentSample::new(0.0, a.start, heading * a.desired_speed)
        })
        .collect();
    let mut history: Vec<Vec<AgentSample>> = initial.iter().map(|s| vec![*s]).collect();
    let mut current = initial;

    let max_steps = (sim.max_duration / sim.dt + 1e-9).floor() as usize;
    let all_arrived = |states: &[AgentSample]| {
        states
            .iter()
            .zip(agents)
            .all(|(s, a)| reached(s.position, a.goal, sim.goal_tolerance))
    };

    let mut step = 0;
    while !all_arrived(&current) && step < max_steps {
        step += 1;
        let next: Vec<AgentSample> = agents
            .iter()
            .enumerate()
            .map(|(i, spec)| {
                let state = &current[i];
                let mut s = match spec.planner {
                    Planner::ConstantVelocity => {
                        step_constant_velocity(state, spec.goal, spec.desired_speed, sim.goal_tolerance, sim.dt)
                    }
                    Planner::SocialForce => {
                        let neighbors: Vec<AgentSample> = current
                            .iter()
                            .enumerate()
                            .filter(|(j, _)| *j != i)
                            .map(|(_, s)| *s)
                            .collect();
                        step_social_force(
                            state,
                            spec.goal,
                            spec.desired_speed,
                            &neighbors,
                            params,
                            sim.speed_cap_factor * spec.desired_speed,
                            sim.goal_tolerance,
                            sim.dt,
                        )
                    }
                };
                // grid times from the step counter, not by accumulation
                s.t = step as f64 * sim.dt;
                s
            })
            .collect();
        for (h, s) in history.iter_mut().zip(&next) {
            h.push(*s);
        }
        current = next;
    }
    let truncated = !all_arrived(&current);

    let trajectories = agents
        .iter()
        .zip(history)
        .map(|(spec, samples)| Trajectory::new(spec.id.clone(), spec.radius, samples))
        .collect::<Result<Vec<_>>>()?;
    let mut recording = ScenarioRecording::new(name, trajectories)?;
    recording.truncated = truncated;
    Ok(recording)
}
