//! Trajectory data model shared by every metric and the simulator.
//!
//! Recordings live on a uniform time grid. Non-uniform input is rejected
//! rather than interpolated, because every integral metric downstream uses a
//! fixed-step quadrature.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on time-grid spacing, in seconds.
pub const GRID_TOLERANCE: f64 = 1e-9;

/// Upper bound on a plausible agent speed (m/s).
pub const MAX_SPEED: f64 = 100.0;

/// Planar vector, used for positions (m), velocities (m/s) and accelerations.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    #[inline]
    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// Scalar (z-component of the 3D) cross product.
    #[inline]
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Unit vector in the same direction, or `None` for the zero vector.
    pub fn normalized(self) -> Option<Vec2> {
        let n = self.norm();
        (n > 0.0).then(|| self / n)
    }

    /// Counter-clockwise perpendicular.
    #[inline]
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn distance(self, other: Vec2) -> f64 {
        (other - self).norm()
    }

    /// Polar angle in radians, in (-pi, pi].
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn rotated(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, rhs: Vec2) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    fn mul(self, rhs: Vec2) -> Vec2 {
        rhs * self
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    fn div(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x / rhs, self.y / rhs)
    }
}

/// Identifier of an agent within a recording.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AgentId(pub String);

impl AgentId {
    pub fn new(id: impl Into<String>) -> Self {
        AgentId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for AgentId {
    fn from(s: &str) -> Self {
        AgentId(s.to_owned())
    }
}

/// Kinematic state of one agent at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgentSample {
    pub t: f64,
    pub position: Vec2,
    pub velocity: Vec2,
}

impl AgentSample {
    pub fn new(t: f64, position: Vec2, velocity: Vec2) -> Self {
        AgentSample { t, position, velocity }
    }

    fn validate(&self, index: usize) -> Result<()> {
        if !self.t.is_finite() {
            return Err(Error::NonFinite { what: "time", index });
        }
        if !self.position.is_finite() {
            return Err(Error::NonFinite {
                what: "position",
                index,
            });
        }
        if !self.velocity.is_finite() {
            return Err(Error::NonFinite {
                what: "velocity",
                index,
            });
        }
        if self.t < 0.0 {
            return Err(Error::InvalidSample {
                index,
                reason: format!("negative time {}", self.t),
            });
        }
        if self.velocity.norm() >= MAX_SPEED {
            return Err(Error::InvalidSample {
                index,
                reason: format!("speed {} exceeds {MAX_SPEED} m/s", self.velocity.norm()),
            });
        }
        Ok(())
    }
}

/// Checks that `times` is strictly increasing with constant step `dt`.
fn check_grid(times: impl Iterator<Item = f64>, dt: f64) -> Result<()> {
    let mut prev: Option<f64> = None;
    for (index, t) in times.enumerate() {
        if let Some(p) = prev {
            let step = t - p;
            if !(step > 0.0) || (step - dt).abs() > GRID_TOLERANCE {
                return Err(Error::NonUniformGrid {
                    index,
                    expected: dt,
                    found: step,
                });
            }
        }
        prev = Some(t);
    }
    Ok(())
}

/// Time-ordered samples of one circular agent on a uniform grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    agent_id: AgentId,
    radius: f64,
    samples: Vec<AgentSample>,
}

impl Trajectory {
    pub fn new(agent_id: AgentId, radius: f64, samples: Vec<AgentSample>) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidRadius(radius));
        }
        if samples.len() < 2 {
            return Err(Error::TooFewSamples {
                need: 2,
                got: samples.len(),
            });
        }
        for (i, s) in samples.iter().enumerate() {
            s.validate(i)?;
        }
        let dt = samples[1].t - samples[0].t;
        check_grid(samples.iter().map(|s| s.t), dt)?;
        Ok(Trajectory {
            agent_id,
            radius,
            samples,
        })
    }

    pub fn agent_id(&self) -> &AgentId {
        &self.agent_id
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn samples(&self) -> &[AgentSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn dt(&self) -> f64 {
        self.samples[1].t - self.samples[0].t
    }

    pub fn start_time(&self) -> f64 {
        self.samples[0].t
    }

    /// Same motion under a rigid transform `p -> R(angle) p + offset`.
    pub fn transformed(&self, angle: f64, offset: Vec2) -> Trajectory {
        let samples = self
            .samples
            .iter()
            .map(|s| AgentSample {
                t: s.t,
                position: s.position.rotated(angle) + offset,
                velocity: s.velocity.rotated(angle),
            })
            .collect();
        Trajectory {
            agent_id: self.agent_id.clone(),
            radius: self.radius,
            samples,
        }
    }

    pub fn with_id(mut self, agent_id: AgentId) -> Trajectory {
        self.agent_id = agent_id;
        self
    }

    /// Whether `other` shares this trajectory's time grid sample for sample.
    pub fn same_grid(&self, other: &Trajectory) -> bool {
        self.samples.len() == other.samples.len()
            && self
                .samples
                .iter()
                .zip(&other.samples)
                .all(|(a, b)| (a.t - b.t).abs() <= GRID_TOLERANCE)
    }
}

/// Builds a trajectory from positions alone, deriving velocities by forward
/// differences. The last sample repeats the previous velocity.
pub fn resample_velocities(agent_id: AgentId, radius: f64, positions: &[(f64, Vec2)], dt: f64) -> Result<Trajectory> {
    if positions.len() < 2 {
        return Err(Error::TooFewSamples {
            need: 2,
            got: positions.len(),
        });
    }
    if !(dt > 0.0) {
        return Err(Error::InvalidConfig(format!("dt must be positive, got {dt}")));
    }
    check_grid(positions.iter().map(|(t, _)| *t), dt)?;

    let mut samples: Vec<AgentSample> = positions
        .windows(2)
        .map(|w| AgentSample::new(w[0].0, w[0].1, (w[1].1 - w[0].1) / dt))
        .collect();
    let last_velocity = samples[samples.len() - 1].velocity;
    let (t_last, p_last) = positions[positions.len() - 1];
    samples.push(AgentSample::new(t_last, p_last, last_velocity));
    Trajectory::new(agent_id, radius, samples)
}

/// Synchronised trajectories of every agent in one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioRecording {
    name: String,
    trajectories: Vec<Trajectory>,
    dt: f64,
    duration: f64,
    /// Set when a simulation hit its time limit before every agent arrived.
    pub truncated: bool,
}

impl ScenarioRecording {
    pub fn new(name: impl Into<String>, trajectories: Vec<Trajectory>) -> Result<Self> {
        let first = trajectories.first().ok_or(Error::TooFewAgents { need: 1, got: 0 })?;
        let mut seen = std::collections::HashSet::new();
        for tr in &trajectories {
            if !seen.insert(tr.agent_id()) {
                return Err(Error::DuplicateAgent(tr.agent_id().to_string()));
            }
            if !first.same_grid(tr) {
                return Err(Error::GridMismatch {
                    a: first.agent_id().to_string(),
                    b: tr.agent_id().to_string(),
                });
            }
        }
        let dt = first.dt();
        let samples = first.samples();
        let duration = samples[samples.len() - 1].t - samples[0].t;
        Ok(ScenarioRecording {
            name: name.into(),
            trajectories,
            dt,
            duration,
            truncated: false,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn trajectories(&self) -> &[Trajectory] {
        &self.trajectories
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    pub fn sample_count(&self) -> usize {
        self.trajectories[0].len()
    }

    pub fn agent(&self, id: &AgentId) -> Option<&Trajectory> {
        self.trajectories.iter().find(|t| t.agent_id() == id)
    }
}

/// Every tunable the metric battery depends on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MetricsConfig {
    /// Body radius assigned to agents loaded from files (m).
    pub agent_radius_default: f64,
    /// Personal-space radius for the space violation rate (m).
    pub personal_space_radius: f64,
    /// Standard deviation of the collision index Gaussian (m).
    pub ci_sigma: f64,
    /// Safety-zone length per unit speed (s).
    pub safety_zone_horizon: f64,
    /// Safety-zone width as a multiple of the agent radius.
    pub safety_zone_width_factor: f64,
    /// Distance below which two agents count as encountering each other (m).
    pub encounter_sensing_range: f64,
    /// Conflict potential above which an interaction is considered started.
    pub conflict_start_threshold: f64,
    pub dt_default: f64,
}

impl Default for MetricsConfig {
    fn default() -> Self {
        MetricsConfig {
            agent_radius_default: 0.5,
            personal_space_radius: 1.2,
            ci_sigma: 0.45,
            safety_zone_horizon: 3.0,
            safety_zone_width_factor: 2.0,
            encounter_sensing_range: 10.0,
            conflict_start_threshold: 0.0,
            dt_default: 0.1,
        }
    }
}

impl MetricsConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("agent_radius_default", self.agent_radius_default),
            ("personal_space_radius", self.personal_space_radius),
            ("ci_sigma", self.ci_sigma),
            ("safety_zone_horizon", self.safety_zone_horizon),
            ("safety_zone_width_factor", self.safety_zone_width_factor),
            ("encounter_sensing_range", self.encounter_sensing_range),
            ("dt_default", self.dt_default),
        ];
        for (name, value) in positive {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::InvalidConfig(format!("{name} must be positive, got {value}")));
            }
        }
        if !(0.0..1.0).contains(&self.conflict_start_threshold) {
            return Err(Error::InvalidConfig(format!(
                "conflict_start_threshold must lie in [0, 1), got {}",
                self.conflict_start_threshold
            )));
        }
        Ok(())
    }
}

/// Rejects pairs of trajectories that do not share a time grid.
pub(crate) fn ensure_same_grid(a: &Trajectory, b: &Trajectory) -> Result<()> {
    if a.same_grid(b) {
        Ok(())
    } else {
        Err(Error::GridMismatch {
            a: a.agent_id().to_string(),
            b: b.agent_id().to_string(),
        })
    }
}
