//! Velocity, acceleration and jerk statistics of a single agent.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Trajectory, Vec2};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
struct Stats {
    min: f64,
    avg: f64,
    max: f64,
}

impl Stats {
    fn of(values: &[f64]) -> Stats {
        if values.is_empty() {
            return Stats::default();
        }
        let (min, max, sum) = values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY, 0.0), |(lo, hi, sum), &v| {
                (lo.min(v), hi.max(v), sum + v)
            });
        // the running mean can drift a few ulps outside [min, max]
        let avg = (sum / values.len() as f64).clamp(min, max);
        Stats { min, avg, max }
    }
}

/// Motion statistics of one agent: speed (m/s), acceleration (m/s^2) and
/// jerk (m/s^3) magnitudes.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct KinematicSummary {
    pub v_min: f64,
    pub v_avg: f64,
    pub v_max: f64,
    pub a_min: f64,
    pub a_avg: f64,
    pub a_max: f64,
    pub j_min: f64,
    pub j_avg: f64,
    pub j_max: f64,
}

impl KinematicSummary {
    fn from_stats(v: Stats, a: Stats, j: Stats) -> Self {
        KinematicSummary {
            v_min: v.min,
            v_avg: v.avg,
            v_max: v.max,
            a_min: a.min,
            a_avg: a.avg,
            a_max: a.max,
            j_min: j.min,
            j_avg: j.avg,
            j_max: j.max,
        }
    }
}

/// Index one past the last moving sample: the trailing block where the agent
/// sits still after arriving is left out of the statistics.
fn active_len(velocities: &[Vec2]) -> usize {
    match velocities.iter().rposition(|v| *v != Vec2::ZERO) {
        Some(last) => last + 1,
        None => velocities.len(),
    }
}

/// Speed, acceleration and jerk statistics.
///
/// Acceleration is the magnitude of the central difference of the velocity
/// vector at interior samples; jerk is the magnitude of the difference of
/// consecutive accelerations. Samples after the agent has come to a final
/// rest are excluded, as long as at least four moving samples remain.
pub fn kinematic_summary(traj: &Trajectory) -> Result<KinematicSummary> {
    const MIN_SAMPLES: usize = 4;
    if traj.len() < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            need: MIN_SAMPLES,
            got: traj.len(),
        });
    }
    let dt = traj.dt();
    let all: Vec<Vec2> = traj.samples().iter().map(|s| s.velocity).collect();
    let active = active_len(&all);
    let velocities = if active >= MIN_SAMPLES {
        &all[..active]
    } else {
        &all[..]
    };

    let speeds: Vec<f64> = velocities.iter().map(|v| v.norm()).collect();
    let accelerations: Vec<Vec2> = velocities.windows(3).map(|w| (w[2] - w[0]) / (2.0 * dt)).collect();
    let jerks: Vec<f64> = accelerations.windows(2).map(|w| ((w[1] - w[0]) / dt).norm()).collect();
    let accel_mags: Vec<f64> = accelerations.iter().map(|a| a.norm()).collect();

    Ok(KinematicSummary::from_stats(
        Stats::of(&speeds),
        Stats::of(&accel_mags),
        Stats::of(&jerks),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{AgentSample, Trajectory};

    fn from_velocity(n: usize, dt: f64, vel: impl Fn(f64) -> Vec2) -> Trajectory {
        let mut p = Vec2::ZERO;
        let samples = (0..n)
            .map(|k| {
                let t = k as f64 * dt;
                let v = vel(t);
                let s = AgentSample::new(t, p, v);
                p += v * dt;
                s
            })
            .collect();
        Trajectory::new("a".into(), 0.5, samples).unwrap()
    }

    #[test]
    fn constant_velocity_has_zero_derivatives() {
        let tr = from_velocity(50, 0.1, |_| Vec2::new(1.0, 0.0));
        let k = kinematic_summary(&tr).unwrap();
        assert_eq!((k.v_min, k.v_avg, k.v_max), (1.0, 1.0, 1.0));
        assert_eq!((k.a_min, k.a_avg, k.a_max), (0.0, 0.0, 0.0));
        assert_eq!((k.j_min, k.j_avg, k.j_max), (0.0, 0.0, 0.0));
    }

    #[test]
    fn stationary_is_all_zero() {
        let tr = from_velocity(10, 0.1, |_| Vec2::ZERO);
        assert_eq!(kinematic_summary(&tr).unwrap(), KinematicSummary::default());
    }

    #[test]
    fn velocity_ramp() {
        // v = (t, 0): central differences give exactly 1, jerk 0
        let tr = from_velocity(30, 0.1, |t| Vec2::new(t, 0.0));
        let k = kinematic_summary(&tr).unwrap();
        assert!((k.a_avg - 1.0).abs() < 1e-9);
        assert!((k.a_min - 1.0).abs() < 1e-9);
        assert!(k.j_max < 1e-6);
    }

    #[test]
    fn turning_at_constant_speed_registers_acceleration() {
        // uniform circular motion, omega = 0.5 rad/s, speed 1 -> |a| = 0.5
        let tr = from_velocity(100, 0.05, |t| Vec2::new((0.5 * t).cos(), (0.5 * t).sin()));
        let k = kinematic_summary(&tr).unwrap();
        assert!((k.v_avg - 1.0).abs() < 1e-12);
        assert!((k.a_avg - 0.5).abs() < 1e-3);
        // |jerk| = omega^2 * speed
        assert!((k.j_avg - 0.25).abs() < 1e-3);
    }

    #[test]
    fn trailing_rest_is_excluded() {
        let tr = from_velocity(40, 0.1, |t| {
            if t < 3.0 - 1e-9 {
                Vec2::new(1.0, 0.0)
            } else {
                Vec2::ZERO
            }
        });
        let k = kinematic_summary(&tr).unwrap();
        assert_eq!(k.v_avg, 1.0);
        assert_eq!(k.a_max, 0.0);
    }

    #[test]
    fn too_few_samples() {
        let tr = from_velocity(3, 0.1, |_| Vec2::ZERO);
        assert!(matches!(
            kinematic_summary(&tr),
            Err(Error::TooFewSamples { need: 4, got: 3 })
        ));
    }

    #[test]
    fn finer_step_converges() {
        // v = (sin t, cos t): |a| = 1, |j| = 1 analytically
        for dt in [0.1, 0.05] {
            let tr = from_velocity((6.0 / dt) as usize, dt, |t| Vec2::new(t.sin(), t.cos()));
            let k = kinematic_summary(&tr).unwrap();
            assert!((k.a_avg - 1.0).abs() < dt * dt);
            assert!((k.j_avg - 1.0).abs() < dt * dt);
        }
    }
}
