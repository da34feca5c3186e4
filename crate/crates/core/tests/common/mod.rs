#![allow(dead_code)]

use proptest::prelude::*;
use srn_bench::{AgentId, AgentSample, Trajectory, Vec2};

/// Trajectory whose sample `k` was reached with velocity `velocities[k]`.
pub fn integrate(id: &str, radius: f64, start: Vec2, velocities: &[Vec2], dt: f64) -> Trajectory {
    let mut p = start;
    let samples = velocities
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            if k > 0 {
                p += v * dt;
            }
            AgentSample::new(k as f64 * dt, p, v)
        })
        .collect();
    Trajectory::new(AgentId::new(id), radius, samples).expect("generated trajectory is valid")
}

pub fn coord(limit: f64) -> impl Strategy<Value = f64> {
    -limit..limit
}

pub fn vec2(limit: f64) -> impl Strategy<Value = Vec2> {
    (coord(limit), coord(limit)).prop_map(|(x, y)| Vec2::new(x, y))
}

pub fn step() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.05), Just(0.1), Just(0.2)]
}

/// Two agents on a shared grid with arbitrary, jumpy velocities.
pub fn arb_pair() -> impl Strategy<Value = (Trajectory, Trajectory)> {
    (4usize..40, step()).prop_flat_map(|(n, dt)| {
        (
            vec2(8.0),
            vec2(8.0),
            prop::collection::vec(vec2(2.0), n),
            prop::collection::vec(vec2(2.0), n),
            0.2..0.6f64,
            0.2..0.6f64,
        )
            .prop_map(move |(pa, pb, va, vb, ra, rb)| {
                (integrate("a", ra, pa, &va, dt), integrate("b", rb, pb, &vb, dt))
            })
    })
}

/// Like [`arb_pair`], but agent `a` never changes velocity.
pub fn arb_pair_with_steady_a() -> impl Strategy<Value = (Trajectory, Trajectory)> {
    (4usize..40, step()).prop_flat_map(|(n, dt)| {
        (vec2(8.0), vec2(8.0), vec2(2.0), prop::collection::vec(vec2(2.0), n)).prop_map(move |(pa, pb, va, vb)| {
            (
                integrate("a", 0.4, pa, &vec![va; n], dt),
                integrate("b", 0.4, pb, &vb, dt),
            )
        })
    })
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

pub fn close_opt(a: Option<f64>, b: Option<f64>, tol: f64) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => close(x, y, tol),
        (None, None) => true,
        _ => false,
    }
}
