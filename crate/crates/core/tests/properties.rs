mod common;

use std::f64::consts::PI;

use proptest::prelude::*;
use srn_bench::conflict::trapezoid;
use srn_bench::harness::{self, BenchConfig};
use srn_bench::proximity::collision_index_at;
use srn_bench::{
    clearing_distance, conflict_potential, kinematic_summary, min_ttc, pair_verdict, predict_closest_encounter,
    projected_path_duration, resample_velocities, run_scenario, space_violation_rate, time_to_collision, AgentId,
    AgentSpec, MetricsConfig, Planner, SimConfig, SocialForceParams, Trajectory, Vec2,
};

use common::{arb_pair, close, close_opt, coord, integrate, step, vec2};

fn scaled(t: &Trajectory, k: f64) -> Trajectory {
    let samples = t
        .samples()
        .iter()
        .map(|s| srn_bench::AgentSample::new(s.t, s.position * k, s.velocity * k))
        .collect();
    Trajectory::new(t.agent_id().clone(), t.radius() * k, samples).unwrap()
}

fn compliant(id: &str, start: Vec2, goal: Vec2, speed: f64) -> AgentSpec {
    AgentSpec {
        id: id.into(),
        start,
        goal,
        desired_speed: speed,
        radius: 0.4,
        planner: Planner::SocialForce,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn kinematics_are_isometry_invariant(
        (a, _) in arb_pair(),
        angle in -PI..PI,
        offset in vec2(100.0),
    ) {
        prop_assume!(a.len() >= 4);
        let k0 = kinematic_summary(&a).unwrap();
        let k1 = kinematic_summary(&a.transformed(angle, offset)).unwrap();
        let pairs = [
            (k0.v_min, k1.v_min), (k0.v_avg, k1.v_avg), (k0.v_max, k1.v_max),
            (k0.a_min, k1.a_min), (k0.a_avg, k1.a_avg), (k0.a_max, k1.a_max),
            (k0.j_min, k1.j_min), (k0.j_avg, k1.j_avg), (k0.j_max, k1.j_max),
        ];
        for (x, y) in pairs {
            prop_assert!((x - y).abs() <= 1e-8 * (1.0 + x.abs()), "{x} vs {y}");
        }
    }

    #[test]
    fn kinematic_triples_are_ordered((a, _) in arb_pair()) {
        prop_assume!(a.len() >= 4);
        let k = kinematic_summary(&a).unwrap();
        for (lo, avg, hi) in [(k.v_min, k.v_avg, k.v_max), (k.a_min, k.a_avg, k.a_max), (k.j_min, k.j_avg, k.j_max)] {
            prop_assert!(0.0 <= lo && lo <= avg * (1.0 + 1e-12) && avg <= hi * (1.0 + 1e-12));
        }
    }

    #[test]
    fn constant_velocity_has_no_acceleration(
        start in vec2(10.0),
        v in vec2(2.0),
        n in 4usize..60,
        dt in step(),
    ) {
        let t = integrate("a", 0.3, start, &vec![v; n], dt);
        let k = kinematic_summary(&t).unwrap();
        prop_assert_eq!([k.a_min, k.a_avg, k.a_max, k.j_min, k.j_avg, k.j_max], [0.0; 6]);
    }

    #[test]
    fn pair_metrics_are_isometry_invariant(
        (a, b) in arb_pair(),
        angle in -PI..PI,
        offset in vec2(50.0),
    ) {
        let cfg = MetricsConfig::default();
        let (ta, tb) = (a.transformed(angle, offset), b.transformed(angle, offset));
        let (v0, _) = pair_verdict(&a, &b, &cfg).unwrap();
        let (v1, _) = pair_verdict(&ta, &tb, &cfg).unwrap();
        prop_assert!((v0.intensity - v1.intensity).abs() <= 1e-6);
        let c0 = clearing_distance(&a, &b, &cfg).unwrap();
        let c1 = clearing_distance(&ta, &tb, &cfg).unwrap();
        prop_assert!(close_opt(c0.cd_max, c1.cd_max, 1e-8));
    }

    #[test]
    fn collision_index_decreases_with_distance(
        d1 in 0.0..5.0f64,
        gap in 0.0..5.0f64,
        sigma in 0.05..2.0f64,
    ) {
        prop_assert!(collision_index_at(d1 + gap, sigma) <= collision_index_at(d1, sigma));
        prop_assert!(collision_index_at(d1, sigma) <= 1.0);
    }

    #[test]
    fn conflict_metrics_are_scale_invariant(
        (a, b) in arb_pair(),
        exponent in -3i32..4,
    ) {
        // power-of-two factors scale every intermediate exactly
        let k = 2f64.powi(exponent);
        let cfg = MetricsConfig::default();
        let (v0, s0) = pair_verdict(&a, &b, &cfg).unwrap();
        let (v1, s1) = pair_verdict(&scaled(&a, k), &scaled(&b, k), &cfg).unwrap();
        prop_assert_eq!(s0.potential, s1.potential);
        prop_assert_eq!(v0, v1);
    }

    #[test]
    fn conflict_potential_is_nearly_scale_invariant(
        r in vec2(20.0),
        v in vec2(3.0),
        s in 0.2..2.0f64,
        k in 0.1..10.0f64,
    ) {
        let cp = conflict_potential(r, v, s);
        prop_assert!((cp - conflict_potential(r * k, v * k, s * k)).abs() <= 1e-9);
    }

    #[test]
    fn potential_is_one_only_on_a_collision_course(r in vec2(20.0), v in vec2(3.0), s in 0.2..2.0f64) {
        let pdce = predict_closest_encounter(r, v).pdce;
        prop_assert_eq!(conflict_potential(r, v, s) == 1.0, pdce == 0.0);
    }

    #[test]
    fn dominating_potential_has_larger_intensity(
        base in prop::collection::vec(0.0..1.0f64, 2..60),
        extra in prop::collection::vec(0.0..1.0f64, 60),
        dt in step(),
    ) {
        let upper: Vec<f64> = base.iter().zip(&extra).map(|(b, e)| (b + e).min(1.0)).collect();
        prop_assert!(trapezoid(&upper, dt) >= trapezoid(&base, dt));
    }

    #[test]
    fn closest_encounter_bounds(r in vec2(50.0), v in vec2(5.0)) {
        let p = predict_closest_encounter(r, v);
        prop_assert!(p.pdce >= 0.0 && p.ttce >= 0.0);
        prop_assert!(p.pdce <= r.norm());
        let swapped = predict_closest_encounter(-r, -v);
        prop_assert_eq!(p.pdce, swapped.pdce);
        prop_assert_eq!(p.ttce, swapped.ttce);
    }

    #[test]
    fn time_to_collision_lands_on_contact(r in vec2(30.0), v in vec2(4.0), s in 0.2..2.0f64) {
        if let Some(t) = time_to_collision(r, v, s) {
            if r.norm() > s {
                prop_assert!(((r + v * t).norm() - s).abs() <= 1e-9);
            } else {
                prop_assert_eq!(t, 0.0);
            }
        }
        prop_assert_eq!(time_to_collision(r, v, s), time_to_collision(-r, -v, s));
    }

    #[test]
    fn label_swap_leaves_pair_metrics_unchanged((a, b) in arb_pair()) {
        let cfg = MetricsConfig::default();
        prop_assert_eq!(space_violation_rate(&a, &b, &cfg).unwrap(), space_violation_rate(&b, &a, &cfg).unwrap());
        prop_assert_eq!(projected_path_duration(&a, &b, &cfg).unwrap(), projected_path_duration(&b, &a, &cfg).unwrap());
        prop_assert_eq!(min_ttc(&a, &b).unwrap(), min_ttc(&b, &a).unwrap());
        let (ab, sab) = pair_verdict(&a, &b, &cfg).unwrap();
        let (ba, sba) = pair_verdict(&b, &a, &cfg).unwrap();
        prop_assert_eq!(ab.intensity, ba.intensity);
        prop_assert_eq!((ab.responsibility_a, ab.responsibility_b), (ba.responsibility_b, ba.responsibility_a));
        prop_assert_eq!(sab.contribution_b, sba.contribution_a);
    }

    #[test]
    fn linear_positions_resample_to_the_slope(
        start in vec2(10.0),
        slope in vec2(3.0),
        n in 2usize..30,
        dt in step(),
    ) {
        let positions: Vec<(f64, Vec2)> = (0..n).map(|k| (k as f64 * dt, start + slope * (k as f64 * dt))).collect();
        let t = resample_velocities(AgentId::new("a"), 0.3, &positions, dt).unwrap();
        for s in t.samples() {
            prop_assert!((s.velocity - slope).norm() <= 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn point_symmetric_scenes_stay_point_symmetric(
        start in vec2(6.0),
        goal in vec2(6.0),
        speed in 0.6..1.5f64,
    ) {
        prop_assume!(start.distance(goal) > 2.0 && start.norm() > 1.0 && goal.norm() > 1.0);
        let specs = [compliant("a", start, goal, speed), compliant("b", -start, -goal, speed)];
        let rec = run_scenario("mirror", &specs, &SimConfig::default(), &SocialForceParams::default()).unwrap();
        let (a, b) = (&rec.trajectories()[0], &rec.trajectories()[1]);
        for (sa, sb) in a.samples().iter().zip(b.samples()) {
            prop_assert!((sa.position + sb.position).norm() <= 1e-6, "t = {}", sa.t);
        }
        let (v, _) = pair_verdict(a, b, &MetricsConfig::default()).unwrap();
        prop_assert!((v.responsibility_a - v.responsibility_b).abs() < 0.05);
    }

    #[test]
    fn speed_never_exceeds_cap(
        starts in prop::collection::vec((vec2(8.0), vec2(8.0), 0.5..1.5f64), 2..5),
    ) {
        let specs: Vec<AgentSpec> = starts
            .iter()
            .enumerate()
            .map(|(i, &(s, g, v))| compliant(&format!("p{i}"), s + Vec2::new(20.0 * i as f64, 0.0), g, v))
            .collect();
        prop_assume!(specs.iter().all(|s| s.start.distance(s.goal) > 0.5));
        let sim = SimConfig::default();
        let rec = run_scenario("cap", &specs, &sim, &SocialForceParams::default()).unwrap();
        for (spec, t) in specs.iter().zip(rec.trajectories()) {
            let cap = spec.desired_speed * sim.speed_cap_factor;
            prop_assert!(t.samples().iter().all(|s| s.velocity.norm() <= cap * (1.0 + 1e-12)));
        }
    }

    #[test]
    fn lone_compliant_agent_walks_straight(start in vec2(10.0), goal in vec2(10.0), speed in 0.5..1.5f64) {
        prop_assume!(start.distance(goal) > 1.0);
        let rec = run_scenario("lone", &[compliant("a", start, goal, speed)], &SimConfig::default(), &SocialForceParams::default()).unwrap();
        let dir = (goal - start).normalized().unwrap();
        for s in rec.trajectories()[0].samples() {
            prop_assert!((s.position - start).cross(dir).abs() < 1e-9);
        }
    }

    #[test]
    fn blind_agents_keep_exact_velocity(x in coord(5.0), y in coord(5.0)) {
        let mut specs = harness::scenario("s1", 0.5).unwrap();
        specs[0].start = Vec2::new(x - 10.0, y);
        specs[0].goal = Vec2::new(x + 10.0, y);
        let rec = run_scenario("blind", &specs, &SimConfig::default(), &SocialForceParams::default()).unwrap();
        for t in rec.trajectories() {
            let moving: Vec<Vec2> = t.samples().iter().map(|s| s.velocity).filter(|v| *v != Vec2::ZERO).collect();
            prop_assert!(moving.windows(2).all(|w| w[0] == w[1]));
        }
    }
}

#[test]
fn s4_is_a_mirror_image() {
    let rec = harness::simulate("s4", 0.5, &BenchConfig::default()).unwrap();
    let (robot, human) = (&rec.trajectories()[0], &rec.trajectories()[1]);
    for (r, h) in robot.samples().iter().zip(human.samples()) {
        assert!((r.position + h.position).norm() <= 1e-6, "t = {}", r.t);
    }
}

#[test]
fn intensity_scale_invariance_with_arbitrary_factor() {
    let cfg = MetricsConfig::default();
    let rec = harness::simulate("s4", 0.5, &BenchConfig::default()).unwrap();
    let (a, b) = (&rec.trajectories()[0], &rec.trajectories()[1]);
    let (v0, _) = pair_verdict(a, b, &cfg).unwrap();
    let (v1, _) = pair_verdict(&scaled(a, 1.7), &scaled(b, 1.7), &cfg).unwrap();
    assert!(close(v0.intensity, v1.intensity, 1e-9));
    assert!(close(v0.responsibility_a, v1.responsibility_a, 1e-9));
}
