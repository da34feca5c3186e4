//! Evaluation toolkit for social robot navigation.
//!
//! Besides the usual kinematic, distance-based and prediction-based metrics,
//! the crate computes two interaction metrics built on the predicted distance
//! at closest encounter: the *conflict intensity* of an encounter (how long
//! and how strongly the two agents were on a collision course) and each
//! agent's *responsibility* (its share in resolving the conflict). A small
//! social-force simulator reproduces the frontal-approach benchmark in which
//! either, both or neither of two agents yield.

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod conflict;
pub mod error;
pub mod harness;
pub mod kinematics;
pub mod model;
pub mod prediction;
pub mod proximity;
pub mod sim;

pub use conflict::{
    aggregate_pairwise, conflict_potential, conflict_series, intensity, pair_verdict, responsibility, ConflictSeries,
    PairVerdict, PairwiseAggregate,
};
pub use error::{Error, Result};
pub use kinematics::{kinematic_summary, KinematicSummary};
pub use model::{resample_velocities, AgentId, AgentSample, MetricsConfig, ScenarioRecording, Trajectory, Vec2};
pub use prediction::{
    min_ttc, predict_closest_encounter, projected_path_duration, time_to_collision, EncounterPrediction,
};
pub use proximity::{center_distance_series, clearing_distance, collision_index, space_violation_rate, Encounter};
pub use sim::{run_scenario, AgentSpec, Planner, SimConfig, SocialForceParams};
