use crate::error::{Error, Result};
use crate::model::Vec2;
use crate::sim::{AgentSpec, Planner};

pub const EGO_ID: &str = "robot";
pub const OTHER_ID: &str = "human";

/// Half the separation of the two start positions (m).
const HALF_GAP: f64 = 10.0;

pub fn scenario_names() -> &'static [&'static str] {
    &["s1", "s2", "s3", "s4", "cross90"]
}

fn agent(id: &str, start: Vec2, goal: Vec2, radius: f64, planner: Planner) -> AgentSpec {
    AgentSpec {
        id: id.into(),
        start,
        goal,
        desired_speed: 1.0,
        radius,
        planner,
    }
}

/// Agent specs for a named scenario.
///
/// The frontal scenarios place the robot and the human 20 m apart on the x
/// axis, centred on the origin, each heading for the other's start. They only
/// differ in which agents are compliant (social force) and which walk blindly.
/// `cross90` sends two compliant agents on perpendicular courses through the
/// origin.
pub fn scenario(name: &str, radius: f64) -> Result<Vec<AgentSpec>> {
    use Planner::{ConstantVelocity as Blind, SocialForce as Compliant};
    let west = Vec2::new(-HALF_GAP, 0.0);
    let east = Vec2::new(HALF_GAP, 0.0);
    let frontal = |robot: Planner, human: Planner| {
        vec![
            agent(EGO_ID, west, east, radius, robot),
            agent(OTHER_ID, east, west, radius, human),
        ]
    };
    Ok(match name {
        "s1" => frontal(Blind, Blind),
        "s2" => frontal(Blind, Compliant),
        "s3" => frontal(Compliant, Blind),
        "s4" => frontal(Compliant, Compliant),
        "cross90" => vec![
            agent(EGO_ID, west, east, radius, Compliant),
            agent(
                OTHER_ID,
                Vec2::new(0.0, -HALF_GAP),
                Vec2::new(0.0, HALF_GAP),
                radius,
                Compliant,
            ),
        ],
        other => return Err(Error::UnknownScenario(other.to_owned())),
    })
}
