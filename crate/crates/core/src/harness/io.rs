//! Trajectory CSV: header `t,agent_id,x,y,vx,vy`, one row per agent and time
//! step. `vx,vy` may be omitted as a pair, in which case velocities are
//! derived by forward differences. Numbers are written in their shortest
//! round-trip decimal form, so a write/read cycle is bit-exact.

use std::collections::HashMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use log::warn;

use crate::error::{Error, Result};
use crate::model::{resample_velocities, AgentId, AgentSample, MetricsConfig, ScenarioRecording, Trajectory, Vec2};

const HEADER: [&str; 6] = ["t", "agent_id", "x", "y", "vx", "vy"];

pub fn write_recording<W: Write>(recording: &ScenarioRecording, writer: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(writer);
    out.write_record(HEADER)?;
    for k in 0..recording.sample_count() {
        for tr in recording.trajectories() {
            let s = &tr.samples()[k];
            out.write_record([
                s.t.to_string(),
                tr.agent_id().to_string(),
                s.position.x.to_string(),
                s.position.y.to_string(),
                s.velocity.x.to_string(),
                s.velocity.y.to_string(),
            ])?;
        }
    }
    out.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}

pub fn write_recording_file(recording: &ScenarioRecording, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_recording(recording, file)
}

pub fn load_recording(path: &Path, cfg: &MetricsConfig) -> Result<ScenarioRecording> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_recording(file, &name, cfg)
}

struct Columns {
    t: usize,
    agent_id: usize,
    x: usize,
    y: usize,
    velocity: Option<(usize, usize)>,
}

impl Columns {
    fn from_header(header: &csv::StringRecord) -> Result<Self> {
        let find = |name: &str| header.iter().position(|h| h.trim() == name);
        let require = |name: &str| {
            find(name).ok_or_else(|| Error::Parse {
                line: 1,
                message: format!("missing required column `{name}`"),
            })
        };
        let velocity = match (find("vx"), find("vy")) {
            (Some(vx), Some(vy)) => Some((vx, vy)),
            (None, None) => None,
            _ => {
                return Err(Error::Parse {
                    line: 1,
                    message: "columns `vx` and `vy` must appear together".into(),
                })
            }
        };
        for h in header.iter() {
            if !HEADER.contains(&h.trim()) {
                warn!("ignoring unknown column `{}`", h.trim());
            }
        }
        Ok(Columns {
            t: require("t")?,
            agent_id: require("agent_id")?,
            x: require("x")?,
            y: require("y")?,
            velocity,
        })
    }
}

#[derive(Default)]
struct Rows {
    positions: Vec<(f64, Vec2)>,
    velocities: Vec<Vec2>,
}

/// Parses a trajectory CSV into a recording. Agents without velocity columns
/// get the body radius `cfg.agent_radius_default`, like all loaded agents,
/// and a time step taken from their own first two rows.
pub fn parse_recording<R: Read>(reader: R, name: &str, cfg: &MetricsConfig) -> Result<ScenarioRecording> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let columns = Columns::from_header(rdr.headers()?)?;

    let mut order: Vec<String> = Vec::new();
    let mut rows: HashMap<String, Rows> = HashMap::new();
    for record in rdr.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |idx: usize, what: &str| -> Result<&str> {
            record.get(idx).ok_or_else(|| Error::Parse {
                line,
                message: format!("missing field `{what}`"),
            })
        };
        let number = |idx: usize, what: &str| -> Result<f64> {
            let raw = field(idx, what)?;
            let value: f64 = raw.parse().map_err(|_| Error::Parse {
                line,
                message: format!("`{what}` is not a number: {raw:?}"),
            })?;
            if value.is_finite() {
                Ok(value)
            } else {
                Err(Error::Parse {
                    line,
                    message: format!("`{what}` is not finite"),
                })
            }
        };

        let id = field(columns.agent_id, "agent_id")?.to_owned();
        if id.is_empty() {
            return Err(Error::Parse {
                line,
                message: "empty agent_id".into(),
            });
        }
        let t = number(columns.t, "t")?;
        let p = Vec2::new(number(columns.x, "x")?, number(columns.y, "y")?);
        let v = match columns.velocity {
            Some((vx, vy)) => Vec2::new(number(vx, "vx")?, number(vy, "vy")?),
            None => Vec2::ZERO,
        };
        let entry = rows.entry(id.clone()).or_insert_with(|| {
            order.push(id);
            Rows::default()
        });
        entry.positions.push((t, p));
        entry.velocities.push(v);
    }

    let radius = cfg.agent_radius_default;
    let trajectories = order
        .into_iter()
        .map(|id| {
            let r = rows.remove(&id).unwrap_or_default();
            let agent = AgentId::new(id);
            if columns.velocity.is_some() {
                let samples = r
                    .positions
                    .iter()
                    .zip(&r.velocities)
                    .map(|(&(t, p), &v)| AgentSample::new(t, p, v))
                    .collect();
                Trajectory::new(agent, radius, samples)
            } else {
                let dt = match r.positions.as_slice() {
                    [(t0, _), (t1, _), ..] => t1 - t0,
                    _ => {
                        return Err(Error::TooFewSamples {
                            need: 2,
                            got: r.positions.len(),
                        })
                    }
                };
                resample_velocities(agent, radius, &r.positions, dt)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    ScenarioRecording::new(name, trajectories)
}
