use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use srn_bench::harness::{self, BenchConfig, TableRow};
use srn_bench::{AgentId, Error, Result};

#[derive(Parser, Debug)]
#[command(name = "srn-bench", version)]
#[command(about = "Social navigation benchmark: simulate scenarios and evaluate interaction metrics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simulate a catalog scenario and write its trajectory CSV.
    Simulate {
        /// One of s1, s2, s3, s4, cross90.
        #[arg(long)]
        scenario: String,
        /// Time step in seconds (overrides the config file).
        #[arg(long)]
        dt: Option<f64>,
        /// Agent body radius in meters.
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long, value_name = "FILE")]
        config: Option<PathBuf>,
        /// Output CSV; standard output if omitted.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Evaluate a trajectory CSV and write a JSON report.
    Evaluate {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Agent whose responsibility is reported as the ego's.
        #[arg(long)]
        ego: String,
        #[arg(long, value_name = "FILE")]
        config: Option<PathBuf>,
        /// Report path; standard output if omitted.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Also write the step-wise conflict series of the ego pair.
        #[arg(long, value_name = "FILE")]
        series: Option<PathBuf>,
        /// Partner agent for --series; defaults to the first non-ego agent.
        #[arg(long)]
        other: Option<String>,
    },
    /// Run s1 to s4 and print the summary table.
    Table {
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long, value_name = "FILE")]
        config: Option<PathBuf>,
        /// Print the rows as JSON instead of a text table.
        #[arg(long)]
        json: bool,
    },
}

fn load_config(path: Option<&Path>) -> Result<BenchConfig> {
    match path {
        Some(p) => BenchConfig::load(p),
        None => Ok(BenchConfig::default()),
    }
}

fn apply_overrides(cfg: &mut BenchConfig, dt: Option<f64>, radius: Option<f64>) -> Result<()> {
    if let Some(dt) = dt {
        cfg.sim.dt = dt;
        cfg.metrics.dt_default = dt;
    }
    if let Some(r) = radius {
        cfg.metrics.agent_radius_default = r;
    }
    cfg.validate()
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| Error::Io {
            path: p.to_owned(),
            source: e,
        })?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_owned(), |x| format!("{x:.2}"))
}

fn print_table(rows: &[TableRow]) {
    println!(
        "{:<9}{:>7}{:>8}{:>8}{:>8}{:>8}{:>8}{:>7}{:>7}{:>8}{:>6}{:>10}  R (robot, human)",
        "scenario", "v_avg", "a_avg", "a_max", "j_avg", "j_max", "cd_avg", "svr", "ci", "ttc_min", "ppd", "intensity"
    );
    for row in rows {
        let (k, p) = (&row.robot, &row.pair);
        println!(
            "{:<9}{:>7.2}{:>8.2}{:>8.2}{:>8.2}{:>8.2}{:>8}{:>7.2}{:>7.2}{:>8}{:>6.1}{:>10.2}  ({:.2}, {:.2})",
            row.scenario,
            k.v_avg,
            k.a_avg,
            k.a_max,
            k.j_avg,
            k.j_max,
            fmt_opt(p.cd_avg),
            p.svr,
            p.collision_index,
            fmt_opt(p.min_ttc),
            p.ppd,
            p.intensity,
            p.responsibility.0,
            p.responsibility.1,
        );
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate {
            scenario,
            dt,
            radius,
            config,
            out,
        } => {
            let mut cfg = load_config(config.as_deref())?;
            apply_overrides(&mut cfg, dt, radius)?;
            let rec = harness::simulate(&scenario, cfg.metrics.agent_radius_default, &cfg)?;
            if rec.truncated {
                log::warn!("scenario `{scenario}` hit max_duration before all agents arrived");
            }
            let mut w = output(out.as_deref())?;
            harness::write_recording(&rec, &mut w)?;
            w.flush().map_err(|e| Error::Io {
                path: out.unwrap_or_default(),
                source: e,
            })?;
        }
        Command::Evaluate {
            input,
            ego,
            config,
            out,
            series,
            other,
        } => {
            let cfg = load_config(config.as_deref())?;
            let rec = harness::load_recording(&input, &cfg.metrics)?;
            let ego = AgentId::new(ego);
            let report = harness::evaluate(&rec, &ego, &cfg)?;
            let mut w = output(out.as_deref())?;
            writeln!(w, "{}", report.to_json()?)
                .and_then(|_| w.flush())
                .map_err(|e| Error::Io {
                    path: out.clone().unwrap_or_default(),
                    source: e,
                })?;
            if let Some(path) = series {
                let partner = match other {
                    Some(id) => AgentId::new(id),
                    None => rec
                        .trajectories()
                        .iter()
                        .map(|t| t.agent_id())
                        .find(|id| **id != ego)
                        .cloned()
                        .ok_or(Error::TooFewAgents { need: 2, got: 1 })?,
                };
                let file = File::create(&path).map_err(|e| Error::Io {
                    path: path.clone(),
                    source: e,
                })?;
                harness::export_series(&rec, (&ego, &partner), &cfg, BufWriter::new(file))?;
            }
        }
        Command::Table {
            dt,
            radius,
            config,
            json,
        } => {
            let mut cfg = load_config(config.as_deref())?;
            apply_overrides(&mut cfg, dt, radius)?;
            let rows = harness::run_table(cfg.metrics.agent_radius_default, &cfg)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&rows).map_err(Error::from)?);
            } else {
                print_table(&rows);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
