use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use care_core::{
    care_step, CareConfig, DecisionLog, DepthFrame, Observation, Platform, PointCloud, Trajectory,
};
use care_sim::scenarios::{self, DynamicScenario};
use care_sim::{
    emit_plot_data, run_dynamic, run_exploration, run_goal_suite, ExperimentOutcome,
    ExperimentSpec, Task, WorldModel,
};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "care", version, about = "Run collision-avoidance experiments in the simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Wander among boxes until the first collision.
    Explore(RunArgs),
    /// Visit each world's goals in order.
    Goal(RunArgs),
    /// Drive past a scripted pedestrian.
    Dynamic {
        #[command(flatten)]
        run: RunArgs,
        /// Built-in scenario, used when no --world is given.
        #[arg(long, default_value = "front_approach")]
        scenario: DynamicScenario,
    },
    /// Run the avoidance step over recorded frames and print the decision log.
    Replay(ReplayArgs),
}

#[derive(Args)]
struct RunArgs {
    /// World file (TOML). Repeat for goal suites. Defaults to the built-in worlds.
    #[arg(long)]
    world: Vec<PathBuf>,
    #[arg(long, default_value = "locobot")]
    platform: Platform,
    /// Run only the avoidance arm.
    #[arg(long, conflicts_with = "no_care")]
    care: bool,
    /// Run only the baseline arm.
    #[arg(long)]
    no_care: bool,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// `key = value` overrides on top of the platform preset.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Directory for reports, plot data and logs.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write per-trial trajectory and decision logs to --out.
    #[arg(long, requires = "out")]
    logs: bool,
    /// Uniform depth noise half-width in meters.
    #[arg(long, default_value_t = 0.0)]
    depth_jitter: f64,
}

#[derive(Args)]
struct ReplayArgs {
    /// Directory of `.df` depth frames or `.pc` point clouds, replayed in name order.
    #[arg(long)]
    frames: PathBuf,
    /// Trajectory file (`TJ1`) applied to every frame.
    #[arg(long)]
    trajectory: PathBuf,
    #[arg(long, default_value = "locobot")]
    platform: Platform,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Frame period in seconds.
    #[arg(long, default_value_t = 0.1)]
    dt: f64,
    /// Output file for the log; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_config(platform: Platform, path: Option<&Path>) -> Result<CareConfig> {
    let base = CareConfig::for_platform(platform);
    match path {
        Some(p) => base
            .apply_overrides(&read(p)?)
            .with_context(|| format!("bad config {}", p.display())),
        None => Ok(base),
    }
}

fn load_worlds(paths: &[PathBuf]) -> Result<Vec<WorldModel>> {
    paths
        .iter()
        .map(|p| WorldModel::load(p).with_context(|| format!("bad world {}", p.display())))
        .collect()
}

fn arms(run: &RunArgs) -> Vec<bool> {
    match (run.care, run.no_care) {
        (true, _) => vec![true],
        (_, true) => vec![false],
        _ => vec![false, true],
    }
}

fn run(task: Task, run: &RunArgs, worlds: Vec<WorldModel>) -> Result<()> {
    let cfg = load_config(run.platform, run.config.as_deref())?;
    if let Some(out) = &run.out {
        fs::create_dir_all(out).with_context(|| format!("cannot create {}", out.display()))?;
    }
    for care in arms(run) {
        let mut spec = ExperimentSpec::new(task, run.platform, care);
        spec.seed = run.seed;
        spec.care_config = Some(cfg.clone());
        spec.record_logs = run.logs;
        spec.depth_jitter = run.depth_jitter;
        if let Some(n) = run.trials {
            spec.trials = n;
        }
        let outcome = match task {
            Task::Exploration => run_exploration(&spec, &worlds[0])?,
            Task::GoalConditioned => run_goal_suite(&spec, &worlds)?,
            Task::DynamicObstacle => run_dynamic(&spec, &worlds[0])?,
        };
        println!("{}", outcome.report);
        if let Some(out) = &run.out {
            write_outputs(out, &outcome)?;
        }
    }
    Ok(())
}

fn write_outputs(dir: &Path, outcome: &ExperimentOutcome) -> Result<()> {
    let stem = outcome.report.label.replace('/', "_");
    let write = |name: String, text: &str| {
        let path = dir.join(name);
        fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))
    };
    write(format!("{stem}.txt"), &outcome.report.to_text())?;
    emit_plot_data(&outcome.report, &dir.join(format!("{stem}.csv")))?;
    for r in &outcome.records {
        let trial = format!("{stem}_{}_{:03}", r.world, r.index);
        if let Some(log) = &r.result.trajectory_log {
            write(format!("{trial}_trajectory.csv"), log)?;
        }
        if let Some(log) = &r.result.decision_log {
            write(format!("{trial}_decisions.csv"), log)?;
        }
    }
    Ok(())
}

fn replay(args: &ReplayArgs) -> Result<()> {
    let cfg = load_config(args.platform, args.config.as_deref())?;
    let traj = Trajectory::parse(&read(&args.trajectory)?)
        .with_context(|| format!("bad trajectory {}", args.trajectory.display()))?;
    let mut files: Vec<PathBuf> = fs::read_dir(&args.frames)
        .with_context(|| format!("cannot list {}", args.frames.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    files.retain(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("df" | "pc")));
    files.sort();
    if files.is_empty() {
        bail!("no .df or .pc files in {}", args.frames.display());
    }

    let mut log = DecisionLog::default();
    for (i, path) in files.iter().enumerate() {
        let text = read(path)?;
        let ctx = || format!("bad frame {}", path.display());
        let decision = if path.extension().is_some_and(|e| e == "df") {
            let frame = DepthFrame::parse(&text, cfg.mount).with_context(ctx)?;
            care_step(Observation::Frame(&frame), &traj, &cfg).with_context(ctx)?
        } else {
            let cloud = PointCloud::parse(&text).with_context(ctx)?;
            care_step(Observation::Cloud(&cloud), &traj, &cfg).with_context(ctx)?
        };
        log.push(i as f64 * args.dt, &decision);
    }
    match &args.out {
        Some(p) => fs::write(p, log.as_str()).with_context(|| format!("cannot write {}", p.display()))?,
        None => print!("{}", log.as_str()),
    }
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Explore(args) => {
            let worlds = if args.world.is_empty() {
                vec![scenarios::exploration_world(scenarios::EXPLORATION_SEED)]
            } else {
                load_worlds(&args.world[..1])?
            };
            run(Task::Exploration, &args, worlds)
        }
        Command::Goal(args) => {
            let worlds = if args.world.is_empty() {
                (0..scenarios::CORRIDOR_INSTANCES).map(scenarios::corridor_instance).collect()
            } else {
                load_worlds(&args.world)?
            };
            run(Task::GoalConditioned, &args, worlds)
        }
        Command::Dynamic { run: args, scenario } => {
            let worlds = if args.world.is_empty() {
                vec![scenarios::dynamic_world(scenario)]
            } else {
                load_worlds(&args.world[..1])?
            };
            run(Task::DynamicObstacle, &args, worlds)
        }
        Command::Replay(args) => replay(&args),
    }
}
