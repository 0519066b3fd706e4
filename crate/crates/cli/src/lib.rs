// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! The `olcpm` command-line tool.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 on data errors (I/O,
//! parsing, invalid parameters).

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use olcpm_core::bench::harness::{normalize, timing_csv, BenchGrid, SUMMARY_HEADER};
use olcpm_core::bench::nmi_covers;
use olcpm_core::{
    propagate_labels, read_event_file, CliqueSize, Cover, DataError, DycpmTracker, EngineError, Event, Ocpm,
    SnapshotSeries, Timestamp,
};

#[derive(Debug, Parser)]
#[command(name = "olcpm", version, about = "Online clique percolation on dynamic graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Detect communities on an event stream and write covers at snapshot times.
    Run(RunArgs),
    /// Print the overlapping NMI between two cover files.
    Evaluate(EvaluateArgs),
    /// Time the detectors over a benchmark grid described by a TOML file.
    Bench(BenchArgs),
    /// Convert between a snapshot directory and an event file.
    Convert(ConvertArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Event file, or a directory of `<t>.edges` snapshot files.
    #[arg(long)]
    pub input: PathBuf,
    /// Clique size (at least 3).
    #[arg(long)]
    pub k: usize,
    /// Also write label-propagated covers (olcpm_t<T>.cover).
    #[arg(long)]
    pub post: bool,
    /// Snapshot time; repeatable. A snapshot at T is taken after every event
    /// with timestamp <= T. Default: one snapshot after the last event
    /// (every snapshot file when the input is a directory).
    #[arg(long = "snapshot-at", value_name = "T")]
    pub snapshot_at: Vec<u64>,
    /// Take a snapshot at every distinct timestamp of the input.
    #[arg(long, conflicts_with = "snapshot_at")]
    pub snapshot_all: bool,
    /// Seed recorded in the log header. Detection itself is deterministic.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Leave peripheral nodes farther than this from every community unassigned.
    #[arg(long)]
    pub max_label_distance: Option<u32>,
    /// Create missing endpoints when an edge is added.
    #[arg(long)]
    pub implicit_nodes: bool,
    /// Also run the snapshot baseline and write dycpm_t<T>.cover.
    #[arg(long)]
    pub dycpm: bool,
    /// Ground-truth cover; writes per-snapshot NMI (nmi.csv) and averages
    /// (nmi_average.csv).
    #[arg(long)]
    pub truth: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Detected cover file.
    pub detected: PathBuf,
    /// Reference cover file.
    pub truth: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// TOML grid description.
    pub config: PathBuf,
    /// Output directory for timings.csv and summary.csv; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Overrides the seed of the configuration.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    /// Snapshot directory or event file.
    #[arg(long)]
    pub input: PathBuf,
    /// Event file (from a directory) or snapshot directory (from an event file).
    #[arg(long)]
    pub out: PathBuf,
    /// Cut times when converting an event file; default every timestamp.
    #[arg(long = "snapshot-at", value_name = "T")]
    pub snapshot_at: Vec<u64>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Data(#[from] DataError),
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        CliError::Data(e.into())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Data(DataError::Io {
        path: path.display().to_string(),
        source: e,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| io_err(path, e))
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn dispatch(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Run(a) => cmd_run(&a),
        Command::Evaluate(a) => {
            println!("{}", cmd_evaluate(&a.detected, &a.truth)?);
            Ok(())
        }
        Command::Bench(a) => cmd_bench(&a),
        Command::Convert(a) => cmd_convert(&a),
    }
}

/// NMI between two cover files, formatted with six decimals.
pub fn cmd_evaluate(detected: &Path, truth: &Path) -> Result<String, CliError> {
    let x = Cover::read(detected)?;
    let y = Cover::read(truth)?;
    Ok(format!("{:.6}", nmi_covers(&x, &y)))
}

fn load_input(path: &Path) -> Result<(Vec<Event>, Vec<Timestamp>), CliError> {
    if path.is_dir() {
        let series = SnapshotSeries::read_dir(path)?;
        let times = series.iter().map(|(t, _)| *t).collect();
        Ok((series.to_events(), times))
    } else {
        Ok((read_event_file(path)?, Vec::new()))
    }
}

struct NmiRow {
    t: Timestamp,
    values: Vec<f64>,
}

pub fn cmd_run(a: &RunArgs) -> Result<(), CliError> {
    let k = CliqueSize::new(a.k).map_err(|e| CliError::Usage(e.to_string()))?;
    let truth = a.truth.as_deref().map(Cover::read).transpose()?;
    let (events, dir_times) = load_input(&a.input)?;
    let snapshots: Vec<Timestamp> = if a.snapshot_all {
        events.iter().map(|e| e.t).collect::<BTreeSet<_>>().into_iter().collect()
    } else if !a.snapshot_at.is_empty() {
        a.snapshot_at.iter().map(|&t| Timestamp(t)).collect::<BTreeSet<_>>().into_iter().collect()
    } else if !dir_times.is_empty() {
        dir_times
    } else {
        vec![events.last().map_or(Timestamp(0), |e| e.t)]
    };
    fs::create_dir_all(&a.out).map_err(|e| io_err(&a.out, e))?;
    log::info!("run k={} seed={} events={} snapshots={}", a.k, a.seed, events.len(), snapshots.len());

    let mut engine = Ocpm::new(k).with_implicit_nodes(a.implicit_nodes);
    let mut tracker = a.dycpm.then(|| DycpmTracker::new(a.k));
    let mut log_text = String::new();
    let mut nmi_rows = Vec::new();
    let mut pending = snapshots.iter().peekable();
    let mut take_snapshot = |engine: &Ocpm, t: Timestamp| -> Result<(), CliError> {
        let core = engine.cover();
        write_file(&a.out.join(format!("ocpm_t{t}.cover")), &core.to_text())?;
        let mut row = NmiRow { t, values: Vec::new() };
        if let Some(tr) = tracker.as_mut() {
            let matched = tr.step(engine.graph());
            let cover = Cover::from_groups(
                matched
                    .into_iter()
                    .map(|m| (olcpm_core::CommunityId(m.chain), m.members)),
            );
            write_file(&a.out.join(format!("dycpm_t{t}.cover")), &cover.to_text())?;
            if let Some(tr) = &truth {
                row.values.push(nmi_covers(&cover, tr));
            }
        }
        if let Some(tr) = &truth {
            row.values.push(nmi_covers(&core, tr));
        }
        if a.post {
            let full = propagate_labels(engine.store(), engine.graph(), a.max_label_distance);
            write_file(&a.out.join(format!("olcpm_t{t}.cover")), &full.to_text())?;
            if let Some(tr) = &truth {
                row.values.push(nmi_covers(&full, tr));
            }
        }
        nmi_rows.push(row);
        Ok(())
    };

    for ev in &events {
        while let Some(&&t) = pending.peek() {
            if t >= ev.t {
                break;
            }
            take_snapshot(&engine, t)?;
            pending.next();
        }
        match engine.process_event(ev) {
            Ok(lifecycle) => {
                for l in lifecycle {
                    let _ = writeln!(log_text, "{l}");
                }
            }
            Err(EngineError::Graph(e)) if e.is_rejection() => log::warn!("skipping {ev}: {e}"),
            Err(e) => return Err(e.into()),
        }
    }
    for &t in pending {
        take_snapshot(&engine, t)?;
    }
    write_file(&a.out.join("lifecycle.log"), &log_text)?;

    if truth.is_some() {
        let mut columns = Vec::new();
        if a.dycpm {
            columns.push(format!("dycpm_k{}", a.k));
        }
        columns.push(format!("ocpm_k{}", a.k));
        if a.post {
            columns.push(format!("olcpm_k{}", a.k));
        }
        let mut csv = format!("snapshot,t,{}\n", columns.join(","));
        for (i, r) in nmi_rows.iter().enumerate() {
            let vals: Vec<String> = r.values.iter().map(|v| format!("{v:.6}")).collect();
            let _ = writeln!(csv, "{i},{},{}", r.t, vals.join(","));
        }
        write_file(&a.out.join("nmi.csv"), &csv)?;
        let mut avg = String::from("algorithm,average_nmi\n");
        for (c, name) in columns.iter().enumerate() {
            let mean = if nmi_rows.is_empty() {
                0.0
            } else {
                nmi_rows.iter().map(|r| r.values[c]).sum::<f64>() / nmi_rows.len() as f64
            };
            let _ = writeln!(avg, "{name},{mean:.6}");
        }
        write_file(&a.out.join("nmi_average.csv"), &avg)?;
    }
    Ok(())
}

pub fn read_grid(path: &Path) -> Result<BenchGrid, CliError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    toml::from_str(&text).map_err(|e| {
        CliError::Data(DataError::Format {
            path: path.display().to_string(),
            line: 0,
            reason: e.to_string(),
        })
    })
}

pub fn cmd_bench(a: &BenchArgs) -> Result<(), CliError> {
    let mut grid = read_grid(&a.config)?;
    if let Some(s) = a.seed {
        grid.base.seed = s;
    }
    let rows = grid.run()?;
    let mut summary = String::from(SUMMARY_HEADER);
    summary.push('\n');
    for s in normalize(&rows, grid.baseline()) {
        let _ = writeln!(summary, "{s}");
    }
    match &a.out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
            write_file(&dir.join("timings.csv"), &timing_csv(&rows))?;
            write_file(&dir.join("summary.csv"), &summary)?;
        }
        None => {
            print!("{}", timing_csv(&rows));
            println!();
            print!("{summary}");
        }
    }
    Ok(())
}

pub fn cmd_convert(a: &ConvertArgs) -> Result<(), CliError> {
    if a.input.is_dir() {
        if !a.snapshot_at.is_empty() {
            return Err(CliError::Usage("--snapshot-at applies only to event-file input".into()));
        }
        let series = SnapshotSeries::read_dir(&a.input)?;
        olcpm_core::event::write_event_file(&a.out, &series.to_events())?;
    } else {
        let events = read_event_file(&a.input)?;
        let times: Vec<Timestamp> = a.snapshot_at.iter().map(|&t| Timestamp(t)).collect();
        SnapshotSeries::from_events(&events, &times)?.write_dir(&a.out)?;
    }
    Ok(())
}
