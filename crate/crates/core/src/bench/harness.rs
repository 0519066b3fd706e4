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

//! Per-step timing of the three detectors on an event stream.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::generator::{benchmark_stream, BenchmarkConfig};
use super::lfr::{load_lfr, PlantedNetwork};
use crate::dycpm::DycpmTracker;
use crate::engine::{CliqueSize, Ocpm};
use crate::error::{DataError, EngineError};
use crate::event::Event;
use crate::graph::{DynamicGraph, Timestamp};
use crate::label::propagate_labels;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Ocpm,
    Olcpm,
    Dycpm,
}

impl Algo {
    pub const ALL: [Algo; 3] = [Algo::Ocpm, Algo::Olcpm, Algo::Dycpm];

    pub fn as_str(self) -> &'static str {
        match self {
            Algo::Ocpm => "ocpm",
            Algo::Olcpm => "olcpm",
            Algo::Dycpm => "dycpm",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ocpm" => Ok(Algo::Ocpm),
            "olcpm" => Ok(Algo::Olcpm),
            "dycpm" => Ok(Algo::Dycpm),
            other => Err(format!("unknown algorithm {other:?}")),
        }
    }
}

/// Wall-clock time of one step (one timestamp batch, or one snapshot).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepTiming {
    pub step: Timestamp,
    pub millis: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TimingReport {
    pub steps: Vec<StepTiming>,
}

impl TimingReport {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Median step time over steps strictly after `after` (use the initial
    /// load timestamp to leave it out). `None` when no step qualifies.
    pub fn median_after(&self, after: Option<Timestamp>) -> Option<f64> {
        let mut v: Vec<f64> = self
            .steps
            .iter()
            .filter(|s| after.map_or(true, |a| s.step > a))
            .map(|s| s.millis)
            .collect();
        if v.is_empty() {
            return None;
        }
        v.sort_by(f64::total_cmp);
        let m = v.len() / 2;
        Some(if v.len() % 2 == 1 { v[m] } else { (v[m - 1] + v[m]) / 2.0 })
    }

    pub fn total_millis(&self) -> f64 {
        self.steps.iter().map(|s| s.millis).sum()
    }
}

fn batches(events: &[Event]) -> impl Iterator<Item = &[Event]> {
    events.chunk_by(|a, b| a.t == b.t)
}

fn apply_skipping(engine: &mut Ocpm, ev: &Event) -> Result<(), EngineError> {
    match engine.process_event(ev) {
        Err(EngineError::Graph(e)) if e.is_rejection() => Ok(()),
        other => other.map(drop),
    }
}

/// Times `algo` over an already parsed stream, so parsing is never counted.
///
/// OCPM reports one entry per timestamp batch. OLCPM adds the label
/// propagation run at every snapshot time inside its batch. DyCPM applies
/// events untimed and reports the static detection plus matching at every
/// snapshot time. An empty `snapshot_times` means every timestamp.
/// Events rejected by the graph are skipped.
pub fn time_harness(
    events: &[Event],
    k: usize,
    algo: Algo,
    snapshot_times: &[Timestamp],
) -> Result<TimingReport, EngineError> {
    let k = CliqueSize::new(k)?;
    let snaps: BTreeSet<Timestamp> = snapshot_times.iter().copied().collect();
    let is_snapshot = |t: Timestamp| snaps.is_empty() || snaps.contains(&t);
    let mut report = TimingReport::default();
    match algo {
        Algo::Ocpm | Algo::Olcpm => {
            let mut engine = Ocpm::new(k);
            for batch in batches(events) {
                let t = batch[0].t;
                let start = Instant::now();
                for ev in batch {
                    apply_skipping(&mut engine, ev)?;
                }
                if algo == Algo::Olcpm && is_snapshot(t) {
                    std::hint::black_box(propagate_labels(engine.store(), engine.graph(), None));
                }
                report.steps.push(StepTiming {
                    step: t,
                    millis: start.elapsed().as_secs_f64() * 1e3,
                });
            }
        }
        Algo::Dycpm => {
            let mut g = DynamicGraph::new();
            let mut tracker = DycpmTracker::new(k.get());
            for batch in batches(events) {
                let t = batch[0].t;
                for ev in batch {
                    match g.apply(ev) {
                        Err(e) if !e.is_rejection() => return Err(e.into()),
                        _ => {}
                    }
                }
                if is_snapshot(t) {
                    let start = Instant::now();
                    std::hint::black_box(tracker.step(&g));
                    report.steps.push(StepTiming {
                        step: t,
                        millis: start.elapsed().as_secs_f64() * 1e3,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// One line of the timing table.
#[derive(Debug, Clone, PartialEq)]
pub struct TimingRow {
    pub size: usize,
    pub a: usize,
    pub algo: Algo,
    pub step: Timestamp,
    pub millis: f64,
}

pub const TIMING_HEADER: &str = "size,a,algo,step,millis";

impl fmt::Display for TimingRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{},{:.6}", self.size, self.a, self.algo, self.step, self.millis)
    }
}

pub fn timing_csv(rows: &[TimingRow]) -> String {
    let mut s = String::from(TIMING_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&r.to_string());
        s.push('\n');
    }
    s
}

/// Median per (size, a, algo) divided by the median of the same (a, algo)
/// at the baseline size.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedTiming {
    pub size: usize,
    pub a: usize,
    pub algo: Algo,
    pub median_millis: f64,
    pub ratio: f64,
}

pub const SUMMARY_HEADER: &str = "size,a,algo,median_millis,ratio";

impl fmt::Display for NormalizedTiming {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{:.6},{:.4}",
            self.size, self.a, self.algo, self.median_millis, self.ratio
        )
    }
}

/// Summarizes rows, leaving out the initial-load step `t=0`.
pub fn normalize(rows: &[TimingRow], baseline_size: usize) -> Vec<NormalizedTiming> {
    let keys: BTreeSet<(usize, usize, Algo)> = rows.iter().map(|r| (r.size, r.a, r.algo)).collect();
    let median = |size: usize, a: usize, algo: Algo| {
        let report = TimingReport {
            steps: rows
                .iter()
                .filter(|r| r.size == size && r.a == a && r.algo == algo)
                .map(|r| StepTiming {
                    step: r.step,
                    millis: r.millis,
                })
                .collect(),
        };
        report.median_after(Some(Timestamp(0)))
    };
    let mut out = Vec::new();
    for (size, a, algo) in keys {
        let Some(m) = median(size, a, algo) else { continue };
        let base = median(baseline_size, a, algo).unwrap_or(f64::NAN);
        out.push(NormalizedTiming {
            size,
            a,
            algo,
            median_millis: m,
            ratio: m / base,
        });
    }
    out
}

/// Grid of benchmark cells: every size crossed with every `a`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchGrid {
    pub k: usize,
    pub sizes: Vec<usize>,
    pub a_values: Vec<usize>,
    #[serde(default = "all_algos")]
    pub algos: Vec<Algo>,
    /// Size used as the denominator of the summary ratios; defaults to the
    /// smallest size.
    #[serde(default)]
    pub baseline_size: Option<usize>,
    /// Optional externally generated LFR files, one pair per size, with
    /// `{n}` replaced by the size.
    #[serde(default)]
    pub network_file: Option<String>,
    #[serde(default)]
    pub community_file: Option<String>,
    pub base: BenchmarkConfig,
}

fn all_algos() -> Vec<Algo> {
    Algo::ALL.to_vec()
}

impl BenchGrid {
    pub fn validate(&self) -> Result<(), DataError> {
        CliqueSize::new(self.k)?;
        if self.sizes.is_empty() || self.a_values.is_empty() || self.algos.is_empty() {
            return Err(DataError::InvalidParameter("sizes, a_values and algos must be nonempty".into()));
        }
        if self.network_file.is_some() != self.community_file.is_some() {
            return Err(DataError::InvalidParameter(
                "network_file and community_file must be given together".into(),
            ));
        }
        for &a in &self.a_values {
            let mut c = self.base.clone();
            c.a = a;
            c.validate()?;
        }
        Ok(())
    }

    pub fn baseline(&self) -> usize {
        self.baseline_size
            .unwrap_or_else(|| *self.sizes.iter().min().expect("validated"))
    }

    fn network(&self, n: usize) -> Result<PlantedNetwork, DataError> {
        match (&self.network_file, &self.community_file) {
            (Some(nf), Some(cf)) => {
                let nf = nf.replace("{n}", &n.to_string());
                let cf = cf.replace("{n}", &n.to_string());
                load_lfr(nf.as_ref(), cf.as_ref())
            }
            _ => {
                let mut c = self.base.clone();
                c.n = n;
                c.planted()
            }
        }
    }

    /// Runs every cell sequentially and returns one row per dynamic step;
    /// the initial load at `t=0` is not reported.
    pub fn run(&self) -> Result<Vec<TimingRow>, DataError> {
        self.validate()?;
        let mut rows = Vec::new();
        for &size in &self.sizes {
            let net = self.network(size)?;
            for &a in &self.a_values {
                let events = benchmark_stream(&net, a, self.base.steps, self.base.seed)?;
                for &algo in &self.algos {
                    log::info!("timing {algo} n={size} a={a}");
                    let report = time_harness(&events, self.k, algo, &[])?;
                    rows.extend(report.steps.into_iter().filter(|s| s.step > Timestamp(0)).map(|s| TimingRow {
                        size,
                        a,
                        algo,
                        step: s.step,
                        millis: s.millis,
                    }));
                }
            }
        }
        Ok(rows)
    }
}
