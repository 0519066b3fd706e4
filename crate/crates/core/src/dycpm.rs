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

//! Snapshot-based dynamic CPM: static CPM on every snapshot, with
//! communities of consecutive snapshots matched through the CPM
//! communities of their joint (union) graph.

use std::cmp::Ordering;
use std::path::Path;

use crate::cover::Cover;
use crate::cpm::{cpm_communities, CpmCommunity};
use crate::error::DataError;
use crate::event::Event;
use crate::graph::{DynamicGraph, NodeId, NodeSet, Timestamp};

/// Graph snapshots with strictly increasing timestamps.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SnapshotSeries {
    snapshots: Vec<(Timestamp, DynamicGraph)>,
}

impl SnapshotSeries {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, t: Timestamp, g: DynamicGraph) -> Result<(), DataError> {
        if let Some((last, _)) = self.snapshots.last() {
            if t <= *last {
                return Err(DataError::InvalidParameter(format!(
                    "snapshot at t={t} does not follow t={last}"
                )));
            }
        }
        self.snapshots.push((t, g));
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Timestamp, DynamicGraph)> {
        self.snapshots.iter()
    }

    pub fn get(&self, i: usize) -> Option<&(Timestamp, DynamicGraph)> {
        self.snapshots.get(i)
    }

    /// Loads a directory of edge-list files whose stems are timestamps
    /// (`12.txt`, `13.edges`, ...). Other files are ignored.
    pub fn read_dir(dir: &Path) -> Result<SnapshotSeries, DataError> {
        let entries = std::fs::read_dir(dir).map_err(|e| DataError::io(dir.display(), e))?;
        let mut files = Vec::new();
        for entry in entries {
            let path = entry.map_err(|e| DataError::io(dir.display(), e))?.path();
            if !path.is_file() {
                continue;
            }
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("");
            if let Ok(t) = stem.parse::<u64>() {
                files.push((Timestamp(t), path));
            }
        }
        files.sort();
        let mut series = SnapshotSeries::new();
        for (t, path) in files {
            series.push(t, read_edge_list(&path)?)?;
        }
        Ok(series)
    }

    /// Cuts an event stream into snapshots: the graph after every event
    /// with timestamp at most `t`, for each `t` in `times` (every distinct
    /// timestamp when `times` is empty). Events rejected by the graph are
    /// skipped with a warning.
    pub fn from_events(events: &[Event], times: &[Timestamp]) -> Result<SnapshotSeries, DataError> {
        let mut times: Vec<Timestamp> = if times.is_empty() {
            events.iter().map(|e| e.t).collect()
        } else {
            times.to_vec()
        };
        times.sort();
        times.dedup();
        let mut g = DynamicGraph::new();
        let mut series = SnapshotSeries::new();
        let mut rest = events;
        for t in times {
            let cut = rest.partition_point(|e| e.t <= t);
            for ev in &rest[..cut] {
                if let Err(e) = g.apply(ev) {
                    if !e.is_rejection() {
                        return Err(e.into());
                    }
                    log::warn!("skipping {ev}: {e}");
                }
            }
            rest = &rest[cut..];
            series.push(t, g.clone())?;
        }
        Ok(series)
    }

    /// Event stream whose replay passes through every snapshot's edge set.
    /// Within a timestamp, removed edges come first, then new nodes, then
    /// new edges. Nodes are added on first appearance and never removed.
    pub fn to_events(&self) -> Vec<Event> {
        let mut out = Vec::new();
        let empty = DynamicGraph::new();
        let mut prev = &empty;
        let mut seen = NodeSet::new();
        for (t, g) in &self.snapshots {
            for (u, v) in prev.edges().filter(|&(u, v)| !g.has_edge(u, v)) {
                out.push(Event::remove_edge(t.0, u.0, v.0));
            }
            for n in g.nodes() {
                if seen.insert(n) {
                    out.push(Event::add_node(t.0, n.0));
                }
            }
            for (u, v) in g.edges().filter(|&(u, v)| !prev.has_edge(u, v)) {
                out.push(Event::add_edge(t.0, u.0, v.0));
            }
            prev = g;
        }
        out
    }

    /// Writes one `<t>.edges` file per snapshot.
    pub fn write_dir(&self, dir: &Path) -> Result<(), DataError> {
        std::fs::create_dir_all(dir).map_err(|e| DataError::io(dir.display(), e))?;
        for (t, g) in &self.snapshots {
            write_edge_list(&dir.join(format!("{t}.edges")), g)?;
        }
        Ok(())
    }
}

/// Reads a `u v` per line edge list; `#` lines and blank lines are skipped,
/// extra columns (weights) are ignored.
pub fn read_edge_list(path: &Path) -> Result<DynamicGraph, DataError> {
    let text = std::fs::read_to_string(path).map_err(|e| DataError::io(path.display(), e))?;
    parse_edge_list(&text, &path.display().to_string())
}

pub fn parse_edge_list(text: &str, source: &str) -> Result<DynamicGraph, DataError> {
    let mut edges = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let mut next = || -> Result<NodeId, DataError> {
            let tok = toks
                .next()
                .ok_or_else(|| DataError::format(source, idx + 1, "expected `u v`"))?;
            tok.parse::<u64>()
                .map(NodeId)
                .map_err(|_| DataError::format(source, idx + 1, format!("invalid node id {tok:?}")))
        };
        let (u, v) = (next()?, next()?);
        if u == v {
            return Err(DataError::format(source, idx + 1, format!("self-loop on node {u}")));
        }
        edges.push((u, v));
    }
    Ok(DynamicGraph::from_edges(edges)?)
}

pub fn write_edge_list(path: &Path, g: &DynamicGraph) -> Result<(), DataError> {
    let mut out = String::new();
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    std::fs::write(path, out).map_err(|e| DataError::io(path.display(), e))
}

/// A snapshot community with the identity of its chain across snapshots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchedCommunity {
    pub snapshot: usize,
    pub members: NodeSet,
    pub chain: u64,
}

/// Relative overlap `|a ∩ b| / (|a| + |b|)` as an exact fraction.
fn relative_overlap(a: &NodeSet, b: &NodeSet) -> (u64, u64) {
    (a.intersection(b).count() as u64, (a.len() + b.len()) as u64)
}

/// Descending relative overlap, then smaller combined size, then
/// lexicographically smaller member sets.
pub(crate) fn pair_order(prev: &[NodeSet], next: &[NodeSet], x: (usize, usize), y: (usize, usize)) -> Ordering {
    let (xn, xd) = relative_overlap(&prev[x.0], &next[x.1]);
    let (yn, yd) = relative_overlap(&prev[y.0], &next[y.1]);
    (yn * xd)
        .cmp(&(xn * yd))
        .then(xd.cmp(&yd))
        .then_with(|| prev[x.0].cmp(&prev[y.0]))
        .then_with(|| next[x.1].cmp(&next[y.1]))
}

fn joint_home(c: &CpmCommunity, joint: &[CpmCommunity]) -> Option<usize> {
    let probe = c.cliques.first()?;
    joint
        .iter()
        .position(|j| j.cliques.iter().any(|jc| probe.is_subset(jc)))
}

/// Matches communities of consecutive snapshots. Returns `(prev, next)`
/// index pairs.
///
/// Every community of either snapshot lies in exactly one joint community.
/// A joint community holding one community from each side matches them;
/// with more, pairs with positive overlap are taken greedily in
/// [`pair_order`] order, each community matched at most once.
pub fn match_pair(prev: &[CpmCommunity], next: &[CpmCommunity], joint: &[CpmCommunity]) -> Vec<(usize, usize)> {
    let prev_home: Vec<Option<usize>> = prev.iter().map(|c| joint_home(c, joint)).collect();
    let next_home: Vec<Option<usize>> = next.iter().map(|c| joint_home(c, joint)).collect();
    let prev_sets: Vec<NodeSet> = prev.iter().map(|c| c.members.clone()).collect();
    let next_sets: Vec<NodeSet> = next.iter().map(|c| c.members.clone()).collect();
    let mut out = Vec::new();
    for j in 0..joint.len() {
        let ps: Vec<usize> = (0..prev.len()).filter(|&i| prev_home[i] == Some(j)).collect();
        let ns: Vec<usize> = (0..next.len()).filter(|&i| next_home[i] == Some(j)).collect();
        if ps.is_empty() || ns.is_empty() {
            continue;
        }
        if ps.len() == 1 && ns.len() == 1 {
            out.push((ps[0], ns[0]));
            continue;
        }
        let mut pairs: Vec<(usize, usize)> = ps
            .iter()
            .flat_map(|&a| ns.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| !prev_sets[a].is_disjoint(&next_sets[b]))
            .collect();
        pairs.sort_by(|&x, &y| pair_order(&prev_sets, &next_sets, x, y));
        let mut used_prev = vec![false; prev.len()];
        let mut used_next = vec![false; next.len()];
        for (a, b) in pairs {
            if !used_prev[a] && !used_next[b] {
                used_prev[a] = true;
                used_next[b] = true;
                out.push((a, b));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Per-snapshot CPM communities with chain identities.
#[derive(Debug, Clone, Default)]
pub struct DycpmResult {
    pub matched: Vec<MatchedCommunity>,
    pub snapshot_times: Vec<Timestamp>,
}

impl DycpmResult {
    /// Cover of snapshot `i`, keyed by chain id.
    pub fn cover_at(&self, i: usize) -> Cover {
        Cover::from_groups(
            self.matched
                .iter()
                .filter(|m| m.snapshot == i)
                .map(|m| (crate::community::CommunityId(m.chain), m.members.clone())),
        )
    }

    pub fn chain_count(&self) -> usize {
        self.matched.iter().map(|m| m.chain).collect::<std::collections::BTreeSet<_>>().len()
    }
}

/// Incremental driver: feed snapshots one at a time.
#[derive(Debug, Clone)]
pub struct DycpmTracker {
    k: usize,
    prev: Option<(DynamicGraph, Vec<CpmCommunity>, Vec<u64>)>,
    next_chain: u64,
    snapshot: usize,
}

impl DycpmTracker {
    pub fn new(k: usize) -> Self {
        DycpmTracker {
            k,
            prev: None,
            next_chain: 0,
            snapshot: 0,
        }
    }

    /// Processes the next snapshot and returns its matched communities.
    pub fn step(&mut self, g: &DynamicGraph) -> Vec<MatchedCommunity> {
        let comms = cpm_communities(g, self.k);
        let mut chains: Vec<Option<u64>> = vec![None; comms.len()];
        if let Some((pg, pcomms, pchains)) = &self.prev {
            let joint = cpm_communities(&pg.union(g), self.k);
            for (a, b) in match_pair(pcomms, &comms, &joint) {
                chains[b] = Some(pchains[a]);
            }
        }
        let chains: Vec<u64> = chains
            .into_iter()
            .map(|c| {
                c.unwrap_or_else(|| {
                    self.next_chain += 1;
                    self.next_chain - 1
                })
            })
            .collect();
        let out = comms
            .iter()
            .zip(&chains)
            .map(|(c, &chain)| MatchedCommunity {
                snapshot: self.snapshot,
                members: c.members.clone(),
                chain,
            })
            .collect();
        self.prev = Some((g.clone(), comms, chains));
        self.snapshot += 1;
        out
    }
}

/// Runs static CPM on every snapshot and chains communities across
/// consecutive snapshots.
pub fn match_snapshots(series: &SnapshotSeries, k: usize) -> DycpmResult {
    let mut tracker = DycpmTracker::new(k);
    let mut result = DycpmResult::default();
    for (t, g) in series.iter() {
        result.matched.extend(tracker.step(g));
        result.snapshot_times.push(*t);
    }
    result
}
