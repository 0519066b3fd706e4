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

//! Dynamic benchmark generation by atomic edge swaps inside planted
//! communities, plus a small planted-partition network generator.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::lfr::PlantedNetwork;
use crate::community::CommunityId;
use crate::cover::Cover;
use crate::error::DataError;
use crate::event::Event;
use crate::graph::{DynamicGraph, NodeId, NodeSet, Timestamp};

/// Parameters of one benchmark cell. The LFR-style fields describe the
/// initial network; `a`, `steps` and `seed` drive the dynamic sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchmarkConfig {
    pub n: usize,
    #[serde(default = "defaults::k_avg")]
    pub k_avg: f64,
    #[serde(default = "defaults::maxk")]
    pub maxk: usize,
    #[serde(default = "defaults::mu")]
    pub mu: f64,
    #[serde(default = "defaults::t1")]
    pub t1: f64,
    #[serde(default = "defaults::t2")]
    pub t2: f64,
    #[serde(default = "defaults::minc")]
    pub minc: usize,
    #[serde(default = "defaults::maxc")]
    pub maxc: usize,
    #[serde(default, rename = "On")]
    pub on: usize,
    #[serde(default = "defaults::om", rename = "Om")]
    pub om: usize,
    #[serde(default = "defaults::a")]
    pub a: usize,
    #[serde(default = "defaults::steps")]
    pub steps: usize,
    #[serde(default)]
    pub seed: u64,
}

mod defaults {
    pub fn k_avg() -> f64 {
        7.0
    }
    pub fn maxk() -> usize {
        15
    }
    pub fn mu() -> f64 {
        0.4
    }
    pub fn t1() -> f64 {
        2.0
    }
    pub fn t2() -> f64 {
        1.0
    }
    pub fn minc() -> usize {
        20
    }
    pub fn maxc() -> usize {
        50
    }
    pub fn om() -> usize {
        2
    }
    pub fn a() -> usize {
        1
    }
    pub fn steps() -> usize {
        20
    }
}

impl BenchmarkConfig {
    pub fn with_size(n: usize) -> Self {
        BenchmarkConfig {
            n,
            k_avg: defaults::k_avg(),
            maxk: defaults::maxk(),
            mu: defaults::mu(),
            t1: defaults::t1(),
            t2: defaults::t2(),
            minc: defaults::minc(),
            maxc: defaults::maxc(),
            on: 0,
            om: defaults::om(),
            a: defaults::a(),
            steps: defaults::steps(),
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<(), DataError> {
        let bad = |m: String| Err(DataError::InvalidParameter(m));
        if self.a < 1 {
            return bad(format!("a must be at least 1, got {}", self.a));
        }
        if !(0.0..=1.0).contains(&self.mu) {
            return bad(format!("mu must lie in [0, 1], got {}", self.mu));
        }
        if self.minc > self.maxc {
            return bad(format!("minc ({}) exceeds maxc ({})", self.minc, self.maxc));
        }
        if self.n == 0 {
            return bad("n must be positive".into());
        }
        if self.k_avg <= 0.0 {
            return bad(format!("k_avg must be positive, got {}", self.k_avg));
        }
        Ok(())
    }

    /// Planted-partition stand-in for an LFR network with these parameters:
    /// groups of about the mean community size, internal degree
    /// `k_avg * (1 - mu)` and external degree `k_avg * mu` on average.
    /// Degree and size distributions and overlap are not modeled.
    pub fn planted(&self) -> Result<PlantedNetwork, DataError> {
        self.validate()?;
        let size = ((self.minc + self.maxc) / 2).clamp(2, self.n.max(2));
        let groups = (self.n / size).max(1);
        // Leftover nodes are spread over the first groups.
        let sizes: Vec<usize> = (0..groups)
            .map(|i| self.n / groups + usize::from(i < self.n % groups))
            .collect();
        let p_in = (self.k_avg * (1.0 - self.mu) / (size - 1) as f64).min(1.0);
        let outside = self.n.saturating_sub(size).max(1);
        let p_out = (self.k_avg * self.mu / outside as f64).min(p_in);
        planted_groups(&sizes, p_in, p_out, self.seed)
    }
}

/// Disjoint groups with intra-group edges drawn with probability `p_in`
/// and inter-group edges with probability `p_out`. Each group is made
/// connected by joining its components with one extra edge each.
pub fn planted_partition(
    groups: usize,
    size: usize,
    p_in: f64,
    p_out: f64,
    seed: u64,
) -> Result<PlantedNetwork, DataError> {
    if !(0.0..=1.0).contains(&p_in) || !(0.0..=1.0).contains(&p_out) || p_out >= p_in {
        return Err(DataError::InvalidParameter(format!(
            "need 0 <= p_out < p_in <= 1, got p_in={p_in} p_out={p_out}"
        )));
    }
    if groups == 0 || size == 0 {
        return Err(DataError::InvalidParameter("groups and size must be positive".into()));
    }
    planted_groups(&vec![size; groups], p_in, p_out, seed)
}

fn planted_groups(sizes: &[usize], p_in: f64, p_out: f64, seed: u64) -> Result<PlantedNetwork, DataError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut starts = vec![0u64];
    for &s in sizes {
        starts.push(starts.last().unwrap() + s as u64);
    }
    let n = *starts.last().unwrap();
    let group_of = |v: u64| starts.partition_point(|&s| s <= v) - 1;
    let mut g = DynamicGraph::new();
    for v in 0..n {
        g.ensure_node(NodeId(v));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = if group_of(u) == group_of(v) { p_in } else { p_out };
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    for (u, v) in edges {
        g.apply(&Event::add_edge(0, u, v))?;
    }
    let mut truth = BTreeMap::new();
    for (c, w) in starts.windows(2).enumerate() {
        let members: Vec<NodeId> = (w[0]..w[1]).map(NodeId).collect();
        connect_group(&mut g, &members, &mut rng)?;
        truth.insert(CommunityId(c as u64), members.into_iter().collect::<NodeSet>());
    }
    Ok(PlantedNetwork {
        graph: g,
        ground_truth: Cover::from_groups(truth),
    })
}

fn connect_group(g: &mut DynamicGraph, members: &[NodeId], rng: &mut ChaCha8Rng) -> Result<(), DataError> {
    let inside: NodeSet = members.iter().copied().collect();
    let mut seen = NodeSet::new();
    let mut components: Vec<Vec<NodeId>> = Vec::new();
    for &s in members {
        if !seen.insert(s) {
            continue;
        }
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for &v in g.neighbors(u)? {
                if inside.contains(&v) && seen.insert(v) {
                    comp.push(v);
                }
            }
        }
        components.push(comp);
    }
    for pair in components.windows(2) {
        let u = *pair[0].choose(rng).expect("nonempty component");
        let v = *pair[1].choose(rng).expect("nonempty component");
        g.apply(&Event::add_edge(0, u.0, v.0))?;
    }
    Ok(())
}

/// Events that build `net` from an empty graph at time `t`: all nodes, then
/// all edges, both ascending.
pub fn initial_events(net: &PlantedNetwork, t: u64) -> Vec<Event> {
    let mut out: Vec<Event> = net.graph.nodes().map(|n| Event::add_node(t, n.0)).collect();
    out.extend(net.graph.edges().map(|(u, v)| Event::add_edge(t, u.0, v.0)));
    out
}

/// One atomic modification: inside a uniformly chosen planted community
/// that has both an internal edge and a missing internal pair, remove a
/// random internal edge and add a random missing internal pair. The graph
/// in `net` is updated. Communities that are complete or edgeless are
/// skipped in favor of another draw.
pub fn atomic_modify<R: Rng>(net: &mut PlantedNetwork, rng: &mut R, t: u64) -> Result<(Event, Event), DataError> {
    let mut order: Vec<&NodeSet> = net.ground_truth.groups().values().collect();
    order.shuffle(rng);
    for group in order {
        let members: Vec<NodeId> = group.iter().copied().collect();
        let mut present = Vec::new();
        let mut missing = Vec::new();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if net.graph.has_edge(u, v) {
                    present.push((u, v));
                } else {
                    missing.push((u, v));
                }
            }
        }
        if present.is_empty() || missing.is_empty() {
            continue;
        }
        // Drawn from pairs missing before the removal, so the removed edge is
        // never put straight back.
        let (ru, rv) = *present.choose(rng).expect("nonempty");
        let (au, av) = *missing.choose(rng).expect("nonempty");
        let remove = Event::remove_edge(t, ru.0, rv.0);
        let add = Event::add_edge(t, au.0, av.0);
        net.graph.apply(&remove)?;
        net.graph.apply(&add)?;
        return Ok((remove, add));
    }
    Err(DataError::NoModifiableCommunity)
}

/// `steps` steps of `a` atomic modifications each; step `s` (1-based) is
/// stamped `s`. The input network is left untouched.
pub fn generate_dynamic_sequence(
    net: &PlantedNetwork,
    a: usize,
    steps: usize,
    seed: u64,
) -> Result<Vec<Event>, DataError> {
    let mut work = net.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(steps * a * 2);
    for s in 1..=steps as u64 {
        for _ in 0..a {
            let (r, ad) = atomic_modify(&mut work, &mut rng, s)?;
            out.push(r);
            out.push(ad);
        }
    }
    Ok(out)
}

/// Initial network at t=0 followed by the dynamic sequence.
pub fn benchmark_stream(net: &PlantedNetwork, a: usize, steps: usize, seed: u64) -> Result<Vec<Event>, DataError> {
    let mut events = initial_events(net, 0);
    events.extend(generate_dynamic_sequence(net, a, steps, seed)?);
    Ok(events)
}

/// Last timestamp of an event list.
pub fn last_timestamp(events: &[Event]) -> Option<Timestamp> {
    events.last().map(|e| e.t)
}
