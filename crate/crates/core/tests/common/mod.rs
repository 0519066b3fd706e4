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

//! Brute-force reference implementations shared by integration tests.
#![allow(dead_code)]

pub mod scenarios;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use olcpm_core::{CommunityId, Cover, DynamicGraph, Event, NodeId, NodeSet};
use rand::seq::SliceRandom;
use rand::Rng;

/// Every k-node clique, as sorted node vectors.
pub fn k_cliques(g: &DynamicGraph, k: usize) -> Vec<Vec<NodeId>> {
    fn extend(g: &DynamicGraph, k: usize, cur: &mut Vec<NodeId>, cands: &[NodeId], out: &mut Vec<Vec<NodeId>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for (i, &c) in cands.iter().enumerate() {
            if cands.len() - i < k - cur.len() {
                break;
            }
            if cur.iter().all(|&u| g.has_edge(u, c)) {
                cur.push(c);
                extend(g, k, cur, &cands[i + 1..], out);
                cur.pop();
            }
        }
    }
    let nodes: Vec<NodeId> = g.nodes().collect();
    let mut out = Vec::new();
    extend(g, k, &mut Vec::new(), &nodes, &mut out);
    out
}

/// k-clique percolation from its definition: k-cliques sharing k - 1 nodes
/// are linked, communities are unions over connected components.
pub fn percolation(g: &DynamicGraph, k: usize) -> Vec<NodeSet> {
    let cl = k_cliques(g, k);
    let mut parent: Vec<usize> = (0..cl.len()).collect();
    fn root(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    let mut by_face: BTreeMap<Vec<NodeId>, usize> = BTreeMap::new();
    for (i, c) in cl.iter().enumerate() {
        for skip in 0..k {
            let face: Vec<NodeId> = c.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &n)| n).collect();
            match by_face.get(&face) {
                Some(&j) => {
                    let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
                None => {
                    by_face.insert(face, i);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, NodeSet> = BTreeMap::new();
    for (i, c) in cl.iter().enumerate() {
        let r = root(&mut parent, i);
        groups.entry(r).or_default().extend(c.iter().copied());
    }
    let mut out: Vec<NodeSet> = groups.into_values().collect();
    out.sort();
    out
}

fn bfs(g: &DynamicGraph, s: NodeId) -> BTreeMap<NodeId, u32> {
    let mut dist = BTreeMap::from([(s, 0u32)]);
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        let d = dist[&u];
        for &v in g.neighbors(u).unwrap() {
            if !dist.contains_key(&v) {
                dist.insert(v, d + 1);
                q.push_back(v);
            }
        }
    }
    dist
}

/// Expected label assignment: every node outside the core joins each core
/// community at minimum distance, from single-source BFS of every node.
pub fn label_oracle(g: &DynamicGraph, core: &Cover, max_distance: Option<u32>) -> Cover {
    let covered = core.covered();
    let mut groups: BTreeMap<CommunityId, NodeSet> = core.groups().clone();
    for p in g.nodes().filter(|n| !covered.contains(n)) {
        let dist = bfs(g, p);
        let per_comm: Vec<(CommunityId, u32)> = core
            .groups()
            .iter()
            .filter_map(|(&id, members)| members.iter().filter_map(|m| dist.get(m)).min().map(|&d| (id, d)))
            .collect();
        let Some(best) = per_comm.iter().map(|&(_, d)| d).min() else { continue };
        if max_distance.is_some_and(|m| best > m) {
            continue;
        }
        for (id, d) in per_comm {
            if d == best {
                groups.get_mut(&id).unwrap().insert(p);
            }
        }
    }
    Cover::from_groups(groups)
}

/// Random valid event sequence over node ids `0..n`, mixing node and edge
/// additions and removals, with nondecreasing timestamps.
pub fn random_sequence<R: Rng>(rng: &mut R, n: u64, len: usize, density: f64) -> Vec<Event> {
    let mut g = DynamicGraph::new();
    let mut out = Vec::with_capacity(len);
    let mut t = 0u64;
    while out.len() < len {
        if rng.gen_bool(0.3) {
            t += 1;
        }
        let nodes: Vec<NodeId> = g.nodes().collect();
        let roll: f64 = rng.gen();
        let ev = if nodes.len() < 3 || roll < 0.06 {
            let absent: Vec<u64> = (0..n).filter(|&v| !g.contains_node(NodeId(v))).collect();
            match absent.choose(rng) {
                Some(&v) => Event::add_node(t, v),
                None => continue,
            }
        } else if roll < 0.09 {
            Event::remove_node(t, nodes.choose(rng).unwrap().0)
        } else {
            let u = *nodes.choose(rng).unwrap();
            let v = *nodes.choose(rng).unwrap();
            if u == v {
                continue;
            }
            let target = g.edge_count() as f64 / (nodes.len() * (nodes.len() - 1) / 2) as f64;
            if g.has_edge(u, v) {
                if target > density || rng.gen_bool(0.3) {
                    Event::remove_edge(t, u.0, v.0)
                } else {
                    continue;
                }
            } else if target < density || rng.gen_bool(0.1) {
                Event::add_edge(t, u.0, v.0)
            } else {
                continue;
            }
        };
        g.apply(&ev).unwrap();
        out.push(ev);
    }
    out
}

/// Random graph as (node list, edge list).
pub fn random_graph<R: Rng>(rng: &mut R, n: u64, p: f64) -> (Vec<u64>, Vec<(u64, u64)>) {
    let nodes: Vec<u64> = (0..n).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    (nodes, edges)
}

pub fn set_of(v: &[u64]) -> NodeSet {
    v.iter().map(|&x| NodeId(x)).collect()
}

pub fn sets(v: &[&[u64]]) -> Vec<NodeSet> {
    let mut out: Vec<NodeSet> = v.iter().map(|s| set_of(s)).collect();
    out.sort();
    out
}

pub fn ids(v: &BTreeSet<CommunityId>) -> Vec<u64> {
    v.iter().map(|c| c.0).collect()
}
