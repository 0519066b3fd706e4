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

//! Online clique percolation: incremental maintenance of CPM communities
//! under a stream of node and edge events.
//!
//! Each community is stored as the set of maximal cliques (of at least `k`
//! nodes) that percolate into it. Every maximal clique of the current graph
//! with at least `k` nodes belongs to exactly one alive community, and two
//! cliques share a community iff they are linked by a chain of cliques
//! overlapping on `k - 1` nodes or more. Keeping cliques per community makes
//! removal checks local: only cliques touching the removed element change.
//!
//! Dispatch per graph event:
//!
//! | event                                   | action                 |
//! |-----------------------------------------|------------------------|
//! | add node                                | none                   |
//! | add edge, both endpoints uncovered      | births                 |
//! | add edge, otherwise                     | growth + merge, births |
//! | remove node, uncovered                  | none                   |
//! | remove node, covered                    | shrink + split, death  |
//! | remove edge, endpoints share a community| split, death           |
//! | remove edge, otherwise                  | none                   |

use std::collections::{BTreeMap, BTreeSet};

use crate::clique::{adjacent_clique_groups, k_cliques_containing, union_of, CliqueScope, DisjointSets};
use crate::community::{CliqueId, CommunityId, CommunityStore, LifecycleEvent, LifecycleKind};
use crate::cover::Cover;
use crate::error::{EngineError, GraphError};
use crate::event::{Event, EventKind};
use crate::graph::{DynamicGraph, NodeId, NodeSet, Timestamp};

/// Clique size parameter; at least 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CliqueSize(usize);

impl CliqueSize {
    pub fn new(k: usize) -> Result<Self, EngineError> {
        if k < 3 {
            Err(EngineError::InvalidCliqueSize(k))
        } else {
            Ok(CliqueSize(k))
        }
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl TryFrom<usize> for CliqueSize {
    type Error = EngineError;

    fn try_from(k: usize) -> Result<Self, Self::Error> {
        CliqueSize::new(k)
    }
}

/// The online CPM engine: current graph plus community store.
#[derive(Debug, Clone)]
pub struct Ocpm {
    k: usize,
    graph: DynamicGraph,
    store: CommunityStore,
    last_t: Option<Timestamp>,
    implicit_nodes: bool,
}

fn event(kind: LifecycleKind, t: Timestamp, community: CommunityId, nodes: NodeSet) -> LifecycleEvent {
    LifecycleEvent {
        kind,
        t,
        community,
        nodes,
        related: Vec::new(),
    }
}

impl Ocpm {
    pub fn new(k: CliqueSize) -> Self {
        Ocpm {
            k: k.get(),
            graph: DynamicGraph::new(),
            store: CommunityStore::new(),
            last_t: None,
            implicit_nodes: false,
        }
    }

    /// When enabled, an edge whose endpoints are missing creates them
    /// instead of being rejected.
    pub fn with_implicit_nodes(mut self, on: bool) -> Self {
        self.implicit_nodes = on;
        self
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn graph(&self) -> &DynamicGraph {
        &self.graph
    }

    pub fn store(&self) -> &CommunityStore {
        &self.store
    }

    pub fn last_timestamp(&self) -> Option<Timestamp> {
        self.last_t
    }

    /// Current OCPM communities.
    pub fn cover(&self) -> Cover {
        self.store.cover()
    }

    /// Applies `ev` to the graph and updates the communities.
    ///
    /// Rejected events (see [`GraphError::is_rejection`]) leave the state
    /// untouched; a timestamp earlier than the previous event's is an error.
    pub fn process_event(&mut self, ev: &Event) -> Result<Vec<LifecycleEvent>, EngineError> {
        if let Some(last) = self.last_t {
            if ev.t < last {
                return Err(GraphError::OutOfOrder { last, got: ev.t }.into());
            }
        }
        let t = ev.t;
        let out = match ev.kind {
            EventKind::AddNode(_) => {
                self.graph.apply(ev)?;
                Vec::new()
            }
            EventKind::AddEdge(i, j) => {
                if self.implicit_nodes && i != j {
                    // Only create endpoints when the edge itself will be accepted.
                    if !self.graph.has_edge(i, j) {
                        self.graph.ensure_node(i);
                        self.graph.ensure_node(j);
                    }
                }
                self.graph.apply(ev)?;
                if self.store.membership(i).is_empty() && self.store.membership(j).is_empty() {
                    self.add_external_edge(i, j, t)?
                } else {
                    self.add_non_external_edge(i, j, t)?
                }
            }
            EventKind::RemoveNode(n) => {
                let internal = !self.store.membership(n).is_empty();
                self.graph.apply(ev)?;
                if internal {
                    self.remove_internal_node(n, t)?
                } else {
                    Vec::new()
                }
            }
            EventKind::RemoveEdge(i, j) => {
                let shared = !self
                    .store
                    .membership(i)
                    .is_disjoint(self.store.membership(j));
                self.graph.apply(ev)?;
                if shared {
                    self.remove_internal_edge(i, j, t)?
                } else {
                    Vec::new()
                }
            }
        };
        self.last_t = Some(t);
        Ok(out)
    }

    fn new_cliques_on_edge(&self, i: NodeId, j: NodeId) -> Result<Vec<NodeSet>, EngineError> {
        if !self.graph.has_edge(i, j) {
            return Err(EngineError::Precondition(format!("edge ({i}, {j}) is not in the graph")));
        }
        let seed: NodeSet = [i, j].into_iter().collect();
        Ok(k_cliques_containing(&self.graph, &seed, self.k, CliqueScope::Neighborhood)?)
    }

    /// New edge between two nodes outside every community: each group of
    /// adjacent new cliques is born as a community.
    pub fn add_external_edge(&mut self, i: NodeId, j: NodeId, t: Timestamp) -> Result<Vec<LifecycleEvent>, EngineError> {
        if !self.store.membership(i).is_empty() || !self.store.membership(j).is_empty() {
            return Err(EngineError::Precondition(format!(
                "edge ({i}, {j}) has an endpoint inside a community"
            )));
        }
        let cliques = self.new_cliques_on_edge(i, j)?;
        let mut out = Vec::new();
        for group in adjacent_clique_groups(&cliques, self.k) {
            let members: Vec<NodeSet> = group.iter().map(|&g| cliques[g].clone()).collect();
            let id = self.store.birth(members, t);
            out.push(event(LifecycleKind::Birth, t, id, self.store.get_alive(id).expect("born").members.clone()));
        }
        Ok(out)
    }

    /// New edge with at least one endpoint inside a community.
    ///
    /// The new maximal cliques containing the edge are grouped together with
    /// every community owning a clique they overlap on `k - 1` nodes. A group
    /// touching no community is born; otherwise its communities grow with the
    /// group's nodes and, when several, merge into the largest.
    pub fn add_non_external_edge(&mut self, i: NodeId, j: NodeId, t: Timestamp) -> Result<Vec<LifecycleEvent>, EngineError> {
        if self.store.membership(i).is_empty() && self.store.membership(j).is_empty() {
            return Err(EngineError::Precondition(format!(
                "edge ({i}, {j}) has no endpoint inside a community"
            )));
        }
        let cliques = self.new_cliques_on_edge(i, j)?;
        if cliques.is_empty() {
            return Ok(Vec::new());
        }
        let k = self.k;

        // Old cliques through i or j that the new cliques swallow.
        let mut subsumed: BTreeSet<CliqueId> = BTreeSet::new();
        for cid in self.store.cliques_with_node(i).chain(self.store.cliques_with_node(j)) {
            let nodes = &self.store.clique(cid).nodes;
            if cliques.iter().any(|q| nodes.is_subset(q)) {
                subsumed.insert(cid);
            }
        }

        // Union–find over new cliques (0..m) and touched communities (m..).
        let m = cliques.len();
        let mut slot_of: BTreeMap<CommunityId, usize> = BTreeMap::new();
        let mut links: Vec<(usize, usize)> = Vec::new();
        for (qi, q) in cliques.iter().enumerate() {
            for cid in self.store.adjacent_cliques(q, k) {
                let owner = self.store.clique(cid).owner;
                let next = m + slot_of.len();
                let slot = *slot_of.entry(owner).or_insert(next);
                links.push((qi, slot));
            }
        }
        let mut sets = DisjointSets::new(m + slot_of.len());
        for (a, b) in crate::clique::adjacent_pairs(&cliques, k) {
            sets.union(a, b);
        }
        for (a, b) in links {
            sets.union(a, b);
        }
        let community_at: BTreeMap<usize, CommunityId> = slot_of.iter().map(|(&c, &s)| (s, c)).collect();

        for cid in subsumed {
            self.store.remove_clique(cid);
        }

        let mut out = Vec::new();
        for class in sets.classes() {
            let group: Vec<NodeSet> = class.iter().filter(|&&x| x < m).map(|&x| cliques[x].clone()).collect();
            if group.is_empty() {
                continue;
            }
            let communities: Vec<CommunityId> = class.iter().filter_map(|x| community_at.get(x)).copied().collect();
            let group_nodes = union_of(&group);
            match communities.len() {
                0 => {
                    let id = self.store.birth(group, t);
                    out.push(event(LifecycleKind::Birth, t, id, group_nodes));
                }
                _ => {
                    for &c in &communities {
                        let added = self.store.grow(c, &group_nodes);
                        if !added.is_empty() {
                            out.push(event(LifecycleKind::Growth, t, c, added));
                        }
                    }
                    let survivor = if communities.len() > 1 {
                        let (survivor, merge_ev) = self.merge_alive(&communities, t);
                        out.extend(merge_ev);
                        survivor
                    } else {
                        communities[0]
                    };
                    self.store.attach_cliques(survivor, group);
                }
            }
        }
        Ok(out)
    }

    /// Merges alive communities into the one with the most members (ties:
    /// smallest id). Returns the survivor; a single id is returned unchanged
    /// without any event.
    pub fn merge(&mut self, ids: &[CommunityId], t: Timestamp) -> Result<(CommunityId, Option<LifecycleEvent>), EngineError> {
        let unique: Vec<CommunityId> = ids.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        for &id in &unique {
            if self.store.get_alive(id).is_none() {
                return Err(EngineError::UnknownCommunity(id.0));
            }
        }
        match unique.len() {
            0 => Err(EngineError::Precondition("merge of no communities".into())),
            1 => Ok((unique[0], None)),
            _ => Ok(self.merge_alive(&unique, t)),
        }
    }

    fn merge_alive(&mut self, ids: &[CommunityId], t: Timestamp) -> (CommunityId, Option<LifecycleEvent>) {
        let survivor = *ids
            .iter()
            .max_by_key(|&&id| {
                let size = self.store.get_alive(id).expect("alive").members.len();
                (size, std::cmp::Reverse(id))
            })
            .expect("nonempty");
        let absorbed: Vec<CommunityId> = ids.iter().copied().filter(|&id| id != survivor).collect();
        self.store.absorb(survivor, &absorbed, t);
        let ev = LifecycleEvent {
            kind: LifecycleKind::Merge,
            t,
            community: survivor,
            nodes: self.store.get_alive(survivor).expect("survivor").members.clone(),
            related: absorbed,
        };
        (survivor, Some(ev))
    }

    /// Replaces stored cliques that lost `removed` (a node, or one endpoint
    /// of a removed edge) by their remaining parts, keeping the parts that
    /// are still maximal cliques of at least `k` nodes.
    fn replace_broken_cliques(&mut self, owner: CommunityId, broken: &[CliqueId], removed: &[NodeId]) -> Result<(), EngineError> {
        let mut pieces: BTreeSet<NodeSet> = BTreeSet::new();
        for &cid in broken {
            let sc = self.store.remove_clique(cid);
            for r in removed {
                let mut piece = sc.nodes.clone();
                piece.remove(r);
                if piece.len() >= self.k && piece.iter().all(|n| self.graph.contains_node(*n))
                    && self.graph.common_neighbors(&piece)?.is_empty()
                {
                    pieces.insert(piece);
                }
            }
        }
        for p in pieces {
            self.store.add_clique(owner, p);
        }
        Ok(())
    }

    /// Node `n` (already deleted from the graph) belonged to communities.
    /// Each either dies, when none of its cliques survives, or shrinks and
    /// is re-split.
    pub fn remove_internal_node(&mut self, n: NodeId, t: Timestamp) -> Result<Vec<LifecycleEvent>, EngineError> {
        if self.graph.contains_node(n) {
            return Err(EngineError::Precondition(format!("node {n} is still in the graph")));
        }
        let affected: Vec<CommunityId> = self.store.membership(n).iter().copied().collect();
        if affected.is_empty() {
            return Err(EngineError::Precondition(format!("node {n} is in no community")));
        }
        let mut out = Vec::new();
        for c in affected {
            let broken: Vec<CliqueId> = self
                .store
                .cliques_with_node(n)
                .filter(|&cid| self.store.clique(cid).owner == c)
                .collect();
            self.replace_broken_cliques(c, &broken, &[n])?;
            out.extend(self.settle(c, t));
        }
        Ok(out)
    }

    /// Edge `(i, j)` (already deleted from the graph) had both endpoints in
    /// common communities. Each such community whose cliques used the edge
    /// either dies or is re-split.
    pub fn remove_internal_edge(&mut self, i: NodeId, j: NodeId, t: Timestamp) -> Result<Vec<LifecycleEvent>, EngineError> {
        if self.graph.has_edge(i, j) {
            return Err(EngineError::Precondition(format!("edge ({i}, {j}) is still in the graph")));
        }
        let shared: Vec<CommunityId> = self
            .store
            .membership(i)
            .intersection(self.store.membership(j))
            .copied()
            .collect();
        if shared.is_empty() {
            return Err(EngineError::Precondition(format!("nodes {i} and {j} share no community")));
        }
        let through_j: BTreeSet<CliqueId> = self.store.cliques_with_node(j).collect();
        let mut out = Vec::new();
        for c in shared {
            let broken: Vec<CliqueId> = self
                .store
                .cliques_with_node(i)
                .filter(|cid| through_j.contains(cid) && self.store.clique(*cid).owner == c)
                .collect();
            if broken.is_empty() {
                continue;
            }
            self.replace_broken_cliques(c, &broken, &[i, j])?;
            out.extend(self.settle(c, t));
        }
        Ok(out)
    }

    /// After a community's cliques were updated: death if none remain,
    /// otherwise shrink and split as needed.
    fn settle(&mut self, c: CommunityId, t: Timestamp) -> Vec<LifecycleEvent> {
        if self.store.get_alive(c).expect("alive").cliques.is_empty() {
            let members = self.store.get_alive(c).expect("alive").members.clone();
            self.store.kill(c, t);
            return vec![event(LifecycleKind::Death, t, c, members)];
        }
        self.split_alive(c, t)
    }

    /// Regroups the cliques of `c` by adjacency. The group with the most
    /// nodes (ties: the group holding the smallest node) keeps the identity;
    /// each other group becomes a new community. Nodes left in no clique
    /// leave the community.
    pub fn split(&mut self, c: CommunityId, t: Timestamp) -> Result<Vec<LifecycleEvent>, EngineError> {
        match self.store.get_alive(c) {
            None => Err(EngineError::UnknownCommunity(c.0)),
            Some(comm) if comm.cliques.is_empty() => Err(EngineError::Precondition(format!(
                "community {c} holds no clique of size {}",
                self.k
            ))),
            Some(_) => Ok(self.split_alive(c, t)),
        }
    }

    fn split_alive(&mut self, c: CommunityId, t: Timestamp) -> Vec<LifecycleEvent> {
        let ids = self.store.clique_ids_of(c);
        let cliques: Vec<NodeSet> = ids.iter().map(|&cid| self.store.clique(cid).nodes.clone()).collect();
        let groups = adjacent_clique_groups(&cliques, self.k);
        let unions: Vec<NodeSet> = groups.iter().map(|g| union_of(g.iter().map(|&x| &cliques[x]))).collect();
        let keep = (0..groups.len())
            .max_by_key(|&g| {
                let smallest = unions[g].iter().next().copied().unwrap_or_default();
                (unions[g].len(), std::cmp::Reverse(smallest))
            })
            .expect("at least one group");

        let mut spawned = Vec::new();
        for (g, group) in groups.iter().enumerate() {
            if g != keep {
                let moved: Vec<CliqueId> = group.iter().map(|&x| ids[x]).collect();
                spawned.push(self.store.spin_off(c, &moved, t));
            }
        }
        let before = self.store.get_alive(c).expect("alive").members.clone();
        self.store.refresh_members(c);
        let covered: NodeSet = unions.iter().flatten().copied().collect();
        let left: NodeSet = before.difference(&covered).copied().collect();

        let mut out = Vec::new();
        if !left.is_empty() {
            out.push(event(LifecycleKind::Shrink, t, c, left));
        }
        for s in spawned {
            out.push(LifecycleEvent {
                kind: LifecycleKind::Split,
                t,
                community: c,
                nodes: self.store.get_alive(s).expect("spawned").members.clone(),
                related: vec![s],
            });
        }
        out
    }
}
