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

//! Communities, their lifecycle records and the alive/dead store.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cover::Cover;
use crate::graph::{DynamicGraph, NodeId, NodeSet, Timestamp};

/// Opaque community identifier. Assigned in increasing order, never reused.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CommunityId(pub u64);

impl fmt::Display for CommunityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct CliqueId(u64);

#[derive(Debug, Clone)]
pub(crate) struct StoredClique {
    pub(crate) nodes: NodeSet,
    pub(crate) owner: CommunityId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Community {
    pub id: CommunityId,
    pub members: NodeSet,
    pub born_at: Timestamp,
    pub died_at: Option<Timestamp>,
    pub(crate) cliques: BTreeSet<CliqueId>,
}

impl Community {
    pub fn is_alive(&self) -> bool {
        self.died_at.is_none()
    }

    /// Number of maximal cliques backing this community.
    pub fn clique_count(&self) -> usize {
        self.cliques.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LifecycleKind {
    Birth,
    Growth,
    Shrink,
    Merge,
    Split,
    Death,
}

impl LifecycleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LifecycleKind::Birth => "BIRTH",
            LifecycleKind::Growth => "GROWTH",
            LifecycleKind::Shrink => "SHRINK",
            LifecycleKind::Merge => "MERGE",
            LifecycleKind::Split => "SPLIT",
            LifecycleKind::Death => "DEATH",
        }
    }
}

impl fmt::Display for LifecycleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One community transformation.
///
/// `nodes` holds the members at birth and death, the nodes gained or lost
/// for growth and shrink, the merged member set for a merge, and the
/// offspring's members for a split. `related` lists the absorbed
/// communities of a merge or the offspring of a split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LifecycleEvent {
    pub kind: LifecycleKind,
    pub t: Timestamp,
    pub community: CommunityId,
    pub nodes: NodeSet,
    pub related: Vec<CommunityId>,
}

fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    if parts.is_empty() {
        "-".to_string()
    } else {
        parts.join(" ")
    }
}

/// Tab-separated log record: `t kind community nodes related`, with lists
/// space-separated and `-` for an empty list.
impl fmt::Display for LifecycleEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}",
            self.t,
            self.kind,
            self.community,
            join(&self.nodes),
            join(&self.related)
        )
    }
}

/// Alive communities, dead communities, and the indexes that keep community
/// updates local: node → communities and node → cliques.
#[derive(Debug, Clone, Default)]
pub struct CommunityStore {
    alive: BTreeMap<CommunityId, Community>,
    dead: BTreeMap<CommunityId, Community>,
    membership: BTreeMap<NodeId, BTreeSet<CommunityId>>,
    cliques: BTreeMap<CliqueId, StoredClique>,
    node_cliques: HashMap<NodeId, BTreeSet<CliqueId>>,
    next_community: u64,
    next_clique: u64,
}

static EMPTY_IDS: BTreeSet<CommunityId> = BTreeSet::new();

impl CommunityStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn alive(&self) -> impl Iterator<Item = &Community> {
        self.alive.values()
    }

    pub fn dead(&self) -> impl Iterator<Item = &Community> {
        self.dead.values()
    }

    pub fn alive_count(&self) -> usize {
        self.alive.len()
    }

    pub fn get(&self, id: CommunityId) -> Option<&Community> {
        self.alive.get(&id).or_else(|| self.dead.get(&id))
    }

    pub fn get_alive(&self, id: CommunityId) -> Option<&Community> {
        self.alive.get(&id)
    }

    /// Alive communities containing `n`.
    pub fn membership(&self, n: NodeId) -> &BTreeSet<CommunityId> {
        self.membership.get(&n).unwrap_or(&EMPTY_IDS)
    }

    /// Nodes covered by at least one alive community.
    pub fn covered_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.membership.keys().copied()
    }

    /// Sorted member sets of the alive communities.
    pub fn member_sets(&self) -> Vec<NodeSet> {
        let mut v: Vec<NodeSet> = self.alive.values().map(|c| c.members.clone()).collect();
        v.sort();
        v
    }

    pub fn cover(&self) -> Cover {
        Cover::from_groups(self.alive.values().map(|c| (c.id, c.members.clone())))
    }

    /// The maximal cliques backing community `id`.
    pub fn cliques_of(&self, id: CommunityId) -> Vec<NodeSet> {
        self.get(id)
            .map(|c| {
                c.cliques
                    .iter()
                    .filter_map(|cid| self.cliques.get(cid))
                    .map(|s| s.nodes.clone())
                    .collect()
            })
            .unwrap_or_default()
    }

    // ---- crate-internal mutation -------------------------------------

    pub(crate) fn clique(&self, cid: CliqueId) -> &StoredClique {
        &self.cliques[&cid]
    }

    pub(crate) fn clique_ids_of(&self, id: CommunityId) -> Vec<CliqueId> {
        self.alive[&id].cliques.iter().copied().collect()
    }

    pub(crate) fn cliques_with_node(&self, n: NodeId) -> impl Iterator<Item = CliqueId> + '_ {
        self.node_cliques.get(&n).into_iter().flatten().copied()
    }

    /// Stored cliques sharing at least `k - 1` nodes with `nodes`.
    pub(crate) fn adjacent_cliques(&self, nodes: &NodeSet, k: usize) -> Vec<CliqueId> {
        let mut shared: BTreeMap<CliqueId, usize> = BTreeMap::new();
        for n in nodes {
            for cid in self.cliques_with_node(*n) {
                *shared.entry(cid).or_default() += 1;
            }
        }
        shared
            .into_iter()
            .filter(|&(_, s)| s + 1 >= k)
            .map(|(cid, _)| cid)
            .collect()
    }

    fn fresh_community_id(&mut self) -> CommunityId {
        let id = CommunityId(self.next_community);
        self.next_community += 1;
        id
    }

    fn insert_clique(&mut self, owner: CommunityId, nodes: NodeSet) -> CliqueId {
        let cid = CliqueId(self.next_clique);
        self.next_clique += 1;
        for &n in &nodes {
            self.node_cliques.entry(n).or_default().insert(cid);
        }
        self.cliques.insert(cid, StoredClique { nodes, owner });
        self.alive.get_mut(&owner).expect("alive owner").cliques.insert(cid);
        cid
    }

    /// Drops a clique from its owner and the node index. Member sets are
    /// left untouched; callers recompute them.
    pub(crate) fn remove_clique(&mut self, cid: CliqueId) -> StoredClique {
        let sc = self.cliques.remove(&cid).expect("known clique");
        for n in &sc.nodes {
            if let Some(set) = self.node_cliques.get_mut(n) {
                set.remove(&cid);
                if set.is_empty() {
                    self.node_cliques.remove(n);
                }
            }
        }
        if let Some(c) = self.alive.get_mut(&sc.owner) {
            c.cliques.remove(&cid);
        }
        sc
    }

    fn set_members(&mut self, id: CommunityId, members: NodeSet) {
        let c = self.alive.get_mut(&id).expect("alive community");
        let old = std::mem::replace(&mut c.members, members);
        let new = &self.alive[&id].members;
        for n in old.difference(new) {
            if let Some(ids) = self.membership.get_mut(n) {
                ids.remove(&id);
                if ids.is_empty() {
                    self.membership.remove(n);
                }
            }
        }
        for n in new.difference(&old) {
            self.membership.entry(*n).or_default().insert(id);
        }
    }

    /// Creates a community from a nonempty set of cliques.
    pub(crate) fn birth(&mut self, cliques: Vec<NodeSet>, t: Timestamp) -> CommunityId {
        debug_assert!(!cliques.is_empty());
        let id = self.fresh_community_id();
        self.alive.insert(
            id,
            Community {
                id,
                members: NodeSet::new(),
                born_at: t,
                died_at: None,
                cliques: BTreeSet::new(),
            },
        );
        let members = crate::clique::union_of(&cliques);
        for c in cliques {
            self.insert_clique(id, c);
        }
        self.set_members(id, members);
        id
    }

    /// Adds nodes to a community's member set; returns those that were new.
    pub(crate) fn grow(&mut self, id: CommunityId, nodes: &NodeSet) -> NodeSet {
        let members = &self.alive[&id].members;
        let added: NodeSet = nodes.difference(members).copied().collect();
        if !added.is_empty() {
            let mut m = members.clone();
            m.extend(added.iter().copied());
            self.set_members(id, m);
        }
        added
    }

    pub(crate) fn attach_cliques(&mut self, id: CommunityId, cliques: Vec<NodeSet>) {
        let nodes = crate::clique::union_of(&cliques);
        for c in cliques {
            self.insert_clique(id, c);
        }
        self.grow(id, &nodes);
    }

    /// Moves the cliques and members of `absorbed` into `survivor` and marks
    /// the absorbed communities dead at `t`.
    pub(crate) fn absorb(&mut self, survivor: CommunityId, absorbed: &[CommunityId], t: Timestamp) {
        let mut members = self.alive[&survivor].members.clone();
        for &id in absorbed {
            let cids: Vec<CliqueId> = self.alive[&id].cliques.iter().copied().collect();
            for cid in cids {
                self.cliques.get_mut(&cid).expect("clique").owner = survivor;
                self.alive.get_mut(&survivor).expect("survivor").cliques.insert(cid);
            }
            self.alive.get_mut(&id).expect("absorbed").cliques.clear();
            members.extend(self.alive[&id].members.iter().copied());
            self.retire(id, t);
        }
        self.set_members(survivor, members);
    }

    /// Removes every clique of `id`, drops its memberships and moves it to
    /// the dead set.
    pub(crate) fn kill(&mut self, id: CommunityId, t: Timestamp) {
        for cid in self.clique_ids_of(id) {
            self.remove_clique(cid);
        }
        self.retire(id, t);
    }

    fn retire(&mut self, id: CommunityId, t: Timestamp) {
        let mut c = self.alive.remove(&id).expect("alive community");
        for n in &c.members {
            if let Some(ids) = self.membership.get_mut(n) {
                ids.remove(&id);
                if ids.is_empty() {
                    self.membership.remove(n);
                }
            }
        }
        c.died_at = Some(t);
        self.dead.insert(id, c);
    }

    /// Replaces the member set of `id` with the union of its cliques and
    /// returns the nodes that left.
    pub(crate) fn refresh_members(&mut self, id: CommunityId) -> NodeSet {
        let members: NodeSet = self.alive[&id]
            .cliques
            .iter()
            .flat_map(|cid| self.cliques[cid].nodes.iter().copied())
            .collect();
        let left: NodeSet = self.alive[&id].members.difference(&members).copied().collect();
        self.set_members(id, members);
        left
    }

    /// Moves the listed cliques out of `from` into a new community born at `t`.
    pub(crate) fn spin_off(&mut self, from: CommunityId, cliques: &[CliqueId], t: Timestamp) -> CommunityId {
        let id = self.fresh_community_id();
        self.alive.insert(
            id,
            Community {
                id,
                members: NodeSet::new(),
                born_at: t,
                died_at: None,
                cliques: BTreeSet::new(),
            },
        );
        let mut members = NodeSet::new();
        for &cid in cliques {
            self.alive.get_mut(&from).expect("source").cliques.remove(&cid);
            let sc = self.cliques.get_mut(&cid).expect("clique");
            sc.owner = id;
            members.extend(sc.nodes.iter().copied());
            self.alive.get_mut(&id).expect("new").cliques.insert(cid);
        }
        self.set_members(id, members);
        id
    }

    pub(crate) fn add_clique(&mut self, owner: CommunityId, nodes: NodeSet) {
        self.insert_clique(owner, nodes);
    }

    /// Full structural check, used by tests.
    ///
    /// Verifies disjointness of alive and dead ids, that the membership and
    /// clique indexes mirror the communities, that each member set is the
    /// union of its cliques, and that every stored clique is a maximal
    /// clique of `g` with at least `k` nodes.
    pub fn check_consistency(&self, g: &DynamicGraph, k: usize) -> Result<(), String> {
        for id in self.alive.keys() {
            if self.dead.contains_key(id) {
                return Err(format!("community {id} both alive and dead"));
            }
        }
        let mut expected: BTreeMap<NodeId, BTreeSet<CommunityId>> = BTreeMap::new();
        for c in self.alive.values() {
            if c.members.is_empty() || c.cliques.is_empty() {
                return Err(format!("alive community {} is empty", c.id));
            }
            for n in &c.members {
                expected.entry(*n).or_default().insert(c.id);
            }
            let mut union = NodeSet::new();
            for cid in &c.cliques {
                let sc = self
                    .cliques
                    .get(cid)
                    .ok_or_else(|| format!("community {} lists unknown clique", c.id))?;
                if sc.owner != c.id {
                    return Err(format!("clique owner mismatch in community {}", c.id));
                }
                union.extend(sc.nodes.iter().copied());
            }
            if union != c.members {
                return Err(format!("community {} members differ from clique union", c.id));
            }
        }
        if expected != self.membership {
            return Err("membership index out of sync".into());
        }
        let mut node_index: HashMap<NodeId, BTreeSet<CliqueId>> = HashMap::new();
        for (cid, sc) in &self.cliques {
            if !self.alive.get(&sc.owner).is_some_and(|c| c.cliques.contains(cid)) {
                return Err("orphan clique".into());
            }
            if sc.nodes.len() < k || !g.is_clique(&sc.nodes) {
                return Err(format!("stored set {:?} is not a {k}-clique", sc.nodes));
            }
            if !g.common_neighbors(&sc.nodes).map_err(|e| e.to_string())?.is_empty() {
                return Err(format!("stored clique {:?} is not maximal", sc.nodes));
            }
            for n in &sc.nodes {
                node_index.entry(*n).or_default().insert(*cid);
            }
        }
        if node_index != self.node_cliques {
            return Err("node → clique index out of sync".into());
        }
        Ok(())
    }
}
