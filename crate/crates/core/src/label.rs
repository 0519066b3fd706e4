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

//! Label-propagation post-process: attaches peripheral nodes (nodes in no
//! core community) to the core communities at the smallest geodesic
//! distance.

use std::collections::{BTreeMap, BTreeSet};

use crate::community::{CommunityId, CommunityStore};
use crate::cover::Cover;
use crate::graph::{DynamicGraph, NodeId};

/// A community label carried by a peripheral node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DistanceLabel {
    pub community: CommunityId,
    pub distance: u32,
}

/// Labels deposited on each reached peripheral node: every community at the
/// node's minimum distance. Unreached nodes are absent.
pub fn peripheral_labels(
    store: &CommunityStore,
    g: &DynamicGraph,
    max_distance: Option<u32>,
) -> BTreeMap<NodeId, Vec<DistanceLabel>> {
    // Level-synchronous multi-source BFS. Level 0 is the core; a peripheral
    // node first reached at level d collects the communities of all its
    // neighbors at level d - 1.
    let mut reached: BTreeMap<NodeId, (u32, BTreeSet<CommunityId>)> = BTreeMap::new();
    let mut frontier: Vec<NodeId> = Vec::new();
    for n in store.covered_nodes() {
        if g.contains_node(n) {
            frontier.push(n);
        }
    }
    let labels_at = |reached: &BTreeMap<NodeId, (u32, BTreeSet<CommunityId>)>, n: NodeId| -> BTreeSet<CommunityId> {
        match reached.get(&n) {
            Some((_, ids)) => ids.clone(),
            None => store.membership(n).clone(),
        }
    };
    let mut d = 0u32;
    while !frontier.is_empty() {
        d += 1;
        if max_distance.is_some_and(|m| d > m) {
            break;
        }
        let mut next: BTreeMap<NodeId, BTreeSet<CommunityId>> = BTreeMap::new();
        for &u in &frontier {
            let from = labels_at(&reached, u);
            for &v in g.neighbors(u).expect("frontier node in graph") {
                if !store.membership(v).is_empty() || reached.contains_key(&v) {
                    continue;
                }
                next.entry(v).or_default().extend(from.iter().copied());
            }
        }
        frontier = next.keys().copied().collect();
        for (v, ids) in next {
            reached.insert(v, (d, ids));
        }
    }
    reached
        .into_iter()
        .map(|(n, (d, ids))| {
            let labels = ids
                .into_iter()
                .map(|community| DistanceLabel { community, distance: d })
                .collect();
            (n, labels)
        })
        .collect()
}

/// Core communities extended with their peripheral nodes.
///
/// Core memberships are copied unchanged. Each peripheral node joins every
/// community at its minimum geodesic distance; nodes farther than
/// `max_distance` or unreachable from any community stay unassigned.
pub fn propagate_labels(store: &CommunityStore, g: &DynamicGraph, max_distance: Option<u32>) -> Cover {
    let mut groups: BTreeMap<CommunityId, _> = store.alive().map(|c| (c.id, c.members.clone())).collect();
    for (n, labels) in peripheral_labels(store, g, max_distance) {
        for l in labels {
            groups.get_mut(&l.community).expect("alive community").insert(n);
        }
    }
    Cover::from_groups(groups)
}
