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

//! The evolving simple undirected graph.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::event::{Event, EventKind};

/// Identifier of a graph node.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
#[serde(transparent)]
pub struct NodeId(pub u64);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u64> for NodeId {
    fn from(v: u64) -> Self {
        NodeId(v)
    }
}

/// Abstract time unit attached to every event.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
#[serde(transparent)]
pub struct Timestamp(pub u64);

impl fmt::Display for Timestamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub type NodeSet = BTreeSet<NodeId>;

/// Canonical (smaller, larger) form of an undirected edge.
pub fn edge_key(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Simple undirected graph with symmetric adjacency sets.
///
/// Ordered containers keep every traversal deterministic, which the engine
/// relies on for reproducible community identifiers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DynamicGraph {
    adj: BTreeMap<NodeId, NodeSet>,
    edge_count: usize,
}

impl DynamicGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from an edge list, creating endpoints as needed.
    /// Duplicate edges are ignored; self-loops are rejected.
    pub fn from_edges<I>(edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut g = DynamicGraph::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.ensure_node(u);
            g.ensure_node(v);
            if !g.has_edge(u, v) {
                g.insert_edge(u, v);
            }
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn contains_node(&self, n: NodeId) -> bool {
        self.adj.contains_key(&n)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adj.get(&u).is_some_and(|nb| nb.contains(&v))
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.adj.keys().copied()
    }

    pub fn neighbors(&self, n: NodeId) -> Result<&NodeSet, GraphError> {
        self.adj.get(&n).ok_or(GraphError::UnknownNode(n))
    }

    pub fn degree(&self, n: NodeId) -> usize {
        self.adj.get(&n).map_or(0, |nb| nb.len())
    }

    /// Edges as canonical `(min, max)` pairs, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, nb)| nb.range(u..).map(move |&v| (u, v)))
    }

    /// Adds `n` if absent. Returns true when the node was created.
    pub fn ensure_node(&mut self, n: NodeId) -> bool {
        if self.adj.contains_key(&n) {
            false
        } else {
            self.adj.insert(n, NodeSet::new());
            true
        }
    }

    fn insert_edge(&mut self, u: NodeId, v: NodeId) {
        self.adj.get_mut(&u).expect("endpoint").insert(v);
        self.adj.get_mut(&v).expect("endpoint").insert(u);
        self.edge_count += 1;
    }

    /// Applies one event, enforcing the simple-graph invariants.
    ///
    /// Adding an edge requires both endpoints to exist; removing a node also
    /// deletes its incident edges.
    pub fn apply(&mut self, ev: &Event) -> Result<(), GraphError> {
        match ev.kind {
            EventKind::AddNode(n) => {
                if !self.ensure_node(n) {
                    return Err(GraphError::DuplicateNode(n));
                }
            }
            EventKind::RemoveNode(n) => {
                let nb = self.adj.remove(&n).ok_or(GraphError::UnknownNode(n))?;
                for m in &nb {
                    self.adj.get_mut(m).expect("symmetric adjacency").remove(&n);
                }
                self.edge_count -= nb.len();
            }
            EventKind::AddEdge(u, v) => {
                if u == v {
                    return Err(GraphError::SelfLoop(u));
                }
                for n in [u, v] {
                    if !self.contains_node(n) {
                        return Err(GraphError::UnknownNode(n));
                    }
                }
                if self.has_edge(u, v) {
                    return Err(GraphError::DuplicateEdge(u, v));
                }
                self.insert_edge(u, v);
            }
            EventKind::RemoveEdge(u, v) => {
                if !self.has_edge(u, v) {
                    return Err(GraphError::UnknownEdge(u, v));
                }
                self.adj.get_mut(&u).expect("endpoint").remove(&v);
                self.adj.get_mut(&v).expect("endpoint").remove(&u);
                self.edge_count -= 1;
            }
        }
        Ok(())
    }

    /// Nodes adjacent to every member of `set`, excluding the members.
    pub fn common_neighbors(&self, set: &NodeSet) -> Result<NodeSet, GraphError> {
        let mut lists = Vec::with_capacity(set.len());
        for &n in set {
            lists.push(self.neighbors(n)?);
        }
        lists.sort_by_key(|nb| nb.len());
        let Some((first, rest)) = lists.split_first() else {
            return Ok(NodeSet::new());
        };
        Ok(first
            .iter()
            .filter(|c| !set.contains(c) && rest.iter().all(|nb| nb.contains(c)))
            .copied()
            .collect())
    }

    /// True when every pair of distinct nodes in `set` is connected.
    pub fn is_clique(&self, set: &NodeSet) -> bool {
        set.iter().all(|&u| {
            self.adj
                .get(&u)
                .is_some_and(|nb| set.iter().all(|&v| v == u || nb.contains(&v)))
        })
    }

    /// Subgraph induced by `set`; nodes of `set` absent from the graph are skipped.
    pub fn induced(&self, set: &NodeSet) -> DynamicGraph {
        let mut g = DynamicGraph::new();
        for &n in set {
            if let Some(nb) = self.adj.get(&n) {
                g.adj
                    .insert(n, nb.iter().filter(|m| set.contains(m)).copied().collect());
            }
        }
        g.edge_count = g.adj.values().map(|nb| nb.len()).sum::<usize>() / 2;
        g
    }

    /// Union of nodes and edges of both graphs.
    pub fn union(&self, other: &DynamicGraph) -> DynamicGraph {
        let mut g = self.clone();
        for n in other.nodes() {
            g.ensure_node(n);
        }
        for (u, v) in other.edges() {
            if !g.has_edge(u, v) {
                g.insert_edge(u, v);
            }
        }
        g
    }

    /// Verifies symmetry, endpoint existence and absence of self-loops.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut half_edges = 0;
        for (&u, nb) in &self.adj {
            for &v in nb {
                if u == v {
                    return Err(format!("self-loop on {u}"));
                }
                match self.adj.get(&v) {
                    None => return Err(format!("edge ({u}, {v}) has unknown endpoint {v}")),
                    Some(back) if !back.contains(&u) => {
                        return Err(format!("adjacency not symmetric for ({u}, {v})"))
                    }
                    _ => {}
                }
                half_edges += 1;
            }
        }
        if half_edges != 2 * self.edge_count {
            return Err(format!(
                "edge count {} disagrees with adjacency ({half_edges} half-edges)",
                self.edge_count
            ));
        }
        Ok(())
    }
}
