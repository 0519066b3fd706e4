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

//! Maximal clique enumeration and clique adjacency grouping.

use std::collections::{BTreeMap, HashMap};

use crate::error::GraphError;
use crate::graph::{DynamicGraph, NodeId, NodeSet};

/// Where [`k_cliques_containing`] searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliqueScope {
    /// Maximal cliques of the whole graph that contain the seed set. Only the
    /// seed and its common neighbors are explored.
    Neighborhood,
    /// Maximal cliques of the subgraph induced by the seed set.
    Induced,
}

/// Bron–Kerbosch with Tomita pivoting. `p` and `x` are already restricted to
/// the explored node set; cliques smaller than `min_size` are pruned.
fn bron_kerbosch(
    g: &DynamicGraph,
    r: &mut Vec<NodeId>,
    mut p: NodeSet,
    mut x: NodeSet,
    min_size: usize,
    out: &mut Vec<NodeSet>,
) {
    if p.is_empty() {
        if x.is_empty() && r.len() >= min_size {
            out.push(r.iter().copied().collect());
        }
        return;
    }
    if r.len() + p.len() < min_size {
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| {
            let nb = g.neighbors(u).expect("node in graph");
            (p.iter().filter(|v| nb.contains(v)).count(), std::cmp::Reverse(u))
        })
        .expect("p is nonempty");
    let pivot_nb = g.neighbors(pivot).expect("node in graph");
    let branch: Vec<NodeId> = p.iter().filter(|v| !pivot_nb.contains(v)).copied().collect();
    for v in branch {
        let nb = g.neighbors(v).expect("node in graph");
        let np: NodeSet = p.iter().filter(|w| nb.contains(w)).copied().collect();
        let nx: NodeSet = x.iter().filter(|w| nb.contains(w)).copied().collect();
        r.push(v);
        bron_kerbosch(g, r, np, nx, min_size, out);
        r.pop();
        p.remove(&v);
        x.insert(v);
    }
}

/// Maximal cliques of the subgraph induced by `nodes`, of size at least
/// `min_size`, sorted.
pub fn maximal_cliques_within(g: &DynamicGraph, nodes: &NodeSet, min_size: usize) -> Vec<NodeSet> {
    let present: NodeSet = nodes.iter().filter(|&&n| g.contains_node(n)).copied().collect();
    let mut out = Vec::new();
    bron_kerbosch(g, &mut Vec::new(), present, NodeSet::new(), min_size, &mut out);
    out.sort();
    out
}

/// All maximal cliques of `g` with at least `min_size` nodes, sorted.
///
/// Each vertex roots one search over its later neighbors, excluding earlier
/// ones, so sparse graphs never build a global candidate set.
pub fn maximal_cliques(g: &DynamicGraph, min_size: usize) -> Vec<NodeSet> {
    let mut out = Vec::new();
    let mut r = Vec::new();
    for v in g.nodes() {
        let nb = g.neighbors(v).expect("node in graph");
        if nb.len() + 1 < min_size {
            continue;
        }
        let p: NodeSet = nb.range(v..).copied().collect();
        let x: NodeSet = nb.range(..v).copied().collect();
        r.push(v);
        bron_kerbosch(g, &mut r, p, x, min_size, &mut out);
        r.pop();
    }
    out.sort();
    out
}

/// Maximal cliques of size at least `k` related to `seed`, per `scope`.
pub fn k_cliques_containing(
    g: &DynamicGraph,
    seed: &NodeSet,
    k: usize,
    scope: CliqueScope,
) -> Result<Vec<NodeSet>, GraphError> {
    for &n in seed {
        if !g.contains_node(n) {
            return Err(GraphError::UnknownNode(n));
        }
    }
    match scope {
        CliqueScope::Induced => Ok(maximal_cliques_within(g, seed, k)),
        CliqueScope::Neighborhood => {
            if seed.is_empty() || !g.is_clique(seed) {
                return Ok(Vec::new());
            }
            let common = g.common_neighbors(seed)?;
            let mut out: Vec<NodeSet> = if common.is_empty() {
                vec![seed.clone()]
            } else {
                maximal_cliques_within(g, &common, 0)
                    .into_iter()
                    .map(|mut c| {
                        c.extend(seed.iter().copied());
                        c
                    })
                    .collect()
            };
            out.retain(|c| c.len() >= k);
            out.sort();
            Ok(out)
        }
    }
}

/// Union–find over dense indices.
#[derive(Debug, Clone)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Members of each class, classes ordered by their smallest member.
    pub(crate) fn classes(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.parent.len() {
            let r = self.find(i);
            by_root.entry(r).or_default().push(i);
        }
        by_root.into_values().collect()
    }
}

/// Pairs of cliques (by index) sharing at least `k - 1` nodes.
pub(crate) fn adjacent_pairs(cliques: &[NodeSet], k: usize) -> Vec<(usize, usize)> {
    let mut by_node: HashMap<NodeId, Vec<usize>> = HashMap::new();
    for (i, c) in cliques.iter().enumerate() {
        for &n in c {
            by_node.entry(n).or_default().push(i);
        }
    }
    let mut pairs = Vec::new();
    let mut shared: HashMap<usize, usize> = HashMap::new();
    for (i, c) in cliques.iter().enumerate() {
        shared.clear();
        for n in c {
            for &j in &by_node[n] {
                if j > i {
                    *shared.entry(j).or_default() += 1;
                }
            }
        }
        let mut adj: Vec<usize> = shared
            .iter()
            .filter(|&(_, &s)| s + 1 >= k)
            .map(|(&j, _)| j)
            .collect();
        adj.sort_unstable();
        pairs.extend(adj.into_iter().map(|j| (i, j)));
    }
    pairs
}

/// Partitions cliques into connected components of the relation "share at
/// least `k - 1` nodes". Returns index groups ordered by smallest index.
pub fn adjacent_clique_groups(cliques: &[NodeSet], k: usize) -> Vec<Vec<usize>> {
    let mut sets = DisjointSets::new(cliques.len());
    for (a, b) in adjacent_pairs(cliques, k) {
        sets.union(a, b);
    }
    sets.classes()
}

/// Node union of the given cliques.
pub fn union_of<'a, I>(cliques: I) -> NodeSet
where
    I: IntoIterator<Item = &'a NodeSet>,
{
    cliques.into_iter().flat_map(|c| c.iter().copied()).collect()
}
