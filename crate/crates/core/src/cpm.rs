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

//! Static clique percolation on a whole graph.

use crate::clique::{adjacent_clique_groups, maximal_cliques, union_of};
use crate::cover::Cover;
use crate::error::GraphError;
use crate::graph::{DynamicGraph, NodeId, NodeSet};

/// One static CPM community with the maximal cliques it percolates from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CpmCommunity {
    pub members: NodeSet,
    pub cliques: Vec<NodeSet>,
}

/// Static CPM communities with their cliques, ordered by member set.
pub fn cpm_communities(g: &DynamicGraph, k: usize) -> Vec<CpmCommunity> {
    let cliques = maximal_cliques(g, k);
    let mut out: Vec<CpmCommunity> = adjacent_clique_groups(&cliques, k)
        .into_iter()
        .map(|group| {
            let cl: Vec<NodeSet> = group.into_iter().map(|i| cliques[i].clone()).collect();
            CpmCommunity {
                members: union_of(&cl),
                cliques: cl,
            }
        })
        .collect();
    out.sort_by(|a, b| a.members.cmp(&b.members));
    out
}

/// Static CPM: components of maximal cliques (at least `k` nodes) linked
/// by overlaps of at least `k - 1` nodes. Groups are numbered in member-set
/// order.
pub fn static_cpm(g: &DynamicGraph, k: usize) -> Cover {
    Cover::from_sets(cpm_communities(g, k).into_iter().map(|c| c.members))
}

/// [`static_cpm`] over an edge list.
pub fn static_cpm_edges<I>(edges: I, k: usize) -> Result<Cover, GraphError>
where
    I: IntoIterator<Item = (NodeId, NodeId)>,
{
    Ok(static_cpm(&DynamicGraph::from_edges(edges)?, k))
}
