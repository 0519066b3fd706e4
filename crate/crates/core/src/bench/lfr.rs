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

//! Planted networks and the LFR file formats.
//!
//! Network file: one `u v` edge per line (extra columns ignored).
//! Community file: `node community_id [community_id ...]` per line.

use std::collections::BTreeMap;
use std::path::Path;

use crate::community::CommunityId;
use crate::cover::Cover;
use crate::dycpm::{parse_edge_list, write_edge_list};
use crate::error::DataError;
use crate::graph::{DynamicGraph, NodeId, NodeSet};

/// A static network with its ground-truth cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedNetwork {
    pub graph: DynamicGraph,
    pub ground_truth: Cover,
}

impl PlantedNetwork {
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        self.graph.edges().collect()
    }
}

pub fn parse_lfr(network: &str, communities: &str, source: &str) -> Result<PlantedNetwork, DataError> {
    let graph = parse_edge_list(network, source)?;
    let mut groups: BTreeMap<CommunityId, NodeSet> = BTreeMap::new();
    for (idx, line) in communities.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut ids = Vec::new();
        for tok in line.split_whitespace() {
            ids.push(
                tok.parse::<u64>()
                    .map_err(|_| DataError::format(source, idx + 1, format!("invalid id {tok:?}")))?,
            );
        }
        let (&node, comms) = ids
            .split_first()
            .ok_or_else(|| DataError::format(source, idx + 1, "empty line"))?;
        if comms.is_empty() {
            return Err(DataError::format(source, idx + 1, format!("node {node} has no community")));
        }
        if !graph.contains_node(NodeId(node)) {
            return Err(DataError::format(
                source,
                idx + 1,
                format!("node {node} is absent from the network file"),
            ));
        }
        for &c in comms {
            groups.entry(CommunityId(c)).or_default().insert(NodeId(node));
        }
    }
    Ok(PlantedNetwork {
        graph,
        ground_truth: Cover::from_groups(groups),
    })
}

pub fn load_lfr(network_file: &Path, community_file: &Path) -> Result<PlantedNetwork, DataError> {
    let net = std::fs::read_to_string(network_file).map_err(|e| DataError::io(network_file.display(), e))?;
    let com = std::fs::read_to_string(community_file).map_err(|e| DataError::io(community_file.display(), e))?;
    parse_lfr(&net, &com, &community_file.display().to_string())
}

/// Community file text: nodes ascending, each followed by its community ids.
pub fn community_file_text(cover: &Cover) -> String {
    let mut by_node: BTreeMap<NodeId, Vec<CommunityId>> = BTreeMap::new();
    for (&id, g) in cover.groups() {
        for &n in g {
            by_node.entry(n).or_default().push(id);
        }
    }
    let mut out = String::new();
    for (n, ids) in by_node {
        out.push_str(&n.to_string());
        for id in ids {
            out.push(' ');
            out.push_str(&id.to_string());
        }
        out.push('\n');
    }
    out
}

pub fn save_lfr(net: &PlantedNetwork, network_file: &Path, community_file: &Path) -> Result<(), DataError> {
    write_edge_list(network_file, &net.graph)?;
    std::fs::write(community_file, community_file_text(&net.ground_truth))
        .map_err(|e| DataError::io(community_file.display(), e))
}
