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

//! Covers: possibly overlapping groups of nodes, and the one-group-per-line
//! text format.

use std::collections::BTreeMap;
use std::path::Path;

use crate::community::CommunityId;
use crate::error::DataError;
use crate::graph::{NodeId, NodeSet};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Cover {
    groups: BTreeMap<CommunityId, NodeSet>,
}

impl Cover {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a cover; empty groups are dropped.
    pub fn from_groups<I>(groups: I) -> Self
    where
        I: IntoIterator<Item = (CommunityId, NodeSet)>,
    {
        Cover {
            groups: groups.into_iter().filter(|(_, g)| !g.is_empty()).collect(),
        }
    }

    /// Builds a cover from anonymous groups, numbering them in order.
    pub fn from_sets<I>(sets: I) -> Self
    where
        I: IntoIterator<Item = NodeSet>,
    {
        Cover::from_groups(
            sets.into_iter()
                .enumerate()
                .map(|(i, s)| (CommunityId(i as u64), s)),
        )
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn groups(&self) -> &BTreeMap<CommunityId, NodeSet> {
        &self.groups
    }

    pub fn group(&self, id: CommunityId) -> Option<&NodeSet> {
        self.groups.get(&id)
    }

    pub fn insert(&mut self, id: CommunityId, nodes: NodeSet) {
        if !nodes.is_empty() {
            self.groups.insert(id, nodes);
        }
    }

    /// Member sets without their identifiers, sorted.
    pub fn member_sets(&self) -> Vec<NodeSet> {
        let mut v: Vec<NodeSet> = self.groups.values().cloned().collect();
        v.sort();
        v
    }

    /// Nodes belonging to at least one group.
    pub fn covered(&self) -> NodeSet {
        self.groups.values().flatten().copied().collect()
    }

    /// Groups containing `n`.
    pub fn memberships(&self, n: NodeId) -> Vec<CommunityId> {
        self.groups
            .iter()
            .filter(|(_, g)| g.contains(&n))
            .map(|(&id, _)| id)
            .collect()
    }

    /// One group per line, ascending node ids separated by single spaces,
    /// lines in identifier order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in self.groups.values() {
            let line: Vec<String> = g.iter().map(|n| n.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the one-group-per-line format. Groups are numbered by line
    /// order; blank and `#` lines are skipped.
    pub fn parse(text: &str, source: &str) -> Result<Cover, DataError> {
        let mut sets = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut set = NodeSet::new();
            for tok in line.split_whitespace() {
                let v: u64 = tok
                    .parse()
                    .map_err(|_| DataError::format(source, idx + 1, format!("invalid node id {tok:?}")))?;
                set.insert(NodeId(v));
            }
            sets.push(set);
        }
        Ok(Cover::from_sets(sets))
    }

    pub fn read(path: &Path) -> Result<Cover, DataError> {
        let text = std::fs::read_to_string(path).map_err(|e| DataError::io(path.display(), e))?;
        Cover::parse(&text, &path.display().to_string())
    }

    pub fn write(&self, path: &Path) -> Result<(), DataError> {
        std::fs::write(path, self.to_text()).map_err(|e| DataError::io(path.display(), e))
    }
}
