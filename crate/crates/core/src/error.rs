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

use std::fmt;

use thiserror::Error;

use crate::graph::{NodeId, Timestamp};

/// Errors raised while parsing or applying graph events.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {reason}: {text:?}")]
    Parse {
        line: usize,
        text: String,
        reason: String,
    },
    #[error("node {0} already exists")]
    DuplicateNode(NodeId),
    #[error("node {0} does not exist")]
    UnknownNode(NodeId),
    #[error("edge ({0}, {1}) already exists")]
    DuplicateEdge(NodeId, NodeId),
    #[error("edge ({0}, {1}) does not exist")]
    UnknownEdge(NodeId, NodeId),
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),
    #[error("event at t={got} follows an event at t={last}; timestamps must be nondecreasing")]
    OutOfOrder { last: Timestamp, got: Timestamp },
}

impl GraphError {
    /// True for events that are inconsistent with the current graph. Such
    /// events are skipped by the stream driver; every other error aborts.
    pub fn is_rejection(&self) -> bool {
        matches!(
            self,
            GraphError::DuplicateNode(_)
                | GraphError::UnknownNode(_)
                | GraphError::DuplicateEdge(..)
                | GraphError::UnknownEdge(..)
                | GraphError::SelfLoop(_)
        )
    }
}

/// Errors raised by the community engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("clique size must be at least 3, got {0}")]
    InvalidCliqueSize(usize),
    #[error("community {0} is not alive")]
    UnknownCommunity(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Errors from file I/O and benchmark generation.
#[derive(Debug, Error)]
pub enum DataError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {reason}")]
    Format {
        path: String,
        line: usize,
        reason: String,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no planted community has both an internal edge and a missing internal pair")]
    NoModifiableCommunity,
}

impl DataError {
    pub(crate) fn io(path: impl fmt::Display, source: std::io::Error) -> Self {
        DataError::Io {
            path: path.to_string(),
            source,
        }
    }

    pub(crate) fn format(path: impl fmt::Display, line: usize, reason: impl Into<String>) -> Self {
        DataError::Format {
            path: path.to_string(),
            line,
            reason: reason.into(),
        }
    }
}
