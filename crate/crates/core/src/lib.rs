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

//! Overlapping community detection on edge streams by online clique
//! percolation, with a label-propagation post-process, a snapshot-based
//! baseline and benchmarking utilities.
//!
//! ```
//! use olcpm_core::{CliqueSize, Event, Ocpm};
//!
//! let mut engine = Ocpm::new(CliqueSize::new(3).unwrap()).with_implicit_nodes(true);
//! for (u, v) in [(1, 2), (2, 3), (1, 3)] {
//!     engine.process_event(&Event::add_edge(0, u, v)).unwrap();
//! }
//! assert_eq!(engine.store().alive_count(), 1);
//! ```

pub mod bench;
pub mod clique;
pub mod community;
pub mod cover;
pub mod cpm;
pub mod dycpm;
pub mod engine;
pub mod error;
pub mod event;
pub mod graph;
pub mod label;

pub use community::{Community, CommunityId, CommunityStore, LifecycleEvent, LifecycleKind};
pub use cover::Cover;
pub use cpm::static_cpm;
pub use dycpm::{match_snapshots, DycpmResult, DycpmTracker, SnapshotSeries};
pub use engine::{CliqueSize, Ocpm};
pub use error::{DataError, EngineError, GraphError};
pub use event::{parse_events, read_event_file, Event, EventKind};
pub use graph::{DynamicGraph, NodeId, NodeSet, Timestamp};
pub use label::propagate_labels;
