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

//! Timestamped graph events and the line-oriented event file format.
//!
//! One event per line, whitespace separated:
//!
//! ```text
//! <t> AN <n>        add node
//! <t> RN <n>        remove node
//! <t> AE <u> <v>    add edge
//! <t> RE <u> <v>    remove edge
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt;
use std::path::Path;

use crate::error::{DataError, GraphError};
use crate::graph::{NodeId, Timestamp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    AddNode(NodeId),
    RemoveNode(NodeId),
    AddEdge(NodeId, NodeId),
    RemoveEdge(NodeId, NodeId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Event {
    pub t: Timestamp,
    pub kind: EventKind,
}

impl Event {
    pub fn new(t: Timestamp, kind: EventKind) -> Self {
        Event { t, kind }
    }

    pub fn add_node(t: u64, n: u64) -> Self {
        Event::new(Timestamp(t), EventKind::AddNode(NodeId(n)))
    }

    pub fn remove_node(t: u64, n: u64) -> Self {
        Event::new(Timestamp(t), EventKind::RemoveNode(NodeId(n)))
    }

    pub fn add_edge(t: u64, u: u64, v: u64) -> Self {
        Event::new(Timestamp(t), EventKind::AddEdge(NodeId(u), NodeId(v)))
    }

    pub fn remove_edge(t: u64, u: u64, v: u64) -> Self {
        Event::new(Timestamp(t), EventKind::RemoveEdge(NodeId(u), NodeId(v)))
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            EventKind::AddNode(n) => write!(f, "{} AN {}", self.t, n),
            EventKind::RemoveNode(n) => write!(f, "{} RN {}", self.t, n),
            EventKind::AddEdge(u, v) => write!(f, "{} AE {} {}", self.t, u, v),
            EventKind::RemoveEdge(u, v) => write!(f, "{} RE {} {}", self.t, u, v),
        }
    }
}

fn parse_id(tok: &str, what: &str) -> Result<u64, String> {
    if tok.starts_with('-') {
        return Err(format!("negative {what} {tok}"));
    }
    tok.parse::<u64>().map_err(|_| format!("invalid {what} {tok:?}"))
}

/// Parses one event line. `line_no` is only used in error messages.
pub fn parse_event_line(line: &str, line_no: usize) -> Result<Event, GraphError> {
    let err = |reason: String| GraphError::Parse {
        line: line_no,
        text: line.to_string(),
        reason,
    };
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() < 3 {
        return Err(err("expected `<t> <AN|RN|AE|RE> <ids>`".into()));
    }
    let t = Timestamp(parse_id(toks[0], "timestamp").map_err(err)?);
    let arity = match toks[1] {
        "AN" | "RN" => 1,
        "AE" | "RE" => 2,
        other => return Err(err(format!("unknown event code {other:?}"))),
    };
    if toks.len() != 2 + arity {
        return Err(err(format!(
            "{} takes {arity} node id(s), got {}",
            toks[1],
            toks.len() - 2
        )));
    }
    let a = NodeId(parse_id(toks[2], "node id").map_err(err)?);
    let kind = if arity == 1 {
        if toks[1] == "AN" {
            EventKind::AddNode(a)
        } else {
            EventKind::RemoveNode(a)
        }
    } else {
        let b = NodeId(parse_id(toks[3], "node id").map_err(err)?);
        if a == b {
            return Err(err(format!("self-loop on node {a}")));
        }
        if toks[1] == "AE" {
            EventKind::AddEdge(a, b)
        } else {
            EventKind::RemoveEdge(a, b)
        }
    };
    Ok(Event { t, kind })
}

/// Parses a whole event stream, skipping comments and blank lines and
/// rejecting decreasing timestamps.
pub fn parse_events(text: &str) -> Result<Vec<Event>, GraphError> {
    let mut events = Vec::new();
    let mut last = Timestamp(0);
    for (idx, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let ev = parse_event_line(trimmed, idx + 1)?;
        if ev.t < last {
            return Err(GraphError::OutOfOrder { last, got: ev.t });
        }
        last = ev.t;
        events.push(ev);
    }
    Ok(events)
}

pub fn read_event_file(path: &Path) -> Result<Vec<Event>, DataError> {
    let text = std::fs::read_to_string(path).map_err(|e| DataError::io(path.display(), e))?;
    parse_events(&text).map_err(|e| match e {
        GraphError::Parse { line, reason, .. } => DataError::format(path.display(), line, reason),
        other => other.into(),
    })
}

/// Serializes events one per line in canonical form.
pub fn format_events(events: &[Event]) -> String {
    let mut out = String::new();
    for ev in events {
        out.push_str(&ev.to_string());
        out.push('\n');
    }
    out
}

pub fn write_event_file(path: &Path, events: &[Event]) -> Result<(), DataError> {
    std::fs::write(path, format_events(events)).map_err(|e| DataError::io(path.display(), e))
}
