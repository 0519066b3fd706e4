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

//! Python bindings: the online engine, static CPM, label propagation and NMI.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use olcpm_core::{
    bench, parse_events, propagate_labels as propagate, static_cpm as cpm, CliqueSize, CommunityId, Cover,
    DynamicGraph, Event, LifecycleEvent, NodeId, NodeSet, Ocpm,
};

type PyLifecycle = (u64, String, u64, Vec<u64>, Vec<u64>);
type PyCover = BTreeMap<u64, Vec<u64>>;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn lifecycle_tuple(ev: &LifecycleEvent) -> PyLifecycle {
    (
        ev.t.0,
        ev.kind.as_str().to_string(),
        ev.community.0,
        ev.nodes.iter().map(|n| n.0).collect(),
        ev.related.iter().map(|c| c.0).collect(),
    )
}

fn cover_dict(cover: &Cover) -> PyCover {
    cover
        .groups()
        .iter()
        .map(|(id, g)| (id.0, g.iter().map(|n| n.0).collect()))
        .collect()
}

fn cover_from_dict(d: PyCover) -> Cover {
    Cover::from_groups(
        d.into_iter()
            .map(|(id, nodes)| (CommunityId(id), nodes.into_iter().map(NodeId).collect::<NodeSet>())),
    )
}

fn graph_from_edges(edges: Vec<(u64, u64)>) -> PyResult<DynamicGraph> {
    DynamicGraph::from_edges(edges.into_iter().map(|(u, v)| (NodeId(u), NodeId(v)))).map_err(value_err)
}

/// Online clique percolation over a stream of graph events.
#[pyclass(module = "olcpm")]
pub struct Engine {
    inner: Ocpm,
}

impl Engine {
    fn apply(&mut self, ev: Event) -> PyResult<Vec<PyLifecycle>> {
        let out = self.inner.process_event(&ev).map_err(value_err)?;
        Ok(out.iter().map(lifecycle_tuple).collect())
    }
}

#[pymethods]
impl Engine {
    #[new]
    #[pyo3(signature = (k, implicit_nodes = false))]
    fn new(k: usize, implicit_nodes: bool) -> PyResult<Self> {
        let k = CliqueSize::new(k).map_err(value_err)?;
        Ok(Engine {
            inner: Ocpm::new(k).with_implicit_nodes(implicit_nodes),
        })
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    fn add_node(&mut self, t: u64, n: u64) -> PyResult<Vec<PyLifecycle>> {
        self.apply(Event::add_node(t, n))
    }

    fn remove_node(&mut self, t: u64, n: u64) -> PyResult<Vec<PyLifecycle>> {
        self.apply(Event::remove_node(t, n))
    }

    fn add_edge(&mut self, t: u64, u: u64, v: u64) -> PyResult<Vec<PyLifecycle>> {
        self.apply(Event::add_edge(t, u, v))
    }

    fn remove_edge(&mut self, t: u64, u: u64, v: u64) -> PyResult<Vec<PyLifecycle>> {
        self.apply(Event::remove_edge(t, u, v))
    }

    /// Apply every event in an event-file text, returning all lifecycle events.
    fn process(&mut self, text: &str) -> PyResult<Vec<PyLifecycle>> {
        let mut out = Vec::new();
        for ev in parse_events(text).map_err(value_err)? {
            out.extend(self.apply(ev)?);
        }
        Ok(out)
    }

    fn cover(&self) -> PyCover {
        cover_dict(&self.inner.cover())
    }

    #[pyo3(signature = (max_distance = None))]
    fn olcpm_cover(&self, max_distance: Option<u32>) -> PyCover {
        cover_dict(&propagate(self.inner.store(), self.inner.graph(), max_distance))
    }

    fn node_count(&self) -> usize {
        self.inner.graph().node_count()
    }

    fn edge_count(&self) -> usize {
        self.inner.graph().edge_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "Engine(k={}, nodes={}, edges={}, communities={})",
            self.inner.k(),
            self.inner.graph().node_count(),
            self.inner.graph().edge_count(),
            self.inner.store().alive_count()
        )
    }
}

/// Communities of a static edge list, keyed by an arbitrary id.
#[pyfunction]
fn static_cpm(edges: Vec<(u64, u64)>, k: usize) -> PyResult<PyCover> {
    let k = CliqueSize::new(k).map_err(value_err)?;
    Ok(cover_dict(&cpm(&graph_from_edges(edges)?, k.get())))
}

/// Static CPM followed by label propagation to the uncovered nodes.
#[pyfunction]
#[pyo3(signature = (edges, k, max_distance = None))]
fn propagate_labels(edges: Vec<(u64, u64)>, k: usize, max_distance: Option<u32>) -> PyResult<PyCover> {
    let k = CliqueSize::new(k).map_err(value_err)?;
    let mut engine = Ocpm::new(k).with_implicit_nodes(true);
    for (u, v) in edges {
        if u == v || engine.graph().has_edge(NodeId(u), NodeId(v)) {
            continue;
        }
        engine.process_event(&Event::add_edge(0, u, v)).map_err(value_err)?;
    }
    Ok(cover_dict(&propagate(engine.store(), engine.graph(), max_distance)))
}

/// Overlapping NMI between two covers given as `{id: [nodes]}`.
#[pyfunction]
fn nmi_covers(x: PyCover, y: PyCover) -> f64 {
    bench::nmi_covers(&cover_from_dict(x), &cover_from_dict(y))
}

#[pymodule]
fn olcpm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Engine>()?;
    m.add_function(wrap_pyfunction!(static_cpm, m)?)?;
    m.add_function(wrap_pyfunction!(propagate_labels, m)?)?;
    m.add_function(wrap_pyfunction!(nmi_covers, m)?)?;
    Ok(())
}
