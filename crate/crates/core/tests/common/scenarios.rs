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

//! The worked examples of the lifecycle operations, encoded as small
//! graphs. Each check returns a description of the first mismatch.
#![allow(dead_code)]

use olcpm_core::{CliqueSize, CommunityId, Event, LifecycleEvent, LifecycleKind, NodeId, NodeSet, Ocpm};

type Check = Result<(), String>;

fn set(v: &[u64]) -> NodeSet {
    v.iter().map(|&x| NodeId(x)).collect()
}

fn build(k: usize, edges: &[(u64, u64)]) -> Ocpm {
    let mut e = Ocpm::new(CliqueSize::new(k).unwrap()).with_implicit_nodes(true);
    for &(u, v) in edges {
        e.process_event(&Event::add_edge(0, u, v)).unwrap();
    }
    e
}

fn clique(nodes: &[u64]) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for (i, &u) in nodes.iter().enumerate() {
        for &v in &nodes[i + 1..] {
            out.push((u, v));
        }
    }
    out
}

fn id_of(e: &Ocpm, members: &[u64]) -> Result<CommunityId, String> {
    let want = set(members);
    e.store()
        .alive()
        .find(|c| c.members == want)
        .map(|c| c.id)
        .ok_or_else(|| format!("no community {want:?}; have {:?}", e.store().member_sets()))
}

fn expect_sets(e: &Ocpm, want: &[&[u64]]) -> Check {
    let mut w: Vec<NodeSet> = want.iter().map(|s| set(s)).collect();
    w.sort();
    let got = e.store().member_sets();
    if got == w {
        Ok(())
    } else {
        Err(format!("communities {got:?}, expected {w:?}"))
    }
}

fn kinds(evs: &[LifecycleEvent]) -> Vec<LifecycleKind> {
    evs.iter().map(|e| e.kind).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn step(e: &mut Ocpm, ev: Event) -> Vec<LifecycleEvent> {
    e.process_event(&ev).unwrap()
}

/// k=3: edge (1,2) closes triangles {1,2,3} and {1,2,4}.
pub fn birth_k3() -> Check {
    let mut e = build(3, &[(1, 3), (1, 4), (2, 3), (2, 4)]);
    expect_sets(&e, &[])?;
    let evs = step(&mut e, Event::add_edge(1, 1, 2));
    ensure(kinds(&evs) == [LifecycleKind::Birth], || format!("{evs:?}"))?;
    ensure(evs[0].nodes == set(&[1, 2, 3, 4]), || format!("{evs:?}"))?;
    expect_sets(&e, &[&[1, 2, 3, 4]])
}

/// k=4: edge (1,2) creates two non-adjacent groups of 4-cliques.
pub fn two_births_k4() -> Check {
    let mut edges = vec![(1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
    edges.extend([(1, 5), (1, 6), (2, 5), (2, 6), (5, 6), (1, 7), (2, 7), (6, 7)]);
    let mut e = build(4, &edges);
    let evs = step(&mut e, Event::add_edge(1, 1, 2));
    ensure(kinds(&evs) == [LifecycleKind::Birth, LifecycleKind::Birth], || format!("{evs:?}"))?;
    let mut born: Vec<NodeSet> = evs.iter().map(|x| x.nodes.clone()).collect();
    born.sort();
    ensure(born == [set(&[1, 2, 3, 4]), set(&[1, 2, 5, 6, 7])], || format!("{born:?}"))?;
    expect_sets(&e, &[&[1, 2, 3, 4], &[1, 2, 5, 6, 7]])
}

/// k=3: edge (3,5) closes {3,4,5}; {1,2,3,4,6} grows with 5.
pub fn simple_growth() -> Check {
    let mut e = build(3, &[(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (1, 6), (2, 6), (4, 5)]);
    let id = id_of(&e, &[1, 2, 3, 4, 6])?;
    let evs = step(&mut e, Event::add_edge(1, 3, 5));
    ensure(kinds(&evs) == [LifecycleKind::Growth], || format!("{evs:?}"))?;
    ensure(evs[0].community == id && evs[0].nodes == set(&[5]), || format!("{evs:?}"))?;
    expect_sets(&e, &[&[1, 2, 3, 4, 5, 6]])
}

/// k=3: edge (4,7) makes both communities grow with 7; they merge and the
/// larger one keeps its identity.
pub fn growth_then_merge() -> Check {
    let mut edges = clique(&[1, 2, 3, 4]);
    edges.extend([(4, 5), (4, 6), (5, 6), (3, 7), (5, 7)]);
    let mut e = build(3, &edges);
    let a = id_of(&e, &[1, 2, 3, 4])?;
    let b = id_of(&e, &[4, 5, 6])?;
    let evs = step(&mut e, Event::add_edge(1, 4, 7));
    let growths: Vec<_> = evs.iter().filter(|x| x.kind == LifecycleKind::Growth).collect();
    ensure(growths.len() == 2 && growths.iter().all(|g| g.nodes.contains(&NodeId(7))), || {
        format!("expected both communities to grow with 7: {evs:?}")
    })?;
    let merge = evs.iter().find(|x| x.kind == LifecycleKind::Merge).ok_or("no merge")?;
    ensure(merge.community == a && merge.related == [b], || format!("{merge:?}"))?;
    ensure(merge.nodes == set(&[1, 2, 3, 4, 5, 6, 7]), || format!("{merge:?}"))?;
    expect_sets(&e, &[&[1, 2, 3, 4, 5, 6, 7]])?;
    ensure(e.store().get(b).is_some_and(|c| !c.is_alive()), || "absorbed community still alive".into())
}

/// k=3: edge (3,6) creates a group of triangles adjacent to no community.
pub fn new_community_from_internal_node() -> Check {
    let mut edges = clique(&[1, 2, 3, 4]);
    edges.extend([(3, 5), (3, 7), (5, 6), (6, 7)]);
    let mut e = build(3, &edges);
    let evs = step(&mut e, Event::add_edge(1, 3, 6));
    ensure(kinds(&evs) == [LifecycleKind::Birth], || format!("{evs:?}"))?;
    ensure(evs[0].nodes == set(&[3, 5, 6, 7]), || format!("{evs:?}"))?;
    expect_sets(&e, &[&[1, 2, 3, 4], &[3, 5, 6, 7]])
}

/// k=3: edge (3,5) between two communities; both grow and merge.
pub fn internal_edge_merge() -> Check {
    let edges = [(1, 3), (1, 4), (3, 4), (2, 3), (2, 4), (2, 5), (2, 6), (5, 6), (2, 7), (6, 7), (1, 5)];
    let mut e = build(3, &edges);
    expect_sets(&e, &[&[1, 2, 3, 4], &[2, 5, 6, 7]])?;
    let b = id_of(&e, &[2, 5, 6, 7])?;
    let a = id_of(&e, &[1, 2, 3, 4])?;
    let evs = step(&mut e, Event::add_edge(1, 3, 5));
    let n_growth = evs.iter().filter(|x| x.kind == LifecycleKind::Growth).count();
    ensure(n_growth == 2, || format!("{evs:?}"))?;
    let merge = evs.iter().find(|x| x.kind == LifecycleKind::Merge).ok_or("no merge")?;
    // After growth {2,5,6,7} has six members against five.
    ensure(merge.community == b && merge.related == [a], || format!("{merge:?}"))?;
    expect_sets(&e, &[&[1, 2, 3, 4, 5, 6, 7]])
}

/// k=3: edge (1,8) joins one community through three new triangles; the
/// other community of 8 is not adjacent to them and is left alone.
pub fn internal_edge_growth() -> Check {
    let mut edges = vec![(1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (1, 6), (2, 6)];
    edges.extend([(8, 9), (9, 10), (8, 10), (2, 8), (5, 8), (7, 8), (1, 5), (1, 7)]);
    let mut e = build(3, &edges);
    expect_sets(&e, &[&[1, 2, 3, 4, 6], &[8, 9, 10]])?;
    let a = id_of(&e, &[1, 2, 3, 4, 6])?;
    let evs = step(&mut e, Event::add_edge(1, 1, 8));
    ensure(kinds(&evs) == [LifecycleKind::Growth], || format!("{evs:?}"))?;
    ensure(evs[0].community == a && evs[0].nodes == set(&[5, 7, 8]), || format!("{evs:?}"))?;
    expect_sets(&e, &[&[1, 2, 3, 4, 5, 6, 7, 8], &[8, 9, 10]])
}

/// k=3: removing node 4 drops {4,5,6} from {1,...,6}.
pub fn node_removal_shrink() -> Check {
    let mut e = build(3, &[(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (3, 5), (4, 5), (4, 6), (5, 6)]);
    let id = id_of(&e, &[1, 2, 3, 4, 5, 6])?;
    let evs = step(&mut e, Event::remove_node(1, 4));
    ensure(kinds(&evs) == [LifecycleKind::Shrink], || format!("{evs:?}"))?;
    ensure(evs[0].community == id && evs[0].nodes == set(&[4, 5, 6]), || format!("{evs:?}"))?;
    expect_sets(&e, &[&[1, 2, 3]])
}

/// k=3: removing node 4 splits {1,...,8} into {5,6,7,8} and {1,2,3}.
pub fn node_removal_split() -> Check {
    let edges = [
        (1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (3, 5), (4, 5), (4, 6), (5, 6), (5, 7), (6, 7), (6, 8), (7, 8),
    ];
    let mut e = build(3, &edges);
    let id = id_of(&e, &[1, 2, 3, 4, 5, 6, 7, 8])?;
    let evs = step(&mut e, Event::remove_node(1, 4));
    expect_sets(&e, &[&[1, 2, 3], &[5, 6, 7, 8]])?;
    ensure(id_of(&e, &[5, 6, 7, 8])? == id, || "larger part lost the identity".into())?;
    let split = evs.iter().find(|x| x.kind == LifecycleKind::Split).ok_or("no split")?;
    ensure(split.community == id && split.nodes == set(&[1, 2, 3]), || format!("{split:?}"))?;
    ensure(evs.iter().any(|x| x.kind == LifecycleKind::Shrink && x.nodes == set(&[4])), || {
        format!("no shrink of node 4: {evs:?}")
    })
}

/// k=4: removing node 6 shrinks {1,2,3,4,6} and kills {3,5,6,7}.
pub fn node_removal_death() -> Check {
    let mut edges = clique(&[1, 2, 3, 4]);
    edges.extend(clique(&[2, 3, 4, 6]));
    edges.extend(clique(&[3, 5, 6, 7]));
    edges.sort();
    edges.dedup();
    let mut e = build(4, &edges);
    expect_sets(&e, &[&[1, 2, 3, 4, 6], &[3, 5, 6, 7]])?;
    let a = id_of(&e, &[1, 2, 3, 4, 6])?;
    let b = id_of(&e, &[3, 5, 6, 7])?;
    let evs = step(&mut e, Event::remove_node(1, 6));
    let death = evs.iter().find(|x| x.kind == LifecycleKind::Death).ok_or("no death")?;
    ensure(death.community == b && death.nodes == set(&[3, 5, 6, 7]), || format!("{death:?}"))?;
    let shrink = evs.iter().find(|x| x.kind == LifecycleKind::Shrink).ok_or("no shrink")?;
    ensure(shrink.community == a && shrink.nodes == set(&[6]), || format!("{shrink:?}"))?;
    expect_sets(&e, &[&[1, 2, 3, 4]])
}

/// k=4: removing edge (4,7) from a 5-clique leaves two adjacent 4-cliques.
pub fn edge_removal_no_change() -> Check {
    let mut e = build(4, &clique(&[1, 2, 3, 4, 7]));
    let id = id_of(&e, &[1, 2, 3, 4, 7])?;
    let evs = step(&mut e, Event::remove_edge(1, 4, 7));
    ensure(evs.is_empty(), || format!("{evs:?}"))?;
    expect_sets(&e, &[&[1, 2, 3, 4, 7]])?;
    ensure(id_of(&e, &[1, 2, 3, 4, 7])? == id, || "identity changed".into())
}

/// k=4: removing edge (4,6) breaks the bridging clique {2,3,4,6}.
pub fn edge_removal_split() -> Check {
    let mut edges = clique(&[1, 2, 3, 4]);
    edges.extend(clique(&[2, 3, 4, 6]));
    edges.extend(clique(&[2, 3, 6, 7, 8]));
    edges.sort();
    edges.dedup();
    let mut e = build(4, &edges);
    expect_sets(&e, &[&[1, 2, 3, 4, 6, 7, 8]])?;
    let id = id_of(&e, &[1, 2, 3, 4, 6, 7, 8])?;
    let evs = step(&mut e, Event::remove_edge(1, 4, 6));
    expect_sets(&e, &[&[1, 2, 3, 4], &[2, 3, 6, 7, 8]])?;
    ensure(id_of(&e, &[2, 3, 6, 7, 8])? == id, || "larger part lost the identity".into())?;
    let split = evs.iter().find(|x| x.kind == LifecycleKind::Split).ok_or("no split")?;
    ensure(split.community == id && split.nodes == set(&[1, 2, 3, 4]), || format!("{split:?}"))
}

pub const ALL: &[(&str, fn() -> Check)] = &[
    ("birth_k3", birth_k3),
    ("two_births_k4", two_births_k4),
    ("simple_growth", simple_growth),
    ("growth_then_merge", growth_then_merge),
    ("new_community_from_internal_node", new_community_from_internal_node),
    ("internal_edge_merge", internal_edge_merge),
    ("internal_edge_growth", internal_edge_growth),
    ("node_removal_shrink", node_removal_shrink),
    ("node_removal_split", node_removal_split),
    ("node_removal_death", node_removal_death),
    ("edge_removal_no_change", edge_removal_no_change),
    ("edge_removal_split", edge_removal_split),
];
