//! Simple undirected graphs, plane trees and generalized Halin graphs,
//! together with the structural queries the certifier relies on.

mod balloon;
mod degeneracy;
mod generate;
mod halin;
mod tree;

pub use balloon::{find_odd_balloons, Balloon};
pub use degeneracy::{degeneracy_ordering, DegeneracyOrdering};
pub use generate::random_plane_tree;
pub use halin::{build_halin, HalinGraph, HalinKind};
pub use tree::PlaneTree;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type VertexId = u32;

/// Unordered vertex pair, stored with the smaller id first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(VertexId, VertexId);

impl Edge {
    /// Panics on a loop; use [`Edge::try_new`] for untrusted input.
    pub fn new(a: VertexId, b: VertexId) -> Edge {
        Edge::try_new(a, b).expect("loop edge")
    }

    pub fn try_new(a: VertexId, b: VertexId) -> Result<Edge> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge(a, b)),
            std::cmp::Ordering::Greater => Ok(Edge(b, a)),
            std::cmp::Ordering::Equal => Err(Error::Loop(a)),
        }
    }

    pub fn low(self) -> VertexId {
        self.0
    }

    pub fn high(self) -> VertexId {
        self.1
    }

    pub fn ends(self) -> (VertexId, VertexId) {
        (self.0, self.1)
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn other(self, v: VertexId) -> VertexId {
        if self.0 == v {
            self.1
        } else {
            debug_assert_eq!(self.1, v);
            self.0
        }
    }

    pub fn shares_end(self, other: Edge) -> Option<VertexId> {
        if self == other {
            return None;
        }
        if other.contains(self.0) {
            Some(self.0)
        } else if other.contains(self.1) {
            Some(self.1)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

impl FromStr for Edge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Edge> {
        let (a, b) = s
            .split_once('-')
            .ok_or_else(|| Error::Parse(format!("edge key {s:?} is not of the form u-v")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<VertexId>()
                .map_err(|_| Error::Parse(format!("bad vertex id in edge key {s:?}")))
        };
        Edge::try_new(parse(a)?, parse(b)?)
    }
}

/// A vertex or an edge: the index set of total weightings and index functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Edge(Edge),
    Vertex(VertexId),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Edge(e) => write!(f, "edge {e}"),
            Element::Vertex(v) => write!(f, "vertex {v}"),
        }
    }
}

/// Simple undirected graph. Vertices and edges are kept sorted, which fixes
/// the canonical row/column order used everywhere else.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
    vertex_pos: BTreeMap<VertexId, usize>,
    edge_pos: BTreeMap<Edge, usize>,
    // incident edge indices per vertex index, sorted
    incident: Vec<Vec<usize>>,
}

/// Builds a graph from an edge list; duplicates collapse, loops are rejected.
pub fn build_graph(edge_list: &[(VertexId, VertexId)]) -> Result<Graph> {
    let edges = edge_list
        .iter()
        .map(|&(a, b)| Edge::try_new(a, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(Graph::from_parts(std::iter::empty(), edges))
}

impl Graph {
    /// Vertices not touched by any edge may be listed in `vertices`.
    pub fn from_parts(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Graph {
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        let mut vset: BTreeSet<VertexId> = vertices.into_iter().collect();
        for e in &edges {
            vset.insert(e.0);
            vset.insert(e.1);
        }
        let vertices: Vec<VertexId> = vset.into_iter().collect();
        let edges: Vec<Edge> = edges.into_iter().collect();
        let vertex_pos: BTreeMap<VertexId, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edge_pos = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut incident = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            incident[vertex_pos[&e.0]].push(i);
            incident[vertex_pos[&e.1]].push(i);
        }
        Graph {
            vertices,
            edges,
            vertex_pos,
            edge_pos,
            incident,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertex_pos.contains_key(&v)
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edge_pos.contains_key(&e)
    }

    pub fn vertex_index(&self, v: VertexId) -> Option<usize> {
        self.vertex_pos.get(&v).copied()
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edge_pos.get(&e).copied()
    }

    /// Edges incident to `v`, in canonical order. Empty for unknown vertices.
    pub fn incident_edges(&self, v: VertexId) -> impl Iterator<Item = Edge> + '_ {
        self.vertex_pos
            .get(&v)
            .into_iter()
            .flat_map(move |&i| self.incident[i].iter().map(move |&k| self.edges[k]))
    }

    pub fn incident_edge_indices(&self, v: VertexId) -> &[usize] {
        match self.vertex_pos.get(&v) {
            Some(&i) => &self.incident[i],
            None => &[],
        }
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incident_edges(v).map(move |e| e.other(v))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident_edge_indices(v).len()
    }

    pub fn is_connected(&self) -> bool {
        match self.vertices.first() {
            None => true,
            Some(&start) => self.component_of(start).len() == self.vertices.len(),
        }
    }

    pub fn component_of(&self, start: VertexId) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if seen.insert(u) {
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &v in &self.vertices {
            if !seen.contains(&v) {
                let comp = self.component_of(v);
                seen.extend(comp.iter().copied());
                out.push(comp);
            }
        }
        out
    }

    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Graph {
        Graph::from_parts(
            keep.iter().copied().filter(|v| self.contains_vertex(*v)),
            self.edges
                .iter()
                .copied()
                .filter(|e| keep.contains(&e.0) && keep.contains(&e.1)),
        )
    }

    pub fn without_vertex(&self, v: VertexId) -> Graph {
        let keep = self.vertices.iter().copied().filter(|&u| u != v).collect();
        self.induced(&keep)
    }

    /// Same vertex set, only the listed edges removed.
    pub fn without_edges(&self, drop: &BTreeSet<Edge>) -> Graph {
        Graph::from_parts(
            self.vertices.iter().copied(),
            self.edges.iter().copied().filter(|e| !drop.contains(e)),
        )
    }

    /// Proper 2-colouring, or an odd cycle as witness.
    pub fn bipartition(&self) -> Result<Bipartition> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let Some(&start) = self.vertices.first() else {
            return Ok(Bipartition::TwoColoring(BTreeMap::new()));
        };
        let mut color: BTreeMap<VertexId, bool> = BTreeMap::from([(start, false)]);
        let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        let mut depth: BTreeMap<VertexId, usize> = BTreeMap::from([(start, 0)]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                match color.get(&u) {
                    None => {
                        color.insert(u, !color[&v]);
                        parent.insert(u, v);
                        depth.insert(u, depth[&v] + 1);
                        queue.push_back(u);
                    }
                    Some(&c) if c == color[&v] => {
                        // climb both BFS branches to their meeting point
                        let (mut a, mut b) = (v, u);
                        let mut left = vec![a];
                        let mut right = vec![b];
                        while depth[&a] > depth[&b] {
                            a = parent[&a];
                            left.push(a);
                        }
                        while depth[&b] > depth[&a] {
                            b = parent[&b];
                            right.push(b);
                        }
                        while a != b {
                            a = parent[&a];
                            b = parent[&b];
                            left.push(a);
                            right.push(b);
                        }
                        right.pop();
                        right.reverse();
                        left.extend(right);
                        return Ok(Bipartition::OddCycle(left));
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(Bipartition::TwoColoring(color))
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self.bipartition(), Ok(Bipartition::TwoColoring(_)))
    }

    /// BFS shortest path (smallest ids first) avoiding `blocked` vertices.
    pub fn shortest_path(
        &self,
        from: VertexId,
        to: VertexId,
        blocked: &BTreeSet<VertexId>,
    ) -> Option<Vec<VertexId>> {
        if !self.contains_vertex(from) || !self.contains_vertex(to) {
            return None;
        }
        let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        let mut seen = BTreeSet::from([from]);
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = parent[&cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for u in self.neighbors(v) {
                if blocked.contains(&u) && u != to {
                    continue;
                }
                if seen.insert(u) {
                    parent.insert(u, v);
                    queue.push_back(u);
                }
            }
        }
        None
    }

    /// Graph distance from `from` to every reachable vertex.
    pub fn distances(&self, from: VertexId) -> BTreeMap<VertexId, usize> {
        let mut dist = BTreeMap::from([(from, 0usize)]);
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            for u in self.neighbors(v) {
                if let std::collections::btree_map::Entry::Vacant(slot) = dist.entry(u) {
                    slot.insert(d + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Base column order of the coefficient matrix: all edges, then all vertices.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.edges
            .iter()
            .map(|&e| Element::Edge(e))
            .chain(self.vertices.iter().map(|&v| Element::Vertex(v)))
    }

    pub fn element_index(&self, z: Element) -> Option<usize> {
        match z {
            Element::Edge(e) => self.edge_index(e),
            Element::Vertex(v) => self.vertex_index(v).map(|i| i + self.edges.len()),
        }
    }

    pub fn element_at(&self, index: usize) -> Element {
        if index < self.edges.len() {
            Element::Edge(self.edges[index])
        } else {
            Element::Vertex(self.vertices[index - self.edges.len()])
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bipartition {
    /// `false`/`true` side per vertex.
    TwoColoring(BTreeMap<VertexId, bool>),
    /// Closed walk v_0 .. v_{k-1} (edge v_{k-1} v_0 implied), k odd.
    OddCycle(Vec<VertexId>),
}
