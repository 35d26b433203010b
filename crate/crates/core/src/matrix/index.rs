use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Edge, Element, Graph, VertexId};

/// Non-negative integer per vertex and per edge. Missing entries are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndexFunction {
    vertices: BTreeMap<VertexId, u32>,
    edges: BTreeMap<Edge, u32>,
}

impl IndexFunction {
    pub fn new() -> IndexFunction {
        IndexFunction::default()
    }

    pub fn from_edges(items: impl IntoIterator<Item = (Edge, u32)>) -> IndexFunction {
        let mut f = IndexFunction::new();
        for (e, k) in items {
            f.set(Element::Edge(e), k);
        }
        f
    }

    pub fn from_vertices(items: impl IntoIterator<Item = (VertexId, u32)>) -> IndexFunction {
        let mut f = IndexFunction::new();
        for (v, k) in items {
            f.set(Element::Vertex(v), k);
        }
        f
    }

    /// Inverse of [`IndexFunction::multiplicities`].
    pub fn from_multiplicities(g: &Graph, mult: &[usize]) -> IndexFunction {
        let mut f = IndexFunction::new();
        for (i, &k) in mult.iter().enumerate() {
            f.set(g.element_at(i), k as u32);
        }
        f
    }

    pub fn get(&self, z: Element) -> u32 {
        match z {
            Element::Edge(e) => self.edges.get(&e).copied().unwrap_or(0),
            Element::Vertex(v) => self.vertices.get(&v).copied().unwrap_or(0),
        }
    }

    pub fn set(&mut self, z: Element, k: u32) {
        match (z, k) {
            (Element::Edge(e), 0) => {
                self.edges.remove(&e);
            }
            (Element::Edge(e), k) => {
                self.edges.insert(e, k);
            }
            (Element::Vertex(v), 0) => {
                self.vertices.remove(&v);
            }
            (Element::Vertex(v), k) => {
                self.vertices.insert(v, k);
            }
        }
    }

    pub fn add(&mut self, z: Element, k: u32) {
        let cur = self.get(z);
        self.set(z, cur + k);
    }

    pub fn total(&self) -> usize {
        self.vertices.values().chain(self.edges.values()).map(|&k| k as usize).sum()
    }

    /// Sum equals |E|.
    pub fn is_valid(&self, g: &Graph) -> bool {
        self.total() == g.edge_count()
    }

    /// Nonzero vertex entries.
    pub fn vertex_entries(&self) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        self.vertices.iter().map(|(&v, &k)| (v, k))
    }

    /// Nonzero edge entries.
    pub fn edge_entries(&self) -> impl Iterator<Item = (Edge, u32)> + '_ {
        self.edges.iter().map(|(&e, &k)| (e, k))
    }

    pub fn vertex_values(&self) -> impl Iterator<Item = u32> + '_ {
        self.vertices.values().copied()
    }

    pub fn edge_values(&self) -> impl Iterator<Item = u32> + '_ {
        self.edges.values().copied()
    }

    pub fn is_edge_only(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Multiplicity per base column of `g` (edges, then vertices). Fails on
    /// entries that are not elements of `g`.
    pub fn multiplicities(&self, g: &Graph) -> Result<Vec<usize>> {
        let mut out = vec![0usize; g.edge_count() + g.vertex_count()];
        for (&e, &k) in &self.edges {
            let i = g.edge_index(e).ok_or(Error::UnknownEdge(e))?;
            out[i] = k as usize;
        }
        for (&v, &k) in &self.vertices {
            let i = g.element_index(Element::Vertex(v)).ok_or(Error::UnknownVertex(v))?;
            out[i] = k as usize;
        }
        Ok(out)
    }

    /// Entries for elements of `g` only.
    pub fn restricted(&self, g: &Graph) -> IndexFunction {
        IndexFunction {
            vertices: self
                .vertices
                .iter()
                .filter(|(v, _)| g.contains_vertex(**v))
                .map(|(&v, &k)| (v, k))
                .collect(),
            edges: self
                .edges
                .iter()
                .filter(|(e, _)| g.has_edge(**e))
                .map(|(&e, &k)| (e, k))
                .collect(),
        }
    }

    /// Pointwise sum.
    pub fn merged(&self, other: &IndexFunction) -> IndexFunction {
        let mut out = self.clone();
        for (v, k) in other.vertex_entries() {
            out.add(Element::Vertex(v), k);
        }
        for (e, k) in other.edge_entries() {
            out.add(Element::Edge(e), k);
        }
        out
    }
}
