use std::fmt;
use std::str::FromStr;

use super::{Edge, Graph, PlaneTree, VertexId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HalinKind {
    /// No internal tree vertex of degree 2.
    Strict,
    Generalized,
}

impl fmt::Display for HalinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HalinKind::Strict => "strict",
            HalinKind::Generalized => "generalized",
        })
    }
}

impl FromStr for HalinKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<HalinKind> {
        match s {
            "strict" => Ok(HalinKind::Strict),
            "generalized" => Ok(HalinKind::Generalized),
            other => Err(Error::Parse(format!("unknown Halin kind {other:?}"))),
        }
    }
}

/// Plane tree plus the cycle through its leaves in plane order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalinGraph {
    tree: PlaneTree,
    cycle: Vec<VertexId>,
    graph: Graph,
    kind: HalinKind,
}

pub fn build_halin(tree: PlaneTree, kind: HalinKind) -> Result<HalinGraph> {
    let cycle = tree.leaf_sequence();
    if cycle.len() < 3 {
        return Err(Error::TooFewLeaves(cycle.len()));
    }
    if kind == HalinKind::Strict {
        if let Some(v) = tree.vertices().find(|&v| tree.degree(v) == 2) {
            return Err(Error::DegreeTwo(v));
        }
    }
    let mut edges = tree.edges();
    edges.extend((0..cycle.len()).map(|i| Edge::new(cycle[i], cycle[(i + 1) % cycle.len()])));
    let graph = Graph::from_parts(tree.vertices(), edges);
    Ok(HalinGraph {
        tree,
        cycle,
        graph,
        kind,
    })
}

impl HalinGraph {
    pub fn tree(&self) -> &PlaneTree {
        &self.tree
    }

    /// Leaves in cyclic order.
    pub fn cycle(&self) -> &[VertexId] {
        &self.cycle
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn kind(&self) -> HalinKind {
        self.kind
    }

    pub fn cycle_edges(&self) -> Vec<Edge> {
        let n = self.cycle.len();
        (0..n).map(|i| Edge::new(self.cycle[i], self.cycle[(i + 1) % n])).collect()
    }

    pub fn is_cycle_edge(&self, e: Edge) -> bool {
        self.tree.is_leaf(e.low()) && self.tree.is_leaf(e.high())
    }

    /// The tree is a star: one centre adjacent to every leaf.
    pub fn is_wheel(&self) -> bool {
        self.tree.vertex_count() == self.cycle.len() + 1
    }

    /// Same graph with the tree re-hung at `root`; the cyclic leaf order is unchanged
    /// up to rotation.
    pub fn rerooted(&self, root: VertexId) -> Result<HalinGraph> {
        let tree = self.tree.rerooted(root)?;
        let cycle = tree.leaf_sequence();
        Ok(HalinGraph {
            tree,
            cycle,
            graph: self.graph.clone(),
            kind: self.kind,
        })
    }
}
