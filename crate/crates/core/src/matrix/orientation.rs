use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};

/// Direction of every edge, stored as edge -> head.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    head: BTreeMap<Edge, VertexId>,
}

impl Orientation {
    /// Every edge from its smaller to its larger end.
    pub fn canonical(g: &Graph) -> Orientation {
        Orientation {
            head: g.edges().iter().map(|&e| (e, e.high())).collect(),
        }
    }

    /// From explicit (tail, head) arcs; every arc must be a graph edge and
    /// every graph edge must be covered exactly once.
    pub fn from_arcs(g: &Graph, arcs: &[(VertexId, VertexId)]) -> Result<Orientation> {
        let mut head = BTreeMap::new();
        for &(t, h) in arcs {
            let e = Edge::try_new(t, h)?;
            if !g.has_edge(e) {
                return Err(Error::OrientationExtra(t, h));
            }
            if head.insert(e, h).is_some() {
                return Err(Error::Parse(format!("edge {e} oriented twice")));
            }
        }
        let d = Orientation { head };
        d.check_covers(g)?;
        Ok(d)
    }

    pub fn check_covers(&self, g: &Graph) -> Result<()> {
        match g.edges().iter().find(|e| !self.head.contains_key(e)) {
            Some(&e) => Err(Error::OrientationMissing(e)),
            None => Ok(()),
        }
    }

    /// (tail, head). Panics if `e` is not oriented.
    pub fn arc(&self, e: Edge) -> (VertexId, VertexId) {
        let h = self.head[&e];
        (e.other(h), h)
    }

    pub fn head(&self, e: Edge) -> Option<VertexId> {
        self.head.get(&e).copied()
    }

    pub fn set(&mut self, tail: VertexId, head: VertexId) {
        self.head.insert(Edge::new(tail, head), head);
    }

    pub fn reversed(mut self, e: Edge) -> Orientation {
        let h = self.head[&e];
        self.head.insert(e, e.other(h));
        self
    }

    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.head.iter().map(|(&e, &h)| (e.other(h), h))
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.arcs().filter(|&(t, _)| t == v).count()
    }

    pub fn out_degrees(&self, g: &Graph) -> BTreeMap<VertexId, usize> {
        let mut out: BTreeMap<VertexId, usize> = g.vertices().iter().map(|&v| (v, 0)).collect();
        for (t, _) in self.arcs() {
            *out.entry(t).or_default() += 1;
        }
        out
    }

    /// Restriction to the edges of a subgraph.
    pub fn restricted(&self, sub: &Graph) -> Orientation {
        Orientation {
            head: sub.edges().iter().map(|&e| (e, self.head[&e])).collect(),
        }
    }
}
