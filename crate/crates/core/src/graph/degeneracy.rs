use std::collections::{BTreeMap, BTreeSet};

use super::{Graph, VertexId};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyOrdering {
    pub order: Vec<VertexId>,
    /// Earlier neighbours of `order[i]`, aligned with `order`.
    pub back_degrees: Vec<usize>,
}

impl DegeneracyOrdering {
    pub fn back_degree(&self, v: VertexId) -> Option<usize> {
        self.order.iter().position(|&u| u == v).map(|i| self.back_degrees[i])
    }

    /// Recounts back-degrees against `g` and checks them against `bound`.
    pub fn check(&self, g: &Graph, bound: usize) -> bool {
        let pos: BTreeMap<VertexId, usize> =
            self.order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        if pos.len() != g.vertex_count() || self.order.len() != self.back_degrees.len() {
            return false;
        }
        self.order.iter().enumerate().all(|(i, &v)| {
            let back = g.neighbors(v).filter(|u| pos.get(u).is_some_and(|&j| j < i)).count();
            back == self.back_degrees[i] && back <= bound
        })
    }
}

/// Ordering in which every vertex has at most `bound` earlier neighbours,
/// optionally forcing `last` into the final slot.
///
/// Built by peeling: repeatedly strip a vertex of current degree at most
/// `bound` (smallest degree, then smallest id) and read the strip order backwards.
pub fn degeneracy_ordering(
    g: &Graph,
    bound: usize,
    last: Option<VertexId>,
) -> Result<DegeneracyOrdering> {
    let mut remaining: BTreeSet<VertexId> = g.vertices().iter().copied().collect();
    let mut degree: BTreeMap<VertexId, usize> =
        g.vertices().iter().map(|&v| (v, g.degree(v))).collect();
    let mut stripped = Vec::with_capacity(remaining.len());
    let mut strip_degree = Vec::with_capacity(remaining.len());

    let mut strip = |v: VertexId,
                     remaining: &mut BTreeSet<VertexId>,
                     degree: &mut BTreeMap<VertexId, usize>| {
        remaining.remove(&v);
        stripped.push(v);
        strip_degree.push(degree[&v]);
        for u in g.neighbors(v) {
            if remaining.contains(&u) {
                *degree.get_mut(&u).unwrap() -= 1;
            }
        }
    };

    if let Some(v) = last {
        if !g.contains_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
        if degree[&v] > bound {
            return Err(Error::NotDegenerate(bound));
        }
        strip(v, &mut remaining, &mut degree);
    }
    while !remaining.is_empty() {
        let v = *remaining
            .iter()
            .min_by_key(|&&v| (degree[&v], v))
            .expect("non-empty");
        if degree[&v] > bound {
            return Err(Error::NotDegenerate(bound));
        }
        strip(v, &mut remaining, &mut degree);
    }
    stripped.reverse();
    strip_degree.reverse();
    Ok(DegeneracyOrdering {
        order: stripped,
        back_degrees: strip_degree,
    })
}
