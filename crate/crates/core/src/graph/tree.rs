use std::collections::{BTreeMap, BTreeSet};

use super::{Edge, Graph, VertexId};
use crate::error::{Error, Result};

/// Rooted tree with a fixed child order (a plane embedding).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneTree {
    root: VertexId,
    children: BTreeMap<VertexId, Vec<VertexId>>,
    parent: BTreeMap<VertexId, VertexId>,
    depth: BTreeMap<VertexId, usize>,
}

impl PlaneTree {
    /// Validates that `children` describes a tree rooted at `root` in which
    /// every vertex is reachable and every non-root vertex has one parent.
    pub fn new(root: VertexId, children: BTreeMap<VertexId, Vec<VertexId>>) -> Result<PlaneTree> {
        let mut parent = BTreeMap::new();
        for (&p, kids) in &children {
            for &c in kids {
                if c == root {
                    return Err(Error::MalformedTree(format!("root {root} listed as child of {p}")));
                }
                if let Some(old) = parent.insert(c, p) {
                    return Err(Error::MalformedTree(format!(
                        "vertex {c} has two parents ({old} and {p})"
                    )));
                }
            }
        }
        let mut depth = BTreeMap::from([(root, 0usize)]);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &c in children.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
                if depth.insert(c, depth[&v] + 1).is_some() {
                    return Err(Error::MalformedTree(format!("vertex {c} reached twice")));
                }
                stack.push(c);
            }
        }
        for v in children.keys().chain(parent.keys()) {
            if !depth.contains_key(v) {
                return Err(Error::MalformedTree(format!("vertex {v} unreachable from root")));
            }
        }
        let children = children.into_iter().filter(|(_, k)| !k.is_empty()).collect();
        Ok(PlaneTree {
            root,
            children,
            parent,
            depth,
        })
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        self.children.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn children_map(&self) -> &BTreeMap<VertexId, Vec<VertexId>> {
        &self.children
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent.get(&v).copied()
    }

    pub fn depth(&self, v: VertexId) -> usize {
        self.depth[&v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.depth.keys().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.depth.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.depth.contains_key(&v)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.children(v).len() + usize::from(v != self.root)
    }

    /// Degree-1 vertices of the underlying tree (the root counts if it has one child).
    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.degree(v) == 1
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.parent.iter().map(|(&c, &p)| Edge::new(c, p)).collect()
    }

    pub fn as_graph(&self) -> Graph {
        Graph::from_parts(self.vertices(), self.edges())
    }

    /// Preorder traversal in child order.
    pub fn preorder(&self) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.vertex_count());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children(v).iter().rev());
        }
        out
    }

    /// Leaves in depth-first order; read cyclically this is the plane leaf order.
    pub fn leaf_sequence(&self) -> Vec<VertexId> {
        self.preorder().into_iter().filter(|&v| self.is_leaf(v)).collect()
    }

    /// `v` and everything below it.
    pub fn descendants(&self, v: VertexId) -> BTreeSet<VertexId> {
        let mut out = BTreeSet::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            out.insert(u);
            stack.extend(self.children(u));
        }
        out
    }

    /// Same embedding re-hung from another vertex. The cyclic order of
    /// neighbours around every vertex is preserved, so the cyclic leaf order is too.
    pub fn rerooted(&self, new_root: VertexId) -> Result<PlaneTree> {
        if !self.contains(new_root) {
            return Err(Error::UnknownVertex(new_root));
        }
        // rotation system: parent first, then children in order
        let rotation = |v: VertexId| -> Vec<VertexId> {
            let mut r: Vec<VertexId> = self.parent(v).into_iter().collect();
            r.extend(self.children(v));
            r
        };
        let mut children = BTreeMap::new();
        let mut stack = vec![(new_root, None::<VertexId>)];
        while let Some((v, from)) = stack.pop() {
            let rot = rotation(v);
            let kids: Vec<VertexId> = match from {
                None => rot,
                Some(p) => {
                    let at = rot.iter().position(|&x| x == p).expect("parent in rotation");
                    rot[at + 1..].iter().chain(&rot[..at]).copied().collect()
                }
            };
            for &c in &kids {
                stack.push((c, Some(v)));
            }
            children.insert(v, kids);
        }
        PlaneTree::new(new_root, children)
    }
}
