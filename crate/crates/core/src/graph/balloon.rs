use std::collections::BTreeSet;

use super::{Edge, Graph, VertexId};

/// A path v_1 .. v_k glued at v_k = u_1 to a cycle u_1 .. u_m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Balloon {
    pub path_vertices: Vec<VertexId>,
    pub cycle_vertices: Vec<VertexId>,
}

impl Balloon {
    pub fn root(&self) -> VertexId {
        self.path_vertices[0]
    }

    pub fn is_odd(&self) -> bool {
        self.cycle_vertices.len() % 2 == 1
    }

    pub fn path_edges(&self) -> Vec<Edge> {
        self.path_vertices.windows(2).map(|w| Edge::new(w[0], w[1])).collect()
    }

    /// e'_1 = u_1u_2, ..., e'_m = u_mu_1.
    pub fn cycle_edges(&self) -> Vec<Edge> {
        let c = &self.cycle_vertices;
        (0..c.len()).map(|i| Edge::new(c[i], c[(i + 1) % c.len()])).collect()
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut out = self.path_edges();
        out.extend(self.cycle_edges());
        out
    }

    /// Structural check against a host graph.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let (Some(&end), Some(&first)) = (self.path_vertices.last(), self.cycle_vertices.first())
        else {
            return false;
        };
        if end != first || self.cycle_vertices.len() < 3 {
            return false;
        }
        let mut seen = BTreeSet::new();
        let all_distinct = self
            .path_vertices
            .iter()
            .chain(&self.cycle_vertices[1..])
            .all(|v| seen.insert(*v));
        let edges = self.edges();
        let distinct_edges: BTreeSet<_> = edges.iter().collect();
        all_distinct && distinct_edges.len() == edges.len() && edges.iter().all(|e| g.has_edge(*e))
    }
}

const CANDIDATE_TARGET: usize = 48;
const CYCLE_BUDGET: usize = 4000;
const SEARCH_BUDGET: usize = 20_000;

/// Up to `count` pairwise edge-disjoint odd balloons rooted at `root`, all
/// avoiding `forbidden`. Candidates are generated shortest-first and combined
/// by a bounded backtracking search; the result may fall short of `count`.
pub fn find_odd_balloons(
    g: &Graph,
    root: VertexId,
    forbidden: &BTreeSet<Edge>,
    count: usize,
) -> Vec<Balloon> {
    if count == 0 || !g.contains_vertex(root) {
        return Vec::new();
    }
    let host = g.without_edges(forbidden);
    let candidates = candidate_balloons(&host, root);
    let edge_sets: Vec<BTreeSet<Edge>> =
        candidates.iter().map(|b| b.edges().into_iter().collect()).collect();

    let mut best: Vec<usize> = Vec::new();
    let mut current = Vec::new();
    let mut budget = SEARCH_BUDGET;
    pick_disjoint(&edge_sets, 0, count, &mut current, &mut best, &mut budget);
    best.into_iter().map(|i| candidates[i].clone()).collect()
}

fn pick_disjoint(
    sets: &[BTreeSet<Edge>],
    from: usize,
    count: usize,
    current: &mut Vec<usize>,
    best: &mut Vec<usize>,
    budget: &mut usize,
) -> bool {
    if current.len() > best.len() {
        *best = current.clone();
    }
    if current.len() == count {
        return true;
    }
    for i in from..sets.len() {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        if current.iter().all(|&j| sets[j].is_disjoint(&sets[i])) {
            current.push(i);
            if pick_disjoint(sets, i + 1, count, current, best, budget) {
                return true;
            }
            current.pop();
        }
    }
    false
}

fn candidate_balloons(g: &Graph, root: VertexId) -> Vec<Balloon> {
    let mut out: Vec<Balloon> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut len = 3;
    while len <= g.vertex_count() && out.len() < CANDIDATE_TARGET {
        for cycle in odd_cycles_of_length(g, len) {
            for (i, &attach) in cycle.iter().enumerate() {
                if cycle.contains(&root) && attach != root {
                    continue;
                }
                let blocked: BTreeSet<VertexId> =
                    cycle.iter().copied().filter(|&v| v != attach).collect();
                let Some(path) = g.shortest_path(root, attach, &blocked) else {
                    continue;
                };
                let mut rotated: Vec<VertexId> = cycle[i..].to_vec();
                rotated.extend(&cycle[..i]);
                let b = Balloon {
                    path_vertices: path,
                    cycle_vertices: rotated,
                };
                let key: BTreeSet<Edge> = b.edges().into_iter().collect();
                if seen.insert(key) {
                    out.push(b);
                }
            }
        }
        len += 2;
    }
    out.sort_by(|a, b| {
        (a.edges().len(), a.path_vertices.len(), &a.path_vertices, &a.cycle_vertices).cmp(&(
            b.edges().len(),
            b.path_vertices.len(),
            &b.path_vertices,
            &b.cycle_vertices,
        ))
    });
    out
}

/// Simple cycles of exactly `len` vertices, each listed once starting at its
/// smallest vertex with the second vertex smaller than the last.
fn odd_cycles_of_length(g: &Graph, len: usize) -> Vec<Vec<VertexId>> {
    fn extend(
        g: &Graph,
        len: usize,
        path: &mut Vec<VertexId>,
        out: &mut Vec<Vec<VertexId>>,
        budget: &mut usize,
    ) {
        if *budget == 0 {
            return;
        }
        *budget -= 1;
        let start = path[0];
        let last = *path.last().unwrap();
        if path.len() == len {
            if path[1] < last && g.has_edge(Edge::new(last, start)) {
                out.push(path.clone());
            }
            return;
        }
        let next: Vec<VertexId> = g.neighbors(last).collect();
        for u in next {
            if u > start && !path.contains(&u) {
                path.push(u);
                extend(g, len, path, out, budget);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut budget = CYCLE_BUDGET;
    for &s in g.vertices() {
        let mut path = vec![s];
        extend(g, len, &mut path, &mut out, &mut budget);
    }
    out
}
