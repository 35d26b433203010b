#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use halin_core::graph::{build_graph, build_halin, random_plane_tree, Edge, Graph, HalinGraph, HalinKind, PlaneTree, VertexId};
use halin_core::matrix::{IndexFunction, IntMatrix, Orientation};
use rand::seq::SliceRandom;
use rand::Rng;

/// Sum over all n! permutations.
pub fn naive_permanent(m: &IntMatrix) -> i128 {
    fn rec(m: &IntMatrix, row: usize, used: &mut Vec<bool>) -> i128 {
        if row == m.rows() {
            return 1;
        }
        let mut total = 0;
        for c in 0..m.cols() {
            let x = m.get(row, c);
            if x == 0 || used[c] {
                continue;
            }
            used[c] = true;
            total += x as i128 * rec(m, row + 1, used);
            used[c] = false;
        }
        total
    }
    assert_eq!(m.rows(), m.cols());
    rec(m, 0, &mut vec![false; m.cols()])
}

pub fn random_matrix<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64, density: f64) -> IntMatrix {
    let rows = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| if rng.random_bool(density) { rng.random_range(lo..=hi) } else { 0 })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(rows).unwrap()
}

/// Connected graph where vertex i (i >= 1) has one or two neighbours among 0..i.
pub fn random_two_degenerate<R: Rng>(rng: &mut R, n: u32) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        let mut earlier: Vec<VertexId> = (0..v).collect();
        earlier.shuffle(rng);
        let k = if v >= 2 && rng.random_bool(0.6) { 2 } else { 1 };
        for &u in &earlier[..k] {
            edges.push((u, v));
        }
    }
    build_graph(&edges).unwrap()
}

/// Connected random graph on 0..n: a random spanning tree plus extra edges.
pub fn random_connected<R: Rng>(rng: &mut R, n: u32, extra: usize) -> Graph {
    let mut set = BTreeSet::new();
    for v in 1..n {
        set.insert(Edge::new(rng.random_range(0..v), v));
    }
    for _ in 0..extra {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a != b {
            set.insert(Edge::new(a, b));
        }
    }
    let edges: Vec<(u32, u32)> = set.iter().map(|e| e.ends()).collect();
    build_graph(&edges).unwrap()
}

pub fn random_orientation<R: Rng>(rng: &mut R, g: &Graph) -> Orientation {
    let arcs: Vec<(VertexId, VertexId)> = g
        .edges()
        .iter()
        .map(|e| if rng.random_bool(0.5) { e.ends() } else { (e.high(), e.low()) })
        .collect();
    Orientation::from_arcs(g, &arcs).unwrap()
}

/// Every index function over all elements of `g` with values at most `cap`
/// summing to |E|, as multiplicity vectors in base column order.
pub fn all_index_vectors(g: &Graph, cap: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, left: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if left > cap * (cur.len() - i) {
            return;
        }
        for k in 0..=cap.min(left) {
            cur[i] = k;
            rec(i + 1, left - k, cap, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; g.edge_count() + g.vertex_count()];
    rec(0, g.edge_count(), cap, &mut cur, &mut out);
    out
}

pub fn index_from_vector(g: &Graph, v: &[usize]) -> IndexFunction {
    IndexFunction::from_multiplicities(g, v)
}

pub fn path(n: u32) -> Graph {
    build_graph(&(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap()
}

pub fn cycle(n: u32) -> Graph {
    build_graph(&(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
}

pub fn star(leaves: u32) -> Graph {
    build_graph(&(1..=leaves).map(|i| (0, i)).collect::<Vec<_>>()).unwrap()
}

pub fn wheel(rim: u32) -> HalinGraph {
    let tree = PlaneTree::new(0, BTreeMap::from([(0, (1..=rim).collect())])).unwrap();
    build_halin(tree, HalinKind::Strict).unwrap()
}

pub fn tree_from(root: VertexId, children: &[(VertexId, &[VertexId])]) -> PlaneTree {
    PlaneTree::new(root, children.iter().map(|(v, c)| (*v, c.to_vec())).collect()).unwrap()
}

pub fn generalized(tree: PlaneTree) -> HalinGraph {
    build_halin(tree, HalinKind::Generalized).unwrap()
}

/// Seeded random generalized Halin graph with at most `max_vertices` vertices.
pub fn random_halin(seed: u64, max_vertices: usize) -> HalinGraph {
    let mut s = seed;
    loop {
        let leaves = 3 + (s % 6) as usize;
        let t = random_plane_tree(leaves, s % 3 != 0, s).unwrap();
        if t.vertex_count() <= max_vertices {
            return generalized(t);
        }
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    }
}

/// Ordered trees with exactly `n` vertices, as parent-to-children maps rooted
/// at 0 with vertices numbered in preorder.
pub fn ordered_trees(n: usize) -> Vec<BTreeMap<VertexId, Vec<VertexId>>> {
    // a tree is a root plus an ordered forest; build forests of given sizes
    fn forests(size: usize, memo: &mut BTreeMap<usize, Vec<Vec<Shape>>>) -> Vec<Vec<Shape>> {
        if let Some(f) = memo.get(&size) {
            return f.clone();
        }
        let mut out = Vec::new();
        if size == 0 {
            out.push(Vec::new());
        }
        for first in 1..=size {
            for head in forests(first - 1, memo) {
                for tail in forests(size - first, memo) {
                    let mut f = vec![Shape(head.clone())];
                    f.extend(tail);
                    out.push(f);
                }
            }
        }
        memo.insert(size, out.clone());
        out
    }
    #[derive(Clone)]
    struct Shape(Vec<Shape>);
    fn number(s: &Shape, next: &mut VertexId, map: &mut BTreeMap<VertexId, Vec<VertexId>>) -> VertexId {
        let me = *next;
        *next += 1;
        let kids: Vec<VertexId> = s.0.iter().map(|c| number(c, next, map)).collect();
        if !kids.is_empty() {
            map.insert(me, kids);
        }
        me
    }
    let mut memo = BTreeMap::new();
    forests(n - 1, &mut memo)
        .into_iter()
        .map(|f| {
            let mut map = BTreeMap::new();
            let mut next = 0;
            number(&Shape(f), &mut next, &mut map);
            map
        })
        .collect()
}

/// Canonical key of a plane tree up to choice of root and rotation: the
/// minimum over all roots and all rotations of the root's child list of a
/// parenthesised encoding.
pub fn plane_tree_key(t: &PlaneTree) -> String {
    fn encode(t: &PlaneTree, v: VertexId) -> String {
        let mut s = String::from("(");
        for &c in t.children(v) {
            s.push_str(&encode(t, c));
        }
        s.push(')');
        s
    }
    let mut best: Option<String> = None;
    for r in t.vertices().collect::<Vec<_>>() {
        let rt = t.rerooted(r).unwrap();
        let kids: Vec<String> = rt.children(r).iter().map(|&c| encode(&rt, c)).collect();
        for shift in 0..kids.len().max(1) {
            let mut s = String::from("(");
            for i in 0..kids.len() {
                s.push_str(&kids[(i + shift) % kids.len()]);
            }
            s.push(')');
            if best.as_ref().is_none_or(|b| &s < b) {
                best = Some(s);
            }
        }
    }
    best.unwrap()
}

/// All generalized Halin graphs on at most `max_vertices` vertices, one per
/// plane tree up to rooting and rotation.
pub fn exhaustive_halin(max_vertices: usize) -> Vec<HalinGraph> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for n in 4..=max_vertices {
        for map in ordered_trees(n) {
            let t = PlaneTree::new(0, map).unwrap();
            if t.vertices().filter(|&v| t.is_leaf(v)).count() < 3 {
                continue;
            }
            if seen.insert(plane_tree_key(&t)) {
                out.push(generalized(t));
            }
        }
    }
    out
}
