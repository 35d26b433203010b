use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use super::{orientation_json, Certificate, Provenance};
use crate::error::{Error, Result};
use crate::graph::{degeneracy_ordering, Edge, Element, Graph, HalinGraph, VertexId};
use crate::matrix::{
    assemble, expand_to_edge_columns, permanent_exact, CoefficientMatrix, IndexFunction,
    Orientation, SymbolicColumn,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BipartiteCase {
    /// Grandparent of the deepest leaf has two or three sons.
    Case1,
    /// Grandparent has at least four sons.
    Case2,
    /// Grandparent has a single son; the partition is built around its parent.
    Case3,
}

/// Vertex partition X, Y for a bipartite graph. `hub` is v3 in cases 1 and 2
/// and v4 (the father of v3) in case 3.
#[derive(Clone, Debug)]
pub struct PartitionPlan {
    pub case: BipartiteCase,
    pub rooted: HalinGraph,
    pub v1: VertexId,
    pub v2: VertexId,
    pub v3: VertexId,
    pub hub: VertexId,
    pub w: Option<VertexId>,
    pub x: BTreeSet<VertexId>,
    pub y: BTreeSet<VertexId>,
    /// E[X]
    pub inner_edges: Vec<Edge>,
    /// E[X, Y]
    pub crossing_edges: Vec<Edge>,
}

impl PartitionPlan {
    /// H = G[X] plus the crossing edges.
    pub fn h(&self) -> Graph {
        Graph::from_parts(
            self.x.iter().copied(),
            self.inner_edges.iter().chain(&self.crossing_edges).copied(),
        )
    }

    fn to_json(&self) -> Value {
        json!({
            "root": self.rooted.tree().root(),
            "v1": self.v1,
            "v2": self.v2,
            "v3": self.v3,
            "hub": self.hub,
            "w": self.w,
            "x": self.x,
            "y": self.y,
        })
    }
}

/// Roots the tree at the smallest vertex of degree at least 3, takes a
/// deepest leaf v1 (preferring one whose grandparent has two or more sons)
/// and picks the case from the number of sons of v3.
pub fn choose_bipartite_partition(h: &HalinGraph) -> Result<PartitionPlan> {
    let g = h.graph();
    if !g.is_bipartite() {
        return Err(Error::CaseMismatch("graph is not bipartite".into()));
    }
    let root = h
        .tree()
        .vertices()
        .find(|&v| h.tree().degree(v) >= 3)
        .ok_or_else(|| Error::CaseMismatch("tree has no vertex of degree 3".into()))?;
    let rooted = h.rerooted(root)?;
    let t = rooted.tree();
    let depth = rooted.cycle().iter().map(|&l| t.depth(l)).max().unwrap_or(0);
    if depth < 2 {
        return Err(Error::CaseMismatch("tree is a star".into()));
    }
    let deepest: Vec<VertexId> = t
        .vertices()
        .filter(|&v| t.is_leaf(v) && t.depth(v) == depth)
        .collect();
    let grand = |v1: VertexId| t.parent(t.parent(v1).unwrap()).unwrap();
    let v1 = deepest
        .iter()
        .copied()
        .find(|&v1| t.children(grand(v1)).len() >= 2)
        .unwrap_or(deepest[0]);
    let v2 = t.parent(v1).unwrap();
    let v3 = grand(v1);
    if t.children(v2).len() != 1 {
        return Err(Error::Internal(format!("{v2} has several leaf sons in a bipartite graph")));
    }
    let sons = t.children(v3);

    let (case, hub, w, x) = match sons.len() {
        2 | 3 => {
            let at = sons.iter().position(|&s| s == v2).unwrap();
            let w = [at + 1, at.wrapping_sub(1)]
                .into_iter()
                .filter_map(|i| sons.get(i).copied())
                .find(|&s| t.is_leaf(s) && g.has_edge(Edge::new(v1, s)))
                .ok_or_else(|| Error::ConstructionFailed(format!("no leaf son of {v3} next to {v1}")))?;
            (BipartiteCase::Case1, v3, Some(w), BTreeSet::from([v1, v2, v3, w]))
        }
        1 => {
            let v4 = t.parent(v3).expect("v3 has degree 2, so it is not the root");
            let mut x = BTreeSet::from([v4]);
            for &s in t.children(v4) {
                x.insert(s);
                x.extend(t.children(s).iter().copied());
            }
            // the chain v4-v3-v2 stands in for v3-w-w'
            (BipartiteCase::Case3, v4, Some(v3), x)
        }
        _ => {
            let mut x = t.descendants(v3);
            x.insert(v3);
            let w = first_inner_son(&rooted, v3, v2);
            (BipartiteCase::Case2, v3, w, x)
        }
    };

    let y: BTreeSet<VertexId> = g.vertices().iter().copied().filter(|v| !x.contains(v)).collect();
    let (inner_edges, crossing_edges): (Vec<Edge>, Vec<Edge>) = g
        .edges()
        .iter()
        .copied()
        .filter(|e| x.contains(&e.low()) || x.contains(&e.high()))
        .partition(|e| x.contains(&e.low()) && x.contains(&e.high()));
    Ok(PartitionPlan {
        case,
        rooted,
        v1,
        v2,
        v3,
        hub,
        w,
        x,
        y,
        inner_edges,
        crossing_edges,
    })
}

/// First non-leaf son of `hub` after `chain` in cyclic child order.
fn first_inner_son(h: &HalinGraph, hub: VertexId, chain: VertexId) -> Option<VertexId> {
    let t = h.tree();
    let sons = t.children(hub);
    let at = sons.iter().position(|&s| s == chain)?;
    (1..sons.len())
        .map(|i| sons[(at + i) % sons.len()])
        .find(|&s| !t.is_leaf(s))
}

/// Case 1 columns: v1v2, v2v3, v3w twice and v1w once when |E(H)| = 7;
/// all four twice when |E(H)| = 8. Returns eta on H and per(A_H(eta)).
pub fn build_case1_certificate(plan: &PartitionPlan) -> Result<(IndexFunction, BigInt)> {
    if plan.case != BipartiteCase::Case1 {
        return Err(Error::CaseMismatch("not case 1".into()));
    }
    let w = plan.w.expect("case 1 has w");
    let h = plan.h();
    let last = match h.edge_count() {
        7 => 1,
        8 => 2,
        m => return Err(Error::CaseMismatch(format!("case 1 with |E(H)| = {m}"))),
    };
    let eta = IndexFunction::from_edges([
        (Edge::new(plan.v1, plan.v2), 2),
        (Edge::new(plan.v2, plan.v3), 2),
        (Edge::new(plan.v3, w), 2),
        (Edge::new(plan.v1, w), last),
    ]);
    let per = assemble(&CoefficientMatrix::canonical(&h), &eta)?.permanent();
    if per.is_zero() {
        return Err(Error::Internal("case 1 matrix is singular".into()));
    }
    Ok((eta, per))
}

/// Orientation of H and a map phi from E(H) to E[X] with phi(e) != e an
/// incident sink or source edge and every preimage of size at most 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeAssignment {
    pub orientation: Orientation,
    pub phi: BTreeMap<Edge, Edge>,
    /// Whether the fixed recipe produced phi, as opposed to the matching fallback.
    pub from_recipe: bool,
}

impl EdgeAssignment {
    /// eta(f) = |phi^-1(f)|.
    pub fn eta(&self) -> IndexFunction {
        let mut eta = IndexFunction::new();
        for &f in self.phi.values() {
            eta.add(Element::Edge(f), 1);
        }
        eta
    }

    pub fn validate(&self, h: &Graph, inner: &BTreeSet<Edge>) -> Result<()> {
        let bad = |msg: String| Err(Error::Internal(msg));
        let mut load: BTreeMap<Edge, usize> = BTreeMap::new();
        for &e in h.edges() {
            let Some(&f) = self.phi.get(&e) else {
                return bad(format!("phi({e}) undefined"));
            };
            if f == e || e.shares_end(f).is_none() {
                return bad(format!("phi({e}) = {f} is not an adjacent edge"));
            }
            if !inner.contains(&f) {
                return bad(format!("phi({e}) = {f} leaves E[X]"));
            }
            if !is_sink_or_source(h, &self.orientation, f) {
                return bad(format!("{f} is neither a sink nor a source edge"));
            }
            *load.entry(f).or_default() += 1;
        }
        if let Some((f, k)) = load.into_iter().find(|&(_, k)| k > 2) {
            return bad(format!("{f} has {k} preimages"));
        }
        Ok(())
    }
}

/// All other edges at each end point towards that end (sink) or all away (source).
fn is_sink_or_source(h: &Graph, d: &Orientation, f: Edge) -> bool {
    let neighbours: Vec<(VertexId, Edge)> = [f.low(), f.high()]
        .into_iter()
        .flat_map(|x| h.incident_edges(x).filter(move |&e| e != f).map(move |e| (x, e)))
        .collect();
    neighbours.iter().all(|&(x, e)| d.arc(e).1 == x) || neighbours.iter().all(|&(x, e)| d.arc(e).0 == x)
}

/// Cases 2 and 3: the hub is a sink, vertices at distance 2 from it are
/// sources, remaining cycle edges point into the hub's sons. phi follows a
/// fixed recipe; when the recipe does not apply or fails validation, a
/// capacity-2 matching is used instead.
pub fn build_sink_source_assignment(plan: &PartitionPlan) -> Result<EdgeAssignment> {
    if plan.case == BipartiteCase::Case1 {
        return Err(Error::CaseMismatch("case 1 uses fixed columns".into()));
    }
    let h = plan.h();
    let t = plan.rooted.tree();
    let hub = plan.hub;
    let dist = |v: VertexId| -> Option<usize> {
        if v == hub {
            Some(0)
        } else if t.parent(v) == Some(hub) {
            Some(1)
        } else if t.parent(v).and_then(|p| t.parent(p)) == Some(hub) {
            Some(2)
        } else {
            None
        }
    };
    let arcs: Vec<(VertexId, VertexId)> = h
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = e.ends();
            match (dist(a), dist(b)) {
                (Some(0), _) => (b, a),
                (_, Some(0)) => (a, b),
                (Some(2), _) => (a, b),
                (_, Some(2)) => (b, a),
                (Some(1), _) => (b, a),
                _ => (a, b),
            }
        })
        .collect();
    let orientation = Orientation::from_arcs(&h, &arcs)?;
    let inner: BTreeSet<Edge> = plan.inner_edges.iter().copied().collect();

    if let Some(phi) = recipe_phi(plan, &inner) {
        let a = EdgeAssignment {
            orientation: orientation.clone(),
            phi,
            from_recipe: true,
        };
        if a.validate(&h, &inner).is_ok() {
            return Ok(a);
        }
    }
    let phi = matching_phi(&h, &orientation, &inner)
        .ok_or_else(|| Error::ConstructionFailed("no valid edge assignment".into()))?;
    let a = EdgeAssignment {
        orientation,
        phi,
        from_recipe: false,
    };
    a.validate(&h, &inner)?;
    Ok(a)
}

fn recipe_phi(plan: &PartitionPlan, inner: &BTreeSet<Edge>) -> Option<BTreeMap<Edge, Edge>> {
    let t = plan.rooted.tree();
    let hub = plan.hub;
    let chain = if plan.case == BipartiteCase::Case2 { plan.v2 } else { plan.v3 };
    let w = plan.w?;
    let sons = t.children(hub);
    let at = sons.iter().position(|&s| s == chain)?;
    let ring: Vec<VertexId> = (0..sons.len())
        .map(|i| sons[(at + i) % sons.len()])
        .filter(|&s| s != w)
        .collect();
    if ring.len() < 2 {
        return None;
    }
    let e = Edge::new;
    let mut phi = BTreeMap::new();
    for (i, &s) in ring.iter().enumerate() {
        phi.insert(e(hub, s), e(hub, ring[(i + 1) % ring.len()]));
    }
    phi.insert(e(hub, w), e(w, t.children(w)[0]));
    for &u in sons {
        for &g in t.children(u) {
            phi.insert(e(u, g), e(hub, u));
            for &gg in t.children(g) {
                phi.insert(e(g, gg), e(u, g));
            }
        }
    }
    if let Some(p) = t.parent(hub) {
        phi.insert(e(hub, p), e(hub, w));
    }

    // cycle edges point at the tree edge on their v1 side
    let cycle = plan.rooted.cycle();
    let n = cycle.len();
    let block = t.descendants(hub);
    let start = (0..n)
        .find(|&i| block.contains(&cycle[i]) && !block.contains(&cycle[(i + n - 1) % n]))
        .unwrap_or(0);
    let rel = |i: usize| (i + n - start) % n;
    let p1 = rel(cycle.iter().position(|&l| l == plan.v1)?);
    let tree_edge = |l: VertexId| e(t.parent(l).unwrap(), l);
    for i in 0..n {
        let (a, b) = (cycle[i], cycle[(i + 1) % n]);
        if !(plan.x.contains(&a) || plan.x.contains(&b)) {
            continue;
        }
        let (near, far) = if rel(i) < p1 { (b, a) } else { (a, b) };
        let target = [near, far].into_iter().map(tree_edge).find(|f| inner.contains(f))?;
        phi.insert(e(a, b), target);
    }
    Some(phi)
}

/// Augmenting-path b-matching of E(H) into the sink and source edges of
/// E[X], each target taking at most two edges.
fn matching_phi(h: &Graph, d: &Orientation, inner: &BTreeSet<Edge>) -> Option<BTreeMap<Edge, Edge>> {
    let targets: Vec<Edge> = inner.iter().copied().filter(|&f| is_sink_or_source(h, d, f)).collect();
    let edges = h.edges();
    let options: Vec<Vec<usize>> = edges
        .iter()
        .map(|&e| {
            (0..targets.len())
                .filter(|&j| targets[j] != e && e.shares_end(targets[j]).is_some())
                .collect()
        })
        .collect();
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); targets.len()];
    let mut assigned: Vec<Option<usize>> = vec![None; edges.len()];

    fn augment(
        i: usize,
        options: &[Vec<usize>],
        holders: &mut Vec<Vec<usize>>,
        assigned: &mut Vec<Option<usize>>,
        seen: &mut Vec<bool>,
    ) -> bool {
        for &j in &options[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if holders[j].len() < 2 {
                holders[j].push(i);
                assigned[i] = Some(j);
                return true;
            }
            for slot in 0..2 {
                let other = holders[j][slot];
                if augment(other, options, holders, assigned, seen) {
                    holders[j][slot] = i;
                    assigned[i] = Some(j);
                    return true;
                }
            }
        }
        false
    }

    for i in 0..edges.len() {
        let mut seen = vec![false; targets.len()];
        if !augment(i, &options, &mut holders, &mut assigned, &mut seen) {
            return None;
        }
    }
    Some(
        edges
            .iter()
            .zip(assigned)
            .map(|(&e, j)| (e, targets[j.unwrap()]))
            .collect(),
    )
}

/// Extends eta on H to all of G. Every component Y_i of G[Y] is joined to X
/// by its smallest crossing edge x_i y_i; the vertex columns of a
/// 2-degenerate ordering of G[Y_i] + x_i y_i ending at x_i are rewritten as
/// A(v) +- A(x_i) along a path and expanded into edge columns. The result is
/// block triangular, so its permanent is per(A_H) times the block permanents;
/// this is checked exactly.
pub fn compose_blocks(
    g: &Graph,
    plan: &PartitionPlan,
    eta_h: &IndexFunction,
) -> Result<(IndexFunction, Value)> {
    let h = plan.h();
    let per_h = assemble(&CoefficientMatrix::canonical(&h), eta_h)?.permanent();
    if per_h.is_zero() {
        return Err(Error::Internal("A_H(eta) is singular".into()));
    }
    let gy = g.induced(&plan.y);
    degeneracy_ordering(&gy, 2, None)?;
    let base = CoefficientMatrix::canonical(g);

    let mut eta = eta_h.clone();
    let mut product = per_h.clone();
    let mut blocks = Vec::new();
    for comp in gy.components() {
        let link = g
            .edges()
            .iter()
            .copied()
            .find(|e| {
                (comp.contains(&e.low()) && plan.x.contains(&e.high()))
                    || (comp.contains(&e.high()) && plan.x.contains(&e.low()))
            })
            .ok_or(Error::Disconnected)?;
        let xi = if plan.x.contains(&link.low()) { link.low() } else { link.high() };
        let own = gy.induced(&comp);
        let gi = Graph::from_parts(comp.iter().copied().chain([xi]), own.edges().iter().copied().chain([link]));
        let order = degeneracy_ordering(&gi, 2, Some(xi))?;

        let base_i = CoefficientMatrix::canonical(&gi);
        let mut columns = Vec::with_capacity(gi.edge_count());
        for (&v, &d) in order.order.iter().zip(&order.back_degrees) {
            if d == 0 {
                continue;
            }
            if v == xi {
                let at = gi.element_index(Element::Vertex(xi)).unwrap();
                columns.push(SymbolicColumn::pure(at));
                continue;
            }
            let path = gi
                .shortest_path(v, xi, &BTreeSet::new())
                .ok_or_else(|| Error::Internal(format!("{v} cannot reach {xi}")))?;
            let combo = SymbolicColumn::from_terms(path.windows(2).enumerate().map(|(k, p)| {
                let i = gi.edge_index(Edge::new(p[0], p[1])).unwrap();
                (i, if k % 2 == 0 { 1 } else { -1 })
            }));
            columns.extend(std::iter::repeat_n(combo, d));
        }
        let eta_i = expand_to_edge_columns(&base_i, &columns, 3, 2)?;
        if eta_i.get(Element::Vertex(xi)) != 1 {
            return Err(Error::Internal(format!("column A({xi}) lost in expansion")));
        }
        let mut block_eta = eta_i.clone();
        block_eta.set(Element::Vertex(xi), 0);

        let rows: Vec<usize> = own.edges().iter().map(|&e| g.edge_index(e).unwrap()).collect();
        let cols: Vec<usize> = block_eta
            .edge_entries()
            .flat_map(|(e, k)| std::iter::repeat_n(g.edge_index(e).unwrap(), k as usize))
            .collect();
        let per_i = permanent_exact(&base.matrix().submatrix(&rows, &cols))?;
        if per_i.is_zero() {
            return Err(Error::Internal(format!("block at {xi} is singular")));
        }
        product *= &per_i;
        blocks.push(json!({
            "x": xi,
            "link": link.to_string(),
            "vertices": comp,
            "order": order.order,
            "permanent": per_i.to_string(),
        }));
        eta = eta.merged(&block_eta);
    }

    let per = assemble(&base, &eta)?.permanent();
    if per != product {
        return Err(Error::Internal(format!(
            "block product {product} differs from the permanent {per}"
        )));
    }
    let aux = json!({
        "h_permanent": per_h.to_string(),
        "blocks": blocks,
    });
    Ok((eta, aux))
}

/// Certificate for a bipartite generalized Halin graph.
pub fn certify_bipartite(h: &HalinGraph) -> Result<Certificate> {
    let g = h.graph();
    let plan = choose_bipartite_partition(h)?;
    let mut aux = json!({ "partition": plan.to_json() });
    let (eta_h, provenance) = match plan.case {
        BipartiteCase::Case1 => {
            let (eta, _) = build_case1_certificate(&plan)?;
            let p = if eta.total() == 7 {
                Provenance::BipCase1TwoSons
            } else {
                Provenance::BipCase1ThreeSons
            };
            (eta, p)
        }
        case => {
            let a = build_sink_source_assignment(&plan)?;
            aux["orientation"] = orientation_json(&a.orientation);
            aux["phi"] = a
                .phi
                .iter()
                .map(|(e, f)| (e.to_string(), Value::String(f.to_string())))
                .collect::<serde_json::Map<_, _>>()
                .into();
            aux["phi_from_recipe"] = json!(a.from_recipe);
            let p = if case == BipartiteCase::Case2 {
                Provenance::BipCase2
            } else {
                Provenance::BipCase3
            };
            (a.eta(), p)
        }
    };
    let (eta, blocks) = compose_blocks(g, &plan, &eta_h)?;
    aux["composition"] = blocks;
    Certificate::from_eta(g, eta, provenance, aux)
}
