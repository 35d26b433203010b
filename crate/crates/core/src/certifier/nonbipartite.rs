use std::collections::BTreeSet;

use serde_json::json;

use super::{orientation_json, search_certificate, vertex_columns_to_edges, Certificate, Provenance};
use crate::alon_tarsi::count_eulerian;
use crate::error::{Error, Result};
use crate::graph::{Balloon, Edge, Element, HalinGraph, VertexId};
use crate::matrix::{
    assemble, balloon_combination, expand_exact, CoefficientMatrix, IndexFunction, Orientation,
    SymbolicColumn,
};
use num_traits::Zero;

/// Which orientation recipe applies to a non-bipartite, non-wheel graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseTag {
    /// Even number of leaves: tree towards the root, cycle directed.
    EvenLeaves,
    /// Odd number of leaves. `v` is an internal vertex whose `sons` children
    /// are all leaves; the tree edge to `flipped` points away from `v`.
    OddLeaves {
        v: VertexId,
        flipped: VertexId,
        sons: usize,
    },
}

impl CaseTag {
    pub fn provenance(self) -> Provenance {
        match self {
            CaseTag::EvenLeaves => Provenance::NonbipEvenLeaves,
            CaseTag::OddLeaves { sons, .. } if sons % 2 == 0 => Provenance::NonbipOddKEven,
            CaseTag::OddLeaves { .. } => Provenance::NonbipOddKOdd,
        }
    }
}

/// Re-roots at the smallest non-leaf vertex and picks the case. For an odd
/// number of leaves, `v` is a deepest internal vertex with only leaf
/// children (smallest id on ties) and `flipped` its first son.
pub fn nonbipartite_case(h: &HalinGraph) -> Result<(HalinGraph, CaseTag)> {
    let root = h
        .tree()
        .vertices()
        .find(|&v| !h.tree().is_leaf(v))
        .ok_or_else(|| Error::MalformedTree("no internal vertex".into()))?;
    let rooted = h.rerooted(root)?;
    if rooted.cycle().len() % 2 == 0 {
        return Ok((rooted, CaseTag::EvenLeaves));
    }
    let t = rooted.tree();
    let v = t
        .vertices()
        .filter(|&u| u != root && !t.is_leaf(u) && t.children(u).iter().all(|&c| t.is_leaf(c)))
        .max_by_key(|&u| (t.depth(u), std::cmp::Reverse(u)))
        .ok_or_else(|| Error::CaseMismatch("odd number of leaves but the tree is a star".into()))?;
    let sons = t.children(v);
    Ok((
        rooted.clone(),
        CaseTag::OddLeaves {
            v,
            flipped: sons[0],
            sons: sons.len(),
        },
    ))
}

/// Orientation for the given case on a graph rooted as by [`nonbipartite_case`].
/// Every vertex ends up with out-degree at most 2.
pub fn build_case_orientation(h: &HalinGraph, case: &CaseTag) -> Result<Orientation> {
    let t = h.tree();
    let g = h.graph();
    let cycle = h.cycle();
    let n = cycle.len();
    let mut d = Orientation::canonical(g);
    for u in t.vertices() {
        if let Some(p) = t.parent(u) {
            d.set(u, p);
        }
    }
    for i in 0..n {
        d.set(cycle[i], cycle[(i + 1) % n]);
    }
    match *case {
        CaseTag::EvenLeaves => {
            if n % 2 != 0 {
                return Err(Error::CaseMismatch(format!("{n} leaves is odd")));
            }
        }
        CaseTag::OddLeaves { v, flipped, sons } => {
            if n % 2 == 0 {
                return Err(Error::CaseMismatch(format!("{n} leaves is even")));
            }
            if t.parent(flipped) != Some(v) || t.children(v).len() != sons || !t.is_leaf(flipped) {
                return Err(Error::CaseMismatch(format!("{flipped} is not a leaf son of {v}")));
            }
            d.set(v, flipped);
            if sons % 2 == 1 {
                let at = cycle.iter().position(|&x| x == flipped).expect("leaf on cycle");
                let pred = cycle[(at + n - 1) % n];
                d.set(flipped, pred);
            }
        }
    }
    if let Some((v, k)) = d.out_degrees(g).into_iter().find(|&(_, k)| k > 2) {
        return Err(Error::Internal(format!("out-degree {k} at {v}")));
    }
    Ok(d)
}

/// Certificate for a non-bipartite generalized Halin graph.
pub fn certify_nonbipartite(h: &HalinGraph) -> Result<Certificate> {
    let g = h.graph();
    if g.is_bipartite() {
        return Err(Error::CaseMismatch("graph is bipartite".into()));
    }
    if h.is_wheel() && h.cycle().len() % 2 == 1 {
        return certify_wheel(h);
    }
    let (rooted, case) = nonbipartite_case(h)?;
    let d = build_case_orientation(&rooted, &case)?;
    let counts = count_eulerian(&d);
    if counts.difference().rem_euclid(3) == 0 {
        return Err(Error::Internal(format!(
            "EE - EO = {} vanishes mod 3",
            counts.difference()
        )));
    }
    let vertex_eta = IndexFunction::from_vertices(
        d.out_degrees(g).into_iter().map(|(v, k)| (v, k as u32)),
    );
    let (eta, balloons) = vertex_columns_to_edges(g, &vertex_eta, 3, &BTreeSet::new())?;
    let mut aux = json!({
        "root": rooted.tree().root(),
        "orientation": orientation_json(&d),
        "eulerian": { "even": counts.even_count, "odd": counts.odd_count },
        "balloons": balloons,
    });
    if let CaseTag::OddLeaves { v, flipped, sons } = case {
        aux["v"] = json!(v);
        aux["flipped"] = json!(flipped);
        aux["sons"] = json!(sons);
    }
    Certificate::from_eta(g, eta, case.provenance(), aux)
}

/// Certificate for a wheel with an odd rim. Rims of length at most 5 are
/// searched exhaustively; longer ones are certified on G - v_n first and
/// then lifted with two balloons rooted at v_n.
pub fn certify_wheel(h: &HalinGraph) -> Result<Certificate> {
    let g = h.graph();
    let rim = h.cycle();
    let n = rim.len();
    if !h.is_wheel() || n % 2 == 0 {
        return Err(Error::CaseMismatch("not a wheel with an odd rim".into()));
    }
    if n <= 5 {
        let mut c = search_certificate(g, 2)?
            .ok_or_else(|| Error::ConstructionFailed(format!("no certificate for W_{n}")))?;
        c.provenance = Provenance::WheelSmall;
        return Ok(c);
    }
    let w = h
        .tree()
        .vertices()
        .find(|&u| h.tree().degree(u) == n)
        .expect("wheel has a centre");
    let v = |i: usize| rim[i - 1];
    let e = Edge::new;

    // G - v_n with ordering v_1, w, v_2, ..., v_{n-1}
    let sub = g.without_vertex(v(n));
    let mut vertex_eta = IndexFunction::from_vertices([(w, 1)]);
    for i in 2..n {
        vertex_eta.set(Element::Vertex(v(i)), 2);
    }
    let mut forbidden: BTreeSet<Edge> = sub.incident_edges(v(1)).collect();
    forbidden.insert(e(v(n - 1), w));
    forbidden.insert(e(v(2), w));
    let (inner, inner_balloons) = vertex_columns_to_edges(&sub, &vertex_eta, 3, &forbidden)?;

    let b1 = Balloon {
        path_vertices: vec![v(n)],
        cycle_vertices: vec![v(n), w, v(n - 1)],
    };
    let b2 = Balloon {
        path_vertices: vec![v(n), v(1)],
        cycle_vertices: vec![v(1), v(2), w],
    };
    let support: BTreeSet<Edge> = inner.edge_entries().map(|(x, _)| x).collect();
    if [&b1, &b2]
        .iter()
        .any(|b| b.edges().iter().any(|x| support.contains(x)))
    {
        return Err(Error::Internal("lifting balloons meet the inner certificate".into()));
    }

    let base = CoefficientMatrix::canonical(g);
    let mut start = inner.clone();
    start.set(Element::Vertex(v(n)), 3);
    if assemble(&base, &start)?.permanent().is_zero() {
        return Err(Error::Internal("lifted vertex matrix is singular".into()));
    }
    let mut columns = Vec::with_capacity(g.edge_count());
    for (x, k) in inner.edge_entries() {
        let i = g.edge_index(x).ok_or(Error::UnknownEdge(x))?;
        columns.extend(std::iter::repeat_n(SymbolicColumn::pure(i), k as usize));
    }
    let c1 = balloon_combination(&b1, &base)?;
    let c2 = balloon_combination(&b2, &base)?;
    columns.extend([c1.clone(), c2, c1]);
    // 3! vanishes mod 3, so the lift keeps the exact permanent nonzero instead
    let eta = expand_exact(&base, &columns, 2)?;
    let aux = json!({
        "centre": w,
        "rim": rim,
        "inner_balloons": inner_balloons,
        "lift_balloons": [
            { "path": b1.path_vertices, "cycle": b1.cycle_vertices },
            { "path": b2.path_vertices, "cycle": b2.cycle_vertices },
        ],
    });
    Certificate::from_eta(g, eta, Provenance::WheelLarge, aux)
}
