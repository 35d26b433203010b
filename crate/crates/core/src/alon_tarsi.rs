//! Eulerian sub-digraph counts and a brute-force expansion of the graph
//! polynomials, used to cross-check permanent-derived coefficients.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::matrix::{build_coefficient_matrix, Orientation};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EulerianCount {
    pub even_count: u64,
    pub odd_count: u64,
}

impl EulerianCount {
    pub fn difference(&self) -> i64 {
        self.even_count as i64 - self.odd_count as i64
    }
}

/// Arcs that can lie in some Eulerian sub-digraph: repeatedly drops every
/// vertex that has no remaining in-arc or no remaining out-arc.
pub fn eulerian_core(d: &Orientation) -> Vec<(VertexId, VertexId)> {
    let mut arcs: Vec<(VertexId, VertexId)> = d.arcs().collect();
    loop {
        let mut outs: BTreeMap<VertexId, usize> = BTreeMap::new();
        let mut ins: BTreeMap<VertexId, usize> = BTreeMap::new();
        for &(t, h) in &arcs {
            *outs.entry(t).or_default() += 1;
            *ins.entry(h).or_default() += 1;
        }
        let before = arcs.len();
        arcs.retain(|(t, h)| ins.contains_key(t) && outs.contains_key(h));
        if arcs.len() == before {
            return arcs;
        }
    }
}

/// Counts even and odd Eulerian sub-digraphs (the empty one is even).
pub fn count_eulerian(d: &Orientation) -> EulerianCount {
    count_over(&eulerian_core(d), None)
}

/// Counts only the Eulerian sub-digraphs that use `arc` (tail, head).
pub fn count_eulerian_containing(d: &Orientation, arc: (VertexId, VertexId)) -> EulerianCount {
    let core = eulerian_core(d);
    if !core.contains(&arc) {
        return EulerianCount::default();
    }
    count_over(&core, Some(arc))
}

fn count_over(arcs: &[(VertexId, VertexId)], required: Option<(VertexId, VertexId)>) -> EulerianCount {
    let mut last: BTreeMap<VertexId, usize> = BTreeMap::new();
    for (i, &(t, h)) in arcs.iter().enumerate() {
        last.insert(t, i);
        last.insert(h, i);
    }
    let mut balance: BTreeMap<VertexId, i64> = last.keys().map(|&v| (v, 0)).collect();
    let mut count = EulerianCount::default();
    walk(arcs, 0, 0, required, &last, &mut balance, &mut count);
    count
}

fn walk(
    arcs: &[(VertexId, VertexId)],
    i: usize,
    size: usize,
    required: Option<(VertexId, VertexId)>,
    last: &BTreeMap<VertexId, usize>,
    balance: &mut BTreeMap<VertexId, i64>,
    count: &mut EulerianCount,
) {
    if i == arcs.len() {
        if size % 2 == 0 {
            count.even_count += 1;
        } else {
            count.odd_count += 1;
        }
        return;
    }
    let (t, h) = arcs[i];
    let closed = |balance: &BTreeMap<VertexId, i64>| {
        [t, h].iter().all(|v| last[v] != i || balance[v] == 0)
    };
    let must_take = required == Some((t, h));
    if !must_take && closed(balance) {
        walk(arcs, i + 1, size, required, last, balance, count);
    }
    *balance.get_mut(&t).unwrap() += 1;
    *balance.get_mut(&h).unwrap() -= 1;
    if closed(balance) {
        walk(arcs, i + 1, size + 1, required, last, balance, count);
    }
    *balance.get_mut(&t).unwrap() -= 1;
    *balance.get_mut(&h).unwrap() += 1;
}

/// |EE(D)| - |EO(D)|; equals the coefficient of prod x_v^{outdeg(v)} in the
/// graph polynomial up to a sign that depends on conventions.
pub fn alon_tarsi_coefficient(d: &Orientation) -> i64 {
    count_eulerian(d).difference()
}

pub const ORACLE_MAX_EDGES: usize = 12;

/// Coefficients of an explicitly expanded polynomial. Exponent vectors follow
/// the base column order: edges, then vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialOracleResult {
    pub coefficients: HashMap<Vec<u8>, i128>,
}

impl PolynomialOracleResult {
    pub fn coefficient(&self, exponents: &[u8]) -> i128 {
        self.coefficients.get(exponents).copied().unwrap_or(0)
    }
}

/// Expands prod_e sum_z A_G[e,z] x_z (the total-weight polynomial, one
/// factor per oriented edge) by direct distribution. With
/// `restrict_edges_to_zero` every edge variable is set to 0, which leaves
/// the graph polynomial in the vertex variables.
pub fn expand_polynomial_oracle(
    g: &Graph,
    d: &Orientation,
    restrict_edges_to_zero: bool,
) -> Result<PolynomialOracleResult> {
    if g.edge_count() > ORACLE_MAX_EDGES {
        return Err(Error::ScaleGuard(format!(
            "polynomial oracle limited to {ORACLE_MAX_EDGES} edges, graph has {}",
            g.edge_count()
        )));
    }
    let a = build_coefficient_matrix(g, d)?;
    let width = a.base_columns();
    let mut poly: HashMap<Vec<u8>, i128> = HashMap::from([(vec![0u8; width], 1)]);
    for r in 0..a.rows() {
        let factor: Vec<(usize, i64)> = a
            .matrix()
            .row(r)
            .iter()
            .enumerate()
            .filter(|&(c, &x)| x != 0 && (!restrict_edges_to_zero || c >= g.edge_count()))
            .map(|(c, &x)| (c, x))
            .collect();
        let mut next: HashMap<Vec<u8>, i128> = HashMap::with_capacity(poly.len() * factor.len());
        for (mono, coef) in &poly {
            for &(c, x) in &factor {
                let mut m = mono.clone();
                m[c] += 1;
                *next.entry(m).or_insert(0) += coef * x as i128;
            }
        }
        next.retain(|_, c| *c != 0);
        poly = next;
    }
    Ok(PolynomialOracleResult { coefficients: poly })
}

/// Exponent vector of prod x_v^{outdeg(v)}.
pub fn out_degree_monomial(g: &Graph, d: &Orientation) -> Vec<u8> {
    let mut exps = vec![0u8; g.edge_count() + g.vertex_count()];
    for (v, k) in d.out_degrees(g) {
        exps[g.edge_count() + g.vertex_index(v).unwrap()] = k as u8;
    }
    exps
}

/// Edge subsets of the whole orientation, no pruning; test oracle only.
pub fn count_eulerian_bruteforce(d: &Orientation) -> EulerianCount {
    let arcs: Vec<(VertexId, VertexId)> = d.arcs().collect();
    assert!(arcs.len() <= 24, "brute force limited to 24 arcs");
    let mut count = EulerianCount::default();
    for mask in 0u32..(1 << arcs.len()) {
        let mut bal: BTreeMap<VertexId, i64> = BTreeMap::new();
        for (i, &(t, h)) in arcs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                *bal.entry(t).or_default() += 1;
                *bal.entry(h).or_default() -= 1;
            }
        }
        if bal.values().all(|&b| b == 0) {
            if mask.count_ones() % 2 == 0 {
                count.even_count += 1;
            } else {
                count.odd_count += 1;
            }
        }
    }
    count
}

/// Orientation of a directed cycle through `cycle` in the given order.
pub fn directed_cycle(g: &Graph, cycle: &[VertexId]) -> Result<Orientation> {
    let arcs: Vec<(VertexId, VertexId)> = (0..cycle.len())
        .map(|i| (cycle[i], cycle[(i + 1) % cycle.len()]))
        .collect();
    for &(t, h) in &arcs {
        let e = Edge::try_new(t, h)?;
        if !g.has_edge(e) {
            return Err(Error::UnknownEdge(e));
        }
    }
    Orientation::from_arcs(g, &arcs)
}
