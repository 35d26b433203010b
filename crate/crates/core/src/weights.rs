//! Total weightings, list assignments, the certificate-driven solver and a
//! brute-force (k, k')-choosability spot check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::seq::index::sample;
use rand::Rng;

use crate::certifier::{verify_certificate, Certificate};
use crate::error::{Error, Result};
use crate::graph::{Edge, Element, Graph, VertexId};

pub type Weight = BigRational;

pub fn integer_weight(x: i64) -> Weight {
    BigRational::from_integer(BigInt::from(x))
}

/// Permissible weights per vertex and edge. Lists are kept sorted and free of duplicates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ListAssignment {
    vertices: BTreeMap<VertexId, Vec<Weight>>,
    edges: BTreeMap<Edge, Vec<Weight>>,
}

impl ListAssignment {
    pub fn new() -> ListAssignment {
        ListAssignment::default()
    }

    pub fn set(&mut self, z: Element, mut list: Vec<Weight>) {
        list.sort();
        list.dedup();
        match z {
            Element::Vertex(v) => {
                self.vertices.insert(v, list);
            }
            Element::Edge(e) => {
                self.edges.insert(e, list);
            }
        }
    }

    pub fn get(&self, z: Element) -> Option<&[Weight]> {
        match z {
            Element::Vertex(v) => self.vertices.get(&v),
            Element::Edge(e) => self.edges.get(&e),
        }
        .map(Vec::as_slice)
    }

    /// Same list on every vertex and the same list on every edge.
    pub fn uniform(g: &Graph, vertex_list: &[Weight], edge_list: &[Weight]) -> ListAssignment {
        let mut l = ListAssignment::new();
        for z in g.elements() {
            let list = match z {
                Element::Vertex(_) => vertex_list,
                Element::Edge(_) => edge_list,
            };
            l.set(z, list.to_vec());
        }
        l
    }

    /// Random (k, k')-assignment with distinct integers from [-window, window].
    pub fn random_integer<R: Rng>(
        g: &Graph,
        k: usize,
        k_prime: usize,
        window: i64,
        rng: &mut R,
    ) -> Result<ListAssignment> {
        let span = (2 * window + 1) as usize;
        if k.max(k_prime) > span {
            return Err(Error::ListTooSmall {
                element: format!("window [-{window}, {window}]"),
                size: span,
                needed: k.max(k_prime),
            });
        }
        let mut l = ListAssignment::new();
        for z in g.elements() {
            let size = if matches!(z, Element::Vertex(_)) { k } else { k_prime };
            let list = sample(rng, span, size)
                .into_iter()
                .map(|i| integer_weight(i as i64 - window))
                .collect();
            l.set(z, list);
        }
        Ok(l)
    }

    pub fn vertex_lists(&self) -> impl Iterator<Item = (VertexId, &[Weight])> {
        self.vertices.iter().map(|(&v, l)| (v, l.as_slice()))
    }

    pub fn edge_lists(&self) -> impl Iterator<Item = (Edge, &[Weight])> {
        self.edges.iter().map(|(&e, l)| (e, l.as_slice()))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TotalWeighting {
    vertices: BTreeMap<VertexId, Weight>,
    edges: BTreeMap<Edge, Weight>,
}

impl TotalWeighting {
    pub fn new() -> TotalWeighting {
        TotalWeighting::default()
    }

    pub fn set(&mut self, z: Element, x: Weight) {
        match z {
            Element::Vertex(v) => {
                self.vertices.insert(v, x);
            }
            Element::Edge(e) => {
                self.edges.insert(e, x);
            }
        }
    }

    pub fn get(&self, z: Element) -> Option<&Weight> {
        match z {
            Element::Vertex(v) => self.vertices.get(&v),
            Element::Edge(e) => self.edges.get(&e),
        }
    }

    pub fn vertex_weights(&self) -> impl Iterator<Item = (VertexId, &Weight)> {
        self.vertices.iter().map(|(&v, x)| (v, x))
    }

    pub fn edge_weights(&self) -> impl Iterator<Item = (Edge, &Weight)> {
        self.edges.iter().map(|(&e, x)| (e, x))
    }

    /// phi(v) plus the weights of the edges at v.
    pub fn weighted_degree(&self, g: &Graph, v: VertexId) -> Result<Weight> {
        let mut s = self.require(Element::Vertex(v))?.clone();
        for e in g.incident_edges(v) {
            s += self.require(Element::Edge(e))?;
        }
        Ok(s)
    }

    fn require(&self, z: Element) -> Result<&Weight> {
        self.get(z).ok_or_else(|| Error::MissingWeight(element_name(z)))
    }
}

fn element_name(z: Element) -> String {
    match z {
        Element::Vertex(v) => format!("vertex {v}"),
        Element::Edge(e) => format!("edge {e}"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Properness {
    Proper,
    /// The two ends of this edge have equal weighted degrees.
    Violated(Edge),
}

impl Properness {
    pub fn is_proper(self) -> bool {
        self == Properness::Proper
    }
}

/// Checks every edge; reports the first (in edge order) whose ends collide.
pub fn is_proper(g: &Graph, w: &TotalWeighting) -> Result<Properness> {
    for z in g.elements() {
        w.require(z)?;
    }
    let sums: BTreeMap<VertexId, Weight> = g
        .vertices()
        .iter()
        .map(|&v| Ok((v, w.weighted_degree(g, v)?)))
        .collect::<Result<_>>()?;
    Ok(g.edges()
        .iter()
        .find(|e| sums[&e.low()] == sums[&e.high()])
        .map_or(Properness::Proper, |&e| Properness::Violated(e)))
}

/// prod over edges of (sigma(high) - sigma(low)): the total-weight polynomial
/// under the canonical orientation, evaluated at `w`.
pub fn evaluate_polynomial(g: &Graph, w: &TotalWeighting) -> Result<Weight> {
    let mut acc = Weight::one();
    for e in g.edges() {
        acc *= w.weighted_degree(g, e.high())? - w.weighted_degree(g, e.low())?;
    }
    Ok(acc)
}

/// Backtracking over a grid of candidate values per element (canonical
/// element order). Each edge is checked as soon as its last dependency is set.
struct Grid<'a> {
    g: &'a Graph,
    elements: Vec<Element>,
    candidates: Vec<Vec<Weight>>,
    /// Edges whose constraint becomes decidable once element i is assigned.
    ready: Vec<Vec<Edge>>,
}

impl<'a> Grid<'a> {
    fn new(g: &'a Graph, candidates: Vec<Vec<Weight>>) -> Grid<'a> {
        let elements: Vec<Element> = g.elements().collect();
        let mut ready = vec![Vec::new(); elements.len()];
        for &e in g.edges() {
            let last = [e.low(), e.high()]
                .into_iter()
                .flat_map(|v| {
                    g.incident_edge_indices(v)
                        .iter()
                        .copied()
                        .chain([g.element_index(Element::Vertex(v)).unwrap()])
                })
                .max()
                .unwrap();
            ready[last].push(e);
        }
        Grid {
            g,
            elements,
            candidates,
            ready,
        }
    }

    fn search(&self) -> Option<TotalWeighting> {
        let mut w = TotalWeighting::new();
        self.walk(0, &mut w).then_some(w)
    }

    fn walk(&self, i: usize, w: &mut TotalWeighting) -> bool {
        if i == self.elements.len() {
            return true;
        }
        for x in &self.candidates[i] {
            w.set(self.elements[i], x.clone());
            let ok = self.ready[i].iter().all(|e| {
                w.weighted_degree(self.g, e.low()).unwrap()
                    != w.weighted_degree(self.g, e.high()).unwrap()
            });
            if ok && self.walk(i + 1, w) {
                return true;
            }
        }
        false
    }
}

/// Proper L-total weighting driven by a verified certificate: every element
/// keeps its eta(z) + 1 smallest permissible values and the resulting grid is
/// searched. A miss contradicts the certificate and is reported as an error.
pub fn solve(g: &Graph, c: &Certificate, l: &ListAssignment) -> Result<TotalWeighting> {
    let report = verify_certificate(g, c);
    if let Some(f) = report.failure {
        return Err(Error::InvalidCertificate(format!("{f}: {}", report.detail)));
    }
    let mut candidates = Vec::with_capacity(g.edge_count() + g.vertex_count());
    for z in g.elements() {
        let need = c.eta.get(z) as usize + 1;
        let list = l.get(z).ok_or_else(|| Error::MissingWeight(element_name(z)))?;
        if list.len() < need {
            return Err(Error::ListTooSmall {
                element: element_name(z),
                size: list.len(),
                needed: need,
            });
        }
        candidates.push(list[..need].to_vec());
    }
    let w = Grid::new(g, candidates).search().ok_or_else(|| {
        Error::Internal("candidate grid exhausted despite a verified certificate".into())
    })?;
    match is_proper(g, &w)? {
        Properness::Proper => Ok(w),
        Properness::Violated(e) => Err(Error::Internal(format!("solver output collides at {e}"))),
    }
}

pub const CHOOSABILITY_MAX_ELEMENTS: usize = 10;
pub const CHOOSABILITY_MAX_ASSIGNMENTS: u128 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoosabilityReport {
    pub assignments_checked: u64,
    /// First assignment (in enumeration order) with no proper weighting.
    pub counterexample: Option<ListAssignment>,
}

impl ChoosabilityReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All k-subsets of `values`, lexicographic.
fn subsets(values: &[Weight], k: usize) -> Vec<Vec<Weight>> {
    fn rec(values: &[Weight], k: usize, start: usize, cur: &mut Vec<Weight>, out: &mut Vec<Vec<Weight>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..values.len() {
            if values.len() - i < k - cur.len() {
                break;
            }
            cur.push(values[i].clone());
            rec(values, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(values, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Tries every (k, k')-assignment with integer lists inside [-window, window].
/// Passing is only evidence over this finite family, never a proof of
/// choosability; a failure is a genuine counterexample.
pub fn brute_force_choosable(
    g: &Graph,
    k: usize,
    k_prime: usize,
    window: i64,
) -> Result<ChoosabilityReport> {
    let n = g.vertex_count() + g.edge_count();
    if n > CHOOSABILITY_MAX_ELEMENTS {
        return Err(Error::ScaleGuard(format!(
            "choosability check limited to {CHOOSABILITY_MAX_ELEMENTS} elements, graph has {n}"
        )));
    }
    let span = (2 * window + 1) as u128;
    let total = binomial(span, k as u128).pow(g.vertex_count() as u32)
        * binomial(span, k_prime as u128).pow(g.edge_count() as u32);
    if total > CHOOSABILITY_MAX_ASSIGNMENTS {
        return Err(Error::ScaleGuard(format!("{total} list assignments to check")));
    }
    let values: Vec<Weight> = (-window..=window).map(integer_weight).collect();
    let elements: Vec<Element> = g.elements().collect();
    let options: Vec<Vec<Vec<Weight>>> = elements
        .iter()
        .map(|z| subsets(&values, if matches!(z, Element::Vertex(_)) { k } else { k_prime }))
        .collect();
    if options.iter().any(Vec::is_empty) {
        return Err(Error::ListTooSmall {
            element: "window".into(),
            size: values.len(),
            needed: k.max(k_prime),
        });
    }

    let mut digits = vec![0usize; elements.len()];
    let mut checked = 0u64;
    loop {
        let lists: Vec<Vec<Weight>> = digits.iter().zip(&options).map(|(&d, o)| o[d].clone()).collect();
        checked += 1;
        if Grid::new(g, lists.clone()).search().is_none() {
            let mut l = ListAssignment::new();
            for (z, list) in elements.iter().zip(lists) {
                l.set(*z, list);
            }
            return Ok(ChoosabilityReport {
                assignments_checked: checked,
                counterexample: Some(l),
            });
        }
        // mixed-radix increment, last element fastest
        let mut i = elements.len();
        loop {
            if i == 0 {
                return Ok(ChoosabilityReport {
                    assignments_checked: checked,
                    counterexample: None,
                });
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < options[i].len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// True when every weight of `w` is drawn from the matching list of `l`.
pub fn respects_lists(w: &TotalWeighting, l: &ListAssignment) -> bool {
    w.vertex_weights()
        .map(|(v, x)| (Element::Vertex(v), x))
        .chain(w.edge_weights().map(|(e, x)| (Element::Edge(e), x)))
        .all(|(z, x)| l.get(z).is_some_and(|list| list.contains(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn ints(xs: &[i64]) -> Vec<Weight> {
        xs.iter().map(|&x| integer_weight(x)).collect()
    }

    fn constant(g: &Graph, x: i64) -> TotalWeighting {
        let mut w = TotalWeighting::new();
        for z in g.elements() {
            w.set(z, integer_weight(x));
        }
        w
    }

    #[test]
    fn k2_properness() {
        let g = build_graph(&[(1, 2)]).unwrap();
        let mut w = constant(&g, 1);
        assert_eq!(is_proper(&g, &w).unwrap(), Properness::Violated(Edge::new(1, 2)));
        w.set(Element::Vertex(2), integer_weight(2));
        assert!(is_proper(&g, &w).unwrap().is_proper());
    }

    #[test]
    fn p3_all_ones_is_proper() {
        let g = build_graph(&[(1, 2), (2, 3)]).unwrap();
        assert!(is_proper(&g, &constant(&g, 1)).unwrap().is_proper());
    }

    #[test]
    fn missing_weight_is_named() {
        let g = build_graph(&[(1, 2)]).unwrap();
        let mut w = TotalWeighting::new();
        w.set(Element::Vertex(1), integer_weight(0));
        w.set(Element::Vertex(2), integer_weight(0));
        assert_eq!(is_proper(&g, &w), Err(Error::MissingWeight("edge 1-2".into())));
    }

    #[test]
    fn brute_force_examples() {
        let k2 = build_graph(&[(1, 2)]).unwrap();
        let r = brute_force_choosable(&k2, 1, 3, 2).unwrap();
        assert!(!r.passed());
        let triangle = build_graph(&[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert!(brute_force_choosable(&triangle, 1, 3, 2).unwrap().passed());
        let p3 = build_graph(&[(1, 2), (2, 3)]).unwrap();
        assert!(brute_force_choosable(&p3, 1, 3, 1).unwrap().passed());
    }

    #[test]
    fn brute_force_guard() {
        let g = build_graph(&[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]).unwrap();
        assert!(matches!(brute_force_choosable(&g, 1, 3, 2), Err(Error::ScaleGuard(_))));
    }

    #[test]
    fn subsets_are_lexicographic() {
        let s = subsets(&ints(&[1, 2, 3]), 2);
        assert_eq!(s, vec![ints(&[1, 2]), ints(&[1, 3]), ints(&[2, 3])]);
    }
}
