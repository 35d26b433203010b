//! JSON readers and writers. Maps use BTreeMap throughout, so output is
//! deterministic and write -> read -> write is byte-identical.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::certifier::{Certificate, Provenance};
use crate::error::{Error, Result};
use crate::graph::{build_halin, Edge, Element, Graph, HalinGraph, HalinKind, PlaneTree, VertexId};
use crate::matrix::IndexFunction;
use crate::weights::{ListAssignment, TotalWeighting, Weight};

fn parse_err(what: &str, e: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{what}: {e}"))
}

/// Pretty JSON with a trailing newline.
pub fn to_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    vertices: Vec<VertexId>,
    edges: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tree: Option<TreeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TreeDoc {
    root: VertexId,
    children: BTreeMap<VertexId, Vec<VertexId>>,
}

/// A graph file, with or without the tree it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphInput {
    Plain(Graph),
    Halin(HalinGraph),
}

impl GraphInput {
    pub fn graph(&self) -> &Graph {
        match self {
            GraphInput::Plain(g) => g,
            GraphInput::Halin(h) => h.graph(),
        }
    }

    pub fn halin(&self) -> Option<&HalinGraph> {
        match self {
            GraphInput::Halin(h) => Some(h),
            GraphInput::Plain(_) => None,
        }
    }
}

pub fn halin_to_json(h: &HalinGraph) -> String {
    let mut doc = plain_doc(h.graph());
    doc.tree = Some(TreeDoc {
        root: h.tree().root(),
        children: h
            .tree()
            .children_map()
            .iter()
            .filter(|(_, c)| !c.is_empty())
            .map(|(&v, c)| (v, c.clone()))
            .collect(),
    });
    doc.kind = Some(h.kind().to_string());
    to_text(&doc)
}

pub fn graph_to_json(g: &Graph) -> String {
    to_text(&plain_doc(g))
}

fn plain_doc(g: &Graph) -> GraphDoc {
    GraphDoc {
        vertices: g.vertices().to_vec(),
        edges: g.edges().iter().map(|e| [e.low(), e.high()]).collect(),
        tree: None,
        kind: None,
    }
}

/// Reads the graph format. With a tree, the Halin graph is rebuilt from it
/// and must match the listed vertices and edges exactly.
pub fn graph_from_json(text: &str) -> Result<GraphInput> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| parse_err("graph", e))?;
    let edges: Vec<Edge> = doc
        .edges
        .iter()
        .map(|&[a, b]| Edge::try_new(a, b))
        .collect::<Result<_>>()?;
    let g = Graph::from_parts(doc.vertices.iter().copied(), edges.iter().copied());
    if g.edge_count() != edges.len() {
        return Err(Error::Parse("graph: duplicate edge".into()));
    }
    let Some(tree) = doc.tree else {
        if doc.kind.is_some() {
            return Err(Error::Parse("graph: \"kind\" given without \"tree\"".into()));
        }
        return Ok(GraphInput::Plain(g));
    };
    let kind: HalinKind = doc.kind.as_deref().unwrap_or("generalized").parse()?;
    let h = build_halin(PlaneTree::new(tree.root, tree.children)?, kind)?;
    if h.graph() != &g {
        return Err(Error::Parse(
            "graph: listed vertices and edges differ from the tree plus leaf cycle".into(),
        ));
    }
    Ok(GraphInput::Halin(h))
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct IndexDoc {
    #[serde(default)]
    vertices: BTreeMap<VertexId, u32>,
    #[serde(default)]
    edges: BTreeMap<String, u32>,
}

fn index_doc(eta: &IndexFunction) -> IndexDoc {
    IndexDoc {
        vertices: eta.vertex_entries().collect(),
        edges: eta.edge_entries().map(|(e, k)| (e.to_string(), k)).collect(),
    }
}

fn index_from_doc(doc: IndexDoc) -> Result<IndexFunction> {
    let mut eta = IndexFunction::from_vertices(doc.vertices);
    for (key, k) in doc.edges {
        let e: Edge = key.parse()?;
        eta.set(Element::Edge(e), k);
    }
    Ok(eta)
}

pub fn index_to_json(eta: &IndexFunction) -> String {
    to_text(&index_doc(eta))
}

pub fn index_from_json(text: &str) -> Result<IndexFunction> {
    index_from_doc(serde_json::from_str(text).map_err(|e| parse_err("index function", e))?)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateDoc {
    eta: IndexDoc,
    permanent: String,
    provenance: String,
    #[serde(default)]
    aux: Value,
}

pub fn certificate_to_json(c: &Certificate) -> String {
    to_text(&CertificateDoc {
        eta: index_doc(&c.eta),
        permanent: c.permanent.to_string(),
        provenance: c.provenance.to_string(),
        aux: c.aux.clone(),
    })
}

pub fn certificate_from_json(text: &str) -> Result<Certificate> {
    let doc: CertificateDoc =
        serde_json::from_str(text).map_err(|e| parse_err("certificate", e))?;
    let permanent: BigInt = doc
        .permanent
        .parse()
        .map_err(|e| parse_err("certificate permanent", e))?;
    Ok(Certificate {
        eta: index_from_doc(doc.eta)?,
        permanent,
        provenance: doc.provenance.parse::<Provenance>()?,
        aux: doc.aux,
    })
}

/// Integers are written as JSON numbers, other rationals as "p/q" strings.
fn weight_to_value(x: &Weight) -> Value {
    if x.is_integer() {
        let n = x.to_integer();
        match i64::try_from(&n) {
            Ok(i) => Value::from(i),
            Err(_) => Value::String(n.to_string()),
        }
    } else {
        Value::String(x.to_string())
    }
}

/// Accepts JSON integers, decimal numbers (read exactly from their text)
/// and strings "p", "p/q" or decimals.
fn weight_from_value(v: &Value) -> Result<Weight> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(Error::Parse(format!("weight {other} is not a number"))),
    };
    parse_weight(&text)
}

pub fn parse_weight(text: &str) -> Result<Weight> {
    let bad = || Error::Parse(format!("weight {text:?} is not a rational number"));
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q == BigInt::from(0) {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if t.contains(['e', 'E']) {
        return Err(bad());
    }
    let (int, frac) = t.split_once('.').unwrap_or((t, ""));
    if frac.chars().any(|c| !c.is_ascii_digit()) {
        return Err(bad());
    }
    let negative = int.starts_with('-');
    let digits = format!("{}{frac}", int.trim_start_matches(['-', '+']));
    let mut n: BigInt = digits.parse().map_err(|_| bad())?;
    if negative {
        n = -n;
    }
    Ok(BigRational::new(n, BigInt::from(10).pow(frac.len() as u32)))
}

fn element_key(z: Element) -> String {
    match z {
        Element::Vertex(v) => v.to_string(),
        Element::Edge(e) => e.to_string(),
    }
}

pub fn lists_to_json(l: &ListAssignment) -> String {
    let section = |items: Vec<(String, &[Weight])>| -> Value {
        Value::Object(
            items
                .into_iter()
                .map(|(k, list)| (k, Value::Array(list.iter().map(weight_to_value).collect())))
                .collect(),
        )
    };
    let mut doc = serde_json::Map::new();
    doc.insert(
        "vertices".into(),
        section(l.vertex_lists().map(|(v, x)| (element_key(Element::Vertex(v)), x)).collect()),
    );
    doc.insert(
        "edges".into(),
        section(l.edge_lists().map(|(e, x)| (element_key(Element::Edge(e)), x)).collect()),
    );
    to_text(&Value::Object(doc))
}

pub fn weighting_to_json(w: &TotalWeighting) -> String {
    let mut doc = serde_json::Map::new();
    doc.insert(
        "vertices".into(),
        Value::Object(w.vertex_weights().map(|(v, x)| (v.to_string(), weight_to_value(x))).collect()),
    );
    doc.insert(
        "edges".into(),
        Value::Object(w.edge_weights().map(|(e, x)| (e.to_string(), weight_to_value(x))).collect()),
    );
    to_text(&Value::Object(doc))
}

/// Walks the two sections of a vertices/edges document.
fn read_sections(
    text: &str,
    what: &str,
    mut each: impl FnMut(Element, &Value) -> Result<()>,
) -> Result<()> {
    let doc: Value = serde_json::from_str(text).map_err(|e| parse_err(what, e))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::Parse(format!("{what}: expected an object")))?;
    for key in obj.keys() {
        if key != "vertices" && key != "edges" {
            return Err(Error::Parse(format!("{what}: unknown field {key:?}")));
        }
    }
    for (section, is_vertex) in [("vertices", true), ("edges", false)] {
        let Some(items) = obj.get(section) else { continue };
        let items = items
            .as_object()
            .ok_or_else(|| Error::Parse(format!("{what}: {section} must be an object")))?;
        for (key, value) in items {
            let z = if is_vertex {
                Element::Vertex(key.parse().map_err(|e| parse_err(&format!("{what} vertex {key:?}"), e))?)
            } else {
                Element::Edge(key.parse()?)
            };
            each(z, value)?;
        }
    }
    Ok(())
}

pub fn lists_from_json(text: &str) -> Result<ListAssignment> {
    let mut l = ListAssignment::new();
    read_sections(text, "list assignment", |z, value| {
        let items = value
            .as_array()
            .ok_or_else(|| Error::Parse(format!("list for {} must be an array", element_key(z))))?;
        if items.is_empty() {
            return Err(Error::ListTooSmall {
                element: element_key(z),
                size: 0,
                needed: 1,
            });
        }
        l.set(z, items.iter().map(weight_from_value).collect::<Result<_>>()?);
        Ok(())
    })?;
    Ok(l)
}

pub fn weighting_from_json(text: &str) -> Result<TotalWeighting> {
    let mut w = TotalWeighting::new();
    read_sections(text, "weighting", |z, value| {
        w.set(z, weight_from_value(value)?);
        Ok(())
    })?;
    Ok(w)
}
