//! Certificates: edge-only index functions with multiplicities at most 2 and
//! a nonzero permanent. Non-bipartite graphs go through an orientation with
//! small out-degrees and balloon expansion of the vertex columns; bipartite
//! graphs through a vertex partition and block composition. Anything the
//! constructive routes cannot handle falls back to exhaustive search.

mod bipartite;
mod nonbipartite;
mod search;

pub use bipartite::{
    build_case1_certificate, build_sink_source_assignment, certify_bipartite,
    choose_bipartite_partition, compose_blocks, BipartiteCase, EdgeAssignment, PartitionPlan,
};
pub use nonbipartite::{
    build_case_orientation, certify_nonbipartite, certify_wheel, nonbipartite_case, CaseTag,
};
pub use search::{search_certificate, SEARCH_MAX_EDGES};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{find_odd_balloons, Edge, Graph, HalinGraph};
use crate::matrix::{
    assemble, balloon_combination, expand_to_edge_columns, permanent_mod, CoefficientMatrix,
    IndexFunction, SymbolicColumn,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    NonbipEvenLeaves,
    NonbipOddKEven,
    NonbipOddKOdd,
    WheelSmall,
    WheelLarge,
    BipCase1TwoSons,
    BipCase1ThreeSons,
    BipCase2,
    BipCase3,
    Search,
}

impl Provenance {
    pub const ALL: [Provenance; 10] = [
        Provenance::NonbipEvenLeaves,
        Provenance::NonbipOddKEven,
        Provenance::NonbipOddKOdd,
        Provenance::WheelSmall,
        Provenance::WheelLarge,
        Provenance::BipCase1TwoSons,
        Provenance::BipCase1ThreeSons,
        Provenance::BipCase2,
        Provenance::BipCase3,
        Provenance::Search,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::NonbipEvenLeaves => "nonbip-even-leaves",
            Provenance::NonbipOddKEven => "nonbip-odd-k-even",
            Provenance::NonbipOddKOdd => "nonbip-odd-k-odd",
            Provenance::WheelSmall => "wheel-small",
            Provenance::WheelLarge => "wheel-large",
            Provenance::BipCase1TwoSons => "bip-case1-two-sons",
            Provenance::BipCase1ThreeSons => "bip-case1-three-sons",
            Provenance::BipCase2 => "bip-case2",
            Provenance::BipCase3 => "bip-case3",
            Provenance::Search => "search",
        }
    }

    pub fn is_constructive(self) -> bool {
        self != Provenance::Search
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Provenance> {
        Provenance::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown provenance {s:?}")))
    }
}

/// Index function with eta(v) = 0, eta(e) <= 2, sum |E|, and the permanent
/// of A_G(eta) under the canonical orientation.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub eta: IndexFunction,
    pub permanent: BigInt,
    pub provenance: Provenance,
    /// Case-specific data: orientation, balloons, partition, edge assignment.
    pub aux: Value,
}

impl Certificate {
    /// Computes the permanent and packages the certificate; fails if it is zero.
    pub fn from_eta(
        g: &Graph,
        eta: IndexFunction,
        provenance: Provenance,
        aux: Value,
    ) -> Result<Certificate> {
        let base = CoefficientMatrix::canonical(g);
        let permanent = assemble(&base, &eta)?.permanent();
        if permanent.is_zero() {
            return Err(Error::ConstructionFailed(format!(
                "{provenance}: resulting matrix is permanent-singular"
            )));
        }
        Ok(Certificate {
            eta,
            permanent,
            provenance,
            aux,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Failure {
    /// An entry names something that is not a vertex or edge of the graph.
    UnknownElement,
    VertexColumn,
    Multiplicity,
    Sum,
    Singular,
    /// Recorded permanent differs from the recomputed one.
    PermanentMismatch,
}

impl Failure {
    pub fn as_str(self) -> &'static str {
        match self {
            Failure::UnknownElement => "unknown-element",
            Failure::VertexColumn => "vertex-column",
            Failure::Multiplicity => "multiplicity",
            Failure::Sum => "sum",
            Failure::Singular => "singular",
            Failure::PermanentMismatch => "permanent-mismatch",
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub failure: Option<Failure>,
    pub detail: String,
    pub permanent: Option<BigInt>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// Re-derives everything a certificate claims, using the canonical orientation.
pub fn verify_certificate(g: &Graph, c: &Certificate) -> VerificationReport {
    let fail = |failure, detail: String| VerificationReport {
        failure: Some(failure),
        detail,
        permanent: None,
    };
    if let Err(e) = c.eta.multiplicities(g) {
        return fail(Failure::UnknownElement, e.to_string());
    }
    if let Some((v, k)) = c.eta.vertex_entries().next() {
        return fail(Failure::VertexColumn, format!("eta({v}) = {k}, expected 0"));
    }
    if let Some((e, k)) = c.eta.edge_entries().find(|&(_, k)| k > 2) {
        return fail(Failure::Multiplicity, format!("eta({e}) = {k} exceeds 2"));
    }
    if !c.eta.is_valid(g) {
        return fail(
            Failure::Sum,
            format!("sum of eta is {}, |E| = {}", c.eta.total(), g.edge_count()),
        );
    }
    let per = assemble(&CoefficientMatrix::canonical(g), &c.eta)
        .expect("checked above")
        .permanent();
    let (failure, detail) = if per.is_zero() {
        (Some(Failure::Singular), "permanent is 0".to_string())
    } else if per != c.permanent {
        (
            Some(Failure::PermanentMismatch),
            format!("recorded {} but recomputed {per}", c.permanent),
        )
    } else {
        (None, format!("permanent {per}"))
    };
    VerificationReport {
        failure,
        detail,
        permanent: Some(per),
    }
}

/// Certificate for any generalized Halin graph. Dispatches on bipartiteness;
/// if the constructive route fails, falls back to exhaustive search and
/// records why in `aux.fallback`.
pub fn certify(h: &HalinGraph) -> Result<Certificate> {
    let g = h.graph();
    let attempt = if g.is_bipartite() {
        certify_bipartite(h)
    } else {
        certify_nonbipartite(h)
    };
    let attempt = attempt.and_then(|c| {
        let report = verify_certificate(g, &c);
        match report.failure {
            None => Ok(c),
            Some(f) => Err(Error::Internal(format!("{} produced {f}: {}", c.provenance, report.detail))),
        }
    });
    match attempt {
        Ok(c) => Ok(c),
        Err(reason) => {
            let mut c = search_certificate(g, 2)?.ok_or_else(|| {
                Error::Internal(format!(
                    "no certificate found by search after constructive failure: {reason}"
                ))
            })?;
            c.aux["fallback"] = Value::String(reason.to_string());
            Ok(c)
        }
    }
}

/// Replaces vertex columns by balloon expressions of 2A(v) and expands them
/// into edge columns, keeping the permanent nonzero mod `p`. Balloons avoid
/// `forbidden`. Returns the edge-only index function and the balloons used.
pub(crate) fn vertex_columns_to_edges(
    g: &Graph,
    vertex_eta: &IndexFunction,
    p: u64,
    forbidden: &BTreeSet<Edge>,
) -> Result<(IndexFunction, Value)> {
    let base = CoefficientMatrix::canonical(g);
    let start = assemble(&base, vertex_eta)?;
    if permanent_mod(start.matrix(), p)? == 0 {
        return Err(Error::SingularModP(p));
    }
    let mut columns = Vec::new();
    let mut used = Vec::new();
    for (v, k) in vertex_eta.vertex_entries() {
        let balloon = find_odd_balloons(g, v, forbidden, 1)
            .into_iter()
            .next()
            .ok_or_else(|| Error::ConstructionFailed(format!("no odd balloon rooted at {v}")))?;
        let combo = balloon_combination(&balloon, &base)?;
        used.push(json!({
            "root": v,
            "path": balloon.path_vertices,
            "cycle": balloon.cycle_vertices,
        }));
        columns.extend(std::iter::repeat_n(combo, k as usize));
    }
    for (e, k) in vertex_eta.edge_entries() {
        let i = g.edge_index(e).ok_or(Error::UnknownEdge(e))?;
        columns.extend(std::iter::repeat_n(SymbolicColumn::pure(i), k as usize));
    }
    let eta = expand_to_edge_columns(&base, &columns, p, (p - 1) as usize)?;
    Ok((eta, Value::Array(used)))
}

pub(crate) fn orientation_json(d: &crate::matrix::Orientation) -> Value {
    Value::Array(d.arcs().map(|(t, h)| json!([t, h])).collect())
}
