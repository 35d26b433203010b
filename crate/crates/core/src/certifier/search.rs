use num_traits::Zero;
use serde_json::json;

use super::{Certificate, Provenance};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::{CoefficientMatrix, IndexFunction};
use crate::matrix::permanent::permanent_exact;

pub const SEARCH_MAX_EDGES: usize = 20;

/// Exhaustive search for an edge-only index function with values at most
/// `cap` and a nonzero permanent. Candidates are visited by increasing
/// excess sum(max(0, eta(e) - 1)), then lexicographically in edge order.
pub fn search_certificate(g: &Graph, cap: u32) -> Result<Option<Certificate>> {
    let m = g.edge_count();
    if m > SEARCH_MAX_EDGES {
        return Err(Error::ScaleGuard(format!(
            "search limited to {SEARCH_MAX_EDGES} edges, graph has {m}"
        )));
    }
    let base = CoefficientMatrix::canonical(g);
    let mut tried = 0u64;
    for excess in 0..=m * (cap.saturating_sub(1) as usize) {
        let mut values = vec![0u32; m];
        let found = visit(&base, &mut values, 0, m, excess, cap, &mut tried)?;
        if let Some(values) = found {
            let eta = IndexFunction::from_edges(g.edges().iter().copied().zip(values));
            let aux = json!({ "candidates_tried": tried, "excess": excess });
            return Certificate::from_eta(g, eta, Provenance::Search, aux).map(Some);
        }
    }
    Ok(None)
}

fn visit(
    base: &CoefficientMatrix,
    values: &mut Vec<u32>,
    i: usize,
    left: usize,
    excess: usize,
    cap: u32,
    tried: &mut u64,
) -> Result<Option<Vec<u32>>> {
    let rest = values.len() - i;
    if rest == 0 {
        if left != 0 || excess != 0 {
            return Ok(None);
        }
        *tried += 1;
        let mult: Vec<usize> = values.iter().map(|&k| k as usize).collect();
        let mut full = mult;
        full.resize(base.base_columns(), 0);
        let per = permanent_exact(&base.select(&full))?;
        return Ok((!per.is_zero()).then(|| values.clone()));
    }
    for k in (0..=cap.min(left as u32)).rev() {
        let cost = k.saturating_sub(1) as usize;
        if cost > excess {
            continue;
        }
        let left_after = left - k as usize;
        // every remaining edge holds at most 1 + (remaining excess)
        if left_after > rest - 1 + (excess - cost) {
            continue;
        }
        values[i] = k;
        if let Some(found) = visit(base, values, i + 1, left_after, excess - cost, cap, tried)? {
            return Ok(Some(found));
        }
    }
    values[i] = 0;
    Ok(None)
}
