use std::collections::BTreeMap;

use num_traits::Zero;

use super::permanent::{permanent_exact, permanent_mod};
use super::{CoefficientMatrix, IndexFunction, IntMatrix};
use crate::error::{Error, Result};
use crate::graph::{Balloon, Element};

/// Integral combination of base columns of A_G, keyed by base column index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicColumn {
    combo: BTreeMap<usize, i64>,
}

impl SymbolicColumn {
    pub fn pure(index: usize) -> SymbolicColumn {
        SymbolicColumn {
            combo: BTreeMap::from([(index, 1)]),
        }
    }

    /// Zero coefficients are dropped; panics if nothing remains.
    pub fn from_terms(terms: impl IntoIterator<Item = (usize, i64)>) -> SymbolicColumn {
        let mut combo = BTreeMap::new();
        for (i, c) in terms {
            *combo.entry(i).or_insert(0) += c;
        }
        combo.retain(|_, c| *c != 0);
        assert!(!combo.is_empty(), "symbolic column needs a nonzero coefficient");
        SymbolicColumn { combo }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.combo.iter().map(|(&i, &c)| (i, c))
    }

    /// Single base column with coefficient 1.
    pub fn pure_index(&self) -> Option<usize> {
        match self.combo.iter().next() {
            Some((&i, &1)) if self.combo.len() == 1 => Some(i),
            _ => None,
        }
    }

    pub fn evaluate(&self, base: &CoefficientMatrix) -> Vec<i64> {
        let mut out = vec![0i64; base.rows()];
        for (&i, &c) in &self.combo {
            for (o, x) in out.iter_mut().zip(base.column(i)) {
                *o += c * x;
            }
        }
        out
    }
}

/// Edge-column expression of 2·A_G(root) along an odd balloon:
/// path edges alternate +2, -2, ...; the cycle edges alternate +1, -1, ...
/// with an overall sign (-1)^(k-1), k the number of path vertices.
pub fn balloon_combination(b: &Balloon, base: &CoefficientMatrix) -> Result<SymbolicColumn> {
    if !b.is_odd() {
        return Err(Error::EvenBalloon);
    }
    let g = base.graph();
    if !b.is_valid_in(g) {
        return Err(Error::ConstructionFailed("balloon is not a subgraph of the host".into()));
    }
    let index = |e| g.edge_index(e).expect("balloon edge in graph");
    let mut terms = Vec::new();
    for (i, e) in b.path_edges().into_iter().enumerate() {
        terms.push((index(e), if i % 2 == 0 { 2 } else { -2 }));
    }
    let cycle_sign = if b.path_vertices.len() % 2 == 1 { 1 } else { -1 };
    for (j, e) in b.cycle_edges().into_iter().enumerate() {
        terms.push((index(e), if j % 2 == 0 { cycle_sign } else { -cycle_sign }));
    }
    let combo = SymbolicColumn::from_terms(terms);

    let root = base.column_of(Element::Vertex(b.root())).expect("root in graph");
    let doubled: Vec<i64> = root.iter().map(|x| 2 * x).collect();
    if combo.evaluate(base) != doubled {
        return Err(Error::Internal("balloon combination does not reproduce 2A(root)".into()));
    }
    Ok(combo)
}

enum Test {
    Modular(u64),
    Exact,
}

impl Test {
    fn nonzero(&self, m: &IntMatrix) -> Result<bool> {
        Ok(match self {
            Test::Modular(p) => permanent_mod(m, *p)? != 0,
            Test::Exact => !permanent_exact(m)?.is_zero(),
        })
    }

    fn coefficient_ok(&self, c: i64) -> bool {
        match self {
            Test::Modular(p) => c.rem_euclid(*p as i64) != 0,
            Test::Exact => c != 0,
        }
    }
}

/// Multilinear branch-and-prune: replaces every non-pure column by one of
/// its base columns, always keeping the permanent nonzero mod `p`.
///
/// A base column used `p` or more times forces the permanent to vanish mod
/// `p`, so with `cap = p - 1` the cap is never the binding constraint.
/// Candidates are tried by descending |coefficient|, then base column order.
pub fn expand_to_edge_columns(
    base: &CoefficientMatrix,
    columns: &[SymbolicColumn],
    p: u64,
    cap: usize,
) -> Result<IndexFunction> {
    expand(base, columns, Test::Modular(p), cap)
}

/// Same as [`expand_to_edge_columns`] but keeps the exact permanent nonzero.
/// Branches that would push a base column over `cap` are skipped.
pub fn expand_exact(
    base: &CoefficientMatrix,
    columns: &[SymbolicColumn],
    cap: usize,
) -> Result<IndexFunction> {
    expand(base, columns, Test::Exact, cap)
}

fn expand(
    base: &CoefficientMatrix,
    columns: &[SymbolicColumn],
    test: Test,
    cap: usize,
) -> Result<IndexFunction> {
    if columns.len() != base.rows() {
        return Err(Error::NotSquare {
            rows: base.rows(),
            cols: columns.len(),
        });
    }
    let mut current: Vec<Vec<i64>> = columns.iter().map(|c| c.evaluate(base)).collect();
    let mut chosen: Vec<Option<usize>> = columns.iter().map(SymbolicColumn::pure_index).collect();
    let rows = base.rows();
    if !test.nonzero(&IntMatrix::from_columns(rows, &current))? {
        return Err(match test {
            Test::Modular(p) => Error::SingularModP(p),
            Test::Exact => Error::SingularModP(0),
        });
    }
    let mut used = vec![0usize; base.base_columns()];
    for i in chosen.iter().flatten() {
        used[*i] += 1;
    }

    for (slot, column) in columns.iter().enumerate() {
        if chosen[slot].is_some() {
            continue;
        }
        let mut candidates: Vec<(usize, i64)> = column.terms().collect();
        candidates.sort_by_key(|&(i, c)| (std::cmp::Reverse(c.abs()), i));
        let saved = current[slot].clone();
        let mut picked = None;
        for (index, coef) in candidates {
            if !test.coefficient_ok(coef) || used[index] >= cap {
                continue;
            }
            current[slot] = base.column(index);
            if test.nonzero(&IntMatrix::from_columns(rows, &current))? {
                picked = Some(index);
                break;
            }
        }
        match picked {
            Some(index) => {
                used[index] += 1;
                chosen[slot] = Some(index);
            }
            None => {
                current[slot] = saved;
                return Err(Error::Internal(format!(
                    "no branch of column {slot} keeps the permanent nonzero"
                )));
            }
        }
    }
    Ok(IndexFunction::from_multiplicities(base.graph(), &used))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, Edge};

    fn triangle() -> CoefficientMatrix {
        CoefficientMatrix::canonical(&build_graph(&[(1, 2), (2, 3), (1, 3)]).unwrap())
    }

    #[test]
    fn triangle_balloon_signs() {
        let base = triangle();
        let g = base.graph().clone();
        let b = Balloon {
            path_vertices: vec![1],
            cycle_vertices: vec![1, 2, 3],
        };
        let combo = balloon_combination(&b, &base).unwrap();
        let e = |a, b| g.edge_index(Edge::new(a, b)).unwrap();
        let terms: BTreeMap<usize, i64> = combo.terms().collect();
        assert_eq!(terms[&e(1, 2)], 1);
        assert_eq!(terms[&e(2, 3)], -1);
        assert_eq!(terms[&e(1, 3)], 1);
    }

    #[test]
    fn path_edge_gets_coefficient_two() {
        let g = build_graph(&[(0, 1), (1, 2), (2, 3), (1, 3)]).unwrap();
        let base = CoefficientMatrix::canonical(&g);
        let b = Balloon {
            path_vertices: vec![0, 1],
            cycle_vertices: vec![1, 2, 3],
        };
        let combo = balloon_combination(&b, &base).unwrap();
        let terms: BTreeMap<usize, i64> = combo.terms().collect();
        assert_eq!(terms[&g.edge_index(Edge::new(0, 1)).unwrap()], 2);
        assert_eq!(terms[&g.edge_index(Edge::new(1, 2)).unwrap()], -1);
        assert_eq!(terms[&g.edge_index(Edge::new(2, 3)).unwrap()], 1);
        assert_eq!(terms[&g.edge_index(Edge::new(1, 3)).unwrap()], -1);
    }

    #[test]
    fn even_balloon_rejected() {
        let g = build_graph(&[(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let b = Balloon {
            path_vertices: vec![1],
            cycle_vertices: vec![1, 2, 3, 4],
        };
        assert_eq!(
            balloon_combination(&b, &CoefficientMatrix::canonical(&g)),
            Err(Error::EvenBalloon)
        );
    }

    #[test]
    fn pure_input_is_a_fixed_point() {
        let base = triangle();
        let cols: Vec<SymbolicColumn> = (0..3).map(SymbolicColumn::pure).collect();
        let m = IntMatrix::from_columns(3, &cols.iter().map(|c| c.evaluate(&base)).collect::<Vec<_>>());
        if permanent_mod(&m, 3).unwrap() != 0 {
            let eta = expand_to_edge_columns(&base, &cols, 3, 2).unwrap();
            assert!(eta.edge_values().all(|k| k == 1));
        } else {
            assert_eq!(expand_to_edge_columns(&base, &cols, 3, 2), Err(Error::SingularModP(3)));
        }
    }
}
