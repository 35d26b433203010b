//! The coefficient matrix A_G of a graph polynomial, weight matrices drawn
//! from its columns, permanents, and the column algebra used to move between
//! vertex columns and edge columns.

mod columns;
mod index;
mod orientation;
pub mod permanent;

pub use columns::{balloon_combination, expand_exact, expand_to_edge_columns, SymbolicColumn};
pub use index::IndexFunction;
pub use orientation::Orientation;
pub use permanent::{is_prime, permanent_exact, permanent_mod, permanent_ryser};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Element, Graph};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<IntMatrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Parse(format!(
                "ragged matrix: row of length {} where {cols} expected",
                bad.len()
            )));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<i64>]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, &x) in col.iter().enumerate() {
                m.set(r, c, x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: i64) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// Keeps the listed rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c));
            }
        }
        m
    }

    /// Text dump: header `rows cols`, then one space-separated row per line.
    pub fn to_dump(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(i64::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}

impl FromStr for IntMatrix {
    type Err = Error;

    fn from_str(text: &str) -> Result<IntMatrix> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix dump".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("line 1: bad header {header:?}"))))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Parse(format!("line 1: header must be `rows cols`, got {header:?}")));
        };
        let mut data = Vec::with_capacity(rows * cols);
        let mut seen = 0;
        for (no, line) in lines {
            let vals: Vec<i64> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Parse(format!("line {}: bad entry {t:?}", no + 1))))
                .collect::<Result<_>>()?;
            if vals.len() != cols {
                return Err(Error::Parse(format!(
                    "line {}: expected {cols} entries, found {}",
                    no + 1,
                    vals.len()
                )));
            }
            data.extend(vals);
            seen += 1;
        }
        if seen != rows {
            return Err(Error::Parse(format!("expected {rows} rows, found {seen}")));
        }
        Ok(IntMatrix { rows, cols, data })
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dump())
    }
}

/// A_G for a fixed orientation: one row per edge, one column per edge then per vertex.
///
/// Row e = (u -> v): +1 at v and at every other edge at v, -1 at u and at
/// every other edge at u, and 0 at e itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientMatrix {
    graph: Graph,
    orientation: Orientation,
    matrix: IntMatrix,
}

pub fn build_coefficient_matrix(g: &Graph, d: &Orientation) -> Result<CoefficientMatrix> {
    d.check_covers(g)?;
    let m = g.edge_count();
    let mut matrix = IntMatrix::zeros(m, m + g.vertex_count());
    for (row, &e) in g.edges().iter().enumerate() {
        let (tail, head) = d.arc(e);
        for (end, sign) in [(head, 1), (tail, -1)] {
            matrix.set(row, m + g.vertex_index(end).unwrap(), sign);
            for &f in g.incident_edge_indices(end) {
                if f != row {
                    matrix.set(row, f, sign);
                }
            }
        }
    }
    Ok(CoefficientMatrix {
        graph: g.clone(),
        orientation: d.clone(),
        matrix,
    })
}

impl CoefficientMatrix {
    /// With the canonical orientation (smaller id to larger id).
    pub fn canonical(g: &Graph) -> CoefficientMatrix {
        build_coefficient_matrix(g, &Orientation::canonical(g)).expect("canonical covers")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn base_columns(&self) -> usize {
        self.matrix.cols()
    }

    pub fn column(&self, index: usize) -> Vec<i64> {
        self.matrix.column(index)
    }

    pub fn column_of(&self, z: Element) -> Option<Vec<i64>> {
        self.graph.element_index(z).map(|i| self.column(i))
    }

    /// Columns repeated by `multiplicity` (aligned with base columns).
    pub fn select(&self, multiplicity: &[usize]) -> IntMatrix {
        let cols: Vec<usize> = multiplicity
            .iter()
            .enumerate()
            .flat_map(|(c, &k)| std::iter::repeat_n(c, k))
            .collect();
        let rows: Vec<usize> = (0..self.rows()).collect();
        self.matrix.submatrix(&rows, &cols)
    }
}

/// A_G(eta): every column A_G(z) repeated eta(z) times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMatrix {
    eta: IndexFunction,
    multiplicity: Vec<usize>,
    matrix: IntMatrix,
}

pub fn assemble(base: &CoefficientMatrix, eta: &IndexFunction) -> Result<WeightMatrix> {
    let multiplicity = eta.multiplicities(base.graph())?;
    let sum: usize = multiplicity.iter().sum();
    if sum != base.rows() {
        return Err(Error::InvalidIndex {
            sum,
            edges: base.rows(),
        });
    }
    Ok(WeightMatrix {
        eta: eta.clone(),
        matrix: base.select(&multiplicity),
        multiplicity,
    })
}

impl WeightMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn eta(&self) -> &IndexFunction {
        &self.eta
    }

    pub fn multiplicity(&self) -> &[usize] {
        &self.multiplicity
    }

    /// eta(v) <= a for vertices and eta(e) <= b for edges.
    pub fn is_ab_matrix(&self, a: u32, b: u32) -> bool {
        self.eta.vertex_values().all(|x| x <= a) && self.eta.edge_values().all(|x| x <= b)
    }

    pub fn permanent(&self) -> BigInt {
        permanent_exact(&self.matrix).expect("weight matrices are square")
    }
}

fn factorial(k: usize) -> BigInt {
    (2..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// c_eta = per(A_G(eta)) / prod eta(z)!, the coefficient of prod x_z^eta(z)
/// in the graph's total-weight polynomial.
pub fn coefficient_from_permanent(base: &CoefficientMatrix, eta: &IndexFunction) -> Result<BigInt> {
    let w = assemble(base, eta)?;
    let per = w.permanent();
    let denom = w.multiplicity.iter().fold(BigInt::one(), |acc, &k| acc * factorial(k));
    let (q, r) = per.div_rem(&denom);
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "permanent {per} not divisible by {denom}"
        )));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, Edge};

    #[test]
    fn single_edge_row() {
        let g = build_graph(&[(1, 2)]).unwrap();
        let a = CoefficientMatrix::canonical(&g);
        // columns: edge 1-2, vertex 1, vertex 2
        assert_eq!(a.matrix().row(0), &[0, -1, 1]);
    }

    #[test]
    fn edge_column_is_sum_of_end_columns() {
        let g = build_graph(&[(1, 2), (2, 3), (1, 3), (3, 4)]).unwrap();
        let a = CoefficientMatrix::canonical(&g);
        for &e in g.edges() {
            let ce = a.column_of(Element::Edge(e)).unwrap();
            let cu = a.column_of(Element::Vertex(e.low())).unwrap();
            let cv = a.column_of(Element::Vertex(e.high())).unwrap();
            let sum: Vec<i64> = cu.iter().zip(&cv).map(|(x, y)| x + y).collect();
            assert_eq!(ce, sum, "edge {e}");
        }
    }

    #[test]
    fn reversing_an_edge_negates_its_row() {
        let g = build_graph(&[(1, 2), (2, 3), (1, 3)]).unwrap();
        let a = CoefficientMatrix::canonical(&g);
        let flipped = Orientation::canonical(&g).reversed(Edge::new(1, 3));
        let b = build_coefficient_matrix(&g, &flipped).unwrap();
        let r = g.edge_index(Edge::new(1, 3)).unwrap();
        for row in 0..3 {
            let expect: Vec<i64> = if row == r {
                a.matrix().row(row).iter().map(|x| -x).collect()
            } else {
                a.matrix().row(row).to_vec()
            };
            assert_eq!(b.matrix().row(row), &expect[..]);
        }
    }

    #[test]
    fn dump_roundtrip_and_errors() {
        let m = IntMatrix::from_rows(vec![vec![1, -1], vec![0, 2]]).unwrap();
        let text = m.to_dump();
        assert_eq!(text, "2 2\n1 -1\n0 2\n");
        assert_eq!(text.parse::<IntMatrix>().unwrap(), m);
        assert!("2 2\n1 2\n".parse::<IntMatrix>().is_err());
        assert!("2 2\n1 2 3\n4 5\n".parse::<IntMatrix>().is_err());
    }

    #[test]
    fn assemble_rejects_invalid_index() {
        let g = build_graph(&[(1, 2), (2, 3)]).unwrap();
        let a = CoefficientMatrix::canonical(&g);
        let eta = IndexFunction::from_edges([(Edge::new(1, 2), 1)]);
        assert_eq!(
            assemble(&a, &eta).unwrap_err(),
            Error::InvalidIndex { sum: 1, edges: 2 }
        );
    }

    #[test]
    fn single_edge_coefficient() {
        let g = build_graph(&[(1, 2)]).unwrap();
        let a = CoefficientMatrix::canonical(&g);
        let eta = IndexFunction::from_vertices([(1, 1)]);
        assert_eq!(coefficient_from_permanent(&a, &eta).unwrap(), BigInt::from(-1));
    }
}
