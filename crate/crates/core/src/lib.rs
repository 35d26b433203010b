//! Permanent certificates for (1,3)-total-weight choosability of generalized
//! Halin graphs, with the brute-force oracles used to check them.

pub mod error;
pub mod graph;
pub mod matrix;
pub mod alon_tarsi;
pub mod certifier;
pub mod weights;
pub mod io;

pub use error::{Error, Result};
pub use certifier::{certify, verify_certificate, Certificate, Provenance};
pub use graph::{build_halin, Edge, Element, Graph, HalinGraph, HalinKind, PlaneTree, VertexId};
pub use matrix::{IndexFunction, IntMatrix, Orientation};
pub use weights::{is_proper, solve, ListAssignment, TotalWeighting};
