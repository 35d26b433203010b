//! Fixtures shared by the criterion benches.

use halin_core::graph::random_plane_tree;
use halin_core::{build_halin, HalinGraph, HalinKind, IntMatrix};

/// Deterministic dense {-1, 0, 1} matrix.
pub fn sign_matrix(n: usize, seed: u64) -> IntMatrix {
    let mut state = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) | 1;
    let rows = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    (state % 3) as i64 - 1
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(rows).expect("rows have equal length")
}

/// Generalized Halin graph with `leaves` leaves.
pub fn halin_instance(leaves: usize, seed: u64) -> HalinGraph {
    let tree = random_plane_tree(leaves, true, seed).expect("at least three leaves");
    build_halin(tree, HalinKind::Generalized).expect("generated trees are valid")
}
