use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{PlaneTree, VertexId};
use crate::error::{Error, Result};

/// Reproducible random plane tree with exactly `leaf_count` leaves.
///
/// Starts from a star with three leaves and grows by either splitting a leaf
/// into two or three children or adding a child to an internal vertex. When
/// `allow_degree2` is set, some edges are afterwards subdivided.
pub fn random_plane_tree(leaf_count: usize, allow_degree2: bool, seed: u64) -> Result<PlaneTree> {
    if leaf_count < 3 {
        return Err(Error::TooFewLeaves(leaf_count));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut children: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::from([(0, vec![1, 2, 3])]);
    let mut next: VertexId = 4;
    let mut leaves = 3;

    while leaves < leaf_count {
        let internal: Vec<VertexId> = children.keys().copied().collect();
        let all: Vec<VertexId> = (0..next).collect();
        let leaf_list: Vec<VertexId> = all
            .iter()
            .copied()
            .filter(|v| !children.contains_key(v))
            .collect();
        if rng.random_bool(0.5) {
            let v = leaf_list[rng.random_range(0..leaf_list.len())];
            let k = if leaf_count - leaves >= 2 && rng.random_bool(0.4) { 3 } else { 2 };
            children.insert(v, (next..next + k).collect());
            next += k;
            leaves += k as usize - 1;
        } else {
            let v = internal[rng.random_range(0..internal.len())];
            let kids = children.get_mut(&v).unwrap();
            let at = rng.random_range(0..=kids.len());
            kids.insert(at, next);
            next += 1;
            leaves += 1;
        }
    }

    if allow_degree2 {
        let edge_count = next as usize - 1;
        let subdivisions = rng.random_range(0..=edge_count.div_ceil(2));
        for _ in 0..subdivisions {
            // pick a child edge (parent, child) and insert a vertex on it
            let parents: Vec<VertexId> = children.keys().copied().collect();
            let p = parents[rng.random_range(0..parents.len())];
            let kids = children.get_mut(&p).unwrap();
            let at = rng.random_range(0..kids.len());
            let c = kids[at];
            kids[at] = next;
            children.insert(next, vec![c]);
            next += 1;
        }
    }
    PlaneTree::new(0, children)
}
