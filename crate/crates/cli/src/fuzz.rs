use std::str::FromStr;

use halin_core::graph::random_plane_tree;
use halin_core::io;
use halin_core::{build_halin, certify, is_proper, solve, verify_certificate, HalinGraph, HalinKind, ListAssignment};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

/// Regenerated trees tried per smaller leaf count while minimizing.
const SHRINK_ATTEMPTS: u64 = 200;

#[derive(Clone, Copy, Debug)]
pub struct LeafRange {
    pub lo: usize,
    pub hi: usize,
}

impl FromStr for LeafRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => (parse(s)?, parse(s)?),
        };
        if lo < 3 || hi < lo {
            return Err(format!("leaf range {s:?} must satisfy 3 <= lo <= hi"));
        }
        Ok(LeafRange { lo, hi })
    }
}

pub struct Config {
    pub count: u64,
    pub leaves: LeafRange,
    pub seed: u64,
    pub kind: HalinKind,
    pub window: i64,
}

#[derive(Clone, Debug)]
pub struct Found {
    pub leaves: usize,
    pub seed: u64,
    pub stage: &'static str,
    pub reason: String,
    pub graph: Option<HalinGraph>,
}

impl Found {
    pub fn summary(&self) -> String {
        format!("{} leaves, seed {}: {} failed: {}", self.leaves, self.seed, self.stage, self.reason)
    }

    pub fn to_json(&self) -> String {
        let graph = self
            .graph
            .as_ref()
            .map(|h| serde_json::from_str::<serde_json::Value>(&io::halin_to_json(h)).unwrap());
        io::to_text(&json!({
            "leaves": self.leaves,
            "seed": self.seed,
            "stage": self.stage,
            "reason": self.reason,
            "graph": graph,
        }))
    }
}

/// Runs the whole pipeline on one generated instance.
fn check(leaves: usize, seed: u64, config: &Config) -> Option<Found> {
    let fail = |stage, reason: String, graph| Some(Found { leaves, seed, stage, reason, graph });
    let tree = match random_plane_tree(leaves, config.kind == HalinKind::Generalized, seed) {
        Ok(t) => t,
        Err(e) => return fail("generate", e.to_string(), None),
    };
    let h = match build_halin(tree, config.kind) {
        Ok(h) => h,
        Err(e) => return fail("generate", e.to_string(), None),
    };
    let g = h.graph();
    let c = match certify(&h) {
        Ok(c) => c,
        Err(e) => return fail("certify", e.to_string(), Some(h)),
    };
    let report = verify_certificate(g, &c);
    if !report.ok() {
        return fail("verify", report.detail, Some(h));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lists = match ListAssignment::random_integer(g, 1, 3, config.window, &mut rng) {
        Ok(l) => l,
        Err(e) => return fail("lists", e.to_string(), Some(h)),
    };
    match solve(g, &c, &lists).and_then(|w| is_proper(g, &w)) {
        Ok(p) if p.is_proper() => None,
        Ok(p) => fail("solve", format!("{p:?}"), Some(h)),
        Err(e) => fail("solve", e.to_string(), Some(h)),
    }
}

/// First failing instance in seed order, if any.
pub fn run(config: &Config) -> Option<Found> {
    let span = (config.leaves.hi - config.leaves.lo + 1) as u64;
    (0..config.count).into_par_iter().find_map_first(|i| {
        let seed = config.seed.wrapping_add(i);
        check(config.leaves.lo + (seed % span) as usize, seed, config)
    })
}

/// Smallest leaf count that reproduces a failure at the same stage, trying
/// regenerated trees at each count.
pub fn minimize(config: &Config, found: Found) -> Found {
    for leaves in 3..found.leaves {
        let hit = (0..SHRINK_ATTEMPTS).into_par_iter().find_map_first(|seed| {
            check(leaves, seed, config).filter(|f| f.stage == found.stage)
        });
        if let Some(f) = hit {
            return f;
        }
    }
    found
}
