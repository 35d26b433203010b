mod common;

use std::collections::BTreeSet;

use common::*;
use halin_core::alon_tarsi::{
    count_eulerian, count_eulerian_bruteforce, expand_polynomial_oracle,
};
use halin_core::certifier::{certify, verify_certificate, Failure};
use halin_core::graph::{degeneracy_ordering, find_odd_balloons, Bipartition, Edge, Element};
use halin_core::matrix::{
    assemble, balloon_combination, build_coefficient_matrix, expand_to_edge_columns,
    permanent_exact, permanent_mod, permanent_ryser, CoefficientMatrix, IndexFunction, IntMatrix,
    SymbolicColumn,
};
use halin_core::weights::{evaluate_polynomial, is_proper, respects_lists, solve, ListAssignment, TotalWeighting};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn square(max: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(-2i64..=2, n), n)
            .prop_map(|rows| IntMatrix::from_rows(rows).unwrap())
    })
}

fn big(x: i128) -> BigInt {
    BigInt::from(x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn permanent_matches_naive(m in square(7)) {
        let naive = big(naive_permanent(&m));
        prop_assert_eq!(permanent_exact(&m).unwrap(), naive.clone());
        prop_assert_eq!(permanent_ryser(&m).unwrap(), naive);
    }

    #[test]
    fn permutation_and_negation_invariance(m in square(6), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = m.rows();
        let per = permanent_exact(&m).unwrap();
        let mut rows: Vec<usize> = (0..n).collect();
        let mut cols: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(&mut rows[..], &mut rng);
        rand::seq::SliceRandom::shuffle(&mut cols[..], &mut rng);
        prop_assert_eq!(permanent_exact(&m.submatrix(&rows, &cols)).unwrap(), per.clone());
        let r = rng.random_range(0..n);
        let mut neg = m.clone();
        for c in 0..n {
            neg.set(r, c, -m.get(r, c));
        }
        prop_assert_eq!(permanent_exact(&neg).unwrap(), -per);
    }

    #[test]
    fn multilinear_in_columns(m in square(6), other in prop::collection::vec(-2i64..=2, 6), a in -3i64..=3, b in -3i64..=3) {
        let n = m.rows();
        let col = m.column(0);
        let with = |v: &[i64]| {
            let mut x = m.clone();
            for r in 0..n {
                x.set(r, 0, v[r]);
            }
            permanent_exact(&x).unwrap()
        };
        let mix: Vec<i64> = (0..n).map(|r| a * col[r] + b * other[r]).collect();
        let lhs = with(&mix);
        let rhs = BigInt::from(a) * with(&col) + BigInt::from(b) * with(&other[..n]);
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn modular_agrees_with_exact_on_500_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..500 {
        let n = 1 + i % 12;
        let m = random_matrix(&mut rng, n, -2, 2, 0.5);
        let exact = permanent_exact(&m).unwrap();
        for p in [2u64, 3, 5, 7, 1_000_000_007] {
            let want = ((exact.clone() % p as i64) + p as i64) % p as i64;
            assert_eq!(BigInt::from(permanent_mod(&m, p).unwrap()), want, "matrix {i}, p = {p}");
        }
    }
    assert!(permanent_mod(&IntMatrix::zeros(1, 1), 9).is_err());
}

#[test]
fn edge_column_is_sum_of_endpoint_columns() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let n = rng.random_range(2..9);
        let extra = rng.random_range(0..8);
        let g = random_connected(&mut rng, n, extra);
        let d = random_orientation(&mut rng, &g);
        let a = build_coefficient_matrix(&g, &d).unwrap();
        for &e in g.edges() {
            let ce = a.column_of(Element::Edge(e)).unwrap();
            let cu = a.column_of(Element::Vertex(e.low())).unwrap();
            let cv = a.column_of(Element::Vertex(e.high())).unwrap();
            let sum: Vec<i64> = cu.iter().zip(&cv).map(|(x, y)| x + y).collect();
            assert_eq!(ce, sum);
            assert_eq!(ce[g.edge_index(e).unwrap()], 0);
        }
    }
}

#[test]
fn repeated_single_edge_column_is_singular() {
    let g = cycle(4);
    let eta = IndexFunction::from_edges([(Edge::new(0, 1), 4)]);
    assert!(assemble(&CoefficientMatrix::canonical(&g), &eta).unwrap().permanent().is_zero());
}

#[test]
fn degeneracy_vertex_columns_have_factorial_permanent() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..60 {
        let n = rng.random_range(2..10);
        let g = random_two_degenerate(&mut rng, n);
        let ord = degeneracy_ordering(&g, 2, None).unwrap();
        assert!(ord.check(&g, 2));
        let eta = IndexFunction::from_vertices(
            ord.order.iter().zip(&ord.back_degrees).map(|(&v, &d)| (v, d as u32)),
        );
        let per = assemble(&CoefficientMatrix::canonical(&g), &eta).unwrap().permanent();
        let expected: u64 = ord.back_degrees.iter().map(|&d| if d == 2 { 2 } else { 1 }).product();
        assert_eq!(per.magnitude(), &expected.into());
    }
}

#[test]
fn eulerian_counts_match_bruteforce() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..150 {
        let n = rng.random_range(3..8);
        let extra = rng.random_range(0..10);
        let g = random_connected(&mut rng, n, extra);
        if g.edge_count() > 18 {
            continue;
        }
        let d = random_orientation(&mut rng, &g);
        // the core drops sink/source vertices; counts must not change
        assert_eq!(count_eulerian(&d), count_eulerian_bruteforce(&d));
    }
}

#[test]
fn balloons_are_valid_and_expand_to_twice_the_root() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for seed in 0..60 {
        let h = random_halin(seed, 14);
        let g = h.graph();
        let base = CoefficientMatrix::canonical(g);
        let root = g.vertices()[rng.random_range(0..g.vertex_count())];
        let forbidden: BTreeSet<Edge> = g
            .edges()
            .iter()
            .copied()
            .filter(|_| rng.random_bool(0.1))
            .collect();
        let found = find_odd_balloons(g, root, &forbidden, 2);
        let mut used = BTreeSet::new();
        for b in &found {
            assert!(b.is_valid_in(g) && b.is_odd());
            assert_eq!(b.root(), root);
            for e in b.edges() {
                assert!(!forbidden.contains(&e));
                assert!(used.insert(e), "balloons share {e}");
            }
            let combo = balloon_combination(b, &base).unwrap();
            let twice: Vec<i64> = base
                .column_of(Element::Vertex(root))
                .unwrap()
                .iter()
                .map(|x| 2 * x)
                .collect();
            assert_eq!(combo.evaluate(&base), twice);
        }
    }
}

#[test]
fn expansion_keeps_permanent_nonzero_mod_three() {
    for seed in 0..40 {
        let h = random_halin(seed, 12);
        let g = h.graph();
        if g.is_bipartite() {
            continue;
        }
        let base = CoefficientMatrix::canonical(g);
        // all-edge identity start: every edge column once, if nonsingular mod 3
        let cols: Vec<SymbolicColumn> = (0..g.edge_count()).map(SymbolicColumn::pure).collect();
        let eta = IndexFunction::from_edges(g.edges().iter().map(|&e| (e, 1)));
        if permanent_mod(assemble(&base, &eta).unwrap().matrix(), 3).unwrap() == 0 {
            continue;
        }
        let out = expand_to_edge_columns(&base, &cols, 3, 2).unwrap();
        assert_eq!(out, eta);
    }
}

#[test]
fn bipartition_witnesses() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let n = rng.random_range(2..10);
        let extra = rng.random_range(0..6);
        let g = random_connected(&mut rng, n, extra);
        match g.bipartition().unwrap() {
            Bipartition::TwoColoring(c) => {
                assert!(g.edges().iter().all(|e| c[&e.low()] != c[&e.high()]));
            }
            Bipartition::OddCycle(cyc) => {
                assert_eq!(cyc.len() % 2, 1);
                assert_eq!(cyc.iter().collect::<BTreeSet<_>>().len(), cyc.len());
                for i in 0..cyc.len() {
                    assert!(g.has_edge(Edge::new(cyc[i], cyc[(i + 1) % cyc.len()])));
                }
            }
        }
    }
}

#[test]
fn certificates_close_under_verification_and_detect_tampering() {
    for seed in 0..40 {
        let h = random_halin(seed, 13);
        let g = h.graph();
        let c = certify(&h).unwrap();
        assert!(verify_certificate(g, &c).ok());

        let mut t = c.clone();
        t.permanent += 1;
        assert_eq!(verify_certificate(g, &t).failure, Some(Failure::PermanentMismatch));

        let mut t = c.clone();
        let (e, _) = t.eta.edge_entries().next().unwrap();
        t.eta.set(Element::Edge(e), 3);
        assert!(!verify_certificate(g, &t).ok());

        let mut t = c.clone();
        t.eta.set(Element::Vertex(g.vertices()[0]), 1);
        assert!(!verify_certificate(g, &t).ok());
    }
}

#[test]
fn solver_on_adversarial_lists() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for seed in 0..25 {
        let h = random_halin(seed, 12);
        let g = h.graph();
        let c = certify(&h).unwrap();
        let mut l = ListAssignment::new();
        for z in g.elements() {
            let list = match z {
                Element::Vertex(_) => vec![rng.random_range(-5..=5)],
                Element::Edge(_) => vec![-10, 0, 10],
            };
            l.set(z, list.into_iter().map(halin_core::weights::integer_weight).collect());
        }
        let w = solve(g, &c, &l).unwrap();
        assert!(is_proper(g, &w).unwrap().is_proper());
        assert!(respects_lists(&w, &l));
        assert!(!evaluate_polynomial(g, &w).unwrap().is_zero());
    }
}

#[test]
fn polynomial_value_matches_oracle_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..40 {
        let n = rng.random_range(2..7);
        let extra = rng.random_range(0..4);
        let g = random_connected(&mut rng, n, extra);
        if g.edge_count() > 8 {
            continue;
        }
        let poly = expand_polynomial_oracle(&g, &halin_core::matrix::Orientation::canonical(&g), false).unwrap();
        let mut w = TotalWeighting::new();
        let values: Vec<BigRational> = g
            .elements()
            .map(|z| {
                let x = BigRational::from_integer(rng.random_range(-3i64..=3).into());
                w.set(z, x.clone());
                x
            })
            .collect();
        let mut direct = BigRational::zero();
        for (mono, coef) in &poly.coefficients {
            let mut term = BigRational::from_integer(BigInt::from(*coef));
            for (x, &k) in values.iter().zip(mono) {
                for _ in 0..k {
                    term *= x;
                }
            }
            direct += term;
        }
        assert_eq!(evaluate_polynomial(&g, &w).unwrap(), direct);
    }
}
