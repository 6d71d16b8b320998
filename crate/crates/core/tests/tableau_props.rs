mod common;

use std::collections::HashMap;

use num::{BigRational, BigUint, One, ToPrimitive};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use sortnet::tableau::{enumerate_syt, Cell};
use sortnet::YoungDiagram;

#[test]
fn dimension_matches_enumeration() {
    for shape in common::small_partitions(8) {
        let count = enumerate_syt(&shape).unwrap().count();
        assert_eq!(shape.dimension(), BigUint::from(count), "{:?}", shape.rows());
    }
}

#[test]
fn corner_distribution_matches_enumeration() {
    for shape in common::small_partitions(8) {
        let dim = shape.dimension();
        let mut at: HashMap<Cell, u64> = HashMap::new();
        for t in enumerate_syt(&shape).unwrap() {
            *at.entry(t.position(shape.size() as u32).unwrap()).or_default() += 1;
        }
        let exact = shape.corner_removal_distribution_exact().unwrap();
        let float = shape.corner_removal_distribution().unwrap();
        let mut total = BigRational::from_integer(0.into());
        for ((c, p), (c2, q)) in exact.iter().zip(&float) {
            assert_eq!(c, c2);
            let freq = BigRational::new(at[c].into(), dim.clone().into());
            assert_eq!(*p, freq, "{:?} corner {c}", shape.rows());
            assert!((q - freq.to_f64().unwrap()).abs() < 1e-12);
            total += p;
        }
        assert_eq!(exact.len(), at.len());
        assert!(total.is_one());
    }
}

#[test]
fn unit_hooks_are_exactly_the_corners() {
    for shape in common::small_partitions(8) {
        for c in shape.cells() {
            assert_eq!(shape.hook_length(c).unwrap() == 1, shape.is_corner(c));
        }
    }
}

#[test]
fn transpose_is_an_involution_preserving_dimension() {
    for shape in common::small_partitions(8) {
        let t = shape.transpose();
        assert_eq!(t.transpose(), shape);
        assert_eq!(t.dimension(), shape.dimension());
    }
}

#[test]
fn staircase_dimensions() {
    assert_eq!(YoungDiagram::staircase(4).dimension(), BigUint::from(16u32));
    assert_eq!(YoungDiagram::staircase(5).dimension(), BigUint::from(768u32));
    assert_eq!(YoungDiagram::staircase(6).dimension(), BigUint::from(292864u32));
}

// Corners near the border of staircase(n) keep probability of order 1/n.
#[test]
fn border_corner_probability_scales_like_one_over_n() {
    let ell = 2;
    let mut minima = Vec::new();
    for n in [20usize, 40, 80] {
        let mut rng = ChaCha20Rng::seed_from_u64(n as u64);
        let mut min = f64::INFINITY;
        let mut seen = 0;
        while seen < 200 {
            let shape = common::random_subdiagram(n, &mut rng);
            if shape.is_empty() {
                continue;
            }
            for (c, p) in shape.corner_removal_distribution().unwrap() {
                if 4 * c.row >= n && 4 * c.col >= n && n - c.row - c.col <= ell {
                    min = min.min(n as f64 * p);
                    seen += 1;
                }
            }
        }
        minima.push(min);
    }
    assert!(minima.iter().all(|&m| m > 0.0));
    assert!(minima[2] > 0.25 * minima[0], "n·P(x) minima {minima:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn corner_ratio_bound(n in 2usize..=40, seed in any::<u64>()) {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let shape = common::random_subdiagram(n, &mut rng);
        let corners = shape.corners();
        for &x in &corners {
            for &y in &corners {
                let l = x.linf_distance(&y) as f64;
                let r = shape.corner_probability_ratio(x, y).unwrap();
                prop_assert!(r <= (l + 1.0) * (2.0 * l + 1.0) * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn removing_a_corner_shrinks_by_one(mut rows in proptest::collection::vec(1usize..12, 1..8)) {
        rows.sort_unstable_by(|a, b| b.cmp(a));
        let shape = YoungDiagram::from_lengths(rows).unwrap();
        for c in shape.corners() {
            let smaller = shape.remove_corner(c).unwrap();
            prop_assert_eq!(smaller.size() + 1, shape.size());
            prop_assert!(smaller.is_subset_of(&shape));
        }
    }
}
