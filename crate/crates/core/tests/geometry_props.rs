use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use sortnet::geometry::{
    certify_nonrealizable, pair_angle, realize_network, sample_random_configuration, GpPattern,
    PointConfiguration, DEFAULT_EPSILON,
};
use sortnet::{validate_network, SeededRng};

#[test]
fn realized_networks_are_valid_and_never_certified() {
    let gp = GpPattern::builtin();
    for i in 0..1000u64 {
        let n = 5 + (i as usize % 26);
        let x = sample_random_configuration(n, &SeededRng::with_stream(77, i), DEFAULT_EPSILON).unwrap();
        let net = realize_network(&x).unwrap();
        assert!(validate_network(net.swaps(), n));
        assert_eq!(certify_nonrealizable(&net, &gp), None, "{net}");
    }
}

#[test]
fn other_point_distributions_realize_too() {
    let mut rng = ChaCha20Rng::seed_from_u64(5);
    for _ in 0..500 {
        let n = rng.gen_range(2..=12);
        let pts: Vec<(f64, f64)> = (0..n)
            .map(|_| {
                let a: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
                let r: f64 = rng.gen::<f64>().sqrt() * 100.0;
                (r * a.cos(), r * a.sin())
            })
            .collect();
        let net = realize_network(&PointConfiguration::new(pts)).unwrap();
        assert!(validate_network(net.swaps(), n));
    }
}

// Rotating past the first r pair angles moves the first r swaps to the end,
// mirrored.
#[test]
fn rotation_shifts_the_network() {
    for seed in 0..200u64 {
        let n = 4 + (seed as usize % 7);
        let x = sample_random_configuration(n, &SeededRng::with_stream(3, seed), DEFAULT_EPSILON).unwrap();
        let net = realize_network(&x).unwrap();
        let mut angles = Vec::new();
        let p = x.points();
        for i in 0..n {
            for j in i + 1..n {
                angles.push(pair_angle(p[i], p[j]));
            }
        }
        angles.sort_by(f64::total_cmp);
        let r = 1 + seed as usize % (angles.len() - 1);
        let delta = (angles[r - 1] + angles[r]) / 2.0;
        let rotated = realize_network(&x.rotated(delta)).unwrap();
        let s = net.swaps();
        let expected: Vec<u32> = s[r..]
            .iter()
            .copied()
            .chain(s[..r].iter().map(|&v| n as u32 - v))
            .collect();
        assert_eq!(rotated.swaps(), expected.as_slice(), "seed {seed}");
    }
}

#[test]
fn every_pair_swaps_exactly_once() {
    for seed in 0..100u64 {
        let n = 3 + seed as usize % 20;
        let x = sample_random_configuration(n, &SeededRng::new(seed), DEFAULT_EPSILON).unwrap();
        let net = realize_network(&x).unwrap();
        let mut seen = vec![vec![0u32; n + 1]; n + 1];
        for (k, row) in net.trajectories().windows(2).enumerate() {
            let s = net.swaps()[k] as usize;
            let (u, v) = (row[0][s - 1], row[0][s]);
            assert_eq!(row[1][s - 1], v);
            seen[u.min(v)][u.max(v)] += 1;
        }
        for u in 1..=n {
            for v in u + 1..=n {
                assert_eq!(seen[u][v], 1);
            }
        }
    }
}
