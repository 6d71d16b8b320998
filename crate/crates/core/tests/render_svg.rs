use sortnet::render::{render_wiring_diagram, wire_paths};
use sortnet::sampler::sample_random_network;
use sortnet::{SeededRng, SortingNetwork};

// Number of times wires `p` and `q` swap order along their polylines.
fn crossings(a: &[(f64, f64)], b: &[(f64, f64)]) -> usize {
    let height = |path: &[(f64, f64)], x: f64| -> f64 {
        for w in path.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            if x0 <= x && x <= x1 && x1 > x0 {
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
            }
        }
        path.last().unwrap().1
    };
    let end = a.last().unwrap().0;
    let mut count = 0;
    let mut prev = (height(a, 0.0) - height(b, 0.0)).signum();
    let steps = (end * 8.0) as usize;
    for k in 1..=steps {
        let x = k as f64 / 8.0 + 1.0 / 16.0;
        if x > end {
            break;
        }
        let d = (height(a, x) - height(b, x)).signum();
        if d != 0.0 && d != prev {
            count += 1;
            prev = d;
        }
    }
    count
}

#[test]
fn each_pair_of_wires_crosses_once() {
    for seed in 0..20 {
        let net = sample_random_network(2 + seed as usize % 8, &SeededRng::new(seed)).unwrap();
        let paths = wire_paths(&net);
        for p in 0..paths.len() {
            for q in p + 1..paths.len() {
                assert_eq!(crossings(&paths[p], &paths[q]), 1, "{net} wires {p} {q}");
            }
        }
    }
}

#[test]
fn svg_has_one_polyline_per_wire() {
    let net = SortingNetwork::new(4, vec![1, 3, 2, 1, 3, 2]).unwrap();
    let svg = render_wiring_diagram(&net);
    assert!(svg.starts_with("<svg"));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<polyline").count(), 4);
    for w in 1..=4 {
        assert!(svg.contains(&format!("data-wire=\"{w}\"")));
    }
}

#[test]
fn swaps_cross_at_integer_grid_points() {
    let net = SortingNetwork::new(3, vec![2, 1, 2]).unwrap();
    let paths = wire_paths(&net);
    for (k, &s) in net.swaps().iter().enumerate() {
        let t = (k + 1) as f64;
        let through: Vec<_> = paths
            .iter()
            .filter(|p| {
                p.windows(2).any(|w| {
                    let ((x0, y0), (x1, y1)) = (w[0], w[1]);
                    x0 < t && t < x1 && ((y0 + y1) / 2.0 - s as f64).abs() < 1e-12
                })
            })
            .collect();
        assert_eq!(through.len(), 2);
    }
}
