//! Sorting networks realised by rotating planar point configurations, and the
//! non-realizability certificate based on a fixed non-realizable size-5
//! network.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eg::{eg_forward, SortingNetwork};
use crate::error::{Error, Result};
use crate::patterns::{Pattern, SwapIndex, Window};
use crate::sampler::SeededRng;
use crate::tableau::{enumerate_syt, YoungDiagram};

pub const DEFAULT_EPSILON: f64 = 1e-9;
pub const RESAMPLE_BUDGET: usize = 10_000;

/// Shipped copy of the non-realizable size-5 network.
pub const GP5_JSON: &str = include_str!("../data/gp5.json");

/// Points labeled `1..n` by increasing x-coordinate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "PointsRepr", into = "PointsRepr")]
pub struct PointConfiguration {
    points: Vec<(f64, f64)>,
}

#[derive(Serialize, Deserialize)]
struct PointsRepr {
    points: Vec<[f64; 2]>,
}

impl From<PointsRepr> for PointConfiguration {
    fn from(r: PointsRepr) -> Self {
        PointConfiguration::new(r.points.into_iter().map(|[x, y]| (x, y)).collect())
    }
}

impl From<PointConfiguration> for PointsRepr {
    fn from(c: PointConfiguration) -> Self {
        PointsRepr {
            points: c.points.into_iter().map(|(x, y)| [x, y]).collect(),
        }
    }
}

impl PointConfiguration {
    /// Sorts the points by x-coordinate (ties by y) to assign labels.
    pub fn new(mut points: Vec<(f64, f64)>) -> Self {
        points.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));
        PointConfiguration { points }
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Rotates every point counterclockwise by `phi` about the origin, then
    /// relabels by x-coordinate.
    pub fn rotated(&self, phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        PointConfiguration::new(
            self.points
                .iter()
                .map(|&(x, y)| (x * c - y * s, x * s + y * c))
                .collect(),
        )
    }
}

/// Rotation angle in `[0, π)` at which the segment from `p` to `q` becomes
/// vertical.
pub fn pair_angle(p: (f64, f64), q: (f64, f64)) -> f64 {
    let (dx, dy) = (q.0 - p.0, q.1 - p.1);
    // x-coordinate of the rotated difference: dx cos φ - dy sin φ = 0
    let phi = dx.atan2(dy);
    if phi < 0.0 {
        phi + PI
    } else if phi >= PI {
        phi - PI
    } else {
        phi
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    SharedVertical { pair: (usize, usize) },
    Collinear { triple: (usize, usize, usize) },
    Parallel { first: (usize, usize), second: (usize, usize) },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SharedVertical { pair: (i, j) } => {
                write!(f, "points {i} and {j} share a vertical line")
            }
            Violation::Collinear { triple: (i, j, k) } => {
                write!(f, "points {i}, {j}, {k} are collinear")
            }
            Violation::Parallel { first, second } => write!(
                f,
                "pairs ({},{}) and ({},{}) are parallel",
                first.0, first.1, second.0, second.1
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneralPositionReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// Checks the general position conditions: pair angles separated from each
/// other and from the vertical by at least `eps`, and normalised triangle
/// areas (the sine of the angle at the first vertex) at least `eps`.
pub fn validate_general_position(x: &PointConfiguration, eps: f64) -> GeneralPositionReport {
    let pts = &x.points;
    let n = pts.len();
    let mut violations = Vec::new();
    let mut angles = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let phi = pair_angle(pts[i], pts[j]);
            if phi < eps || phi > PI - eps {
                violations.push(Violation::SharedVertical { pair: (i + 1, j + 1) });
            }
            angles.push((phi, i, j));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (u, v) = (
                    (pts[j].0 - pts[i].0, pts[j].1 - pts[i].1),
                    (pts[k].0 - pts[i].0, pts[k].1 - pts[i].1),
                );
                let cross = (u.0 * v.1 - u.1 * v.0).abs();
                let norm = u.0.hypot(u.1) * v.0.hypot(v.1);
                if norm == 0.0 || cross / norm < eps {
                    violations.push(Violation::Collinear {
                        triple: (i + 1, j + 1, k + 1),
                    });
                }
            }
        }
    }
    angles.sort_by(|a, b| a.0.total_cmp(&b.0));
    for w in angles.windows(2) {
        let ((p, i1, j1), (q, i2, j2)) = (w[0], w[1]);
        let disjoint = i1 != i2 && i1 != j2 && j1 != i2 && j1 != j2;
        if disjoint && q - p < eps {
            violations.push(Violation::Parallel {
                first: (i1 + 1, j1 + 1),
                second: (i2 + 1, j2 + 1),
            });
        }
    }
    // angles near 0 and near π are also close modulo π
    if let (Some(&(lo, i1, j1)), Some(&(hi, i2, j2))) = (angles.first(), angles.last()) {
        let disjoint = i1 != i2 && i1 != j2 && j1 != i2 && j1 != j2;
        if angles.len() > 1 && disjoint && lo + PI - hi < eps {
            violations.push(Violation::Parallel {
                first: (i2 + 1, j2 + 1),
                second: (i1 + 1, j1 + 1),
            });
        }
    }
    GeneralPositionReport {
        ok: violations.is_empty(),
        violations,
    }
}

/// The sorting network swept out by rotating `x` from angle 0 to π.
pub fn realize_network(x: &PointConfiguration) -> Result<SortingNetwork> {
    realize_network_eps(x, DEFAULT_EPSILON)
}

pub fn realize_network_eps(x: &PointConfiguration, eps: f64) -> Result<SortingNetwork> {
    let n = x.len();
    if n < 2 {
        return Err(Error::SizeTooSmall { min: 2, got: n });
    }
    let report = validate_general_position(x, eps);
    if !report.ok {
        return Err(Error::GeneralPosition(report.violations));
    }
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((pair_angle(x.points[i], x.points[j]), i, j));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    // position (0-based) of each label
    let mut pos: Vec<usize> = (0..n).collect();
    let mut at: Vec<usize> = (0..n).collect();
    let mut swaps = Vec::with_capacity(pairs.len());
    for (_, i, j) in pairs {
        let (p, q) = (pos[i].min(pos[j]), pos[i].max(pos[j]));
        if q != p + 1 {
            return Err(Error::Inconsistent(format!(
                "points {} and {} are not adjacent when they swap",
                i + 1,
                j + 1
            )));
        }
        at.swap(p, q);
        pos[at[p]] = p;
        pos[at[q]] = q;
        swaps.push((p + 1) as u32);
    }
    SortingNetwork::new(n, swaps)
}

/// I.i.d. uniform points in the unit square, resampled until in general
/// position at tolerance `eps`.
pub fn sample_random_configuration(n: usize, rng: &SeededRng, eps: f64) -> Result<PointConfiguration> {
    sample_random_configuration_with(n, &mut rng.generator(), eps)
}

pub fn sample_random_configuration_with<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
    eps: f64,
) -> Result<PointConfiguration> {
    if n < 2 {
        return Err(Error::SizeTooSmall { min: 2, got: n });
    }
    for _ in 0..RESAMPLE_BUDGET {
        let x = PointConfiguration::new((0..n).map(|_| (rng.gen::<f64>(), rng.gen::<f64>())).collect());
        if validate_general_position(&x, eps).ok {
            return Ok(x);
        }
    }
    Err(Error::ResampleBudget(RESAMPLE_BUDGET))
}

/// A size-5 sorting network that no point configuration produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GpPattern {
    network: SortingNetwork,
}

impl GpPattern {
    pub fn new(network: SortingNetwork) -> Result<Self> {
        if network.n() != 5 {
            return Err(Error::Parameter(format!(
                "certificate pattern must have size 5, got {}",
                network.n()
            )));
        }
        Ok(GpPattern { network })
    }

    /// The copy shipped in `data/gp5.json`.
    pub fn builtin() -> Self {
        Self::from_json(GP5_JSON).expect("shipped gp5.json is valid")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::new(serde_json::from_str(s)?)
    }

    pub fn network(&self) -> &SortingNetwork {
        &self.network
    }

    pub fn pattern(&self) -> Pattern {
        Pattern::from(&self.network)
    }
}

/// Looks for an occurrence of `gp` at `[1, t] × [a, a + 3]`. A witness proves
/// `net` is not geometrically realizable; `None` is inconclusive.
pub fn certify_nonrealizable(net: &SortingNetwork, gp: &GpPattern) -> Option<Window> {
    let n = net.n();
    if n < 5 {
        return None;
    }
    let pattern = gp.pattern();
    let index = SwapIndex::new(net);
    let mut first_time = vec![usize::MAX; n];
    for (k, &s) in net.swaps().iter().enumerate().rev() {
        first_time[s as usize] = k + 1;
    }
    let g1 = pattern.swaps()[0] as usize;
    (1..=n - 4).find_map(|a| {
        // the first swap in the window must be the pattern's first swap
        let start = first_time[a + g1 - 1];
        if start == usize::MAX {
            return None;
        }
        let earlier = (a.saturating_sub(1).max(1)..=(a + 4).min(n - 1)).any(|p| first_time[p] < start);
        if earlier {
            return None;
        }
        index
            .match_from(&pattern, start, a, a + 3)
            .map(|t| Window::new((1, t), (a, a + 3)))
    })
}

/// Result of the empirical cross-check of a certificate pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GpCheck {
    pub pattern: Vec<u32>,
    pub draws: usize,
    pub networks_total: usize,
    pub networks_realized: usize,
    /// Whether any draw realised the pattern.
    pub pattern_realized: bool,
    /// The size-5 networks never seen, sorted.
    pub never_realized: Vec<Vec<u32>>,
}

impl GpCheck {
    pub fn passed(&self) -> bool {
        !self.pattern_realized && self.never_realized.contains(&self.pattern)
    }
}

/// Realises `draws` random 5-point configurations and checks that `gp` is
/// never produced. Work is split into 64 chunks, chunk `c` drawing from
/// substream `c` of `seed`.
pub fn gp_check(gp: &GpPattern, draws: usize, seed: u64) -> Result<GpCheck> {
    const CHUNKS: usize = 64;
    let all: BTreeSet<Vec<u32>> = enumerate_syt(&YoungDiagram::staircase(5))?
        .map(|t| eg_forward(&t).map(|net| net.swaps().to_vec()))
        .collect::<Result<_>>()?;
    let base = SeededRng::new(seed);
    let seen = (0..CHUNKS)
        .into_par_iter()
        .map(|c| {
            let quota = draws / CHUNKS + usize::from(c < draws % CHUNKS);
            let mut rng = base.substream(c as u64).generator();
            let mut seen = BTreeSet::new();
            for _ in 0..quota {
                let x = sample_random_configuration_with(5, &mut rng, DEFAULT_EPSILON)?;
                seen.insert(realize_network(&x)?.swaps().to_vec());
            }
            Ok::<_, Error>(seen)
        })
        .try_reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            Ok(a)
        })?;
    let pattern = gp.network.swaps().to_vec();
    Ok(GpCheck {
        pattern_realized: seen.contains(&pattern),
        pattern,
        draws,
        networks_total: all.len(),
        networks_realized: seen.len(),
        never_realized: all.difference(&seen).cloned().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_point_example() {
        let x = PointConfiguration::new(vec![(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]);
        assert_eq!(realize_network(&x).unwrap().swaps(), &[1, 2, 1]);
        assert!(validate_general_position(&x, 1e-9).ok);
    }

    #[test]
    fn two_points() {
        let x = PointConfiguration::new(vec![(0.3, 0.9), (0.1, 0.2)]);
        assert_eq!(realize_network(&x).unwrap().swaps(), &[1]);
    }

    #[test]
    fn degenerate_inputs() {
        let col = PointConfiguration::new(vec![(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
        let r = validate_general_position(&col, 1e-9);
        assert!(!r.ok);
        assert!(r.violations.contains(&Violation::Collinear { triple: (1, 2, 3) }));
        assert!(matches!(realize_network(&col), Err(Error::GeneralPosition(_))));

        let vert = PointConfiguration::new(vec![(0.0, 0.0), (0.0, 1.0), (1.0, 3.0)]);
        let r = validate_general_position(&vert, 1e-9);
        assert!(r.violations.contains(&Violation::SharedVertical { pair: (1, 2) }));

        let par = PointConfiguration::new(vec![(0.0, 0.0), (1.0, 1.0), (2.0, 0.5), (3.0, 1.5)]);
        let r = validate_general_position(&par, 1e-9);
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Parallel { .. })));
    }

    #[test]
    fn pair_angles() {
        assert!((pair_angle((0.0, 0.0), (1.0, 1.0)) - PI / 4.0).abs() < 1e-12);
        assert!((pair_angle((0.0, 0.0), (2.0, 0.0)) - PI / 2.0).abs() < 1e-12);
        assert!((pair_angle((1.0, 1.0), (2.0, 0.0)) - 3.0 * PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn certificate_on_itself() {
        let gp = GpPattern::builtin();
        assert_eq!(
            certify_nonrealizable(gp.network(), &gp),
            Some(Window::new((1, 10), (1, 4)))
        );
        let small = SortingNetwork::new(4, vec![1, 3, 2, 1, 3, 2]).unwrap();
        assert_eq!(certify_nonrealizable(&small, &gp), None);
    }

    #[test]
    fn sampled_configurations_are_deterministic() {
        let a = sample_random_configuration(6, &SeededRng::new(4), DEFAULT_EPSILON).unwrap();
        let b = sample_random_configuration(6, &SeededRng::new(4), DEFAULT_EPSILON).unwrap();
        assert_eq!(a, b);
        assert!(realize_network(&a).is_ok());
    }
}
