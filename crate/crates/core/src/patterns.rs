//! Patterns, their occurrences in space-time windows of a network, and
//! counting pairwise disjoint occurrences.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::eg::SortingNetwork;
use crate::error::{Error, Result};

/// Default maximum number of windows accepted by the exact packing search.
pub const DEFAULT_PACKING_CAP: usize = 64;

/// A nonempty prefix of some sorting network.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Pattern {
    swaps: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Pattern {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Pattern::new(v)
    }
}

impl From<Pattern> for Vec<u32> {
    fn from(p: Pattern) -> Self {
        p.swaps
    }
}

/// True iff `seq` is nonempty, positive, and every swap exchanges a pair of
/// wires that has not crossed yet.
pub fn is_pattern(seq: &[i64]) -> bool {
    if seq.is_empty() || seq.iter().any(|&s| s <= 0) {
        return false;
    }
    let size = *seq.iter().max().unwrap() as usize + 1;
    let mut wires: Vec<usize> = (0..size).collect();
    for &s in seq {
        let s = s as usize;
        if wires[s - 1] > wires[s] {
            return false;
        }
        wires.swap(s - 1, s);
    }
    true
}

impl Pattern {
    pub fn new(swaps: Vec<u32>) -> Result<Self> {
        let seq: Vec<i64> = swaps.iter().map(|&s| s as i64).collect();
        if !is_pattern(&seq) {
            return Err(Error::Parameter(format!("{swaps:?} is not a pattern")));
        }
        Ok(Pattern { swaps })
    }

    /// Parses `"2,1,2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let swaps = s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parameter(format!("bad pattern entry {x:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Pattern::new(swaps)
    }

    pub fn swaps(&self) -> &[u32] {
        &self.swaps
    }

    pub fn len(&self) -> usize {
        self.swaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.swaps.is_empty()
    }

    /// One more than the largest swap position.
    pub fn size(&self) -> usize {
        *self.swaps.iter().max().unwrap() as usize + 1
    }
}

impl From<&SortingNetwork> for Pattern {
    fn from(net: &SortingNetwork) -> Self {
        Pattern {
            swaps: net.swaps().to_vec(),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.swaps.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Space-time rectangle `[i, j] × [a, b]`, all bounds inclusive and 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Window {
    pub time: (usize, usize),
    pub position: (usize, usize),
}

impl Window {
    pub fn new(time: (usize, usize), position: (usize, usize)) -> Self {
        Window { time, position }
    }

    /// Rectangles intersect iff both their time and position intervals do.
    pub fn overlaps(&self, other: &Window) -> bool {
        self.time.0 <= other.time.1
            && other.time.0 <= self.time.1
            && self.position.0 <= other.position.1
            && other.position.0 <= self.position.1
    }

    pub fn contains(&self, other: &Window) -> bool {
        self.time.0 <= other.time.0
            && other.time.1 <= self.time.1
            && self.position.0 <= other.position.0
            && other.position.1 <= self.position.1
    }

    fn check(&self, net: &SortingNetwork) -> Result<()> {
        let (i, j) = self.time;
        let (a, b) = self.position;
        if i < 1 || i > j || j > net.len() {
            return Err(Error::MalformedWindow(format!(
                "time [{i},{j}] outside [1,{}]",
                net.len()
            )));
        }
        if a < 1 || a > b || b + 1 > net.n() {
            return Err(Error::MalformedWindow(format!(
                "position [{a},{b}] outside [1,{}]",
                net.n() - 1
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{}]x[{},{}]",
            self.time.0, self.time.1, self.position.0, self.position.1
        )
    }
}

/// Whether `pattern` occurs at window `w` of `net`.
pub fn occurs_at(net: &SortingNetwork, pattern: &Pattern, w: &Window) -> Result<bool> {
    w.check(net)?;
    let (i, j) = w.time;
    let (a, b) = w.position;
    let mut expected = pattern.swaps().iter();
    for &s in &net.swaps()[i - 1..j] {
        let s = s as usize;
        if s + 1 == a || s == b + 1 {
            return Ok(false);
        }
        if (a..=b).contains(&s) {
            match expected.next() {
                Some(&g) if g as usize + a - 1 == s => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(expected.next().is_none())
}

/// Swap times of a network grouped by position.
#[derive(Clone, Debug)]
pub struct SwapIndex {
    times: Vec<Vec<usize>>,
}

impl SwapIndex {
    pub fn new(net: &SortingNetwork) -> Self {
        let mut times = vec![Vec::new(); net.n()];
        for (k, &s) in net.swaps().iter().enumerate() {
            times[s as usize].push(k + 1);
        }
        SwapIndex { times }
    }

    /// Earliest time of the pattern's occurrence at `[start, j] × [a, b]`
    /// with minimal `j`, when the first matched swap is at `start`.
    pub(crate) fn match_from(&self, pattern: &Pattern, start: usize, a: usize, b: usize) -> Option<usize> {
        let lo = a.saturating_sub(1).max(1);
        let hi = (b + 1).min(self.times.len() - 1);
        let mut cursors: Vec<usize> = (lo..=hi)
            .map(|p| self.times[p].partition_point(|&t| t < start))
            .collect();
        let mut last = start;
        for &g in pattern.swaps() {
            let mut best: Option<(usize, usize)> = None;
            for (k, p) in (lo..=hi).enumerate() {
                if let Some(&t) = self.times[p].get(cursors[k]) {
                    if best.is_none_or(|(bt, _)| t < bt) {
                        best = Some((t, k));
                    }
                }
            }
            let (t, k) = best?;
            let p = lo + k;
            if p + 1 == a || p == b + 1 || p != g as usize + a - 1 {
                return None;
            }
            cursors[k] += 1;
            last = t;
        }
        Some(last)
    }
}

/// All tight occurrences at the canonical width `b - a = size - 2`: each
/// window starts at its first matched swap and ends at its last, so for every
/// start the minimal end time is reported. Sorted by `(time, position)`.
pub fn find_occurrences(net: &SortingNetwork, pattern: &Pattern) -> Vec<Window> {
    find_occurrences_indexed(net, &SwapIndex::new(net), pattern)
}

pub fn find_occurrences_indexed(
    net: &SortingNetwork,
    index: &SwapIndex,
    pattern: &Pattern,
) -> Vec<Window> {
    let size = pattern.size();
    if size > net.n() || pattern.len() > net.len() {
        return Vec::new();
    }
    let first = pattern.swaps()[0] as usize;
    let mut out = Vec::new();
    for (k, &s) in net.swaps().iter().enumerate() {
        let s = s as usize;
        if s < first {
            continue;
        }
        let a = s + 1 - first;
        let b = a + size - 2;
        if b + 1 > net.n() {
            continue;
        }
        if let Some(end) = index.match_from(pattern, k + 1, a, b) {
            out.push(Window::new((k + 1, end), (a, b)));
        }
    }
    out.sort();
    out
}

/// Maximum number of pairwise disjoint windows, by branch and bound.
pub fn count_disjoint_exact(windows: &[Window]) -> Result<usize> {
    Ok(max_disjoint_exact(windows, DEFAULT_PACKING_CAP)?.len())
}

/// A maximum pairwise disjoint subfamily.
pub fn max_disjoint_exact(windows: &[Window], cap: usize) -> Result<Vec<Window>> {
    let m = windows.len();
    if m > cap.min(64) {
        return Err(Error::PackingCap { count: m, cap });
    }
    if m == 0 {
        return Ok(Vec::new());
    }
    let mut adj = vec![0u64; m];
    for x in 0..m {
        for y in 0..m {
            if x != y && windows[x].overlaps(&windows[y]) {
                adj[x] |= 1 << y;
            }
        }
    }
    let all = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let mut best = 0u64;
    branch(all, 0, &adj, &mut best);
    Ok((0..m)
        .filter(|&x| best & (1 << x) != 0)
        .map(|x| windows[x])
        .collect())
}

// Upper bound on the independence number: a greedy clique partition.
fn clique_cover(mut cand: u64, adj: &[u64]) -> u32 {
    let mut cliques = 0;
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= !(1 << v);
        let mut pool = cand & adj[v];
        while pool != 0 {
            let u = pool.trailing_zeros() as usize;
            cand &= !(1 << u);
            pool &= adj[u];
        }
        cliques += 1;
    }
    cliques
}

fn branch(cand: u64, chosen: u64, adj: &[u64], best: &mut u64) {
    if cand == 0 {
        if chosen.count_ones() > best.count_ones() {
            *best = chosen;
        }
        return;
    }
    if chosen.count_ones() + clique_cover(cand, adj) <= best.count_ones() {
        return;
    }
    // most constrained: largest number of conflicts among the candidates
    let mut v = cand.trailing_zeros() as usize;
    let mut deg = 0;
    let mut rest = cand;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (adj[u] & cand).count_ones();
        if d > deg {
            deg = d;
            v = u;
        }
    }
    if deg == 0 {
        let all = chosen | cand;
        if all.count_ones() > best.count_ones() {
            *best = all;
        }
        return;
    }
    branch(cand & !(1 << v) & !adj[v], chosen | (1 << v), adj, best);
    branch(cand & !(1 << v), chosen, adj, best);
}

/// Greedy lower bound on the disjoint count.
pub fn count_disjoint_greedy(windows: &[Window]) -> usize {
    greedy_disjoint(windows).len()
}

/// Sorts by `(j, b)` and keeps each window disjoint from those already kept.
pub fn greedy_disjoint(windows: &[Window]) -> Vec<Window> {
    let mut sorted = windows.to_vec();
    sorted.sort_by_key(|w| (w.time.1, w.position.1, w.time.0, w.position.0));
    let width = sorted.iter().map(|w| w.position.1).max().unwrap_or(0);
    // Kept windows end no later than the current one, so a conflict means
    // some covered position was last used at or after our start time.
    let mut last_end = vec![0usize; width + 1];
    let mut kept = Vec::new();
    for w in sorted {
        let (a, b) = w.position;
        if last_end[a..=b].iter().all(|&e| e < w.time.0) {
            last_end[a..=b].iter_mut().for_each(|e| *e = w.time.1);
            kept.push(w);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    fn net(n: usize, s: &[u32]) -> SortingNetwork {
        SortingNetwork::new(n, s.to_vec()).unwrap()
    }

    #[test]
    fn pattern_examples() {
        assert!(is_pattern(&[1, 2, 1]));
        assert!(is_pattern(&[4, 2]));
        assert!(!is_pattern(&[1, 1]));
        assert!(!is_pattern(&[1, 2, 1, 2]));
        assert!(!is_pattern(&[0, 1]));
        assert!(!is_pattern(&[-1]));
        assert_eq!(Pattern::parse("4,2").unwrap().size(), 5);
        assert!(Pattern::parse("1,1").is_err());
    }

    #[test]
    fn occurrence_in_size_five_network() {
        let w = net(5, &[1, 3, 2, 4, 1, 3, 4, 2, 1, 3]);
        let g = Pattern::parse("2,1,2").unwrap();
        assert!(occurs_at(&w, &g, &Window::new((4, 7), (3, 4))).unwrap());
        assert!(!occurs_at(&w, &g, &Window::new((4, 7), (2, 3))).unwrap());
        assert!(find_occurrences(&w, &g).contains(&Window::new((4, 7), (3, 4))));
    }

    #[test]
    fn whole_network_occurs_in_itself() {
        let w = net(4, &[1, 3, 2, 1, 3, 2]);
        let g = Pattern::from(&w);
        assert!(occurs_at(&w, &g, &Window::new((1, 6), (1, 3))).unwrap());
    }

    #[test]
    fn malformed_windows() {
        let w = net(3, &[1, 2, 1]);
        let g = Pattern::parse("1").unwrap();
        assert!(occurs_at(&w, &g, &Window::new((2, 1), (1, 1))).is_err());
        assert!(occurs_at(&w, &g, &Window::new((1, 4), (1, 1))).is_err());
        assert!(occurs_at(&w, &g, &Window::new((1, 1), (1, 3))).is_err());
        assert!(occurs_at(&w, &g, &Window::new((0, 1), (1, 1))).is_err());
    }

    #[test]
    fn three_disjoint_adjacent_pairs() {
        let w = net(5, &[4, 2, 3, 1, 4, 2, 1, 3, 4, 2]);
        let g = Pattern::parse("1,2").unwrap();
        let occ = find_occurrences(&w, &g);
        assert_eq!(count_disjoint_exact(&occ).unwrap(), 3);
        assert_eq!(count_disjoint_greedy(&occ), 3);
    }

    #[test]
    fn long_pattern_has_no_occurrences() {
        let w = net(3, &[1, 2, 1]);
        let g = Pattern::parse("1,2,1,3").unwrap();
        assert!(find_occurrences(&w, &g).is_empty());
    }

    #[test]
    fn packing_small_cases() {
        let a = Window::new((1, 3), (1, 2));
        let inner = Window::new((2, 2), (1, 1));
        assert_eq!(count_disjoint_exact(&[a]).unwrap(), 1);
        assert_eq!(count_disjoint_exact(&[a, inner]).unwrap(), 1);
        assert_eq!(count_disjoint_exact(&[]).unwrap(), 0);
        assert_eq!(count_disjoint_greedy(&[]), 0);
        // same time, disjoint positions
        let b = Window::new((1, 3), (3, 4));
        assert_eq!(count_disjoint_exact(&[a, b]).unwrap(), 2);
        let many = vec![a; 65];
        assert!(matches!(
            count_disjoint_exact(&many),
            Err(Error::PackingCap { count: 65, .. })
        ));
    }
}
