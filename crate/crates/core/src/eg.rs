//! Sorting networks and the Edelman-Greene bijection with staircase tableaux.
//!
//! The forward map repeatedly removes the largest entry, which always sits on
//! the staircase border at `(n - j, j)`, emits `j`, and slides the remaining
//! entries along the greedy path towards the vacated box. Cells outside the
//! diagram and vacated cells both read as 0.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tableau::{Cell, SkewFilling, StandardTableau, YoungDiagram};

/// Sequence of `n(n-1)/2` adjacent swaps whose composition reverses `1..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "NetworkRepr", into = "NetworkRepr")]
pub struct SortingNetwork {
    n: usize,
    swaps: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct NetworkRepr {
    n: usize,
    swaps: Vec<u32>,
}

impl TryFrom<NetworkRepr> for SortingNetwork {
    type Error = Error;
    fn try_from(r: NetworkRepr) -> Result<Self> {
        SortingNetwork::new(r.n, r.swaps)
    }
}

impl From<SortingNetwork> for NetworkRepr {
    fn from(s: SortingNetwork) -> Self {
        NetworkRepr {
            n: s.n,
            swaps: s.swaps,
        }
    }
}

pub fn num_swaps(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl SortingNetwork {
    pub fn new(n: usize, swaps: Vec<u32>) -> Result<Self> {
        check_network(&swaps, n).map_err(|reason| Error::InvalidNetwork { n, reason })?;
        Ok(SortingNetwork { n, swaps })
    }

    pub fn n(&self) -> usize {
        self.n
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

    /// Wire labels by position after each time step; row `k` is the state
    /// after `k` swaps, so row 0 is the identity.
    pub fn trajectories(&self) -> Vec<Vec<usize>> {
        let mut state: Vec<usize> = (1..=self.n).collect();
        let mut out = Vec::with_capacity(self.swaps.len() + 1);
        out.push(state.clone());
        for &s in &self.swaps {
            state.swap(s as usize - 1, s as usize);
            out.push(state.clone());
        }
        out
    }
}

impl fmt::Display for SortingNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.swaps.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

fn check_network(swaps: &[u32], n: usize) -> std::result::Result<(), String> {
    if n == 0 {
        return Err("size must be positive".into());
    }
    if swaps.len() != num_swaps(n) {
        return Err(format!(
            "expected {} swaps, got {}",
            num_swaps(n),
            swaps.len()
        ));
    }
    let mut wires: Vec<usize> = (1..=n).collect();
    for (k, &s) in swaps.iter().enumerate() {
        let s = s as usize;
        if s == 0 || s >= n {
            return Err(format!("swap {} at time {} out of range", s, k + 1));
        }
        wires.swap(s - 1, s);
    }
    if wires.iter().rev().copied().eq(1..=n) {
        Ok(())
    } else {
        Err("composition is not the reverse permutation".into())
    }
}

/// True iff `swaps` is a sorting network of size `n`.
pub fn validate_network(swaps: &[u32], n: usize) -> bool {
    check_network(swaps, n).is_ok()
}

/// Intermediate state of the forward map after `t` steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlidingState {
    pub filling: SkewFilling,
    pub emitted: Vec<u32>,
    pub t: usize,
}

/// Step-by-step forward Edelman-Greene map.
#[derive(Clone, Debug)]
pub struct EgSlider {
    n: usize,
    grid: Vec<Vec<u32>>,
    // pos[v - 1] is the current cell of entry v
    pos: Vec<Cell>,
    emitted: Vec<u32>,
}

impl EgSlider {
    pub fn new(t: &StandardTableau) -> Result<Self> {
        let n = t
            .shape()
            .staircase_size()
            .filter(|&n| n >= 2)
            .ok_or_else(|| Error::NotStaircase(t.shape().rows().to_vec()))?;
        Ok(EgSlider {
            n,
            grid: t.rows().to_vec(),
            pos: t.positions(),
            emitted: Vec::with_capacity(num_swaps(n)),
        })
    }

    fn value(&self, i: usize, j: usize) -> u32 {
        if i == 0 || j == 0 {
            return 0;
        }
        self.grid
            .get(i - 1)
            .and_then(|r| r.get(j - 1))
            .copied()
            .unwrap_or(0)
    }

    /// Performs one step and returns the emitted swap, or `None` when done.
    pub fn step(&mut self) -> Option<u32> {
        let total = num_swaps(self.n);
        let t = self.emitted.len();
        if t == total {
            return None;
        }
        let max = (total - t) as u32;
        let Cell { row, col } = self.pos[max as usize - 1];
        debug_assert_eq!(row + col, self.n, "maximum off the staircase border");
        let (mut i, mut j) = (row, col);
        loop {
            let up = self.value(i - 1, j);
            let left = self.value(i, j - 1);
            if up == 0 && left == 0 {
                self.grid[i - 1][j - 1] = 0;
                break;
            }
            let (ni, nj, v) = if up > left { (i - 1, j, up) } else { (i, j - 1, left) };
            self.grid[i - 1][j - 1] = v;
            self.pos[v as usize - 1] = Cell::new(i, j);
            i = ni;
            j = nj;
        }
        self.emitted.push(col as u32);
        Some(col as u32)
    }

    pub fn state(&self) -> SlidingState {
        SlidingState {
            filling: SkewFilling {
                shape: YoungDiagram::staircase(self.n),
                rows: self.grid.clone(),
            },
            emitted: self.emitted.clone(),
            t: self.emitted.len(),
        }
    }

    pub fn finish(mut self) -> SortingNetwork {
        while self.step().is_some() {}
        SortingNetwork {
            n: self.n,
            swaps: self.emitted,
        }
    }
}

/// Maps a staircase tableau to its sorting network.
pub fn eg_forward(t: &StandardTableau) -> Result<SortingNetwork> {
    let net = EgSlider::new(t)?.finish();
    debug_assert!(validate_network(&net.swaps, net.n));
    Ok(net)
}

/// The unique staircase tableau whose forward image is `net`.
///
/// Runs Edelman-Greene insertion on the reversed word and returns the
/// recording tableau. The insertion tableau of a reduced word for the
/// reversal permutation is always the staircase with row `i` equal to
/// `i, i + 1, .., n - 1`; anything else means the input was not reduced.
pub fn eg_inverse(net: &SortingNetwork) -> Result<StandardTableau> {
    let n = net.n;
    if n < 2 {
        return Err(Error::InvalidNetwork {
            n,
            reason: "size must be at least 2".into(),
        });
    }
    let mut p: Vec<Vec<u32>> = Vec::with_capacity(n - 1);
    let mut q: Vec<Vec<u32>> = Vec::with_capacity(n - 1);
    for (k, &letter) in net.swaps.iter().rev().enumerate() {
        let label = k as u32 + 1;
        let mut x = letter;
        let mut r = 0;
        loop {
            if r == p.len() {
                p.push(vec![x]);
                q.push(vec![label]);
                break;
            }
            let row = &mut p[r];
            match row.iter().position(|&y| y > x) {
                None => {
                    row.push(x);
                    q[r].push(label);
                    break;
                }
                Some(idx) => {
                    let y = row[idx];
                    // a row holding x, x + 1 stays as is and x + 1 moves on
                    if !(y == x + 1 && idx > 0 && row[idx - 1] == x) {
                        row[idx] = x;
                    }
                    x = y;
                    r += 1;
                }
            }
        }
    }
    let expected = (1..n).all(|i| {
        p.get(i - 1)
            .is_some_and(|row| row.iter().copied().eq(i as u32..n as u32))
    });
    if !expected || p.len() != n - 1 {
        return Err(Error::InvalidNetwork {
            n,
            reason: "insertion tableau is not the staircase".into(),
        });
    }
    StandardTableau::new(YoungDiagram::staircase(n), q)
}
