//! Uniform sampling of standard Young tableaux through the Markov chain of
//! corner removals, and seeded batch generation.
//!
//! Randomness comes from ChaCha20 (`rand_chacha::ChaCha20Rng`): a 64-bit seed
//! is expanded with `SeedableRng::seed_from_u64` and each substream selects the
//! generator's 64-bit stream id via `set_stream`. The stream is part of the
//! cipher counter, so substreams are independent and cost nothing to create.

use num::{BigRational, One};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::eg::{eg_forward, SortingNetwork};
use crate::error::{Error, Result};
use crate::tableau::{cohook_weight, Cell, StandardTableau, YoungDiagram};

/// Probability mass discrepancy tolerated before the chain reports an error.
pub const MASS_TOLERANCE: f64 = 1e-9;
const REFRESH_THRESHOLD: f64 = 1e-11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeededRng {
    pub seed: u64,
    pub stream: u64,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng { seed, stream: 0 }
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        SeededRng { seed, stream }
    }

    /// Same seed, stream `k`.
    pub fn substream(&self, k: u64) -> Self {
        SeededRng {
            seed: self.seed,
            stream: k,
        }
    }

    pub fn generator(&self) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// The shrinking sequence of diagrams `λ = λ⁰ ⊃ λ¹ ⊃ … ⊃ ∅`.
///
/// Each corner carries the unnormalised weight `∏_{z ∈ C(x)} h(z)/(h(z)-1)`,
/// so its removal probability is `weight / |λ|`. Removing `(i, j)` shortens
/// one hook in the co-hook of every other corner (the box in row `i` or in
/// column `j`), so weights are updated by a single factor each.
#[derive(Clone, Debug)]
pub struct ShrinkingChain {
    rows: Vec<usize>,
    cols: Vec<usize>,
    // (row, weight) sorted by row
    corners: Vec<(usize, f64)>,
    size: usize,
    step: usize,
    history: Option<Vec<Cell>>,
}

fn factor(h: f64) -> f64 {
    h / (h - 1.0)
}

impl ShrinkingChain {
    pub fn new(shape: &YoungDiagram) -> Self {
        let rows = shape.rows().to_vec();
        let cols = shape.column_lengths();
        let mut chain = ShrinkingChain {
            corners: Vec::new(),
            size: shape.size(),
            step: 0,
            history: None,
            rows,
            cols,
        };
        chain.refresh_weights();
        chain
    }

    /// Also record each removed corner.
    pub fn with_history(mut self) -> Self {
        self.history = Some(Vec::with_capacity(self.size));
        self
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn remaining(&self) -> usize {
        self.size
    }

    pub fn is_done(&self) -> bool {
        self.size == 0
    }

    pub fn history(&self) -> Option<&[Cell]> {
        self.history.as_deref()
    }

    pub fn current(&self) -> YoungDiagram {
        YoungDiagram::from_lengths(self.rows.clone()).expect("chain keeps a valid diagram")
    }

    pub fn corners(&self) -> Vec<Cell> {
        self.corners
            .iter()
            .map(|&(i, _)| Cell::new(i, self.rows[i - 1]))
            .collect()
    }

    fn refresh_weights(&mut self) {
        let lens: Vec<usize> = self.rows.clone();
        self.corners = (0..lens.len())
            .filter(|&i| lens[i] > 0 && lens.get(i + 1).is_none_or(|&l| l < lens[i]))
            .map(|i| {
                let c = Cell::new(i + 1, lens[i]);
                (i + 1, cohook_weight(&self.rows, &self.cols, c))
            })
            .collect();
    }

    fn total_mass(&self) -> f64 {
        self.corners.iter().map(|&(_, w)| w).sum::<f64>() / self.size as f64
    }

    /// Corner probabilities for the current diagram, renormalised.
    pub fn distribution(&self) -> Vec<(Cell, f64)> {
        let total: f64 = self.corners.iter().map(|&(_, w)| w).sum();
        self.corners
            .iter()
            .map(|&(i, w)| (Cell::new(i, self.rows[i - 1]), w / total))
            .collect()
    }

    /// Removes a corner chosen by inverse CDF of `u ∈ [0,1)` over the corners
    /// in row order.
    pub fn step_with(&mut self, u: f64) -> Result<Cell> {
        if self.size == 0 {
            return Err(Error::EmptyDiagram);
        }
        let mass = self.total_mass();
        if (mass - 1.0).abs() > REFRESH_THRESHOLD {
            self.refresh_weights();
            let mass = self.total_mass();
            if (mass - 1.0).abs() > MASS_TOLERANCE {
                return Err(Error::Inconsistent(format!(
                    "corner probabilities sum to {mass} at step {}",
                    self.step
                )));
            }
        }
        let total: f64 = self.corners.iter().map(|&(_, w)| w).sum();
        let target = u * total;
        let mut acc = 0.0;
        let mut pick = self.corners.len() - 1;
        for (k, &(_, w)) in self.corners.iter().enumerate() {
            acc += w;
            if target < acc {
                pick = k;
                break;
            }
        }
        let row = self.corners[pick].0;
        let cell = Cell::new(row, self.rows[row - 1]);
        self.remove_at(pick);
        Ok(cell)
    }

    /// Removes a specific corner.
    pub fn remove(&mut self, c: Cell) -> Result<()> {
        let idx = self
            .corners
            .iter()
            .position(|&(i, _)| i == c.row && self.rows[i - 1] == c.col)
            .ok_or(Error::NotACorner(c))?;
        self.remove_at(idx);
        Ok(())
    }

    fn remove_at(&mut self, idx: usize) {
        let (i0, _) = self.corners[idx];
        let j0 = self.rows[i0 - 1];
        for (k, (i, w)) in self.corners.iter_mut().enumerate() {
            if k == idx {
                continue;
            }
            // box (i0, j) lies in the co-leg of corners below, (i, j0) in the
            // co-arm of corners above
            let h = if *i > i0 {
                let j = self.rows[*i - 1];
                self.rows[i0 - 1] + self.cols[j - 1] + 1 - i0 - j
            } else {
                self.rows[*i - 1] + self.cols[j0 - 1] + 1 - *i - j0
            } as f64;
            *w *= factor(h - 1.0) / factor(h);
        }
        self.corners.remove(idx);
        self.rows[i0 - 1] -= 1;
        self.cols[j0 - 1] -= 1;
        self.size -= 1;
        self.step += 1;
        if let Some(h) = self.history.as_mut() {
            h.push(Cell::new(i0, j0));
        }

        let mut fresh = Vec::with_capacity(2);
        if i0 > 1 && self.rows[i0 - 2] == j0 {
            fresh.push(Cell::new(i0 - 1, j0));
        }
        let below = self.rows.get(i0).copied().unwrap_or(0);
        if j0 > 1 && below < j0 - 1 {
            fresh.push(Cell::new(i0, j0 - 1));
        }
        for c in fresh {
            let w = cohook_weight(&self.rows, &self.cols, c);
            let pos = self.corners.partition_point(|&(i, _)| i < c.row);
            self.corners.insert(pos, (c.row, w));
        }
    }
}

/// Samples a uniform standard tableau of shape `shape`.
pub fn sample_uniform_syt(shape: &YoungDiagram, rng: &SeededRng) -> Result<StandardTableau> {
    sample_uniform_syt_with(shape, &mut rng.generator())
}

pub fn sample_uniform_syt_with<R: Rng + ?Sized>(
    shape: &YoungDiagram,
    rng: &mut R,
) -> Result<StandardTableau> {
    if shape.is_empty() {
        return Err(Error::EmptyDiagram);
    }
    let size = shape.size();
    let mut rows: Vec<Vec<u32>> = shape.rows().iter().map(|&r| vec![0; r]).collect();
    let mut chain = ShrinkingChain::new(shape);
    for k in 0..size {
        let c = chain.step_with(rng.gen::<f64>())?;
        rows[c.row - 1][c.col - 1] = (size - k) as u32;
    }
    Ok(StandardTableau::from_parts_unchecked(shape.clone(), rows))
}

/// Samples a uniform sorting network of size `n`.
pub fn sample_random_network(n: usize, rng: &SeededRng) -> Result<SortingNetwork> {
    sample_random_network_with(n, &mut rng.generator())
}

pub fn sample_random_network_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<SortingNetwork> {
    if n < 2 {
        return Err(Error::SizeTooSmall { min: 2, got: n });
    }
    let t = sample_uniform_syt_with(&YoungDiagram::staircase(n), rng)?;
    eg_forward(&t)
}

/// `count` independent tableaux; sample `i` uses substream `i` of `seed`.
pub fn sample_batch(shape: &YoungDiagram, count: usize, seed: u64) -> Result<Vec<StandardTableau>> {
    let base = SeededRng::new(seed);
    (0..count as u64)
        .into_par_iter()
        .map(|i| sample_uniform_syt(shape, &base.substream(i)))
        .collect()
}

/// Exact probability that the chain produces the removal sequence of `t`,
/// i.e. the probability the sampler outputs `t`.
pub fn exact_tableau_probability(t: &StandardTableau) -> Result<BigRational> {
    let mut shape = t.shape().clone();
    let mut p = BigRational::one();
    for c in t.positions().into_iter().rev() {
        let dist = shape.corner_removal_distribution_exact()?;
        let (_, q) = dist
            .into_iter()
            .find(|(x, _)| *x == c)
            .ok_or(Error::NotACorner(c))?;
        p *= q;
        shape = shape.remove_corner(c)?;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::enumerate_syt;

    #[test]
    fn single_box() {
        let t = sample_uniform_syt(&YoungDiagram::new(vec![1]).unwrap(), &SeededRng::new(99)).unwrap();
        assert_eq!(t.rows(), &[vec![1]]);
        assert!(matches!(
            sample_uniform_syt(&YoungDiagram::empty(), &SeededRng::new(1)),
            Err(Error::EmptyDiagram)
        ));
    }

    #[test]
    fn incremental_weights_match_fresh_computation() {
        let shape = YoungDiagram::staircase(30);
        let mut chain = ShrinkingChain::new(&shape);
        let mut rng = SeededRng::new(5).generator();
        while !chain.is_done() {
            let fresh = chain.current().corner_removal_distribution().unwrap();
            let inc = chain.distribution();
            assert_eq!(fresh.len(), inc.len());
            for ((a, p), (b, q)) in fresh.iter().zip(&inc) {
                assert_eq!(a, b);
                assert!((p - q).abs() < 1e-12, "{p} vs {q}");
            }
            chain.step_with(rng.gen()).unwrap();
        }
    }

    #[test]
    fn two_box_frequencies() {
        let shape = YoungDiagram::new(vec![2, 1]).unwrap();
        let samples = sample_batch(&shape, 10_000, 11).unwrap();
        let first = samples.iter().filter(|t| t.rows()[0] == vec![1, 2]).count();
        let freq = first as f64 / 10_000.0;
        assert!((freq - 0.5).abs() < 0.02, "{freq}");
    }

    #[test]
    fn batch_determinism() {
        let shape = YoungDiagram::staircase(6);
        let a = sample_batch(&shape, 20, 3).unwrap();
        let b = sample_batch(&shape, 20, 3).unwrap();
        assert_eq!(a, b);
        let one = sample_batch(&shape, 1, 3).unwrap();
        assert_eq!(one[0], sample_uniform_syt(&shape, &SeededRng::with_stream(3, 0)).unwrap());
    }

    #[test]
    fn exact_probability_is_uniform() {
        let shape = YoungDiagram::new(vec![3, 2, 1]).unwrap();
        let expected = BigRational::new(1.into(), 16.into());
        for t in enumerate_syt(&shape).unwrap() {
            assert_eq!(exact_tableau_probability(&t).unwrap(), expected);
        }
    }

    #[test]
    fn networks_small_sizes() {
        let net = sample_random_network(2, &SeededRng::new(0)).unwrap();
        assert_eq!(net.swaps(), &[1]);
        assert!(matches!(
            sample_random_network(1, &SeededRng::new(0)),
            Err(Error::SizeTooSmall { .. })
        ));
    }
}
