#![allow(dead_code)]

use rand::Rng;
use sortnet::sampler::ShrinkingChain;
use sortnet::tableau::partitions;
use sortnet::YoungDiagram;

/// A diagram inside staircase(`n`): the state of the corner-removal chain
/// after a uniformly chosen number of steps.
pub fn random_subdiagram<R: Rng>(n: usize, rng: &mut R) -> YoungDiagram {
    let stair = YoungDiagram::staircase(n);
    let steps = rng.gen_range(0..stair.size());
    let mut chain = ShrinkingChain::new(&stair);
    for _ in 0..steps {
        chain.step_with(rng.gen::<f64>()).unwrap();
    }
    chain.current()
}

/// Every nonempty partition with at most `max` boxes.
pub fn small_partitions(max: usize) -> Vec<YoungDiagram> {
    (1..=max).flat_map(partitions).collect()
}
