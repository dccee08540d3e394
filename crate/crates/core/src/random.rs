//! Seeded generators for the randomized suites. The same seed always yields
//! the same sequence of instances.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bott::BlockedWeight;
use crate::geometry::FlagShape;

pub const DEFAULT_SEED: u64 = 7;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A flag shape with `min_n <= n <= max_n` and a uniformly chosen non-empty
/// set of subspace dimensions.
pub fn random_shape<R: Rng>(rng: &mut R, min_n: usize, max_n: usize) -> FlagShape {
    let n = rng.gen_range(min_n.max(2)..=max_n);
    let k = rng.gen_range(1..n);
    let mut dims: Vec<usize> = sample(rng, n - 1, k).into_iter().map(|d| d + 1).collect();
    dims.sort_unstable_by(|a, b| b.cmp(a));
    FlagShape::new(dims, n).expect("distinct dimensions below n")
}

fn decreasing_block<R: Rng>(rng: &mut R, len: usize, lo: i64, hi: i64) -> Vec<i64> {
    let mut block: Vec<i64> = (0..len).map(|_| rng.gen_range(lo..=hi)).collect();
    block.sort_unstable_by(|a, b| b.cmp(a));
    block
}

/// Blocks of the shape's quotient ranks with entries in `[-bound, bound]`.
pub fn random_blocked_weight<R: Rng>(rng: &mut R, shape: &FlagShape, bound: i64) -> BlockedWeight {
    let blocks = shape.quotient_ranks().into_iter().map(|r| decreasing_block(rng, r, -bound, bound)).collect();
    BlockedWeight::new(blocks).expect("blocks are sorted")
}

/// Input to the inversion bound: partition blocks, line-bundle coefficients
/// with every gap and `a_k` at least `l`, and `l` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversionInstance {
    pub alpha: BlockedWeight,
    pub coeffs: Vec<i64>,
    pub l: u32,
}

pub fn random_inversion_instance<R: Rng>(rng: &mut R, max_n: usize) -> InversionInstance {
    let shape = random_shape(rng, 2, max_n);
    let l: u32 = rng.gen_range(1..=3);
    let k = shape.k();
    let mut coeffs = vec![0i64; k];
    let mut next = 0i64;
    for i in (0..k).rev() {
        next += i64::from(l) + rng.gen_range(0..=2);
        coeffs[i] = next;
    }
    let blocks = shape.quotient_ranks().into_iter().map(|r| decreasing_block(rng, r, 0, 6)).collect();
    InversionInstance { alpha: BlockedWeight::new(blocks).expect("blocks are sorted"), coeffs, l }
}
