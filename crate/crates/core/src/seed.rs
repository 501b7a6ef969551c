//! Seed derivation. Every run and every grid cell gets its own seed hashed
//! from the master seed and its coordinates, so any single run or cell can be
//! reproduced in isolation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used for every stochastic step of a run.
pub type RunRng = ChaCha8Rng;

pub fn run_rng(seed: u64) -> RunRng {
    ChaCha8Rng::seed_from_u64(seed)
}

// SplitMix64 finalizer.
#[inline]
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Hashes an ordered tuple of words into one seed.
pub fn derive(parts: &[u64]) -> u64 {
    parts
        .iter()
        .fold(0x6a09_e667_f3bc_c908, |h, &p| mix(h ^ mix(p)))
}

pub fn run_seed(master_seed: u64, run_index: u64) -> u64 {
    derive(&[master_seed, run_index])
}

/// Seed of the `(k, p, tau)` grid cell. `p` enters as `p * 10` when that
/// is a whole number, otherwise through its bit pattern.
pub fn cell_seed(master_seed: u64, k: usize, p: f64, tau: usize) -> u64 {
    let tenths = (p * 10.0).round();
    let p_word = if (p * 10.0 - tenths).abs() < 1e-9 && tenths >= 0.0 {
        tenths as u64
    } else {
        p.to_bits()
    };
    derive(&[master_seed, k as u64, p_word, tau as u64])
}
