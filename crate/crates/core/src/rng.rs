//! Seeded randomness. Every randomized operation takes an explicit seed.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::Q;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream for a sub-task, so inner loops do not shift
/// the draws of their callers.
pub fn substream(seed: u64, tag: u64) -> SeededRng {
    let mut r = seeded(seed);
    r.set_stream(tag);
    r
}

pub fn small_int(rng: &mut SeededRng, bound: i64) -> Q {
    Q::from_int(rng.random_range(-bound..=bound))
}

pub fn nonzero_small_int(rng: &mut SeededRng, bound: i64) -> Q {
    loop {
        let v = small_int(rng, bound);
        if !v.is_zero() {
            return v;
        }
    }
}

/// A real rational `p/q` with `|p| <= height`, `1 <= q <= height`.
pub fn small_rational(rng: &mut SeededRng, height: i64) -> Q {
    Q::ratio(
        rng.random_range(-height..=height),
        rng.random_range(1..=height),
    )
}

pub fn small_gaussian_int(rng: &mut SeededRng, bound: i64) -> Q {
    Q::from_ints(
        rng.random_range(-bound..=bound),
        rng.random_range(-bound..=bound),
    )
}
