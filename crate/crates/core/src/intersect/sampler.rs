use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default coefficient range `[-B, B]` for generic draws.
pub const DEFAULT_RANGE: i64 = 10_000;

/// Seeded source of generic integer coefficients.
#[derive(Clone, Debug)]
pub struct GenericSampler {
    seed: u64,
    bound: i64,
    rng: ChaCha8Rng,
}

impl GenericSampler {
    pub fn new(seed: u64) -> Self {
        GenericSampler::with_bound(seed, DEFAULT_RANGE)
    }

    pub fn with_bound(seed: u64, bound: i64) -> Self {
        assert!(bound >= 1);
        GenericSampler { seed, bound, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// Uniform in `[-B, B]`.
    pub fn draw(&mut self) -> i64 {
        self.rng.gen_range(-self.bound..=self.bound)
    }

    /// Uniform in `[-B, B]` minus zero.
    pub fn draw_nonzero(&mut self) -> i64 {
        loop {
            let v = self.draw();
            if v != 0 {
                return v;
            }
        }
    }

    /// A vector of nonzero coefficients.
    pub fn draw_vector(&mut self, len: usize) -> Vec<i64> {
        (0..len).map(|_| self.draw_nonzero()).collect()
    }
}
