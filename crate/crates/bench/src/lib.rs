//! Seeded inputs shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zpframe::sampling::{random_frame_window, random_signal};
use zpframe::{subgroup_of_order, PrimeContext, Signal, SubgroupDecomposition};

pub struct Fixture {
    pub ctx: PrimeContext,
    pub subgroup: SubgroupDecomposition,
    pub window: Signal,
    pub signal: Signal,
}

impl Fixture {
    /// Random frame window and input signal for `(p, order)`.
    pub fn new(p: u64, order: u64, seed: u64) -> Self {
        let ctx = PrimeContext::new(p).expect("prime");
        let subgroup = subgroup_of_order(&ctx, order).expect("divisor of p - 1");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let window = random_frame_window(&mut rng, &subgroup, &ctx).expect("frame window");
        let signal = random_signal(&mut rng, p);
        Self {
            ctx,
            subgroup,
            window,
            signal,
        }
    }
}
