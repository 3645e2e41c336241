//! Seeded random windows and signals for tests, benches, and CLI checks.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::frame::is_frame;
use crate::numtheory::{PrimeContext, SubgroupDecomposition};
use crate::signal::{idft, Signal, Tolerance};

/// Entries with independent standard normal real and imaginary parts.
pub fn random_signal<R: Rng + ?Sized>(rng: &mut R, p: u64) -> Signal {
    let values = (0..p)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    Signal::new(p, values).expect("gaussian samples are finite")
}

pub fn random_unit_signal<R: Rng + ?Sized>(rng: &mut R, p: u64) -> Signal {
    loop {
        let s = random_signal(rng, p);
        if s.norm() > 0.0 {
            return s.normalized();
        }
    }
}

/// Rejection-samples a gaussian window until `W(y, M x Z_p)` is a frame.
pub fn random_frame_window<R: Rng + ?Sized>(
    rng: &mut R,
    sub: &SubgroupDecomposition,
    ctx: &PrimeContext,
) -> Result<Signal> {
    loop {
        let y = random_signal(rng, ctx.p());
        if is_frame(&y, sub, ctx, Tolerance::Auto)?.is_frame {
            return Ok(y);
        }
    }
}

/// A window whose spectrum has modulus `amplitude` everywhere, with random phases.
pub fn flat_spectrum_window<R: Rng + ?Sized>(
    rng: &mut R,
    ctx: &PrimeContext,
    amplitude: f64,
) -> Result<Signal> {
    let spectrum = (0..ctx.p())
        .map(|_| Complex64::from_polar(amplitude, rng.gen_range(0.0..std::f64::consts::TAU)))
        .collect();
    idft(&Signal::new(ctx.p(), spectrum)?, ctx)
}

/// A window whose spectrum is gaussian on the chosen cosets (and on frequency 0
/// when `with_dc`) and exactly zero elsewhere.
pub fn coset_supported_window<R: Rng + ?Sized>(
    rng: &mut R,
    sub: &SubgroupDecomposition,
    ctx: &PrimeContext,
    cosets: &[usize],
    with_dc: bool,
) -> Result<Signal> {
    let mut spectrum = vec![Complex64::new(0.0, 0.0); ctx.len()];
    let draw = |rng: &mut R| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    if with_dc {
        spectrum[0] = draw(rng);
    }
    for &t in cosets {
        for &w in sub.coset(t) {
            spectrum[w as usize] = draw(rng);
        }
    }
    idft(&Signal::new(ctx.p(), spectrum)?, ctx)
}
