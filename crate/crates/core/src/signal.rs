//! Length-`p` complex signals and the unitary operators acting on them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{mod_inverse, mul_mod, PrimeContext};

/// Relative factor of the default scale-aware "nonzero" threshold.
pub const DEFAULT_RELATIVE_TOLERANCE: f64 = 1e-9;

/// A vector in `C^p`, indexed by `Z_p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SignalRepr", into = "SignalRepr")]
pub struct Signal {
    p: u64,
    values: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct SignalRepr {
    p: u64,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl TryFrom<SignalRepr> for Signal {
    type Error = Error;

    fn try_from(r: SignalRepr) -> Result<Self> {
        if r.re.len() != r.im.len() {
            return Err(Error::Parse(format!(
                "field \"re\" has {} entries but \"im\" has {}",
                r.re.len(),
                r.im.len()
            )));
        }
        let values = r
            .re
            .into_iter()
            .zip(r.im)
            .map(|(a, b)| Complex64::new(a, b))
            .collect();
        Signal::new(r.p, values)
    }
}

impl From<Signal> for SignalRepr {
    fn from(s: Signal) -> Self {
        SignalRepr {
            p: s.p,
            re: s.values.iter().map(|z| z.re).collect(),
            im: s.values.iter().map(|z| z.im).collect(),
        }
    }
}

impl Signal {
    /// Builds a signal, checking the length and that every entry is finite.
    pub fn new(p: u64, values: Vec<Complex64>) -> Result<Self> {
        if values.len() as u64 != p {
            return Err(Error::LengthMismatch {
                expected: p as usize,
                actual: values.len(),
            });
        }
        if let Some(index) = values
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { p, values })
    }

    pub fn zeros(p: u64) -> Self {
        Self {
            p,
            values: vec![Complex64::new(0.0, 0.0); p as usize],
        }
    }

    /// The unit impulse at `k`.
    pub fn delta(p: u64, k: u64) -> Self {
        let mut s = Self::zeros(p);
        s.values[(k % p) as usize] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn constant(p: u64, c: Complex64) -> Self {
        Self {
            p,
            values: vec![c; p as usize],
        }
    }

    pub fn from_real(p: u64, re: &[f64]) -> Result<Self> {
        Self::new(p, re.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    #[inline]
    pub fn get(&self, k: u64) -> Complex64 {
        self.values[(k % self.p) as usize]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum()
    }

    /// The `l2` norm.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn norm_inf(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Sum of all entries.
    pub fn sum(&self) -> Complex64 {
        self.values.iter().sum()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            p: self.p,
            values: self.values.iter().map(|&z| z * c).collect(),
        }
    }

    /// `self / ||self||`; the zero signal is returned unchanged.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            return self.clone();
        }
        self.scale(Complex64::new(1.0 / n, 0.0))
    }

    pub fn sub(&self, other: &Signal) -> Result<Self> {
        check_lengths(self, other)?;
        Ok(Self {
            p: self.p,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Signal) -> Result<f64> {
        check_lengths(self, other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

fn check_lengths(x: &Signal, y: &Signal) -> Result<()> {
    if x.p != y.p || x.values.len() != y.values.len() {
        return Err(Error::LengthMismatch {
            expected: x.values.len(),
            actual: y.values.len(),
        });
    }
    Ok(())
}

fn check_ctx(x: &Signal, ctx: &PrimeContext) -> Result<()> {
    ctx.check_same(x.p)
}

/// Threshold used whenever a value must be classified as zero or nonzero.
#[derive(Debug, Clone, Copy, PartialEq)]
#[derive(Default)]
pub enum Tolerance {
    /// `1e-9 * max(1, ||x||_inf)` of the signal being inspected.
    #[default]
    Auto,
    /// A fixed absolute threshold.
    Absolute(f64),
}


impl Tolerance {
    pub fn absolute(tau: f64) -> Result<Self> {
        if !(tau.is_finite() && tau >= 0.0) {
            return Err(Error::InvalidTolerance(tau));
        }
        Ok(Tolerance::Absolute(tau))
    }

    /// The concrete threshold for decisions about entries of `x`.
    pub fn resolve(&self, x: &Signal) -> f64 {
        match *self {
            Tolerance::Auto => DEFAULT_RELATIVE_TOLERANCE * x.norm_inf().max(1.0),
            Tolerance::Absolute(tau) => tau,
        }
    }
}

/// Unitary DFT: `xhat(l) = p^(-1/2) sum_k x(k) exp(-2 pi i l k / p)`.
pub fn dft(x: &Signal, ctx: &PrimeContext) -> Result<Signal> {
    check_ctx(x, ctx)?;
    Ok(transform(x, ctx, false))
}

/// Inverse of [`dft`].
pub fn idft(x: &Signal, ctx: &PrimeContext) -> Result<Signal> {
    check_ctx(x, ctx)?;
    Ok(transform(x, ctx, true))
}

fn transform(x: &Signal, ctx: &PrimeContext, inverse: bool) -> Signal {
    let n = ctx.len();
    let tw = ctx.twiddles();
    let scale = 1.0 / (n as f64).sqrt();
    let values = (0..n)
        .map(|l| {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut idx = 0usize;
            for &v in &x.values {
                let w = tw[idx];
                acc += v * if inverse { w.conj() } else { w };
                idx += l;
                if idx >= n {
                    idx -= n;
                }
            }
            acc * scale
        })
        .collect();
    Signal { p: x.p, values }
}

/// `T_k x(s) = x(s - k)`.
pub fn translate(x: &Signal, k: u64) -> Result<Signal> {
    let p = x.p;
    if k >= p {
        return Err(Error::ResidueOutOfRange { value: k, p });
    }
    let n = x.len();
    let k = k as usize;
    let values = (0..n).map(|s| x.values[(s + n - k) % n]).collect();
    Ok(Signal { p, values })
}

/// `M_l x(s) = exp(-2 pi i l s / p) x(s)`.
pub fn modulate(x: &Signal, l: u64, ctx: &PrimeContext) -> Result<Signal> {
    check_ctx(x, ctx)?;
    ctx.check_residue(l)?;
    let p = ctx.p();
    let values = x
        .values
        .iter()
        .enumerate()
        .map(|(s, &v)| v * ctx.twiddle(mul_mod(l, s as u64, p) as usize))
        .collect();
    Ok(Signal { p, values })
}

/// Cyclic dilation `D_m x(k) = x(m_p k)` with `m_p` the inverse of `m`.
pub fn dilate(x: &Signal, m: u64, ctx: &PrimeContext) -> Result<Signal> {
    check_ctx(x, ctx)?;
    let inv = mod_inverse(m, ctx)?;
    Ok(dilate_by_inverse(x, inv))
}

/// `k -> x(inv * k)`; the caller supplies the inverse directly.
pub(crate) fn dilate_by_inverse(x: &Signal, inv: u64) -> Signal {
    let p = x.p;
    let values = (0..p)
        .map(|k| x.values[mul_mod(inv, k, p) as usize])
        .collect();
    Signal { p, values }
}

/// `<x, y> = sum_g x(g) conj(y(g))`.
pub fn inner_product(x: &Signal, y: &Signal) -> Result<Complex64> {
    check_lengths(x, y)?;
    Ok(x
        .values
        .iter()
        .zip(&y.values)
        .map(|(a, b)| a * b.conj())
        .sum())
}

/// Number of entries with modulus strictly above `tau`.
pub fn support_size(x: &Signal, tau: f64) -> usize {
    x.values.iter().filter(|z| z.norm() > tau).count()
}
