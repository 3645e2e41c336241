//! Exact arithmetic on `Z_p` and its multiplicative group `U_p`.
//!
//! [`PrimeContext`] validates a prime once and caches everything later stages
//! need: the factorization of `p - 1`, the canonical (smallest) primitive root,
//! and the table of `p`-th roots of unity used by the DFT.
//! [`SubgroupDecomposition`] holds the unique subgroup of `U_p` of a given
//! order together with its cosets `eps^t * M`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `(a * b) mod p` without overflow.
#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Square-and-multiply modular exponentiation.
pub fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    if p == 1 {
        return 0;
    }
    let mut base = base % p;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// A validated prime with cached number-theoretic data and DFT twiddles.
#[derive(Debug, Clone)]
pub struct PrimeContext {
    p: u64,
    factors_of_p_minus_1: Vec<u64>,
    primitive_root: u64,
    /// `twiddles[j] = exp(-2 pi i j / p)`.
    twiddles: Vec<Complex64>,
}

impl PrimeContext {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let factors_of_p_minus_1 = distinct_prime_factors(p - 1);
        let primitive_root = smallest_generator(p, &factors_of_p_minus_1);
        let n = p as usize;
        let twiddles = (0..n)
            .map(|j| {
                let angle = TAU * (j as f64) / (p as f64);
                let (s, c) = angle.sin_cos();
                Complex64::new(c, -s)
            })
            .collect();
        Ok(Self {
            p,
            factors_of_p_minus_1,
            primitive_root,
            twiddles,
        })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// `p` as an index length.
    #[inline]
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.p as usize
    }

    pub fn factors_of_p_minus_1(&self) -> &[u64] {
        &self.factors_of_p_minus_1
    }

    /// The canonical generator `eps` of `U_p` (the smallest one).
    #[inline]
    pub fn primitive_root(&self) -> u64 {
        self.primitive_root
    }

    /// `exp(-2 pi i j / p)` for `j` reduced mod `p`.
    #[inline]
    pub fn twiddle(&self, j: usize) -> Complex64 {
        self.twiddles[j % self.twiddles.len()]
    }

    pub(crate) fn twiddles(&self) -> &[Complex64] {
        &self.twiddles
    }

    /// Order of the wavelet group `U_p x Z_p`.
    pub fn wavelet_group_order(&self) -> u64 {
        self.p * (self.p - 1)
    }

    pub(crate) fn check_unit(&self, m: u64) -> Result<()> {
        if m >= self.p {
            return Err(Error::ResidueOutOfRange { value: m, p: self.p });
        }
        if m == 0 {
            return Err(Error::NotInvertible { value: m, p: self.p });
        }
        Ok(())
    }

    pub(crate) fn check_residue(&self, k: u64) -> Result<()> {
        if k >= self.p {
            return Err(Error::ResidueOutOfRange { value: k, p: self.p });
        }
        Ok(())
    }

    pub(crate) fn check_same(&self, other: u64) -> Result<()> {
        if self.p != other {
            return Err(Error::PrimeMismatch {
                left: self.p,
                right: other,
            });
        }
        Ok(())
    }
}

fn smallest_generator(p: u64, factors: &[u64]) -> u64 {
    (1..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("U_p is cyclic for every prime p")
}

/// The inverse `m_p` of `m` in `U_p`, via the extended Euclidean algorithm.
pub fn mod_inverse(m: u64, ctx: &PrimeContext) -> Result<u64> {
    ctx.check_unit(m)?;
    let p = ctx.p() as i128;
    let (mut old_r, mut r) = (m as i128, p);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    Ok(old_s.rem_euclid(p) as u64)
}

/// The smallest primitive root of `p`. `U_2 = {1}`, so `p = 2` yields 1.
pub fn find_primitive_root(p: u64) -> Result<u64> {
    Ok(PrimeContext::new(p)?.primitive_root())
}

/// Multiplicative order of `m` in `U_p`.
pub fn element_order(m: u64, ctx: &PrimeContext) -> Result<u64> {
    ctx.check_unit(m)?;
    // Strip prime factors from p - 1 while the power stays 1.
    let mut order = ctx.p() - 1;
    for &q in ctx.factors_of_p_minus_1() {
        while order.is_multiple_of(q) && pow_mod(m, order / q, ctx.p()) == 1 {
            order /= q;
        }
    }
    Ok(order)
}

const NO_COSET: usize = usize::MAX;

/// The subgroup `M <= U_p` of order `M` and its cosets `H_t = eps^t M`.
///
/// Elements and cosets are kept in generator-power order:
/// `elements[j] = (eps^a)^j` and `cosets[t][j] = eps^(j a + t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupDecomposition {
    p: u64,
    order: u64,
    index: u64,
    generator: u64,
    elements: Vec<u64>,
    cosets: Vec<Vec<u64>>,
    /// `coset_of[w]` is the label `t` with `w in H_t`; `NO_COSET` at 0.
    coset_of: Vec<usize>,
}

impl SubgroupDecomposition {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// `|M|`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// The index `a = (p - 1) / M`, which is also the number of cosets.
    pub fn index(&self) -> u64 {
        self.index
    }

    /// `eps^a`.
    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// Elements in generator-power order.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn sorted_elements(&self) -> Vec<u64> {
        let mut v = self.elements.clone();
        v.sort_unstable();
        v
    }

    /// Cosets `H_0, ..., H_{a-1}`, each in generator-power order.
    pub fn cosets(&self) -> &[Vec<u64>] {
        &self.cosets
    }

    pub fn coset(&self, t: usize) -> &[u64] {
        &self.cosets[t]
    }

    /// The label `t` with `w in H_t`, or `None` for `w = 0` or out of range.
    pub fn coset_of(&self, w: u64) -> Option<usize> {
        match self.coset_of.get(w as usize) {
            Some(&t) if t != NO_COSET => Some(t),
            _ => None,
        }
    }

    pub fn contains(&self, m: u64) -> bool {
        self.coset_of(m) == Some(0)
    }

    /// True when `M = U_p`.
    pub fn is_full(&self) -> bool {
        self.index == 1
    }
}

/// The unique subgroup of `U_p` of order `order`, generated by `eps^((p-1)/order)`.
pub fn subgroup_of_order(ctx: &PrimeContext, order: u64) -> Result<SubgroupDecomposition> {
    let p = ctx.p();
    let p_minus_1 = p - 1;
    if order == 0 || !p_minus_1.is_multiple_of(order) {
        return Err(Error::NotADivisor { order, p_minus_1 });
    }
    let index = p_minus_1 / order;
    let eps = ctx.primitive_root();
    let generator = pow_mod(eps, index, p);

    let mut elements = Vec::with_capacity(order as usize);
    let mut g = 1u64;
    for _ in 0..order {
        elements.push(g);
        g = mul_mod(g, generator, p);
    }

    let mut coset_of = vec![NO_COSET; p as usize];
    let mut cosets = Vec::with_capacity(index as usize);
    let mut shift = 1u64;
    for t in 0..index as usize {
        let coset: Vec<u64> = elements.iter().map(|&m| mul_mod(shift, m, p)).collect();
        for &w in &coset {
            coset_of[w as usize] = t;
        }
        cosets.push(coset);
        shift = mul_mod(shift, eps, p);
    }

    Ok(SubgroupDecomposition {
        p,
        order,
        index,
        generator,
        elements,
        cosets,
        coset_of,
    })
}

/// `M = U_p`.
pub fn full_unit_group(ctx: &PrimeContext) -> SubgroupDecomposition {
    subgroup_of_order(ctx, ctx.p() - 1).expect("p - 1 divides itself")
}
