//! Brute-force reference computations for cross-checking.
//!
//! Nothing here calls the DFT or the `frame` module. System vectors are
//! regenerated by index arithmetic alone, with inverses found by search.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frame::WaveletSystem;
use crate::numtheory::{PrimeContext, SubgroupDecomposition};
use crate::signal::Signal;

/// Hermiticity is checked to this absolute tolerance, scaled by `max(1, max |H_ij|)`.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

/// Jacobi stops once the off-diagonal Frobenius norm falls below this fraction of `||H||_F`.
pub const JACOBI_TOLERANCE: f64 = 1e-12;

const MAX_SWEEPS: usize = 100;

/// Relative factor of the default rank pivot threshold.
pub const DEFAULT_PIVOT_FACTOR: f64 = 1e-8;

fn inverse_by_search(m: u64, p: u64) -> u64 {
    (1..p)
        .find(|&u| (u as u128 * m as u128) % p as u128 == 1)
        .expect("units are invertible")
}

/// `s -> y(m^-1 (s - k))` built from raw indices.
fn wavelet_vector(y: &[Complex64], m: u64, k: u64, p: u64) -> Vec<Complex64> {
    let inv = inverse_by_search(m, p) as u128;
    (0..p)
        .map(|s| {
            let shifted = (s + p - k % p) % p;
            y[((inv * shifted as u128) % p as u128) as usize]
        })
        .collect()
}

fn raw_inner(x: &[Complex64], v: &[Complex64]) -> Complex64 {
    x.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

/// A dense conjugate-symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseHermitian {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DenseHermitian {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::LengthMismatch {
                expected: dim * dim,
                actual: entries.len(),
            });
        }
        let scale = entries.iter().map(|z| z.norm()).fold(1.0, f64::max);
        for row in 0..dim {
            for col in row..dim {
                let deviation = (entries[row * dim + col] - entries[col * dim + row].conj()).norm();
                if deviation > HERMITIAN_TOLERANCE * scale {
                    return Err(Error::NotHermitian {
                        row,
                        col,
                        deviation,
                    });
                }
            }
        }
        Ok(Self { dim, entries })
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let dim = diag.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * dim + i] = Complex64::new(d, 0.0);
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &Signal) -> Result<Signal> {
        if x.len() != self.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                actual: x.len(),
            });
        }
        let out = (0..self.dim)
            .map(|i| {
                self.entries[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .zip(x.values())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        Signal::new(x.p(), out)
    }

    /// The real symmetric `2n x 2n` matrix `[[Re H, -Im H], [Im H, Re H]]`,
    /// whose spectrum is that of `H` with every eigenvalue doubled.
    fn real_embedding(&self) -> Vec<Vec<f64>> {
        let n = self.dim;
        let mut r = vec![vec![0.0; 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                let z = self.get(i, j);
                r[i][j] = z.re;
                r[i + n][j + n] = z.re;
                r[i][j + n] = -z.im;
                r[i + n][j] = z.im;
            }
        }
        r
    }
}

/// `S = sum_j v_j v_j^*` entry by entry.
pub fn assemble_frame_operator(system: &WaveletSystem<'_>) -> Result<DenseHermitian> {
    let p = system.ctx().p();
    let n = p as usize;
    let y = system.window().values();
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for g in system.index_set().elements() {
        let v = wavelet_vector(y, g.m, g.k, p);
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] += v[i] * v[j].conj();
            }
        }
    }
    DenseHermitian::new(n, entries)
}

/// All eigenvalues, ascending, by cyclic Jacobi rotations on the real embedding.
pub fn hermitian_eigenvalues(h: &DenseHermitian) -> Vec<f64> {
    let mut a = h.real_embedding();
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    let frob = a.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
    let off_norm = |a: &[Vec<f64>]| -> f64 {
        let mut s = 0.0;
        for (i, row) in a.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if i != j {
                    s += v * v;
                }
            }
        }
        s.sqrt()
    };

    for _ in 0..MAX_SWEEPS {
        if off_norm(&a) <= JACOBI_TOLERANCE * frob {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                #[allow(clippy::needless_range_loop)]
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }

    let mut diag: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    diag.sort_by(f64::total_cmp);
    // Each eigenvalue of H appears twice in the embedding.
    diag.chunks(2).map(|pair| 0.5 * (pair[0] + pair[1])).collect()
}

/// Smallest and largest eigenvalue.
pub fn hermitian_extremal_eigenvalues(h: &DenseHermitian) -> (f64, f64) {
    let ev = hermitian_eigenvalues(h);
    match (ev.first(), ev.last()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => (0.0, 0.0),
    }
}

/// Outcome of numerical rank determination.
#[derive(Debug, Clone, PartialEq)]
pub struct RankReport {
    pub rank: usize,
    /// Smallest pivot that was accepted.
    pub smallest_accepted_pivot: Option<f64>,
    /// Largest remaining entry when elimination stopped.
    pub largest_rejected_pivot: Option<f64>,
}

impl RankReport {
    /// True when any pivot decision lies within a factor 10 of `tolerance`.
    pub fn is_indeterminate(&self, tolerance: f64) -> bool {
        let near = |v: f64| v >= tolerance / 10.0 && v <= tolerance * 10.0;
        self.smallest_accepted_pivot.is_some_and(near) || self.largest_rejected_pivot.is_some_and(near)
    }
}

/// `1e-8` times the largest vector norm.
pub fn default_pivot_tolerance(vectors: &[Signal]) -> f64 {
    DEFAULT_PIVOT_FACTOR * vectors.iter().map(Signal::norm).fold(0.0, f64::max)
}

/// Gaussian elimination with complete pivoting on the matrix whose rows are `vectors`.
pub fn span_rank_report(vectors: &[Signal], pivot_tolerance: f64) -> RankReport {
    let mut a: Vec<Vec<Complex64>> = vectors.iter().map(|v| v.values().to_vec()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut smallest_accepted: Option<f64> = None;
    let mut largest_rejected = None;

    while rank < rows.min(cols) {
        let mut best = (rank, rank, 0.0f64);
        for (i, row) in a.iter().enumerate().skip(rank) {
            for (j, z) in row.iter().enumerate().skip(rank) {
                let mag = z.norm();
                if mag > best.2 {
                    best = (i, j, mag);
                }
            }
        }
        let (pi, pj, mag) = best;
        if mag <= pivot_tolerance {
            largest_rejected = Some(mag);
            break;
        }
        smallest_accepted = Some(smallest_accepted.map_or(mag, |s: f64| s.min(mag)));
        a.swap(rank, pi);
        for row in a.iter_mut() {
            row.swap(rank, pj);
        }
        let pivot = a[rank][rank];
        let pivot_row = a[rank].clone();
        for row in a.iter_mut().skip(rank + 1) {
            let factor = row[rank] / pivot;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (r, &pv) in row.iter_mut().zip(&pivot_row).skip(rank) {
                *r -= factor * pv;
            }
        }
        rank += 1;
    }

    RankReport {
        rank,
        smallest_accepted_pivot: smallest_accepted,
        largest_rejected_pivot: largest_rejected,
    }
}

pub fn span_rank(vectors: &[Signal], pivot_tolerance: f64) -> usize {
    span_rank_report(vectors, pivot_tolerance).rank
}

/// System vectors regenerated from raw index arithmetic.
pub fn system_vectors(system: &WaveletSystem<'_>) -> Result<Vec<Signal>> {
    let p = system.ctx().p();
    let y = system.window().values();
    system
        .index_set()
        .elements()
        .iter()
        .map(|g| Signal::new(p, wavelet_vector(y, g.m, g.k, p)))
        .collect()
}

/// `sum_{m in M} sum_k |<x, T_k D_m y>|^2`, one inner product at a time.
pub fn naive_energy(
    x: &Signal,
    y: &Signal,
    sub: &SubgroupDecomposition,
    ctx: &PrimeContext,
) -> Result<f64> {
    let p = ctx.p();
    for s in [x, y] {
        if s.p() != p {
            return Err(Error::PrimeMismatch { left: p, right: s.p() });
        }
    }
    if sub.p() != p {
        return Err(Error::PrimeMismatch { left: p, right: sub.p() });
    }
    let mut total = 0.0;
    for &m in sub.elements() {
        for k in 0..p {
            let v = wavelet_vector(y.values(), m, k, p);
            total += raw_inner(x.values(), &v).norm_sqr();
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{frame_operator_apply, WaveletSystem};
    use crate::group::{act, enumerate_index_set, IndexSet, IndexSpec};
    use crate::numtheory::{full_unit_group, subgroup_of_order};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ctx(p: u64) -> PrimeContext {
        PrimeContext::new(p).unwrap()
    }

    fn sample(p: u64, seed: f64) -> Signal {
        Signal::new(
            p,
            (0..p)
                .map(|k| c((seed * (k as f64 + 1.0)).sin(), (seed * 0.37 * (k * k) as f64).cos()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn regenerated_vectors_match_group_action() {
        let cx = ctx(7);
        let y = sample(7, 1.1);
        for m in 1..7 {
            for k in 0..7 {
                let v = wavelet_vector(y.values(), m, k, 7);
                let w = act(crate::group::GroupElement { m, k }, &y, &cx).unwrap();
                assert_eq!(v, w.values());
            }
        }
    }

    #[test]
    fn impulse_system_operator_is_scalar() {
        let cx = ctx(7);
        let sub = subgroup_of_order(&cx, 3).unwrap();
        let set = enumerate_index_set(&cx, IndexSpec::Subgroup(&sub)).unwrap();
        let sys = WaveletSystem::new(&cx, Signal::delta(7, 0), set).unwrap();
        let s = assemble_frame_operator(&sys).unwrap();
        for i in 0..7 {
            for j in 0..7 {
                let expected = if i == j { 3.0 } else { 0.0 };
                assert_eq!(s.get(i, j), c(expected, 0.0));
            }
        }
    }

    #[test]
    fn empty_system_gives_zero_matrix() {
        let cx = ctx(5);
        let set = IndexSet::custom(Vec::new(), &cx).unwrap();
        let sys = WaveletSystem::new(&cx, sample(5, 0.3), set).unwrap();
        let s = assemble_frame_operator(&sys).unwrap();
        assert!((0..25).all(|i| s.get(i / 5, i % 5) == c(0.0, 0.0)));
    }

    #[test]
    fn operator_matches_frame_operator_apply() {
        let cx = ctx(11);
        let sub = subgroup_of_order(&cx, 5).unwrap();
        let set = enumerate_index_set(&cx, IndexSpec::Subgroup(&sub)).unwrap();
        let sys = WaveletSystem::new(&cx, sample(11, 0.8), set).unwrap();
        let s = assemble_frame_operator(&sys).unwrap();
        let x = sample(11, 2.3);
        let a = s.apply(&x).unwrap();
        let b = frame_operator_apply(&x, &sys).unwrap();
        assert!(a.max_abs_diff(&b).unwrap() < 1e-10);
    }

    #[test]
    fn eigen_examples() {
        let id = DenseHermitian::from_diagonal(&[2.5; 4]);
        let (lo, hi) = hermitian_extremal_eigenvalues(&id);
        assert!((lo - 2.5).abs() < 1e-14 && (hi - 2.5).abs() < 1e-14);
        let d = DenseHermitian::from_diagonal(&[1.0, 2.0, 3.0]);
        let (lo, hi) = hermitian_extremal_eigenvalues(&d);
        assert!((lo - 1.0).abs() < 1e-14 && (hi - 3.0).abs() < 1e-14);
    }

    #[test]
    fn eigen_of_complex_two_by_two() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let h = DenseHermitian::new(2, vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)]).unwrap();
        let ev = hermitian_eigenvalues(&h);
        assert!((ev[0] - 1.0).abs() < 1e-13);
        assert!((ev[1] - 3.0).abs() < 1e-13);
    }

    #[test]
    fn eigen_trace_and_psd() {
        let cx = ctx(13);
        let sub = full_unit_group(&cx);
        let set = enumerate_index_set(&cx, IndexSpec::Subgroup(&sub)).unwrap();
        let sys = WaveletSystem::new(&cx, sample(13, 0.61), set).unwrap();
        let s = assemble_frame_operator(&sys).unwrap();
        let ev = hermitian_eigenvalues(&s);
        assert_eq!(ev.len(), 13);
        let trace: f64 = (0..13).map(|i| s.get(i, i).re).sum();
        assert!((ev.iter().sum::<f64>() - trace).abs() < 1e-9 * trace);
        assert!(ev.iter().all(|&l| l >= -1e-10));
    }

    #[test]
    fn rejects_non_hermitian() {
        let err = DenseHermitian::new(2, vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::NotHermitian { row: 0, col: 1, .. }));
    }

    #[test]
    fn rank_examples() {
        let p = 7;
        let basis: Vec<Signal> = (0..p).map(|k| Signal::delta(p, k)).collect();
        assert_eq!(span_rank(&basis, 1e-8), 7);
        let copies: Vec<Signal> = (0..p).map(|_| Signal::delta(p, 0)).collect();
        assert_eq!(span_rank(&copies, 1e-8), 1);

        let cx = ctx(p);
        let sub = subgroup_of_order(&cx, 3).unwrap();
        let set = enumerate_index_set(&cx, IndexSpec::Subgroup(&sub)).unwrap();
        let sys = WaveletSystem::new(&cx, Signal::constant(p, c(1.0, 0.0)), set).unwrap();
        let vs = system_vectors(&sys).unwrap();
        assert_eq!(span_rank(&vs, default_pivot_tolerance(&vs)), 1);
    }

    #[test]
    fn indeterminate_band() {
        let r = RankReport { rank: 3, smallest_accepted_pivot: Some(5e-8), largest_rejected_pivot: None };
        assert!(r.is_indeterminate(1e-8));
        let r = RankReport { rank: 3, smallest_accepted_pivot: Some(1e-3), largest_rejected_pivot: Some(1e-16) };
        assert!(!r.is_indeterminate(1e-8));
    }

    #[test]
    fn naive_energy_examples() {
        let cx = ctx(5);
        let sub = full_unit_group(&cx);
        let d0 = Signal::delta(5, 0);
        assert_eq!(naive_energy(&d0, &d0, &sub, &cx).unwrap(), 4.0);
        assert_eq!(naive_energy(&Signal::zeros(5), &d0, &sub, &cx).unwrap(), 0.0);
    }
}
