//! Wavelet systems `W(y, Delta)`, their coefficients, energy formulas,
//! frame spectra, and frame / tight-frame verdicts.
//!
//! For `Delta_M = M x Z_p` the frame operator is diagonal in the Fourier
//! basis. Its eigenvalue at frequency 0 is `p M |yhat(0)|^2` and on the coset
//! `H_t` it is `p sum_{w in H_t} |yhat(w)|^2`, which is what
//! [`frame_spectrum`] reports. The oracle module checks this against an
//! explicitly assembled operator.

use std::collections::HashMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{act, GroupElement, IndexSet};
use crate::numtheory::{mod_inverse, mul_mod, PrimeContext, SubgroupDecomposition};
use crate::signal::{dft, dilate, idft, inner_product, support_size, Signal, Tolerance};

/// Relative tolerance for both tightness tests.
pub const TIGHTNESS_RELATIVE_TOLERANCE: f64 = 1e-8;

/// Relative residual above which a reconstruction is reported as inconsistent.
pub const RECONSTRUCTION_RELATIVE_TOLERANCE: f64 = 1e-10;

/// The family `{ T_k D_m y : (m, k) in Delta }`.
#[derive(Debug, Clone)]
pub struct WaveletSystem<'a> {
    ctx: &'a PrimeContext,
    window: Signal,
    index_set: IndexSet,
}

impl<'a> WaveletSystem<'a> {
    pub fn new(ctx: &'a PrimeContext, window: Signal, index_set: IndexSet) -> Result<Self> {
        ctx.check_same(window.p())?;
        if let Some(sub) = index_set.subgroup() {
            ctx.check_same(sub.p())?;
        }
        Ok(Self {
            ctx,
            window,
            index_set,
        })
    }

    pub fn ctx(&self) -> &'a PrimeContext {
        self.ctx
    }

    pub fn window(&self) -> &Signal {
        &self.window
    }

    pub fn index_set(&self) -> &IndexSet {
        &self.index_set
    }

    pub fn len(&self) -> usize {
        self.index_set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index_set.is_empty()
    }

    /// `sigma(index_set[j]) y`.
    pub fn vector(&self, j: usize) -> Result<Signal> {
        act(self.index_set.elements()[j], &self.window, self.ctx)
    }

    /// System vectors in index order, generated on demand.
    pub fn vectors(&self) -> impl Iterator<Item = Signal> + '_ {
        self.index_set
            .elements()
            .iter()
            .map(move |&g| act(g, &self.window, self.ctx).expect("index set validated against ctx"))
    }

    /// `|Delta| / p`.
    pub fn redundancy(&self) -> f64 {
        self.len() as f64 / self.ctx.p() as f64
    }

    fn check_input(&self, x: &Signal) -> Result<()> {
        if x.len() != self.window.len() {
            return Err(Error::LengthMismatch {
                expected: self.window.len(),
                actual: x.len(),
            });
        }
        self.ctx.check_same(x.p())
    }
}

/// Coefficients `c(m, k) = <x, sigma(m, k) y>` in index-set order.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientGrid {
    elements: Vec<GroupElement>,
    values: Vec<Complex64>,
}

impl CoefficientGrid {
    pub fn new(elements: Vec<GroupElement>, values: Vec<Complex64>) -> Result<Self> {
        if elements.len() != values.len() {
            return Err(Error::LengthMismatch {
                expected: elements.len(),
                actual: values.len(),
            });
        }
        Ok(Self { elements, values })
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (GroupElement, Complex64)> + '_ {
        self.elements.iter().copied().zip(self.values.iter().copied())
    }

    pub fn get(&self, g: GroupElement) -> Option<Complex64> {
        self.elements
            .iter()
            .position(|&e| e == g)
            .map(|j| self.values[j])
    }

    /// `sum |c(m, k)|^2`.
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn max_abs_diff(&self, other: &CoefficientGrid) -> Result<f64> {
        if self.elements != other.elements {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

/// Analysis operator evaluated term by term: one inner product per index.
pub fn coefficients_direct(x: &Signal, system: &WaveletSystem<'_>) -> Result<CoefficientGrid> {
    system.check_input(x)?;
    let values = system
        .vectors()
        .map(|v| inner_product(x, &v))
        .collect::<Result<Vec<_>>>()?;
    CoefficientGrid::new(system.index_set.elements().to_vec(), values)
}

/// Analysis operator through the Fourier side: for each dilation `m` one DFT
/// of `xhat * conj(D_{m_p} yhat)` yields every translate at once,
/// `c(m, k) = sqrt(p) F(xhat * conj(D_{m_p} yhat))(p - k)`.
pub fn coefficients_fourier(x: &Signal, system: &WaveletSystem<'_>) -> Result<CoefficientGrid> {
    system.check_input(x)?;
    let ctx = system.ctx;
    let p = ctx.p();
    let sqrt_p = (p as f64).sqrt();
    let x_hat = dft(x, ctx)?;
    let y_hat = dft(&system.window, ctx)?;

    let mut rows: HashMap<u64, Signal> = HashMap::new();
    let mut values = Vec::with_capacity(system.len());
    for g in system.index_set.elements() {
        if let std::collections::hash_map::Entry::Vacant(e) = rows.entry(g.m) {
            let dilated = dilate(&y_hat, mod_inverse(g.m, ctx)?, ctx)?;
            let product: Vec<Complex64> = x_hat
                .values()
                .iter()
                .zip(dilated.values())
                .map(|(a, b)| a * b.conj())
                .collect();
            let row = dft(&Signal::new(p, product)?, ctx)?;
            e.insert(row);
        }
        let row = &rows[&g.m];
        values.push(row.get((p - g.k) % p) * sqrt_p);
    }
    CoefficientGrid::new(system.index_set.elements().to_vec(), values)
}

fn power_spectrum(x: &Signal, ctx: &PrimeContext) -> Result<Vec<f64>> {
    Ok(dft(x, ctx)?.values().iter().map(|z| z.norm_sqr()).collect())
}

fn check_sub(sub: &SubgroupDecomposition, ctx: &PrimeContext) -> Result<()> {
    ctx.check_same(sub.p())
}

fn coset_sums(power: &[f64], sub: &SubgroupDecomposition) -> Vec<f64> {
    sub.cosets()
        .iter()
        .map(|h| h.iter().map(|&w| power[w as usize]).sum())
        .collect()
}

/// Energy `sum_{m in M} sum_k |<x, T_k D_m y>|^2` by the coset formula
/// `p (M |xhat(0)|^2 |yhat(0)|^2 + sum_t (sum_{H_t} |xhat|^2)(sum_{H_t} |yhat|^2))`.
pub fn energy_coset_formula(
    x: &Signal,
    y: &Signal,
    sub: &SubgroupDecomposition,
    ctx: &PrimeContext,
) -> Result<f64> {
    check_sub(sub, ctx)?;
    let px = power_spectrum(x, ctx)?;
    let py = power_spectrum(y, ctx)?;
    let order = sub.order() as f64;
    let cosets: f64 = coset_sums(&px, sub)
        .iter()
        .zip(coset_sums(&py, sub))
        .map(|(a, b)| a * b)
        .sum();
    Ok(ctx.p() as f64 * (order * px[0] * py[0] + cosets))
}

/// Same energy through `gamma_l(y, M) = sum_{m in M} |yhat(m l)|^2`, summing
/// frequency by frequency over `U_p - M` instead of coset by coset.
pub fn energy_analytic_formula(
    x: &Signal,
    y: &Signal,
    sub: &SubgroupDecomposition,
    ctx: &PrimeContext,
) -> Result<f64> {
    check_sub(sub, ctx)?;
    let px = power_spectrum(x, ctx)?;
    let py = power_spectrum(y, ctx)?;
    let p = ctx.p();
    let order = sub.order() as f64;

    let y_on_m: f64 = sub.elements().iter().map(|&m| py[m as usize]).sum();
    let x_on_m: f64 = sub.elements().iter().map(|&l| px[l as usize]).sum();
    let off: f64 = (1..p)
        .filter(|&l| !sub.contains(l))
        .map(|l| gamma_from_power(&py, sub, l, p) * px[l as usize])
        .sum();
    Ok(p as f64 * (order * py[0] * px[0] + y_on_m * x_on_m + off))
}

fn gamma_from_power(py: &[f64], sub: &SubgroupDecomposition, l: u64, p: u64) -> f64 {
    sub.elements()
        .iter()
        .map(|&m| py[mul_mod(m, l, p) as usize])
        .sum()
}

/// `gamma_l(y, M) = sum_{m in M} |yhat(m l)|^2` for `l in U_p - M`.
pub fn gamma(y: &Signal, sub: &SubgroupDecomposition, l: u64, ctx: &PrimeContext) -> Result<f64> {
    check_sub(sub, ctx)?;
    ctx.check_residue(l)?;
    if l == 0 || sub.contains(l) {
        return Err(Error::GammaOutsideDomain { value: l });
    }
    let py = power_spectrum(y, ctx)?;
    Ok(gamma_from_power(&py, sub, l, ctx.p()))
}

/// Eigenvalues of the frame operator of `W(y, M x Z_p)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameSpectrum {
    /// Eigenvalue on frequency 0: `p M |yhat(0)|^2`.
    #[serde(rename = "dc")]
    pub lambda0: f64,
    /// Eigenvalue on `H_t`: `p sum_{w in H_t} |yhat(w)|^2`.
    #[serde(rename = "cosets")]
    pub lambda_per_coset: Vec<f64>,
}

impl FrameSpectrum {
    /// Optimal lower frame bound.
    pub fn min(&self) -> f64 {
        self.lambda_per_coset.iter().copied().fold(self.lambda0, f64::min)
    }

    /// Optimal upper frame bound.
    pub fn max(&self) -> f64 {
        self.lambda_per_coset.iter().copied().fold(self.lambda0, f64::max)
    }

    /// The eigenvalue attached to frequency `l`.
    pub fn at(&self, l: u64, sub: &SubgroupDecomposition) -> f64 {
        match sub.coset_of(l) {
            Some(t) => self.lambda_per_coset[t],
            None => self.lambda0,
        }
    }

    /// Index of the smallest coset eigenvalue.
    pub fn argmin_coset(&self) -> Option<usize> {
        self.lambda_per_coset
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(t, _)| t)
    }
}

pub fn frame_spectrum(
    y: &Signal,
    sub: &SubgroupDecomposition,
    ctx: &PrimeContext,
) -> Result<FrameSpectrum> {
    check_sub(sub, ctx)?;
    let py = power_spectrum(y, ctx)?;
    let p = ctx.p() as f64;
    Ok(FrameSpectrum {
        lambda0: p * sub.order() as f64 * py[0],
        lambda_per_coset: coset_sums(&py, sub).into_iter().map(|s| p * s).collect(),
    })
}

/// The `a x M` matrix with entry `(t, j) = yhat(eps^(j a + t))`.
#[derive(Debug, Clone, PartialEq)]
pub struct YMatrix {
    rows: Vec<Vec<Complex64>>,
}

impl YMatrix {
    pub fn rows(&self) -> &[Vec<Complex64>] {
        &self.rows
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.rows.first().map_or(0, Vec::len))
    }

    /// Whether each row has an entry of modulus above `tau`.
    pub fn rows_nonzero(&self, tau: f64) -> Vec<bool> {
        self.rows
            .iter()
            .map(|r| r.iter().any(|z| z.norm() > tau))
            .collect()
    }
}

pub fn build_y_matrix(
    y: &Signal,
    sub: &SubgroupDecomposition,
    ctx: &PrimeContext,
) -> Result<YMatrix> {
    check_sub(sub, ctx)?;
    let y_hat = dft(y, ctx)?;
    // Cosets are stored as cosets[t][j] = eps^(j a + t).
    let rows = sub
        .cosets()
        .iter()
        .map(|h| h.iter().map(|&w| y_hat.get(w)).collect())
        .collect();
    Ok(YMatrix { rows })
}

/// Verdict of the two-condition frame characterization.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameVerdict {
    pub is_frame: bool,
    /// `yhat(0) != 0` under the tolerance.
    pub dc_nonzero: bool,
    /// Per coset: some `w in H_t` with `yhat(w) != 0`.
    pub rows_nonzero: Vec<bool>,
    /// `min{ M |sum_k y(k)|^2, p theta }`, `theta = min_t sum_{H_t} |yhat|^2`.
    pub paper_lower_bound: f64,
    /// Resolved threshold.
    pub tolerance: f64,
}

fn nonzero_window(y: &Signal) -> Result<()> {
    if y.norm_sqr() == 0.0 {
        return Err(Error::ZeroWindow);
    }
    Ok(())
}

pub fn is_frame(
    y: &Signal,
    sub: &SubgroupDecomposition,
    ctx: &PrimeContext,
    tol: Tolerance,
) -> Result<FrameVerdict> {
    check_sub(sub, ctx)?;
    nonzero_window(y)?;
    let y_hat = dft(y, ctx)?;
    let tau = tol.resolve(&y_hat);
    let dc_nonzero = y_hat.get(0).norm() > tau;
    let rows_nonzero: Vec<bool> = sub
        .cosets()
        .iter()
        .map(|h| h.iter().any(|&w| y_hat.get(w).norm() > tau))
        .collect();

    let power: Vec<f64> = y_hat.values().iter().map(|z| z.norm_sqr()).collect();
    let theta = coset_sums(&power, sub).into_iter().fold(f64::INFINITY, f64::min);
    let dc_term = sub.order() as f64 * y.sum().norm_sqr();
    let paper_lower_bound = dc_term.min(ctx.p() as f64 * theta);

    Ok(FrameVerdict {
        is_frame: dc_nonzero && rows_nonzero.iter().all(|&b| b),
        dc_nonzero,
        rows_nonzero,
        paper_lower_bound,
        tolerance: tau,
    })
}

/// Verdict for the full system `W(y, W_p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FullSystemVerdict {
    pub is_frame: bool,
    /// `p - 1`.
    pub redundancy: u64,
}

/// Full-group criterion: `yhat(0) != 0` and `||yhat||_0 >= 2`.
pub fn is_full_system_frame(
    y: &Signal,
    ctx: &PrimeContext,
    tol: Tolerance,
) -> Result<FullSystemVerdict> {
    nonzero_window(y)?;
    let y_hat = dft(y, ctx)?;
    let tau = tol.resolve(&y_hat);
    Ok(FullSystemVerdict {
        is_frame: y_hat.get(0).norm() > tau && support_size(&y_hat, tau) >= 2,
        redundancy: ctx.p() - 1,
    })
}

/// Tight-frame verdict and, when tight, the bound `alpha_y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TightVerdict {
    pub is_tight: bool,
    pub alpha: Option<f64>,
}

fn relatively_equal(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs())
}

/// Tightness holds iff `yhat(0) != 0` and `M |sum_k y(k)|^2 = p sum_{H_t} |yhat|^2`
/// for every `t`. Spectral flatness is evaluated alongside and the two must agree.
pub fn is_tight(
    y: &Signal,
    sub: &SubgroupDecomposition,
    ctx: &PrimeContext,
    tol: Tolerance,
) -> Result<TightVerdict> {
    let verdict = is_frame(y, sub, ctx, tol)?;
    let spectrum = frame_spectrum(y, sub, ctx)?;
    let dc_term = sub.order() as f64 * y.sum().norm_sqr();

    let coset_condition = verdict.dc_nonzero
        && spectrum
            .lambda_per_coset
            .iter()
            .all(|&l| relatively_equal(dc_term, l, TIGHTNESS_RELATIVE_TOLERANCE));
    let (lo, hi) = (spectrum.min(), spectrum.max());
    let flatness = verdict.dc_nonzero && hi > 0.0 && (hi - lo) / hi < TIGHTNESS_RELATIVE_TOLERANCE;

    if flatness != coset_condition {
        return Err(Error::InconsistentTightness {
            flatness,
            coset_condition,
        });
    }
    Ok(TightVerdict {
        is_tight: coset_condition,
        alpha: coset_condition.then_some(spectrum.lambda0),
    })
}

/// `S x = sum_j <x, v_j> v_j`, evaluated over the system vectors.
pub fn frame_operator_apply(x: &Signal, system: &WaveletSystem<'_>) -> Result<Signal> {
    let coeffs = coefficients_direct(x, system)?;
    synthesize(&coeffs, system)
}

/// Synthesis operator: `sum_j c_j v_j`.
pub fn synthesize(coeffs: &CoefficientGrid, system: &WaveletSystem<'_>) -> Result<Signal> {
    if coeffs.elements() != system.index_set.elements() {
        return Err(Error::LengthMismatch {
            expected: system.len(),
            actual: coeffs.len(),
        });
    }
    let n = system.ctx.len();
    let mut acc = vec![Complex64::new(0.0, 0.0); n];
    for (c, v) in coeffs.values().iter().zip(system.vectors()) {
        for (a, b) in acc.iter_mut().zip(v.values()) {
            *a += c * b;
        }
    }
    Signal::new(system.ctx.p(), acc)
}

/// `S^-1 x`, dividing each Fourier coefficient by its eigenvalue.
pub fn apply_inverse_frame_operator(
    x: &Signal,
    y: &Signal,
    sub: &SubgroupDecomposition,
    ctx: &PrimeContext,
    tol: Tolerance,
) -> Result<Signal> {
    let verdict = is_frame(y, sub, ctx, tol)?;
    let spectrum = frame_spectrum(y, sub, ctx)?;
    if !verdict.is_frame {
        return Err(Error::NotAFrame {
            eigenvalue: spectrum.min(),
            tolerance: verdict.tolerance,
        });
    }
    let x_hat = dft(x, ctx)?;
    let scaled = x_hat
        .values()
        .iter()
        .enumerate()
        .map(|(l, &z)| z / spectrum.at(l as u64, sub))
        .collect();
    idft(&Signal::new(ctx.p(), scaled)?, ctx)
}

/// Result of reconstructing `x` from its canonical dual coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    pub signal: Signal,
    /// `||x_rec - x|| / ||x||` (absolute residual when `x = 0`).
    pub relative_error: f64,
}

/// Reconstructs `x = sum_j <x, S^-1 v_j> v_j` for a `Delta_M` frame.
pub fn canonical_dual_and_reconstruct(
    x: &Signal,
    system: &WaveletSystem<'_>,
    tol: Tolerance,
) -> Result<Reconstruction> {
    system.check_input(x)?;
    let sub = system.index_set.subgroup().ok_or(Error::NotSubgroupProduct)?;
    // <x, S^-1 v_j> = <S^-1 x, v_j> since S^-1 is self-adjoint.
    let z = apply_inverse_frame_operator(x, &system.window, sub, system.ctx, tol)?;
    let coeffs = coefficients_fourier(&z, system)?;
    let signal = synthesize(&coeffs, system)?;

    let residual = signal.sub(x)?.norm();
    let scale = x.norm();
    let relative_error = if scale > 0.0 { residual / scale } else { residual };
    if relative_error > RECONSTRUCTION_RELATIVE_TOLERANCE {
        return Err(Error::ReconstructionResidual {
            residual: relative_error,
            tolerance: RECONSTRUCTION_RELATIVE_TOLERANCE,
        });
    }
    Ok(Reconstruction {
        signal,
        relative_error,
    })
}

/// Aggregated frame diagnostics for `W(y, M x Z_p)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameReport {
    pub p: u64,
    #[serde(rename = "M")]
    pub order: u64,
    pub a: u64,
    pub is_frame: bool,
    pub is_tight: bool,
    #[serde(rename = "A")]
    pub lower_bound: f64,
    #[serde(rename = "B")]
    pub upper_bound: f64,
    pub paper_lower_bound: f64,
    pub alpha: Option<f64>,
    /// `|Delta| / p`, which is `M` for `Delta_M`.
    pub redundancy: u64,
    pub spectrum: FrameSpectrum,
    #[serde(rename = "y_matrix_rows_nonzero")]
    pub y_matrix_row_nonzero: Vec<bool>,
    #[serde(skip)]
    pub dc_nonzero: bool,
    pub tolerance: f64,
}

pub fn frame_report(
    y: &Signal,
    sub: &SubgroupDecomposition,
    ctx: &PrimeContext,
    tol: Tolerance,
) -> Result<FrameReport> {
    let verdict = is_frame(y, sub, ctx, tol)?;
    let tight = is_tight(y, sub, ctx, tol)?;
    let spectrum = frame_spectrum(y, sub, ctx)?;
    let y_matrix_row_nonzero = build_y_matrix(y, sub, ctx)?.rows_nonzero(verdict.tolerance);
    debug_assert_eq!(y_matrix_row_nonzero, verdict.rows_nonzero);

    Ok(FrameReport {
        p: ctx.p(),
        order: sub.order(),
        a: sub.index(),
        is_frame: verdict.is_frame,
        is_tight: tight.is_tight,
        lower_bound: spectrum.min(),
        upper_bound: spectrum.max(),
        paper_lower_bound: verdict.paper_lower_bound,
        alpha: tight.alpha,
        redundancy: sub.order(),
        spectrum,
        y_matrix_row_nonzero,
        dc_nonzero: verdict.dc_nonzero,
        tolerance: verdict.tolerance,
    })
}
