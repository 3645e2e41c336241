//! Finite wavelet systems over prime fields `Z_p`.
//!
//! A window `y in C^p` and a subgroup `M <= U_p` generate the system
//! `{ T_k D_m y : m in M, k in Z_p }`. This crate builds such systems, computes
//! their coefficients directly and through the DFT, evaluates the closed-form
//! coefficient energy, and decides frame and tight-frame status from the
//! window's spectrum on the cosets of `M`. The [`oracle`] module recomputes
//! the same quantities by brute force.
//!
//! ```
//! use zpframe::{frame_report, subgroup_of_order, PrimeContext, Signal, Tolerance};
//!
//! let ctx = PrimeContext::new(7).unwrap();
//! let sub = subgroup_of_order(&ctx, 3).unwrap();
//! let report = frame_report(&Signal::delta(7, 0), &sub, &ctx, Tolerance::Auto).unwrap();
//! assert!(report.is_frame && report.is_tight);
//! ```

pub mod error;
pub mod frame;
pub mod group;
pub mod io;
pub mod numtheory;
pub mod oracle;
pub mod sampling;
pub mod signal;

pub use error::{Error, Result};
pub use frame::{
    apply_inverse_frame_operator, build_y_matrix, canonical_dual_and_reconstruct,
    coefficients_direct, coefficients_fourier, energy_analytic_formula, energy_coset_formula,
    frame_operator_apply, frame_report, frame_spectrum, gamma, is_frame, is_full_system_frame,
    is_tight, synthesize, CoefficientGrid, FrameReport, FrameSpectrum, FrameVerdict,
    FullSystemVerdict, Reconstruction, TightVerdict, WaveletSystem, YMatrix,
};
pub use group::{
    act, compose, enumerate_index_set, invert, GroupElement, IndexKind, IndexSet, IndexSpec,
};
pub use numtheory::{
    divisors, element_order, find_primitive_root, full_unit_group, is_prime, mod_inverse,
    subgroup_of_order, PrimeContext, SubgroupDecomposition,
};
pub use num_complex::Complex64;
pub use signal::{
    dft, dilate, idft, inner_product, modulate, support_size, translate, Signal, Tolerance,
};
