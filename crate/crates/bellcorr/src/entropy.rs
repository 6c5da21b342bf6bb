//! Entropy primitives shared by every measure in the crate.
//!
//! All logarithms are base 2, so every entropic quantity is in bits;
//! the closed-form Bell-diagonal expressions downstream assume this.
//! Eigenvalues in [-1e-10, 0) are rounding debris from matrix evolution
//! and are clamped to zero before any logarithm; anything more negative
//! is a malformed input and raises an error.

use thiserror::Error;

use crate::linalg::{jacobi_hermitian, CMat};
use crate::qstate::DensityMatrix;

/// Probabilities above this may not be negative.
pub const PROBABILITY_CLAMP: f64 = 1e-12;
/// Eigenvalue clamp for spectra obtained from matrix arithmetic.
pub const EIGENVALUE_CLAMP: f64 = 1e-10;
/// Support threshold for the relative-entropy divergence check.
pub const SUPPORT_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EntropyError {
    #[error("probabilities sum to {sum} instead of 1")]
    InvalidDistribution { sum: f64 },
    #[error("negative probability or eigenvalue {0}")]
    NegativeWeight(f64),
    #[error("Jacobi eigensolver did not converge (malformed input)")]
    NoConvergence,
    #[error("support of rho is not contained in support of delta")]
    InfiniteDivergence,
    #[error("argument {0} outside [0, 1]")]
    DomainError(f64),
}

fn xlog2x(x: f64) -> f64 {
    if x > 0.0 {
        x * x.log2()
    } else {
        0.0
    }
}

fn clamp_weight(x: f64, slack: f64) -> Result<f64, EntropyError> {
    if x < -slack {
        Err(EntropyError::NegativeWeight(x))
    } else {
        Ok(x.max(0.0))
    }
}

/// Shannon entropy −Σ p_i log2 p_i of a probability vector, with the
/// 0·log2(0) = 0 convention.
pub fn shannon_entropy(probs: &[f64]) -> Result<f64, EntropyError> {
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > 1e-8 {
        return Err(EntropyError::InvalidDistribution { sum });
    }
    let mut h = 0.0;
    for &p in probs {
        h -= xlog2x(clamp_weight(p, PROBABILITY_CLAMP)?);
    }
    Ok(h)
}

/// Entropy of a sub-normalized outcome branch: no normalization check,
/// same clamping. Used where grid optimizers weight conditional states.
pub(crate) fn entropy_unchecked(probs: &[f64]) -> f64 {
    probs.iter().map(|&p| -xlog2x(p.max(0.0))).sum()
}

/// Von Neumann entropy of a Hermitian 2×2 or 4×4 matrix with unit trace,
/// computed through the cyclic Jacobi eigensolver.
pub fn von_neumann_entropy<const N: usize>(m: &CMat<N>) -> Result<f64, EntropyError> {
    let (vals, _) = jacobi_hermitian(m).ok_or(EntropyError::NoConvergence)?;
    let mut h = 0.0;
    for v in vals {
        h -= xlog2x(clamp_weight(v, EIGENVALUE_CLAMP)?);
    }
    Ok(h)
}

/// Quantum relative entropy S(ρ‖δ) = Tr(ρ log2 ρ − ρ log2 δ) in bits.
///
/// Divergence is detected by projecting ρ onto the kernel of δ
/// (eigenvalues below `SUPPORT_TOL`); any weight there means the
/// divergence is infinite.
pub fn relative_entropy(rho: &DensityMatrix, delta: &DensityMatrix) -> Result<f64, EntropyError> {
    let (delta_vals, delta_vecs) =
        jacobi_hermitian(delta.matrix()).ok_or(EntropyError::NoConvergence)?;

    // -S(rho) = Tr(rho log2 rho)
    let mut value = -von_neumann_entropy(rho.matrix())?;

    for (j, &mu) in delta_vals.iter().enumerate() {
        let mut v = [crate::linalg::ZERO; 4];
        for (k, slot) in v.iter_mut().enumerate() {
            *slot = delta_vecs.get(k, j);
        }
        let weight = rho.matrix().expectation(&v).max(0.0);
        if mu <= SUPPORT_TOL {
            if weight > 1e-10 {
                return Err(EntropyError::InfiniteDivergence);
            }
        } else {
            value -= weight * mu.log2();
        }
    }
    // Klein inequality: the exact value is nonnegative, so tiny negative
    // results are rounding.
    if value < 0.0 && value > -1e-12 {
        value = 0.0;
    }
    Ok(value)
}

/// Classical-correlation kernel
/// (1−c)/2·log2(1−c) + (1+c)/2·log2(1+c), monotone from 0 to 1 on [0, 1].
pub fn cc_kernel(c: f64) -> Result<f64, EntropyError> {
    if !(-1e-12..=1.0 + 1e-12).contains(&c) {
        return Err(EntropyError::DomainError(c));
    }
    let c = c.clamp(0.0, 1.0);
    Ok(xlog2x(1.0 - c) / 2.0 + xlog2x(1.0 + c) / 2.0)
}
