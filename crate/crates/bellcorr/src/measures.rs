//! Closed-form correlation measures for Bell-diagonal states, plus
//! basis-dependent coherence for general density matrices.
//!
//! For a Bell-diagonal state with spectrum λ and c = max|c_k| the
//! measures reduce to
//!
//! * mutual information      I  = 2 − H(λ)
//! * classical correlation   CC = K(c)
//! * quantum discord         D  = I − K(c)
//! * coherence (axis k)      C_r^k = I − K(|c_k|)
//!
//! with K the classical-correlation kernel from the `entropy` module.
//! Discord therefore coincides with the relative entropy of coherence
//! on the axis carrying the largest |c_k|, which is what the region
//! classification exposes.

use thiserror::Error;

use crate::entropy::{cc_kernel, shannon_entropy, von_neumann_entropy, EntropyError};
use crate::linalg::{bloch_basis_vectors, kron_vec, CVec, Mat4};
use crate::qstate::{
    bell_eigenvalues, require_physical, BellDiagonalParams, DensityMatrix, PauliAxis, StateError,
};

/// Two |c_k| closer than this are treated as tied (sudden-change locus).
pub const BOUNDARY_TOL: f64 = 1e-9;
/// Orthonormality tolerance for caller-supplied bases.
pub const BASIS_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasureError {
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Entropy(#[from] EntropyError),
    #[error("basis is not orthonormal (residual {residual:.3e})")]
    InvalidBasis { residual: f64 },
}

/// H(λ) of the Bell spectrum; λ entries may carry rounding noise.
fn spectrum_entropy(p: BellDiagonalParams) -> Result<f64, MeasureError> {
    Ok(shannon_entropy(&bell_eigenvalues(p))?)
}

/// Mutual information I = Σ λ_ab log2(4 λ_ab) = 2 − H(λ), in [0, 2].
pub fn mutual_information(p: BellDiagonalParams) -> Result<f64, MeasureError> {
    require_physical(p)?;
    Ok(2.0 - spectrum_entropy(p)?)
}

/// Classical correlation CC = K(max|c_k|), in [0, 1].
pub fn classical_correlation(p: BellDiagonalParams) -> Result<f64, MeasureError> {
    require_physical(p)?;
    Ok(cc_kernel(p.max_abs_coefficient())?)
}

/// Relative entropy of coherence in the σ_axis representation:
/// C_r = S(ρ_diag) − S(ρ) = I − K(|c_axis|).
pub fn coherence_rel(p: BellDiagonalParams, axis: PauliAxis) -> Result<f64, MeasureError> {
    require_physical(p)?;
    Ok(2.0 - spectrum_entropy(p)? - cc_kernel(p.coefficient(axis).abs())?)
}

/// Quantum discord D = I − CC, equal to C_r on the optimal axis.
pub fn quantum_discord(p: BellDiagonalParams) -> Result<f64, MeasureError> {
    require_physical(p)?;
    Ok(2.0 - spectrum_entropy(p)? - cc_kernel(p.max_abs_coefficient())?)
}

/// l1 norm of coherence in the σ_axis representation:
/// ½|x − y| + ½|x + y| over the two damped coefficients, which equals
/// the larger modulus of the pair.
pub fn coherence_l1(p: BellDiagonalParams, axis: PauliAxis) -> Result<f64, MeasureError> {
    require_physical(p)?;
    let (x, y) = match axis {
        PauliAxis::Axis3 => (p.c1, p.c2),
        PauliAxis::Axis1 => (p.c3, p.c2),
        PauliAxis::Axis2 => (p.c3, p.c1),
    };
    Ok(0.5 * (x - y).abs() + 0.5 * (x + y).abs())
}

/// The axis carrying max|c_k|; ties go to the lowest axis.
pub fn optimal_axis(p: BellDiagonalParams) -> Result<PauliAxis, MeasureError> {
    require_physical(p)?;
    let mut best = PauliAxis::Axis1;
    for axis in [PauliAxis::Axis2, PauliAxis::Axis3] {
        if p.coefficient(axis).abs() > p.coefficient(best).abs() {
            best = axis;
        }
    }
    Ok(best)
}

/// Region of the tetrahedron an optimal axis defines, with a flag for
/// the sudden-change locus where the two largest |c_k| coincide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Region {
    pub axis: PauliAxis,
    pub boundary: bool,
}

impl Region {
    /// `C1`/`C2`/`C3`, or `BOUNDARY` on the sudden-change locus.
    pub fn label(&self) -> &'static str {
        if self.boundary {
            return "BOUNDARY";
        }
        match self.axis {
            PauliAxis::Axis1 => "C1",
            PauliAxis::Axis2 => "C2",
            PauliAxis::Axis3 => "C3",
        }
    }
}

/// Classifies which |c_k| dominates and whether the state sits on the
/// boundary where the dominating axis is about to switch.
pub fn classify_region(p: BellDiagonalParams) -> Result<Region, MeasureError> {
    let axis = optimal_axis(p)?;
    let mut mags = [p.c1.abs(), p.c2.abs(), p.c3.abs()];
    mags.sort_by(f64::total_cmp);
    Ok(Region {
        axis,
        boundary: mags[2] - mags[1] < BOUNDARY_TOL,
    })
}

/// Every closed-form measure of one state, evaluated together.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureSet {
    pub mutual_information: f64,
    pub classical_correlation: f64,
    pub discord: f64,
    /// Relative entropy of coherence on axes 1, 2, 3.
    pub coherence_rel: [f64; 3],
    /// l1 coherence on axes 1, 2, 3.
    pub coherence_l1: [f64; 3],
}

impl MeasureSet {
    pub fn evaluate(p: BellDiagonalParams) -> Result<Self, MeasureError> {
        let mutual = mutual_information(p)?;
        let cc = classical_correlation(p)?;
        let mut c_rel = [0.0; 3];
        let mut c_l1 = [0.0; 3];
        for (i, axis) in PauliAxis::ALL.iter().enumerate() {
            c_rel[i] = coherence_rel(p, *axis)?;
            c_l1[i] = coherence_l1(p, *axis)?;
        }
        Ok(Self {
            mutual_information: mutual,
            classical_correlation: cc,
            discord: mutual - cc,
            coherence_rel: c_rel,
            coherence_l1: c_l1,
        })
    }

    pub fn coherence_rel_on(&self, axis: PauliAxis) -> f64 {
        self.coherence_rel[axis.index() - 1]
    }

    pub fn coherence_l1_on(&self, axis: PauliAxis) -> f64 {
        self.coherence_l1[axis.index() - 1]
    }
}

/// An orthonormal product basis of the two-qubit space, the reference
/// frame for basis-dependent coherence.
#[derive(Debug, Clone, Copy)]
pub struct ProductBasis {
    vectors: [CVec<4>; 4],
}

impl ProductBasis {
    /// |00⟩, |01⟩, |10⟩, |11⟩.
    pub fn computational() -> Self {
        Self::from_bloch_angles(0.0, 0.0, 0.0, 0.0)
    }

    /// Product basis from local Bloch angles on each qubit.
    pub fn from_bloch_angles(theta_a: f64, phi_a: f64, theta_b: f64, phi_b: f64) -> Self {
        let a = bloch_basis_vectors(theta_a, phi_a);
        let b = bloch_basis_vectors(theta_b, phi_b);
        Self::from_local_vectors(&a, &b)
    }

    /// Product basis from explicit local orthonormal pairs.
    pub fn from_local_vectors(a: &[CVec<2>; 2], b: &[CVec<2>; 2]) -> Self {
        let mut vectors = [[crate::linalg::ZERO; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                vectors[2 * i + j] = kron_vec(&a[i], &b[j]);
            }
        }
        Self { vectors }
    }

    pub fn vectors(&self) -> &[CVec<4>; 4] {
        &self.vectors
    }

    /// Largest deviation of the Gram matrix from the identity.
    pub fn orthonormality_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                let dot: crate::linalg::C64 = (0..4)
                    .map(|k| self.vectors[i][k].conj() * self.vectors[j][k])
                    .sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - crate::linalg::cr(target)).norm());
            }
        }
        worst
    }
}

/// Relative entropy of coherence of a general state in a given product
/// basis: S(ρ dephased in the basis) − S(ρ).
pub fn coherence_rel_matrix(m: &DensityMatrix, basis: &ProductBasis) -> Result<f64, MeasureError> {
    let residual = basis.orthonormality_residual();
    if residual > BASIS_TOL {
        return Err(MeasureError::InvalidBasis { residual });
    }
    let probs: Vec<f64> = basis
        .vectors()
        .iter()
        .map(|v| m.matrix().expectation(v))
        .collect();
    Ok(shannon_entropy(&probs)? - von_neumann_entropy(m.matrix())?)
}

/// l1 norm of coherence in the computational basis: the sum of moduli
/// of the off-diagonal entries.
pub fn coherence_l1_matrix(m: &DensityMatrix) -> f64 {
    m.matrix().offdiag_abs_sum()
}

/// Dephasing map: zero the off-diagonal entries in the given basis.
pub fn dephase(m: &Mat4, basis: &ProductBasis) -> Mat4 {
    let mut out = Mat4::zeros();
    for v in basis.vectors() {
        let p = m.expectation(v);
        out = out.add(&Mat4::outer(v).scale(crate::linalg::cr(p)));
    }
    out
}
