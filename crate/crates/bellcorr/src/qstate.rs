//! Bell-diagonal states and two-qubit density matrices.
//!
//! A Bell-diagonal state is fixed by three correlation coefficients
//! (c1, c2, c3); it is physical exactly when the four eigenvalues
//! λ_ab = [1 + (-1)^a c1 - (-1)^(a+b) c2 + (-1)^b c3] / 4 are all
//! nonnegative, which carves the tetrahedron spanned by the four Bell
//! states out of the parameter cube. This module converts between the
//! coefficient form and explicit 4×4 density matrices in each of the
//! three Pauli eigenbasis representations.

use rand::Rng;
use thiserror::Error;

use crate::linalg::{
    cr, hermitian_eigenvalues, kron, partial_trace_a, partial_trace_b, pauli, Mat2, Mat4,
};

/// Eigenvalues this slightly negative are treated as rounding noise.
pub const PHYSICALITY_TOL: f64 = 1e-12;
/// A matrix reconstructs as Bell-diagonal when the residual is below this.
pub const BELL_DIAGONAL_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("state outside tetrahedron: ({c1}, {c2}, {c3}) has a negative eigenvalue")]
    NonPhysicalState { c1: f64, c2: f64, c3: f64 },
    #[error("matrix is not Bell-diagonal (residual {residual:.3e})")]
    NotBellDiagonal { residual: f64 },
    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),
}

/// Which Pauli eigenbasis representation a basis-dependent quantity
/// refers to. The ordering `Axis1 < Axis2 < Axis3` breaks ties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PauliAxis {
    Axis1,
    Axis2,
    Axis3,
}

impl PauliAxis {
    pub const ALL: [PauliAxis; 3] = [PauliAxis::Axis1, PauliAxis::Axis2, PauliAxis::Axis3];

    /// 1-based index (1, 2 or 3), matching the σ subscript.
    pub fn index(self) -> usize {
        match self {
            PauliAxis::Axis1 => 1,
            PauliAxis::Axis2 => 2,
            PauliAxis::Axis3 => 3,
        }
    }

    pub fn from_index(index: usize) -> Option<Self> {
        match index {
            1 => Some(PauliAxis::Axis1),
            2 => Some(PauliAxis::Axis2),
            3 => Some(PauliAxis::Axis3),
            _ => None,
        }
    }
}

/// The (c1, c2, c3) coefficient triple of a Bell-diagonal state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDiagonalParams {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl BellDiagonalParams {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Self {
        Self { c1, c2, c3 }
    }

    /// Coefficient on the given axis.
    pub fn coefficient(&self, axis: PauliAxis) -> f64 {
        match axis {
            PauliAxis::Axis1 => self.c1,
            PauliAxis::Axis2 => self.c2,
            PauliAxis::Axis3 => self.c3,
        }
    }

    /// max{|c1|, |c2|, |c3|}.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.c1.abs().max(self.c2.abs()).max(self.c3.abs())
    }
}

/// The four Bell-state eigenvalues (λ00, λ01, λ10, λ11).
///
/// Defined for any parameter triple; physicality is the caller's check.
pub fn bell_eigenvalues(p: BellDiagonalParams) -> [f64; 4] {
    let mut out = [0.0; 4];
    for a in 0..2 {
        for b in 0..2 {
            let sa = if a == 0 { 1.0 } else { -1.0 };
            let sab = if (a + b) % 2 == 0 { 1.0 } else { -1.0 };
            let sb = if b == 0 { 1.0 } else { -1.0 };
            out[2 * a + b] = (1.0 + sa * p.c1 - sab * p.c2 + sb * p.c3) / 4.0;
        }
    }
    out
}

/// Membership in the tetrahedron of physical states, up to rounding slack.
pub fn is_physical(p: BellDiagonalParams) -> bool {
    bell_eigenvalues(p)
        .iter()
        .all(|&lam| lam >= -PHYSICALITY_TOL)
}

pub(crate) fn require_physical(p: BellDiagonalParams) -> Result<(), StateError> {
    if is_physical(p) {
        Ok(())
    } else {
        Err(StateError::NonPhysicalState {
            c1: p.c1,
            c2: p.c2,
            c3: p.c3,
        })
    }
}

/// A validated two-qubit density matrix (basis |00⟩,|01⟩,|10⟩,|11⟩).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    matrix: Mat4,
}

impl DensityMatrix {
    pub const HERMITICITY_TOL: f64 = 1e-12;
    pub const TRACE_TOL: f64 = 1e-12;
    pub const EIGENVALUE_TOL: f64 = 1e-10;

    /// Validates Hermiticity, unit trace and positive semidefiniteness
    /// (each up to the documented tolerance) before accepting the matrix.
    pub fn new(matrix: Mat4) -> Result<Self, StateError> {
        let herm = matrix.hermiticity_residual();
        if herm > Self::HERMITICITY_TOL {
            return Err(StateError::InvalidDensityMatrix(format!(
                "not Hermitian (residual {herm:.3e})"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > Self::TRACE_TOL || tr.im.abs() > Self::TRACE_TOL {
            return Err(StateError::InvalidDensityMatrix(format!(
                "trace is {} instead of 1",
                tr.re
            )));
        }
        let eigs = hermitian_eigenvalues(&matrix).ok_or_else(|| {
            StateError::InvalidDensityMatrix("eigensolver did not converge".into())
        })?;
        if eigs[0] < -Self::EIGENVALUE_TOL {
            return Err(StateError::InvalidDensityMatrix(format!(
                "negative eigenvalue {:.3e}",
                eigs[0]
            )));
        }
        Ok(Self { matrix })
    }

    /// Pure state |v⟩⟨v| from a normalized vector.
    pub fn from_pure(v: &[num_complex::Complex64; 4]) -> Result<Self, StateError> {
        Self::new(Mat4::outer(v))
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.matrix
    }

    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        // Construction already proved convergence.
        hermitian_eigenvalues(&self.matrix).expect("validated matrix must diagonalize")
    }
}

/// The σ3 (computational), σ1 and σ2 eigenbasis representations of a
/// Bell-diagonal state, as explicit real matrices.
pub fn to_density_matrix(
    p: BellDiagonalParams,
    axis: PauliAxis,
) -> Result<DensityMatrix, StateError> {
    require_physical(p)?;
    let (d, corner, middle) = match axis {
        // diag 1±c3, corners (c1-c2)/4, middle (c1+c2)/4
        PauliAxis::Axis3 => (p.c3, p.c1 - p.c2, p.c1 + p.c2),
        // diag 1±c1, corners (c3-c2)/4, middle (c3+c2)/4
        PauliAxis::Axis1 => (p.c1, p.c3 - p.c2, p.c3 + p.c2),
        // diag 1±c2, corners (c3-c1)/4, middle (c1+c3)/4
        PauliAxis::Axis2 => (p.c2, p.c3 - p.c1, p.c1 + p.c3),
    };
    let m = Mat4::from_real_rows([
        [(1.0 + d) / 4.0, 0.0, 0.0, corner / 4.0],
        [0.0, (1.0 - d) / 4.0, middle / 4.0, 0.0],
        [0.0, middle / 4.0, (1.0 - d) / 4.0, 0.0],
        [corner / 4.0, 0.0, 0.0, (1.0 + d) / 4.0],
    ]);
    DensityMatrix::new(m)
}

/// Result of projecting a density matrix onto the Bell-diagonal family.
#[derive(Debug, Clone, Copy)]
pub struct BellProjection {
    /// c_j = Tr[ρ (σ_j ⊗ σ_j)].
    pub params: BellDiagonalParams,
    /// Largest entrywise distance between ρ and the reconstructed
    /// Bell-diagonal matrix in the σ3 representation.
    pub residual: f64,
}

impl BellProjection {
    pub fn is_bell_diagonal(&self) -> bool {
        self.residual <= BELL_DIAGONAL_TOL
    }
}

/// Extracts (c1, c2, c3) and reports how far the matrix is from the
/// Bell-diagonal family.
pub fn from_density_matrix(m: &DensityMatrix) -> BellProjection {
    let mut cs = [0.0f64; 3];
    for (slot, j) in cs.iter_mut().zip(1..=3) {
        let sigma = pauli(j);
        *slot = m.matrix().matmul(&kron(&sigma, &sigma)).trace().re;
    }
    let params = BellDiagonalParams::new(cs[0], cs[1], cs[2]);
    // The reconstruction may be slightly unphysical for inputs far from
    // the family; build the matrix directly instead of via the validated
    // constructor so the residual is always defined.
    let rebuilt = Mat4::from_real_rows([
        [
            (1.0 + params.c3) / 4.0,
            0.0,
            0.0,
            (params.c1 - params.c2) / 4.0,
        ],
        [
            0.0,
            (1.0 - params.c3) / 4.0,
            (params.c1 + params.c2) / 4.0,
            0.0,
        ],
        [
            0.0,
            (params.c1 + params.c2) / 4.0,
            (1.0 - params.c3) / 4.0,
            0.0,
        ],
        [
            (params.c1 - params.c2) / 4.0,
            0.0,
            0.0,
            (1.0 + params.c3) / 4.0,
        ],
    ]);
    BellProjection {
        params,
        residual: m.matrix().max_abs_diff(&rebuilt),
    }
}

/// Strict variant: fails with `NotBellDiagonal` unless the matrix lies
/// in the family within `BELL_DIAGONAL_TOL`.
pub fn bell_params_exact(m: &DensityMatrix) -> Result<BellDiagonalParams, StateError> {
    let proj = from_density_matrix(m);
    if proj.is_bell_diagonal() {
        Ok(proj.params)
    } else {
        Err(StateError::NotBellDiagonal {
            residual: proj.residual,
        })
    }
}

/// One of the two qubits of the pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Reduced state of the chosen qubit (partial trace over the other one).
pub fn reduced_state(m: &DensityMatrix, subsystem: Subsystem) -> Mat2 {
    match subsystem {
        Subsystem::A => partial_trace_b(m.matrix()),
        Subsystem::B => partial_trace_a(m.matrix()),
    }
}

/// Uniform sample from the physical tetrahedron by rejection from the
/// parameter cube (acceptance rate 1/3).
pub fn sample_physical<R: Rng + ?Sized>(rng: &mut R) -> BellDiagonalParams {
    loop {
        let p = BellDiagonalParams::new(
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
        );
        if is_physical(p) {
            return p;
        }
    }
}

/// |β_ab⟩ = (|0,b⟩ + (-1)^a |1, 1⊕b⟩)/√2.
pub fn bell_state_vector(a: usize, b: usize) -> [num_complex::Complex64; 4] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let sign = if a == 0 { s } else { -s };
    let mut v = [cr(0.0); 4];
    v[b] = cr(s); // |0,b⟩
    v[2 + (1 - b)] = cr(sign); // |1, 1⊕b⟩
    v
}
