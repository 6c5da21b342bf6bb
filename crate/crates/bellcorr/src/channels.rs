//! Pauli flip channels applied symmetrically to both qubits, together
//! with the equivalent closed-form evolution of the Bell-diagonal
//! coefficients.
//!
//! A single-qubit flip channel with elements √(1−q/2)·I and √(q/2)·σ
//! multiplies the two transverse Pauli components by (1−q) and leaves
//! the component along σ alone. Applying it to both qubits squares the
//! factor, so with q(t) = 1 − e^{−γt} the damped coefficients decay as
//! e^{−2γt} while the coefficient on the channel axis stays constant.
//! The closed forms are the ground truth; the Kraus route at q(t) must
//! reproduce them exactly and is cross-checked in the tests.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::linalg::{cr, kron, pauli, Mat2, Mat4};
use crate::qstate::{require_physical, BellDiagonalParams, DensityMatrix, PauliAxis, StateError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChannelError {
    #[error("noise strength {0} outside [0, 1]")]
    DomainError(f64),
    #[error("negative time {0}")]
    NegativeTime(f64),
    #[error("damping rate must be positive, got {0}")]
    NonPositiveRate(f64),
    #[error("unknown channel `{0}` (expected bitflip, phaseflip or bitphaseflip)")]
    UnknownChannel(String),
    #[error(transparent)]
    State(#[from] StateError),
}

/// The three Pauli flip channels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    /// σ1 flips: |0⟩ ↔ |1⟩.
    BitFlip,
    /// σ3 flips: the relative phase.
    PhaseFlip,
    /// σ2 flips: both at once.
    BitPhaseFlip,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 3] = [
        ChannelKind::BitFlip,
        ChannelKind::PhaseFlip,
        ChannelKind::BitPhaseFlip,
    ];

    /// The Pauli operator appearing in the Kraus elements.
    pub fn pauli_matrix(self) -> Mat2 {
        pauli(self.constant_axis().index())
    }

    /// The axis whose coefficient the channel leaves untouched.
    pub fn constant_axis(self) -> PauliAxis {
        match self {
            ChannelKind::BitFlip => PauliAxis::Axis1,
            ChannelKind::BitPhaseFlip => PauliAxis::Axis2,
            ChannelKind::PhaseFlip => PauliAxis::Axis3,
        }
    }

    /// The wire name used by the CLI and file formats.
    pub fn name(self) -> &'static str {
        match self {
            ChannelKind::BitFlip => "bitflip",
            ChannelKind::PhaseFlip => "phaseflip",
            ChannelKind::BitPhaseFlip => "bitphaseflip",
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChannelKind {
    type Err = ChannelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bitflip" => Ok(ChannelKind::BitFlip),
            "phaseflip" => Ok(ChannelKind::PhaseFlip),
            "bitphaseflip" => Ok(ChannelKind::BitPhaseFlip),
            other => Err(ChannelError::UnknownChannel(other.to_string())),
        }
    }
}

/// A flip channel with its damping rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    pub kind: ChannelKind,
    pub gamma: f64,
}

impl ChannelSpec {
    pub fn new(kind: ChannelKind, gamma: f64) -> Result<Self, ChannelError> {
        if gamma > 0.0 {
            Ok(Self { kind, gamma })
        } else {
            Err(ChannelError::NonPositiveRate(gamma))
        }
    }
}

/// Noise strength q(t) = 1 − e^{−γt}, chosen so that the two-qubit
/// application damps the transverse coefficients by exactly e^{−2γt}.
pub fn noise_strength(gamma: f64, t: f64) -> Result<f64, ChannelError> {
    if t < 0.0 {
        return Err(ChannelError::NegativeTime(t));
    }
    Ok(1.0 - (-gamma * t).exp())
}

/// Kraus elements (√(1−q/2)·I, √(q/2)·σ) of a single-qubit flip channel.
pub fn kraus_operators(kind: ChannelKind, q: f64) -> Result<(Mat2, Mat2), ChannelError> {
    if !(0.0..=1.0).contains(&q) {
        return Err(ChannelError::DomainError(q));
    }
    let k0 = Mat2::identity().scale(cr((1.0 - q / 2.0).sqrt()));
    let k1 = kind.pauli_matrix().scale(cr((q / 2.0).sqrt()));
    Ok((k0, k1))
}

/// Applies the channel to one qubit only: Σ_i (K_i ⊗ I) ρ (K_i ⊗ I)†
/// (or the mirrored form for qubit B). Internal stepping stone for the
/// symmetric application below.
pub(crate) fn apply_channel_one(
    m: &Mat4,
    kind: ChannelKind,
    q: f64,
    subsystem: crate::qstate::Subsystem,
) -> Result<Mat4, ChannelError> {
    let (k0, k1) = kraus_operators(kind, q)?;
    let eye = Mat2::identity();
    let mut out = Mat4::zeros();
    for k in [k0, k1] {
        let big = match subsystem {
            crate::qstate::Subsystem::A => kron(&k, &eye),
            crate::qstate::Subsystem::B => kron(&eye, &k),
        };
        out = out.add(&big.matmul(m).matmul(&big.dagger()));
    }
    Ok(out)
}

/// Applies the same flip channel to both qubits:
/// Σ_{ij} (K_i ⊗ K_j) ρ (K_i ⊗ K_j)†. The tensor sum factorizes into
/// the one-sided map applied to A and then to B.
pub fn apply_channel_both(
    m: &DensityMatrix,
    kind: ChannelKind,
    q: f64,
) -> Result<DensityMatrix, ChannelError> {
    let after_a = apply_channel_one(m.matrix(), kind, q, crate::qstate::Subsystem::A)?;
    let after_b = apply_channel_one(&after_a, kind, q, crate::qstate::Subsystem::B)?;
    Ok(DensityMatrix::new(after_b)?)
}

/// Closed-form coefficient evolution: the coefficient on the channel
/// axis is constant, the other two decay as e^{−2γt}.
pub fn evolve_params(
    p0: BellDiagonalParams,
    spec: ChannelSpec,
    t: f64,
) -> Result<BellDiagonalParams, ChannelError> {
    require_physical(p0)?;
    if t < 0.0 {
        return Err(ChannelError::NegativeTime(t));
    }
    let decay = (-2.0 * spec.gamma * t).exp();
    let keep = spec.kind.constant_axis();
    let factor = |axis: PauliAxis| if axis == keep { 1.0 } else { decay };
    Ok(BellDiagonalParams::new(
        p0.c1 * factor(PauliAxis::Axis1),
        p0.c2 * factor(PauliAxis::Axis2),
        p0.c3 * factor(PauliAxis::Axis3),
    ))
}
