//! Quantum discord, classical correlation, mutual information and
//! coherence for two-qubit states, with decoherence dynamics under the
//! Pauli flip channels.
//!
//! The closed forms cover Bell-diagonal states, the three-parameter
//! family with maximally mixed marginals whose physical region is a
//! tetrahedron with the Bell states at its vertices. For those states
//! the measures collapse to expressions in the spectrum and the largest
//! correlation coefficient, discord coincides with the relative entropy
//! of coherence in the optimal Pauli basis, and the flip channels move
//! states on straight lines inside the tetrahedron, producing frozen
//! coherence and sudden transitions at an analytic time t̄. General
//! states are handled numerically by grid search over projective
//! measurement bases.
//!
//! Modules:
//!
//! * [`qstate`] — Bell-diagonal parameters, density matrices, partial
//!   traces and physicality checks.
//! * [`entropy`] — Shannon/von Neumann/relative entropy and the
//!   classical-correlation kernel, all in bits.
//! * [`measures`] — closed-form measures, optimal axis and region
//!   classification, basis-dependent coherence of general matrices.
//! * [`oracle`] — brute-force discord (one-side, two-side, relative
//!   entropy) and the two discord/coherence identity checks.
//! * [`channels`] — Kraus operators of the flip channels and the
//!   closed-form coefficient evolution.
//! * [`dynamics`] — trajectory sweeps, transition times, sudden-change
//!   detection, frozen-coherence checks and the role table.
//! * [`cli`] — the `bellcorr` binary: deterministic CSV/JSON emission.
//!
//! The `examples/` directory walks through each capability; start with
//! `closed_form_measures` and `frozen_coherence`.

pub mod channels;
pub mod cli;
pub mod dynamics;
pub mod entropy;
pub mod linalg;
pub mod measures;
pub mod oracle;
pub mod qstate;

pub use channels::{
    apply_channel_both, evolve_params, kraus_operators, noise_strength, ChannelKind, ChannelSpec,
};
pub use dynamics::{
    detect_sudden_change, empirical_frozen_check, frozen_family_predicate, role_table,
    sweep_trajectory, transition_time_analytic, TrackedMeasure, Trajectory, TransitionOutcome,
};
pub use entropy::{cc_kernel, relative_entropy, shannon_entropy, von_neumann_entropy};
pub use measures::{
    classical_correlation, classify_region, coherence_l1, coherence_l1_matrix, coherence_rel,
    coherence_rel_matrix, mutual_information, optimal_axis, quantum_discord, MeasureSet,
    ProductBasis, Region,
};
pub use oracle::{
    conditional_entropy, discord_one_side, discord_relative_entropy, discord_two_side,
    verify_theorem1, verify_theorem2, GridSpec, OptimizationResult, QubitMeasurementBasis,
};
pub use qstate::{
    bell_eigenvalues, from_density_matrix, is_physical, reduced_state, sample_physical,
    to_density_matrix, BellDiagonalParams, DensityMatrix, PauliAxis, Subsystem,
};
