//! Decoherence trajectories and the phenomenology they carry: analytic
//! and detected transition times, frozen-coherence checks, and the
//! per-sample role assignment of coherence.
//!
//! Along a flip-channel evolution the two damped coefficients shrink as
//! e^{−2γt} while the channel-axis coefficient stays put. When the
//! largest |c_k| starts on a damped axis it crosses the constant one at
//! t̄ = ln(|c_damped(0)| / |c_const(0)|) / (2γ), and at that instant the
//! measure that coherence tracks switches between classical correlation
//! and quantum discord.

use thiserror::Error;

use crate::channels::{evolve_params, ChannelError, ChannelSpec};
use crate::entropy::cc_kernel;
use crate::measures::{MeasureError, MeasureSet};
use crate::qstate::{require_physical, BellDiagonalParams, PauliAxis, StateError};

/// A coherence curve is frozen when it never leaves its initial value
/// by more than this.
pub const FROZEN_TOL: f64 = 1e-9;
/// Frozen-family surface tolerance on |c2 + c1·c3|.
pub const FROZEN_SURFACE_TOL: f64 = 1e-12;
/// Relative factor of the sudden-change detector.
pub const KINK_FACTOR: f64 = 10.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("invalid sweep: {0}")]
    DomainError(String),
}

/// One time point of a trajectory.
#[derive(Debug, Clone, Copy)]
pub struct TrajectorySample {
    pub t: f64,
    pub params: BellDiagonalParams,
    pub measures: MeasureSet,
}

/// A time-sampled decoherence evolution with all measures evaluated.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub spec: ChannelSpec,
    pub p0: BellDiagonalParams,
    pub samples: Vec<TrajectorySample>,
}

/// Scalar observable tracked along a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrackedMeasure {
    MutualInformation,
    ClassicalCorrelation,
    Discord,
    CoherenceRel(PauliAxis),
    CoherenceL1(PauliAxis),
}

impl TrackedMeasure {
    pub fn extract(self, set: &MeasureSet) -> f64 {
        match self {
            TrackedMeasure::MutualInformation => set.mutual_information,
            TrackedMeasure::ClassicalCorrelation => set.classical_correlation,
            TrackedMeasure::Discord => set.discord,
            TrackedMeasure::CoherenceRel(axis) => set.coherence_rel_on(axis),
            TrackedMeasure::CoherenceL1(axis) => set.coherence_l1_on(axis),
        }
    }
}

impl Trajectory {
    /// Uniform grid spacing.
    pub fn step(&self) -> f64 {
        self.samples[1].t - self.samples[0].t
    }

    pub fn values(&self, measure: TrackedMeasure) -> Vec<f64> {
        self.samples
            .iter()
            .map(|s| measure.extract(&s.measures))
            .collect()
    }
}

/// Sweeps the closed-form evolution over a uniform grid of `steps + 1`
/// points covering [0, t_max], evaluating every measure per sample.
pub fn sweep_trajectory(
    p0: BellDiagonalParams,
    spec: ChannelSpec,
    t_max: f64,
    steps: usize,
) -> Result<Trajectory, DynamicsError> {
    require_physical(p0)?;
    if steps < 2 {
        return Err(DynamicsError::DomainError(format!(
            "steps must be at least 2, got {steps}"
        )));
    }
    if !t_max.is_finite() || t_max <= 0.0 {
        return Err(DynamicsError::DomainError(format!(
            "t_max must be positive and finite, got {t_max}"
        )));
    }
    let mut samples = Vec::with_capacity(steps + 1);
    for i in 0..=steps {
        let t = t_max * (i as f64 / steps as f64);
        let params = evolve_params(p0, spec, t)?;
        let measures = MeasureSet::evaluate(params)?;
        samples.push(TrajectorySample {
            t,
            params,
            measures,
        });
    }
    Ok(Trajectory { spec, p0, samples })
}

/// Whether and when the dominating |c_k| switches axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransitionOutcome {
    /// Crossing at this time.
    Time(f64),
    /// The constant axis dominates from the start; nothing crosses.
    NoCrossing,
    /// The constant coefficient is zero, so the crossing recedes to
    /// infinity and coherence tracks classical correlation forever.
    Infinite,
}

impl TransitionOutcome {
    pub fn time(self) -> Option<f64> {
        match self {
            TransitionOutcome::Time(t) => Some(t),
            _ => None,
        }
    }
}

/// Analytic transition data for one initial state and channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticTransition {
    pub outcome: TransitionOutcome,
    /// (initially dominant damped axis, constant axis) when a crossing
    /// or an infinite recession is in play.
    pub crossing: Option<(PauliAxis, PauliAxis)>,
}

/// t̄ = ln(|c_damped(0)| / |c_const(0)|) / (2γ) for the initially
/// dominant damped coefficient, with the no-crossing and infinite
/// limiting cases reported explicitly.
pub fn transition_time_analytic(
    p0: BellDiagonalParams,
    spec: ChannelSpec,
) -> Result<AnalyticTransition, DynamicsError> {
    require_physical(p0)?;
    let constant_axis = spec.kind.constant_axis();
    let c_const = p0.coefficient(constant_axis).abs();

    let mut damped_axis = None;
    let mut c_damped = f64::NEG_INFINITY;
    for axis in PauliAxis::ALL {
        if axis == constant_axis {
            continue;
        }
        let mag = p0.coefficient(axis).abs();
        if mag > c_damped {
            c_damped = mag;
            damped_axis = Some(axis);
        }
    }
    let damped_axis = damped_axis.expect("two damped axes always exist");

    if c_damped <= c_const {
        return Ok(AnalyticTransition {
            outcome: TransitionOutcome::NoCrossing,
            crossing: None,
        });
    }
    if c_const == 0.0 {
        return Ok(AnalyticTransition {
            outcome: TransitionOutcome::Infinite,
            crossing: Some((damped_axis, constant_axis)),
        });
    }
    Ok(AnalyticTransition {
        outcome: TransitionOutcome::Time((c_damped / c_const).ln() / (2.0 * spec.gamma)),
        crossing: Some((damped_axis, constant_axis)),
    })
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n == 0 {
        return 0.0;
    }
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Detects slope discontinuities of the selected measure: sample times
/// where the step-normalized second difference spikes, merged into
/// intervals and reported by their midpoints.
///
/// A sample counts as a spike when |d2| exceeds `KINK_FACTOR` times the
/// quieter of the two one-sided medians of its neighborhood (plus a
/// small absolute floor so exactly-flat curves stay silent) and is a
/// local maximum of |d2|. Comparing against the quieter side keeps the
/// detector sensitive at a kink that joins a curved branch to a
/// constant one; the local-maximum condition keeps the smooth shoulder
/// samples next to the kink from riding along on the flat side.
pub fn detect_sudden_change(traj: &Trajectory, measure: TrackedMeasure) -> Vec<f64> {
    let y = traj.values(measure);
    let n = y.len();
    if n < 5 {
        return Vec::new();
    }
    let h = traj.step();
    let scale = y.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    let floor = 1e-9 * scale / (h * h);

    // Second differences, defined on 1..n-1.
    let mut d2 = vec![0.0f64; n];
    for i in 1..n - 1 {
        d2[i] = (y[i + 1] - 2.0 * y[i] + y[i - 1]) / (h * h);
    }

    const WINDOW: usize = 5;
    let mut spike = vec![false; n];
    for i in 3..n.saturating_sub(3) {
        if d2[i].abs() < d2[i - 1].abs() || d2[i].abs() < d2[i + 1].abs() {
            continue;
        }
        // One-sided neighborhoods, excluding i±1 (a mid-interval kink
        // contaminates both adjacent stencils).
        let mut left: Vec<f64> = (i.saturating_sub(WINDOW).max(1)..=i - 2)
            .map(|j| d2[j].abs())
            .collect();
        let mut right: Vec<f64> = (i + 2..=(i + WINDOW).min(n - 2))
            .map(|j| d2[j].abs())
            .collect();
        if left.is_empty() || right.is_empty() {
            continue;
        }
        let baseline = median(&mut left).min(median(&mut right));
        if d2[i].abs() > KINK_FACTOR * (baseline + floor) {
            spike[i] = true;
        }
    }

    // Merge consecutive spikes into intervals; a trailing sentinel
    // flushes a run that reaches the end.
    let mut detections = Vec::new();
    let mut run_start: Option<usize> = None;
    for (i, &on) in spike.iter().chain(std::iter::once(&false)).enumerate() {
        match (on, run_start) {
            (true, None) => run_start = Some(i),
            (false, Some(start)) => {
                detections.push(0.5 * (traj.samples[start].t + traj.samples[i - 1].t));
                run_start = None;
            }
            _ => {}
        }
    }
    detections
}

/// Whether the initial state lies on the frozen surface of the channel.
///
/// The flip-channel frozen condition is c2(0) = −c1(0)·c3(0); it is
/// stated for the bit flip and applied verbatim to the bit-phase flip,
/// while the phase flip shows decay instead of freezing. The empirical
/// check below is the arbiter of actual constancy.
pub fn frozen_family_predicate(
    p0: BellDiagonalParams,
    kind: crate::channels::ChannelKind,
) -> Result<bool, DynamicsError> {
    require_physical(p0)?;
    Ok(match kind {
        crate::channels::ChannelKind::BitFlip | crate::channels::ChannelKind::BitPhaseFlip => {
            (p0.c2 + p0.c1 * p0.c3).abs() <= FROZEN_SURFACE_TOL
        }
        crate::channels::ChannelKind::PhaseFlip => false,
    })
}

/// Empirical constancy of a measure along a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrozenCheck {
    pub is_frozen: bool,
    pub max_deviation: f64,
}

pub fn empirical_frozen_check(traj: &Trajectory, measure: TrackedMeasure) -> FrozenCheck {
    let y = traj.values(measure);
    let max_deviation = y.iter().map(|v| (v - y[0]).abs()).fold(0.0f64, f64::max);
    FrozenCheck {
        is_frozen: max_deviation <= FROZEN_TOL,
        max_deviation,
    }
}

/// Which side of the transition a sample sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoleLabel {
    /// t < t̄: classical correlation equals the kernel of the l1
    /// coherence on the channel axis.
    Pre,
    /// t ≥ t̄: discord equals the relative-entropy coherence on the
    /// channel axis.
    Post,
}

/// One row of the role assignment audit.
#[derive(Debug, Clone, Copy)]
pub struct RoleRow {
    pub t: f64,
    pub label: RoleLabel,
    /// |CC − K(C_l1 on the channel axis)|.
    pub residual_pre: f64,
    /// |D − C_r on the channel axis|.
    pub residual_post: f64,
}

/// Per-sample role labels and branch residuals along a flip-channel
/// trajectory. Without a finite crossing every sample carries the one
/// applicable branch: `Post` when the constant axis dominates from the
/// start, `Pre` when the crossing recedes to infinity.
#[derive(Debug, Clone)]
pub struct RoleTable {
    pub transition: AnalyticTransition,
    pub rows: Vec<RoleRow>,
}

pub fn role_table(traj: &Trajectory) -> Result<RoleTable, DynamicsError> {
    let axis = traj.spec.kind.constant_axis();
    let transition = transition_time_analytic(traj.p0, traj.spec)?;
    let mut rows = Vec::with_capacity(traj.samples.len());
    for sample in &traj.samples {
        let label = match transition.outcome {
            TransitionOutcome::Time(tbar) if sample.t < tbar => RoleLabel::Pre,
            TransitionOutcome::Time(_) | TransitionOutcome::NoCrossing => RoleLabel::Post,
            TransitionOutcome::Infinite => RoleLabel::Pre,
        };
        let set = &sample.measures;
        let residual_pre = (set.classical_correlation
            - cc_kernel(set.coherence_l1_on(axis)).map_err(MeasureError::from)?)
        .abs();
        let residual_post = (set.discord - set.coherence_rel_on(axis)).abs();
        rows.push(RoleRow {
            t: sample.t,
            label,
            residual_pre,
            residual_post,
        });
    }
    Ok(RoleTable { transition, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::ChannelKind;
    use crate::qstate::sample_physical;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const TBAR: f64 = 2.5541281188299534;

    fn fig3_traj() -> Trajectory {
        let spec = ChannelSpec::new(ChannelKind::BitFlip, 0.1).unwrap();
        sweep_trajectory(BellDiagonalParams::new(0.6, -0.6, 1.0), spec, 30.0, 300).unwrap()
    }

    fn fig4_traj() -> Trajectory {
        let spec = ChannelSpec::new(ChannelKind::PhaseFlip, 0.1).unwrap();
        sweep_trajectory(BellDiagonalParams::new(1.0, -0.6, 0.6), spec, 30.0, 300).unwrap()
    }

    #[test]
    fn sweep_has_inclusive_uniform_grid() {
        let traj = fig3_traj();
        assert_eq!(traj.samples.len(), 301);
        assert_eq!(traj.samples[0].t, 0.0);
        assert_eq!(traj.samples[300].t, 30.0);
        let h = traj.step();
        for w in traj.samples.windows(2) {
            assert!(((w[1].t - w[0].t) - h).abs() < 1e-12);
        }
    }

    #[test]
    fn sweep_rejects_bad_arguments() {
        let spec = ChannelSpec::new(ChannelKind::BitFlip, 0.1).unwrap();
        let p = BellDiagonalParams::new(0.0, 0.0, 0.0);
        assert!(sweep_trajectory(p, spec, 30.0, 1).is_err());
        assert!(sweep_trajectory(p, spec, 0.0, 10).is_err());
        assert!(sweep_trajectory(BellDiagonalParams::new(1.0, 1.0, 1.0), spec, 1.0, 10).is_err());
    }

    #[test]
    fn frozen_trajectory_keeps_axis3_coherence() {
        let traj = fig3_traj();
        for s in &traj.samples {
            assert!(
                (s.measures.coherence_rel_on(PauliAxis::Axis3) - 0.2780719051126377).abs() < 1e-9,
                "t = {}",
                s.t
            );
        }
    }

    #[test]
    fn zero_state_trajectory_is_identically_zero() {
        let spec = ChannelSpec::new(ChannelKind::PhaseFlip, 0.1).unwrap();
        let traj =
            sweep_trajectory(BellDiagonalParams::new(0.0, 0.0, 0.0), spec, 30.0, 10).unwrap();
        for s in &traj.samples {
            assert_eq!(s.measures.mutual_information, 0.0);
            assert_eq!(s.measures.classical_correlation, 0.0);
            assert_eq!(s.measures.discord, 0.0);
        }
        assert!(detect_sudden_change(&traj, TrackedMeasure::ClassicalCorrelation).is_empty());
    }

    #[test]
    fn analytic_transition_examples() {
        let phase = ChannelSpec::new(ChannelKind::PhaseFlip, 0.1).unwrap();
        let t = transition_time_analytic(BellDiagonalParams::new(1.0, -0.6, 0.6), phase).unwrap();
        assert!((t.outcome.time().unwrap() - TBAR).abs() < 1e-12);
        assert_eq!(t.crossing, Some((PauliAxis::Axis1, PauliAxis::Axis3)));

        let bit = ChannelSpec::new(ChannelKind::BitFlip, 0.1).unwrap();
        let t = transition_time_analytic(BellDiagonalParams::new(0.6, -0.6, 1.0), bit).unwrap();
        assert!((t.outcome.time().unwrap() - TBAR).abs() < 1e-12);
        assert_eq!(t.crossing, Some((PauliAxis::Axis3, PauliAxis::Axis1)));

        let t = transition_time_analytic(BellDiagonalParams::new(0.3, -0.2, 0.9), phase).unwrap();
        assert_eq!(t.outcome, TransitionOutcome::NoCrossing);

        let t = transition_time_analytic(BellDiagonalParams::new(0.5, -0.5, 0.0), phase).unwrap();
        assert_eq!(t.outcome, TransitionOutcome::Infinite);
    }

    #[test]
    fn fig4_classical_correlation_kink_is_detected() {
        let traj = fig4_traj();
        let hits = detect_sudden_change(&traj, TrackedMeasure::ClassicalCorrelation);
        assert_eq!(hits.len(), 1, "expected a single detection, got {hits:?}");
        assert!(
            (hits[0] - TBAR).abs() <= traj.step(),
            "detected {} vs analytic {TBAR}",
            hits[0]
        );
    }

    #[test]
    fn frozen_curve_has_no_detections() {
        let traj = fig3_traj();
        let hits = detect_sudden_change(&traj, TrackedMeasure::CoherenceRel(PauliAxis::Axis3));
        assert!(hits.is_empty(), "{hits:?}");
    }

    #[test]
    fn frozen_family_predicate_examples() {
        assert!(frozen_family_predicate(
            BellDiagonalParams::new(0.6, -0.6, 1.0),
            ChannelKind::BitFlip
        )
        .unwrap());
        assert!(!frozen_family_predicate(
            BellDiagonalParams::new(1.0, -0.6, 0.6),
            ChannelKind::PhaseFlip
        )
        .unwrap());
        assert!(frozen_family_predicate(
            BellDiagonalParams::new(0.0, 0.0, 0.0),
            ChannelKind::BitFlip
        )
        .unwrap());
    }

    #[test]
    fn empirical_frozen_check_examples() {
        let check =
            empirical_frozen_check(&fig3_traj(), TrackedMeasure::CoherenceRel(PauliAxis::Axis3));
        assert!(check.is_frozen);
        assert!(check.max_deviation < 1e-9);

        let check =
            empirical_frozen_check(&fig4_traj(), TrackedMeasure::CoherenceRel(PauliAxis::Axis3));
        assert!(!check.is_frozen);

        let spec = ChannelSpec::new(ChannelKind::BitFlip, 0.1).unwrap();
        let zero =
            sweep_trajectory(BellDiagonalParams::new(0.0, 0.0, 0.0), spec, 30.0, 50).unwrap();
        let check = empirical_frozen_check(&zero, TrackedMeasure::CoherenceRel(PauliAxis::Axis3));
        assert!(check.is_frozen);
        assert_eq!(check.max_deviation, 0.0);
    }

    #[test]
    fn role_table_fig4() {
        let traj = fig4_traj();
        let table = role_table(&traj).unwrap();
        assert!((table.transition.outcome.time().unwrap() - TBAR).abs() < 1e-12);

        let first = &table.rows[0];
        assert_eq!(first.label, RoleLabel::Pre);
        assert!(first.residual_pre < 1e-12);

        let at_ten = table
            .rows
            .iter()
            .find(|r| (r.t - 10.0).abs() < 1e-9)
            .unwrap();
        assert_eq!(at_ten.label, RoleLabel::Post);
        assert!(at_ten.residual_post < 1e-12);

        // One branch holds at every sample.
        for row in &table.rows {
            assert!(
                row.residual_pre.min(row.residual_post) <= 1e-10,
                "t = {}",
                row.t
            );
        }
    }

    #[test]
    fn role_table_without_crossing_is_all_post() {
        let spec = ChannelSpec::new(ChannelKind::PhaseFlip, 0.1).unwrap();
        let traj =
            sweep_trajectory(BellDiagonalParams::new(0.3, -0.2, 0.9), spec, 30.0, 100).unwrap();
        let table = role_table(&traj).unwrap();
        assert_eq!(table.transition.outcome, TransitionOutcome::NoCrossing);
        for row in &table.rows {
            assert_eq!(row.label, RoleLabel::Post);
            assert!(row.residual_post < 1e-10);
        }
    }

    #[test]
    fn role_table_with_infinite_transition_is_all_pre() {
        let spec = ChannelSpec::new(ChannelKind::PhaseFlip, 0.1).unwrap();
        let traj =
            sweep_trajectory(BellDiagonalParams::new(0.5, -0.5, 0.0), spec, 30.0, 100).unwrap();
        let table = role_table(&traj).unwrap();
        assert_eq!(table.transition.outcome, TransitionOutcome::Infinite);
        for row in &table.rows {
            assert_eq!(row.label, RoleLabel::Pre);
            assert!(row.residual_pre < 1e-10);
        }
    }

    #[test]
    fn transition_detection_tracks_analytic_time() {
        // Random states with a clear crossing; near-tangent crossings
        // (degenerate kink angle) are skipped because the slope jump
        // they produce vanishes.
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let mut tested = 0;
        while tested < 20 {
            let p0 = sample_physical(&mut rng);
            let kind = ChannelKind::ALL[rng.gen_range(0..3)];
            let spec = ChannelSpec::new(kind, rng.gen_range(0.05..0.5)).unwrap();
            let analytic = transition_time_analytic(p0, spec).unwrap();
            let Some(tbar) = analytic.outcome.time() else {
                continue;
            };
            let c_const = p0.coefficient(spec.kind.constant_axis()).abs();
            let (damped_axis, _) = analytic.crossing.unwrap();
            let c_damped = p0.coefficient(damped_axis).abs();
            if c_const < 0.1 || c_damped / c_const < 1.2 {
                continue;
            }
            let traj = sweep_trajectory(p0, spec, 4.0 * tbar, 300).unwrap();
            let hits = detect_sudden_change(&traj, TrackedMeasure::ClassicalCorrelation);
            assert!(
                hits.iter().any(|t| (t - tbar).abs() <= traj.step()),
                "no detection near {tbar} for {p0:?} {kind:?}: {hits:?}"
            );
            tested += 1;
        }
    }

    #[test]
    fn frozen_surface_states_stay_frozen() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        let spec = ChannelSpec::new(ChannelKind::BitFlip, 0.1).unwrap();
        let mut tested = 0;
        while tested < 50 {
            let c1: f64 = rng.gen_range(-1.0..1.0);
            let c3: f64 = rng.gen_range(-1.0..1.0);
            let p0 = BellDiagonalParams::new(c1, -c1 * c3, c3);
            if !crate::qstate::is_physical(p0) {
                continue;
            }
            let traj = sweep_trajectory(p0, spec, 30.0, 100).unwrap();
            let check =
                empirical_frozen_check(&traj, TrackedMeasure::CoherenceRel(PauliAxis::Axis3));
            assert!(
                check.max_deviation < 1e-9,
                "{p0:?} deviates by {}",
                check.max_deviation
            );
            tested += 1;
        }
    }

    #[test]
    fn complementarity_and_monotone_decay_along_trajectories() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let spec = ChannelSpec::new(ChannelKind::PhaseFlip, 0.2).unwrap();
        for _ in 0..20 {
            let p0 = sample_physical(&mut rng);
            let traj = sweep_trajectory(p0, spec, 20.0, 100).unwrap();
            let mut prev_mi = f64::INFINITY;
            for s in &traj.samples {
                let m = &s.measures;
                assert!((m.mutual_information - m.classical_correlation - m.discord).abs() < 1e-12);
                assert!(m.mutual_information <= prev_mi + 1e-12);
                prev_mi = m.mutual_information;
            }
        }
    }
}
