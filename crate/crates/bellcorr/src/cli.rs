//! Command-line surface: deterministic text, CSV and JSON emission over
//! the library functions.
//!
//! Exit codes are part of the contract: 0 on success, 2 for any input
//! problem, 3 for output I/O failures. Numbers are printed with 12
//! significant digits, enough to round-trip doubles for golden-file
//! comparison without locking in the last bits of rounding noise.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::channels::{ChannelKind, ChannelSpec};
use crate::dynamics::{
    detect_sudden_change, role_table, sweep_trajectory, transition_time_analytic, RoleLabel,
    TrackedMeasure, Trajectory, TransitionOutcome,
};
use crate::linalg::{c, Mat4, C64};
use crate::measures::{classify_region, optimal_axis, MeasureSet};
use crate::oracle::{
    discord_one_side, discord_relative_entropy, discord_two_side, verify_theorem1, verify_theorem2,
    GridSpec,
};
use crate::qstate::{
    from_density_matrix, sample_physical, BellDiagonalParams, DensityMatrix, PauliAxis,
};

/// Exact CSV header of trajectory emission.
pub const CSV_HEADER: &str = "t,c1,c2,c3,mutual_info,classical_corr,discord,coherence_rel_1,coherence_rel_2,coherence_rel_3,coherence_l1_1,coherence_l1_2,coherence_l1_3,optimal_axis,region";

/// Additivity slack re-checked on emitted (formatted) rows.
pub const SELF_CHECK_TOL: f64 = 1e-10;

#[derive(Debug)]
pub enum CliError {
    /// Bad user input: exit code 2.
    Input(String),
    /// Output failure: exit code 3.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) | CliError::Io(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "bellcorr",
    about = "Quantum discord, classical correlation and coherence for two-qubit Bell-diagonal states",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print every closed-form measure of one Bell-diagonal state.
    Measure {
        /// State literal `c1,c2,c3`, e.g. `0.6,-0.6,1`.
        #[arg(long)]
        state: String,
        /// Restrict the text report to one coherence axis (1, 2 or 3).
        #[arg(long)]
        axis: Option<usize>,
        /// Output format: text, csv or json.
        #[arg(long, default_value = "text")]
        format: String,
        /// Write to this file instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Sweep a decoherence trajectory and emit one row per time sample.
    Evolve {
        #[arg(long)]
        state: String,
        /// Channel name: bitflip, phaseflip or bitphaseflip.
        #[arg(long)]
        channel: String,
        /// Damping rate γ (positive).
        #[arg(long)]
        gamma: f64,
        /// End of the time grid.
        #[arg(long)]
        t_max: f64,
        /// Number of grid intervals; the sweep emits steps+1 rows.
        #[arg(long)]
        steps: usize,
        /// Output format: csv or json.
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Re-validate the emitted rows (I = CC + D) before exiting.
        #[arg(long)]
        self_check: bool,
    },
    /// Report the analytic transition time and the detected kink.
    Transition {
        #[arg(long)]
        state: String,
        #[arg(long)]
        channel: String,
        #[arg(long)]
        gamma: f64,
        /// Sweep resolution used for detection.
        #[arg(long, default_value_t = 300)]
        steps: usize,
        /// Output format: text or json.
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Numerical discord (one-side, two-side, relative-entropy) by grid
    /// search over projective measurement bases.
    OracleDiscord {
        /// State literal `c1,c2,c3` (Bell-diagonal input).
        #[arg(long, conflicts_with = "matrix")]
        state: Option<String>,
        /// Density-matrix file: 4 lines of 4 complex entries like `0.25+0j`.
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// θ resolution of the one-side search.
        #[arg(long, default_value_t = 64)]
        grid_theta: usize,
        /// φ resolution of the one-side search.
        #[arg(long, default_value_t = 64)]
        grid_phi: usize,
        /// Local refinement rounds for every search.
        #[arg(long, default_value_t = 3)]
        refine: usize,
        /// Output format: text or json.
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check the discord/coherence identities on a state.
    VerifyTheorems {
        #[arg(long, conflicts_with = "matrix")]
        state: Option<String>,
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        refine: usize,
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Regenerate the reference data sets as CSV files.
    Reproduce {
        /// One of: fig3, fig4, table1, table2.
        target: String,
        /// Directory the CSV file is written into.
        #[arg(long, default_value = ".")]
        output: PathBuf,
        /// Seed of the randomized audit (table1).
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        self_check: bool,
    },
}

/// Formats with 12 significant digits in plain decimal notation.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Parses the `c1,c2,c3` state literal.
pub fn parse_state_literal(text: &str) -> Result<BellDiagonalParams, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::Input(format!(
            "invalid state literal `{text}`: expected c1,c2,c3"
        )));
    }
    let mut values = [0.0f64; 3];
    for (slot, part) in values.iter_mut().zip(&parts) {
        *slot = f64::from_str(part.trim()).map_err(|_| {
            CliError::Input(format!(
                "invalid state literal `{text}`: bad number `{part}`"
            ))
        })?;
    }
    Ok(BellDiagonalParams::new(values[0], values[1], values[2]))
}

/// Parses one complex entry of the matrix file format, `re+imj`.
pub fn parse_complex(token: &str) -> Result<C64, CliError> {
    let s = token.trim();
    let bad = || CliError::Input(format!("invalid complex entry `{token}`"));
    let Some(rest) = s.strip_suffix('j') else {
        return f64::from_str(s).map(|re| c(re, 0.0)).map_err(|_| bad());
    };
    let bytes = rest.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        let ch = bytes[i] as char;
        if (ch == '+' || ch == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
            split = Some(i);
            break;
        }
    }
    match split {
        Some(i) => {
            let re = f64::from_str(&rest[..i]).map_err(|_| bad())?;
            let im = match &rest[i..] {
                "+" => 1.0,
                "-" => -1.0,
                im_str => f64::from_str(im_str).map_err(|_| bad())?,
            };
            Ok(c(re, im))
        }
        None => {
            let im = match rest {
                "" | "+" => 1.0,
                "-" => -1.0,
                im_str => f64::from_str(im_str).map_err(|_| bad())?,
            };
            Ok(c(0.0, im))
        }
    }
}

/// Parses and validates a density-matrix file: 4 lines of 4 complex
/// entries in the computational basis.
pub fn parse_matrix_text(text: &str) -> Result<DensityMatrix, CliError> {
    let rows: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    if rows.len() != 4 {
        return Err(CliError::Input(format!(
            "matrix file must have 4 non-empty lines, found {}",
            rows.len()
        )));
    }
    let mut m = Mat4::zeros();
    for (i, row) in rows.iter().enumerate() {
        let entries: Vec<&str> = row.split_whitespace().collect();
        if entries.len() != 4 {
            return Err(CliError::Input(format!(
                "matrix row {} must have 4 entries, found {}",
                i + 1,
                entries.len()
            )));
        }
        for (j, tok) in entries.iter().enumerate() {
            m.set(i, j, parse_complex(tok)?);
        }
    }
    DensityMatrix::new(m).map_err(|e| CliError::Input(format!("invalid matrix: {e}")))
}

fn load_matrix(path: &Path) -> Result<DensityMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix_text(&text)
}

fn parse_channel(name: &str) -> Result<ChannelKind, CliError> {
    name.parse().map_err(input_err)
}

fn parse_physical_state(text: &str) -> Result<BellDiagonalParams, CliError> {
    let p = parse_state_literal(text)?;
    crate::qstate::require_physical(p).map_err(input_err)?;
    Ok(p)
}

fn channel_spec(kind: ChannelKind, gamma: f64) -> Result<ChannelSpec, CliError> {
    ChannelSpec::new(kind, gamma).map_err(input_err)
}

/// One rendered output row of a trajectory, already formatted.
struct Row {
    fields: Vec<String>,
}

fn trajectory_rows(traj: &Trajectory) -> Vec<Row> {
    traj.samples
        .iter()
        .map(|s| {
            let m = &s.measures;
            let axis = optimal_axis(s.params).expect("trajectory samples are physical");
            let region = classify_region(s.params).expect("trajectory samples are physical");
            let fields = vec![
                fmt_sig(s.t),
                fmt_sig(s.params.c1),
                fmt_sig(s.params.c2),
                fmt_sig(s.params.c3),
                fmt_sig(m.mutual_information),
                fmt_sig(m.classical_correlation),
                fmt_sig(m.discord),
                fmt_sig(m.coherence_rel[0]),
                fmt_sig(m.coherence_rel[1]),
                fmt_sig(m.coherence_rel[2]),
                fmt_sig(m.coherence_l1[0]),
                fmt_sig(m.coherence_l1[1]),
                fmt_sig(m.coherence_l1[2]),
                axis.index().to_string(),
                region.label().to_string(),
            ];
            Row { fields }
        })
        .collect()
}

/// Renders the exact CSV stream for a trajectory.
pub fn render_trajectory_csv(traj: &Trajectory) -> String {
    let mut out = String::with_capacity(64 * (traj.samples.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in trajectory_rows(traj) {
        out.push_str(&row.fields.join(","));
        out.push('\n');
    }
    out
}

/// Renders the trajectory as a JSON array with the CSV columns as keys.
pub fn render_trajectory_json(traj: &Trajectory) -> String {
    let keys: Vec<&str> = CSV_HEADER.split(',').collect();
    let mut out = String::from("[\n");
    let rows = trajectory_rows(traj);
    for (i, row) in rows.iter().enumerate() {
        out.push_str("  {");
        for (k, (key, value)) in keys.iter().zip(&row.fields).enumerate() {
            if k > 0 {
                out.push(',');
            }
            // region is the only non-numeric column.
            if *key == "region" {
                let _ = write!(out, "\"{key}\":\"{value}\"");
            } else {
                let _ = write!(out, "\"{key}\":{value}");
            }
        }
        out.push('}');
        if i + 1 < rows.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("]\n");
    out
}

/// Re-validates formatted rows: parsed mutual_info must equal
/// classical_corr + discord within `SELF_CHECK_TOL`.
fn self_check_trajectory(traj: &Trajectory) -> Result<(), CliError> {
    for row in trajectory_rows(traj) {
        let get = |i: usize| -> f64 { row.fields[i].parse().expect("rows are formatted floats") };
        let (mi, cc, d) = (get(4), get(5), get(6));
        if (mi - (cc + d)).abs() > SELF_CHECK_TOL {
            return Err(CliError::Io(format!(
                "self-check failed at t={}: mutual_info {} != classical_corr {} + discord {}",
                row.fields[0], row.fields[4], row.fields[5], row.fields[6]
            )));
        }
    }
    Ok(())
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn write_file(dir: &Path, name: &str, content: &str) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, content)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

/// The Fig. 3 reference sweep: frozen family under the bit flip.
pub fn fig3_trajectory() -> Trajectory {
    let spec = ChannelSpec::new(ChannelKind::BitFlip, 0.1).expect("positive rate");
    sweep_trajectory(BellDiagonalParams::new(0.6, -0.6, 1.0), spec, 30.0, 300)
        .expect("reference state is physical")
}

/// The Fig. 4 reference sweep: decaying family under the phase flip.
pub fn fig4_trajectory() -> Trajectory {
    let spec = ChannelSpec::new(ChannelKind::PhaseFlip, 0.1).expect("positive rate");
    sweep_trajectory(BellDiagonalParams::new(1.0, -0.6, 0.6), spec, 30.0, 300)
        .expect("reference state is physical")
}

/// Randomized optimal-axis audit: every sampled state must satisfy
/// D = C_r on its optimal axis.
pub fn table1_csv(seed: u64, states: usize) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out =
        String::from("c1,c2,c3,discord,coherence_rel_opt,identity_gap,optimal_axis,region\n");
    for _ in 0..states {
        let p = sample_physical(&mut rng);
        let set = MeasureSet::evaluate(p).expect("sampled states are physical");
        let axis = optimal_axis(p).expect("sampled states are physical");
        let region = classify_region(p).expect("sampled states are physical");
        let c_opt = set.coherence_rel_on(axis);
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            fmt_sig(p.c1),
            fmt_sig(p.c2),
            fmt_sig(p.c3),
            fmt_sig(set.discord),
            fmt_sig(c_opt),
            fmt_sig((set.discord - c_opt).abs()),
            axis.index(),
            region.label()
        );
    }
    out
}

/// Role-assignment audit of the Fig. 4 trajectory.
pub fn table2_csv() -> String {
    let traj = fig4_trajectory();
    let table = role_table(&traj).expect("reference trajectory is valid");
    let mut out = String::from("t,label,residual_pre,residual_post,active_residual\n");
    for row in &table.rows {
        let (label, active) = match row.label {
            RoleLabel::Pre => ("pre", row.residual_pre),
            RoleLabel::Post => ("post", row.residual_post),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt_sig(row.t),
            label,
            fmt_sig(row.residual_pre),
            fmt_sig(row.residual_post),
            fmt_sig(active)
        );
    }
    out
}

fn measure_report(
    p: BellDiagonalParams,
    axis_filter: Option<usize>,
    format: &str,
) -> Result<String, CliError> {
    let set = MeasureSet::evaluate(p).map_err(input_err)?;
    let axis = optimal_axis(p).map_err(input_err)?;
    let region = classify_region(p).map_err(input_err)?;

    let axis_filter = match axis_filter {
        Some(k) => Some(
            PauliAxis::from_index(k)
                .ok_or_else(|| CliError::Input(format!("axis must be 1, 2 or 3, got {k}")))?,
        ),
        None => None,
    };

    match format {
        "text" => {
            let mut out = String::new();
            let _ = writeln!(out, "mutual_info      {}", fmt_sig(set.mutual_information));
            let _ = writeln!(
                out,
                "classical_corr   {}",
                fmt_sig(set.classical_correlation)
            );
            let _ = writeln!(out, "discord          {}", fmt_sig(set.discord));
            for a in PauliAxis::ALL {
                if axis_filter.is_some_and(|f| f != a) {
                    continue;
                }
                let _ = writeln!(
                    out,
                    "coherence_rel_{}  {}",
                    a.index(),
                    fmt_sig(set.coherence_rel_on(a))
                );
            }
            for a in PauliAxis::ALL {
                if axis_filter.is_some_and(|f| f != a) {
                    continue;
                }
                let _ = writeln!(
                    out,
                    "coherence_l1_{}   {}",
                    a.index(),
                    fmt_sig(set.coherence_l1_on(a))
                );
            }
            let _ = writeln!(out, "optimal_axis     {}", axis.index());
            let _ = writeln!(out, "region           {}", region.label());
            Ok(out)
        }
        "json" => {
            let mut out = String::from("{");
            let _ = write!(out, "\"mutual_info\":{}", fmt_sig(set.mutual_information));
            let _ = write!(
                out,
                ",\"classical_corr\":{}",
                fmt_sig(set.classical_correlation)
            );
            let _ = write!(out, ",\"discord\":{}", fmt_sig(set.discord));
            for a in PauliAxis::ALL {
                let _ = write!(
                    out,
                    ",\"coherence_rel_{}\":{}",
                    a.index(),
                    fmt_sig(set.coherence_rel_on(a))
                );
            }
            for a in PauliAxis::ALL {
                let _ = write!(
                    out,
                    ",\"coherence_l1_{}\":{}",
                    a.index(),
                    fmt_sig(set.coherence_l1_on(a))
                );
            }
            let _ = write!(out, ",\"optimal_axis\":{}", axis.index());
            let _ = write!(out, ",\"region\":\"{}\"", region.label());
            out.push_str("}\n");
            Ok(out)
        }
        "csv" => {
            let mut out = String::from(
                "c1,c2,c3,mutual_info,classical_corr,discord,coherence_rel_1,coherence_rel_2,coherence_rel_3,coherence_l1_1,coherence_l1_2,coherence_l1_3,optimal_axis,region\n",
            );
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                fmt_sig(p.c1),
                fmt_sig(p.c2),
                fmt_sig(p.c3),
                fmt_sig(set.mutual_information),
                fmt_sig(set.classical_correlation),
                fmt_sig(set.discord),
                fmt_sig(set.coherence_rel[0]),
                fmt_sig(set.coherence_rel[1]),
                fmt_sig(set.coherence_rel[2]),
                fmt_sig(set.coherence_l1[0]),
                fmt_sig(set.coherence_l1[1]),
                fmt_sig(set.coherence_l1[2]),
                axis.index(),
                region.label()
            );
            Ok(out)
        }
        other => Err(CliError::Input(format!(
            "unknown format `{other}` (expected text, csv or json)"
        ))),
    }
}

fn transition_report(
    p: BellDiagonalParams,
    kind: ChannelKind,
    gamma: f64,
    steps: usize,
    format: &str,
) -> Result<String, CliError> {
    let spec = channel_spec(kind, gamma)?;
    if steps < 5 {
        return Err(CliError::Input(format!(
            "steps must be at least 5 for detection, got {steps}"
        )));
    }
    let analytic = transition_time_analytic(p, spec).map_err(input_err)?;
    let t_max = match analytic.outcome {
        TransitionOutcome::Time(tbar) => 4.0 * tbar,
        _ => 3.0 / gamma,
    };
    let detected = if t_max > 0.0 {
        let traj = sweep_trajectory(p, spec, t_max, steps).map_err(input_err)?;
        detect_sudden_change(&traj, TrackedMeasure::ClassicalCorrelation)
            .first()
            .copied()
    } else {
        None
    };

    let (analytic_text, reason) = match analytic.outcome {
        TransitionOutcome::Time(t) => (fmt_sig(t), String::new()),
        TransitionOutcome::NoCrossing => (
            "none".to_string(),
            "constant axis already maximal".to_string(),
        ),
        TransitionOutcome::Infinite => (
            "infinite".to_string(),
            "constant coefficient is zero".to_string(),
        ),
    };
    let detected_text = detected.map_or("none".to_string(), fmt_sig);

    match format {
        "text" => {
            let mut out = String::new();
            if reason.is_empty() {
                let _ = writeln!(out, "analytic  {analytic_text}");
            } else {
                let _ = writeln!(out, "analytic  {analytic_text} ({reason})");
            }
            let _ = writeln!(out, "detected  {detected_text}");
            Ok(out)
        }
        "json" => {
            let analytic_json = match analytic.outcome {
                TransitionOutcome::Time(t) => fmt_sig(t),
                _ => format!("\"{analytic_text}\""),
            };
            let detected_json = detected.map_or("\"none\"".to_string(), fmt_sig);
            let mut out = String::from("{");
            let _ = write!(out, "\"analytic\":{analytic_json}");
            if !reason.is_empty() {
                let _ = write!(out, ",\"reason\":\"{reason}\"");
            }
            let _ = write!(out, ",\"detected\":{detected_json}");
            out.push_str("}\n");
            Ok(out)
        }
        other => Err(CliError::Input(format!(
            "unknown format `{other}` (expected text or json)"
        ))),
    }
}

fn load_state_or_matrix(
    state: &Option<String>,
    matrix: &Option<PathBuf>,
) -> Result<DensityMatrix, CliError> {
    match (state, matrix) {
        (Some(s), None) => {
            let p = parse_physical_state(s)?;
            crate::qstate::to_density_matrix(p, PauliAxis::Axis3).map_err(input_err)
        }
        (None, Some(path)) => load_matrix(path),
        _ => Err(CliError::Input(
            "exactly one of --state or --matrix is required".to_string(),
        )),
    }
}

fn oracle_report(
    m: &DensityMatrix,
    one_side_grid: &GridSpec,
    joint_grid: &GridSpec,
    format: &str,
) -> Result<String, CliError> {
    let one = discord_one_side(m, one_side_grid);
    let two = discord_two_side(m, joint_grid);
    let rel = discord_relative_entropy(m, joint_grid);

    let projection = from_density_matrix(m);
    let closed = if projection.is_bell_diagonal() {
        crate::measures::quantum_discord(projection.params).ok()
    } else {
        None
    };

    match format {
        "text" => {
            let mut out = String::new();
            let _ = writeln!(out, "one_side          {}", fmt_sig(one.value));
            let _ = writeln!(
                out,
                "one_side_argmin   theta {} phi {}",
                fmt_sig(one.argmin[0].theta),
                fmt_sig(one.argmin[0].phi)
            );
            let _ = writeln!(out, "two_side          {}", fmt_sig(two.value));
            let _ = writeln!(
                out,
                "two_side_argmin   A(theta {} phi {}) B(theta {} phi {})",
                fmt_sig(two.argmin[0].theta),
                fmt_sig(two.argmin[0].phi),
                fmt_sig(two.argmin[1].theta),
                fmt_sig(two.argmin[1].phi)
            );
            let _ = writeln!(out, "rel_entropy       {}", fmt_sig(rel.value));
            let _ = writeln!(
                out,
                "rel_entropy_argmin A(theta {} phi {}) B(theta {} phi {})",
                fmt_sig(rel.argmin[0].theta),
                fmt_sig(rel.argmin[0].phi),
                fmt_sig(rel.argmin[1].theta),
                fmt_sig(rel.argmin[1].phi)
            );
            if let Some(cf) = closed {
                let _ = writeln!(out, "closed_form       {}", fmt_sig(cf));
                let _ = writeln!(out, "gap_one_side      {}", fmt_sig((one.value - cf).abs()));
                let _ = writeln!(out, "gap_two_side      {}", fmt_sig((two.value - cf).abs()));
                let _ = writeln!(out, "gap_rel_entropy   {}", fmt_sig((rel.value - cf).abs()));
            }
            Ok(out)
        }
        "json" => {
            let mut out = String::from("{");
            let _ = write!(out, "\"one_side\":{}", fmt_sig(one.value));
            let _ = write!(
                out,
                ",\"one_side_argmin\":{{\"theta\":{},\"phi\":{}}}",
                fmt_sig(one.argmin[0].theta),
                fmt_sig(one.argmin[0].phi)
            );
            let _ = write!(out, ",\"two_side\":{}", fmt_sig(two.value));
            let _ = write!(out, ",\"rel_entropy\":{}", fmt_sig(rel.value));
            if let Some(cf) = closed {
                let _ = write!(out, ",\"closed_form\":{}", fmt_sig(cf));
                let _ = write!(out, ",\"gap_one_side\":{}", fmt_sig((one.value - cf).abs()));
                let _ = write!(out, ",\"gap_two_side\":{}", fmt_sig((two.value - cf).abs()));
                let _ = write!(
                    out,
                    ",\"gap_rel_entropy\":{}",
                    fmt_sig((rel.value - cf).abs())
                );
            }
            out.push_str("}\n");
            Ok(out)
        }
        other => Err(CliError::Input(format!(
            "unknown format `{other}` (expected text or json)"
        ))),
    }
}

fn theorems_report(
    m: &DensityMatrix,
    joint_grid: &GridSpec,
    format: &str,
) -> Result<String, CliError> {
    let t1 = verify_theorem1(m, joint_grid);
    let t2 = verify_theorem2(m, joint_grid);
    match format {
        "text" => {
            let mut out = String::new();
            let _ = writeln!(out, "theorem1_lhs      {}", fmt_sig(t1.lhs));
            let _ = writeln!(out, "theorem1_rhs      {}", fmt_sig(t1.rhs));
            let _ = writeln!(out, "theorem1_gap      {}", fmt_sig(t1.gap));
            if let Some(gap) = t1.closed_form_gap {
                let _ = writeln!(out, "theorem1_closed_form_gap {}", fmt_sig(gap));
            }
            let _ = writeln!(out, "theorem2_d2       {}", fmt_sig(t2.d2));
            let _ = writeln!(out, "theorem2_c_ab     {}", fmt_sig(t2.c_ab));
            let _ = writeln!(out, "theorem2_c_a      {}", fmt_sig(t2.c_a));
            let _ = writeln!(out, "theorem2_c_b      {}", fmt_sig(t2.c_b));
            let _ = writeln!(out, "theorem2_gap      {}", fmt_sig(t2.gap));
            Ok(out)
        }
        "json" => {
            let mut out = String::from("{");
            let _ = write!(
                out,
                "\"theorem1\":{{\"lhs\":{},\"rhs\":{},\"gap\":{}",
                fmt_sig(t1.lhs),
                fmt_sig(t1.rhs),
                fmt_sig(t1.gap)
            );
            if let Some(gap) = t1.closed_form_gap {
                let _ = write!(out, ",\"closed_form_gap\":{}", fmt_sig(gap));
            }
            let _ = write!(
                out,
                "}},\"theorem2\":{{\"d2\":{},\"c_ab\":{},\"c_a\":{},\"c_b\":{},\"gap\":{}}}",
                fmt_sig(t2.d2),
                fmt_sig(t2.c_ab),
                fmt_sig(t2.c_a),
                fmt_sig(t2.c_b),
                fmt_sig(t2.gap)
            );
            out.push_str("}\n");
            Ok(out)
        }
        other => Err(CliError::Input(format!(
            "unknown format `{other}` (expected text or json)"
        ))),
    }
}

/// Runs one parsed invocation. Errors map to the documented exit codes.
pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Measure {
            state,
            axis,
            format,
            output,
        } => {
            let p = parse_physical_state(&state)?;
            let report = measure_report(p, axis, &format)?;
            emit(&output, &report)
        }
        Command::Evolve {
            state,
            channel,
            gamma,
            t_max,
            steps,
            format,
            output,
            self_check,
        } => {
            let p = parse_physical_state(&state)?;
            let kind = parse_channel(&channel)?;
            let spec = channel_spec(kind, gamma)?;
            if !(2..=10_000_000).contains(&steps) {
                return Err(CliError::Input(format!(
                    "steps must be between 2 and 10000000, got {steps}"
                )));
            }
            if !t_max.is_finite() || t_max <= 0.0 {
                return Err(CliError::Input(format!(
                    "t-max must be positive, got {t_max}"
                )));
            }
            let traj = sweep_trajectory(p, spec, t_max, steps).map_err(input_err)?;
            if self_check {
                self_check_trajectory(&traj)?;
            }
            let content = match format.as_str() {
                "csv" => render_trajectory_csv(&traj),
                "json" => render_trajectory_json(&traj),
                other => {
                    return Err(CliError::Input(format!(
                        "unknown format `{other}` (expected csv or json)"
                    )))
                }
            };
            emit(&output, &content)
        }
        Command::Transition {
            state,
            channel,
            gamma,
            steps,
            format,
            output,
        } => {
            let p = parse_physical_state(&state)?;
            let kind = parse_channel(&channel)?;
            if gamma <= 0.0 {
                return Err(CliError::Input(format!(
                    "gamma must be positive, got {gamma}"
                )));
            }
            let report = transition_report(p, kind, gamma, steps, &format)?;
            emit(&output, &report)
        }
        Command::OracleDiscord {
            state,
            matrix,
            grid_theta,
            grid_phi,
            refine,
            format,
            output,
        } => {
            if grid_theta < 2 || grid_phi < 2 {
                return Err(CliError::Input(
                    "grid-theta and grid-phi must be at least 2".to_string(),
                ));
            }
            let m = load_state_or_matrix(&state, &matrix)?;
            let one_side = GridSpec::new(grid_theta, grid_phi, refine, 0.5);
            let joint = GridSpec::new(16, 16, refine, 0.5);
            let report = oracle_report(&m, &one_side, &joint, &format)?;
            emit(&output, &report)
        }
        Command::VerifyTheorems {
            state,
            matrix,
            refine,
            format,
            output,
        } => {
            let m = load_state_or_matrix(&state, &matrix)?;
            let joint = GridSpec::new(16, 16, refine, 0.5);
            let report = theorems_report(&m, &joint, &format)?;
            emit(&output, &report)
        }
        Command::Reproduce {
            target,
            output,
            seed,
            self_check,
        } => {
            let (name, content) = match target.as_str() {
                "fig3" => {
                    let traj = fig3_trajectory();
                    if self_check {
                        self_check_trajectory(&traj)?;
                    }
                    ("fig3.csv", render_trajectory_csv(&traj))
                }
                "fig4" => {
                    let traj = fig4_trajectory();
                    if self_check {
                        self_check_trajectory(&traj)?;
                    }
                    ("fig4.csv", render_trajectory_csv(&traj))
                }
                "table1" => ("table1.csv", table1_csv(seed, 1000)),
                "table2" => ("table2.csv", table2_csv()),
                other => {
                    return Err(CliError::Input(format!(
                        "unknown reproduce target `{other}` (expected fig3, fig4, table1 or table2)"
                    )))
                }
            };
            let path = write_file(&output, name, &content)?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fmt_sig_gives_twelve_significant_digits() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(-0.0), "0");
        assert_eq!(fmt_sig(0.2780719051126377), "0.278071905113");
        assert_eq!(fmt_sig(1.2780719051126377), "1.27807190511");
        assert_eq!(fmt_sig(30.0), "30.0000000000");
        assert_eq!(fmt_sig(-0.2207276647028654), "-0.220727664703");
        assert_eq!(fmt_sig(2.5541281188299534), "2.55412811883");
    }

    #[test]
    fn state_literal_parsing() {
        let p = parse_state_literal("0.6,-0.6,1").unwrap();
        assert_eq!((p.c1, p.c2, p.c3), (0.6, -0.6, 1.0));
        assert!(parse_state_literal("0.6,-0.6").is_err());
        assert!(parse_state_literal("a,b,c").is_err());
    }

    #[test]
    fn complex_entry_parsing() {
        assert_eq!(parse_complex("0.25+0j").unwrap(), c(0.25, 0.0));
        assert_eq!(parse_complex("-0.3-0.1j").unwrap(), c(-0.3, -0.1));
        assert_eq!(parse_complex("0.5").unwrap(), c(0.5, 0.0));
        assert_eq!(parse_complex("0.5j").unwrap(), c(0.0, 0.5));
        assert_eq!(parse_complex("-j").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("1e-3+2e-4j").unwrap(), c(1e-3, 2e-4));
        assert!(parse_complex("nonsense").is_err());
    }

    #[test]
    fn matrix_text_round_trip() {
        let text = "0.25+0j 0j 0j 0j\n0j 0.25+0j 0j 0j\n0j 0j 0.25+0j 0j\n0j 0j 0j 0.25+0j\n";
        let m = parse_matrix_text(text).unwrap();
        assert!((m.matrix().get(0, 0).re - 0.25).abs() < 1e-15);

        // Non-PSD input is rejected.
        let bad = "1.5+0j 0j 0j 0j\n0j -0.5+0j 0j 0j\n0j 0j 0j 0j\n0j 0j 0j 0j\n";
        assert!(parse_matrix_text(bad).is_err());
    }

    #[test]
    fn trajectory_csv_shape() {
        let spec = ChannelSpec::new(ChannelKind::PhaseFlip, 0.1).unwrap();
        let traj = sweep_trajectory(BellDiagonalParams::new(0.0, 0.0, 0.0), spec, 1.0, 2).unwrap();
        let csv = render_trajectory_csv(&traj);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], CSV_HEADER);
        // Zero state: all measures zero.
        assert!(lines[1].starts_with("0,0,0,0,0,0,0,"));
    }

    #[test]
    fn trajectory_json_is_wellformed_enough() {
        let spec = ChannelSpec::new(ChannelKind::PhaseFlip, 0.1).unwrap();
        let traj = sweep_trajectory(BellDiagonalParams::new(0.3, -0.2, 0.9), spec, 1.0, 2).unwrap();
        let json = render_trajectory_json(&traj);
        assert!(json.starts_with("[\n"));
        assert!(json.ends_with("]\n"));
        assert_eq!(json.matches("\"t\":").count(), 3);
        assert_eq!(json.matches("\"region\":\"C3\"").count(), 3);
    }

    #[test]
    fn self_check_accepts_reference_sweep() {
        assert!(self_check_trajectory(&fig3_trajectory()).is_ok());
    }

    #[test]
    fn table1_is_deterministic_and_clean() {
        let a = table1_csv(42, 100);
        let b = table1_csv(42, 100);
        assert_eq!(a, b);
        let c = table1_csv(43, 100);
        assert_ne!(a, c);
        for line in a.lines().skip(1) {
            let gap: f64 = line.split(',').nth(5).unwrap().parse().unwrap();
            assert!(gap < 1e-12);
        }
    }
}
