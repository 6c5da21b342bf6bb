//! Beyond the Bell-diagonal family: density matrices with local Bloch
//! vectors are rejected by the exact converter but still served by the
//! reduced-state, coherence and numerical-discord machinery.
//!
//!     cargo run --example general_states

use bellcorr::linalg::{cr, ZERO};
use bellcorr::measures::{coherence_l1_matrix, coherence_rel_matrix, ProductBasis};
use bellcorr::{
    discord_one_side, from_density_matrix, reduced_state, DensityMatrix, GridSpec, Subsystem,
};

fn main() {
    // |0><0| x |+><+|: a pure product state.
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let product = DensityMatrix::from_pure(&[cr(s), cr(s), ZERO, ZERO]).unwrap();

    let projection = from_density_matrix(&product);
    println!(
        "projection onto the Bell-diagonal family: (c1, c2, c3) = ({:.3}, {:.3}, {:.3})",
        projection.params.c1, projection.params.c2, projection.params.c3
    );
    println!(
        "Bell-diagonal? {} (residual {:.3})",
        projection.is_bell_diagonal(),
        projection.residual
    );

    let rho_a = reduced_state(&product, Subsystem::A);
    let rho_b = reduced_state(&product, Subsystem::B);
    println!(
        "\nreduced state of A: diag = ({:.3}, {:.3})",
        rho_a.get(0, 0).re,
        rho_a.get(1, 1).re
    );
    println!(
        "reduced state of B: diag = ({:.3}, {:.3})",
        rho_b.get(0, 0).re,
        rho_b.get(1, 1).re
    );

    let c_rel = coherence_rel_matrix(&product, &ProductBasis::computational()).unwrap();
    let c_l1 = coherence_l1_matrix(&product);
    println!("\ncomputational-basis coherence: C_r = {c_rel:.6}, C_l1 = {c_l1:.6}");

    let discord = discord_one_side(&product, &GridSpec::new(16, 16, 2, 0.5));
    println!(
        "one-side discord = {:.2e} (product states carry no quantum correlation)",
        discord.value
    );
}
