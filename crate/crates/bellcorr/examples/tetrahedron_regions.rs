//! Geometry of the Bell-diagonal family: rejection sampling of the
//! physical tetrahedron, region classification by the dominating
//! coefficient, and the axis-symmetric Werner line.
//!
//!     cargo run --example tetrahedron_regions

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use bellcorr::{
    classify_region, coherence_rel, quantum_discord, sample_physical, BellDiagonalParams, PauliAxis,
};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut counts = [0usize; 4];
    let mut worst_gap = 0.0f64;
    const N: usize = 5000;

    for _ in 0..N {
        let p = sample_physical(&mut rng);
        let region = classify_region(p).unwrap();
        let slot = if region.boundary {
            3
        } else {
            region.axis.index() - 1
        };
        counts[slot] += 1;
        let gap = (quantum_discord(p).unwrap() - coherence_rel(p, region.axis).unwrap()).abs();
        worst_gap = worst_gap.max(gap);
    }

    println!("{N} uniform samples of the tetrahedron:");
    println!("  region C1       {:5}", counts[0]);
    println!("  region C2       {:5}", counts[1]);
    println!("  region C3       {:5}", counts[2]);
    println!("  boundary        {:5}", counts[3]);
    println!("  worst |discord - C_r(optimal axis)| = {worst_gap:.2e}\n");

    println!("Werner line (-t, -t, -t): coherence is the same on every axis");
    println!("      t    C_r axis1     C_r axis2     C_r axis3     discord");
    for k in 1..=5 {
        let t = 0.2 * k as f64;
        let p = BellDiagonalParams::new(-t, -t, -t);
        let c: Vec<f64> = PauliAxis::ALL
            .iter()
            .map(|&a| coherence_rel(p, a).unwrap())
            .collect();
        println!(
            "  {:4.1}    {:.9}   {:.9}   {:.9}   {:.9}",
            t,
            c[0],
            c[1],
            c[2],
            quantum_discord(p).unwrap()
        );
    }
}
