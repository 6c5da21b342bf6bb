//! Closed-form correlation measures for a few notable Bell-diagonal
//! states: mutual information, classical correlation, discord and the
//! coherences on all three Pauli axes.
//!
//!     cargo run --example closed_form_measures

use bellcorr::{classify_region, optimal_axis, BellDiagonalParams, MeasureSet};

fn main() {
    let states = [
        ("maximally mixed", BellDiagonalParams::new(0.0, 0.0, 0.0)),
        (
            "frozen-family state",
            BellDiagonalParams::new(0.6, -0.6, 1.0),
        ),
        (
            "decaying-family state",
            BellDiagonalParams::new(1.0, -0.6, 0.6),
        ),
        ("pure Bell state", BellDiagonalParams::new(1.0, -1.0, 1.0)),
        ("Werner state", BellDiagonalParams::new(-0.5, -0.5, -0.5)),
    ];

    for (label, p) in states {
        let m = MeasureSet::evaluate(p).unwrap();
        let axis = optimal_axis(p).unwrap();
        let region = classify_region(p).unwrap();
        println!("{label} ({}, {}, {})", p.c1, p.c2, p.c3);
        println!("  mutual information    {:.9}", m.mutual_information);
        println!("  classical correlation {:.9}", m.classical_correlation);
        println!("  quantum discord       {:.9}", m.discord);
        println!(
            "  coherence C_r         axis1 {:.9}  axis2 {:.9}  axis3 {:.9}",
            m.coherence_rel[0], m.coherence_rel[1], m.coherence_rel[2]
        );
        println!(
            "  coherence C_l1        axis1 {:.9}  axis2 {:.9}  axis3 {:.9}",
            m.coherence_l1[0], m.coherence_l1[1], m.coherence_l1[2]
        );
        println!(
            "  optimal axis {} (region {}), discord - C_r gap = {:.2e}",
            axis.index(),
            region.label(),
            (m.discord - m.coherence_rel_on(axis)).abs()
        );
        println!();
    }
}
