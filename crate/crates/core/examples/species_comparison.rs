//! Pion, kaon and phi at the same fractional shift.
//!
//! At k=0 the squeeze parameter depends only on the fractional shift, so all
//! three start equally squeezed. The light pion is thermally populated, which
//! dilutes C2(k,-k); the heavy phi shows the largest signal.
//!
//! Run with: cargo run --example species_comparison

use backtoback::{species_presets, squeeze_parameter, MediumParams};

fn main() -> backtoback::Result<()> {
    println!(
        "{:<6} {:>8} {:>10} {:>12} {:>14} {:>14}",
        "species", "k", "r", "n", "pair density", "C2(k,-k) - 1"
    );
    for species in species_presets() {
        let medium = MediumParams::from_shift_fraction(&species, -0.10, 140.0)?;
        for k in [0.0, 500.0, 1000.0] {
            let mode = squeeze_parameter(k, &species, &medium)?;
            println!(
                "{:<7} {k:>8.0} {:>10.6} {:>12.4e} {:>14.4e} {:>14.4e}",
                species.label,
                mode.r,
                mode.n,
                mode.pair_excess(),
                mode.c2_back_to_back() - 1.0
            );
        }
    }
    Ok(())
}
