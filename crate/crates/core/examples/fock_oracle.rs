//! Closed form vs exact trace over a truncated two-mode Fock space.
//!
//! Run with: cargo run --release --example fock_oracle

use std::time::Instant;

use backtoback::{
    fock_observables, preset, squeeze_parameter, MediumParams, SpeciesParams, TruncationConfig,
};

fn main() -> backtoback::Result<()> {
    let cases = [
        (preset("phi")?, -0.10, 0.0),
        (preset("phi")?, -0.20, 1000.0),
        (preset("kaon")?, -0.10, 250.0),
        (preset("pion")?, -0.10, 0.0),
        (SpeciesParams::new("light", 100.0)?, -0.25, 0.0),
    ];
    println!(
        "{:<6} {:>7} {:>7} {:>6} {:>12} {:>22} {:>22} {:>22}",
        "species", "shift", "k", "n_max", "tail", "N1 rel.diff", "C2(k,-k) rel.diff", "C2(k,k) - 2"
    );
    for (species, shift, k) in cases {
        let t = if species.m0 < 120.0 { 200.0 } else { 140.0 };
        let medium = MediumParams::from_shift_fraction(&species, shift, t)?;
        let mode = squeeze_parameter(k, &species, &medium)?;
        let cfg = TruncationConfig::for_relative_accuracy(k, &species, &medium, 1e-12)?;
        let start = Instant::now();
        let fock = fock_observables(k, &species, &medium, cfg)?;
        let elapsed = start.elapsed();
        let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs());
        println!(
            "{:<7} {:>7.2} {:>7.0} {:>6} {:>12.2e} {:>22.3e} {:>22.3e} {:>22.3e}   ({elapsed:.2?})",
            species.label,
            shift,
            k,
            fock.n_max_used,
            fock.tail_bound,
            rel(mode.spectrum(), fock.n1),
            rel(mode.c2_back_to_back(), fock.c2_bb),
            fock.c2_id - 2.0,
        );
    }
    Ok(())
}
