//! Single-particle spectrum N1(k) with and without the in-medium mass shift.
//!
//! Run with: cargo run --example spectrum

use backtoback::{preset, squeeze_parameter, MediumParams};

fn main() -> backtoback::Result<()> {
    let kaon = preset("kaon")?;
    let free = MediumParams::new(kaon.m0, 140.0)?;
    let shifted = MediumParams::from_shift_fraction(&kaon, -0.15, 140.0)?;

    println!(
        "{:>8} {:>14} {:>14} {:>14} {:>10}",
        "k", "n (no shift)", "N1 (shifted)", "s^2", "r"
    );
    for k in [0.0, 100.0, 250.0, 500.0, 1000.0, 2000.0] {
        let n = squeeze_parameter(k, &kaon, &free)?.n;
        let mode = squeeze_parameter(k, &kaon, &shifted)?;
        println!(
            "{k:>8.0} {n:>14.6e} {:>14.6e} {:>14.6e} {:>10.6}",
            mode.spectrum(),
            mode.s * mode.s,
            mode.r
        );
    }
    Ok(())
}
