//! Checks that the Bogoliubov rotation removes the anomalous pair term.
//!
//! Run with: cargo run --example diagonalization

use backtoback::{diagonalization_residual, MediumParams, SpeciesParams};

fn main() -> backtoback::Result<()> {
    let cases = [(139.57, 0.9), (494.0, 0.8), (1020.0, 1.1), (1020.0, 0.5)];
    println!(
        "{:>8} {:>8} {:>8} {:>14} {:>14} {:>12}",
        "m0", "m*", "k", "diagonal", "Omega", "anomalous"
    );
    for (m0, ratio) in cases {
        let species = SpeciesParams::new("case", m0)?;
        let medium = MediumParams::new(m0 * ratio, 140.0)?;
        for k in [0.0, 300.0, 3000.0] {
            let d = diagonalization_residual(k, &species, &medium)?;
            println!(
                "{m0:>8.2} {:>8.2} {k:>8.0} {:>14.8} {:>14.8} {:>12.2e}",
                medium.m_star, d.diagonal, d.capital_omega, d.anomalous
            );
        }
    }
    Ok(())
}
