//! Monte Carlo over the thermal P-representation against the closed form.
//!
//! Run with: cargo run --release --example p_representation

use backtoback::{p_representation_mc, preset, squeeze_parameter, McConfig, MediumParams};

fn main() -> backtoback::Result<()> {
    let pion = preset("pion")?;
    let medium = MediumParams::from_shift_fraction(&pion, -0.10, 140.0)?;
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(42);
    for k in [0.0, 200.0, 500.0] {
        let mode = squeeze_parameter(k, &pion, &medium)?;
        let mc = p_representation_mc(k, &pion, &medium, McConfig::new(1_000_000, seed, 0.01))?;
        println!("pion k={k}  ({} samples)", mc.n_samples);
        for (name, est, exact) in [
            ("N1", mc.n1, mode.spectrum()),
            ("C2(k,-k)", mc.c2_bb, mode.c2_back_to_back()),
            ("C2(k,k)", mc.c2_id, 2.0),
        ] {
            println!(
                "  {name:<9} exact {exact:.8e}  mc {:.8e} +- {:.1e}  z={:.2}",
                est.mean,
                est.std_error,
                est.z_score(exact)
            );
        }
    }
    Ok(())
}
