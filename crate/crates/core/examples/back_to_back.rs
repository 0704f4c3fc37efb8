//! Back-to-back correlation C2(k,-k) against the identical-momentum intercept.
//!
//! Run with: cargo run --example back_to_back

use backtoback::{correlation_point, preset, squeeze_parameter, MediumParams};

fn main() -> backtoback::Result<()> {
    let phi = preset("phi")?;
    for shift in [-0.05, -0.10, -0.20] {
        let medium = MediumParams::from_shift_fraction(&phi, shift, 140.0)?;
        println!("phi, m* = {:.1} MeV, T = 140 MeV", medium.m_star);
        println!(
            "{:>8} {:>14} {:>14} {:>10} {:>16}",
            "k", "N1", "C2(k,-k)", "C2(k,k)", "[c s (2n+1)]^2"
        );
        for k in [0.0, 500.0, 1000.0, 2000.0] {
            let p = correlation_point(k, &phi, &medium)?;
            let pair = squeeze_parameter(k, &phi, &medium)?.pair_excess();
            println!(
                "{k:>8.0} {:>14.6e} {:>14.6e} {:>10.1} {pair:>16.6e}",
                p.n1, p.c2_back_to_back, p.c2_identical
            );
        }
        println!();
    }
    Ok(())
}
