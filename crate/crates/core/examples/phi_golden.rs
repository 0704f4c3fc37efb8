//! Regenerates the frozen phi curves used by the acceptance suite.
//!
//! Each curve is checked against the Fock and Monte Carlo oracles at a few
//! momenta before it is written.
//!
//! Run with: cargo run --release --example phi_golden

use std::path::PathBuf;

use backtoback::cli::{self, EXIT_OK};

fn main() {
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut stdout = std::io::stdout();
    let mut stderr = std::io::stderr();
    for shift in ["-0.10", "-0.20"] {
        let common = ["--species", "phi", "--shift-frac", shift, "--temp", "140"];
        for k in ["0", "250", "500", "1000"] {
            let args = ["backtoback", "verify"]
                .into_iter()
                .chain(common)
                .chain(["--k", k]);
            let code = cli::run(args, &mut stdout, &mut stderr);
            assert_eq!(code, EXIT_OK, "oracle disagreement at shift={shift} k={k}");
        }
        let out = golden.join(format!("phi_shift_{shift}.csv"));
        let args = ["backtoback", "scan"]
            .into_iter()
            .chain(common)
            .chain([
                "--kmin",
                "0",
                "--kmax",
                "2000",
                "--points",
                "201",
                "--reproducible",
            ])
            .chain(["--out", out.to_str().unwrap()]);
        let code = cli::run(args, &mut stdout, &mut stderr);
        assert_eq!(code, EXIT_OK);
        println!("wrote {}", out.display());
    }
}
