//! Writes the phi back-to-back curves at -10 % and -20 % as gnuplot data.
//!
//! Run with: cargo run --example phi_curves -- [output dir]
//! then in gnuplot: set datafile separator ","; set logscale y;
//! plot "phi_m10.dat" using 1:4 with lines, "phi_m20.dat" using 1:4 with lines

use std::path::PathBuf;

use backtoback::cli::{self, EXIT_OK};

fn main() {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    for (shift, name) in [("-0.10", "phi_m10.dat"), ("-0.20", "phi_m20.dat")] {
        let path = dir.join(name);
        let args = [
            "backtoback",
            "scan",
            "--species",
            "phi",
            "--shift-frac",
            shift,
            "--temp",
            "140",
            "--format",
            "gnuplot",
            "--out",
            path.to_str().unwrap(),
        ];
        let code = cli::run(args, &mut std::io::stdout(), &mut std::io::stderr());
        assert_eq!(code, EXIT_OK);
        println!("{}", path.display());
    }
}
