use std::process::Command;

use backtoback::cli::{run, COLUMNS, EXIT_DISAGREE, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, OUT_DIR_ENV};

fn run_capture(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let full = std::iter::once("backtoback").chain(args.iter().copied());
    let code = run(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn parse_csv(text: &str) -> Vec<Vec<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(headers, COLUMNS);
    reader
        .records()
        .map(|r| r.unwrap().iter().map(|f| f.parse().unwrap()).collect())
        .collect()
}

#[test]
fn phi_scan_defaults() {
    let (code, out, _) = run_capture(&[
        "scan",
        "--species",
        "phi",
        "--shift-frac",
        "-0.10",
        "--temp",
        "140",
        "--reproducible",
    ]);
    assert_eq!(code, EXIT_OK);
    let rows = parse_csv(&out);
    assert_eq!(rows.len(), 201);
    assert_eq!(rows[0][0], 0.0);
    assert_eq!(rows[200][0], 2000.0);
    for row in &rows {
        assert_eq!(row.len(), 5);
        assert!(row[2] > 1.0);
        assert_eq!(row[3], row[2] - 1.0);
        assert_eq!(row[4], 2.0);
    }
    assert!(out.contains("# species=phi m0=1020 m_star=918 shift_frac=-0.1 T=140"));
    assert!(out.contains("# grid=linear k_min=0 k_max=2000 points=201"));
    assert!(!out.contains("generated_unix"));
}

#[test]
fn zero_shift_scan_is_uncorrelated() {
    let (code, out, _) = run_capture(&[
        "scan",
        "--species",
        "phi",
        "--shift-frac",
        "0",
        "--temp",
        "140",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("generated_unix="));
    for row in parse_csv(&out) {
        assert_eq!(row[2], 1.0);
        assert_eq!(row[3], 0.0);
    }
}

#[test]
fn json_and_csv_carry_identical_values() {
    let base = ["scan", "--m0", "494", "--m-star", "444.6", "--temp", "140"];
    let (code, csv_out, _) = run_capture(&base);
    assert_eq!(code, EXIT_OK);
    let mut json_args = base.to_vec();
    json_args.extend(["--format", "json"]);
    let (code, json_out, _) = run_capture(&json_args);
    assert_eq!(code, EXIT_OK);

    let rows = parse_csv(&csv_out);
    let json: serde_json::Value = serde_json::from_str(&json_out).unwrap();
    let objects = json.as_array().unwrap();
    assert_eq!(objects.len(), rows.len());
    for (obj, row) in objects.iter().zip(&rows) {
        let obj = obj.as_object().unwrap();
        assert_eq!(obj.len(), COLUMNS.len());
        for (name, &value) in COLUMNS.iter().zip(row) {
            assert_eq!(
                obj[*name].as_f64().unwrap().to_bits(),
                value.to_bits(),
                "{name}"
            );
        }
    }
}

#[test]
fn gnuplot_header_is_commented() {
    let (code, out, _) = run_capture(&[
        "scan",
        "--species",
        "kaon",
        "--shift-frac",
        "-0.2",
        "--temp",
        "140",
        "--format",
        "gnuplot",
        "--points",
        "11",
        "--kmin",
        "1",
        "--grid",
        "log",
    ]);
    assert_eq!(code, EXIT_OK);
    let (header, data): (Vec<&str>, Vec<&str>) = out.lines().partition(|l| l.starts_with('#'));
    assert!(header.iter().any(|l| l.contains("k_MeV,N1,C2_bb")));
    assert_eq!(data.len(), 11);
    assert!(data.iter().all(|l| l.split(',').count() == 5));
    let last: f64 = data[10].split(',').next().unwrap().parse().unwrap();
    assert_eq!(last, 2000.0);
}

#[test]
fn reproducible_runs_are_byte_identical() {
    let args = [
        "scan",
        "--species",
        "pion",
        "--shift-frac",
        "-0.1",
        "--temp",
        "140",
        "--reproducible",
    ];
    let (_, a, _) = run_capture(&args);
    let (_, b, _) = run_capture(&args);
    assert_eq!(a, b);
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pion.csv");
    let base = [
        "scan",
        "--species",
        "pion",
        "--shift-frac",
        "-0.1",
        "--temp",
        "140",
        "--reproducible",
    ];
    let (_, stdout, _) = run_capture(&base);
    let mut with_out = base.to_vec();
    let path_str = path.to_str().unwrap();
    with_out.extend(["--out", path_str]);
    let (code, printed, _) = run_capture(&with_out);
    assert_eq!(code, EXIT_OK);
    assert!(printed.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);
    // only the target file is left behind
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn verify_phi_point_passes() {
    let (code, out, err) = run_capture(&[
        "verify",
        "--species",
        "phi",
        "--shift-frac",
        "-0.10",
        "--temp",
        "140",
        "--k",
        "0",
        "--nmax",
        "12",
    ]);
    assert_eq!(code, EXIT_OK, "{out}{err}");
    assert!(out.contains("n_max=12"));
    assert!(out.trim_end().ends_with("PASS"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn verify_without_shift_passes() {
    let (code, out, _) = run_capture(&[
        "verify",
        "--species",
        "pion",
        "--shift-frac",
        "0",
        "--temp",
        "140",
        "--k",
        "300",
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
}

#[test]
fn verify_with_impossible_tolerance_fails() {
    let (code, out, _) = run_capture(&[
        "verify",
        "--species",
        "phi",
        "--shift-frac",
        "-0.10",
        "--temp",
        "140",
        "--tolerance",
        "1e-18",
        "--mc-samples",
        "0",
    ]);
    assert_eq!(code, EXIT_DISAGREE, "{out}");
    assert!(out.contains("FAIL"));
}

#[test]
fn verify_refuses_a_coarse_cutoff() {
    let (code, _, err) = run_capture(&[
        "verify",
        "--species",
        "pion",
        "--shift-frac",
        "-0.10",
        "--temp",
        "140",
        "--nmax",
        "3",
    ]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(err.contains("minimal adequate n_max"), "{err}");
}

#[test]
fn verify_rejects_non_positive_tolerance() {
    let (code, _, err) = run_capture(&[
        "verify",
        "--m0",
        "140",
        "--m-star",
        "126",
        "--temp",
        "140",
        "--tolerance",
        "0",
    ]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--tolerance"));
}

#[test]
fn binary_exit_codes_and_output_directory() {
    let exe = env!("CARGO_BIN_EXE_backtoback");
    let dir = tempfile::tempdir().unwrap();

    let status = Command::new(exe)
        .args(["scan", "--species", "phi", "--temp", "140"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(EXIT_USAGE));

    let status = Command::new(exe)
        .args(["scan", "--m0", "-5", "--m-star", "3", "--temp", "140"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(EXIT_DOMAIN));

    let status = Command::new(exe)
        .args(["scan", "--m0", "0", "--m-star", "3", "--temp", "140"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(EXIT_DOMAIN));

    let status = Command::new(exe)
        .env(OUT_DIR_ENV, dir.path())
        .args([
            "scan",
            "--species",
            "phi",
            "--shift-frac",
            "-0.2",
            "--temp",
            "140",
            "--out",
            "phi.dat",
            "--format",
            "gnuplot",
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(EXIT_OK));
    let written = std::fs::read_to_string(dir.path().join("phi.dat")).unwrap();
    assert!(written.starts_with("# backtoback"));
}
