mod common;

use std::process::{Command, Output};

use common::{rel, CANONICAL};
use gapspec::cli::config::RunConfig;
use gapspec::cli::{run_to, EXIT_CONFIG, EXIT_DOMAIN, EXIT_NONCONVERGENCE, EXIT_VALIDATION};
use proptest::prelude::*;
use serde_json::Value;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("gapspec").chain(args.iter().copied());
    let code = run_to(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn binary(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gapspec"));
    cmd.args(args).env_remove("GAPSPEC_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let r = run(&full);
    assert_eq!(r.code, 0, "{}", r.err);
    serde_json::from_str(&r.out).unwrap()
}

fn float(v: &Value) -> f64 {
    v.as_str().expect("floats are strings").parse().unwrap()
}

#[test]
fn pinned_atom_alone() {
    let v = json(&["pinned", "--l", "0"]);
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 1);
    assert_eq!(float(&v["summary"]["total_energy"]), CANONICAL.atom);
    assert_eq!(float(&records[0]["omega_re"]), CANONICAL.atom);
    assert_eq!(v["meta"]["report"], "pinned");
}

#[test]
fn linear_soliton_energy() {
    let v = json(&["soliton", "--l", "4", "--mode", "linear"]);
    let m = CANONICAL;
    let expected = 8.0 * m.atom - 16.0 * m.spacing();
    assert!(rel(float(&v["summary"]["total_energy"]), expected) < 1e-13);
    assert_eq!(v["records"].as_array().unwrap().len(), 8);
    assert_eq!(v["meta"]["mode"], "linear");
}

#[test]
fn absolute_units_scale_frequencies() {
    let v = json(&[
        "--omega-perp",
        "2",
        "--omega-par",
        "2.4",
        "--omega12",
        "2.2",
        "pinned",
        "--l",
        "1",
    ]);
    let e = float(&v["summary"]["total_energy"]);
    let abs = float(&v["summary"]["total_energy_abs"]);
    assert_eq!(abs, 2.0 * e);
    assert_eq!(float(&v["meta"]["omega_perp_abs"]), 2.0);
    assert_eq!(float(&v["meta"]["omega_par"]), 1.2);
}

#[test]
fn json_round_trips_in_memory_values() {
    use gapspec::spectrum::GapSector;
    use gapspec::MediumParams;
    let v = json(&["soliton", "--l", "3", "--h", "1e-4", "--mode", "exact"]);
    let s = GapSector::new(&MediumParams::canonical()).unwrap();
    let st = s.exact(3, 1e-4).unwrap();
    assert_eq!(float(&v["summary"]["total_energy"]), st.total_energy);
    assert_eq!(float(&v["summary"]["effective_mass"]), st.effective_mass);
    for (rec, w) in v["records"]
        .as_array()
        .unwrap()
        .iter()
        .zip(st.frequencies())
    {
        assert_eq!(float(&rec["omega_re"]), w.re);
        assert_eq!(float(&rec["omega_im"]), w.im);
    }
    assert_eq!(
        float(&v["meta"]["valid_radius"]),
        s.linearization().valid_radius
    );
    assert_eq!(v["meta"]["l_max"], s.l_max());
}

#[test]
fn csv_has_twelve_significant_digits() {
    let r = run(&["pair", "--h", "2e-4"]);
    assert_eq!(r.code, 0);
    let mut lines = r.out.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header.len(), row.len());
    let col = header.iter().position(|h| *h == "omega_re").unwrap();
    let cell = row[col];
    let mantissa = cell.split('e').next().unwrap();
    assert_eq!(mantissa.replace(['.', '-'], "").len(), 12, "{cell}");
    let xi: f64 = cell.parse().unwrap();
    assert!((xi - 1.0993095471244013).abs() < 1e-11);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.cfg");
    std::fs::write(&path, "# run\nl = 2\nbeta = 2e-3\nformat = json\n").unwrap();
    let p = path.to_str().unwrap();
    let from_file = json(&["--config", p, "pinned"]);
    assert_eq!(float(&from_file["meta"]["beta"]), 2e-3);
    assert_eq!(from_file["summary"]["n_pairs"], 2);
    let overridden = json(&["--config", p, "--beta", "1e-3", "pinned", "--l", "3"]);
    assert_eq!(float(&overridden["meta"]["beta"]), 1e-3);
    assert_eq!(overridden["summary"]["n_pairs"], 3);
}

#[test]
fn unknown_config_key_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cfg");
    std::fs::write(&path, "beta = 1e-3\nbetta = 2\n").unwrap();
    let r = run(&["--config", path.to_str().unwrap(), "validate"]);
    assert_eq!(r.code, EXIT_CONFIG);
    assert!(
        r.err.contains("betta") && r.err.contains("line 2"),
        "{}",
        r.err
    );
}

#[test]
fn configuration_errors_exit_one() {
    assert_eq!(run(&["soliton"]).code, EXIT_CONFIG);
    assert!(run(&["soliton"]).err.contains("`l`"));
    assert_eq!(
        run(&["--beta", "-1", "pinned", "--l", "1"]).code,
        EXIT_CONFIG
    );
    assert_eq!(
        run(&["--format", "xml", "pinned", "--l", "1"]).code,
        EXIT_CONFIG
    );
    assert_eq!(run(&["--threads", "0", "validate"]).code, EXIT_CONFIG);
    assert_eq!(run(&["bogus"]).code, EXIT_CONFIG);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn domain_errors_exit_two() {
    assert_eq!(run(&["pair", "--h", "-1e-4"]).code, EXIT_DOMAIN);
    assert_eq!(
        run(&["soliton", "--l", "2", "--h", "-1e-4"]).code,
        EXIT_DOMAIN
    );
    assert_eq!(
        run(&["ordinary", "--n", "2", "--h", "0.5"]).code,
        EXIT_DOMAIN
    );
    assert_eq!(run(&["soliton", "--l", "1000"]).code, EXIT_DOMAIN);
    let r = run(&["soliton", "--l", "3", "--h", "1e-2", "--mode", "corrected"]);
    assert_eq!(r.code, EXIT_DOMAIN, "{}", r.err);
}

#[test]
fn non_convergence_exits_three() {
    let r = run(&[
        "--max-iter",
        "0",
        "soliton",
        "--l",
        "2",
        "--h",
        "1e-5",
        "--mode",
        "exact",
    ]);
    assert_eq!(r.code, EXIT_NONCONVERGENCE, "{}", r.err);
}

#[test]
fn validate_exit_codes() {
    let canonical = run(&["validate"]);
    assert_eq!(canonical.code, EXIT_VALIDATION);
    let failing: Vec<&str> = canonical
        .out
        .lines()
        .filter(|l| l.starts_with("FAIL"))
        .collect();
    assert_eq!(failing.len(), 1, "{}", canonical.out);
    assert!(failing[0].contains("effective mass"));

    let weak = run(&["--beta", "1e-4", "validate"]);
    assert_eq!(weak.code, 0, "{}", weak.out);
    assert!(!weak.out.contains("FAIL"));
}

#[test]
fn output_goes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("medium.csv");
    let r = run(&[
        "--output",
        path.to_str().unwrap(),
        "medium",
        "--points",
        "11",
    ]);
    assert_eq!(r.code, 0);
    assert!(r.out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 12);
    assert!(text.starts_with("omega,omega_abs,branch,"));
}

#[test]
fn thread_count_precedence() {
    let ok = |o: &Output| o.status.code() == Some(0);
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("t.cfg");
    std::fs::write(&cfg, "threads = 0\nl = 1\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    // an invalid lower-priority source is never consulted
    assert!(ok(&binary(
        &["--threads", "2", "pinned", "--l", "1"],
        &[("GAPSPEC_THREADS", "0")]
    )));
    assert!(ok(&binary(
        &["--config", cfg, "pinned"],
        &[("GAPSPEC_THREADS", "3")]
    )));
    let env_zero = binary(&["pinned", "--l", "1"], &[("GAPSPEC_THREADS", "0")]);
    assert_eq!(env_zero.status.code(), Some(EXIT_CONFIG));
    let env_text = binary(&["pinned", "--l", "1"], &[("GAPSPEC_THREADS", "many")]);
    assert_eq!(env_text.status.code(), Some(EXIT_CONFIG));
    assert_eq!(
        binary(&["--config", cfg, "pinned"], &[]).status.code(),
        Some(EXIT_CONFIG)
    );
}

#[test]
fn band_sweep_is_thread_independent() {
    let args = ["band", "--l", "2", "--points", "40", "--format", "json"];
    let one = binary(&args, &[("GAPSPEC_THREADS", "1")]);
    let four = binary(&args, &[("GAPSPEC_THREADS", "4")]);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn binary_reports_version() {
    let o = binary(&["--version"], &[]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stdout).contains(env!("CARGO_PKG_VERSION")));
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e6f64..1e6,
        (-300i32..300, 1.0f64..10.0).prop_map(|(e, m)| m * 10f64.powi(e)),
    ]
}

proptest! {
    #[test]
    fn config_emit_parse_identity(
        beta in proptest::option::of(finite()),
        h in proptest::option::of(finite()),
        l in proptest::option::of(0usize..100),
        points in proptest::option::of(0usize..10_000),
        json in any::<bool>(),
    ) {
        let cfg = RunConfig {
            beta,
            h,
            l,
            points,
            format: Some(if json {
                gapspec::cli::config::Format::Json
            } else {
                gapspec::cli::config::Format::Csv
            }),
            mode: Some(gapspec::spectrum::Mode::Corrected),
            output: Some("out.csv".into()),
            ..RunConfig::default()
        };
        prop_assert_eq!(RunConfig::parse(&cfg.emit()).unwrap(), cfg);
    }
}
