//! Driving the command line in-process with a config file plus overrides.

use gapspec::cli::config::RunConfig;
use gapspec::cli::run_to;

fn main() {
    let cfg = RunConfig::parse("# twice the canonical frequencies\nomega_perp = 2\nomega_par = 2.4\nomega12 = 2.2\nformat = csv\n")
        .expect("valid config");
    let dir = std::env::temp_dir().join("gapspec-example.cfg");
    std::fs::write(&dir, cfg.emit()).expect("writable temp dir");

    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_to(
        [
            "gapspec",
            "--config",
            dir.to_str().unwrap(),
            "--format",
            "json",
            "pinned",
            "--l",
            "2",
        ],
        &mut out,
        &mut err,
    );
    println!("exit {code}");
    print!("{}", String::from_utf8_lossy(&out));
    eprint!("{}", String::from_utf8_lossy(&err));
}
