//! Thin command-line driver. All logic lives in the library; see the
//! `examples/` directory for the embedded-use equivalents.

use corotate::config::{parse_config, USAGE};
use corotate::runner::run;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() || args.iter().any(|a| a == "--help" || a == "-h") {
        print!("{USAGE}");
        std::process::exit(if args.is_empty() { 1 } else { 0 });
    }

    let config = match parse_config(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("corotate: {e}");
            eprintln!("run `corotate --help` for usage");
            std::process::exit(1);
        }
    };

    match run(&config) {
        Ok(outcome) => {
            if outcome.dipole_warning {
                eprintln!(
                    "corotate: warning: k·a0 above 1e-2 somewhere on the grid; \
                     the dipole-limit coupling is getting marginal"
                );
            }
            eprintln!(
                "corotate: {} -> {} ({} grid point(s), {} failure(s), {:.2}s)",
                config.mode.name(),
                outcome.out_path.display(),
                outcome.grid_points,
                outcome.point_failures,
                outcome.wall_seconds
            );
            std::process::exit(outcome.exit_code);
        }
        Err(e) => {
            eprintln!("corotate: {e}");
            std::process::exit(1);
        }
    }
}
