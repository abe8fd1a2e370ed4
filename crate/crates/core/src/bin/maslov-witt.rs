use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use maslov_witt_core::cli::{self, props, EXIT_INPUT};

#[derive(Parser)]
#[command(name = "maslov-witt", version, about = "Exact Witt-group, Maslov-index and Sturm-sequence computations")]
struct Args {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the tasks of a scenario file.
    Run {
        scenario: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a property family, or `all`.
    Props {
        family: String,
        #[arg(long)]
        cases: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn seed(flag: Option<u64>) -> Result<u64, String> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(cli::SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{} is not an unsigned integer: {v:?}", cli::SEED_ENV)),
        Err(_) => Ok(0),
    }
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("maslov-witt: {msg}");
    ExitCode::from(EXIT_INPUT as u8)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT as u8) } else { ExitCode::SUCCESS };
        }
    };
    match args.cmd {
        Cmd::Run { scenario, seed: s, out } => {
            let seed = match seed(s) {
                Ok(s) => s,
                Err(e) => return input_error(e),
            };
            let text = match std::fs::read_to_string(&scenario) {
                Ok(t) => t,
                Err(e) => return input_error(format!("{}: {e}", scenario.display())),
            };
            let sc = match cli::parse_scenario(&text) {
                Ok(sc) => sc,
                Err(e) => return input_error(format!("{}: {e}", scenario.display())),
            };
            let report = cli::run(&sc, seed);
            let rendered = report.render();
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, &rendered) {
                        return input_error(format!("{}: {e}", path.display()));
                    }
                }
                None => print!("{rendered}"),
            }
            ExitCode::from(cli::exit_code(&report) as u8)
        }
        Cmd::Props { family, cases, seed: s } => {
            let seed = match seed(s) {
                Ok(s) => s,
                Err(e) => return input_error(e),
            };
            let names: Vec<&str> = if family == "all" {
                props::FAMILIES.iter().map(|f| f.name).collect()
            } else {
                vec![family.as_str()]
            };
            match cli::run_props(&names, cases, seed) {
                Ok(report) => {
                    print!("{}", report.render());
                    ExitCode::from(cli::exit_code(&report) as u8)
                }
                Err(e) => input_error(e),
            }
        }
    }
}
