//! Command-line front end: data ingestion, statistic computation, prediction
//! comparison, and CSV/JSON report emission.

use clap::Parser;
use std::path::PathBuf;
use std::process::ExitCode;
use zetalab::runner::{self, Command, RunConfig};

#[derive(Parser, Debug)]
#[command(
    name = "zetalab",
    about = "correlation statistics of Riemann zeta zeros vs. their predicted values",
    after_help = "commands: ingest | pcf | tpcf | tcf | landau | moments | predict | compare <moments|mixed|pcf|tpcf> | selfcheck"
)]
struct Cli {
    /// command to run
    command: String,

    /// compare target (moments, mixed, pcf, tpcf)
    target: Option<String>,

    /// zero-ordinate file (plain text or .gz)
    #[arg(long, default_value = "data/zeros_10k.txt")]
    zeros: PathBuf,

    /// window base height T (defaults to the largest covered T)
    #[arg(long = "T")]
    t: Option<f64>,

    /// prime-power twist list, comma separated
    #[arg(long = "n", value_delimiter = ',', default_value = "2,3,4")]
    n_list: Vec<u64>,

    /// alpha grid LO:HI:STEP
    #[arg(long, default_value = "0:0.8:0.05")]
    alpha: String,

    /// named test kernel (fejer, fejer2, fejer05, gauss)
    #[arg(long, default_value = "fejer")]
    kernel: String,

    /// smoothing parameter U (defaults to (log T)^2)
    #[arg(long = "U")]
    u_param: Option<f64>,

    /// prime cutoff x for the P/Z decomposition
    #[arg(long)]
    x: Option<f64>,

    /// output format
    #[arg(long, default_value = "csv", value_parser = ["csv", "json"])]
    out: String,

    /// report file path (stdout if omitted)
    #[arg(long)]
    out_file: Option<PathBuf>,

    /// worker threads
    #[arg(long, default_value_t = 1)]
    threads: usize,

    /// seed for the Monte-Carlo cross-checks
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// pair-band radius override (t units)
    #[arg(long)]
    band_delta: Option<f64>,
}

fn parse_grid(s: &str) -> Result<(f64, f64, f64), String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("alpha grid must be LO:HI:STEP, got {s:?}"));
    }
    let nums: Result<Vec<f64>, _> = parts.iter().map(|p| p.parse::<f64>()).collect();
    match nums {
        Ok(v) => Ok((v[0], v[1], v[2])),
        Err(e) => Err(format!("bad alpha grid {s:?}: {e}")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let alpha_grid = match parse_grid(&cli.alpha) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("{{\"error\":\"config\",\"detail\":\"{e}\"}}");
            return ExitCode::from(2);
        }
    };
    let cmd = match Command::parse(&cli.command, cli.target.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{{\"error\":\"config\",\"detail\":\"{e}\"}}");
            return ExitCode::from(2);
        }
    };
    let cfg = RunConfig {
        zeros_path: cli.zeros,
        t: cli.t,
        n_list: cli.n_list,
        alpha_grid,
        kernel: cli.kernel,
        u_param: cli.u_param,
        x: cli.x,
        json: cli.out == "json",
        out_path: cli.out_file,
        threads: cli.threads,
        seed: cli.seed,
        band_delta: cli.band_delta,
    };
    match runner::run(cmd, &cfg) {
        Ok(report) => {
            let body = if cfg.json {
                report.to_json()
            } else {
                report.to_csv()
            };
            match &cfg.out_path {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, &body) {
                        eprintln!("{{\"error\":\"data\",\"detail\":\"{e}\"}}");
                        return ExitCode::from(3);
                    }
                }
                None => print!("{body}"),
            }
            if runner::selfcheck_failed(&report) {
                eprintln!("{{\"error\":\"numeric\",\"detail\":\"selfcheck failed\"}}");
                return ExitCode::from(4);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let class = match e.exit_code() {
                2 => "config",
                3 => "data",
                _ => "numeric",
            };
            eprintln!(
                "{{\"error\":\"{class}\",\"detail\":\"{}\"}}",
                e.to_string().replace('"', "'")
            );
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
