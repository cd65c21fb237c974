use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use levelzero_cli::config::{Job, JobConfig};
use levelzero_cli::error::CliError;
use levelzero_cli::{run, Command};

/// Level-zero decomposition tables for small reductive groups.
#[derive(Parser, Debug)]
#[command(name = "levelzero", version)]
struct Args {
    command: Command,
    /// GL, SL, PGL, Sp, SOodd, SOeven, SOeven_quasisplit, U, custom
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    ell: Option<u64>,
    #[arg(long, value_parser = ["ql", "zl"])]
    regime: Option<String>,
    /// Only semisimple s with N s = 0; defaults to q^(2 ord ϑ) − 1.
    #[arg(long)]
    order_bound: Option<u64>,
    #[arg(long)]
    json: bool,
    /// Hyperspecial vertex used to match systems with ker h, e.g. v0.
    #[arg(long)]
    base_vertex: Option<String>,
    /// JSON file with the same fields as the flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn job(args: &Args) -> Result<Job, CliError> {
    let file = match &args.config {
        Some(p) => JobConfig::load(p)?,
        None => JobConfig::default(),
    };
    let flags = JobConfig {
        group: args.group.clone(),
        n: args.n,
        q: args.q,
        p: args.p,
        ell: args.ell,
        regime: args.regime.clone(),
        order_bound: args.order_bound,
        base_vertex: args.base_vertex.clone(),
        json: args.json.then_some(true),
        datum: None,
    };
    Job::from_config(&file.overlay(flags))
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(k) = std::env::var("LEVELZERO_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
    let result = job(&args).and_then(|j| run(args.command, &j).map(|r| (j, r)));
    match result {
        Ok((j, report)) => {
            let body = if j.json {
                serde_json::to_string_pretty(&report.json).expect("report serializes") + "\n"
            } else {
                report.text
            };
            // a closed pipe is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            if report.failed > 0 {
                let e = CliError::ChecksFailed(report.failed);
                eprintln!("levelzero: {e}");
                return ExitCode::from(e.code() as u8);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("levelzero: {e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
