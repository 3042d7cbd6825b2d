use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use reeskit::session::{parse_session, run, Report, RunOptions};

/// Run a reeskit session file and report per-command results.
#[derive(Debug, Parser)]
#[command(name = "reeskit", version)]
struct Cli {
    /// Session file; `-` reads standard input.
    file: PathBuf,
    /// Seed for randomized screens.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cap on polynomial reduction steps per Gröbner computation.
    #[arg(long)]
    budget: Option<u64>,
    /// Write the JSON report here; `-` prints it instead of the summary.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Stop at the first error or failing check.
    #[arg(long)]
    fail_fast: bool,
    /// Run independent commands concurrently.
    #[arg(long)]
    parallel: bool,
    /// Omit wall-clock timings, making reports byte-reproducible.
    #[arg(long)]
    no_timing: bool,
    /// Print the parsed session in canonical form and exit.
    #[arg(long)]
    print: bool,
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn summary(report: &Report) -> String {
    let mut out = String::new();
    for (k, c) in report.commands.iter().enumerate() {
        let status = match (&c.error, c.verdict) {
            (Some(e), _) => format!("error: {e}"),
            (None, Some(v)) => format!("{v:?}").to_lowercase(),
            (None, None) => "ok".to_string(),
        };
        let mut line = format!("[{}] {} {}: {status}", k + 1, c.name, c.args.join(" "));
        if c.error.is_none() && c.verdict.is_none() {
            line.push_str(&format!("\n    {}", c.result));
        }
        if let Some(ms) = c.timing_ms {
            line.push_str(&format!(" ({ms} ms)"));
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match read_input(&cli.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("reeskit: {e:#}");
            return ExitCode::from(2);
        }
    };
    let session = match parse_session(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("reeskit: {}: {e}", cli.file.display());
            return ExitCode::from(2);
        }
    };
    if cli.print {
        print!("{session}");
        return ExitCode::SUCCESS;
    }
    let opts = RunOptions {
        seed: cli.seed,
        budget: cli.budget,
        fail_fast: cli.fail_fast,
        parallel: cli.parallel,
        timing: !cli.no_timing,
    };
    let report = match run(&session, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("reeskit: {e}");
            return ExitCode::from(2);
        }
    };
    match &cli.json {
        Some(p) if p.as_os_str() == "-" => println!("{}", report.to_json()),
        Some(p) => {
            print!("{}", summary(&report));
            if let Err(e) = std::fs::write(p, report.to_json() + "\n") {
                eprintln!("reeskit: writing {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", summary(&report)),
    }
    if report.failed() {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
