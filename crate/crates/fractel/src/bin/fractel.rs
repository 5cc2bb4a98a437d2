//! Command-line front end: flag parsing and config-file merging around
//! `fractel::cli::run`. Flags win over `key=value` lines from `--config`.

use std::collections::HashMap;
use std::path::PathBuf;
use std::process::exit;

use clap::{Args, Parser, Subcommand};
use fractel::cli::{self, Command, GridSpec, Params, RunConfig};

#[derive(Parser)]
#[command(
    name = "fractel",
    version,
    about = "Telegraph-type processes, stable time changes, and their verification checks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Draw Monte Carlo samples and write them as CSV
    Sample(OpArgs),
    /// Tabulate a density on a grid
    Density(OpArgs),
    /// Evaluate a characteristic function
    Char(OpArgs),
    /// Run one named verification suite
    Verify {
        /// roletelegraph, airy-onethird, planar-frak, or frac-ode
        suite: Option<String>,
        #[command(flatten)]
        args: OpArgs,
    },
    /// Run every verification suite and write a combined report
    Report(OpArgs),
}

#[derive(Args, Default)]
struct OpArgs {
    /// Optional key=value file supplying defaults for the flags below
    #[arg(long)]
    config: Option<PathBuf>,
    /// What to sample, tabulate, or evaluate (see the README for kinds)
    #[arg(long)]
    kind: Option<String>,
    /// Stability order of the time change, in (0, 1/2]
    #[arg(long)]
    nu: Option<f64>,
    /// Spatial stability index, in (0, 1]
    #[arg(long)]
    beta: Option<f64>,
    /// Switching rate of the telegraph process
    #[arg(long)]
    lambda: Option<f64>,
    /// Speed of the telegraph process
    #[arg(long)]
    c: Option<f64>,
    /// Spatial dimension; for verify, the sample count
    #[arg(long)]
    n: Option<usize>,
    /// Evaluation time
    #[arg(long)]
    t: Option<f64>,
    /// Number of Monte Carlo draws
    #[arg(long)]
    count: Option<usize>,
    /// RNG seed; identical configurations give byte-identical output
    #[arg(long)]
    seed: Option<u64>,
    /// Evaluation grid as min,max,steps
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Frequency vector as comma-separated reals
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<String>,
    /// Output CSV path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write an SVG line plot next to the CSV
    #[arg(long)]
    emit_svg: bool,
}

fn fail(msg: &str) -> ! {
    eprintln!("invalid configuration: {msg}");
    exit(2);
}

fn read_config(path: &PathBuf) -> HashMap<String, String> {
    let text = std::fs::read_to_string(path)
        .unwrap_or_else(|e| fail(&format!("cannot read {}: {e}", path.display())));
    let mut map = HashMap::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line.split_once('=') {
            Some((k, v)) => {
                map.insert(k.trim().to_string(), v.trim().to_string());
            }
            None => fail(&format!("config line without '=': {line}")),
        }
    }
    map
}

fn parsed<T: std::str::FromStr>(file: &HashMap<String, String>, key: &str) -> Option<T> {
    file.get(key).map(|raw| {
        raw.parse()
            .unwrap_or_else(|_| fail(&format!("config key {key}: cannot parse '{raw}'")))
    })
}

fn parse_grid(raw: &str) -> GridSpec {
    let parts: Vec<&str> = raw.split(',').collect();
    if parts.len() != 3 {
        fail("grid must be min,max,steps");
    }
    let min = parts[0]
        .trim()
        .parse()
        .unwrap_or_else(|_| fail("grid min is not a number"));
    let max = parts[1]
        .trim()
        .parse()
        .unwrap_or_else(|_| fail("grid max is not a number"));
    let steps = parts[2]
        .trim()
        .parse()
        .unwrap_or_else(|_| fail("grid steps is not an integer"));
    GridSpec { min, max, steps }
}

fn parse_xi(raw: &str) -> Vec<f64> {
    raw.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .unwrap_or_else(|_| fail(&format!("xi entry is not a number: '{s}'")))
        })
        .collect()
}

fn build(command: Command, suite: Option<String>, args: OpArgs) -> RunConfig {
    let file = args
        .config
        .as_ref()
        .map(read_config)
        .unwrap_or_default();
    let n = args.n.or_else(|| parsed(&file, "n"));
    let is_verify = matches!(command, Command::Verify | Command::Report);
    let count = args
        .count
        .or_else(|| parsed(&file, "count"))
        .or(if is_verify { n } else { None })
        .unwrap_or(10_000);
    RunConfig {
        command,
        params: Params {
            kind: args.kind.or_else(|| file.get("kind").cloned()),
            suite: suite.or_else(|| file.get("suite").cloned()),
            nu: args.nu.or_else(|| parsed(&file, "nu")),
            beta: args.beta.or_else(|| parsed(&file, "beta")),
            lambda: args.lambda.or_else(|| parsed(&file, "lambda")),
            c: args.c.or_else(|| parsed(&file, "c")),
            n: if is_verify { None } else { n },
            xi: args
                .xi
                .as_deref()
                .or(file.get("xi").map(String::as_str))
                .map(parse_xi),
        },
        t: args.t.or_else(|| parsed(&file, "t")).unwrap_or(1.0),
        count,
        seed: args.seed.or_else(|| parsed(&file, "seed")).unwrap_or(0),
        grid: args
            .grid
            .as_deref()
            .or(file.get("grid").map(String::as_str))
            .map(parse_grid),
        out_path: args.out.or_else(|| file.get("out").map(PathBuf::from)),
        emit_svg: args.emit_svg || parsed(&file, "emit-svg").unwrap_or(false),
    }
}

fn main() {
    let cli = Cli::parse();
    let config = match cli.cmd {
        Cmd::Sample(args) => build(Command::Sample, None, args),
        Cmd::Density(args) => build(Command::Density, None, args),
        Cmd::Char(args) => build(Command::Char, None, args),
        Cmd::Verify { suite, args } => build(Command::Verify, suite, args),
        Cmd::Report(args) => build(Command::Report, None, args),
    };
    exit(cli::run(&config));
}
