use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use seifert_cli::batch::run_batch;
use seifert_cli::render::pretty;
use seifert_cli::{parse_job, run_job, CliError, Command, Format, Overrides};

/// Environment variable holding the default worker count.
const THREADS_ENV: &str = "SEIFERT_THREADS";

#[derive(Parser)]
#[command(name = "seifert", version, about = "Graph invariants, Hilbert series and embedding dimension from Seifert data")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// Highest degree computed (default: the stabilization bound)
    #[arg(long, global = true, allow_negative_numbers = true)]
    lmax: Option<i64>,
    /// Random parameter points per undecided degree
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Explicit parameters, e.g. "p3=2,p4=5,p5=-1/3"
    #[arg(long, global = true)]
    params: Option<String>,
    /// Worker threads (default: $SEIFERT_THREADS, else all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Pretty,
}

#[derive(Args)]
struct Input {
    /// JSON or TOML file; `-` reads stdin
    #[arg(default_value = "-")]
    input: String,
}

#[derive(Subcommand)]
enum Sub {
    /// Graph, e, alpha, o, gamma, |H|, Z, Z_K, p_a, p_g
    Invariants(Input),
    /// P_GX, P_H1 and the rational form of the Hilbert series
    Hilbert(Input),
    /// Generic Poincare polynomial of m/m^2 and embedding dimension
    Embdim(Input),
    /// Like embdim, with discriminants and witness search
    Analyze(Input),
    /// Compare the main path with the monomial oracle
    Check(Input),
    /// One JSON job per line in, one JSON result per line out
    Batch(Input),
}

fn read_input(path: &str) -> Result<String, CliError> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("reading {path}: {e}")))?;
    }
    Ok(text)
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("{THREADS_ENV}={v:?} is not a thread count"))),
        Err(_) => Ok(None),
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    if let Some(n) = thread_count(cli.opts.threads)? {
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let format = match cli.opts.format {
        FormatArg::Json => Format::Json,
        FormatArg::Pretty => Format::Pretty,
    };
    let mut over = Overrides {
        command: None,
        l_max: cli.opts.lmax,
        trials: cli.opts.trials,
        seed: cli.opts.seed,
        params: cli.opts.params,
        format,
    };
    let (command, input) = match cli.command {
        Sub::Invariants(i) => (Some(Command::Invariants), i),
        Sub::Hilbert(i) => (Some(Command::Hilbert), i),
        Sub::Embdim(i) => (Some(Command::Embdim), i),
        Sub::Analyze(i) => (Some(Command::Analyze), i),
        Sub::Check(i) => (Some(Command::Check), i),
        Sub::Batch(i) => (None, i),
    };
    let text = read_input(&input.input)?;
    let mut stdout = std::io::stdout().lock();
    let Some(command) = command else {
        let (lines, code) = run_batch(&text, &over);
        for line in lines {
            writeln!(stdout, "{line}").map_err(|e| CliError::Usage(e.to_string()))?;
        }
        return Ok(code);
    };
    over.command = Some(command);
    let job = parse_job(&text, &over)?;
    let out = run_job(&job)?;
    let rendered = match job.format {
        Format::Json => serde_json::to_string_pretty(&out.value).expect("JSON values always serialize") + "\n",
        Format::Pretty => pretty(&out.value),
    };
    stdout
        .write_all(rendered.as_bytes())
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(out.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("seifert: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
