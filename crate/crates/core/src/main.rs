use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde_json::json;

use tits_core::cli_reports::{parse_descriptor, run_command, Command, RunOptions};

#[derive(Clone, Copy, ValueEnum)]
enum Cmd {
    Describe,
    VerifyCoxeter,
    FtgIdentities,
    SesCheck,
    DescentCheck,
    HeckeCheck,
    EmitPresentation,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Command {
        match c {
            Cmd::Describe => Command::Describe,
            Cmd::VerifyCoxeter => Command::VerifyCoxeter,
            Cmd::FtgIdentities => Command::FtgIdentities,
            Cmd::SesCheck => Command::SesCheck,
            Cmd::DescentCheck => Command::DescentCheck,
            Cmd::HeckeCheck => Command::HeckeCheck,
            Cmd::EmitPresentation => Command::EmitPresentation,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Tits groups of Iwahori-Weyl groups and their Hecke algebras.
///
/// Without a descriptor each command runs its default sweep.
#[derive(Parser)]
#[command(name = "tits", version)]
struct Cli {
    #[arg(value_enum)]
    command: Cmd,
    /// Descriptor files; `-` reads stdin.
    descriptors: Vec<String>,
    /// Inline descriptor text, e.g. "type=A rank=2 isogeny=sc".
    #[arg(short = 'e', long = "expr")]
    exprs: Vec<String>,
    /// Word radius and Hecke length bound.
    #[arg(long, default_value_t = 6)]
    radius: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Add E7 configurations to the default sweeps.
    #[arg(long)]
    include_e7: bool,
    /// Level of the emitted presentation.
    #[arg(long, default_value_t = 0)]
    level: usize,
    /// Random triples for the Hecke checks.
    #[arg(long, default_value_t = 500)]
    triples: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn usage_error(msg: String) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut texts = Vec::new();
    for path in &cli.descriptors {
        let text = if path == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s)
        } else {
            std::fs::read_to_string(path)
        };
        match text {
            Ok(t) => texts.push((path.clone(), t)),
            Err(e) => return usage_error(format!("{path}: {e}")),
        }
    }
    texts.extend(cli.exprs.iter().map(|e| ("--expr".to_string(), e.clone())));
    let mut descriptors = Vec::new();
    for (src, t) in &texts {
        match parse_descriptor(t) {
            Ok(d) => descriptors.push(d),
            Err(e) => return usage_error(format!("{src}: {e}")),
        }
    }
    let opts = RunOptions {
        radius: cli.radius,
        seed: cli.seed,
        include_e7: cli.include_e7,
        level: cli.level,
        triples: cli.triples,
    };
    let start = Instant::now();
    let report = match run_command(cli.command.into(), &descriptors, &opts) {
        Ok(r) => r,
        Err(e) => return usage_error(e.to_string()),
    };
    match cli.format {
        Format::Json => {
            let out = json!({"body": report, "timing_ms": start.elapsed().as_millis() as u64});
            println!("{}", serde_json::to_string_pretty(&out).expect("report serializes"));
        }
        Format::Text => print!("{}", report.to_text()),
    }
    ExitCode::from(report.exit_code() as u8)
}
