//! The `tfim-qcc` command line: `generate`, `compile` and `bench`.
//!
//! Exit codes are 0 on success, 1 for usage or I/O errors and 2 when an
//! oracle check fails.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::bench::{run_bench, to_csv, BenchConfig, ORACLE_TOL};
use crate::compile::{CompileOptions, CompileReport, PassPipeline, Target};
use crate::ir::{deserialize, serialize, Circuit};
use crate::sim::{circuit_unitary, equiv_diagonal, oracle_max_qubits};
use crate::tfim::{generate_circuits, FieldWaveform, TfimParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "tfim-qcc", version, about = "TFIM circuit generator and domain-specific compiler")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write one circuit file per time-step.
    Generate {
        #[command(flatten)]
        model: ModelArgs,
        /// Output directory (created if missing).
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Compile circuit files for a target, writing the result and a report.
    Compile {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, value_parser = parse_target)]
        target: Target,
        /// Check each output against its input with the unitary oracle.
        #[arg(long)]
        verify: bool,
        /// Keep trailing diagonal gates.
        #[arg(long)]
        no_elide: bool,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Print a gate-count and compile-time comparison as CSV.
    Bench {
        #[command(flatten)]
        model: ModelArgs,
        /// Defaults to both targets.
        #[arg(long, value_parser = parse_target)]
        target: Option<Target>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        repeat: u64,
        /// Skip the oracle column.
        #[arg(long)]
        no_verify: bool,
    },
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Number of spins, or a comma-separated list.
    #[arg(long, value_parser = parse_qubits)]
    qubits: QubitList,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    steps: u64,
    #[arg(long, default_value_t = TfimParams::DEFAULT_DT, value_parser = parse_positive)]
    dt: f64,
    #[arg(long, default_value_t = TfimParams::DEFAULT_J_Z, allow_hyphen_values = true, value_parser = parse_finite)]
    jz: f64,
    #[arg(long, default_value_t = TfimParams::DEFAULT_FIELD_AMPLITUDE, allow_hyphen_values = true, value_parser = parse_finite)]
    field_amp: f64,
    /// Angular frequency of the transverse field.
    #[arg(long, default_value_t = TfimParams::DEFAULT_FIELD_FREQUENCY, allow_hyphen_values = true, value_parser = parse_finite)]
    field_freq: f64,
}

impl ModelArgs {
    fn field(&self) -> FieldWaveform {
        FieldWaveform::Sinusoid {
            amplitude: self.field_amp,
            angular_frequency: self.field_freq,
            phase: 0.0,
        }
    }
}

#[derive(Debug, Clone)]
struct QubitList(Vec<usize>);

fn parse_qubits(s: &str) -> Result<QubitList, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let n: usize = part
            .trim()
            .parse()
            .map_err(|_| format!("{part:?} is not a qubit count"))?;
        if n < 2 {
            return Err(format!("need at least 2 qubits, got {n}"));
        }
        out.push(n);
    }
    Ok(QubitList(out))
}

fn parse_target(s: &str) -> Result<Target, String> {
    s.parse().map_err(|e: crate::compile::UnknownTarget| e.to_string())
}

fn parse_finite(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("{s:?} is not a finite number")),
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    match parse_finite(s)? {
        v if v > 0.0 => Ok(v),
        _ => Err(format!("{s:?} must be positive")),
    }
}

#[derive(Debug, Serialize)]
struct CompileFileReport<'a> {
    input: &'a str,
    output: &'a str,
    #[serde(flatten)]
    report: &'a CompileReport,
    oracle_pass: Option<bool>,
}

struct Failure(i32, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure(EXIT_USAGE, format!("cannot write {}: {e}", path.display())))
}

fn create_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure(EXIT_USAGE, format!("cannot create {}: {e}", dir.display())))
}

fn cmd_generate(model: &ModelArgs, out: &Path, stdout: &mut dyn Write) -> Result<(), Failure> {
    create_dir(out)?;
    for &n in &model.qubits.0 {
        let params = TfimParams::new(n, model.jz, model.field(), model.dt, model.steps as usize)?;
        for (i, c) in generate_circuits(&params).iter().enumerate() {
            let path = out.join(format!("tfim_N{n}_k{}.json", i + 1));
            write_file(&path, &serialize(c))?;
            writeln!(stdout, "{} ({} gates)", path.display(), c.len())?;
        }
    }
    Ok(())
}

fn verify(input: &Circuit, output: &Circuit) -> Result<Option<bool>, Failure> {
    if input.n_qubits() > oracle_max_qubits() {
        return Ok(None);
    }
    let u_in = circuit_unitary(input)?;
    let u_out = circuit_unitary(output)?;
    Ok(Some(equiv_diagonal(&u_in, &u_out, ORACLE_TOL)?))
}

fn cmd_compile(
    inputs: &[PathBuf],
    target: Target,
    check: bool,
    elide: bool,
    out: &Path,
    stdout: &mut dyn Write,
) -> Result<(), Failure> {
    create_dir(out)?;
    let pipeline = PassPipeline::for_target(target);
    let options = CompileOptions { elide_trailing: elide };
    let mut failed = Vec::new();
    for input in inputs {
        let text = fs::read_to_string(input).map_err(|e| Failure(EXIT_USAGE, format!("cannot read {}: {e}", input.display())))?;
        let circuit = deserialize(&text).map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", input.display())))?;
        let (compiled, report) = pipeline
            .run(&circuit, &options)
            .map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", input.display())))?;
        let oracle_pass = if check { verify(&circuit, &compiled)? } else { None };
        let stem = input.file_stem().map_or_else(|| "circuit".into(), |s| s.to_string_lossy().into_owned());
        let out_path = out.join(format!("{stem}.{target}.json"));
        let report_path = out.join(format!("{stem}.{target}.report.json"));
        write_file(&out_path, &serialize(&compiled))?;
        let file_report = CompileFileReport {
            input: &input.to_string_lossy(),
            output: &out_path.to_string_lossy(),
            report: &report,
            oracle_pass,
        };
        write_file(&report_path, &serde_json::to_string_pretty(&file_report)?)?;
        let status = match oracle_pass {
            Some(true) => " oracle ok",
            Some(false) => " ORACLE FAILED",
            None if check => " oracle skipped (too many qubits)",
            None => "",
        };
        writeln!(
            stdout,
            "{}: {} -> {} gates{status}",
            out_path.display(),
            report.input_gates,
            report.output_gates
        )?;
        if oracle_pass == Some(false) {
            failed.push(input.display().to_string());
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure(EXIT_VERIFY, format!("verification failed for {}", failed.join(", "))))
    }
}

fn cmd_bench(model: &ModelArgs, target: Option<Target>, repeat: u64, check: bool, stdout: &mut dyn Write) -> Result<(), Failure> {
    let config = BenchConfig {
        qubits: model.qubits.0.clone(),
        steps: model.steps as usize,
        dt: model.dt,
        j_z: model.jz,
        field: model.field(),
        targets: target.map_or_else(|| Target::ALL.to_vec(), |t| vec![t]),
        repeat: repeat as usize,
        verify: check,
    };
    let rows = run_bench(&config)?;
    stdout.write_all(to_csv(&rows).as_bytes())?;
    let failed = rows.iter().filter(|r| r.oracle_pass == Some(false)).count();
    if failed > 0 {
        return Err(Failure(EXIT_VERIFY, format!("{failed} row(s) failed the oracle check")));
    }
    Ok(())
}

/// Runs the command line with explicit arguments (including the program
/// name) and output streams, returning the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let result = match &cli.command {
        Command::Generate { model, out } => cmd_generate(model, out, stdout),
        Command::Compile {
            inputs,
            target,
            verify,
            no_elide,
            out,
        } => cmd_compile(inputs, *target, *verify, !*no_elide, out, stdout),
        Command::Bench {
            model,
            target,
            repeat,
            no_verify,
        } => cmd_bench(model, *target, *repeat, !*no_verify, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure(code, message)) => {
            let _ = writeln!(stderr, "error: {message}");
            code
        }
    }
}
