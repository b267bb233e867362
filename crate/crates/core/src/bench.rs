//! Gate-count and compile-time comparison between the pass pipelines and the
//! naive translation, over a family of TFIM circuits.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::compile::{compile, naive_translate, CompileError, Target};
use crate::ir::{Circuit, GateKind};
use crate::sim::{circuit_unitary, equiv_diagonal, oracle_max_qubits, SimError};
use crate::tfim::{generate_circuits, FieldWaveform, TfimError, TfimParams};

/// Tolerance of the diagonal-equivalence check on compiled outputs.
pub const ORACLE_TOL: f64 = 1e-9;

pub const CSV_HEADER: &str =
    "target,N,k,naive_count,compiled_count,abs_reduction,pct_reduction,naive_time_ms,compiled_time_ms,oracle_pass";

/// Native-gate cost of each kind when comparing IBM basis circuits.
pub fn kind_weight(kind: GateKind) -> usize {
    match kind {
        GateKind::U2 => 3,
        GateKind::U3 => 5,
        GateKind::Measure => 0,
        _ => 1,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedGateCount {
    pub counts: BTreeMap<GateKind, usize>,
    pub total: usize,
}

pub fn weighted_count(circuit: &Circuit) -> WeightedGateCount {
    let mut counts = BTreeMap::new();
    for g in circuit.gates() {
        *counts.entry(g.kind()).or_insert(0) += 1;
    }
    let total = counts.iter().map(|(&k, &c)| c * kind_weight(k)).sum();
    WeightedGateCount { counts, total }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub target: Target,
    pub n_qubits: usize,
    pub step: usize,
    pub naive_count: usize,
    pub compiled_count: usize,
    /// `naive_count − compiled_count`; negative when the pipeline loses.
    pub abs_reduction: i64,
    pub pct_reduction: f64,
    pub naive_time_ms: f64,
    pub compiled_time_ms: f64,
    /// `None` when the circuit is too wide for the oracle.
    pub oracle_pass: Option<bool>,
}

impl BenchRow {
    pub fn to_csv_line(&self) -> String {
        let oracle = match self.oracle_pass {
            Some(true) => "true",
            Some(false) => "false",
            None => "",
        };
        format!(
            "{},{},{},{},{},{},{:.4},{:.6},{:.6},{}",
            self.target,
            self.n_qubits,
            self.step,
            self.naive_count,
            self.compiled_count,
            self.abs_reduction,
            self.pct_reduction,
            self.naive_time_ms,
            self.compiled_time_ms,
            oracle
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub qubits: Vec<usize>,
    pub steps: usize,
    pub dt: f64,
    pub j_z: f64,
    pub field: FieldWaveform,
    pub targets: Vec<Target>,
    pub repeat: usize,
    /// Check compiled outputs with the oracle when the width allows.
    pub verify: bool,
}

impl BenchConfig {
    pub fn new(qubits: Vec<usize>, steps: usize) -> Self {
        BenchConfig {
            qubits,
            steps,
            dt: TfimParams::DEFAULT_DT,
            j_z: TfimParams::DEFAULT_J_Z,
            field: FieldWaveform::Sinusoid {
                amplitude: TfimParams::DEFAULT_FIELD_AMPLITUDE,
                angular_frequency: TfimParams::DEFAULT_FIELD_FREQUENCY,
                phase: 0.0,
            },
            targets: Target::ALL.to_vec(),
            repeat: 1,
            verify: true,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("repeat count must be at least 1")]
    NoRepeats,
    #[error(transparent)]
    Params(#[from] TfimError),
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Oracle(#[from] SimError),
}

fn mean_time<T>(repeat: usize, mut f: impl FnMut() -> Result<T, CompileError>) -> Result<(T, f64), CompileError> {
    let mut total = 0.0;
    let mut last = None;
    for _ in 0..repeat {
        let start = Instant::now();
        let out = f()?;
        total += start.elapsed().as_secs_f64() * 1e3;
        last = Some(out);
    }
    Ok((last.expect("repeat ≥ 1"), total / repeat as f64))
}

/// One row of the comparison for a single circuit.
pub fn bench_circuit(
    circuit: &Circuit,
    target: Target,
    step: usize,
    repeat: usize,
    verify: bool,
) -> Result<BenchRow, BenchError> {
    if repeat == 0 {
        return Err(BenchError::NoRepeats);
    }
    let (naive, naive_time_ms) = mean_time(repeat, || naive_translate(circuit, target))?;
    let ((compiled, _), compiled_time_ms) = mean_time(repeat, || compile(circuit, target))?;
    let oracle_pass = if verify && circuit.n_qubits() <= oracle_max_qubits() {
        let u_in = circuit_unitary(circuit)?;
        let u_out = circuit_unitary(&compiled)?;
        Some(equiv_diagonal(&u_in, &u_out, ORACLE_TOL)?)
    } else {
        None
    };
    let abs_reduction = naive.len() as i64 - compiled.len() as i64;
    let pct_reduction = if naive.is_empty() {
        0.0
    } else {
        100.0 * abs_reduction as f64 / naive.len() as f64
    };
    Ok(BenchRow {
        target,
        n_qubits: circuit.n_qubits(),
        step,
        naive_count: naive.len(),
        compiled_count: compiled.len(),
        abs_reduction,
        pct_reduction,
        naive_time_ms,
        compiled_time_ms,
        oracle_pass,
    })
}

/// Rows for every target, qubit count and step, grouped by target and then
/// sorted by `(N, k)`.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRow>, BenchError> {
    if config.repeat == 0 {
        return Err(BenchError::NoRepeats);
    }
    let mut qubits = config.qubits.clone();
    qubits.sort_unstable();
    qubits.dedup();
    let mut families = Vec::with_capacity(qubits.len());
    for &n in &qubits {
        let params = TfimParams::new(n, config.j_z, config.field, config.dt, config.steps)?;
        families.push(generate_circuits(&params));
    }
    let mut rows = Vec::new();
    for &target in &config.targets {
        for circuits in &families {
            for (i, c) in circuits.iter().enumerate() {
                rows.push(bench_circuit(c, target, i + 1, config.repeat, config.verify)?);
            }
        }
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(out, "{}", r.to_csv_line()).expect("writing to a String");
    }
    out
}
