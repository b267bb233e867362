//! Dense unitary and statevector simulation, used as a correctness oracle.
//!
//! Qubit 0 is the most significant bit of a basis-state index. Gate
//! conventions:
//!
//! * `RZ(θ) = diag(e^{-iθ/2}, e^{iθ/2})`
//! * `RX(θ) = cos(θ/2)·I − i·sin(θ/2)·X`
//! * `U1(λ) = diag(1, e^{iλ})`
//! * `U2` and `U3` through their native `RZ`/`RX(π/2)` expansions.
//!
//! `MEASURE` gates are ignored.

use std::env;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::ir::{Circuit, Gate, GateKind};

/// Environment variable overriding [`DEFAULT_MAX_QUBITS`].
pub const MAX_QUBITS_ENV: &str = "TFIM_QCC_ORACLE_MAX_QUBITS";
pub const DEFAULT_MAX_QUBITS: usize = 10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("{n_qubits} qubits exceeds the oracle limit of {limit}")]
    TooManyQubits { n_qubits: usize, limit: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("input bitstring {0:?} is not {1} characters of 0/1")]
    BadBitstring(String, usize),
}

/// The oracle scale guard: `TFIM_QCC_ORACLE_MAX_QUBITS` if set to an
/// integer, otherwise 10.
pub fn oracle_max_qubits() -> usize {
    env::var(MAX_QUBITS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_QUBITS)
}

pub(crate) fn check_scale(n_qubits: usize) -> Result<(), SimError> {
    let limit = oracle_max_qubits();
    if n_qubits > limit {
        Err(SimError::TooManyQubits { n_qubits, limit })
    } else {
        Ok(())
    }
}

/// A dense square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct UnitaryMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl fmt::Debug for UnitaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "UnitaryMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            for c in 0..self.dim {
                let z = self.get(r, c);
                write!(f, " {:+.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl UnitaryMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        UnitaryMatrix { dim, data }
    }

    /// # Panics
    /// If `data.len() != dim * dim`.
    pub fn from_row_major(dim: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), dim * dim, "row-major data must be dim*dim");
        UnitaryMatrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for r in 0..n {
            for c in 0..n {
                data[c * n + r] = self.data[r * n + c].conj();
            }
        }
        UnitaryMatrix { dim: n, data }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, SimError> {
        if self.dim != other.dim {
            return Err(SimError::DimensionMismatch(self.dim, other.dim));
        }
        let n = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for r in 0..n {
            let out = &mut data[r * n..(r + 1) * n];
            for k in 0..n {
                let a = self.data[r * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                for (o, &b) in out.iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Ok(UnitaryMatrix { dim: n, data })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        UnitaryMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    /// Largest entry-wise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64, SimError> {
        if self.dim != other.dim {
            return Err(SimError::DimensionMismatch(self.dim, other.dim));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Max-entry deviation of `U·U†` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let p = self.matmul(&self.adjoint()).expect("square");
        p.max_abs_diff(&UnitaryMatrix::identity(self.dim)).expect("same dim")
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        let n = self.dim;
        (0..n).all(|r| (0..n).all(|c| r == c || self.data[r * n + c].norm() <= tol))
    }
}

/// 2×2 matrix of a single-qubit gate kind, `[[a, b], [c, d]]`.
type Mat2 = [[Complex64; 2]; 2];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rz_matrix(theta: f64) -> Mat2 {
    [
        [Complex64::from_polar(1.0, -theta / 2.0), c(0.0, 0.0)],
        [c(0.0, 0.0), Complex64::from_polar(1.0, theta / 2.0)],
    ]
}

fn rx_matrix(theta: f64) -> Mat2 {
    let (s, co) = (theta / 2.0_f64).sin_cos();
    [[c(co, 0.0), c(0.0, -s)], [c(0.0, -s), c(co, 0.0)]]
}

fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for (r, row) in out.iter_mut().enumerate() {
        for (col, entry) in row.iter_mut().enumerate() {
            *entry = a[r][0] * b[0][col] + a[r][1] * b[1][col];
        }
    }
    out
}

/// Product of rotations given in circuit order (first element applied first).
fn circuit_order_product(factors: &[Mat2]) -> Mat2 {
    factors
        .iter()
        .fold([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]], |acc, m| {
            mat2_mul(m, &acc)
        })
}

/// Native expansion of `U2(φ, λ)` in circuit order.
pub fn u2_expansion(q: usize, phi: f64, lambda: f64) -> [Gate; 3] {
    [
        Gate::rz(q, lambda - FRAC_PI_2),
        Gate::rx(q, FRAC_PI_2),
        Gate::rz(q, phi + FRAC_PI_2),
    ]
}

/// Native expansion of `U3(θ, φ, λ)` in circuit order.
pub fn u3_expansion(q: usize, theta: f64, phi: f64, lambda: f64) -> [Gate; 5] {
    [
        Gate::rz(q, lambda),
        Gate::rx(q, FRAC_PI_2),
        Gate::rz(q, theta + PI),
        Gate::rx(q, FRAC_PI_2),
        Gate::rz(q, phi + 3.0 * PI),
    ]
}

fn single_qubit_matrix(gate: &Gate) -> Mat2 {
    let a = gate.angles();
    match gate.kind() {
        GateKind::H => {
            let h = c(FRAC_1_SQRT_2, 0.0);
            [[h, h], [h, -h]]
        }
        GateKind::Rz => rz_matrix(a[0]),
        GateKind::Rx => rx_matrix(a[0]),
        GateKind::U1 => [
            [c(1.0, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), Complex64::from_polar(1.0, a[0])],
        ],
        GateKind::U2 | GateKind::U3 => {
            let expansion: Vec<Gate> = if gate.kind() == GateKind::U2 {
                u2_expansion(0, a[0], a[1]).into()
            } else {
                u3_expansion(0, a[0], a[1], a[2]).into()
            };
            let factors: Vec<Mat2> = expansion.iter().map(single_qubit_matrix).collect();
            circuit_order_product(&factors)
        }
        GateKind::Cnot | GateKind::Cz | GateKind::Measure => unreachable!("not a 1-qubit unitary"),
    }
}

/// Row-major block of `rows × cols` amplitudes. A statevector is the
/// `cols == 1` case; a unitary under construction is `cols == rows`.
struct Amplitudes<'a> {
    data: &'a mut [Complex64],
    n_qubits: usize,
    cols: usize,
}

impl Amplitudes<'_> {
    fn bit(&self, q: usize) -> usize {
        1 << (self.n_qubits - 1 - q)
    }

    fn rows(&self) -> usize {
        1 << self.n_qubits
    }

    fn apply(&mut self, gate: &Gate) {
        match gate.kind() {
            GateKind::Measure => {}
            GateKind::Cnot => {
                let (cb, tb) = (self.bit(gate.qubits()[0]), self.bit(gate.qubits()[1]));
                for r in 0..self.rows() {
                    if r & cb != 0 && r & tb == 0 {
                        self.swap_rows(r, r | tb);
                    }
                }
            }
            GateKind::Cz => {
                let mask = self.bit(gate.qubits()[0]) | self.bit(gate.qubits()[1]);
                let cols = self.cols;
                for r in 0..self.rows() {
                    if r & mask == mask {
                        self.data[r * cols..(r + 1) * cols]
                            .iter_mut()
                            .for_each(|z| *z = -*z);
                    }
                }
            }
            _ => {
                let m = single_qubit_matrix(gate);
                let b = self.bit(gate.qubits()[0]);
                let cols = self.cols;
                for r0 in 0..self.rows() {
                    if r0 & b != 0 {
                        continue;
                    }
                    let r1 = r0 | b;
                    for k in 0..cols {
                        let x0 = self.data[r0 * cols + k];
                        let x1 = self.data[r1 * cols + k];
                        self.data[r0 * cols + k] = m[0][0] * x0 + m[0][1] * x1;
                        self.data[r1 * cols + k] = m[1][0] * x0 + m[1][1] * x1;
                    }
                }
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        let cols = self.cols;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * cols);
        head[lo * cols..(lo + 1) * cols].swap_with_slice(&mut tail[..cols]);
    }
}

/// The `2^N × 2^N` unitary of `circuit` (later gates multiply on the left).
pub fn circuit_unitary(circuit: &Circuit) -> Result<UnitaryMatrix, SimError> {
    check_scale(circuit.n_qubits())?;
    let dim = 1usize << circuit.n_qubits();
    let mut u = UnitaryMatrix::identity(dim);
    let mut amps = Amplitudes {
        data: &mut u.data,
        n_qubits: circuit.n_qubits(),
        cols: dim,
    };
    for gate in circuit.gates() {
        amps.apply(gate);
    }
    Ok(u)
}

/// `a·b†`, the operator that has to be a phase (or diagonal) for the two
/// unitaries to be equivalent.
fn relative(a: &UnitaryMatrix, b: &UnitaryMatrix) -> Result<UnitaryMatrix, SimError> {
    if a.dim() != b.dim() {
        return Err(SimError::DimensionMismatch(a.dim(), b.dim()));
    }
    a.matmul(&b.adjoint())
}

/// Max-entry distance of `a·b†` from `e^{iφ}·I`, where φ is read off the
/// largest-modulus diagonal entry.
pub fn global_phase_distance(a: &UnitaryMatrix, b: &UnitaryMatrix) -> Result<f64, SimError> {
    let m = relative(a, b)?;
    let n = m.dim();
    let pivot = (0..n)
        .map(|i| m.get(i, i))
        .max_by(|x, y| x.norm().total_cmp(&y.norm()))
        .unwrap_or(c(1.0, 0.0));
    let phase = if pivot.norm() > 0.0 {
        pivot / pivot.norm()
    } else {
        c(1.0, 0.0)
    };
    m.max_abs_diff(&UnitaryMatrix::identity(n).scale(phase))
}

/// True iff `a·b† = e^{iφ}·I` within `tol` (max-entry).
pub fn equiv_global_phase(a: &UnitaryMatrix, b: &UnitaryMatrix, tol: f64) -> Result<bool, SimError> {
    Ok(global_phase_distance(a, b)? <= tol)
}

/// True iff `a·b†` is diagonal with unit-modulus entries, within `tol`.
/// Such a pair yields identical computational-basis measurement statistics
/// for every input state.
pub fn equiv_diagonal(a: &UnitaryMatrix, b: &UnitaryMatrix, tol: f64) -> Result<bool, SimError> {
    let m = relative(a, b)?;
    let n = m.dim();
    let unit_diagonal = (0..n).all(|i| (m.get(i, i).norm() - 1.0).abs() <= tol);
    Ok(unit_diagonal && m.is_diagonal(tol))
}

/// Parses a computational-basis label such as `"01"` (qubit 0 first).
pub fn basis_index(bits: &str, n_qubits: usize) -> Result<usize, SimError> {
    let bad = || SimError::BadBitstring(bits.to_string(), n_qubits);
    if bits.len() != n_qubits {
        return Err(bad());
    }
    bits.chars().try_fold(0usize, |acc, ch| match ch {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        _ => Err(bad()),
    })
}

/// Statevector `U|input⟩`.
pub fn run_statevector(circuit: &Circuit, input_bits: &str) -> Result<Vec<Complex64>, SimError> {
    check_scale(circuit.n_qubits())?;
    let start = basis_index(input_bits, circuit.n_qubits())?;
    let mut psi = vec![c(0.0, 0.0); 1 << circuit.n_qubits()];
    psi[start] = c(1.0, 0.0);
    let mut amps = Amplitudes {
        data: &mut psi,
        n_qubits: circuit.n_qubits(),
        cols: 1,
    };
    for gate in circuit.gates() {
        amps.apply(gate);
    }
    Ok(psi)
}

/// `|⟨z|U|input⟩|²` for every basis state `z`, indexed with qubit 0 as the
/// most significant bit.
pub fn measure_probs(circuit: &Circuit, input_bits: &str) -> Result<Vec<f64>, SimError> {
    Ok(run_statevector(circuit, input_bits)?
        .into_iter()
        .map(|z| z.norm_sqr())
        .collect())
}
