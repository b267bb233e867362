//! Trotterized time-evolution circuits for the transverse-field Ising model
//!
//! `H(t) = −J_z Σ σᶻᵢσᶻᵢ₊₁ − B(t) Σ σˣᵢ`
//!
//! Each time-step `j` holds the Hamiltonian at the midpoint `(j + ½)Δt` and
//! applies the transverse-field exponential followed by the exchange
//! exponential. Circuits use only `H`, `RZ` and `CNOT`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use thiserror::Error;

use crate::ir::{Circuit, Gate};
use crate::sim::{check_scale, SimError, UnitaryMatrix};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TfimError {
    #[error("need at least 2 spins, got {0}")]
    TooFewQubits(usize),
    #[error("time-step must be positive and finite, got {0}")]
    BadTimeStep(f64),
    #[error("need at least one time-step")]
    NoSteps,
    #[error("non-finite coupling or field parameter")]
    NonFinite,
    #[error("step {step} out of range for {n_steps} step(s)")]
    StepOutOfRange { step: usize, n_steps: usize },
}

/// Transverse field amplitude as a function of time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldWaveform {
    Constant(f64),
    /// `amplitude · cos(angular_frequency · t + phase)`
    Sinusoid {
        amplitude: f64,
        angular_frequency: f64,
        phase: f64,
    },
}

impl FieldWaveform {
    pub fn evaluate(&self, t: f64) -> f64 {
        match *self {
            FieldWaveform::Constant(v) => v,
            FieldWaveform::Sinusoid {
                amplitude,
                angular_frequency,
                phase,
            } => amplitude * (angular_frequency * t + phase).cos(),
        }
    }

    fn is_finite(&self) -> bool {
        match *self {
            FieldWaveform::Constant(v) => v.is_finite(),
            FieldWaveform::Sinusoid {
                amplitude,
                angular_frequency,
                phase,
            } => amplitude.is_finite() && angular_frequency.is_finite() && phase.is_finite(),
        }
    }
}

/// Physical and discretization parameters, in atomic units.
#[derive(Debug, Clone, PartialEq)]
pub struct TfimParams {
    n_qubits: usize,
    j_z: f64,
    field: FieldWaveform,
    dt: f64,
    n_steps: usize,
}

impl TfimParams {
    pub const DEFAULT_J_Z: f64 = 1.0;
    pub const DEFAULT_FIELD_AMPLITUDE: f64 = 2.0;
    pub const DEFAULT_FIELD_FREQUENCY: f64 = 0.5;
    pub const DEFAULT_DT: f64 = 0.1;

    pub fn new(
        n_qubits: usize,
        j_z: f64,
        field: FieldWaveform,
        dt: f64,
        n_steps: usize,
    ) -> Result<Self, TfimError> {
        if n_qubits < 2 {
            return Err(TfimError::TooFewQubits(n_qubits));
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(TfimError::BadTimeStep(dt));
        }
        if n_steps == 0 {
            return Err(TfimError::NoSteps);
        }
        if !j_z.is_finite() || !field.is_finite() {
            return Err(TfimError::NonFinite);
        }
        Ok(TfimParams {
            n_qubits,
            j_z,
            field,
            dt,
            n_steps,
        })
    }

    /// `J_z = 1`, `B(t) = 2·cos(0.5·t)`, `Δt = 0.1`.
    pub fn demo(n_qubits: usize, n_steps: usize) -> Result<Self, TfimError> {
        TfimParams::new(
            n_qubits,
            Self::DEFAULT_J_Z,
            FieldWaveform::Sinusoid {
                amplitude: Self::DEFAULT_FIELD_AMPLITUDE,
                angular_frequency: Self::DEFAULT_FIELD_FREQUENCY,
                phase: 0.0,
            },
            Self::DEFAULT_DT,
            n_steps,
        )
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn j_z(&self) -> f64 {
        self.j_z
    }

    pub fn field(&self) -> FieldWaveform {
        self.field
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    /// Midpoint time of step `j`.
    pub fn midpoint(&self, j: usize) -> f64 {
        (j as f64 + 0.5) * self.dt
    }

    /// Same physics with a different step size and count.
    pub fn with_steps(&self, dt: f64, n_steps: usize) -> Result<Self, TfimError> {
        TfimParams::new(self.n_qubits, self.j_z, self.field, dt, n_steps)
    }
}

/// Gates per time-step: `3N` for the field sub-block, `3(N−1)` for exchange.
pub fn block_len(n_qubits: usize) -> usize {
    6 * n_qubits - 3
}

/// Gate block of step `j`: `e^{−iH_x((j+½)Δt)Δt}` then `e^{−iH_zΔt}`.
pub fn step_block(params: &TfimParams, j: usize) -> Result<Vec<Gate>, TfimError> {
    if j >= params.n_steps {
        return Err(TfimError::StepOutOfRange {
            step: j,
            n_steps: params.n_steps,
        });
    }
    let n = params.n_qubits;
    let theta_x = -2.0 * params.field.evaluate(params.midpoint(j)) * params.dt;
    let theta_z = -2.0 * params.j_z * params.dt;
    let mut block = Vec::with_capacity(block_len(n));
    for q in 0..n {
        block.extend([Gate::h(q), Gate::rz(q, theta_x), Gate::h(q)]);
    }
    for q in 0..n - 1 {
        block.extend([Gate::cnot(q, q + 1), Gate::rz(q + 1, theta_z), Gate::cnot(q, q + 1)]);
    }
    Ok(block)
}

/// One circuit per time-step; circuit `k` (1-based) evolves to `kΔt` and
/// extends circuit `k − 1` by one block.
pub fn generate_circuits(params: &TfimParams) -> Vec<Circuit> {
    let mut gates = Vec::with_capacity(params.n_steps * block_len(params.n_qubits));
    let mut out = Vec::with_capacity(params.n_steps);
    for j in 0..params.n_steps {
        gates.extend(step_block(params, j).expect("step in range"));
        out.push(Circuit::from_trusted(params.n_qubits, gates.clone()));
    }
    out
}

/// Dense Hamiltonian `H(t)` in the computational basis (qubit 0 is the most
/// significant bit). It is real and symmetric.
pub fn hamiltonian(params: &TfimParams, t: f64) -> DMatrix<f64> {
    let n = params.n_qubits;
    let dim = 1usize << n;
    let b = params.field.evaluate(t);
    let bit = |q: usize| 1usize << (n - 1 - q);
    let spin = |s: usize, q: usize| if s & bit(q) == 0 { 1.0 } else { -1.0 };
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for s in 0..dim {
        let zz: f64 = (0..n - 1).map(|q| spin(s, q) * spin(s, q + 1)).sum();
        h[(s, s)] = -params.j_z * zz;
        for q in 0..n {
            h[(s ^ bit(q), s)] -= b;
        }
    }
    h
}

/// `exp(−i·H·τ)` for real symmetric `H`, through its eigendecomposition.
pub fn expm_symmetric(h: &DMatrix<f64>, tau: f64) -> UnitaryMatrix {
    let dim = h.nrows();
    let eig = SymmetricEigen::new(h.clone());
    let v = &eig.eigenvectors;
    let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        let phase = Complex64::from_polar(1.0, -lambda * tau);
        for r in 0..dim {
            let vr = v[(r, k)];
            if vr == 0.0 {
                continue;
            }
            for c in 0..dim {
                data[r * dim + c] += phase * (vr * v[(c, k)]);
            }
        }
    }
    UnitaryMatrix::from_row_major(dim, data)
}

/// Piecewise-constant evolution `Π_{j<k} exp(−i·H((j+½)Δt)·Δt)` without any
/// Trotter splitting (later steps on the left).
pub fn exact_evolution(params: &TfimParams, k: usize) -> Result<UnitaryMatrix, SimError> {
    check_scale(params.n_qubits)?;
    let dim = 1usize << params.n_qubits;
    let mut u = UnitaryMatrix::identity(dim);
    for j in 0..k {
        let step = expm_symmetric(&hamiltonian(params, params.midpoint(j)), params.dt);
        u = step.matmul(&u)?;
    }
    Ok(u)
}
