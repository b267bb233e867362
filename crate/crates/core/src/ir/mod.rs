//! Gate and circuit data model.
//!
//! A [`Circuit`] is an ordered list of [`Gate`]s over a fixed number of
//! qubits. Values are validated on construction and never mutated afterwards;
//! compiler passes build new circuits instead.

mod json;
mod wire;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use json::{canonical_angle, deserialize, serialize};
pub use wire::{build_wire_view, WireView};

/// Every gate kind the IR can represent.
///
/// `U1`, `U2` and `U3` exist only so IBM basis-gate circuits can be weighted
/// and simulated; the compilers never emit them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    H,
    Rx,
    Rz,
    Cnot,
    Cz,
    U1,
    U2,
    U3,
    Measure,
}

impl GateKind {
    pub const ALL: [GateKind; 9] = [
        GateKind::H,
        GateKind::Rx,
        GateKind::Rz,
        GateKind::Cnot,
        GateKind::Cz,
        GateKind::U1,
        GateKind::U2,
        GateKind::U3,
        GateKind::Measure,
    ];

    /// Number of qubits the gate acts on.
    pub fn arity(self) -> usize {
        match self {
            GateKind::Cnot | GateKind::Cz => 2,
            _ => 1,
        }
    }

    /// Number of angle parameters the gate carries.
    pub fn angle_count(self) -> usize {
        match self {
            GateKind::Rx | GateKind::Rz | GateKind::U1 => 1,
            GateKind::U2 => 2,
            GateKind::U3 => 3,
            GateKind::H | GateKind::Cnot | GateKind::Cz | GateKind::Measure => 0,
        }
    }

    /// Whether the gate's unitary is diagonal in the computational basis.
    pub fn is_diagonal(self) -> bool {
        matches!(self, GateKind::Rz | GateKind::Cz | GateKind::U1)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::Rx => "RX",
            GateKind::Rz => "RZ",
            GateKind::Cnot => "CNOT",
            GateKind::Cz => "CZ",
            GateKind::U1 => "U1",
            GateKind::U2 => "U2",
            GateKind::U3 => "U3",
            GateKind::Measure => "MEASURE",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl serde::Serialize for GateKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl FromStr for GateKind {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GateKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or(())
    }
}

/// Structural problems with a single gate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GateError {
    #[error("{kind} acts on {expected} qubit(s), got {found}")]
    Arity {
        kind: GateKind,
        expected: usize,
        found: usize,
    },
    #[error("{kind} takes {expected} angle(s), got {found}")]
    AngleCount {
        kind: GateKind,
        expected: usize,
        found: usize,
    },
    #[error("repeated qubit {0}")]
    RepeatedQubit(usize),
    #[error("non-finite angle {0}")]
    NonFiniteAngle(f64),
}

/// Errors raised while building or parsing a circuit. Every per-gate variant
/// names the offending gate's position in program order.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum IrError {
    #[error("circuit must have at least one qubit")]
    NoQubits,
    #[error("unknown gate kind at index {index}: {kind:?}")]
    UnknownKind { index: usize, kind: String },
    #[error("{source} at index {index}")]
    InvalidGate { index: usize, source: GateError },
    #[error("qubit {qubit} out of range for {n_qubits} qubit(s) at index {index}")]
    QubitOutOfRange {
        index: usize,
        qubit: i64,
        n_qubits: usize,
    },
    #[error("gate at index {index} follows a MEASURE; measurements must be a trailing suffix")]
    MeasureNotTrailing { index: usize },
    #[error("malformed circuit document: {0}")]
    Malformed(String),
}

/// One gate instance.
///
/// For `CNOT` the qubits are `[control, target]`. `CZ` keeps the order it was
/// built with, but equality treats `CZ(a, b)` and `CZ(b, a)` as the same gate.
#[derive(Debug, Clone)]
pub struct Gate {
    kind: GateKind,
    qubits: Vec<usize>,
    angles: Vec<f64>,
}

impl Gate {
    pub fn new(kind: GateKind, qubits: Vec<usize>, angles: Vec<f64>) -> Result<Self, GateError> {
        if qubits.len() != kind.arity() {
            return Err(GateError::Arity {
                kind,
                expected: kind.arity(),
                found: qubits.len(),
            });
        }
        if angles.len() != kind.angle_count() {
            return Err(GateError::AngleCount {
                kind,
                expected: kind.angle_count(),
                found: angles.len(),
            });
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(GateError::RepeatedQubit(qubits[0]));
        }
        if let Some(&bad) = angles.iter().find(|a| !a.is_finite()) {
            return Err(GateError::NonFiniteAngle(bad));
        }
        Ok(Gate {
            kind,
            qubits,
            angles,
        })
    }

    pub fn h(q: usize) -> Self {
        Gate::new(GateKind::H, vec![q], vec![]).unwrap()
    }

    /// # Panics
    /// If `theta` is not finite.
    pub fn rx(q: usize, theta: f64) -> Self {
        Gate::new(GateKind::Rx, vec![q], vec![theta]).expect("finite angle")
    }

    /// # Panics
    /// If `theta` is not finite.
    pub fn rz(q: usize, theta: f64) -> Self {
        Gate::new(GateKind::Rz, vec![q], vec![theta]).expect("finite angle")
    }

    /// # Panics
    /// If `control == target`.
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::new(GateKind::Cnot, vec![control, target], vec![]).expect("distinct qubits")
    }

    /// # Panics
    /// If `a == b`.
    pub fn cz(a: usize, b: usize) -> Self {
        Gate::new(GateKind::Cz, vec![a, b], vec![]).expect("distinct qubits")
    }

    pub fn u1(q: usize, lambda: f64) -> Self {
        Gate::new(GateKind::U1, vec![q], vec![lambda]).expect("finite angle")
    }

    pub fn u2(q: usize, phi: f64, lambda: f64) -> Self {
        Gate::new(GateKind::U2, vec![q], vec![phi, lambda]).expect("finite angles")
    }

    pub fn u3(q: usize, theta: f64, phi: f64, lambda: f64) -> Self {
        Gate::new(GateKind::U3, vec![q], vec![theta, phi, lambda]).expect("finite angles")
    }

    pub fn measure(q: usize) -> Self {
        Gate::new(GateKind::Measure, vec![q], vec![]).unwrap()
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// The single angle of an `RX`, `RZ` or `U1` gate.
    pub fn angle(&self) -> Option<f64> {
        match self.angles.as_slice() {
            [a] => Some(*a),
            _ => None,
        }
    }

    pub fn acts_on(&self, q: usize) -> bool {
        self.qubits.contains(&q)
    }
}

impl PartialEq for Gate {
    fn eq(&self, other: &Self) -> bool {
        if self.kind != other.kind || self.angles != other.angles {
            return false;
        }
        if self.qubits == other.qubits {
            return true;
        }
        self.kind == GateKind::Cz
            && self.qubits[0] == other.qubits[1]
            && self.qubits[1] == other.qubits[0]
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.kind)?;
        let mut first = true;
        for a in &self.angles {
            write!(f, "{}{a}", if first { "" } else { ", " })?;
            first = false;
        }
        for q in &self.qubits {
            write!(f, "{}q{q}", if first { "" } else { ", " })?;
            first = false;
        }
        f.write_str(")")
    }
}

/// An ordered gate sequence over `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize, gates: Vec<Gate>) -> Result<Self, IrError> {
        if n_qubits == 0 {
            return Err(IrError::NoQubits);
        }
        let mut seen_measure = false;
        for (index, gate) in gates.iter().enumerate() {
            if let Some(&q) = gate.qubits.iter().find(|&&q| q >= n_qubits) {
                return Err(IrError::QubitOutOfRange {
                    index,
                    qubit: q as i64,
                    n_qubits,
                });
            }
            match gate.kind {
                GateKind::Measure => seen_measure = true,
                _ if seen_measure => return Err(IrError::MeasureNotTrailing { index }),
                _ => {}
            }
        }
        Ok(Circuit { n_qubits, gates })
    }

    pub fn empty(n_qubits: usize) -> Result<Self, IrError> {
        Circuit::new(n_qubits, Vec::new())
    }

    /// Builds a circuit from gates already known to satisfy the invariants,
    /// e.g. the output of a sound rewrite over a valid circuit.
    pub(crate) fn from_trusted(n_qubits: usize, gates: Vec<Gate>) -> Self {
        debug_assert!(Circuit::new(n_qubits, gates.clone()).is_ok());
        Circuit { n_qubits, gates }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn count_kind(&self, kind: GateKind) -> usize {
        self.gates.iter().filter(|g| g.kind == kind).count()
    }

    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} qubits]", self.n_qubits)?;
        for g in &self.gates {
            write!(f, " {g}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn arity_and_angle_tables() {
        for kind in GateKind::ALL {
            let expected_qubits = if matches!(kind, GateKind::Cnot | GateKind::Cz) {
                2
            } else {
                1
            };
            assert_eq!(kind.arity(), expected_qubits, "{kind}");
        }
        assert_eq!(GateKind::U2.angle_count(), 2);
        assert_eq!(GateKind::U3.angle_count(), 3);
        assert_eq!(GateKind::Measure.angle_count(), 0);
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in GateKind::ALL {
            assert_eq!(kind.as_str().parse::<GateKind>(), Ok(kind));
        }
        assert!("RY".parse::<GateKind>().is_err());
    }

    #[test]
    fn rejects_bad_gates() {
        assert_eq!(
            Gate::new(GateKind::Cnot, vec![1, 1], vec![]),
            Err(GateError::RepeatedQubit(1))
        );
        assert!(matches!(
            Gate::new(GateKind::Rz, vec![0], vec![]),
            Err(GateError::AngleCount { .. })
        ));
        assert!(matches!(
            Gate::new(GateKind::Cz, vec![0], vec![]),
            Err(GateError::Arity { .. })
        ));
        assert!(matches!(
            Gate::new(GateKind::Rx, vec![0], vec![f64::NAN]),
            Err(GateError::NonFiniteAngle(_))
        ));
    }

    #[test]
    fn cz_equality_is_symmetric_but_cnot_is_not() {
        assert_eq!(Gate::cz(0, 1), Gate::cz(1, 0));
        assert_ne!(Gate::cnot(0, 1), Gate::cnot(1, 0));
    }

    #[test]
    fn zero_angle_rotation_is_legal() {
        let c = Circuit::new(1, vec![Gate::rx(0, 0.0), Gate::rz(0, 0.0), Gate::u1(0, 0.0)]);
        assert!(c.is_ok());
    }

    #[test]
    fn measure_must_trail() {
        let ok = Circuit::new(2, vec![Gate::h(0), Gate::measure(0), Gate::measure(1)]);
        assert!(ok.is_ok());
        let bad = Circuit::new(2, vec![Gate::measure(0), Gate::rz(1, PI)]);
        assert_eq!(bad, Err(IrError::MeasureNotTrailing { index: 1 }));
    }

    #[test]
    fn qubit_range_checked() {
        let err = Circuit::new(2, vec![Gate::h(0), Gate::cnot(1, 2)]).unwrap_err();
        assert_eq!(
            err,
            IrError::QubitOutOfRange {
                index: 1,
                qubit: 2,
                n_qubits: 2
            }
        );
    }
}
