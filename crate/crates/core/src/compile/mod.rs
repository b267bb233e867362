//! Domain-specific pass pipelines for the Rigetti and IBM native gate sets.
//!
//! Both pipelines accept circuits over `{H, RZ, CNOT}` (plus trailing
//! `MEASURE`) and only need to preserve measurement statistics, so global
//! phase is discarded freely and trailing diagonal gates are dropped.

mod elide;
mod naive;
mod pipeline;

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::ir::{Circuit, Gate, GateKind};
use crate::rewrite::{angles_match, RewriteError};

pub use elide::elide_trailing_phases;
pub use naive::naive_translate;
pub use pipeline::{CompileOptions, CompileReport, Pass, PassMode, PassPipeline, PassTrace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Rigetti,
    Ibm,
}

impl Target {
    pub const ALL: [Target; 2] = [Target::Rigetti, Target::Ibm];

    pub fn as_str(self) -> &'static str {
        match self {
            Target::Rigetti => "rigetti",
            Target::Ibm => "ibm",
        }
    }

    /// Rigetti executes `{RX(±π/2), RZ(θ), CZ}`, IBM `{RX(π/2), RZ(θ), CNOT}`.
    /// `MEASURE` is accepted by both.
    pub fn is_native(self, gate: &Gate) -> bool {
        match (self, gate.kind()) {
            (_, GateKind::Rz | GateKind::Measure) => true,
            (Target::Rigetti, GateKind::Cz) | (Target::Ibm, GateKind::Cnot) => true,
            (Target::Rigetti, GateKind::Rx) => {
                let a = gate.angles()[0];
                angles_match(a, FRAC_PI_2) || angles_match(a, -FRAC_PI_2)
            }
            (Target::Ibm, GateKind::Rx) => angles_match(gate.angles()[0], FRAC_PI_2),
            _ => false,
        }
    }

    /// First gate outside the native set, if any.
    pub fn first_non_native(self, circuit: &Circuit) -> Option<(usize, &Gate)> {
        circuit.gates().iter().enumerate().find(|(_, g)| !self.is_native(g))
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown target {0:?} (expected rigetti or ibm)")]
pub struct UnknownTarget(pub String);

impl FromStr for Target {
    type Err = UnknownTarget;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "rigetti" => Ok(Target::Rigetti),
            "ibm" => Ok(Target::Ibm),
            _ => Err(UnknownTarget(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CompileError {
    #[error("gate {kind} at index {index} is not a TFIM input gate (H, RZ, CNOT, MEASURE)")]
    UnsupportedGate { index: usize, kind: GateKind },
    #[error("{target} pipeline produced non-native gate {gate} at index {index}")]
    NonNative { target: Target, index: usize, gate: String },
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

pub(crate) fn check_tfim_input(circuit: &Circuit) -> Result<(), CompileError> {
    match circuit
        .gates()
        .iter()
        .enumerate()
        .find(|(_, g)| !matches!(g.kind(), GateKind::H | GateKind::Rz | GateKind::Cnot | GateKind::Measure))
    {
        Some((index, g)) => Err(CompileError::UnsupportedGate { index, kind: g.kind() }),
        None => Ok(()),
    }
}

/// Rigetti pipeline with trailing-phase elision.
pub fn compile_rigetti(circuit: &Circuit) -> Result<(Circuit, CompileReport), CompileError> {
    PassPipeline::rigetti().run(circuit, &CompileOptions::default())
}

/// IBM pipeline with trailing-phase elision.
pub fn compile_ibm(circuit: &Circuit) -> Result<(Circuit, CompileReport), CompileError> {
    PassPipeline::ibm().run(circuit, &CompileOptions::default())
}

pub fn compile(circuit: &Circuit, target: Target) -> Result<(Circuit, CompileReport), CompileError> {
    PassPipeline::for_target(target).run(circuit, &CompileOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn native_sets() {
        assert!(Target::Rigetti.is_native(&Gate::rx(0, -FRAC_PI_2)));
        assert!(!Target::Ibm.is_native(&Gate::rx(0, -FRAC_PI_2)));
        assert!(Target::Ibm.is_native(&Gate::rx(0, FRAC_PI_2 + 4.0 * PI)));
        assert!(!Target::Rigetti.is_native(&Gate::rx(0, PI)));
        assert!(!Target::Rigetti.is_native(&Gate::cnot(0, 1)));
        assert!(!Target::Ibm.is_native(&Gate::cz(0, 1)));
        assert!(!Target::Ibm.is_native(&Gate::h(0)));
        assert!(Target::Ibm.is_native(&Gate::measure(0)));
    }

    #[test]
    fn target_parsing() {
        assert_eq!("rigetti".parse(), Ok(Target::Rigetti));
        assert_eq!("IBM".parse(), Ok(Target::Ibm));
        assert!("other".parse::<Target>().is_err());
    }

    #[test]
    fn rejects_non_tfim_input() {
        let c = Circuit::new(2, vec![Gate::h(0), Gate::cz(0, 1)]).unwrap();
        assert_eq!(
            compile_rigetti(&c).unwrap_err(),
            CompileError::UnsupportedGate {
                index: 1,
                kind: GateKind::Cz
            }
        );
        let c = Circuit::new(1, vec![Gate::rx(0, 0.1)]).unwrap();
        assert!(compile_ibm(&c).is_err());
        assert!(naive_translate(&c, Target::Ibm).is_err());
    }
}
