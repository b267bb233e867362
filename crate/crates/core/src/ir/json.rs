//! Circuit JSON format.
//!
//! ```text
//! {"n_qubits": 1, "gates": [{"kind": "RZ", "qubits": [0], "angles": [3.141592653589793]}]}
//! ```
//!
//! Angles are written in shortest round-trip decimal form after reduction
//! into (-2π, 2π].

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Deserialize;
use serde_json::value::RawValue;

use super::{Circuit, Gate, GateKind, IrError};

const FOUR_PI: f64 = 4.0 * PI;

/// Reduces `theta` into (-2π, 2π] by multiples of 4π, which leaves every
/// rotation unitary unchanged. Angles already in range are returned as is.
pub fn canonical_angle(theta: f64) -> f64 {
    if theta > -2.0 * PI && theta <= 2.0 * PI {
        return theta;
    }
    let r = theta.rem_euclid(FOUR_PI);
    if r > 2.0 * PI {
        r - FOUR_PI
    } else {
        r
    }
}

pub fn serialize(circuit: &Circuit) -> String {
    let mut out = String::with_capacity(32 + 48 * circuit.len());
    write!(out, "{{\"n_qubits\": {}, \"gates\": [", circuit.n_qubits()).unwrap();
    for (i, gate) in circuit.gates().iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write!(out, "{{\"kind\": \"{}\", \"qubits\": [", gate.kind()).unwrap();
        push_list(&mut out, gate.qubits().iter().map(|q| q.to_string()));
        out.push_str("], \"angles\": [");
        push_list(
            &mut out,
            gate.angles()
                .iter()
                .map(|&a| serde_json::to_string(&canonical_angle(a)).expect("finite angle")),
        );
        out.push_str("]}");
    }
    out.push_str("]}");
    out
}

fn push_list(out: &mut String, items: impl Iterator<Item = String>) {
    for (i, item) in items.enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&item);
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCircuit<'a> {
    n_qubits: u64,
    #[serde(borrow)]
    gates: Vec<RawGate<'a>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGate<'a> {
    kind: String,
    qubits: Vec<i64>,
    // Kept raw so that out-of-range literals such as 1e999 surface as a
    // non-finite angle at this gate rather than a generic parse failure.
    #[serde(borrow)]
    angles: Vec<&'a RawValue>,
}

pub fn deserialize(text: &str) -> Result<Circuit, IrError> {
    let raw: RawCircuit<'_> =
        serde_json::from_str(text).map_err(|e| IrError::Malformed(e.to_string()))?;
    let n_qubits = usize::try_from(raw.n_qubits).map_err(|_| IrError::Malformed("n_qubits too large".into()))?;
    if n_qubits == 0 {
        return Err(IrError::NoQubits);
    }
    let mut gates = Vec::with_capacity(raw.gates.len());
    for (index, g) in raw.gates.into_iter().enumerate() {
        let kind: GateKind = g.kind.parse().map_err(|_| IrError::UnknownKind {
            index,
            kind: g.kind.clone(),
        })?;
        let mut qubits = Vec::with_capacity(g.qubits.len());
        for &q in &g.qubits {
            if q < 0 || q as u64 >= n_qubits as u64 {
                return Err(IrError::QubitOutOfRange {
                    index,
                    qubit: q,
                    n_qubits,
                });
            }
            qubits.push(q as usize);
        }
        let mut angles = Vec::with_capacity(g.angles.len());
        for raw_angle in &g.angles {
            let text = raw_angle.get();
            let value: f64 = text.parse().map_err(|_| {
                IrError::Malformed(format!("angle {text} at index {index} is not a number"))
            })?;
            angles.push(value);
        }
        let gate =
            Gate::new(kind, qubits, angles).map_err(|source| IrError::InvalidGate { index, source })?;
        gates.push(gate);
    }
    Circuit::new(n_qubits, gates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::GateError;
    use proptest::prelude::*;

    #[test]
    fn rz_pi_document() {
        let c = Circuit::new(1, vec![Gate::rz(0, PI)]).unwrap();
        let text = serialize(&c);
        assert_eq!(
            text,
            r#"{"n_qubits": 1, "gates": [{"kind": "RZ", "qubits": [0], "angles": [3.141592653589793]}]}"#
        );
        assert_eq!(deserialize(&text).unwrap(), c);
    }

    #[test]
    fn empty_gate_list() {
        let c = Circuit::empty(3).unwrap();
        assert_eq!(serialize(&c), r#"{"n_qubits": 3, "gates": []}"#);
        assert_eq!(deserialize(&serialize(&c)).unwrap(), c);
    }

    #[test]
    fn unknown_kind_names_index() {
        let err = deserialize(r#"{"n_qubits": 1, "gates": [{"kind": "RY", "qubits": [0], "angles": [1.0]}]}"#)
            .unwrap_err();
        assert!(matches!(err, IrError::UnknownKind { index: 0, .. }));
        assert!(err.to_string().contains("unknown gate kind at index 0"));
    }

    #[test]
    fn repeated_qubit() {
        let err = deserialize(
            r#"{"n_qubits": 2, "gates": [{"kind": "H", "qubits": [0], "angles": []}, {"kind": "CNOT", "qubits": [1, 1], "angles": []}]}"#,
        )
        .unwrap_err();
        assert_eq!(
            err,
            IrError::InvalidGate {
                index: 1,
                source: GateError::RepeatedQubit(1)
            }
        );
        assert!(err.to_string().contains("repeated qubit"));
    }

    #[test]
    fn arity_mismatch() {
        let err =
            deserialize(r#"{"n_qubits": 2, "gates": [{"kind": "CZ", "qubits": [0], "angles": []}]}"#).unwrap_err();
        assert!(matches!(
            err,
            IrError::InvalidGate {
                index: 0,
                source: GateError::Arity { .. }
            }
        ));
        let err =
            deserialize(r#"{"n_qubits": 1, "gates": [{"kind": "RX", "qubits": [0], "angles": []}]}"#).unwrap_err();
        assert!(matches!(
            err,
            IrError::InvalidGate {
                index: 0,
                source: GateError::AngleCount { .. }
            }
        ));
    }

    #[test]
    fn out_of_range_qubit() {
        for q in ["2", "-1"] {
            let doc = format!(r#"{{"n_qubits": 2, "gates": [{{"kind": "H", "qubits": [{q}], "angles": []}}]}}"#);
            assert!(matches!(
                deserialize(&doc).unwrap_err(),
                IrError::QubitOutOfRange { index: 0, .. }
            ));
        }
    }

    #[test]
    fn non_finite_angle() {
        let err = deserialize(
            r#"{"n_qubits": 1, "gates": [{"kind": "H", "qubits": [0], "angles": []}, {"kind": "RZ", "qubits": [0], "angles": [1e999]}]}"#,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            IrError::InvalidGate {
                index: 1,
                source: GateError::NonFiniteAngle(_)
            }
        ));
    }

    #[test]
    fn string_angle_is_malformed() {
        let err =
            deserialize(r#"{"n_qubits": 1, "gates": [{"kind": "RZ", "qubits": [0], "angles": ["1.0"]}]}"#).unwrap_err();
        assert!(matches!(err, IrError::Malformed(_)));
    }

    #[test]
    fn canonicalization_range() {
        assert_eq!(canonical_angle(2.0 * PI), 2.0 * PI);
        assert_eq!(canonical_angle(-2.0 * PI), 2.0 * PI);
        assert!((canonical_angle(5.0 * PI) - PI).abs() < 1e-12);
        assert!((canonical_angle(-3.0 * PI) - PI).abs() < 1e-12);
        assert_eq!(canonical_angle(0.25), 0.25);
    }

    fn arb_gate(n: usize) -> impl Strategy<Value = Gate> {
        let angle = -2.0 * PI + 1e-9..=2.0 * PI;
        prop_oneof![
            (0..n).prop_map(Gate::h),
            (0..n, angle.clone()).prop_map(|(q, a)| Gate::rx(q, a)),
            (0..n, angle.clone()).prop_map(|(q, a)| Gate::rz(q, a)),
            (0..n, angle.clone()).prop_map(|(q, a)| Gate::u1(q, a)),
            (0..n, angle.clone(), angle.clone()).prop_map(|(q, a, b)| Gate::u2(q, a, b)),
            (0..n, angle.clone(), angle.clone(), angle).prop_map(|(q, a, b, c)| Gate::u3(q, a, b, c)),
            (0..n, 1..n).prop_map(move |(a, d)| Gate::cnot(a, (a + d) % n)),
            (0..n, 1..n).prop_map(move |(a, d)| Gate::cz(a, (a + d) % n)),
        ]
    }

    fn arb_circuit() -> impl Strategy<Value = Circuit> {
        (2usize..6).prop_flat_map(|n| {
            (
                proptest::collection::vec(arb_gate(n), 0..40),
                proptest::collection::btree_set(0..n, 0..=n),
            )
                .prop_map(move |(mut gates, measured)| {
                    gates.extend(measured.into_iter().map(Gate::measure));
                    Circuit::new(n, gates).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn round_trip_and_determinism(c in arb_circuit()) {
            let text = serialize(&c);
            let back = deserialize(&text).unwrap();
            prop_assert_eq!(&back, &c);
            // CZ orientation survives even though equality ignores it.
            for (a, b) in back.gates().iter().zip(c.gates()) {
                prop_assert_eq!(a.qubits(), b.qubits());
            }
            prop_assert_eq!(serialize(&c.clone()), text);
        }
    }
}
