use crate::ir::{Circuit, Gate, GateKind};

/// Removes every diagonal gate that reaches the end of the circuit (or the
/// measurement suffix) through diagonal gates only. Such gates change the
/// state only by basis-dependent phases, which a computational-basis
/// measurement cannot see.
pub fn elide_trailing_phases(circuit: &Circuit) -> Circuit {
    let mut blocked = vec![false; circuit.n_qubits()];
    let mut kept: Vec<Gate> = Vec::with_capacity(circuit.len());
    for g in circuit.gates().iter().rev() {
        if g.kind() == GateKind::Measure {
            kept.push(g.clone());
            continue;
        }
        if g.kind().is_diagonal() && g.qubits().iter().all(|&q| !blocked[q]) {
            continue;
        }
        for &q in g.qubits() {
            blocked[q] = true;
        }
        kept.push(g.clone());
    }
    kept.reverse();
    Circuit::from_trusted(circuit.n_qubits(), kept)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drops_only_the_diagonal_tail() {
        let c = Circuit::new(
            2,
            vec![
                Gate::rz(0, 0.3),
                Gate::rx(0, 0.5),
                Gate::rz(0, 0.1),
                Gate::cz(0, 1),
                Gate::rz(1, 0.2),
                Gate::measure(0),
                Gate::measure(1),
            ],
        )
        .unwrap();
        let out = elide_trailing_phases(&c);
        assert_eq!(
            out.gates(),
            &[Gate::rz(0, 0.3), Gate::rx(0, 0.5), Gate::measure(0), Gate::measure(1)]
        );
    }

    #[test]
    fn cz_touching_a_blocked_wire_stays() {
        let c = Circuit::new(2, vec![Gate::rz(0, 0.4), Gate::cz(0, 1), Gate::rx(1, 0.5), Gate::rz(0, 0.2)]).unwrap();
        let out = elide_trailing_phases(&c);
        assert_eq!(out.gates(), &[Gate::rz(0, 0.4), Gate::cz(0, 1), Gate::rx(1, 0.5)]);
    }

    #[test]
    fn diagonal_only_circuit_vanishes() {
        let c = Circuit::new(2, vec![Gate::rz(0, 0.4), Gate::cz(0, 1), Gate::u1(1, 0.5)]).unwrap();
        assert!(elide_trailing_phases(&c).is_empty());
    }
}
