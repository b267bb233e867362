use super::Circuit;

/// Per-qubit view of a circuit: for every qubit, the indices of the gates
/// touching it, in program order.
///
/// Two gates are adjacent on qubit `q` iff they are consecutive in `q`'s wire.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WireView {
    wires: Vec<Vec<usize>>,
}

pub fn build_wire_view(circuit: &Circuit) -> WireView {
    let mut wires = vec![Vec::new(); circuit.n_qubits()];
    for (i, gate) in circuit.gates().iter().enumerate() {
        for &q in gate.qubits() {
            wires[q].push(i);
        }
    }
    WireView { wires }
}

impl WireView {
    pub fn n_wires(&self) -> usize {
        self.wires.len()
    }

    pub fn wire(&self, q: usize) -> &[usize] {
        &self.wires[q]
    }

    /// The gate following `gate` on wire `q`, if `gate` touches `q` and is
    /// not the last gate there.
    pub fn next_on(&self, q: usize, gate: usize) -> Option<usize> {
        let wire = &self.wires[q];
        let pos = wire.binary_search(&gate).ok()?;
        wire.get(pos + 1).copied()
    }

    pub fn prev_on(&self, q: usize, gate: usize) -> Option<usize> {
        let wire = &self.wires[q];
        let pos = wire.binary_search(&gate).ok()?;
        pos.checked_sub(1).map(|p| wire[p])
    }

    /// Merges all wires back into program order, each gate listed once.
    pub fn merged(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.wires.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }
}
