#![allow(dead_code)]

use std::f64::consts::PI;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tfim_qcc::ir::{Circuit, Gate};
use tfim_qcc::rewrite::RewriteRule;
use tfim_qcc::sim::{circuit_unitary, global_phase_distance};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_angle(rng: &mut StdRng) -> f64 {
    rng.gen_range(-2.0 * PI..2.0 * PI)
}

/// Largest global-phase-adjusted entry difference between the two sides of
/// `rule` at the given angle values.
pub fn rule_defect(rule: &RewriteRule, vars: &[f64]) -> f64 {
    let lhs = circuit_unitary(&rule.pattern_circuit(vars)).unwrap();
    let rhs = circuit_unitary(&rule.replacement_circuit(vars)).unwrap();
    global_phase_distance(&lhs, &rhs).unwrap()
}

/// Random circuit over every gate kind the rewrite rules mention, biased
/// towards the special angles their patterns look for.
pub fn random_rewrite_input(rng: &mut StdRng, n_qubits: usize, len: usize) -> Circuit {
    let special = [PI / 2.0, -PI / 2.0, PI, -PI, 0.0];
    let angle = |rng: &mut StdRng| {
        if rng.gen_bool(0.5) {
            special[rng.gen_range(0..special.len())]
        } else {
            random_angle(rng)
        }
    };
    let mut gates = Vec::with_capacity(len);
    for _ in 0..len {
        let q = rng.gen_range(0..n_qubits);
        let mut other = rng.gen_range(0..n_qubits - 1);
        if other >= q {
            other += 1;
        }
        let g = match rng.gen_range(0..6) {
            0 => Gate::h(q),
            1 => Gate::rz(q, angle(rng)),
            2 => Gate::rx(q, angle(rng)),
            3 => Gate::cnot(q, other),
            4 => Gate::cz(q, other),
            _ => Gate::h(q),
        };
        gates.push(g);
    }
    Circuit::new(n_qubits, gates).unwrap()
}

/// Random circuit over the TFIM input set `{H, RZ, CNOT}`.
pub fn random_tfim_like(rng: &mut StdRng, n_qubits: usize, len: usize) -> Circuit {
    let mut gates = Vec::with_capacity(len);
    for _ in 0..len {
        let q = rng.gen_range(0..n_qubits);
        let mut other = rng.gen_range(0..n_qubits - 1);
        if other >= q {
            other += 1;
        }
        gates.push(match rng.gen_range(0..3) {
            0 => Gate::h(q),
            1 => Gate::rz(q, random_angle(rng)),
            _ => Gate::cnot(q, other),
        });
    }
    Circuit::new(n_qubits, gates).unwrap()
}
