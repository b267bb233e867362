//! The identity table and the composite motifs the pipelines use.
//!
//! Patterns and replacements are written in circuit order (first gate is
//! applied first). Role 0 is the upper wire of each drawing (the control of
//! a CNOT), role 1 the lower.

use std::f64::consts::PI;

use super::{AngleExpr as E, AnglePattern as P, GateTemplate, ReplacementGate, RewriteRule, RuleId, HALF_PI};
use crate::ir::GateKind;

const A: usize = 0;
const B: usize = 1;

fn t(kind: GateKind, roles: &[usize], angles: &[P]) -> GateTemplate {
    GateTemplate {
        kind,
        roles: roles.to_vec(),
        angles: angles.to_vec(),
    }
}

fn r(kind: GateKind, roles: &[usize], angles: Vec<E>) -> ReplacementGate {
    ReplacementGate {
        kind,
        roles: roles.to_vec(),
        angles,
    }
}

fn rz(role: usize, e: E) -> ReplacementGate {
    r(GateKind::Rz, &[role], vec![e])
}

fn rx(role: usize, e: E) -> ReplacementGate {
    r(GateKind::Rx, &[role], vec![e])
}

fn h(role: usize) -> ReplacementGate {
    r(GateKind::H, &[role], vec![])
}

fn cz(a: usize, b: usize) -> ReplacementGate {
    r(GateKind::Cz, &[a, b], vec![])
}

fn cnot(c: usize, tg: usize) -> ReplacementGate {
    r(GateKind::Cnot, &[c, tg], vec![])
}

/// Identity `n` of the table, `1 ≤ n ≤ 10`.
///
/// # Panics
/// If `n` is outside `1..=10`.
pub fn identity(n: u8) -> RewriteRule {
    use GateKind::*;
    let id = RuleId::Identity(n);
    match n {
        // CNOT → H(t)·CZ·H(t)
        1 => RewriteRule::new(id, vec![t(Cnot, &[A, B], &[])], vec![h(B), cz(A, B), h(B)]),
        // H → RZ(π/2)·RX(π/2)·RZ(π/2)
        2 => RewriteRule::new(
            id,
            vec![t(H, &[A], &[])],
            vec![
                rz(A, E::constant(HALF_PI)),
                rx(A, E::constant(HALF_PI)),
                rz(A, E::constant(HALF_PI)),
            ],
        ),
        // CNOT(c,t) → H⊗H · CNOT(t,c) · H⊗H
        3 => RewriteRule::new(
            id,
            vec![t(Cnot, &[A, B], &[])],
            vec![h(A), h(B), cnot(B, A), h(A), h(B)],
        ),
        // RX(θ)·RZ(π) → RZ(−π)·RX(−θ)
        4 => RewriteRule::new(
            id,
            vec![t(Rx, &[A], &[P::Var(0)]), t(Rz, &[A], &[P::Const(PI)])],
            vec![rz(A, E::constant(-PI)), rx(A, E::neg(0))],
        ),
        // The rotation sandwiched between two CZs moves from the lower wire
        // to the upper one, and the trailing RX pair moves to the front.
        5 => RewriteRule::new(
            id,
            vec![
                t(Cz, &[A, B], &[]),
                t(Rx, &[B], &[P::Const(HALF_PI)]),
                t(Rz, &[B], &[P::Var(0)]),
                t(Rx, &[B], &[P::Const(-HALF_PI)]),
                t(Cz, &[A, B], &[]),
                t(Rx, &[A], &[P::Const(-HALF_PI)]),
                t(Rx, &[B], &[P::Const(HALF_PI)]),
            ],
            vec![
                rx(A, E::constant(-HALF_PI)),
                rx(B, E::constant(HALF_PI)),
                cz(A, B),
                rx(A, E::constant(HALF_PI)),
                rz(A, E::var(0)),
                rx(A, E::constant(-HALF_PI)),
                cz(A, B),
            ],
        ),
        // H·H → ∅
        6 => RewriteRule::new(id, vec![t(H, &[A], &[]), t(H, &[A], &[])], vec![]),
        // RX(θi)·RX(θj) → RX(θi+θj)
        7 => RewriteRule::new(
            id,
            vec![t(Rx, &[A], &[P::Var(0)]), t(Rx, &[A], &[P::Var(1)])],
            vec![rx(A, E::sum(0, 1))],
        ),
        // RZ(θi)·RZ(θj) → RZ(θi+θj)
        8 => RewriteRule::new(
            id,
            vec![t(Rz, &[A], &[P::Var(0)]), t(Rz, &[A], &[P::Var(1)])],
            vec![rz(A, E::sum(0, 1))],
        ),
        // RZ(θi)·CZ·RZ(θj) on one wire → CZ·RZ(θi+θj)
        9 => RewriteRule::new(
            id,
            vec![t(Rz, &[A], &[P::Var(0)]), t(Cz, &[A, B], &[]), t(Rz, &[A], &[P::Var(1)])],
            vec![cz(A, B), rz(A, E::sum(0, 1))],
        ),
        // RZ(θi)·CNOT·RZ(θj) on the control wire → CNOT·RZ(θi+θj)
        10 => RewriteRule::new(
            id,
            vec![t(Rz, &[A], &[P::Var(0)]), t(Cnot, &[A, B], &[]), t(Rz, &[A], &[P::Var(1)])],
            vec![cnot(A, B), rz(A, E::sum(0, 1))],
        ),
        _ => panic!("identity table has rows 1..=10, got {n}"),
    }
}

/// All ten table identities, in table order.
pub fn table() -> Vec<RewriteRule> {
    (1..=10).map(identity).collect()
}

/// Rigetti motif: `H·RZ(θ)·H` between two CZs on the same pair becomes the
/// native `RX(π/2)·RZ(θ)·RX(−π/2)` with flanking `RZ(±π/2)` outside the CZs.
pub fn cz_hrzh_motif() -> RewriteRule {
    use GateKind::*;
    RewriteRule::new(
        RuleId::CzHrzhMotif,
        vec![
            t(Cz, &[A, B], &[]),
            t(H, &[B], &[]),
            t(Rz, &[B], &[P::Var(0)]),
            t(H, &[B], &[]),
            t(Cz, &[A, B], &[]),
        ],
        vec![
            rz(B, E::constant(HALF_PI)),
            cz(A, B),
            rx(B, E::constant(HALF_PI)),
            rz(B, E::var(0)),
            rx(B, E::constant(-HALF_PI)),
            cz(A, B),
            rz(B, E::constant(-HALF_PI)),
        ],
    )
}

/// Rigetti fold: `RZ(θ)·RX(π/2)·RZ(π)` → `RZ(θ−π)·RX(−π/2)`.
pub fn rz_rx_pi_fold() -> RewriteRule {
    use GateKind::*;
    RewriteRule::new(
        RuleId::RzRxPiFold,
        vec![
            t(Rz, &[A], &[P::Var(0)]),
            t(Rx, &[A], &[P::Const(HALF_PI)]),
            t(Rz, &[A], &[P::Const(PI)]),
        ],
        vec![rz(A, E::var_plus(0, -PI)), rx(A, E::constant(-HALF_PI))],
    )
}

/// IBM motif: `H·RZ(θ)·H` → `RZ(π/2)·RX(π/2)·RZ(θ+π)·RX(π/2)·RZ(π/2)`.
pub fn hrzh_to_native() -> RewriteRule {
    use GateKind::*;
    RewriteRule::new(
        RuleId::HrzhToNative,
        vec![t(H, &[A], &[]), t(Rz, &[A], &[P::Var(0)]), t(H, &[A], &[])],
        vec![
            rz(A, E::constant(HALF_PI)),
            rx(A, E::constant(HALF_PI)),
            rz(A, E::var_plus(0, PI)),
            rx(A, E::constant(HALF_PI)),
            rz(A, E::constant(HALF_PI)),
        ],
    )
}

/// IBM single-Hadamard conversion: `H·RZ(θ)` → `RZ(π/2)·RX(π/2)·RZ(θ+π/2)`.
pub fn hrz_to_native() -> RewriteRule {
    use GateKind::*;
    RewriteRule::new(
        RuleId::HrzToNative,
        vec![t(H, &[A], &[]), t(Rz, &[A], &[P::Var(0)])],
        vec![
            rz(A, E::constant(HALF_PI)),
            rx(A, E::constant(HALF_PI)),
            rz(A, E::var_plus(0, HALF_PI)),
        ],
    )
}

/// Every rule in the crate: the table followed by the composites.
pub fn all() -> Vec<RewriteRule> {
    let mut rules = table();
    rules.extend([cz_hrzh_motif(), rz_rx_pi_fold(), hrzh_to_native(), hrz_to_native()]);
    rules
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summing_rules() {
        let summing: Vec<_> = all().into_iter().filter(|r| r.sums_angles()).map(|r| r.id()).collect();
        assert_eq!(
            summing,
            vec![
                RuleId::Identity(7),
                RuleId::Identity(8),
                RuleId::Identity(9),
                RuleId::Identity(10),
                RuleId::RzRxPiFold,
                RuleId::HrzhToNative,
                RuleId::HrzToNative,
            ]
        );
    }

    #[test]
    fn identity_five_is_seven_gates_both_sides() {
        let r = identity(5);
        assert_eq!(r.pattern().len(), 7);
        assert_eq!(r.replacement().len(), 7);
        assert_eq!(r.n_roles(), 2);
    }

    #[test]
    #[should_panic]
    fn no_identity_eleven() {
        identity(11);
    }
}
