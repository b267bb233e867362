//! Directional gate-identity rewriting.
//!
//! A [`RewriteRule`] is a pattern of gate templates over qubit roles plus a
//! replacement over the same roles. Matching is wire-based: every template
//! after the first must be the gate immediately following an earlier
//! template's gate on at least one shared wire (and on every shared wire).

mod engine;
pub mod rules;

use std::f64::consts::PI;
use std::fmt;

use thiserror::Error;

use crate::ir::{canonical_angle, Circuit, Gate, GateKind};

pub use engine::{apply, exhaust, exhaust_counted, find_all, find_leftmost, find_leftmost_any, MatchSite};
pub(crate) use engine::{each_site_once, exhaust_any, rewrite_once};

/// Absolute tolerance for comparing angles against pattern constants and
/// for deciding that a summed rotation is zero.
pub const ANGLE_TOL: f64 = 1e-12;

/// True iff `a` and `b` agree modulo 4π within [`ANGLE_TOL`].
pub fn angles_match(a: f64, b: f64) -> bool {
    canonical_angle(a - b).abs() <= ANGLE_TOL
}

pub fn is_zero_angle(a: f64) -> bool {
    angles_match(a, 0.0)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RewriteError {
    #[error("match site for {0} is stale: the circuit no longer contains it")]
    StaleSite(RuleId),
    #[error("{rule} did not reach a fixed point within {budget} applications")]
    BudgetExceeded { rule: RuleId, budget: usize },
}

/// Identifies a rule: one of the ten table identities or a composite motif
/// used by a specific pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleId {
    /// Row `n` (1..=10) of the identity table.
    Identity(u8),
    /// `CZ · H·RZ(θ)·H · CZ` → `RZ(π/2) · CZ · RX(π/2)·RZ(θ)·RX(−π/2) · CZ · RZ(−π/2)`
    CzHrzhMotif,
    /// `RZ(θ)·RX(π/2)·RZ(π)` → `RZ(θ−π)·RX(−π/2)` (identity 4 then 8).
    RzRxPiFold,
    /// `H·RZ(θ)·H` → `RZ(π/2)·RX(π/2)·RZ(θ+π)·RX(π/2)·RZ(π/2)`
    HrzhToNative,
    /// `H·RZ(θ)` → `RZ(π/2)·RX(π/2)·RZ(θ+π/2)`
    HrzToNative,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleId::Identity(n) => write!(f, "identity {n}"),
            RuleId::CzHrzhMotif => f.write_str("CZ-sandwiched H-RZ-H motif"),
            RuleId::RzRxPiFold => f.write_str("RZ-RX-RZ(pi) fold"),
            RuleId::HrzhToNative => f.write_str("H-RZ-H to native"),
            RuleId::HrzToNative => f.write_str("H-RZ to native"),
        }
    }
}

/// Angle slot of a pattern gate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnglePattern {
    /// Binds angle variable `i`.
    Var(usize),
    /// Must equal this constant modulo 4π.
    Const(f64),
}

/// Linear angle expression `Σ coeff·var + offset` used by replacements.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleExpr {
    terms: Vec<(usize, f64)>,
    offset: f64,
}

impl AngleExpr {
    pub fn constant(c: f64) -> Self {
        AngleExpr {
            terms: Vec::new(),
            offset: c,
        }
    }

    pub fn var(i: usize) -> Self {
        AngleExpr {
            terms: vec![(i, 1.0)],
            offset: 0.0,
        }
    }

    pub fn neg(i: usize) -> Self {
        AngleExpr {
            terms: vec![(i, -1.0)],
            offset: 0.0,
        }
    }

    pub fn sum(i: usize, j: usize) -> Self {
        AngleExpr {
            terms: vec![(i, 1.0), (j, 1.0)],
            offset: 0.0,
        }
    }

    pub fn var_plus(i: usize, c: f64) -> Self {
        AngleExpr {
            terms: vec![(i, 1.0)],
            offset: c,
        }
    }

    pub fn eval(&self, vars: &[f64]) -> f64 {
        // Variables first, in order, so θi + θj is computed exactly as written.
        let mut acc: Option<f64> = None;
        for &(i, coeff) in &self.terms {
            let term = if coeff == 1.0 { vars[i] } else { coeff * vars[i] };
            acc = Some(acc.map_or(term, |a| a + term));
        }
        match acc {
            Some(a) if self.offset != 0.0 => a + self.offset,
            Some(a) => a,
            None => self.offset,
        }
    }

    /// Whether evaluating this can combine a bound angle with something else,
    /// and so possibly land on zero.
    fn combines(&self) -> bool {
        !self.terms.is_empty() && (self.terms.len() > 1 || self.offset != 0.0)
    }
}

/// One gate of a rule pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct GateTemplate {
    pub kind: GateKind,
    pub roles: Vec<usize>,
    pub angles: Vec<AnglePattern>,
}

/// One gate of a rule replacement.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplacementGate {
    pub kind: GateKind,
    pub roles: Vec<usize>,
    pub angles: Vec<AngleExpr>,
}

impl ReplacementGate {
    fn instantiate(&self, binding: &[usize], vars: &[f64]) -> Gate {
        let qubits = self.roles.iter().map(|&r| binding[r]).collect();
        let angles = self.angles.iter().map(|e| e.eval(vars)).collect();
        Gate::new(self.kind, qubits, angles).expect("rule replacements are well-formed")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RewriteRule {
    id: RuleId,
    n_roles: usize,
    n_vars: usize,
    pattern: Vec<GateTemplate>,
    replacement: Vec<ReplacementGate>,
    sums_angles: bool,
}

impl RewriteRule {
    /// # Panics
    /// If the pattern is empty, a later template shares no role with any
    /// earlier one, or the replacement uses a role or variable the pattern
    /// does not bind.
    pub fn new(id: RuleId, pattern: Vec<GateTemplate>, replacement: Vec<ReplacementGate>) -> Self {
        assert!(!pattern.is_empty(), "{id}: empty pattern");
        let mut seen_roles = Vec::new();
        let mut n_vars = 0;
        for (j, t) in pattern.iter().enumerate() {
            assert_eq!(t.roles.len(), t.kind.arity(), "{id}: template {j} arity");
            assert_eq!(t.angles.len(), t.kind.angle_count(), "{id}: template {j} angles");
            if j > 0 {
                assert!(
                    t.roles.iter().any(|r| seen_roles.contains(r)),
                    "{id}: template {j} is not wire-connected to earlier templates"
                );
            }
            for &r in &t.roles {
                if !seen_roles.contains(&r) {
                    seen_roles.push(r);
                }
            }
            for a in &t.angles {
                if let AnglePattern::Var(v) = a {
                    n_vars = n_vars.max(v + 1);
                }
            }
        }
        let n_roles = seen_roles.iter().max().map_or(0, |m| m + 1);
        assert_eq!(seen_roles.len(), n_roles, "{id}: roles must be 0..n");
        for g in &replacement {
            assert!(g.roles.iter().all(|r| seen_roles.contains(r)), "{id}: unbound role");
            assert!(
                g.angles.iter().flat_map(|e| &e.terms).all(|&(v, _)| v < n_vars),
                "{id}: unbound angle variable"
            );
        }
        let sums_angles = replacement.iter().flat_map(|g| &g.angles).any(AngleExpr::combines);
        RewriteRule {
            id,
            n_roles,
            n_vars,
            pattern,
            replacement,
            sums_angles,
        }
    }

    pub fn id(&self) -> RuleId {
        self.id
    }

    pub fn n_roles(&self) -> usize {
        self.n_roles
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn pattern(&self) -> &[GateTemplate] {
        &self.pattern
    }

    pub fn replacement(&self) -> &[ReplacementGate] {
        &self.replacement
    }

    /// Rules whose replacement angles add a bound angle to something; their
    /// results may be zero rotations, which the driver removes.
    pub fn sums_angles(&self) -> bool {
        self.sums_angles
    }

    /// Concrete pattern over qubits `0..n_roles` with the given variable
    /// values. Constant angles are used as written.
    pub fn pattern_circuit(&self, vars: &[f64]) -> Circuit {
        let gates = self
            .pattern
            .iter()
            .map(|t| {
                let angles = t
                    .angles
                    .iter()
                    .map(|a| match *a {
                        AnglePattern::Var(v) => vars[v],
                        AnglePattern::Const(c) => c,
                    })
                    .collect();
                Gate::new(t.kind, t.roles.clone(), angles).expect("well-formed template")
            })
            .collect();
        Circuit::new(self.n_roles, gates).expect("roles are in range")
    }

    /// Concrete replacement over qubits `0..n_roles`.
    pub fn replacement_circuit(&self, vars: &[f64]) -> Circuit {
        let identity: Vec<usize> = (0..self.n_roles).collect();
        let gates = self
            .replacement
            .iter()
            .map(|g| g.instantiate(&identity, vars))
            .collect();
        Circuit::new(self.n_roles, gates).expect("roles are in range")
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.id.fmt(f)
    }
}

pub(crate) const HALF_PI: f64 = PI / 2.0;
