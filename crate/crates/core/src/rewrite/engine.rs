use super::{angles_match, is_zero_angle, AnglePattern, GateTemplate, RewriteError, RewriteRule};
use std::ops::Range;

use crate::ir::{build_wire_view, Circuit, Gate, GateKind, WireView};

/// A concrete occurrence of a rule's pattern in a circuit.
#[derive(Debug, Clone)]
pub struct MatchSite<'r> {
    rule: &'r RewriteRule,
    binding: Vec<usize>,
    gates: Vec<usize>,
    vars: Vec<f64>,
}

impl PartialEq for MatchSite<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.rule.id() == other.rule.id()
            && self.binding == other.binding
            && self.gates == other.gates
            && self.vars.len() == other.vars.len()
            && self.vars.iter().zip(&other.vars).all(|(a, b)| a.to_bits() == b.to_bits())
    }
}

impl<'r> MatchSite<'r> {
    pub fn rule(&self) -> &'r RewriteRule {
        self.rule
    }

    /// Qubit bound to each role.
    pub fn binding(&self) -> &[usize] {
        &self.binding
    }

    /// Matched gate index for each pattern template, in template order.
    pub fn gate_indices(&self) -> &[usize] {
        &self.gates
    }

    pub fn angle_vars(&self) -> &[f64] {
        &self.vars
    }

    /// Smallest matched gate index (always the first template's gate).
    pub fn first_index(&self) -> usize {
        self.gates[0]
    }
}

fn bind_role(binding: &mut [Option<usize>], role: usize, q: usize) -> bool {
    match binding[role] {
        Some(bound) => bound == q,
        None => {
            if binding.contains(&Some(q)) {
                return false;
            }
            binding[role] = Some(q);
            true
        }
    }
}

fn match_gate(tpl: &GateTemplate, gate: &Gate, binding: &mut Vec<Option<usize>>, vars: &mut [Option<f64>]) -> bool {
    if tpl.kind != gate.kind() {
        return false;
    }
    let qs = gate.qubits();
    let roles_ok = if tpl.roles.len() == 1 {
        bind_role(binding, tpl.roles[0], qs[0])
    } else {
        let orientations: &[[usize; 2]] = if gate.kind() == GateKind::Cz {
            &[[qs[0], qs[1]], [qs[1], qs[0]]]
        } else {
            &[[qs[0], qs[1]]]
        };
        let mut ok = false;
        for o in orientations {
            let mut trial = binding.clone();
            if bind_role(&mut trial, tpl.roles[0], o[0]) && bind_role(&mut trial, tpl.roles[1], o[1]) {
                *binding = trial;
                ok = true;
                break;
            }
        }
        ok
    };
    if !roles_ok {
        return false;
    }
    tpl.angles.iter().zip(gate.angles()).all(|(pat, &value)| match *pat {
        AnglePattern::Const(c) => angles_match(value, c),
        AnglePattern::Var(v) => match vars[v] {
            Some(bound) => angles_match(bound, value),
            None => {
                vars[v] = Some(value);
                true
            }
        },
    })
}

/// Initial role bindings the first template can take at `anchor`, in
/// ascending order of the bound qubits.
fn anchor_bindings(rule: &RewriteRule, gate: &Gate) -> Vec<Vec<Option<usize>>> {
    let tpl = &rule.pattern()[0];
    if tpl.kind != gate.kind() {
        return Vec::new();
    }
    let qs = gate.qubits();
    let mut orientations = vec![qs.to_vec()];
    if gate.kind() == GateKind::Cz {
        orientations.push(vec![qs[1], qs[0]]);
        orientations.sort();
    }
    orientations
        .into_iter()
        .map(|o| {
            let mut b = vec![None; rule.n_roles()];
            for (&role, q) in tpl.roles.iter().zip(o) {
                b[role] = Some(q);
            }
            b
        })
        .collect()
}

fn try_match<'r>(
    circuit: &Circuit,
    wires: &WireView,
    rule: &'r RewriteRule,
    anchor: usize,
    mut binding: Vec<Option<usize>>,
) -> Option<MatchSite<'r>> {
    let gates = circuit.gates();
    let pattern = rule.pattern();
    let mut vars = vec![None; rule.n_vars()];
    if !match_gate(&pattern[0], &gates[anchor], &mut binding, &mut vars) {
        return None;
    }
    let mut matched = Vec::with_capacity(pattern.len());
    matched.push(anchor);
    for (j, tpl) in pattern.iter().enumerate().skip(1) {
        let mut candidate = None;
        for &role in &tpl.roles {
            let Some(q) = binding[role] else { continue };
            let prev = (0..j).rev().find(|&i| pattern[i].roles.contains(&role))?;
            let next = wires.next_on(q, matched[prev])?;
            match candidate {
                None => candidate = Some(next),
                Some(c) if c != next => return None,
                Some(_) => {}
            }
        }
        let idx = candidate?;
        if !match_gate(tpl, &gates[idx], &mut binding, &mut vars) {
            return None;
        }
        matched.push(idx);
    }
    if !is_convex(circuit, &matched) {
        return None;
    }
    Some(MatchSite {
        rule,
        binding: binding.into_iter().map(|b| b.expect("all roles bound")).collect(),
        gates: matched,
        vars: vars.into_iter().map(|v| v.expect("all vars bound")).collect(),
    })
}

/// Splits the unmatched gates inside a match's span into those that must
/// stay before the replacement and those downstream of a matched gate.
/// Returns `None` if some downstream gate also feeds a later matched gate,
/// in which case the matched gates cannot be replaced as one block.
fn partition_span(circuit: &Circuit, matched: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
    let first = matched[0];
    let last = *matched.iter().max().expect("non-empty");
    let mut is_matched = vec![false; last - first + 1];
    for &m in matched {
        is_matched[m - first] = true;
    }
    let n = circuit.n_qubits();
    let mut downstream = vec![false; n];
    let mut through_unmatched = vec![false; n];
    let (mut before, mut after) = (Vec::new(), Vec::new());
    for i in first..=last {
        let qs = circuit.gates()[i].qubits();
        if is_matched[i - first] {
            if qs.iter().any(|&q| through_unmatched[q]) {
                return None;
            }
            qs.iter().for_each(|&q| downstream[q] = true);
        } else if qs.iter().any(|&q| downstream[q]) {
            qs.iter().for_each(|&q| {
                downstream[q] = true;
                through_unmatched[q] = true;
            });
            after.push(i);
        } else {
            before.push(i);
        }
    }
    Some((before, after))
}

fn is_convex(circuit: &Circuit, matched: &[usize]) -> bool {
    partition_span(circuit, matched).is_some()
}

/// Every match anchored at `anchor`, in binding order.
fn matches_at<'r>(circuit: &Circuit, wires: &WireView, rule: &'r RewriteRule, anchor: usize) -> Vec<MatchSite<'r>> {
    anchor_bindings(rule, &circuit.gates()[anchor])
        .into_iter()
        .filter_map(|b| try_match(circuit, wires, rule, anchor, b))
        .collect()
}

/// The match with the smallest first gate index; ties go to the binding with
/// the lower qubits.
pub fn find_leftmost<'r>(circuit: &Circuit, rule: &'r RewriteRule) -> Option<MatchSite<'r>> {
    find_leftmost_any(circuit, std::slice::from_ref(rule))
}

/// Leftmost match over several rules; at equal positions earlier rules win.
pub fn find_leftmost_any<'r>(circuit: &Circuit, rules: &'r [RewriteRule]) -> Option<MatchSite<'r>> {
    let wires = build_wire_view(circuit);
    (0..circuit.len()).find_map(|anchor| {
        rules
            .iter()
            .find_map(|rule| matches_at(circuit, &wires, rule, anchor).into_iter().next())
    })
}

/// Every match of `rule` (possibly overlapping), ordered by position.
pub fn find_all<'r>(circuit: &Circuit, rule: &'r RewriteRule) -> Vec<MatchSite<'r>> {
    let wires = build_wire_view(circuit);
    (0..circuit.len())
        .flat_map(|anchor| matches_at(circuit, &wires, rule, anchor))
        .collect()
}

/// Replaces the site's gates with the rule's replacement. Unmatched gates
/// inside the span keep their relative order, placed before or after the
/// replacement according to their dependencies. Returns the new circuit and
/// the index range the replacement occupies.
fn apply_unchecked(circuit: &Circuit, site: &MatchSite<'_>) -> (Circuit, Range<usize>) {
    let gates = circuit.gates();
    let (before, after) = partition_span(circuit, &site.gates).expect("matched sites are convex");
    let first = site.first_index();
    let last = *site.gates.iter().max().expect("non-empty");
    let replacement = site.rule.replacement();
    let mut out = Vec::with_capacity(gates.len() + replacement.len());
    out.extend_from_slice(&gates[..first]);
    out.extend(before.iter().map(|&i| gates[i].clone()));
    let start = out.len();
    out.extend(replacement.iter().map(|g| g.instantiate(&site.binding, &site.vars)));
    let end = out.len();
    out.extend(after.iter().map(|&i| gates[i].clone()));
    out.extend_from_slice(&gates[last + 1..]);
    (Circuit::from_trusted(circuit.n_qubits(), out), start..end)
}

/// Applies a site found on `circuit`. Fails if `circuit` no longer contains
/// the exact same match.
pub fn apply(circuit: &Circuit, site: &MatchSite<'_>) -> Result<Circuit, RewriteError> {
    let stale = || RewriteError::StaleSite(site.rule.id());
    let anchor = site.first_index();
    if anchor >= circuit.len() || site.gates.iter().any(|&i| i >= circuit.len()) {
        return Err(stale());
    }
    let wires = build_wire_view(circuit);
    if !matches_at(circuit, &wires, site.rule, anchor).contains(site) {
        return Err(stale());
    }
    Ok(apply_unchecked(circuit, site).0)
}

fn drop_zero_rotations(circuit: Circuit, span: Range<usize>) -> (Circuit, Range<usize>) {
    let n = circuit.n_qubits();
    let mut removed = 0;
    let gates: Vec<Gate> = circuit
        .into_gates()
        .into_iter()
        .enumerate()
        .filter(|(i, g)| {
            let zero = span.contains(i) && matches!(g.kind(), GateKind::Rx | GateKind::Rz) && is_zero_angle(g.angles()[0]);
            removed += zero as usize;
            !zero
        })
        .map(|(_, g)| g)
        .collect();
    (Circuit::from_trusted(n, gates), span.start..span.end - removed)
}

/// Applies one site and, for angle-summing rules, removes any zero rotation
/// the replacement produced. Also returns where the replacement ended up.
pub(crate) fn rewrite_once_span(circuit: &Circuit, site: &MatchSite<'_>) -> (Circuit, Range<usize>) {
    let (next, span) = apply_unchecked(circuit, site);
    if site.rule.sums_angles() {
        drop_zero_rotations(next, span)
    } else {
        (next, span)
    }
}

pub(crate) fn rewrite_once(circuit: &Circuit, site: &MatchSite<'_>) -> Circuit {
    rewrite_once_span(circuit, site).0
}

/// Leftmost match over `rules` whose matched gates all satisfy `allowed`.
fn find_leftmost_where<'r>(
    circuit: &Circuit,
    rules: &'r [RewriteRule],
    allowed: impl Fn(usize) -> bool,
) -> Option<MatchSite<'r>> {
    let wires = build_wire_view(circuit);
    (0..circuit.len()).filter(|&i| allowed(i)).find_map(|anchor| {
        rules.iter().find_map(|rule| {
            matches_at(circuit, &wires, rule, anchor)
                .into_iter()
                .find(|site| site.gates.iter().all(|&i| allowed(i)))
        })
    })
}

/// Leftmost-first rewriting over several rules until none matches. The
/// budget is ten applications per gate of the input.
pub(crate) fn exhaust_any(circuit: &Circuit, rules: &[RewriteRule]) -> Result<Circuit, RewriteError> {
    let budget = 10 * circuit.len();
    let mut current = circuit.clone();
    let mut applied = 0;
    while let Some(site) = find_leftmost_any(&current, rules) {
        if applied == budget {
            return Err(RewriteError::BudgetExceeded {
                rule: site.rule.id(),
                budget,
            });
        }
        current = rewrite_once(&current, &site);
        applied += 1;
    }
    Ok(current)
}

/// Rewrites leftmost-first, but only at sites made entirely of gates that no
/// earlier rewrite in this call produced. Always terminates, even for rules
/// whose replacement contains their own pattern.
pub(crate) fn each_site_once(circuit: &Circuit, rules: &[RewriteRule]) -> Circuit {
    let mut current = circuit.clone();
    let mut produced = vec![false; current.len()];
    while let Some(site) = find_leftmost_where(&current, rules, |i| !produced[i]) {
        let (before, after) = partition_span(&current, &site.gates).expect("matched sites are convex");
        let first = site.first_index();
        let last = *site.gates.iter().max().expect("non-empty");
        let (next, span) = rewrite_once_span(&current, &site);
        let mut mask = Vec::with_capacity(next.len());
        mask.extend_from_slice(&produced[..first]);
        mask.extend(before.iter().map(|&i| produced[i]));
        mask.extend(std::iter::repeat_n(true, span.len()));
        mask.extend(after.iter().map(|&i| produced[i]));
        mask.extend_from_slice(&produced[last + 1..]);
        debug_assert_eq!(mask.len(), next.len());
        produced = mask;
        current = next;
    }
    current
}

/// Rewrites leftmost-first until no match remains.
pub fn exhaust(circuit: &Circuit, rule: &RewriteRule) -> Result<Circuit, RewriteError> {
    exhaust_counted(circuit, rule).map(|(c, _)| c)
}

/// [`exhaust`], also reporting how many rewrites were applied. The budget is
/// ten applications per gate of the input.
pub fn exhaust_counted(circuit: &Circuit, rule: &RewriteRule) -> Result<(Circuit, usize), RewriteError> {
    let budget = 10 * circuit.len();
    let mut current = circuit.clone();
    let mut applied = 0;
    while let Some(site) = find_leftmost(&current, rule) {
        if applied == budget {
            return Err(RewriteError::BudgetExceeded { rule: rule.id(), budget });
        }
        current = rewrite_once(&current, &site);
        applied += 1;
    }
    Ok((current, applied))
}
