use std::time::Instant;

use serde::Serialize;

use super::{check_tfim_input, elide_trailing_phases, CompileError, Target};
use crate::ir::Circuit;
use crate::rewrite::rules::{cz_hrzh_motif, hrz_to_native, hrzh_to_native, identity, rz_rx_pi_fold};
use crate::rewrite::{each_site_once, exhaust_any, find_leftmost_any, rewrite_once, RewriteError, RewriteRule};

/// How a pass drives its rules.
#[derive(Debug, Clone)]
pub enum PassMode {
    /// Rewrite leftmost-first until no match remains.
    Exhaust,
    /// Rewrite every match once, left to right, never revisiting gates a
    /// rewrite produced. For rules whose output matches their own pattern.
    EachSiteOnce,
    /// Before every single outer rewrite, run `inner` to a fixed point.
    Nested(RewriteRule),
}

#[derive(Debug, Clone)]
pub struct Pass {
    name: &'static str,
    /// Candidate rules; at equal positions earlier rules win.
    rules: Vec<RewriteRule>,
    mode: PassMode,
    reductive: bool,
}

impl Pass {
    pub fn new(name: &'static str, rules: Vec<RewriteRule>, mode: PassMode, reductive: bool) -> Self {
        assert!(!rules.is_empty(), "pass {name} has no rules");
        Pass {
            name,
            rules,
            mode,
            reductive,
        }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn mode(&self) -> &PassMode {
        &self.mode
    }

    /// Whether the pass never increases the gate count.
    pub fn is_reductive(&self) -> bool {
        self.reductive
    }

    fn run(&self, circuit: Circuit) -> Result<Circuit, RewriteError> {
        match &self.mode {
            PassMode::Exhaust => exhaust_any(&circuit, &self.rules),
            PassMode::EachSiteOnce => Ok(each_site_once(&circuit, &self.rules)),
            PassMode::Nested(inner) => {
                let budget = 10 * circuit.len();
                let mut current = circuit;
                let mut applied = 0;
                loop {
                    current = exhaust_any(&current, std::slice::from_ref(inner))?;
                    let Some(site) = find_leftmost_any(&current, &self.rules) else {
                        break;
                    };
                    if applied == budget {
                        return Err(RewriteError::BudgetExceeded {
                            rule: self.rules[0].id(),
                            budget,
                        });
                    }
                    current = rewrite_once(&current, &site);
                    applied += 1;
                }
                Ok(current)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompileOptions {
    /// Drop trailing diagonal gates after the passes.
    pub elide_trailing: bool,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions { elide_trailing: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PassTrace {
    pub pass: String,
    pub gate_count: usize,
    pub reductive: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompileReport {
    pub target: Target,
    pub input_gates: usize,
    pub output_gates: usize,
    /// Gate count after each pass, in execution order.
    pub trace: Vec<PassTrace>,
    pub wall_time_ms: f64,
}

/// An ordered list of passes compiling TFIM circuits for one target.
#[derive(Debug, Clone)]
pub struct PassPipeline {
    target: Target,
    passes: Vec<Pass>,
}

impl PassPipeline {
    pub fn new(target: Target, passes: Vec<Pass>) -> Self {
        PassPipeline { target, passes }
    }

    pub fn for_target(target: Target) -> Self {
        match target {
            Target::Rigetti => Self::rigetti(),
            Target::Ibm => Self::ibm(),
        }
    }

    pub fn rigetti() -> Self {
        use PassMode::*;
        PassPipeline::new(
            Target::Rigetti,
            vec![
                Pass::new("cnot-to-cz", vec![identity(1)], Exhaust, false),
                Pass::new("cancel-h-pairs", vec![identity(6)], Exhaust, true),
                Pass::new("cz-hrzh-motif", vec![cz_hrzh_motif()], Exhaust, false),
                Pass::new("h-to-native", vec![identity(2)], Exhaust, false),
                Pass::new("merge-rz", vec![identity(8)], Exhaust, true),
                Pass::new("reorder-cz-rx-with-rx-merge", vec![identity(5)], Nested(identity(7)), true),
                Pass::new("merge-rz-again", vec![identity(8)], Exhaust, true),
                Pass::new("fold-rz-pi", vec![rz_rx_pi_fold()], Exhaust, true),
            ],
        )
    }

    pub fn ibm() -> Self {
        use PassMode::*;
        PassPipeline::new(
            Target::Ibm,
            vec![
                Pass::new("reverse-cnot", vec![identity(3)], EachSiteOnce, false),
                Pass::new("cancel-h-pairs", vec![identity(6)], Exhaust, true),
                Pass::new("hrzh-to-native-with-control-rz-merge", vec![hrzh_to_native()], Nested(identity(10)), false),
                Pass::new(
                    "h-to-native-with-rz-merge",
                    vec![hrz_to_native(), identity(2)],
                    Nested(identity(8)),
                    false,
                ),
            ],
        )
    }

    pub fn target(&self) -> Target {
        self.target
    }

    pub fn passes(&self) -> &[Pass] {
        &self.passes
    }

    pub fn run(&self, circuit: &Circuit, options: &CompileOptions) -> Result<(Circuit, CompileReport), CompileError> {
        check_tfim_input(circuit)?;
        let start = Instant::now();
        let mut trace = Vec::with_capacity(self.passes.len() + 1);
        let mut current = circuit.clone();
        for pass in &self.passes {
            current = pass.run(current)?;
            trace.push(PassTrace {
                pass: pass.name.to_string(),
                gate_count: current.len(),
                reductive: pass.reductive,
            });
        }
        if options.elide_trailing {
            current = elide_trailing_phases(&current);
            trace.push(PassTrace {
                pass: "elide-trailing-phases".to_string(),
                gate_count: current.len(),
                reductive: true,
            });
        }
        let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
        if let Some((index, gate)) = self.target.first_non_native(&current) {
            return Err(CompileError::NonNative {
                target: self.target,
                index,
                gate: gate.to_string(),
            });
        }
        let report = CompileReport {
            target: self.target,
            input_gates: circuit.len(),
            output_gates: current.len(),
            trace,
            wall_time_ms,
        };
        Ok((current, report))
    }
}
