use super::{check_tfim_input, CompileError, Target};
use crate::ir::Circuit;
use crate::rewrite::exhaust;
use crate::rewrite::rules::identity;

/// Gate-by-gate translation into the target's native set with no
/// reductions and no elision. This is the benchmark baseline.
///
/// Rigetti rewrites every CNOT as `H·CZ·H` and then every H as
/// `RZ·RX·RZ`; IBM only expands the H gates, since CNOT is native there.
pub fn naive_translate(circuit: &Circuit, target: Target) -> Result<Circuit, CompileError> {
    check_tfim_input(circuit)?;
    let out = match target {
        Target::Rigetti => exhaust(&exhaust(circuit, &identity(1))?, &identity(2))?,
        Target::Ibm => exhaust(circuit, &identity(2))?,
    };
    debug_assert!(target.first_non_native(&out).is_none());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::Gate;

    #[test]
    fn naive_sizes() {
        let h = Circuit::new(1, vec![Gate::h(0)]).unwrap();
        for t in Target::ALL {
            assert_eq!(naive_translate(&h, t).unwrap().len(), 3);
        }
        let cx = Circuit::new(2, vec![Gate::cnot(0, 1)]).unwrap();
        assert_eq!(naive_translate(&cx, Target::Rigetti).unwrap().len(), 7);
        assert_eq!(naive_translate(&cx, Target::Ibm).unwrap().len(), 1);
    }
}
