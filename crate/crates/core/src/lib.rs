//! Compiler for Trotterized transverse-field Ising model circuits.
//!
//! The crate generates time-evolution circuits over `{H, RZ, CNOT}`, rewrites
//! them into the Rigetti or IBM native gate set with directional gate
//! identities, checks the results against a dense unitary simulator, and
//! benchmarks the compiled sizes against a naive gate-by-gate translation.

pub mod bench;
pub mod cli;
pub mod compile;
pub mod ir;
pub mod rewrite;
pub mod sim;
pub mod tfim;
