//! Grover search for uniquely satisfiable K-SAT formulas, with the oracle
//! built out of gates rather than assumed.
//!
//! The pipeline is:
//!
//! 1. [`formula`]: parse a CNF formula and classify it by brute force.
//! 2. [`compiler`]: turn it into a circuit of X, H and multi-controlled X/Z
//!    gates (clause evaluation, AND, phase kickback, uncompute, diffusion).
//! 3. [`simulator`]: run the circuit on a dense statevector and read off the
//!    variable-register distribution.
//! 4. [`cost`]: estimate trapped-ion pulse counts and wall-clock time for a
//!    gate inventory under two gate-realization strategies.
//!
//! ```
//! use groversat_core::{compile, simulate_plan, measure_variables, CnfFormula, CompileOptions};
//!
//! let f = CnfFormula::parse_infix("(~a|~b)&(a|b)&a").unwrap();
//! let plan = compile(&f, &CompileOptions::default()).unwrap();
//! assert_eq!(plan.register_size(), 6);
//!
//! let state = simulate_plan(&plan).unwrap();
//! let report = measure_variables(&state, &plan);
//! assert!((report.probability_of(plan.target_hint.as_ref().unwrap()) - 1.0).abs() < 1e-9);
//! ```
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod circuit;
pub mod compiler;
pub mod cost;
pub mod formula;
pub mod simulator;

pub use circuit::{
    Circuit, CircuitError, Control, Gate, GateInventory, GateKey, GateKind, Polarity, QubitRole,
    StageKind,
};
pub use compiler::{
    compile, CompileError, CompileOptions, GroverPlan, Iterations, KickbackStyle,
    WideClauseStrategy,
};
pub use cost::{Backend, CostError, CostReport, TrapConfig};
pub use formula::{Assignment, CnfFormula, FormulaError, Literal, SatClassification};
pub use simulator::{
    measure_variables, simulate_plan, uniform_state, MeasurementReport, SimError, StateVector,
};
