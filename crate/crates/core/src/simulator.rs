//! Dense statevector simulation.
//!
//! Basis convention: qubit `q` is bit `q` of the basis index (qubit 0 is the
//! least significant bit). Because the compiler places variables at qubits
//! `0..n`, the low `n` bits of a basis index are the packed variable
//! assignment.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::compiler::GroverPlan;
use crate::formula::Assignment;

/// Default upper bound on the register size.
pub const MAX_QUBITS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error("{qubits} qubits outside the supported range 1..={limit}")]
    QubitCount { qubits: usize, limit: usize },
    #[error("gate `{gate}` invalid on a {qubit_count}-qubit state")]
    InvalidGate { gate: Gate, qubit_count: usize },
    #[error("state has {state} qubits but the circuit has {circuit}")]
    QubitCountMismatch { state: usize, circuit: usize },
    #[error("amplitude vector of length {0} is not a power of two")]
    NotPowerOfTwo(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    qubit_count: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// |0...0> on `qubits` qubits, at most [`MAX_QUBITS`].
    pub fn zero(qubits: usize) -> Result<Self, SimError> {
        Self::zero_with_limit(qubits, MAX_QUBITS)
    }

    pub fn zero_with_limit(qubits: usize, limit: usize) -> Result<Self, SimError> {
        Self::basis_with_limit(qubits, 0, limit)
    }

    /// Computational basis state |index>.
    pub fn basis(qubits: usize, index: usize) -> Result<Self, SimError> {
        Self::basis_with_limit(qubits, index, MAX_QUBITS)
    }

    fn basis_with_limit(qubits: usize, index: usize, limit: usize) -> Result<Self, SimError> {
        if qubits == 0 || qubits > limit || qubits >= usize::BITS as usize {
            return Err(SimError::QubitCount { qubits, limit });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << qubits];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector {
            qubit_count: qubits,
            amplitudes,
        })
    }

    /// Takes ownership of raw amplitudes; the caller is responsible for
    /// normalization.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self, SimError> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(SimError::NotPowerOfTwo(len));
        }
        Ok(StateVector {
            qubit_count: len.trailing_zeros() as usize,
            amplitudes,
        })
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amplitudes[index].norm_sqr()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<(), SimError> {
        if gate.validate(self.qubit_count).is_err() {
            return Err(SimError::InvalidGate {
                gate: gate.clone(),
                qubit_count: self.qubit_count,
            });
        }
        let t = 1usize << gate.target;
        let (mask, want) = gate.controls.iter().fold((0usize, 0usize), |(m, w), c| {
            let bit = 1 << c.qubit;
            (m | bit, if c.polarity.fires_on() { w | bit } else { w })
        });
        let amps = &mut self.amplitudes;
        match gate.kind {
            GateKind::PauliX | GateKind::MultiControlledX => {
                for i in 0..amps.len() {
                    if i & t == 0 && i & mask == want {
                        amps.swap(i, i | t);
                    }
                }
            }
            GateKind::Hadamard => {
                let s = core::f64::consts::FRAC_1_SQRT_2;
                for i in 0..amps.len() {
                    if i & t == 0 {
                        let (a, b) = (amps[i], amps[i | t]);
                        amps[i] = (a + b) * s;
                        amps[i | t] = (a - b) * s;
                    }
                }
            }
            GateKind::MultiControlledZ => {
                for (i, a) in amps.iter_mut().enumerate() {
                    if i & t != 0 && i & mask == want {
                        *a = -*a;
                    }
                }
            }
        }
        Ok(())
    }

    pub fn run(&mut self, circuit: &Circuit) -> Result<(), SimError> {
        if circuit.qubit_count() != self.qubit_count {
            return Err(SimError::QubitCountMismatch {
                state: self.qubit_count,
                circuit: circuit.qubit_count(),
            });
        }
        for g in circuit.gates() {
            self.apply(g)?;
        }
        Ok(())
    }
}

/// Equal superposition over all `2^qubits` basis states.
pub fn uniform_state(qubits: usize) -> Result<StateVector, SimError> {
    let mut s = StateVector::zero(qubits)?;
    let a = Complex64::new(libm::pow(2.0, -(qubits as f64) / 2.0), 0.0);
    s.amplitudes.iter_mut().for_each(|x| *x = a);
    Ok(s)
}

/// Applies `gate` to a copy of `state`.
pub fn apply(state: &StateVector, gate: &Gate) -> Result<StateVector, SimError> {
    let mut s = state.clone();
    s.apply(gate)?;
    Ok(s)
}

/// Runs `circuit` on a copy of `state`.
pub fn run(state: &StateVector, circuit: &Circuit) -> Result<StateVector, SimError> {
    let mut s = state.clone();
    s.run(circuit)?;
    Ok(s)
}

/// Exact outcome statistics for the variable register.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MeasurementReport {
    /// Marginal probability per packed variable assignment.
    pub probabilities: Vec<f64>,
    pub argmax: Assignment,
    /// Probability mass on basis states with any work ancilla set.
    pub ancilla_residual: f64,
}

impl MeasurementReport {
    pub fn probability_of(&self, assignment: &Assignment) -> f64 {
        self.probabilities[assignment.to_index() as usize]
    }
}

pub fn measure_variables(state: &StateVector, plan: &GroverPlan) -> MeasurementReport {
    let nvars = plan.layout.variables;
    let var_mask = (1usize << nvars) - 1;
    let work_mask = plan
        .layout
        .work_ancillas()
        .into_iter()
        .fold(0usize, |m, q| m | (1 << q));
    let mut probabilities = vec![0.0; 1 << nvars];
    let mut residual = 0.0;
    for (i, a) in state.amplitudes().iter().enumerate() {
        let p = a.norm_sqr();
        probabilities[i & var_mask] += p;
        if i & work_mask != 0 {
            residual += p;
        }
    }
    // First maximum wins, so ties resolve to the lowest index.
    let best = probabilities
        .iter()
        .enumerate()
        .fold(
            (0, f64::MIN),
            |acc, (i, &p)| if p > acc.1 { (i, p) } else { acc },
        )
        .0;
    MeasurementReport {
        probabilities,
        argmax: Assignment::from_index(nvars, best as u64),
        ancilla_residual: residual,
    }
}

/// Runs the whole plan from |0...0>.
pub fn simulate_plan(plan: &GroverPlan) -> Result<StateVector, SimError> {
    let mut s = StateVector::zero_with_limit(plan.register_size(), plan.options.max_qubits)?;
    s.run(&plan.circuit)?;
    Ok(s)
}

/// Measurement after 0, 1, ..., `max_iterations` Grover iterations, reusing
/// the plan's preamble and iteration block regardless of its own count.
pub fn iteration_sweep(
    plan: &GroverPlan,
    max_iterations: usize,
) -> Result<Vec<MeasurementReport>, SimError> {
    let mut s = StateVector::zero_with_limit(plan.register_size(), plan.options.max_qubits)?;
    s.run(&plan.preamble())?;
    let block = plan.iteration_block();
    let mut out = Vec::with_capacity(max_iterations + 1);
    out.push(measure_variables(&s, plan));
    for _ in 0..max_iterations {
        s.run(&block)?;
        out.push(measure_variables(&s, plan));
    }
    Ok(out)
}
