//! CNF formula to Grover-search circuit.
//!
//! The compiled oracle follows the compute / kickback / uncompute pattern:
//!
//! 1. **Clause stage.** Each clause with two or more literals gets an
//!    ancilla. By De Morgan, `l1 ∨ l2 ∨ ...` is `¬(¬l1 ∧ ¬l2 ∧ ...)`, so one
//!    multi-controlled X firing when every literal is false, followed by a
//!    Pauli-X, leaves the ancilla holding the clause value. Clauses wider than
//!    two are cascaded through intermediate ancillas by default.
//! 2. **AND stage.** One multi-controlled X onto the result qubit, controlled
//!    by the clause ancillas and, for single-literal clauses, directly by the
//!    variable with the literal's polarity.
//! 3. **Kickback.** A controlled-X from the result onto a qubit held in
//!    (|0> − |1>)/√2, imprinting −1 on satisfying assignments.
//! 4. **Uncompute.** Stages 2 and 1 in reverse, returning every work ancilla
//!    to |0>.
//!
//! The diffusion block is `H X C_PF X H` on the variable register with the
//! overall −1 dropped.
//!
//! Register layout, low index first: variables (formula order),
//! intermediates, clause ancillas, result, kickback.

use alloc::vec;
use alloc::vec::Vec;

use crate::circuit::{Circuit, CircuitError, Control, Gate, QubitRole, StageKind};
use crate::formula::{Assignment, CnfFormula, FormulaError, Literal, SatClassification};

/// Largest register the dense simulator accepts by default.
pub const DEFAULT_MAX_QUBITS: usize = 24;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CompileError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error("formula is not uniquely satisfiable ({0})")]
    NotUnique(SatClassification),
    #[error("register of {required} qubits exceeds the limit of {limit}")]
    RegisterTooLarge { required: usize, limit: usize },
    #[error("a fixed iteration count must be at least 1")]
    ZeroIterations,
    #[error("the search register needs at least one variable")]
    NoVariables,
    #[error("the clause stage needs at least one clause")]
    EmptyFormula,
    #[error("the intermediate-state view needs a result qubit, which direct-phase kickback omits")]
    NoResultQubit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum KickbackStyle {
    /// The AND stage writes a result qubit, which a controlled-X copies onto
    /// the kickback qubit.
    #[default]
    SeparateAncilla,
    /// The AND stage targets the kickback qubit directly; no result qubit.
    DirectPhase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum WideClauseStrategy {
    /// Two-literal OR steps through intermediate ancillas.
    #[default]
    Cascade,
    /// One wide multi-controlled X per clause.
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Iterations {
    #[default]
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CompileOptions {
    pub kickback_style: KickbackStyle,
    pub wide_clause_strategy: WideClauseStrategy,
    pub iterations: Iterations,
    /// Compile formulas that are not uniquely satisfiable.
    pub force: bool,
    pub max_qubits: usize,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions {
            kickback_style: KickbackStyle::default(),
            wide_clause_strategy: WideClauseStrategy::default(),
            iterations: Iterations::default(),
            force: false,
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }
}

/// Qubit assignment for one formula under one set of options.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RegisterLayout {
    pub variables: usize,
    /// Per clause: the ancilla holding its value, `None` for single literals.
    pub clause_ancillas: Vec<Option<usize>>,
    /// Per clause: cascade intermediates in step order.
    pub intermediates: Vec<Vec<usize>>,
    pub result: Option<usize>,
    pub kickback: usize,
    pub size: usize,
}

impl RegisterLayout {
    pub fn new(formula: &CnfFormula, opts: &CompileOptions) -> Self {
        let variables = formula.variable_count();
        let mut next = variables;
        let intermediates: Vec<Vec<usize>> = formula
            .clauses()
            .iter()
            .map(|c| {
                let steps = match opts.wide_clause_strategy {
                    WideClauseStrategy::Cascade if c.width() >= 3 => c.width() - 2,
                    _ => 0,
                };
                let ids = (next..next + steps).collect();
                next += steps;
                ids
            })
            .collect();
        let clause_ancillas = formula
            .clauses()
            .iter()
            .map(|c| {
                (c.width() >= 2).then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect();
        let result = match opts.kickback_style {
            KickbackStyle::SeparateAncilla => {
                next += 1;
                Some(next - 1)
            }
            KickbackStyle::DirectPhase => None,
        };
        let kickback = next;
        RegisterLayout {
            variables,
            clause_ancillas,
            intermediates,
            result,
            kickback,
            size: next + 1,
        }
    }

    pub fn roles(&self, formula: &CnfFormula) -> Vec<QubitRole> {
        let mut roles = vec![QubitRole::Kickback; self.size];
        for (i, name) in formula.variables().iter().enumerate() {
            roles[i] = QubitRole::Variable(name.clone());
        }
        for (clause, ids) in self.intermediates.iter().enumerate() {
            for (step, &q) in ids.iter().enumerate() {
                roles[q] = QubitRole::Intermediate { clause, step };
            }
        }
        for (clause, q) in self.clause_ancillas.iter().enumerate() {
            if let Some(q) = *q {
                roles[q] = QubitRole::ClauseAncilla(clause);
            }
        }
        if let Some(r) = self.result {
            roles[r] = QubitRole::Result;
        }
        roles
    }

    /// Clause ancillas, intermediates and result: everything that must come
    /// back to |0> after an oracle block.
    pub fn work_ancillas(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.intermediates.iter().flatten().copied().collect();
        out.extend(self.clause_ancillas.iter().flatten().copied());
        out.extend(self.result);
        out.sort_unstable();
        out
    }

    /// Where the AND stage writes F(x).
    pub fn and_target(&self) -> usize {
        self.result.unwrap_or(self.kickback)
    }

    fn empty_circuit(&self, formula: &CnfFormula) -> Circuit {
        Circuit::new(self.roles(formula)).expect("layout roles are unique")
    }
}

/// The control that fires when `lit` is false.
fn fires_when_false(lit: Literal) -> Control {
    if lit.negated {
        Control::on_one(lit.variable)
    } else {
        Control::on_zero(lit.variable)
    }
}

/// The control that fires when `lit` is true.
fn fires_when_true(lit: Literal) -> Control {
    if lit.negated {
        Control::on_zero(lit.variable)
    } else {
        Control::on_one(lit.variable)
    }
}

fn emit_or(c: &mut Circuit, controls: Vec<Control>, target: usize) -> Result<(), CircuitError> {
    c.append(Gate::mcx(controls, target))?;
    c.append(Gate::x(target))
}

fn clause_stage(formula: &CnfFormula, layout: &RegisterLayout) -> Result<Circuit, CompileError> {
    let mut c = layout.empty_circuit(formula);
    for (ci, clause) in formula.clauses().iter().enumerate() {
        let Some(ancilla) = layout.clause_ancillas[ci] else {
            continue;
        };
        let lits = clause.literals();
        let steps = &layout.intermediates[ci];
        if steps.is_empty() {
            emit_or(
                &mut c,
                lits.iter().map(|&l| fires_when_false(l)).collect(),
                ancilla,
            )?;
            continue;
        }
        // Left-associated cascade: acc = lits[0]; acc = acc ∨ lits[j].
        let mut acc = fires_when_false(lits[0]);
        for (j, &lit) in lits.iter().enumerate().skip(1) {
            let target = steps.get(j - 1).copied().unwrap_or(ancilla);
            emit_or(&mut c, vec![acc, fires_when_false(lit)], target)?;
            acc = Control::on_zero(target);
        }
    }
    Ok(c)
}

fn and_stage(formula: &CnfFormula, layout: &RegisterLayout) -> Result<Circuit, CompileError> {
    let mut c = layout.empty_circuit(formula);
    let target = layout.and_target();
    if formula.clause_count() == 0 {
        // Vacuous conjunction: F ≡ 1.
        c.append(Gate::x(target))?;
        return Ok(c);
    }
    let mut controls: Vec<Control> = Vec::new();
    for (ci, clause) in formula.clauses().iter().enumerate() {
        let ctl = match layout.clause_ancillas[ci] {
            Some(q) => Control::on_one(q),
            None => fires_when_true(clause.literals()[0]),
        };
        match controls.iter().find(|d| d.qubit == ctl.qubit) {
            Some(d) if d.polarity != ctl.polarity => {
                // x ∧ ¬x: F ≡ 0, the result never flips.
                return Ok(c);
            }
            Some(_) => {}
            None => controls.push(ctl),
        }
    }
    c.append(Gate::mcx(controls, target))?;
    Ok(c)
}

fn kickback_stage(formula: &CnfFormula, layout: &RegisterLayout) -> Result<Circuit, CompileError> {
    let mut c = layout.empty_circuit(formula);
    if let Some(r) = layout.result {
        c.append(Gate::mcx(vec![Control::on_one(r)], layout.kickback))?;
    }
    Ok(c)
}

/// Clause-evaluation fragment over the full plan register.
pub fn compile_clause_stage(
    formula: &CnfFormula,
    opts: &CompileOptions,
) -> Result<Circuit, CompileError> {
    if formula.clause_count() == 0 {
        return Err(CompileError::EmptyFormula);
    }
    clause_stage(formula, &RegisterLayout::new(formula, opts))
}

/// AND-aggregation fragment over the full plan register.
pub fn compile_and_stage(
    formula: &CnfFormula,
    opts: &CompileOptions,
) -> Result<Circuit, CompileError> {
    and_stage(formula, &RegisterLayout::new(formula, opts))
}

/// Kickback fragment: a controlled-X from the result onto the kickback qubit,
/// or nothing under [`KickbackStyle::DirectPhase`].
pub fn compile_kickback(
    formula: &CnfFormula,
    opts: &CompileOptions,
) -> Result<Circuit, CompileError> {
    kickback_stage(formula, &RegisterLayout::new(formula, opts))
}

fn check_classification(
    formula: &CnfFormula,
    opts: &CompileOptions,
) -> Result<Option<Assignment>, CompileError> {
    let class = formula.classify()?;
    match class {
        SatClassification::Unique(a) => Ok(Some(a)),
        _ if opts.force => Ok(None),
        other => Err(CompileError::NotUnique(other)),
    }
}

fn oracle(formula: &CnfFormula, layout: &RegisterLayout) -> Result<[Circuit; 4], CompileError> {
    let clauses = clause_stage(formula, layout)?;
    let and = and_stage(formula, layout)?;
    let kick = kickback_stage(formula, layout)?;
    // With DirectPhase the AND gate is the phase kick itself, so only the
    // clause stage is undone.
    let uncompute = match layout.result {
        Some(_) => {
            let mut compute = clauses.clone();
            compute.extend_from(&and)?;
            compute.invert()
        }
        None => clauses.invert(),
    };
    Ok([clauses, and, kick, uncompute])
}

/// Compute, kickback and uncompute as one fragment.
pub fn compile_oracle(
    formula: &CnfFormula,
    opts: &CompileOptions,
) -> Result<Circuit, CompileError> {
    check_classification(formula, opts)?;
    let layout = RegisterLayout::new(formula, opts);
    let mut c = layout.empty_circuit(formula);
    for part in oracle(formula, &layout)? {
        c.extend_from(&part)?;
    }
    Ok(c)
}

/// Inversion about the average on `nvars` qubits (indices `0..nvars`), up to
/// a global phase.
pub fn compile_diffusion(nvars: usize) -> Result<Circuit, CompileError> {
    let mut c = Circuit::with_qubits(nvars);
    append_diffusion(&mut c, nvars)?;
    Ok(c)
}

fn append_diffusion(c: &mut Circuit, nvars: usize) -> Result<(), CompileError> {
    match nvars {
        0 => return Err(CompileError::NoVariables),
        // 2/N − δ_ij with N = 2 is exactly Pauli-X.
        1 => c.append(Gate::x(0))?,
        _ => {
            for q in 0..nvars {
                c.append(Gate::h(q))?;
            }
            for q in 0..nvars {
                c.append(Gate::x(q))?;
            }
            let controls = (0..nvars - 1).map(Control::on_one).collect();
            c.append(Gate::mcz(controls, nvars - 1))?;
            for q in 0..nvars {
                c.append(Gate::x(q))?;
            }
            for q in 0..nvars {
                c.append(Gate::h(q))?;
            }
        }
    }
    Ok(())
}

/// Optimal iteration count for a single marked item among `2^nvars`:
/// `round(π√N/4 − 1/2)`, at least 1.
pub fn grover_iterations(nvars: usize) -> Result<usize, CompileError> {
    if nvars == 0 {
        return Err(CompileError::NoVariables);
    }
    let n = libm::pow(2.0, nvars as f64);
    let k = libm::round(core::f64::consts::PI * libm::sqrt(n) / 4.0 - 0.5);
    Ok(if k < 1.0 { 1 } else { k as usize })
}

/// A complete Grover-search circuit with its bookkeeping.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GroverPlan {
    pub circuit: Circuit,
    pub layout: RegisterLayout,
    pub iteration_count: usize,
    /// The unique solution, for reporting only; `None` under `force`.
    pub target_hint: Option<Assignment>,
    pub options: CompileOptions,
}

impl GroverPlan {
    pub fn register_size(&self) -> usize {
        self.circuit.qubit_count()
    }

    pub fn variable_count(&self) -> usize {
        self.layout.variables
    }

    pub fn preamble(&self) -> Circuit {
        let span = self
            .circuit
            .stage(StageKind::Preamble, None)
            .expect("plans always carry a preamble");
        self.circuit.slice(span.range)
    }

    /// Gate range of Grover iteration `i` (oracle plus diffusion).
    pub fn iteration_range(&self, i: usize) -> Option<core::ops::Range<usize>> {
        let spans: Vec<_> = self
            .circuit
            .stages()
            .into_iter()
            .filter(|s| s.iteration == Some(i))
            .collect();
        Some(spans.first()?.range.start..spans.last()?.range.end)
    }

    /// One oracle-plus-diffusion block.
    pub fn iteration_block(&self) -> Circuit {
        let range = self
            .iteration_range(0)
            .expect("plans have at least one iteration");
        self.circuit.slice(range)
    }

    /// Preamble, clause stage, AND stage and kickback of the first iteration:
    /// the state right before uncomputation.
    pub fn through_first_kickback(&self) -> Result<Circuit, CompileError> {
        if self.layout.result.is_none() {
            return Err(CompileError::NoResultQubit);
        }
        let span = self
            .circuit
            .stage(StageKind::Kickback, Some(0))
            .expect("plans always carry a kickback stage");
        Ok(self.circuit.slice(0..span.range.end))
    }
}

/// Compiles `formula` into a Grover-search plan.
pub fn compile(formula: &CnfFormula, opts: &CompileOptions) -> Result<GroverPlan, CompileError> {
    let target_hint = check_classification(formula, opts)?;
    let nvars = formula.variable_count();
    if nvars == 0 {
        return Err(CompileError::NoVariables);
    }
    let iteration_count = match opts.iterations {
        Iterations::Auto => grover_iterations(nvars)?,
        Iterations::Fixed(0) => return Err(CompileError::ZeroIterations),
        Iterations::Fixed(k) => k,
    };
    let layout = RegisterLayout::new(formula, opts);
    if layout.size > opts.max_qubits {
        return Err(CompileError::RegisterTooLarge {
            required: layout.size,
            limit: opts.max_qubits,
        });
    }

    let mut c = layout.empty_circuit(formula);
    c.begin_stage(StageKind::Preamble, None)?;
    for q in 0..nvars {
        c.append(Gate::h(q))?;
    }
    c.append(Gate::x(layout.kickback))?;
    c.append(Gate::h(layout.kickback))?;

    let [clauses, and, kick, uncompute] = oracle(formula, &layout)?;
    let stages = [
        (StageKind::ClauseStage, &clauses),
        (StageKind::AndStage, &and),
        (StageKind::Kickback, &kick),
        (StageKind::Uncompute, &uncompute),
    ];
    for i in 0..iteration_count {
        for (kind, part) in stages {
            c.begin_stage(kind, Some(i))?;
            c.extend_from(part)?;
        }
        c.begin_stage(StageKind::Diffusion, Some(i))?;
        append_diffusion(&mut c, nvars)?;
    }

    Ok(GroverPlan {
        circuit: c,
        layout,
        iteration_count,
        target_hint,
        options: *opts,
    })
}
