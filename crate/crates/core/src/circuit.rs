//! Gate-level circuit representation.
//!
//! The gate set is deliberately tiny: Pauli-X, Hadamard, and multi-controlled
//! X and Z with per-control polarity. Every gate is self-inverse, which makes
//! [`Circuit::invert`] a pure reordering.
//!
//! A circuit may carry stage marks (preamble, clause stage, and so on). When
//! present they partition the gate list: each mark opens a stage that runs
//! until the next mark.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitError {
    #[error("qubit {qubit} out of range for a {qubit_count}-qubit circuit")]
    QubitOutOfRange { qubit: usize, qubit_count: usize },
    #[error("target qubit {0} also appears as a control")]
    TargetIsControl(usize),
    #[error("qubit {0} appears twice among the controls")]
    RepeatedControl(usize),
    #[error("{kind} takes {expected} controls, got {actual}")]
    ControlCount {
        kind: GateKind,
        expected: &'static str,
        actual: usize,
    },
    #[error("circuit declares more than one {0} qubit")]
    DuplicateRole(&'static str),
    #[error("gates precede the first stage mark")]
    UnlabeledPrefix,
    #[error("cannot join a {other}-qubit circuit onto a {this}-qubit circuit")]
    RegisterMismatch { this: usize, other: usize },
    #[error("stage mark at {start} is out of order or beyond {len} gates")]
    BadStageMark { start: usize, len: usize },
}

/// What a qubit is used for.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum QubitRole {
    Variable(String),
    ClauseAncilla(usize),
    Intermediate { clause: usize, step: usize },
    Result,
    Kickback,
}

impl QubitRole {
    /// Work qubits that must return to |0> after an oracle block.
    pub fn is_work_ancilla(&self) -> bool {
        matches!(
            self,
            QubitRole::ClauseAncilla(_) | QubitRole::Intermediate { .. } | QubitRole::Result
        )
    }
}

impl fmt::Display for QubitRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QubitRole::Variable(name) => write!(f, "var {name}"),
            QubitRole::ClauseAncilla(c) => write!(f, "clause {c}"),
            QubitRole::Intermediate { clause, step } => write!(f, "intermediate {clause} {step}"),
            QubitRole::Result => f.write_str("result"),
            QubitRole::Kickback => f.write_str("kickback"),
        }
    }
}

/// Which control value activates a gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Polarity {
    /// Fires when the control is |1>.
    Positive,
    /// Fires when the control is |0>.
    Negative,
}

impl Polarity {
    pub fn fires_on(self) -> bool {
        self == Polarity::Positive
    }

    pub fn mark(self) -> char {
        match self {
            Polarity::Positive => '+',
            Polarity::Negative => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Control {
    pub qubit: usize,
    pub polarity: Polarity,
}

impl Control {
    pub const fn on_one(qubit: usize) -> Self {
        Control {
            qubit,
            polarity: Polarity::Positive,
        }
    }

    pub const fn on_zero(qubit: usize) -> Self {
        Control {
            qubit,
            polarity: Polarity::Negative,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum GateKind {
    PauliX,
    Hadamard,
    MultiControlledX,
    /// Phase −1 when every control fires and the target is |1>. Symmetric in
    /// all of its qubits when controls are positive; the target is nominal.
    MultiControlledZ,
}

impl GateKind {
    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::PauliX => "x",
            GateKind::Hadamard => "h",
            GateKind::MultiControlledX => "mcx",
            GateKind::MultiControlledZ => "mcz",
        }
    }

    pub fn from_mnemonic(s: &str) -> Option<Self> {
        Some(match s {
            "x" => GateKind::PauliX,
            "h" => GateKind::Hadamard,
            "mcx" => GateKind::MultiControlledX,
            "mcz" => GateKind::MultiControlledZ,
            _ => return None,
        })
    }

    pub fn is_single_qubit(self) -> bool {
        matches!(self, GateKind::PauliX | GateKind::Hadamard)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Gate {
    pub kind: GateKind,
    pub controls: Vec<Control>,
    pub target: usize,
}

impl Gate {
    pub fn x(target: usize) -> Self {
        Gate {
            kind: GateKind::PauliX,
            controls: Vec::new(),
            target,
        }
    }

    pub fn h(target: usize) -> Self {
        Gate {
            kind: GateKind::Hadamard,
            controls: Vec::new(),
            target,
        }
    }

    pub fn mcx(controls: Vec<Control>, target: usize) -> Self {
        Gate {
            kind: GateKind::MultiControlledX,
            controls,
            target,
        }
    }

    pub fn mcz(controls: Vec<Control>, target: usize) -> Self {
        Gate {
            kind: GateKind::MultiControlledZ,
            controls,
            target,
        }
    }

    /// Controls plus target.
    pub fn arity(&self) -> usize {
        self.controls.len() + 1
    }

    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.controls
            .iter()
            .map(|c| c.qubit)
            .chain(core::iter::once(self.target))
    }

    pub fn has_negative_controls(&self) -> bool {
        self.controls
            .iter()
            .any(|c| c.polarity == Polarity::Negative)
    }

    pub fn validate(&self, qubit_count: usize) -> Result<(), CircuitError> {
        let n = self.controls.len();
        match self.kind {
            GateKind::PauliX | GateKind::Hadamard if n != 0 => {
                return Err(CircuitError::ControlCount {
                    kind: self.kind,
                    expected: "0",
                    actual: n,
                })
            }
            GateKind::MultiControlledX | GateKind::MultiControlledZ if n == 0 => {
                return Err(CircuitError::ControlCount {
                    kind: self.kind,
                    expected: "at least 1",
                    actual: 0,
                })
            }
            _ => {}
        }
        for q in self.qubits() {
            if q >= qubit_count {
                return Err(CircuitError::QubitOutOfRange {
                    qubit: q,
                    qubit_count,
                });
            }
        }
        for (i, c) in self.controls.iter().enumerate() {
            if c.qubit == self.target {
                return Err(CircuitError::TargetIsControl(self.target));
            }
            if self.controls[..i].iter().any(|d| d.qubit == c.qubit) {
                return Err(CircuitError::RepeatedControl(c.qubit));
            }
        }
        Ok(())
    }
}

/// `mcx +0 -1 -> 4`, `h 2`.
impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.mnemonic())?;
        if self.controls.is_empty() {
            return write!(f, " {}", self.target);
        }
        for c in &self.controls {
            write!(f, " {}{}", c.polarity.mark(), c.qubit)?;
        }
        write!(f, " -> {}", self.target)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum StageKind {
    Preamble,
    ClauseStage,
    AndStage,
    Kickback,
    Uncompute,
    Diffusion,
}

impl StageKind {
    pub const ALL: [StageKind; 6] = [
        StageKind::Preamble,
        StageKind::ClauseStage,
        StageKind::AndStage,
        StageKind::Kickback,
        StageKind::Uncompute,
        StageKind::Diffusion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StageKind::Preamble => "preamble",
            StageKind::ClauseStage => "clause",
            StageKind::AndStage => "and",
            StageKind::Kickback => "kickback",
            StageKind::Uncompute => "uncompute",
            StageKind::Diffusion => "diffusion",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        StageKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for StageKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Opens a stage at gate index `start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StageMark {
    pub kind: StageKind,
    /// Grover iteration the stage belongs to; `None` for the preamble.
    pub iteration: Option<usize>,
    pub start: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageSpan {
    pub kind: StageKind,
    pub iteration: Option<usize>,
    pub range: Range<usize>,
}

/// An ordered gate list over a role-typed register.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "RawCircuit", into = "RawCircuit"))]
pub struct Circuit {
    qubits: Vec<QubitRole>,
    gates: Vec<Gate>,
    stages: Vec<StageMark>,
}

impl Circuit {
    pub fn new(qubits: Vec<QubitRole>) -> Result<Self, CircuitError> {
        let results = qubits.iter().filter(|r| **r == QubitRole::Result).count();
        let kickbacks = qubits.iter().filter(|r| **r == QubitRole::Kickback).count();
        if results > 1 {
            return Err(CircuitError::DuplicateRole("result"));
        }
        if kickbacks > 1 {
            return Err(CircuitError::DuplicateRole("kickback"));
        }
        Ok(Circuit {
            qubits,
            gates: Vec::new(),
            stages: Vec::new(),
        })
    }

    /// A register of `n` variable qubits named `q0`, `q1`, ...
    pub fn with_qubits(n: usize) -> Self {
        Circuit {
            qubits: (0..n)
                .map(|i| QubitRole::Variable(format!("q{i}")))
                .collect(),
            gates: Vec::new(),
            stages: Vec::new(),
        }
    }

    /// An empty circuit over the same register.
    pub fn empty_like(&self) -> Self {
        Circuit {
            qubits: self.qubits.clone(),
            gates: Vec::new(),
            stages: Vec::new(),
        }
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits.len()
    }

    pub fn qubits(&self) -> &[QubitRole] {
        &self.qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn stage_marks(&self) -> &[StageMark] {
        &self.stages
    }

    pub fn qubit_with_role(&self, role: &QubitRole) -> Option<usize> {
        self.qubits.iter().position(|r| r == role)
    }

    pub fn append(&mut self, gate: Gate) -> Result<(), CircuitError> {
        gate.validate(self.qubits.len())?;
        self.gates.push(gate);
        Ok(())
    }

    /// Builder form of [`Circuit::append`].
    pub fn with_gate(mut self, gate: Gate) -> Result<Self, CircuitError> {
        self.append(gate)?;
        Ok(self)
    }

    /// Appends the gates of `other`, which must share this register size.
    /// Stage marks of `other` are not carried over.
    pub fn extend_from(&mut self, other: &Circuit) -> Result<(), CircuitError> {
        if other.qubit_count() != self.qubit_count() {
            return Err(CircuitError::RegisterMismatch {
                this: self.qubit_count(),
                other: other.qubit_count(),
            });
        }
        for g in &other.gates {
            self.append(g.clone())?;
        }
        Ok(())
    }

    /// Opens a new stage at the current end of the gate list.
    pub fn begin_stage(
        &mut self,
        kind: StageKind,
        iteration: Option<usize>,
    ) -> Result<(), CircuitError> {
        if self.stages.is_empty() && !self.gates.is_empty() {
            return Err(CircuitError::UnlabeledPrefix);
        }
        self.stages.push(StageMark {
            kind,
            iteration,
            start: self.gates.len(),
        });
        Ok(())
    }

    pub fn stages(&self) -> Vec<StageSpan> {
        let len = self.gates.len();
        self.stages
            .iter()
            .enumerate()
            .map(|(i, m)| StageSpan {
                kind: m.kind,
                iteration: m.iteration,
                range: m.start..self.stages.get(i + 1).map_or(len, |n| n.start),
            })
            .collect()
    }

    pub fn stage(&self, kind: StageKind, iteration: Option<usize>) -> Option<StageSpan> {
        self.stages()
            .into_iter()
            .find(|s| s.kind == kind && s.iteration == iteration)
    }

    /// Gates in `range` over the same register, with marks clipped to it.
    pub fn slice(&self, range: Range<usize>) -> Circuit {
        let mut stages = Vec::new();
        for span in self.stages() {
            let start = span.range.start.max(range.start);
            let end = span.range.end.min(range.end);
            if start < end || (span.range.is_empty() && range.contains(&span.range.start)) {
                stages.push(StageMark {
                    kind: span.kind,
                    iteration: span.iteration,
                    start: start - range.start,
                });
            }
        }
        Circuit {
            qubits: self.qubits.clone(),
            gates: self.gates[range].to_vec(),
            stages,
        }
    }

    /// The gate list reversed. Every gate is its own inverse, so running a
    /// circuit followed by its inversion is the identity.
    pub fn invert(&self) -> Circuit {
        let len = self.gates.len();
        let stages = self
            .stages()
            .into_iter()
            .rev()
            .map(|s| StageMark {
                kind: s.kind,
                iteration: s.iteration,
                start: len - s.range.end,
            })
            .collect();
        Circuit {
            qubits: self.qubits.clone(),
            gates: self.gates.iter().rev().cloned().collect(),
            stages,
        }
    }

    /// Rewrites every fires-on-0 control as fires-on-1 wrapped in Pauli-X on
    /// that qubit, immediately before and after the gate.
    pub fn lower_polarity(&self) -> Circuit {
        let mut gates = Vec::with_capacity(self.gates.len());
        let mut new_index = Vec::with_capacity(self.gates.len() + 1);
        for gate in &self.gates {
            new_index.push(gates.len());
            if !gate.has_negative_controls() {
                gates.push(gate.clone());
                continue;
            }
            let negated: Vec<usize> = gate
                .controls
                .iter()
                .filter(|c| c.polarity == Polarity::Negative)
                .map(|c| c.qubit)
                .collect();
            gates.extend(negated.iter().map(|&q| Gate::x(q)));
            gates.push(Gate {
                kind: gate.kind,
                controls: gate
                    .controls
                    .iter()
                    .map(|c| Control::on_one(c.qubit))
                    .collect(),
                target: gate.target,
            });
            gates.extend(negated.iter().map(|&q| Gate::x(q)));
        }
        new_index.push(gates.len());
        let stages = self
            .stages
            .iter()
            .map(|m| StageMark {
                start: new_index[m.start],
                ..*m
            })
            .collect();
        Circuit {
            qubits: self.qubits.clone(),
            gates,
            stages,
        }
    }

    /// Gate census. With `rewrite_cx_as_cz`, each C_NOT^n is counted as one
    /// C_PF^(n) plus the two Hadamards on its target.
    pub fn inventory(&self, rewrite_cx_as_cz: bool) -> GateInventory {
        let mut inv = GateInventory::default();
        for g in &self.gates {
            match g.kind {
                GateKind::PauliX | GateKind::Hadamard => inv.add(GateKey::OneQubit, 1),
                GateKind::MultiControlledX if rewrite_cx_as_cz => {
                    inv.add(GateKey::PhaseFlip(g.arity()), 1);
                    inv.add(GateKey::OneQubit, 2);
                }
                GateKind::MultiControlledX => inv.add(GateKey::ControlledNot(g.arity()), 1),
                GateKind::MultiControlledZ => inv.add(GateKey::PhaseFlip(g.arity()), 1),
            }
        }
        inv
    }
}

#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[allow(dead_code)]
struct RawCircuit {
    qubits: Vec<QubitRole>,
    gates: Vec<Gate>,
    stages: Vec<StageMark>,
}

impl From<Circuit> for RawCircuit {
    fn from(c: Circuit) -> Self {
        RawCircuit {
            qubits: c.qubits,
            gates: c.gates,
            stages: c.stages,
        }
    }
}

impl TryFrom<RawCircuit> for Circuit {
    type Error = CircuitError;

    fn try_from(raw: RawCircuit) -> Result<Self, CircuitError> {
        Circuit::from_parts(raw.qubits, raw.gates, raw.stages)
    }
}

impl Circuit {
    /// Reassembles a circuit, validating every gate and stage mark.
    pub fn from_parts(
        qubits: Vec<QubitRole>,
        gates: Vec<Gate>,
        stages: Vec<StageMark>,
    ) -> Result<Self, CircuitError> {
        let mut c = Circuit::new(qubits)?;
        for g in gates {
            c.append(g)?;
        }
        let len = c.gates.len();
        let mut prev = 0;
        for (i, m) in stages.iter().enumerate() {
            let first_ok = i > 0 || m.start == 0 || len == 0;
            if m.start > len || m.start < prev || !first_ok {
                return Err(CircuitError::BadStageMark {
                    start: m.start,
                    len,
                });
            }
            prev = m.start;
        }
        c.stages = stages;
        Ok(c)
    }
}

/// Inventory key: single-qubit gates are lumped together; multiqubit gates
/// are keyed by arity (controls + target).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum GateKey {
    OneQubit,
    ControlledNot(usize),
    PhaseFlip(usize),
}

impl GateKey {
    pub fn arity(self) -> usize {
        match self {
            GateKey::OneQubit => 1,
            GateKey::ControlledNot(n) | GateKey::PhaseFlip(n) => n,
        }
    }
}

impl fmt::Display for GateKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateKey::OneQubit => f.write_str("one-qubit"),
            GateKey::ControlledNot(n) => write!(f, "C_NOT^{n}"),
            GateKey::PhaseFlip(n) => write!(f, "C_PF^({n})"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(
    feature = "serde",
    serde(into = "Vec<InventoryEntry>", from = "Vec<InventoryEntry>")
)]
pub struct GateInventory {
    counts: BTreeMap<GateKey, u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InventoryEntry {
    pub gate: GateKey,
    pub count: u64,
}

impl From<GateInventory> for Vec<InventoryEntry> {
    fn from(inv: GateInventory) -> Self {
        inv.entries().collect()
    }
}

impl From<Vec<InventoryEntry>> for GateInventory {
    fn from(entries: Vec<InventoryEntry>) -> Self {
        let mut inv = GateInventory::default();
        for e in entries {
            inv.add(e.gate, e.count);
        }
        inv
    }
}

impl GateInventory {
    /// C_PF counts for arities 2, 3, 4, ... in column order, as printed in
    /// cost tables.
    pub fn from_phase_flip_columns(columns: &[u64]) -> Self {
        let mut inv = GateInventory::default();
        for (i, &n) in columns.iter().enumerate() {
            inv.add(GateKey::PhaseFlip(i + 2), n);
        }
        inv
    }

    pub fn add(&mut self, key: GateKey, count: u64) {
        if count > 0 {
            *self.counts.entry(key).or_insert(0) += count;
        }
    }

    pub fn count(&self, key: GateKey) -> u64 {
        self.counts.get(&key).copied().unwrap_or(0)
    }

    pub fn one_qubit(&self) -> u64 {
        self.count(GateKey::OneQubit)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn multiqubit_total(&self) -> u64 {
        self.total() - self.one_qubit()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = InventoryEntry> + '_ {
        self.counts
            .iter()
            .map(|(&gate, &count)| InventoryEntry { gate, count })
    }

    pub fn merge(&mut self, other: &GateInventory) {
        for e in other.entries() {
            self.add(e.gate, e.count);
        }
    }
}
