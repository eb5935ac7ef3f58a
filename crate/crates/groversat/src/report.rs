//! Run reports and their JSON, table and CSV renderings.

use std::fmt::Write as _;

use groversat_core::circuit::{Circuit, GateInventory, GateKey};
use groversat_core::compiler::{GroverPlan, KickbackStyle, WideClauseStrategy};
use groversat_core::cost::{CostReport, PulseCounts, TableRow};
use groversat_core::formula::{Assignment, CnfFormula, SatClassification};
use groversat_core::simulator::MeasurementReport;
use serde::Serialize;
use serde_json::{Map, Value};

pub const TOOL_NAME: &str = "groversat";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

impl Default for ToolInfo {
    fn default() -> Self {
        ToolInfo {
            name: TOOL_NAME,
            version: TOOL_VERSION,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct RunReport {
    pub tool: ToolInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<FormulaSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plan: Option<PlanSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub circuit: Option<Circuit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measurement: Option<MeasurementSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Vec<SweepPoint>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cost: Option<Vec<CostRecord>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FormulaSummary {
    pub infix: String,
    pub variables: Vec<String>,
    pub clauses: usize,
    pub clause_widths: Vec<usize>,
}

impl FormulaSummary {
    pub fn new(f: &CnfFormula) -> Self {
        FormulaSummary {
            infix: f.to_string(),
            variables: f.variables().to_vec(),
            clauses: f.clause_count(),
            clause_widths: f.clause_widths(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationSummary {
    pub status: &'static str,
    pub solutions: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assignment: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assignment_index: Option<u64>,
    pub summary: String,
}

impl ClassificationSummary {
    pub fn new(f: &CnfFormula, class: &SatClassification) -> Self {
        let assignment = class.unique().map(|a| f.describe(a));
        let summary = match class {
            SatClassification::Unsatisfiable => "Unsatisfiable".to_string(),
            SatClassification::Unique(a) => format!("Unique: {}", f.describe(a)),
            SatClassification::Multiple { count, .. } => format!("Multiple: {count} solutions"),
        };
        ClassificationSummary {
            status: class.label(),
            solutions: class.solution_count(),
            assignment_index: class.unique().map(Assignment::to_index),
            assignment,
            summary,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RegisterEntry {
    pub qubit: usize,
    pub role: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct StageEntry {
    pub stage: &'static str,
    pub iteration: Option<usize>,
    pub start: usize,
    pub end: usize,
    pub gates: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct InventoryRow {
    pub gate: String,
    pub count: u64,
}

fn inventory_rows(inv: &GateInventory) -> Vec<InventoryRow> {
    inv.entries()
        .map(|e| InventoryRow {
            gate: e.gate.to_string(),
            count: e.count,
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct InventorySummary {
    /// Whole circuit, multi-controlled X kept as C_NOT.
    pub raw: Vec<InventoryRow>,
    /// Whole circuit, every C_NOT^n rewritten as H · C_PF^(n) · H.
    pub rewritten: Vec<InventoryRow>,
    /// One Grover iteration, rewritten.
    pub per_iteration: Vec<InventoryRow>,
    /// Union of the gate keys above in canonical order.
    #[serde(skip)]
    order: Vec<String>,
}

impl InventorySummary {
    pub fn new(
        raw: &GateInventory,
        rewritten: &GateInventory,
        per_iteration: &GateInventory,
    ) -> Self {
        let mut all = raw.clone();
        all.merge(rewritten);
        all.merge(per_iteration);
        InventorySummary {
            raw: inventory_rows(raw),
            rewritten: inventory_rows(rewritten),
            per_iteration: inventory_rows(per_iteration),
            order: all.entries().map(|e| e.gate.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PlanSummary {
    pub qubits: usize,
    pub iterations: usize,
    pub kickback: &'static str,
    pub wide_clause: &'static str,
    pub gates: usize,
    pub registers: Vec<RegisterEntry>,
    pub stages: Vec<StageEntry>,
    pub inventory: InventorySummary,
}

pub fn kickback_name(k: KickbackStyle) -> &'static str {
    match k {
        KickbackStyle::SeparateAncilla => "separate",
        KickbackStyle::DirectPhase => "direct",
    }
}

pub fn wide_clause_name(w: WideClauseStrategy) -> &'static str {
    match w {
        WideClauseStrategy::Cascade => "cascade",
        WideClauseStrategy::Direct => "direct",
    }
}

impl PlanSummary {
    pub fn new(plan: &GroverPlan) -> Self {
        let c = &plan.circuit;
        PlanSummary {
            qubits: plan.register_size(),
            iterations: plan.iteration_count,
            kickback: kickback_name(plan.options.kickback_style),
            wide_clause: wide_clause_name(plan.options.wide_clause_strategy),
            gates: c.len(),
            registers: c
                .qubits()
                .iter()
                .enumerate()
                .map(|(qubit, r)| RegisterEntry {
                    qubit,
                    role: r.to_string(),
                })
                .collect(),
            stages: c
                .stages()
                .into_iter()
                .map(|s| StageEntry {
                    stage: s.kind.name(),
                    iteration: s.iteration,
                    start: s.range.start,
                    end: s.range.end,
                    gates: s.range.len(),
                })
                .collect(),
            inventory: InventorySummary::new(
                &c.inventory(false),
                &c.inventory(true),
                &plan.iteration_block().inventory(true),
            ),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub assignment: String,
    pub index: u64,
    pub probability: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MeasurementSummary {
    pub iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    /// Total probability of measuring a satisfying assignment.
    pub success_probability: f64,
    pub argmax: String,
    pub argmax_probability: f64,
    pub ancilla_residual: f64,
    /// Most likely outcomes, by decreasing probability then index.
    pub top: Vec<Outcome>,
}

pub fn success_probability(f: &CnfFormula, m: &MeasurementReport) -> f64 {
    m.probabilities
        .iter()
        .enumerate()
        .filter(|&(i, _)| f.evaluate_index(i as u64))
        .map(|(_, p)| p)
        .sum()
}

impl MeasurementSummary {
    pub fn new(f: &CnfFormula, plan: &GroverPlan, m: &MeasurementReport, top: usize) -> Self {
        let n = f.variable_count();
        let mut order: Vec<usize> = (0..m.probabilities.len()).collect();
        order.sort_by(|&a, &b| {
            m.probabilities[b]
                .total_cmp(&m.probabilities[a])
                .then(a.cmp(&b))
        });
        MeasurementSummary {
            iterations: plan.iteration_count,
            target: plan.target_hint.as_ref().map(|a| f.describe(a)),
            success_probability: success_probability(f, m),
            argmax: f.describe(&m.argmax),
            argmax_probability: m.probability_of(&m.argmax),
            ancilla_residual: m.ancilla_residual,
            top: order
                .into_iter()
                .take(top)
                .map(|i| Outcome {
                    assignment: f.describe(&Assignment::from_index(n, i as u64)),
                    index: i as u64,
                    probability: m.probabilities[i],
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepPoint {
    pub iterations: usize,
    pub success_probability: f64,
}

/// One backend's cost for one circuit, keyed by cost-table column names.
pub type CostRecord = Map<String, Value>;

fn insert(r: &mut CostRecord, key: &str, v: impl Into<Value>) {
    r.insert(key.to_string(), v.into());
}

fn cpf_count(inv: &GateInventory, arity: usize) -> u64 {
    inv.count(GateKey::PhaseFlip(arity)) + inv.count(GateKey::ControlledNot(arity))
}

fn max_arity(inv: &GateInventory) -> usize {
    inv.entries().map(|e| e.gate.arity()).max().unwrap_or(0)
}

/// Builds the record for `report`. `model_hz` is the Lamb-Dicke model
/// frequency, which may differ from the one used for timing.
pub fn cost_record(
    label: &str,
    ions: usize,
    inv: &GateInventory,
    report: &CostReport,
    model_hz: f64,
) -> CostRecord {
    let mut r = CostRecord::new();
    insert(&mut r, "circuit", label);
    insert(&mut r, "backend", report.backend.name());
    insert(&mut r, "ions", ions);
    insert(
        &mut r,
        "omega_z/2pi (MHz)",
        report.omega_z_over_2pi_hz / 1e6,
    );
    insert(&mut r, "model omega_z/2pi (MHz)", model_hz / 1e6);
    match &report.pulses {
        PulseCounts::Conventional(c) => {
            insert(&mut r, "N[A]", c.a_gates);
            insert(&mut r, "N[A*]", c.a_star_gates);
            insert(&mut r, "N[B]", c.b_gates);
            insert(&mut r, "N[B*]", c.b_star_gates);
            insert(&mut r, "N[one-qubit]", c.one_qubit_gates);
            insert(
                &mut r,
                "pulses",
                c.a_gates + c.a_star_gates + c.b_gates + c.b_star_gates + c.one_qubit_gates,
            );
            insert(&mut r, "T_B (us)", report.gate_seconds * 1e6);
            insert(&mut r, "T (ms)", report.total_seconds * 1e3);
            let checks: Vec<String> = report
                .pulse_checks
                .iter()
                .map(|c| {
                    format!(
                        "C_NOT^{}: {} from components, {} quoted",
                        c.arity, c.from_components, c.quoted_aggregate
                    )
                })
                .collect();
            insert(
                &mut r,
                "pulse formula consistent",
                report.pulse_checks.iter().all(|c| c.consistent()),
            );
            insert(&mut r, "pulse check", checks.join("; "));
        }
        PulseCounts::Straightforward { pulses, .. } => {
            for arity in 2..=max_arity(inv).max(5) {
                insert(&mut r, &format!("N[C_PF^({arity})]"), cpf_count(inv, arity));
            }
            insert(&mut r, "pulses", *pulses);
            insert(&mut r, "T_CPF (us)", report.gate_seconds * 1e6);
            insert(&mut r, "T (ms)", report.total_seconds * 1e3);
        }
    }
    r
}

pub fn table1_records(rows: &[TableRow], backends: &[groversat_core::Backend]) -> Vec<CostRecord> {
    let mut out = Vec::new();
    for row in rows {
        for b in backends {
            let report = match b {
                groversat_core::Backend::Conventional => &row.conventional,
                groversat_core::Backend::Straightforward => &row.straightforward,
            };
            out.push(cost_record(
                row.circuit.label,
                row.circuit.n_ions,
                &row.inventory,
                report,
                row.model_trap_hz,
            ));
        }
    }
    out
}

/// Union of record keys in first-seen order.
fn columns(records: &[&CostRecord]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for r in records {
        for k in r.keys() {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    cols
}

fn cell_text(v: Option<&Value>, precise: bool) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(Value::Number(n)) if !precise && n.is_f64() => {
            format!("{:.3}", n.as_f64().unwrap_or(f64::NAN))
        }
        Some(v) => v.to_string(),
    }
}

pub fn cost_csv(records: &[CostRecord]) -> Result<String, csv::Error> {
    let refs: Vec<&CostRecord> = records.iter().collect();
    let cols = columns(&refs);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&cols)?;
    for r in records {
        w.write_record(cols.iter().map(|c| cell_text(r.get(c), true)))?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn sweep_csv(points: &[SweepPoint]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for p in points {
        w.serialize(p)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Left-aligned columns separated by two spaces, no trailing blanks.
pub fn aligned(headers: Option<&[String]>, rows: &[Vec<String>]) -> String {
    let ncols = rows
        .iter()
        .map(Vec::len)
        .chain(headers.map(<[String]>::len))
        .max()
        .unwrap_or(0);
    let mut widths = vec![0; ncols];
    for row in headers.into_iter().chain(rows.iter().map(Vec::as_slice)) {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in headers.into_iter().chain(rows.iter().map(Vec::as_slice)) {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            line.extend(std::iter::repeat_n(' ', widths[i] - cell.chars().count()));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn kv(pairs: &[(&str, String)]) -> String {
    let rows: Vec<Vec<String>> = pairs
        .iter()
        .map(|(k, v)| vec![k.to_string(), v.clone()])
        .collect();
    aligned(None, &rows)
}

fn owned(h: &[&str]) -> Vec<String> {
    h.iter().map(|s| s.to_string()).collect()
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn inventory_table(inv: &InventorySummary) -> String {
    let find = |rows: &[InventoryRow], g: &str| {
        rows.iter()
            .find(|r| r.gate == g)
            .map_or(0, |r| r.count)
            .to_string()
    };
    let rows: Vec<Vec<String>> = inv
        .order
        .iter()
        .map(|g| {
            vec![
                g.to_string(),
                find(&inv.raw, g),
                find(&inv.rewritten, g),
                find(&inv.per_iteration, g),
            ]
        })
        .collect();
    aligned(
        Some(&owned(&["gate", "raw", "rewritten", "per iteration"])),
        &rows,
    )
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Human-readable rendering. `circuit_text` is appended verbatim when
    /// given.
    pub fn to_table(&self, circuit_text: Option<&str>) -> String {
        let mut sections: Vec<String> = Vec::new();
        let mut head: Vec<(&str, String)> = Vec::new();
        if let Some(f) = &self.formula {
            head.push(("formula", f.infix.clone()));
            head.push(("variables", join(&f.variables)));
            head.push(("clause widths", join(&f.clause_widths)));
        }
        if let Some(c) = &self.classification {
            head.push(("classification", c.summary.clone()));
        }
        if !head.is_empty() {
            sections.push(kv(&head));
        }
        if let Some(p) = &self.plan {
            sections.push(kv(&[
                ("qubits", p.qubits.to_string()),
                ("iterations", p.iterations.to_string()),
                ("kickback", p.kickback.to_string()),
                ("wide clauses", p.wide_clause.to_string()),
                ("gates", p.gates.to_string()),
            ]));
            let regs: Vec<Vec<String>> = p
                .registers
                .iter()
                .map(|r| vec![r.qubit.to_string(), r.role.clone()])
                .collect();
            sections.push(aligned(Some(&owned(&["qubit", "role"])), &regs));
            let stages: Vec<Vec<String>> = p
                .stages
                .iter()
                .map(|s| {
                    vec![
                        s.stage.to_string(),
                        s.iteration
                            .map_or_else(|| "-".to_string(), |i| i.to_string()),
                        s.start.to_string(),
                        s.end.to_string(),
                        s.gates.to_string(),
                    ]
                })
                .collect();
            sections.push(aligned(
                Some(&owned(&["stage", "iteration", "start", "end", "gates"])),
                &stages,
            ));
            sections.push(inventory_table(&p.inventory));
        }
        if let Some(m) = &self.measurement {
            let mut pairs = vec![("iterations", m.iterations.to_string())];
            if let Some(t) = &m.target {
                pairs.push(("target", t.clone()));
            }
            pairs.push(("P(success)", format!("{:.6}", m.success_probability)));
            pairs.push((
                "most likely",
                format!("{} ({:.6})", m.argmax, m.argmax_probability),
            ));
            pairs.push(("ancilla residual", format!("{:.3e}", m.ancilla_residual)));
            sections.push(kv(&pairs));
            let rows: Vec<Vec<String>> = m
                .top
                .iter()
                .map(|o| {
                    vec![
                        o.assignment.clone(),
                        o.index.to_string(),
                        format!("{:.6}", o.probability),
                    ]
                })
                .collect();
            sections.push(aligned(
                Some(&owned(&["assignment", "index", "probability"])),
                &rows,
            ));
        }
        if let Some(sweep) = &self.sweep {
            let rows: Vec<Vec<String>> = sweep
                .iter()
                .map(|p| {
                    vec![
                        p.iterations.to_string(),
                        format!("{:.9}", p.success_probability),
                    ]
                })
                .collect();
            sections.push(aligned(Some(&owned(&["iterations", "P(success)"])), &rows));
        }
        if let Some(records) = &self.cost {
            for backend in ["conventional", "straightforward"] {
                let group: Vec<&CostRecord> = records
                    .iter()
                    .filter(|r| r.get("backend").and_then(Value::as_str) == Some(backend))
                    .collect();
                if group.is_empty() {
                    continue;
                }
                let cols: Vec<String> = columns(&group)
                    .into_iter()
                    .filter(|c| c != "backend" && c != "pulse check")
                    .collect();
                let rows: Vec<Vec<String>> = group
                    .iter()
                    .map(|r| cols.iter().map(|c| cell_text(r.get(c), false)).collect())
                    .collect();
                let mut section = format!("{backend}\n");
                section.push_str(&aligned(Some(&cols), &rows));
                for r in &group {
                    if let Some(Value::String(check)) = r.get("pulse check") {
                        if !check.is_empty() {
                            let _ = writeln!(
                                section,
                                "pulse formula check ({}): {check}",
                                cell_text(r.get("circuit"), false)
                            );
                        }
                    }
                }
                sections.push(section);
            }
        }
        if let Some(text) = circuit_text {
            sections.push(text.to_string());
        }
        sections.join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aligned_pads_and_trims() {
        let t = aligned(
            Some(&owned(&["a", "bbb"])),
            &[vec!["long".into(), "x".into()], vec!["s".into(), "".into()]],
        );
        assert_eq!(t, "a     bbb\nlong  x\ns\n");
    }

    #[test]
    fn csv_unions_columns() {
        let mut a = CostRecord::new();
        insert(&mut a, "circuit", "I");
        insert(&mut a, "N[B]", 3u64);
        let mut b = CostRecord::new();
        insert(&mut b, "circuit", "II");
        insert(&mut b, "T (ms)", 1.5);
        let csv = cost_csv(&[a, b]).unwrap();
        assert_eq!(csv, "circuit,N[B],T (ms)\nI,3,\nII,,1.5\n");
    }

    #[test]
    fn sweep_csv_header() {
        let csv = sweep_csv(&[SweepPoint {
            iterations: 0,
            success_probability: 0.125,
        }])
        .unwrap();
        assert_eq!(csv, "iterations,success_probability\n0,0.125\n");
    }
}
