//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use groversat_core::circuit::StageKind;
use groversat_core::compiler::{
    compile, CompileError, CompileOptions, GroverPlan, Iterations, KickbackStyle,
    WideClauseStrategy, DEFAULT_MAX_QUBITS,
};
use groversat_core::cost::{
    cost_report, table1_report_with, trap_frequency, Backend, CostError, FrequencySource,
    TrapConfig, ATOMIC_MASS_UNIT,
};
use groversat_core::formula::{CnfFormula, FormulaError, SatClassification};
use groversat_core::simulator::{iteration_sweep, measure_variables, SimError, StateVector};

use crate::circuit_text;
use crate::input::{self, InputError};
use crate::report::{
    self, ClassificationSummary, FormulaSummary, MeasurementSummary, PlanSummary, RunReport,
    SweepPoint,
};
use crate::state_dump;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_REJECTED: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "groversat",
    version,
    about = "Grover search for uniquely satisfiable CNF formulas"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Largest register the compiler and simulator will accept.
    #[arg(long, env = "GROVER_SAT_MAX_QUBITS", global = true, value_name = "N")]
    pub max_qubits: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a formula by enumeration.
    Solve(SolveArgs),
    /// Compile a formula into a Grover circuit.
    Compile(CompileCmd),
    /// Compile and simulate, reporting the measurement distribution.
    Simulate(SimulateCmd),
    /// Trapped-ion cost estimates.
    Cost(CostCmd),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// DIMACS or infix formula file; `-` reads stdin.
    #[arg(value_name = "FILE", conflicts_with = "expr")]
    pub file: Option<PathBuf>,
    /// Inline formula, e.g. "(~a|~b)&(a|b)&a".
    #[arg(long, short = 'e', value_name = "FORMULA")]
    pub expr: Option<String>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KickbackArg {
    Separate,
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WideClauseArg {
    Cascade,
    Direct,
}

#[derive(Debug, Args)]
pub struct CompileArgs {
    /// Phase kickback through a separate result qubit or directly from the AND gate.
    #[arg(long, value_enum, default_value_t = KickbackArg::Separate)]
    pub kickback: KickbackArg,
    /// Clauses of three or more literals: cascade of three-qubit steps or one wide gate.
    #[arg(long, value_enum, default_value_t = WideClauseArg::Cascade)]
    pub wide_clause: WideClauseArg,
    /// Grover iterations instead of the optimal count.
    #[arg(long, value_name = "K", value_parser = clap::value_parser!(u64).range(1..))]
    pub iterations: Option<u64>,
    /// Compile even when the formula is not uniquely satisfiable.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CircuitFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct CompileCmd {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub compile: CompileArgs,
    /// Also write the circuit to this file.
    #[arg(long, short = 'o', value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Serialization used for --output.
    #[arg(long, value_enum, default_value_t = CircuitFormat::Text)]
    pub circuit_format: CircuitFormat,
    /// Leave the circuit listing out of the report.
    #[arg(long)]
    pub no_circuit: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DumpPoint {
    Preamble,
    Clause,
    And,
    Kickback,
    Uncompute,
    Diffusion,
    End,
}

#[derive(Debug, Args)]
pub struct SimulateCmd {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub compile: CompileArgs,
    /// Write the statevector as `index re im` lines.
    #[arg(long, value_name = "PATH")]
    pub dump_state: Option<PathBuf>,
    /// Where to take the dump: after the named stage of the first
    /// iteration, or at the end of the circuit.
    #[arg(long, value_enum, default_value_t = DumpPoint::End, requires = "dump_state")]
    pub dump_after: DumpPoint,
    /// Success probability after 0..=K iterations.
    #[arg(long, value_name = "K")]
    pub sweep: Option<usize>,
    /// Write the sweep as CSV.
    #[arg(long, value_name = "PATH", requires = "sweep")]
    pub csv: Option<PathBuf>,
    /// Number of outcomes listed.
    #[arg(long, default_value_t = 8)]
    pub top: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Conventional,
    Straightforward,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TrapSource {
    Printed,
    Model,
}

#[derive(Debug, Args)]
pub struct CostCmd {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub compile: CompileArgs,
    /// The three reference circuits with their fixed inventories.
    #[arg(long, conflicts_with_all = ["file", "expr"])]
    pub table1: bool,
    #[arg(long, value_enum, default_value_t = BackendArg::Both)]
    pub backend: BackendArg,
    /// Lamb-Dicke parameter.
    #[arg(long, default_value_t = 0.02)]
    pub eta: f64,
    /// Laser angle to the trap axis, degrees.
    #[arg(long, default_value_t = 30.0)]
    pub theta_deg: f64,
    #[arg(long, default_value_t = 729.0)]
    pub wavelength_nm: f64,
    /// Ion mass in atomic mass units; defaults to 40Ca+.
    #[arg(long)]
    pub ion_mass_u: Option<f64>,
    /// Ratio of the multi-qubit to single-qubit maximal Rabi frequency.
    #[arg(long, default_value_t = 0.1)]
    pub m_ratio: f64,
    /// Trap frequency used for --table1 timings.
    #[arg(long, value_enum, default_value_t = TrapSource::Printed)]
    pub trap_source: TrapSource,
    /// Write the cost records as CSV.
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Cost(#[from] CostError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        let resource = |e: &FormulaError| matches!(e, FormulaError::TooManyVariables { .. });
        match self {
            CliError::Formula(e) if resource(e) => EXIT_RESOURCE,
            CliError::Compile(CompileError::Formula(e)) if resource(e) => EXIT_RESOURCE,
            CliError::Compile(CompileError::NotUnique(_)) => EXIT_REJECTED,
            CliError::Compile(CompileError::RegisterTooLarge { .. }) => EXIT_RESOURCE,
            CliError::Sim(SimError::QubitCount { .. }) => EXIT_RESOURCE,
            _ => EXIT_USAGE,
        }
    }
}

/// What a successful run prints, plus its exit status.
pub struct Outcome {
    pub report: RunReport,
    pub circuit_text: Option<String>,
    pub exit_code: i32,
}

fn load_input(args: &InputArgs) -> Result<CnfFormula, CliError> {
    match (&args.file, &args.expr) {
        (Some(path), _) => Ok(input::load(path)?),
        (None, Some(e)) => Ok(input::parse_text(e, "--expr")?),
        (None, None) => Err(CliError::Usage("expected a formula FILE or --expr".into())),
    }
}

fn options(args: &CompileArgs, max_qubits: Option<usize>) -> CompileOptions {
    CompileOptions {
        kickback_style: match args.kickback {
            KickbackArg::Separate => KickbackStyle::SeparateAncilla,
            KickbackArg::Direct => KickbackStyle::DirectPhase,
        },
        wide_clause_strategy: match args.wide_clause {
            WideClauseArg::Cascade => WideClauseStrategy::Cascade,
            WideClauseArg::Direct => WideClauseStrategy::Direct,
        },
        iterations: args
            .iterations
            .map_or(Iterations::Auto, |k| Iterations::Fixed(k as usize)),
        force: args.force,
        max_qubits: max_qubits.unwrap_or(DEFAULT_MAX_QUBITS),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.display().to_string(),
        source,
    })
}

/// Formula, classification and compiled plan; classification failures are
/// reported through `CompileError::NotUnique` unless forced.
fn prepare(
    input: &InputArgs,
    args: &CompileArgs,
    max_qubits: Option<usize>,
) -> Result<(CnfFormula, RunReport, GroverPlan), CliError> {
    let f = load_input(input)?;
    let class = f.classify()?;
    let mut report = RunReport {
        formula: Some(FormulaSummary::new(&f)),
        classification: Some(ClassificationSummary::new(&f, &class)),
        ..Default::default()
    };
    let plan = compile(&f, &options(args, max_qubits))?;
    report.plan = Some(PlanSummary::new(&plan));
    Ok((f, report, plan))
}

fn solve(args: &SolveArgs) -> Result<Outcome, CliError> {
    let f = load_input(&args.input)?;
    let class = f.classify()?;
    let exit_code = match class {
        SatClassification::Unique(_) => EXIT_OK,
        _ => EXIT_REJECTED,
    };
    Ok(Outcome {
        report: RunReport {
            formula: Some(FormulaSummary::new(&f)),
            classification: Some(ClassificationSummary::new(&f, &class)),
            ..Default::default()
        },
        circuit_text: None,
        exit_code,
    })
}

fn compile_cmd(
    args: &CompileCmd,
    max_qubits: Option<usize>,
    format: Format,
) -> Result<Outcome, CliError> {
    let (_, mut report, plan) = prepare(&args.input, &args.compile, max_qubits)?;
    let text = circuit_text::emit(&plan.circuit);
    if let Some(path) = &args.output {
        let contents = match args.circuit_format {
            CircuitFormat::Text => text.clone(),
            CircuitFormat::Json => {
                let mut s =
                    serde_json::to_string_pretty(&plan.circuit).expect("circuit serializes");
                s.push('\n');
                s
            }
        };
        write_file(path, &contents)?;
    }
    let circuit_text = match (args.no_circuit, format) {
        (false, Format::Json) => {
            report.circuit = Some(plan.circuit.clone());
            None
        }
        (false, Format::Table) => Some(text),
        (true, _) => None,
    };
    Ok(Outcome {
        report,
        circuit_text,
        exit_code: EXIT_OK,
    })
}

fn dump_prefix_end(plan: &GroverPlan, point: DumpPoint) -> usize {
    let kind = match point {
        DumpPoint::End => return plan.circuit.len(),
        DumpPoint::Preamble => return plan.preamble().len(),
        DumpPoint::Clause => StageKind::ClauseStage,
        DumpPoint::And => StageKind::AndStage,
        DumpPoint::Kickback => StageKind::Kickback,
        DumpPoint::Uncompute => StageKind::Uncompute,
        DumpPoint::Diffusion => StageKind::Diffusion,
    };
    plan.circuit
        .stage(kind, Some(0))
        .map_or(plan.circuit.len(), |s| s.range.end)
}

fn simulate_cmd(args: &SimulateCmd, max_qubits: Option<usize>) -> Result<Outcome, CliError> {
    let (f, mut report, plan) = prepare(&args.input, &args.compile, max_qubits)?;
    let mut state = StateVector::zero_with_limit(plan.register_size(), plan.options.max_qubits)?;
    let cut = match args.dump_state {
        Some(_) => dump_prefix_end(&plan, args.dump_after),
        None => plan.circuit.len(),
    };
    state.run(&plan.circuit.slice(0..cut))?;
    if let Some(path) = &args.dump_state {
        write_file(path, &state_dump::write(&state))?;
    }
    state.run(&plan.circuit.slice(cut..plan.circuit.len()))?;
    let m = measure_variables(&state, &plan);
    report.measurement = Some(MeasurementSummary::new(&f, &plan, &m, args.top));
    if let Some(k) = args.sweep {
        let points: Vec<SweepPoint> = iteration_sweep(&plan, k)?
            .iter()
            .enumerate()
            .map(|(iterations, m)| SweepPoint {
                iterations,
                success_probability: report::success_probability(&f, m),
            })
            .collect();
        if let Some(path) = &args.csv {
            write_file(path, &report::sweep_csv(&points)?)?;
        }
        report.sweep = Some(points);
    }
    Ok(Outcome {
        report,
        circuit_text: None,
        exit_code: EXIT_OK,
    })
}

fn trap_config(args: &CostCmd) -> TrapConfig {
    let mut cfg = TrapConfig {
        eta: args.eta,
        theta_deg: args.theta_deg,
        wavelength_m: args.wavelength_nm * 1e-9,
        m_ratio: args.m_ratio,
        ..TrapConfig::default()
    };
    if let Some(u) = args.ion_mass_u {
        cfg.ion_mass_kg = u * ATOMIC_MASS_UNIT;
    }
    cfg
}

fn cost_cmd(args: &CostCmd, max_qubits: Option<usize>) -> Result<Outcome, CliError> {
    let cfg = trap_config(args);
    cfg.validate()?;
    let backends: &[Backend] = match args.backend {
        BackendArg::Conventional => &[Backend::Conventional],
        BackendArg::Straightforward => &[Backend::Straightforward],
        BackendArg::Both => &[Backend::Conventional, Backend::Straightforward],
    };
    let (mut report, records) = if args.table1 {
        let source = match args.trap_source {
            TrapSource::Printed => FrequencySource::Printed,
            TrapSource::Model => FrequencySource::Model,
        };
        let rows = table1_report_with(&cfg, source)?;
        (
            RunReport::default(),
            report::table1_records(&rows, backends),
        )
    } else {
        let (f, report, plan) = prepare(&args.input, &args.compile, max_qubits)?;
        let inv = plan.iteration_block().inventory(true);
        let n = plan.register_size();
        let omega = trap_frequency(&cfg, n)?;
        let hz = omega / (2.0 * std::f64::consts::PI);
        let label = f.to_string();
        let records = backends
            .iter()
            .map(|&b| {
                Ok(report::cost_record(
                    &label,
                    n,
                    &inv,
                    &cost_report(b, &inv, omega, &cfg)?,
                    hz,
                ))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        (report, records)
    };
    if let Some(path) = &args.csv {
        write_file(path, &report::cost_csv(&records)?)?;
    }
    report.cost = Some(records);
    Ok(Outcome {
        report,
        circuit_text: None,
        exit_code: EXIT_OK,
    })
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Solve(a) => solve(a),
        Command::Compile(a) => compile_cmd(a, cli.max_qubits, cli.format),
        Command::Simulate(a) => simulate_cmd(a, cli.max_qubits),
        Command::Cost(a) => cost_cmd(a, cli.max_qubits),
    }
}

/// Parses `args`, runs, prints, and returns the process exit status.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let text = match cli.format {
                Format::Json => outcome.report.to_json(),
                Format::Table => outcome.report.to_table(outcome.circuit_text.as_deref()),
            };
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            outcome.exit_code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
