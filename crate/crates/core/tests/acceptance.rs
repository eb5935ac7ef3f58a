//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use groversat_core::circuit::{GateInventory, StageKind};
use groversat_core::compiler::{
    compile, compile_diffusion, compile_oracle, CompileOptions, KickbackStyle, RegisterLayout,
    WideClauseStrategy,
};
use groversat_core::cost::{
    cnot_pulse_check, conventional_counts, cost_report, table1_report, trap_frequency, Backend,
    PulseCounts, TrapConfig,
};
use groversat_core::formula::{Assignment, CnfFormula, Literal, SatClassification};
use groversat_core::simulator::{iteration_sweep, measure_variables, simulate_plan, StateVector};
use groversat_core::Circuit;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TWO_VAR: &str = "(~a|~b)&(a|b)&a";
const THREE_VAR: &str = "(a|b)&(~a|c)&~b";
const MIXED_WIDTH: &str = "(a|b|c)&(a|~b|c)&b&~c";

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Option<Duration>);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn parse(text: &str) -> CnfFormula {
    CnfFormula::parse_infix(text).expect("fixture parses")
}

fn brute_force_unique(f: &CnfFormula) -> Option<u64> {
    let n = f.variable_count();
    let sols: Vec<u64> = (0..1u64 << n)
        .filter(|&x| {
            f.clauses().iter().all(|c| {
                c.literals()
                    .iter()
                    .any(|l| (x >> l.variable & 1 == 1) != l.negated)
            })
        })
        .collect();
    (sols.len() == 1).then(|| sols[0])
}

fn criterion_1() -> Check {
    let plan = compile(&parse(TWO_VAR), &CompileOptions::default()).map_err(|e| e.to_string())?;
    let prefix = plan.through_first_kickback().map_err(|e| e.to_string())?;
    let mut s = StateVector::zero(plan.register_size()).map_err(|e| e.to_string())?;
    s.run(&prefix).map_err(|e| e.to_string())?;
    // Layout: a=q0, b=q1; clause ancillas and result at q2, q3, q4; kickback at q5.
    let (c1, c2) = (
        plan.layout.clause_ancillas[0].unwrap(),
        plan.layout.clause_ancillas[1].unwrap(),
    );
    let (res, kick) = (plan.layout.result.unwrap(), plan.layout.kickback);
    let terms: [(u64, [u8; 3], f64); 4] = [
        (0b00, [1, 0, 0], 1.0),
        (0b10, [1, 1, 0], 1.0),  // a=0, b=1
        (0b01, [1, 1, 1], -1.0), // a=1, b=0
        (0b11, [0, 1, 0], 1.0),
    ];
    // Four variable terms of weight 1/2 each, times 1/√2 per kickback
    // component: 1/(2√2) per basis amplitude, unit norm overall.
    let mag = 0.5 / 2f64.sqrt();
    let mut expected = vec![Complex64::new(0.0, 0.0); 1 << plan.register_size()];
    for (ab, [q1, q2, q3], sign) in terms {
        let base = ab as usize | (q1 as usize) << c1 | (q2 as usize) << c2 | (q3 as usize) << res;
        expected[base] = Complex64::new(sign * mag, 0.0);
        expected[base | 1 << kick] = Complex64::new(-sign * mag, 0.0);
    }
    let err = s
        .amplitudes()
        .iter()
        .zip(&expected)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    ensure(err < 1e-12, format!("max amplitude error {err:e}"))?;
    Ok(format!(
        "8 nonzero amplitudes of magnitude {mag:.6}, max error {err:.1e}"
    ))
}

fn criterion_2() -> Check {
    let f = parse(TWO_VAR);
    let plan = compile(&f, &CompileOptions::default()).map_err(|e| e.to_string())?;
    ensure(plan.iteration_count == 1, "expected 1 iteration")?;
    let s = simulate_plan(&plan).map_err(|e| e.to_string())?;
    let target = Assignment::new(vec![true, false]);
    let p = measure_variables(&s, &plan).probability_of(&target);
    ensure((p - 1.0).abs() < 1e-9, format!("P(a=1,b=0) = {p}"))?;
    Ok(format!("P(a=1,b=0) = {p:.12}"))
}

fn criterion_3() -> Check {
    let mut parts = Vec::new();
    for text in [THREE_VAR, MIXED_WIDTH] {
        let f = parse(text);
        let oracle = brute_force_unique(&f).ok_or("brute force found no unique solution")?;
        let class = f.classify().map_err(|e| e.to_string())?;
        ensure(
            class == SatClassification::Unique(Assignment::from_index(f.variable_count(), oracle)),
            format!("{text}: classification {class} disagrees with enumeration"),
        )?;
        let plan = compile(&f, &CompileOptions::default()).map_err(|e| e.to_string())?;
        let sweep = iteration_sweep(&plan, 2).map_err(|e| e.to_string())?;
        let (p1, p2) = (
            sweep[1].probabilities[oracle as usize],
            sweep[2].probabilities[oracle as usize],
        );
        ensure((p1 - 0.78125).abs() < 1e-9, format!("{text}: P1 = {p1}"))?;
        ensure((p2 - 0.9453125).abs() < 1e-9, format!("{text}: P2 = {p2}"))?;
        parts.push(format!(
            "{}: {p1:.9}/{p2:.9}",
            f.describe(&Assignment::from_index(3, oracle))
        ));
    }
    Ok(parts.join("; "))
}

fn criterion_4() -> Check {
    let mut worst: f64 = 0.0;
    let mut blocks = 0;
    for text in [TWO_VAR, THREE_VAR, MIXED_WIDTH] {
        let f = parse(text);
        for style in [KickbackStyle::SeparateAncilla, KickbackStyle::DirectPhase] {
            for wide in [WideClauseStrategy::Cascade, WideClauseStrategy::Direct] {
                let opts = CompileOptions {
                    kickback_style: style,
                    wide_clause_strategy: wide,
                    iterations: groversat_core::Iterations::Fixed(3),
                    ..Default::default()
                };
                let plan = compile(&f, &opts).map_err(|e| e.to_string())?;
                let mut s = StateVector::zero(plan.register_size()).map_err(|e| e.to_string())?;
                let mut done = 0;
                for span in plan.circuit.stages() {
                    s.run(&plan.circuit.slice(done..span.range.end))
                        .map_err(|e| e.to_string())?;
                    done = span.range.end;
                    if span.kind == StageKind::Uncompute {
                        worst = worst.max(measure_variables(&s, &plan).ancilla_residual);
                        blocks += 1;
                    }
                }
            }
        }
    }
    ensure(worst < 1e-20, format!("ancilla residual {worst:e}"))?;
    Ok(format!("{blocks} oracle blocks, max residual {worst:e}"))
}

fn criterion_5() -> Check {
    let sizes: Vec<usize> = [TWO_VAR, THREE_VAR, MIXED_WIDTH]
        .iter()
        .map(|t| compile(&parse(t), &CompileOptions::default()).map(|p| p.register_size()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(sizes == [6, 7, 9], format!("sizes {sizes:?}"))?;
    Ok(format!("qubits {sizes:?}"))
}

fn criterion_6() -> Check {
    let cfg = TrapConfig::default();
    let mut out = Vec::new();
    for (n, mhz) in [(6, 2.92), (7, 2.50), (9, 1.94)] {
        let f = trap_frequency(&cfg, n).map_err(|e| e.to_string())? / (2.0 * PI) / 1e6;
        let rel = (f - mhz).abs() / mhz;
        ensure(rel < 0.01, format!("n={n}: {f:.4} MHz vs {mhz}"))?;
        out.push(format!("{f:.3}"));
    }
    Ok(format!("ω_z/2π = {} MHz", out.join("/")))
}

fn criterion_7() -> Check {
    let want = [
        ([1, 5, 2, 0], 118, 59),
        ([1, 4, 3, 0], 134, 67),
        ([1, 8, 1, 2], 246, 123),
    ];
    for (cols, b, bs) in want {
        let c = conventional_counts(&GateInventory::from_phase_flip_columns(&cols))
            .map_err(|e| e.to_string())?;
        ensure(
            c.b_gates == b && c.b_star_gates == bs,
            format!("{cols:?}: N[B]={} N[B*]={}", c.b_gates, c.b_star_gates),
        )?;
    }
    Ok("N[B] = 118/134/246, N[B*] = 59/67/123".into())
}

fn criterion_8() -> Check {
    let rows = table1_report(&TrapConfig::default()).map_err(|e| e.to_string())?;
    let want = [
        (8.562e-6, 2.021e-3, 1.370e-3),
        (10.0e-6, 2.680e-3, 1.600e-3),
        (12.887e-6, 6.340e-3, 3.093e-3),
    ];
    let mut worst: f64 = 0.0;
    for (row, (tb, conv, straight)) in rows.iter().zip(want) {
        for (got, exp) in [
            (row.conventional.gate_seconds, tb),
            (row.conventional.total_seconds, conv),
            (row.straightforward.total_seconds, straight),
        ] {
            let rel = (got - exp).abs() / exp;
            worst = worst.max(rel);
            ensure(
                rel < 0.005,
                format!("{}: {got:e} vs {exp:e}", row.circuit.label),
            )?;
        }
    }
    Ok(format!(
        "9 cells, worst relative error {:.3}%",
        worst * 100.0
    ))
}

fn maxterm_cnf(n: usize, table: u32) -> CnfFormula {
    let clauses = (0..1u64 << n)
        .filter(|&x| table >> x & 1 == 0)
        .map(|x| {
            (0..n)
                .map(|v| Literal {
                    variable: v,
                    negated: x >> v & 1 == 1,
                })
                .collect()
        })
        .collect();
    CnfFormula::new((0..n).map(|i| format!("v{i}")).collect(), clauses)
        .expect("maxterm CNF is valid")
}

fn kickback_equivalence() -> Result<usize, String> {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let mut checked = 0;
    for n in 1..=3usize {
        for table in 0..(1u32 << (1 << n)) {
            let f = maxterm_cnf(n, table);
            for style in [KickbackStyle::SeparateAncilla, KickbackStyle::DirectPhase] {
                let opts = CompileOptions {
                    force: true,
                    kickback_style: style,
                    wide_clause_strategy: WideClauseStrategy::Direct,
                    ..Default::default()
                };
                let oracle = compile_oracle(&f, &opts).map_err(|e| e.to_string())?;
                let kick = RegisterLayout::new(&f, &opts).kickback;
                let q = oracle.qubit_count();
                for x in 0..1usize << n {
                    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << q];
                    amps[x] = Complex64::new(r, 0.0);
                    amps[x | 1 << kick] = Complex64::new(-r, 0.0);
                    let mut s =
                        StateVector::from_amplitudes(amps.clone()).map_err(|e| e.to_string())?;
                    s.run(&oracle).map_err(|e| e.to_string())?;
                    let sign = if table >> x & 1 == 1 { -1.0 } else { 1.0 };
                    let err = s
                        .amplitudes()
                        .iter()
                        .zip(&amps)
                        .map(|(a, b)| (a - b * sign).norm())
                        .fold(0.0, f64::max);
                    ensure(
                        err < 1e-12,
                        format!("n={n} table={table:#x} x={x}: error {err:e}"),
                    )?;
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn diffusion_matrices() -> Result<(), String> {
    for n in 1..=4usize {
        let d = compile_diffusion(n).map_err(|e| e.to_string())?;
        let dim = 1usize << n;
        let mut phase = None;
        for j in 0..dim {
            let mut s = StateVector::basis(n, j).map_err(|e| e.to_string())?;
            s.run(&d).map_err(|e| e.to_string())?;
            for i in 0..dim {
                let want = 2.0 / dim as f64 - if i == j { 1.0 } else { 0.0 };
                if want.abs() > 1e-9 && phase.is_none() {
                    phase = Some(s.amplitude(i) / want);
                }
                let p = phase.unwrap_or(Complex64::new(1.0, 0.0));
                ensure(
                    (s.amplitude(i) - p * want).norm() < 1e-12,
                    format!("n={n} entry ({i},{j})"),
                )?;
            }
        }
        ensure(
            (phase.unwrap().norm() - 1.0).abs() < 1e-12,
            "non-unit phase",
        )?;
    }
    Ok(())
}

fn random_inverse_circuits() -> Result<(), String> {
    use groversat_core::circuit::{Control, Gate};
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..200 {
        let q = rng.gen_range(2..=5);
        let mut c = Circuit::with_qubits(q);
        for _ in 0..rng.gen_range(1..=20) {
            let t = rng.gen_range(0..q);
            let others: Vec<usize> = (0..q).filter(|&o| o != t && rng.gen_bool(0.5)).collect();
            let controls: Vec<Control> = others
                .into_iter()
                .map(|o| {
                    if rng.gen_bool(0.5) {
                        Control::on_one(o)
                    } else {
                        Control::on_zero(o)
                    }
                })
                .collect();
            let g = match rng.gen_range(0..4) {
                0 => Gate::x(t),
                1 => Gate::h(t),
                2 if !controls.is_empty() => Gate::mcx(controls, t),
                _ if !controls.is_empty() => Gate::mcz(controls, t),
                _ => Gate::h(t),
            };
            c.append(g).map_err(|e| e.to_string())?;
        }
        let mut round = c.clone();
        round.extend_from(&c.invert()).map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let mut amps: Vec<Complex64> = (0..1 << q)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            amps.iter_mut().for_each(|a| *a /= norm);
            let mut s = StateVector::from_amplitudes(amps.clone()).map_err(|e| e.to_string())?;
            s.run(&round).map_err(|e| e.to_string())?;
            let err = s
                .amplitudes()
                .iter()
                .zip(&amps)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            ensure(err < 1e-12, format!("inverse error {err:e}"))?;
        }
    }
    Ok(())
}

fn grover_law() -> Result<usize, String> {
    let mut points = 0;
    for n in 2..=4usize {
        let theta = (1.0 / (1u64 << n) as f64).sqrt().asin();
        for marked in 0..1u64 << n {
            let clauses = (0..n)
                .map(|v| {
                    vec![Literal {
                        variable: v,
                        negated: marked >> v & 1 == 0,
                    }]
                })
                .collect();
            let f = CnfFormula::new((0..n).map(|i| format!("v{i}")).collect(), clauses)
                .map_err(|e| e.to_string())?;
            let plan = compile(&f, &CompileOptions::default()).map_err(|e| e.to_string())?;
            for (k, r) in iteration_sweep(&plan, 5)
                .map_err(|e| e.to_string())?
                .iter()
                .enumerate()
            {
                let law = ((2 * k + 1) as f64 * theta).sin().powi(2);
                let p = r.probabilities[marked as usize];
                ensure((p - law).abs() < 1e-9, format!("n={n} k={k}: {p} vs {law}"))?;
                points += 1;
            }
        }
    }
    Ok(points)
}

fn criterion_9() -> Check {
    let functions = kickback_equivalence()?;
    diffusion_matrices()?;
    random_inverse_circuits()?;
    let points = grover_law()?;
    Ok(format!(
        "{functions} oracle/style pairs, diffusion n<=4, 200 inverse circuits, {points} Grover-law points"
    ))
}

fn criterion_10() -> Check {
    for n in 3..=10 {
        let c = cnot_pulse_check(n).ok_or("no check")?;
        ensure(
            c.from_components == 7 * (1 << n) - 12,
            format!("n={n}: components {}", c.from_components),
        )?;
        ensure(
            c.quoted_aggregate == 8 * (1 << n) - 12 && !c.consistent(),
            format!("n={n}: not flagged"),
        )?;
    }
    let inv = GateInventory::from_phase_flip_columns(&[1, 8, 1, 2]);
    let w = trap_frequency(&TrapConfig::default(), 9).map_err(|e| e.to_string())?;
    let report = cost_report(Backend::Conventional, &inv, w, &TrapConfig::default())
        .map_err(|e| e.to_string())?;
    let flagged: Vec<usize> = report
        .pulse_checks
        .iter()
        .filter(|c| !c.consistent())
        .map(|c| c.arity)
        .collect();
    ensure(
        flagged == [3, 4, 5],
        format!("report flags arities {flagged:?}"),
    )?;
    let PulseCounts::Conventional(counts) = report.pulses else {
        return Err("wrong pulse variant".into());
    };
    ensure(
        counts == conventional_counts(&inv).map_err(|e| e.to_string())?,
        "report counts differ",
    )?;
    Ok("components 7·2^n−12 vs quoted 8·2^n−12 flagged for n = 3, 4, 5 in report".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "oracle state fixture",
            criterion_1,
            Some(Duration::from_secs(1)),
        ),
        (
            "two-variable exact search",
            criterion_2,
            Some(Duration::from_secs(1)),
        ),
        (
            "three-variable probabilities",
            criterion_3,
            Some(Duration::from_secs(1)),
        ),
        ("ancilla decoupling", criterion_4, None),
        ("register sizes", criterion_5, None),
        ("trap frequencies", criterion_6, None),
        ("pulse counts", criterion_7, None),
        ("gate and total times", criterion_8, None),
        (
            "property suites",
            criterion_9,
            Some(Duration::from_secs(60)),
        ),
        ("pulse-formula discrepancy flagged", criterion_10, None),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = match (result, budget) {
            (Ok(_), Some(b)) if elapsed > *b => Err(format!("took {elapsed:?}, budget {b:?}")),
            (r, _) => r,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {:>2} {tag} {name} ({:.3} ms): {detail}",
            i + 1,
            elapsed.as_secs_f64() * 1e3
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
