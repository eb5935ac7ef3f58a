//! Line-oriented circuit format.
//!
//! ```text
//! qubits 3
//! qubit 0 var a
//! qubit 1 var b
//! qubit 2 result
//! stage preamble
//! h 0
//! stage clause 0
//! mcx +0 -1 -> 2
//! ```
//!
//! `qubits` comes first, then one `qubit` line per register slot in order.
//! `stage <name> [iteration]` opens a stage at the current gate position.
//! Every other line is a gate: mnemonic, then either a bare target or
//! polarity-marked controls followed by `-> target`. Blank lines and `#`
//! comments are ignored on input and never emitted.

use std::fmt::Write as _;

use groversat_core::circuit::{
    Circuit, CircuitError, Control, Gate, GateKind, Polarity, QubitRole, StageKind, StageMark,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitTextError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `qubits` header")]
    MissingHeader,
    #[error("expected {expected} qubit declarations, found {found}")]
    QubitDeclarations { expected: usize, found: usize },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: CircuitError },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Renders a circuit; [`parse`] inverts this exactly.
pub fn emit(circuit: &Circuit) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "qubits {}", circuit.qubit_count());
    for (i, role) in circuit.qubits().iter().enumerate() {
        let _ = writeln!(out, "qubit {i} {role}");
    }
    let marks = circuit.stage_marks();
    let mut next_mark = 0;
    for (i, gate) in circuit.gates().iter().enumerate() {
        while next_mark < marks.len() && marks[next_mark].start == i {
            write_mark(&mut out, &marks[next_mark]);
            next_mark += 1;
        }
        let _ = writeln!(out, "{gate}");
    }
    for m in &marks[next_mark..] {
        write_mark(&mut out, m);
    }
    out
}

fn write_mark(out: &mut String, m: &StageMark) {
    match m.iteration {
        Some(i) => {
            let _ = writeln!(out, "stage {} {i}", m.kind);
        }
        None => {
            let _ = writeln!(out, "stage {}", m.kind);
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> CircuitTextError {
    CircuitTextError::Syntax {
        line,
        message: message.into(),
    }
}

fn number(line: usize, token: &str, what: &str) -> Result<usize, CircuitTextError> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("expected {what}, found `{token}`")))
}

fn parse_role(line: usize, tokens: &[&str]) -> Result<QubitRole, CircuitTextError> {
    match tokens {
        ["var", name] => Ok(QubitRole::Variable((*name).to_string())),
        ["clause", c] => Ok(QubitRole::ClauseAncilla(number(line, c, "clause index")?)),
        ["intermediate", c, s] => Ok(QubitRole::Intermediate {
            clause: number(line, c, "clause index")?,
            step: number(line, s, "step index")?,
        }),
        ["result"] => Ok(QubitRole::Result),
        ["kickback"] => Ok(QubitRole::Kickback),
        _ => Err(syntax(
            line,
            format!("unknown qubit role `{}`", tokens.join(" ")),
        )),
    }
}

fn parse_gate(line: usize, tokens: &[&str]) -> Result<Gate, CircuitTextError> {
    let kind = GateKind::from_mnemonic(tokens[0])
        .ok_or_else(|| syntax(line, format!("unknown gate `{}`", tokens[0])))?;
    let (controls, target) = match tokens[1..] {
        [t] => (Vec::new(), number(line, t, "target qubit")?),
        [ref rest @ .., "->", t] if !rest.is_empty() => {
            let controls = rest
                .iter()
                .map(|tok| {
                    let polarity = match tok.chars().next() {
                        Some('+') => Polarity::Positive,
                        Some('-') => Polarity::Negative,
                        _ => return Err(syntax(line, format!("control `{tok}` lacks a +/- mark"))),
                    };
                    Ok(Control {
                        qubit: number(line, &tok[1..], "control qubit")?,
                        polarity,
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            (controls, number(line, t, "target qubit")?)
        }
        _ => {
            return Err(syntax(
                line,
                "expected `<gate> <target>` or `<gate> <controls> -> <target>`",
            ))
        }
    };
    Ok(Gate {
        kind,
        controls,
        target,
    })
}

pub fn parse(text: &str) -> Result<Circuit, CircuitTextError> {
    let mut size: Option<usize> = None;
    let mut roles = Vec::new();
    let mut gates = Vec::new();
    let mut stages = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some(&head) = tokens.first() else {
            continue;
        };
        match head {
            "qubits" => {
                if size.is_some() {
                    return Err(syntax(line, "duplicate `qubits` header"));
                }
                let [_, n] = tokens[..] else {
                    return Err(syntax(line, "expected `qubits <count>`"));
                };
                size = Some(number(line, n, "qubit count")?);
            }
            "qubit" => {
                let n = size.ok_or(CircuitTextError::MissingHeader)?;
                if tokens.len() < 3 {
                    return Err(syntax(line, "expected `qubit <index> <role>`"));
                }
                let i = number(line, tokens[1], "qubit index")?;
                if i != roles.len() || i >= n {
                    return Err(syntax(line, format!("qubit {i} declared out of order")));
                }
                roles.push(parse_role(line, &tokens[2..])?);
            }
            "stage" => {
                size.ok_or(CircuitTextError::MissingHeader)?;
                let kind = tokens
                    .get(1)
                    .and_then(|s| StageKind::from_name(s))
                    .ok_or_else(|| syntax(line, "expected a stage name"))?;
                let iteration = match tokens.get(2..) {
                    Some([]) | None => None,
                    Some([i]) => Some(number(line, i, "iteration")?),
                    Some(_) => return Err(syntax(line, "trailing tokens after stage")),
                };
                stages.push(StageMark {
                    kind,
                    iteration,
                    start: gates.len(),
                });
            }
            _ => {
                let n = size.ok_or(CircuitTextError::MissingHeader)?;
                if roles.len() != n {
                    return Err(CircuitTextError::QubitDeclarations {
                        expected: n,
                        found: roles.len(),
                    });
                }
                let gate = parse_gate(line, &tokens)?;
                gate.validate(n)
                    .map_err(|source| CircuitTextError::Invalid { line, source })?;
                gates.push(gate);
            }
        }
    }
    let n = size.ok_or(CircuitTextError::MissingHeader)?;
    if roles.len() != n {
        return Err(CircuitTextError::QubitDeclarations {
            expected: n,
            found: roles.len(),
        });
    }
    Ok(Circuit::from_parts(roles, gates, stages)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use groversat_core::{compile, CnfFormula, CompileOptions};

    #[test]
    fn plan_round_trips() {
        let f = CnfFormula::parse_infix("(a|b|c)&(a|~b|c)&b&~c").unwrap();
        let plan = compile(&f, &CompileOptions::default()).unwrap();
        let text = emit(&plan.circuit);
        assert!(text.starts_with("qubits 9\nqubit 0 var a\n"));
        assert!(text.contains("stage clause 0\n"));
        let back = parse(&text).unwrap();
        assert_eq!(back, plan.circuit);
        assert_eq!(emit(&back), text);
    }

    #[test]
    fn trailing_and_empty_stages() {
        let mut c = Circuit::with_qubits(2);
        c.begin_stage(StageKind::Preamble, None).unwrap();
        c.append(Gate::h(0)).unwrap();
        c.begin_stage(StageKind::AndStage, Some(0)).unwrap();
        c.begin_stage(StageKind::Kickback, Some(0)).unwrap();
        c.append(Gate::mcz(vec![Control::on_zero(0)], 1)).unwrap();
        c.begin_stage(StageKind::Diffusion, Some(0)).unwrap();
        let text = emit(&c);
        assert_eq!(
            text,
            "qubits 2\nqubit 0 var q0\nqubit 1 var q1\nstage preamble\nh 0\nstage and 0\nstage kickback 0\nmcz -0 -> 1\nstage diffusion 0\n"
        );
        assert_eq!(parse(&text).unwrap(), c);
    }

    #[test]
    fn comments_and_blank_lines() {
        let c = parse(
            "# demo\nqubits 2\n\nqubit 0 var a\nqubit 1 kickback  # phase\nx 1\nmcx +0 -> 1\n",
        )
        .unwrap();
        assert_eq!(c.gates().len(), 2);
        assert_eq!(c.qubits()[1], QubitRole::Kickback);
    }

    #[test]
    fn errors() {
        assert_eq!(parse("h 0\n"), Err(CircuitTextError::MissingHeader));
        assert!(matches!(
            parse("qubits 1\nqubit 0 var a\nfoo 0\n"),
            Err(CircuitTextError::Syntax { line: 3, .. })
        ));
        assert!(matches!(
            parse("qubits 2\nqubit 0 var a\nqubit 1 var b\nmcx 0 -> 1\n"),
            Err(CircuitTextError::Syntax { line: 4, .. })
        ));
        assert!(matches!(
            parse("qubits 2\nqubit 0 var a\nqubit 1 var b\nmcx +1 -> 1\n"),
            Err(CircuitTextError::Invalid { line: 4, .. })
        ));
        assert!(matches!(
            parse("qubits 2\nqubit 0 var a\nh 0\n"),
            Err(CircuitTextError::QubitDeclarations { .. })
        ));
        assert!(matches!(
            parse("qubits 1\nqubit 0 var a\nh 0\nstage preamble\n"),
            Err(CircuitTextError::Circuit(_))
        ));
        assert!(matches!(
            parse("qubits 1\nqubit 1 var a\n"),
            Err(CircuitTextError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse("qubits 1\nqubit 0 wizard\n"),
            Err(CircuitTextError::Syntax { line: 2, .. })
        ));
    }
}
