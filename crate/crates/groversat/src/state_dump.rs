//! Statevector dumps: a `qubits N` header, then one `index re im` line per
//! amplitude whose magnitude is at least [`ELIDE_BELOW`]. Floats use the
//! shortest representation that parses back to the same value.

use std::fmt::Write as _;

use groversat_core::simulator::StateVector;
use num_complex::Complex64;

pub const ELIDE_BELOW: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StateDumpError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `qubits` header")]
    MissingHeader,
    #[error("line {line}: basis index {index} out of range for {qubits} qubits")]
    IndexOutOfRange {
        line: usize,
        index: usize,
        qubits: usize,
    },
    #[error("unsupported qubit count {0}")]
    QubitCount(usize),
}

pub fn write(state: &StateVector) -> String {
    let mut out = format!("qubits {}\n", state.qubit_count());
    for (i, a) in state.amplitudes().iter().enumerate() {
        if a.norm() >= ELIDE_BELOW {
            let _ = writeln!(out, "{i} {:?} {:?}", a.re, a.im);
        }
    }
    out
}

/// Inverse of [`write`]; elided amplitudes come back as zero.
pub fn parse(text: &str) -> Result<StateVector, StateDumpError> {
    let mut amps: Option<Vec<Complex64>> = None;
    let mut qubits = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        let syntax = |m: &str| StateDumpError::Syntax {
            line,
            message: m.to_string(),
        };
        match (&mut amps, &tokens[..]) {
            (_, []) => {}
            (None, &["qubits", n]) => {
                qubits = n.parse().map_err(|_| syntax("bad qubit count"))?;
                if qubits == 0 || qubits > 30 {
                    return Err(StateDumpError::QubitCount(qubits));
                }
                amps = Some(vec![Complex64::new(0.0, 0.0); 1 << qubits]);
            }
            (None, _) => return Err(StateDumpError::MissingHeader),
            (Some(v), &[i, re, im]) => {
                let index: usize = i.parse().map_err(|_| syntax("bad basis index"))?;
                let re: f64 = re.parse().map_err(|_| syntax("bad real part"))?;
                let im: f64 = im.parse().map_err(|_| syntax("bad imaginary part"))?;
                let slot = v.get_mut(index).ok_or(StateDumpError::IndexOutOfRange {
                    line,
                    index,
                    qubits,
                })?;
                *slot = Complex64::new(re, im);
            }
            (Some(_), _) => return Err(syntax("expected `index re im`")),
        }
    }
    let amps = amps.ok_or(StateDumpError::MissingHeader)?;
    StateVector::from_amplitudes(amps).map_err(|_| StateDumpError::QubitCount(qubits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use groversat_core::uniform_state;

    #[test]
    fn round_trip_and_elision() {
        let mut amps = vec![Complex64::new(0.0, 0.0); 4];
        amps[1] = Complex64::new(0.6, -0.0);
        amps[2] = Complex64::new(1e-15, 0.0);
        amps[3] = Complex64::new(-0.1, 0.7937253933193772);
        let s = StateVector::from_amplitudes(amps).unwrap();
        let text = write(&s);
        assert_eq!(text, "qubits 2\n1 0.6 -0.0\n3 -0.1 0.7937253933193772\n");
        let back = parse(&text).unwrap();
        assert_eq!(back.amplitude(3), s.amplitude(3));
        assert_eq!(back.amplitude(2), Complex64::new(0.0, 0.0));
        assert_eq!(write(&back), text);
    }

    #[test]
    fn uniform_is_exact() {
        let s = uniform_state(3).unwrap();
        assert_eq!(parse(&write(&s)).unwrap(), s);
    }

    #[test]
    fn errors() {
        assert_eq!(parse("0 1 0\n"), Err(StateDumpError::MissingHeader));
        assert_eq!(parse(""), Err(StateDumpError::MissingHeader));
        assert!(matches!(
            parse("qubits 1\n2 1 0\n"),
            Err(StateDumpError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            parse("qubits 1\n0 x 0\n"),
            Err(StateDumpError::Syntax { line: 2, .. })
        ));
        assert_eq!(parse("qubits 0\n"), Err(StateDumpError::QubitCount(0)));
    }
}
