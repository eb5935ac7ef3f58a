use groversat::{circuit_text, state_dump};
use groversat_core::circuit::{
    Circuit, Control, Gate, GateKind, Polarity, QubitRole, StageKind, StageMark,
};
use groversat_core::simulator::StateVector;
use num_complex::Complex64;
use proptest::prelude::*;

fn arb_role() -> impl Strategy<Value = QubitRole> {
    prop_oneof![
        "[a-z][a-z0-9_]{0,5}".prop_map(QubitRole::Variable),
        (0usize..20).prop_map(QubitRole::ClauseAncilla),
        (0usize..20, 0usize..5).prop_map(|(clause, step)| QubitRole::Intermediate { clause, step }),
    ]
}

fn arb_gate(q: usize) -> impl Strategy<Value = Gate> {
    (
        0..q,
        prop::sample::select(vec![
            GateKind::PauliX,
            GateKind::Hadamard,
            GateKind::MultiControlledX,
            GateKind::MultiControlledZ,
        ]),
        prop::collection::vec((0..q, any::<bool>()), 0..q),
    )
        .prop_map(move |(target, kind, raw)| {
            let mut controls: Vec<Control> = Vec::new();
            for (qubit, neg) in raw {
                if qubit != target && controls.iter().all(|c| c.qubit != qubit) {
                    let polarity = if neg {
                        Polarity::Negative
                    } else {
                        Polarity::Positive
                    };
                    controls.push(Control { qubit, polarity });
                }
            }
            match kind {
                GateKind::PauliX | GateKind::Hadamard => Gate {
                    kind,
                    controls: Vec::new(),
                    target,
                },
                _ if controls.is_empty() => Gate::x(target),
                _ => Gate {
                    kind,
                    controls,
                    target,
                },
            }
        })
}

fn arb_circuit() -> impl Strategy<Value = Circuit> {
    (2usize..7, any::<bool>(), any::<bool>()).prop_flat_map(|(q, result, kickback)| {
        let extra = usize::from(result) + usize::from(kickback);
        let base = q.saturating_sub(extra).max(1);
        (
            prop::collection::vec(arb_role(), base),
            prop::collection::vec(arb_gate(base + extra), 0..25),
            prop::collection::vec(
                (
                    prop::sample::select(StageKind::ALL.to_vec()),
                    prop::option::of(0usize..4),
                    0usize..25,
                ),
                0..6,
            ),
        )
            .prop_map(move |(mut roles, gates, mut marks)| {
                if result {
                    roles.push(QubitRole::Result);
                }
                if kickback {
                    roles.push(QubitRole::Kickback);
                }
                let len = gates.len();
                marks.iter_mut().for_each(|m| m.2 = m.2.min(len));
                marks.sort_by_key(|m| m.2);
                if let Some(first) = marks.first_mut() {
                    first.2 = 0;
                }
                let stages = marks
                    .into_iter()
                    .map(|(kind, iteration, start)| StageMark {
                        kind,
                        iteration,
                        start,
                    })
                    .collect();
                Circuit::from_parts(roles, gates, stages).expect("generated circuit is valid")
            })
    })
}

proptest! {
    #[test]
    fn text_round_trip(c in arb_circuit()) {
        let text = circuit_text::emit(&c);
        let back = circuit_text::parse(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(circuit_text::emit(&back), text);
    }

    #[test]
    fn json_round_trip(c in arb_circuit()) {
        let json = serde_json::to_string(&c).unwrap();
        let back: Circuit = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn state_dump_round_trip(q in 1usize..6, seed in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0, any::<bool>()), 64)) {
        let amps: Vec<Complex64> = seed
            .iter()
            .take(1 << q)
            .map(|&(re, im, zero)| if zero { Complex64::new(0.0, 0.0) } else { Complex64::new(re, im) })
            .collect();
        let s = StateVector::from_amplitudes(amps).unwrap();
        let text = state_dump::write(&s);
        let back = state_dump::parse(&text).unwrap();
        for i in 0..1usize << q {
            let (a, b) = (s.amplitude(i), back.amplitude(i));
            if a.norm() >= state_dump::ELIDE_BELOW {
                prop_assert_eq!(a, b);
            } else {
                prop_assert_eq!(b, Complex64::new(0.0, 0.0));
            }
        }
        prop_assert_eq!(state_dump::write(&back), text);
    }
}

#[test]
fn json_rejects_invalid_circuits() {
    let bad = r#"{"qubits":[{"Variable":"a"}],"gates":[{"kind":"PauliX","controls":[],"target":3}],"stages":[]}"#;
    assert!(serde_json::from_str::<Circuit>(bad).is_err());
}
