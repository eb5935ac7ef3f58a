//! Trapped-ion execution cost.
//!
//! Two ways of realizing the multiqubit gates are costed:
//!
//! * **Conventional**: every C_NOT^n with n ≥ 3 is decomposed into
//!   `2^n − 2` two-qubit light-shift gates and `2^n` one-qubit gates. Each
//!   two-qubit gate is the laser sequence `R C R C R C'`, i.e. two carrier
//!   π/2 pulses (A), one phase-fixing carrier pulse (A*), two red-sideband
//!   π pulses (B) and one red-sideband 2π pulse (B*). Only B and B* take
//!   time: `T = (N[B] + 2 N[B*]) T_B` with `T_B = π / (η ω_z)` when the
//!   carrier Rabi frequency is ω_z/2.
//! * **Straightforward**: a one-step C_PF^(n) costing `n + 2` addressed
//!   pulses and `T_CPF = π / (η Ω_n)` regardless of n, where
//!   `Ω_n = m · ω_z / 2`.
//!
//! The axial trap frequency follows from holding the Lamb-Dicke parameter
//! fixed: `η = k cosθ √(ħ / 2 n M ω_z)`.
//!
//! Summing the component counts of one conventional C_NOT^n gives
//! `7·2^n − 12` pulses, not the `8·2^n − 12` sometimes quoted for the same
//! decomposition; see [`cnot_pulse_check`].

use alloc::vec::Vec;

use crate::circuit::{GateInventory, GateKey};

/// Reduced Planck constant, J·s (CODATA 2018, exact).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Unified atomic mass unit, kg (CODATA 2018).
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;
/// ⁴⁰Ca atomic mass less one electron, in u.
pub const CA40_ION_MASS_U: f64 = 39.962_590_863 - 5.485_799_090_65e-4;
/// The ⁴⁰Ca⁺ S₁/₂ ↔ D₅/₂ qubit transition.
pub const CA40_QUBIT_WAVELENGTH_M: f64 = 729e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CostError {
    #[error("nonphysical trap configuration: {0}")]
    Config(&'static str),
    #[error("ion count must be at least 1")]
    NoIons,
    #[error("{0} cannot be realized on this backend")]
    UnsupportedGate(GateKey),
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TrapConfig {
    /// Lamb-Dicke parameter.
    pub eta: f64,
    /// Laser angle to the trap axis, degrees.
    pub theta_deg: f64,
    pub wavelength_m: f64,
    pub ion_mass_kg: f64,
    /// Ω_max on the last ion over Ω_max on the others.
    pub m_ratio: f64,
}

impl Default for TrapConfig {
    fn default() -> Self {
        TrapConfig {
            eta: 0.02,
            theta_deg: 30.0,
            wavelength_m: CA40_QUBIT_WAVELENGTH_M,
            ion_mass_kg: CA40_ION_MASS_U * ATOMIC_MASS_UNIT,
            m_ratio: 0.1,
        }
    }
}

impl TrapConfig {
    pub fn validate(&self) -> Result<(), CostError> {
        if !(self.eta > 0.0 && self.eta < 1.0) {
            return Err(CostError::Config("eta must lie in (0, 1)"));
        }
        if !(self.m_ratio > 0.0 && self.m_ratio <= 1.0) {
            return Err(CostError::Config("m_ratio must lie in (0, 1]"));
        }
        if !(self.wavelength_m > 0.0 && self.wavelength_m.is_finite()) {
            return Err(CostError::Config("wavelength must be positive"));
        }
        if !(self.ion_mass_kg > 0.0 && self.ion_mass_kg.is_finite()) {
            return Err(CostError::Config("ion mass must be positive"));
        }
        let c = libm::cos(self.theta_deg.to_radians());
        if c.is_nan() || c.abs() <= 1e-12 {
            return Err(CostError::Config("laser perpendicular to the trap axis"));
        }
        Ok(())
    }

    /// π / (η ω_z): red-sideband π pulse at carrier Rabi frequency ω_z/2.
    pub fn t_b(&self, omega_z: f64) -> f64 {
        core::f64::consts::PI / (self.eta * omega_z)
    }

    /// π / (η Ω_n) with Ω_n = m ω_z / 2.
    pub fn t_cpf(&self, omega_z: f64) -> f64 {
        core::f64::consts::PI / (self.eta * self.m_ratio * omega_z / 2.0)
    }
}

/// Axial angular frequency ω_z (rad/s) that gives `cfg.eta` for `n_ions`.
pub fn trap_frequency(cfg: &TrapConfig, n_ions: usize) -> Result<f64, CostError> {
    if n_ions == 0 {
        return Err(CostError::NoIons);
    }
    cfg.validate()?;
    let k = 2.0 * core::f64::consts::PI / cfg.wavelength_m;
    let c = libm::cos(cfg.theta_deg.to_radians());
    Ok(k * k * c * c * HBAR / (2.0 * n_ions as f64 * cfg.ion_mass_kg * cfg.eta * cfg.eta))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConventionalCounts {
    pub a_gates: u64,
    pub a_star_gates: u64,
    pub b_gates: u64,
    pub b_star_gates: u64,
    pub one_qubit_gates: u64,
}

impl ConventionalCounts {
    /// One two-qubit light-shift gate: 2 A, 1 A*, 2 B, 1 B*.
    pub const TWO_QUBIT: ConventionalCounts = ConventionalCounts {
        a_gates: 2,
        a_star_gates: 1,
        b_gates: 2,
        b_star_gates: 1,
        one_qubit_gates: 0,
    };

    /// Decomposed C_NOT^n, n ≥ 3.
    pub fn for_cnot(n: usize) -> Option<Self> {
        if !(3..63).contains(&n) {
            return None;
        }
        let two_qubit = (1u64 << n) - 2;
        Some(ConventionalCounts {
            a_gates: 2 * two_qubit,
            a_star_gates: two_qubit,
            b_gates: 2 * two_qubit,
            b_star_gates: two_qubit,
            one_qubit_gates: 1 << n,
        })
    }

    pub fn total_pulses(&self) -> u64 {
        self.a_gates + self.a_star_gates + self.b_gates + self.b_star_gates + self.one_qubit_gates
    }

    pub fn scaled(self, k: u64) -> Self {
        ConventionalCounts {
            a_gates: self.a_gates * k,
            a_star_gates: self.a_star_gates * k,
            b_gates: self.b_gates * k,
            b_star_gates: self.b_star_gates * k,
            one_qubit_gates: self.one_qubit_gates * k,
        }
    }
}

impl core::ops::Add for ConventionalCounts {
    type Output = ConventionalCounts;

    fn add(self, o: Self) -> Self {
        ConventionalCounts {
            a_gates: self.a_gates + o.a_gates,
            a_star_gates: self.a_star_gates + o.a_star_gates,
            b_gates: self.b_gates + o.b_gates,
            b_star_gates: self.b_star_gates + o.b_star_gates,
            one_qubit_gates: self.one_qubit_gates + o.one_qubit_gates,
        }
    }
}

/// Pulse census for the conventional backend. C_NOT and C_PF of the same
/// arity cost the same; arity-2 gates are realized directly.
pub fn conventional_counts(inv: &GateInventory) -> Result<ConventionalCounts, CostError> {
    let mut total = ConventionalCounts::default();
    for e in inv.entries() {
        let per_gate = match e.gate {
            GateKey::OneQubit => ConventionalCounts {
                one_qubit_gates: 1,
                ..Default::default()
            },
            GateKey::ControlledNot(2) | GateKey::PhaseFlip(2) => ConventionalCounts::TWO_QUBIT,
            GateKey::ControlledNot(n) | GateKey::PhaseFlip(n) => {
                ConventionalCounts::for_cnot(n).ok_or(CostError::UnsupportedGate(e.gate))?
            }
        };
        total = total + per_gate.scaled(e.count);
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Timing {
    /// T_B or T_CPF, seconds.
    pub gate_seconds: f64,
    pub total_seconds: f64,
}

/// `(N[B] + 2 N[B*]) T_B`; carrier pulses take no time.
pub fn conventional_time(counts: &ConventionalCounts, omega_z: f64, cfg: &TrapConfig) -> Timing {
    let t_b = cfg.t_b(omega_z);
    Timing {
        gate_seconds: t_b,
        total_seconds: (counts.b_gates + 2 * counts.b_star_gates) as f64 * t_b,
    }
}

/// Σ (arity + 2) over multiqubit gates.
pub fn straightforward_pulses(inv: &GateInventory) -> u64 {
    inv.entries()
        .filter(|e| e.gate != GateKey::OneQubit)
        .map(|e| (e.gate.arity() as u64 + 2) * e.count)
        .sum()
}

/// `(Σ N[C_PF]) T_CPF`; single-qubit gates take no time.
pub fn straightforward_time(inv: &GateInventory, omega_z: f64, cfg: &TrapConfig) -> Timing {
    let t = cfg.t_cpf(omega_z);
    Timing {
        gate_seconds: t,
        total_seconds: inv.multiqubit_total() as f64 * t,
    }
}

/// Pulse total of one conventional C_NOT^n two ways.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CnotPulseCheck {
    pub arity: usize,
    /// A + A* + B + B* + one-qubit, i.e. 7·2^n − 12.
    pub from_components: u64,
    /// The aggregate 8·2^n − 12.
    pub quoted_aggregate: u64,
}

impl CnotPulseCheck {
    pub fn consistent(&self) -> bool {
        self.from_components == self.quoted_aggregate
    }
}

pub fn cnot_pulse_check(arity: usize) -> Option<CnotPulseCheck> {
    let counts = ConventionalCounts::for_cnot(arity)?;
    Some(CnotPulseCheck {
        arity,
        from_components: counts.total_pulses(),
        quoted_aggregate: 8 * (1u64 << arity) - 12,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Backend {
    Conventional,
    Straightforward,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Conventional => "conventional",
            Backend::Straightforward => "straightforward",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum PulseCounts {
    Conventional(ConventionalCounts),
    Straightforward { pulses: u64, cpf_gates: u64 },
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CostReport {
    pub backend: Backend,
    pub omega_z_rad_per_s: f64,
    pub omega_z_over_2pi_hz: f64,
    pub pulses: PulseCounts,
    /// T_B (conventional) or T_CPF (straightforward).
    pub gate_seconds: f64,
    pub total_seconds: f64,
    /// Pulse-total cross-check for each decomposed arity in the inventory.
    pub pulse_checks: Vec<CnotPulseCheck>,
}

pub fn cost_report(
    backend: Backend,
    inv: &GateInventory,
    omega_z: f64,
    cfg: &TrapConfig,
) -> Result<CostReport, CostError> {
    cfg.validate()?;
    let hz = omega_z / (2.0 * core::f64::consts::PI);
    let (pulses, timing, pulse_checks) = match backend {
        Backend::Conventional => {
            let counts = conventional_counts(inv)?;
            let checks = inv
                .entries()
                .filter_map(|e| cnot_pulse_check(e.gate.arity()))
                .collect();
            (
                PulseCounts::Conventional(counts),
                conventional_time(&counts, omega_z, cfg),
                checks,
            )
        }
        Backend::Straightforward => (
            PulseCounts::Straightforward {
                pulses: straightforward_pulses(inv),
                cpf_gates: inv.multiqubit_total(),
            },
            straightforward_time(inv, omega_z, cfg),
            Vec::new(),
        ),
    };
    Ok(CostReport {
        backend,
        omega_z_rad_per_s: omega_z,
        omega_z_over_2pi_hz: hz,
        pulses,
        gate_seconds: timing.gate_seconds,
        total_seconds: timing.total_seconds,
        pulse_checks,
    })
}

/// One row of the reference cost table: ion count, printed trap frequency
/// and C_PF counts for arities 2 to 5.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ReferenceCircuit {
    pub label: &'static str,
    pub n_ions: usize,
    pub printed_trap_mhz: f64,
    pub cpf_columns: [u64; 4],
}

pub const REFERENCE_CIRCUITS: [ReferenceCircuit; 3] = [
    ReferenceCircuit {
        label: "Circuit I",
        n_ions: 6,
        printed_trap_mhz: 2.92,
        cpf_columns: [1, 5, 2, 0],
    },
    ReferenceCircuit {
        label: "Circuit II",
        n_ions: 7,
        printed_trap_mhz: 2.50,
        cpf_columns: [1, 4, 3, 0],
    },
    ReferenceCircuit {
        label: "Circuit III",
        n_ions: 9,
        printed_trap_mhz: 1.94,
        cpf_columns: [1, 8, 1, 2],
    },
];

/// Where the trap frequency used for timing comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum FrequencySource {
    /// The rounded value printed in the reference table.
    #[default]
    Printed,
    /// [`trap_frequency`] evaluated for the row's ion count.
    Model,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TableRow {
    pub circuit: ReferenceCircuit,
    pub inventory: GateInventory,
    /// Lamb-Dicke model frequency, ω_z/2π in Hz.
    pub model_trap_hz: f64,
    pub frequency_source: FrequencySource,
    pub conventional: CostReport,
    pub straightforward: CostReport,
}

pub fn table1_report(cfg: &TrapConfig) -> Result<Vec<TableRow>, CostError> {
    table1_report_with(cfg, FrequencySource::Printed)
}

pub fn table1_report_with(
    cfg: &TrapConfig,
    source: FrequencySource,
) -> Result<Vec<TableRow>, CostError> {
    REFERENCE_CIRCUITS
        .iter()
        .map(|rc| {
            let inventory = GateInventory::from_phase_flip_columns(&rc.cpf_columns);
            let model = trap_frequency(cfg, rc.n_ions)?;
            let omega_z = match source {
                FrequencySource::Printed => 2.0 * core::f64::consts::PI * rc.printed_trap_mhz * 1e6,
                FrequencySource::Model => model,
            };
            Ok(TableRow {
                circuit: *rc,
                model_trap_hz: model / (2.0 * core::f64::consts::PI),
                frequency_source: source,
                conventional: cost_report(Backend::Conventional, &inventory, omega_z, cfg)?,
                straightforward: cost_report(Backend::Straightforward, &inventory, omega_z, cfg)?,
                inventory,
            })
        })
        .collect()
}
