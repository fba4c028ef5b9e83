//! Detectable NMR observables for one- and two-pulse experiments.
//!
//! Single-pulse observables are available in closed form for both initial
//! states. Two-pulse observables are computed by propagating the 2×2 density
//! matrix; the closed forms known for special parameter choices
//! ([`two_pulse_example_formula`], [`fixed_special_formula`]) are kept as independent
//! regression formulas.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scenario::PulseParam;
use crate::spin::{pulse_rotation, superposition_x_state, thermal_state, DensityMatrix, Magnetization};
use std::f64::consts::{FRAC_PI_2, PI};

/// Quantity read out by the receiver. `M_z` is not detectable and so is not
/// offered as a gate output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ObservableKind {
    Mx,
    My,
    Mxy,
}

impl ObservableKind {
    pub const ALL: [ObservableKind; 3] = [ObservableKind::Mx, ObservableKind::My, ObservableKind::Mxy];

    pub fn select(self, m: &Magnetization) -> f64 {
        match self {
            ObservableKind::Mx => m.mx,
            ObservableKind::My => m.my,
            ObservableKind::Mxy => m.mxy,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ObservableKind::Mx => "Mx",
            ObservableKind::My => "My",
            ObservableKind::Mxy => "Mxy",
        }
    }
}

impl fmt::Display for ObservableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ObservableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mx" => Ok(ObservableKind::Mx),
            "my" => Ok(ObservableKind::My),
            "mxy" => Ok(ObservableKind::Mxy),
            other => Err(Error::Config(format!(
                "unknown observable '{other}' (expected mx, my or mxy)"
            ))),
        }
    }
}

/// Prepared state the pulse sequence starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InitialState {
    /// Thermal equilibrium `ρ_z^eq`, polarized along +z.
    ThermalZ,
    /// Transverse superposition `ρ_x`, polarized along +x.
    SuperpositionX,
}

impl InitialState {
    pub fn density_matrix(self, lambda_b: f64) -> Result<DensityMatrix> {
        match self {
            InitialState::ThermalZ => thermal_state(lambda_b),
            InitialState::SuperpositionX => superposition_x_state(lambda_b),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InitialState::ThermalZ => "z",
            InitialState::SuperpositionX => "x",
        }
    }
}

impl fmt::Display for InitialState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InitialState::ThermalZ => "thermal-z",
            InitialState::SuperpositionX => "superposition-x",
        })
    }
}

impl FromStr for InitialState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "z" | "thermal" | "thermal-z" | "thermalz" => Ok(InitialState::ThermalZ),
            "x" | "superposition" | "superposition-x" | "superpositionx" => {
                Ok(InitialState::SuperpositionX)
            }
            other => Err(Error::Config(format!(
                "unknown initial state '{other}' (expected z or x)"
            ))),
        }
    }
}

/// `(λ_B/4)(sin φ sin β, −cos φ sin β, cos β)` after one pulse on `ρ_z^eq`.
pub fn single_pulse_from_z(phi_p: f64, beta: f64, lambda_b: f64) -> Magnetization {
    let scale = lambda_b / 4.0;
    let (sp, cp) = phi_p.sin_cos();
    let (sb, cb) = beta.sin_cos();
    Magnetization {
        mx: scale * sp * sb,
        my: -scale * cp * sb,
        mz: scale * cb,
        mxy: scale.abs() * sb.abs(),
    }
}

/// `(λ_B/4)(1 − 2 sin²φ sin²(β/2), sin 2φ sin²(β/2), −sin φ sin β)` after one
/// pulse on `ρ_x`.
pub fn single_pulse_from_x(phi_p: f64, beta: f64, lambda_b: f64) -> Magnetization {
    let scale = lambda_b / 4.0;
    let sp = phi_p.sin();
    let half = (beta / 2.0).sin();
    let sb = beta.sin();
    Magnetization {
        mx: scale * (1.0 - 2.0 * sp * sp * half * half),
        my: scale * (2.0 * phi_p).sin() * half * half,
        mz: -scale * sp * sb,
        mxy: scale.abs() * (1.0 - sp * sp * sb * sb).max(0.0).sqrt(),
    }
}

/// Magnetization after `R_{φ2}(β2) R_{φ1}(β1)` (pulse 1 first) by numeric
/// propagation of the density matrix.
pub fn two_pulse_magnetization(
    phi_p2: f64,
    beta2: f64,
    phi_p1: f64,
    beta1: f64,
    lambda_b: f64,
    initial: InitialState,
) -> Result<Magnetization> {
    for (name, v) in [
        ("phi2", phi_p2),
        ("beta2", beta2),
        ("phi1", phi_p1),
        ("beta1", beta1),
    ] {
        crate::error::ensure_finite(name, v)?;
    }
    let rho = initial.density_matrix(lambda_b)?;
    let u = pulse_rotation(phi_p2, beta2) * pulse_rotation(phi_p1, beta1);
    Ok(rho.conjugated(&u).readout_unchecked())
}

/// One detectable quantity of the two-pulse experiment.
#[allow(clippy::too_many_arguments)]
pub fn two_pulse_observable(
    phi_p2: f64,
    beta2: f64,
    phi_p1: f64,
    beta1: f64,
    lambda_b: f64,
    kind: ObservableKind,
    initial: InitialState,
) -> Result<f64> {
    two_pulse_magnetization(phi_p2, beta2, phi_p1, beta1, lambda_b, initial).map(|m| kind.select(&m))
}

/// The six two-pulse `M_x` examples starting from `ρ_x`, each with two
/// parameters fixed at `π/2` and the other two free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwoPulseExample {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl TwoPulseExample {
    pub const ALL: [TwoPulseExample; 6] = [
        TwoPulseExample::A,
        TwoPulseExample::B,
        TwoPulseExample::C,
        TwoPulseExample::D,
        TwoPulseExample::E,
        TwoPulseExample::F,
    ];

    /// Parameters bound to the free variables `(A, B)`; the other two are
    /// fixed at `π/2`.
    pub fn inputs(self) -> (PulseParam, PulseParam) {
        use PulseParam::*;
        match self {
            TwoPulseExample::A => (Phi2, Phi1),
            TwoPulseExample::B => (Phi2, Beta1),
            TwoPulseExample::C => (Beta2, Beta1),
            TwoPulseExample::D => (Beta2, Phi1),
            TwoPulseExample::E => (Phi2, Beta2),
            TwoPulseExample::F => (Phi1, Beta1),
        }
    }

    pub fn label(self) -> char {
        match self {
            TwoPulseExample::A => 'a',
            TwoPulseExample::B => 'b',
            TwoPulseExample::C => 'c',
            TwoPulseExample::D => 'd',
            TwoPulseExample::E => 'e',
            TwoPulseExample::F => 'f',
        }
    }
}

impl FromStr for TwoPulseExample {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a" => Ok(TwoPulseExample::A),
            "b" => Ok(TwoPulseExample::B),
            "c" => Ok(TwoPulseExample::C),
            "d" => Ok(TwoPulseExample::D),
            "e" => Ok(TwoPulseExample::E),
            "f" => Ok(TwoPulseExample::F),
            other => Err(Error::Domain(format!("unknown two-pulse example row '{other}'"))),
        }
    }
}

/// Closed-form `M_x` of a two-pulse example row, with its free variables
/// bound to `(var_a, var_b)` in the order given by [`TwoPulseExample::inputs`].
pub fn two_pulse_example_formula(row: TwoPulseExample, var_a: f64, var_b: f64, lambda_b: f64) -> f64 {
    let q = lambda_b / 4.0;
    let (a, b) = (var_a, var_b);
    match row {
        TwoPulseExample::A => q * (a.cos() * b.cos() * (a - b).cos() - a.sin() * b.sin()),
        TwoPulseExample::B => q * (a.cos().powi(2) * b.cos() - a.sin() * b.sin()),
        TwoPulseExample::C => q * (a + b).cos(),
        // same function as row B with the phase variable second
        TwoPulseExample::D => q * (b.cos().powi(2) * a.cos() - b.sin() * a.sin()),
        TwoPulseExample::E | TwoPulseExample::F => -q * a.sin() * b.sin(),
    }
}

/// Two-pulse settings with unequal fixed values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixedCase {
    /// `β1 = π/2`, `β2 = π`; free `(φ_p2, φ_p1)`.
    BetaHalfPiBetaPi,
    /// `φ_p1 = π/2`, `β2 = π`; free `(φ_p2, β1)`.
    PhiHalfPiBetaPi,
}

impl FixedCase {
    pub const ALL: [FixedCase; 2] = [FixedCase::BetaHalfPiBetaPi, FixedCase::PhiHalfPiBetaPi];

    pub fn inputs(self) -> (PulseParam, PulseParam) {
        match self {
            FixedCase::BetaHalfPiBetaPi => (PulseParam::Phi2, PulseParam::Phi1),
            FixedCase::PhiHalfPiBetaPi => (PulseParam::Phi2, PulseParam::Beta1),
        }
    }

    pub fn fixed(self) -> [(PulseParam, f64); 2] {
        match self {
            FixedCase::BetaHalfPiBetaPi => [(PulseParam::Beta1, FRAC_PI_2), (PulseParam::Beta2, PI)],
            FixedCase::PhiHalfPiBetaPi => [(PulseParam::Phi1, FRAC_PI_2), (PulseParam::Beta2, PI)],
        }
    }
}

impl FromStr for FixedCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" | "beta-half-pi-beta-pi" => Ok(FixedCase::BetaHalfPiBetaPi),
            "2" | "phi-half-pi-beta-pi" => Ok(FixedCase::PhiHalfPiBetaPi),
            other => Err(Error::Domain(format!("unknown fixed-parameter case '{other}'"))),
        }
    }
}

/// Closed-form `M_x` (from `ρ_x`) for the unequal fixed-parameter cases.
pub fn fixed_special_formula(case: FixedCase, var_a: f64, var_b: f64, lambda_b: f64) -> f64 {
    let q = lambda_b / 4.0;
    match case {
        FixedCase::BetaHalfPiBetaPi => q * (2.0 * var_a - var_b).cos() * var_b.cos(),
        FixedCase::PhiHalfPiBetaPi => q * (2.0 * var_a).cos() * var_b.cos(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    const TOL: f64 = 1e-12;

    #[test]
    fn single_pulse_from_z_examples() {
        assert!((single_pulse_from_z(FRAC_PI_2, FRAC_PI_2, 1.0).mx - 0.25).abs() < TOL);
        assert!((single_pulse_from_z(FRAC_PI_2, -FRAC_PI_2, 1.0).mx + 0.25).abs() < TOL);
        for phi in [-2.0, 0.0, 1.0, 7.0] {
            let m = single_pulse_from_z(phi, 0.0, 0.6);
            assert!(m.mx.abs() < TOL && m.my.abs() < TOL && m.mxy.abs() < TOL);
            assert!((m.mz - 0.15).abs() < TOL);
        }
    }

    #[test]
    fn single_pulse_from_x_examples() {
        for beta in [-4.0, 0.0, 1.0, PI, 11.0] {
            assert!((single_pulse_from_x(0.0, beta, 1.0).mx - 0.25).abs() < TOL);
        }
        assert!((single_pulse_from_x(FRAC_PI_2, PI, 1.0).mx + 0.25).abs() < TOL);
        assert!((single_pulse_from_x(FRAC_PI_2, FRAC_PI_2, 1.0).mz + 0.25).abs() < TOL);
    }

    #[test]
    fn two_pulse_examples() {
        // A first pulse R_{π/2}(−π/2) returns ρ_x to ρ_z^eq.
        for (phi2, beta2) in [(0.3, 1.2), (FRAC_PI_2, FRAC_PI_2), (-2.0, 5.0)] {
            let v = two_pulse_observable(
                phi2,
                beta2,
                FRAC_PI_2,
                -FRAC_PI_2,
                1.0,
                ObservableKind::Mx,
                InitialState::SuperpositionX,
            )
            .unwrap();
            assert!((v - single_pulse_from_z(phi2, beta2, 1.0).mx).abs() < TOL);
        }
        let v = two_pulse_observable(
            FRAC_PI_2,
            FRAC_PI_2,
            FRAC_PI_2,
            FRAC_PI_2,
            1.0,
            ObservableKind::Mx,
            InitialState::SuperpositionX,
        )
        .unwrap();
        assert!((v + 0.25).abs() < TOL);
        let v = two_pulse_observable(1.0, 0.0, -3.0, 0.0, 0.7, ObservableKind::Mx, InitialState::SuperpositionX)
            .unwrap();
        assert!((v - 0.175).abs() < TOL);
        assert!(two_pulse_observable(f64::NAN, 0.0, 0.0, 0.0, 1.0, ObservableKind::Mx, InitialState::ThermalZ).is_err());
    }

    #[test]
    fn two_pulse_example_rows() {
        assert!((two_pulse_example_formula(TwoPulseExample::C, FRAC_PI_2, FRAC_PI_2, 1.0) + 0.25).abs() < TOL);
        assert!((two_pulse_example_formula(TwoPulseExample::E, FRAC_PI_2, FRAC_PI_2, 1.0) + 0.25).abs() < TOL);
        for (a, b) in [(0.1, 0.2), (2.0, -1.0), (5.5, 3.3)] {
            let f = two_pulse_example_formula(TwoPulseExample::F, a, b, 0.8);
            assert!((f + single_pulse_from_z(a, b, 0.8).mx).abs() < TOL);
        }
        assert!("g".parse::<TwoPulseExample>().is_err());
        assert_eq!("C".parse::<TwoPulseExample>().unwrap(), TwoPulseExample::C);
    }

    #[test]
    fn fixed_case_examples() {
        let v = fixed_special_formula(FixedCase::PhiHalfPiBetaPi, 0.0, 0.0, 1.0);
        assert!((v - 0.25).abs() < TOL);
        for beta1 in [-3.0, 0.0, 0.4, 2.0] {
            assert!(fixed_special_formula(FixedCase::PhiHalfPiBetaPi, FRAC_PI_4, beta1, 1.0).abs() < TOL);
        }
        for phi2 in [-3.0, 0.0, 0.4, 2.0] {
            assert!(fixed_special_formula(FixedCase::BetaHalfPiBetaPi, phi2, FRAC_PI_2, 1.0).abs() < TOL);
        }
        assert!("3".parse::<FixedCase>().is_err());
    }

    #[test]
    fn parse_kinds_and_states() {
        assert_eq!("MXY".parse::<ObservableKind>().unwrap(), ObservableKind::Mxy);
        assert!("mz".parse::<ObservableKind>().is_err());
        assert_eq!("x".parse::<InitialState>().unwrap(), InitialState::SuperpositionX);
        assert!("y".parse::<InitialState>().is_err());
    }
}
