//! Experiment scenarios: an initial state, one or two pulses, a detected
//! observable and a choice of which two pulse parameters act as the logic
//! inputs `A` and `B`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{ensure_finite, Error, Result};
use crate::grid::{GridSpec, Surface};
use crate::observables::{
    single_pulse_from_x, single_pulse_from_z, two_pulse_magnetization, FixedCase, InitialState,
    ObservableKind, TwoPulseExample,
};
use crate::spin::Magnetization;
use std::f64::consts::FRAC_PI_2;

/// One of the four controllable pulse parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PulseParam {
    Phi1,
    Beta1,
    Phi2,
    Beta2,
}

impl PulseParam {
    pub const ALL: [PulseParam; 4] = [
        PulseParam::Phi1,
        PulseParam::Beta1,
        PulseParam::Phi2,
        PulseParam::Beta2,
    ];

    fn index(self) -> usize {
        match self {
            PulseParam::Phi1 => 0,
            PulseParam::Beta1 => 1,
            PulseParam::Phi2 => 2,
            PulseParam::Beta2 => 3,
        }
    }

    pub fn is_phase(self) -> bool {
        matches!(self, PulseParam::Phi1 | PulseParam::Phi2)
    }

    pub fn pulse_index(self) -> usize {
        match self {
            PulseParam::Phi1 | PulseParam::Beta1 => 1,
            PulseParam::Phi2 | PulseParam::Beta2 => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PulseParam::Phi1 => "phi1",
            PulseParam::Beta1 => "beta1",
            PulseParam::Phi2 => "phi2",
            PulseParam::Beta2 => "beta2",
        }
    }

    /// Default sampling axis: phases over `[0, 4π)`, flip angles over
    /// `[−2π, 2π)`, 101 points each.
    pub fn default_axis(self) -> GridSpec {
        let (lo, hi) = if self.is_phase() {
            (0.0, 4.0 * PI)
        } else {
            (-2.0 * PI, 2.0 * PI)
        };
        GridSpec::half_open(lo, hi, 101).expect("static grid is valid")
    }
}

impl fmt::Display for PulseParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PulseParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "phi" | "phi1" | "phi_p1" | "phip1" => Ok(PulseParam::Phi1),
            "beta" | "beta1" => Ok(PulseParam::Beta1),
            "phi2" | "phi_p2" | "phip2" => Ok(PulseParam::Phi2),
            "beta2" => Ok(PulseParam::Beta2),
            other => Err(Error::Config(format!(
                "unknown pulse parameter '{other}' (expected phi1, beta1, phi2 or beta2)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PulseCount {
    One,
    Two,
}

impl PulseCount {
    pub fn get(self) -> usize {
        match self {
            PulseCount::One => 1,
            PulseCount::Two => 2,
        }
    }
}

impl TryFrom<usize> for PulseCount {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        match n {
            1 => Ok(PulseCount::One),
            2 => Ok(PulseCount::Two),
            _ => Err(Error::Config(format!("pulse count must be 1 or 2, got {n}"))),
        }
    }
}

/// A fully bound experiment: evaluating it at `(a, b)` gives one observable
/// value.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    initial: InitialState,
    pulses: PulseCount,
    observable: ObservableKind,
    inputs: (PulseParam, PulseParam),
    fixed: [Option<f64>; 4],
    lambda_b: f64,
}

impl Scenario {
    /// Validate a binding. Every parameter of the pulse sequence is either an
    /// input or has a fixed value, never both.
    pub fn new(
        initial: InitialState,
        pulses: PulseCount,
        observable: ObservableKind,
        inputs: (PulseParam, PulseParam),
        fixed: &[(PulseParam, f64)],
        lambda_b: f64,
    ) -> Result<Self> {
        ensure_finite("lambda_B", lambda_b).map_err(|e| Error::Config(e.to_string()))?;
        let (a, b) = inputs;
        if a == b {
            return Err(Error::Config(format!("inputs A and B are both bound to {a}")));
        }
        let exists = |p: PulseParam| p.pulse_index() <= pulses.get();
        for p in [a, b] {
            if !exists(p) {
                return Err(Error::Config(format!(
                    "{p} does not exist in a {}-pulse sequence",
                    pulses.get()
                )));
            }
        }
        let mut table = [None; 4];
        for &(p, v) in fixed {
            if !exists(p) {
                return Err(Error::Config(format!(
                    "cannot fix {p} in a {}-pulse sequence",
                    pulses.get()
                )));
            }
            if p == a || p == b {
                return Err(Error::Config(format!("{p} is bound as an input and also fixed")));
            }
            if !v.is_finite() {
                return Err(Error::Config(format!("fixed value of {p} is not finite")));
            }
            if table[p.index()].replace(v).is_some() {
                return Err(Error::Config(format!("{p} is fixed more than once")));
            }
        }
        for p in PulseParam::ALL.into_iter().filter(|&p| exists(p)) {
            if p != a && p != b && table[p.index()].is_none() {
                return Err(Error::Config(format!("{p} is neither an input nor fixed")));
            }
        }
        Ok(Scenario {
            initial,
            pulses,
            observable,
            inputs,
            fixed: table,
            lambda_b,
        })
    }

    /// One pulse with `A = φ_p`, `B = β` and `λ_B = 1`.
    pub fn single_pulse(initial: InitialState, observable: ObservableKind) -> Self {
        Scenario::new(
            initial,
            PulseCount::One,
            observable,
            (PulseParam::Phi1, PulseParam::Beta1),
            &[],
            1.0,
        )
        .expect("single-pulse binding is valid")
    }

    /// Two-pulse `M_x` experiment from `ρ_x` with the example row's free
    /// parameters as inputs and the rest fixed at `π/2`.
    pub fn two_pulse_example(row: TwoPulseExample, lambda_b: f64) -> Result<Self> {
        let inputs = row.inputs();
        let fixed: Vec<_> = PulseParam::ALL
            .into_iter()
            .filter(|&p| p != inputs.0 && p != inputs.1)
            .map(|p| (p, FRAC_PI_2))
            .collect();
        Scenario::new(
            InitialState::SuperpositionX,
            PulseCount::Two,
            ObservableKind::Mx,
            inputs,
            &fixed,
            lambda_b,
        )
    }

    pub fn fixed_case(case: FixedCase, lambda_b: f64) -> Result<Self> {
        Scenario::new(
            InitialState::SuperpositionX,
            PulseCount::Two,
            ObservableKind::Mx,
            case.inputs(),
            &case.fixed(),
            lambda_b,
        )
    }

    pub fn with_observable(mut self, observable: ObservableKind) -> Self {
        self.observable = observable;
        self
    }

    pub fn with_lambda(mut self, lambda_b: f64) -> Result<Self> {
        ensure_finite("lambda_B", lambda_b).map_err(|e| Error::Config(e.to_string()))?;
        self.lambda_b = lambda_b;
        Ok(self)
    }

    /// The same experiment with the roles of `A` and `B` exchanged.
    pub fn swapped_inputs(&self) -> Self {
        let mut s = self.clone();
        s.inputs = (self.inputs.1, self.inputs.0);
        s
    }

    pub fn initial(&self) -> InitialState {
        self.initial
    }

    pub fn pulses(&self) -> PulseCount {
        self.pulses
    }

    pub fn observable(&self) -> ObservableKind {
        self.observable
    }

    pub fn inputs(&self) -> (PulseParam, PulseParam) {
        self.inputs
    }

    pub fn lambda_b(&self) -> f64 {
        self.lambda_b
    }

    /// Fixed parameters in canonical order.
    pub fn fixed(&self) -> Vec<(PulseParam, f64)> {
        PulseParam::ALL
            .into_iter()
            .filter_map(|p| self.fixed[p.index()].map(|v| (p, v)))
            .collect()
    }

    /// Column label for a parameter: `phi`/`beta` for single-pulse scenarios.
    pub fn param_label(&self, p: PulseParam) -> &'static str {
        match (self.pulses, p) {
            (PulseCount::One, PulseParam::Phi1) => "phi",
            (PulseCount::One, PulseParam::Beta1) => "beta",
            _ => p.name(),
        }
    }

    fn bind(&self, a: f64, b: f64) -> Result<[f64; 4]> {
        ensure_finite("input A", a)?;
        ensure_finite("input B", b)?;
        let mut params = [0.0; 4];
        for p in PulseParam::ALL {
            params[p.index()] = if p == self.inputs.0 {
                a
            } else if p == self.inputs.1 {
                b
            } else {
                self.fixed[p.index()].unwrap_or(0.0)
            };
        }
        Ok(params)
    }

    /// Full magnetization with input `A = a`, `B = b`.
    pub fn magnetization(&self, a: f64, b: f64) -> Result<Magnetization> {
        let [phi1, beta1, phi2, beta2] = self.bind(a, b)?;
        match self.pulses {
            PulseCount::One => Ok(match self.initial {
                InitialState::ThermalZ => single_pulse_from_z(phi1, beta1, self.lambda_b),
                InitialState::SuperpositionX => single_pulse_from_x(phi1, beta1, self.lambda_b),
            }),
            PulseCount::Two => {
                two_pulse_magnetization(phi2, beta2, phi1, beta1, self.lambda_b, self.initial)
            }
        }
    }

    /// The scenario's observable with `A = a`, `B = b`.
    pub fn evaluate(&self, a: f64, b: f64) -> Result<f64> {
        self.magnetization(a, b).map(|m| self.observable.select(&m))
    }

    /// Default sampling axes for the two inputs.
    pub fn default_axes(&self) -> (GridSpec, GridSpec) {
        (self.inputs.0.default_axis(), self.inputs.1.default_axis())
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "initial={} pulses={} observable={} A={} B={}",
            self.initial.name(),
            self.pulses.get(),
            self.observable,
            self.param_label(self.inputs.0),
            self.param_label(self.inputs.1)
        )?;
        for (p, v) in self.fixed() {
            write!(f, " {}={}", self.param_label(p), v)?;
        }
        write!(f, " lambda={}", self.lambda_b)
    }
}

/// Observable value of `s` at input values `(a, b)`.
pub fn evaluate_scenario(s: &Scenario, a: f64, b: f64) -> Result<f64> {
    s.evaluate(a, b)
}

/// Sample the full magnetization over `rows × cols` (first input outermost).
pub fn magnetization_grid(s: &Scenario, rows: &GridSpec, cols: &GridSpec) -> Result<Surface<Magnetization>> {
    let row_vals = rows.values();
    let col_vals = cols.values();
    let values: Vec<Vec<Magnetization>> = row_vals
        .par_iter()
        .map(|&a| col_vals.iter().map(|&b| s.magnetization(a, b)).collect())
        .collect::<Result<_>>()?;
    Ok(Surface {
        rows: row_vals,
        cols: col_vals,
        values: values.into_iter().flatten().collect(),
    })
}

/// Sample the scenario's observable over `rows × cols`.
pub fn observable_grid(s: &Scenario, rows: &GridSpec, cols: &GridSpec) -> Result<Surface<f64>> {
    let m = magnetization_grid(s, rows, cols)?;
    let kind = s.observable();
    Ok(Surface {
        rows: m.rows,
        cols: m.cols,
        values: m.values.iter().map(|v| kind.select(v)).collect(),
    })
}
