//! Recompute the reference gate realizations and closed forms, and check the
//! gate-class capability of each experiment family.
//!
//! Every check produces a [`Check`] entry; a [`Report`] passes only if all of
//! its entries pass.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use crate::error::Result;
use crate::gates::{GateClass, TruthTable};
use crate::grid::GridSpec;
use crate::observables::{
    fixed_special_formula, single_pulse_from_z, two_pulse_example_formula, FixedCase, InitialState,
    ObservableKind, TwoPulseExample,
};
use crate::scenario::{observable_grid, Scenario};
use crate::synthesis::{achievable_classes_with, assignment_realizes, GateAssignment, LevelMap, SynthesisOptions};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    fn push(&mut self, id: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            id: id.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.detail)?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    /// Polarization used when recomputing the reference values, which were
    /// tabulated for `λ_B = 1`.
    pub lambda_b: f64,
    /// Maximum allowed deviation for value checks.
    pub tolerance: f64,
    /// Samples per axis for closed-form/propagation comparisons.
    pub samples: usize,
    /// Candidate grid for the capability checks.
    pub claims_grid: GridSpec,
    pub synthesis: SynthesisOptions,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            lambda_b: 1.0,
            tolerance: 1e-10,
            samples: 101,
            claims_grid: GridSpec::pi_multiples(0, 16, 4).expect("static grid is valid"),
            synthesis: SynthesisOptions::default(),
        }
    }
}

/// A reference single-pulse `M_x` realization from thermal equilibrium:
/// `A` is the pulse phase, `B` the flip angle.
#[derive(Debug, Clone, PartialEq)]
pub struct GateExample {
    pub class: GateClass,
    pub gate: TruthTable,
    pub phase_values: (f64, f64),
    pub flip_values: (f64, f64),
    /// `M_x` (for `λ_B = 1`) at `(0,0), (0,1), (1,0), (1,1)`.
    pub outputs: [f64; 4],
    /// `(level, logic value)` pairs.
    pub levels: &'static [(f64, bool)],
}

impl GateExample {
    pub fn assignment(&self, tolerance: f64) -> GateAssignment {
        let levels = match self.levels {
            [(l, o)] => LevelMap::constant(*l, *o),
            [(l0, false), (l1, true)] => LevelMap::binary(*l0, *l1, tolerance).expect("distinct levels"),
            _ => unreachable!("reference level maps are constant or binary"),
        };
        GateAssignment {
            a_values: self.phase_values,
            b_values: self.flip_values,
            levels,
            tolerance,
        }
    }
}

/// One realization per gate class.
pub fn reference_gate_examples() -> [GateExample; 4] {
    let h = FRAC_PI_2;
    [
        GateExample {
            class: GateClass::Class0,
            gate: TruthTable::T,
            phase_values: (h, 5.0 * h),
            flip_values: (h, 5.0 * h),
            outputs: [0.25, 0.25, 0.25, 0.25],
            levels: &[(0.25, true)],
        },
        GateExample {
            class: GateClass::Class1,
            gate: TruthTable::B,
            phase_values: (h, 5.0 * h),
            flip_values: (-h, h),
            outputs: [-0.25, 0.25, -0.25, 0.25],
            levels: &[(-0.25, false), (0.25, true)],
        },
        GateExample {
            class: GateClass::Class2,
            gate: TruthTable::NAND,
            phase_values: (PI, 3.0 * h),
            flip_values: (0.0, h),
            outputs: [0.0, 0.0, 0.0, -0.25],
            levels: &[(-0.25, false), (0.0, true)],
        },
        GateExample {
            class: GateClass::Class3,
            gate: TruthTable::XOR,
            phase_values: (h, 3.0 * h),
            flip_values: (-h, h),
            outputs: [-0.25, 0.25, 0.25, -0.25],
            levels: &[(-0.25, false), (0.25, true)],
        },
    ]
}

/// Default sampling axes of the free variables of a binding: phases over
/// `[0, 4π)`, flip angles over `[−2π, 2π)`.
fn sample_axes(s: &Scenario, samples: usize) -> Result<(GridSpec, GridSpec)> {
    let axis = |p: crate::scenario::PulseParam| {
        if p.is_phase() {
            GridSpec::half_open(0.0, 4.0 * PI, samples)
        } else {
            GridSpec::half_open(-2.0 * PI, 2.0 * PI, samples)
        }
    };
    let (a, b) = s.inputs();
    Ok((axis(a)?, axis(b)?))
}

/// Largest deviation between a closed form and numeric propagation over the
/// sampled plane of `s`.
fn max_deviation(s: &Scenario, samples: usize, formula: impl Fn(f64, f64) -> f64) -> Result<f64> {
    let (rows, cols) = sample_axes(s, samples)?;
    let surface = observable_grid(s, &rows, &cols)?;
    Ok(surface
        .iter()
        .map(|(a, b, v)| (formula(a, b) - v).abs())
        .fold(0.0, f64::max))
}

/// Recompute the reference gate cells and compare the two-pulse closed forms
/// with density-matrix propagation.
pub fn verify_reference_tables(cfg: &VerifyConfig) -> Result<Report> {
    let mut report = Report::default();
    let tol = cfg.tolerance;
    let lambda = cfg.lambda_b;
    let single = Scenario::single_pulse(InitialState::ThermalZ, ObservableKind::Mx).with_lambda(lambda)?;

    for ex in reference_gate_examples() {
        let asg = ex.assignment(cfg.synthesis.tolerance);
        let corners = asg.corner_values(&single)?;
        for (k, (&got, &want)) in corners.iter().zip(&ex.outputs).enumerate() {
            let cell = format!("{}{}", k >> 1, k & 1);
            report.push(
                format!("gate-example/{}/{}", ex.class.index(), cell),
                (got - want).abs() <= tol,
                format!("Mx = {got:.12} (expected {want})"),
            );
        }
        report.push(
            format!("gate-example/{}/realizes", ex.class.index()),
            assignment_realizes(&single, &asg, ex.gate),
            format!("assignment realizes {}", ex.gate),
        );
    }

    for row in TwoPulseExample::ALL {
        let s = Scenario::two_pulse_example(row, lambda)?;
        let dev = max_deviation(&s, cfg.samples, |a, b| two_pulse_example_formula(row, a, b, lambda))?;
        report.push(
            format!("two-pulse/{}", row.label()),
            dev <= tol,
            format!("max |closed form − propagation| = {dev:.3e}"),
        );
    }
    let c = two_pulse_example_formula(TwoPulseExample::C, FRAC_PI_2, FRAC_PI_2, 1.0);
    report.push(
        "two-pulse/c/value",
        (c + 0.25).abs() <= tol,
        format!("row c at (π/2, π/2) = {c:.12} (expected -0.25)"),
    );

    let (rows, cols) = (
        GridSpec::half_open(0.0, 4.0 * PI, cfg.samples)?,
        GridSpec::half_open(-2.0 * PI, 2.0 * PI, cfg.samples)?,
    );
    for row in [TwoPulseExample::E, TwoPulseExample::F] {
        let s = Scenario::two_pulse_example(row, lambda)?;
        let surface = observable_grid(&s, &rows, &cols)?;
        let dev = surface
            .iter()
            .map(|(a, b, v)| (v + single_pulse_from_z(a, b, lambda).mx).abs())
            .fold(0.0, f64::max);
        report.push(
            format!("two-pulse/{}/sign-flip", row.label()),
            dev <= tol,
            format!("max |Mx + single-pulse Mx| = {dev:.3e}"),
        );
    }

    let dev = rows
        .values()
        .iter()
        .flat_map(|&phase| cols.values().into_iter().map(move |flip| (phase, flip)))
        .map(|(phase, flip)| {
            (two_pulse_example_formula(TwoPulseExample::B, phase, flip, lambda)
                - two_pulse_example_formula(TwoPulseExample::D, flip, phase, lambda))
            .abs()
        })
        .fold(0.0, f64::max);
    report.push(
        "two-pulse/b=d",
        dev <= tol,
        format!("max |b(phase, flip) − d(flip, phase)| = {dev:.3e}"),
    );

    for case in FixedCase::ALL {
        let s = Scenario::fixed_case(case, lambda)?;
        let dev = max_deviation(&s, cfg.samples, |a, b| fixed_special_formula(case, a, b, lambda))?;
        report.push(
            format!("fixed-case/{case:?}"),
            dev <= tol,
            format!("max |closed form − propagation| = {dev:.3e}"),
        );
    }
    Ok(report)
}

fn class_set(classes: &[u8]) -> BTreeSet<GateClass> {
    classes.iter().map(|&c| GateClass::ALL[c as usize]).collect()
}

fn fmt_classes(set: &BTreeSet<GateClass>) -> String {
    let items: Vec<String> = set.iter().map(|c| c.index().to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Gate classes reachable by each experiment family, compared with the
/// expected capability.
pub fn verify_capability_claims(cfg: &VerifyConfig) -> Result<Report> {
    let mut report = Report::default();
    let grid = &cfg.claims_grid;
    let lambda = cfg.lambda_b;
    let mut claim = |id: String, s: &Scenario, expected: &[u8]| -> Result<()> {
        let got = achievable_classes_with(s, grid, grid, &cfg.synthesis)?;
        let want = class_set(expected);
        report.push(
            id,
            got == want,
            format!("classes {} (expected {})", fmt_classes(&got), fmt_classes(&want)),
        );
        Ok(())
    };

    let z = Scenario::single_pulse(InitialState::ThermalZ, ObservableKind::Mx).with_lambda(lambda)?;
    claim("capability/z-1pulse-Mx".into(), &z, &[0, 1, 2, 3])?;
    for kind in ObservableKind::ALL {
        let x = Scenario::single_pulse(InitialState::SuperpositionX, kind).with_lambda(lambda)?;
        claim(format!("capability/x-1pulse-{kind}"), &x, &[0, 1, 2])?;
    }
    for row in [TwoPulseExample::A, TwoPulseExample::B, TwoPulseExample::C] {
        let s = Scenario::two_pulse_example(row, lambda)?;
        claim(format!("capability/x-2pulse-{}", row.label()), &s, &[0, 1, 3])?;
    }
    let s = Scenario::fixed_case(FixedCase::BetaHalfPiBetaPi, lambda)?;
    claim("capability/x-2pulse-beta1=pi/2,beta2=pi".into(), &s, &[0, 1, 2])?;
    let s = Scenario::fixed_case(FixedCase::PhiHalfPiBetaPi, lambda)?;
    claim("capability/x-2pulse-phi1=pi/2,beta2=pi".into(), &s, &[0, 1, 2, 3])?;

    // all 16 gates, not just all four classes, from thermal equilibrium
    let gates = crate::synthesis::realizable_gates(&z, grid, grid, &cfg.synthesis)?;
    let missing: Vec<_> = TruthTable::all().filter(|t| !gates[t.id() as usize]).collect();
    report.push(
        "capability/z-1pulse-Mx-all-gates",
        missing.is_empty(),
        format!("{} of 16 gates realizable", 16 - missing.len()),
    );
    Ok(report)
}

/// Reference tables followed by the capability checks.
pub fn verify_all(cfg: &VerifyConfig) -> Result<Report> {
    let mut report = verify_reference_tables(cfg)?;
    report.extend(verify_capability_claims(cfg)?);
    Ok(report)
}
