//! Gate synthesis: find input values and an output-level map that make a
//! scenario's observable behave as a given two-input boolean function.
//!
//! An assignment picks two candidate values for each input (the values used
//! for logic 0 and logic 1) and maps the resulting output levels to booleans.
//! The search is exhaustive over a finite grid of candidate values, in
//! lexicographic order of grid indices `(a0, a1, b0, b1)`.
//!
//! Which real output values count as logic levels is set by [`LevelPolicy`].
//! The default, [`LevelPolicy::Natural`], accepts only the values the
//! observables take at their extrema and nodes, `{−λ_B/4, 0, +λ_B/4}`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gates::{gate_class, GateClass, TruthTable};
use crate::grid::GridSpec;
use crate::matrix::DEFAULT_TOL;
use crate::scenario::{observable_grid, Scenario};

/// Which observable values are admissible as logic levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum LevelPolicy {
    /// Levels must be one of `−λ_B/4`, `0`, `+λ_B/4`.
    #[default]
    Natural,
    /// Any two values separated by more than the tolerance.
    Free,
}

impl FromStr for LevelPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "natural" => Ok(LevelPolicy::Natural),
            "free" => Ok(LevelPolicy::Free),
            other => Err(Error::Config(format!(
                "unknown level policy '{other}' (expected natural or free)"
            ))),
        }
    }
}

impl fmt::Display for LevelPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LevelPolicy::Natural => "natural",
            LevelPolicy::Free => "free",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthesisOptions {
    /// Level-matching tolerance.
    pub tolerance: f64,
    pub policy: LevelPolicy,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        SynthesisOptions {
            tolerance: DEFAULT_TOL,
            policy: LevelPolicy::Natural,
        }
    }
}

/// Map from one or two output levels to logic values.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelMap {
    entries: Vec<(f64, bool)>,
}

impl LevelMap {
    /// A single level, used by the constant gates.
    pub fn constant(level: f64, output: bool) -> Self {
        LevelMap {
            entries: vec![(level, output)],
        }
    }

    /// `low ↦ 0`, `high ↦ 1`; the two levels must differ by more than `tol`.
    pub fn binary(zero_level: f64, one_level: f64, tol: f64) -> Result<Self> {
        if (zero_level - one_level).abs() <= tol {
            return Err(Error::Domain(format!(
                "levels {zero_level} and {one_level} are not distinguishable at tolerance {tol}"
            )));
        }
        Ok(LevelMap {
            entries: vec![(zero_level, false), (one_level, true)],
        })
    }

    pub fn entries(&self) -> &[(f64, bool)] {
        &self.entries
    }

    /// Logic value of the nearest level within `tol`, if any.
    pub fn lookup(&self, value: f64, tol: f64) -> Option<bool> {
        self.entries
            .iter()
            .map(|&(level, out)| ((value - level).abs(), out))
            .filter(|&(d, _)| d <= tol)
            .min_by(|x, y| x.0.total_cmp(&y.0))
            .map(|(_, out)| out)
    }

    /// Same levels with the logic values flipped.
    pub fn negated(&self) -> Self {
        LevelMap {
            entries: self.entries.iter().map(|&(l, o)| (l, !o)).collect(),
        }
    }
}

/// A concrete realization of a gate by a scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct GateAssignment {
    /// Values of input `A` for logic 0 and logic 1.
    pub a_values: (f64, f64),
    /// Values of input `B` for logic 0 and logic 1.
    pub b_values: (f64, f64),
    pub levels: LevelMap,
    pub tolerance: f64,
}

impl GateAssignment {
    fn a(&self, bit: bool) -> f64 {
        if bit {
            self.a_values.1
        } else {
            self.a_values.0
        }
    }

    fn b(&self, bit: bool) -> f64 {
        if bit {
            self.b_values.1
        } else {
            self.b_values.0
        }
    }

    /// Observable at the four input corners `(0,0), (0,1), (1,0), (1,1)`.
    pub fn corner_values(&self, s: &Scenario) -> Result<[f64; 4]> {
        let mut out = [0.0; 4];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = s.evaluate(self.a(k & 2 != 0), self.b(k & 1 != 0))?;
        }
        Ok(out)
    }

    /// The assignment with inputs `A` and `B` exchanged.
    pub fn swapped(&self) -> Self {
        GateAssignment {
            a_values: self.b_values,
            b_values: self.a_values,
            ..self.clone()
        }
    }

    /// The assignment with the output map inverted.
    pub fn negated_output(&self) -> Self {
        GateAssignment {
            levels: self.levels.negated(),
            ..self.clone()
        }
    }
}

/// True iff every input corner lands on a level that maps to the truth
/// table's output. A corner matching no level gives `false`.
///
/// Using the same value for logic 0 and 1 of an input is allowed; it can only
/// succeed when `tt` ignores that input.
pub fn assignment_realizes(s: &Scenario, asg: &GateAssignment, tt: TruthTable) -> bool {
    let Ok(corners) = asg.corner_values(s) else {
        return false;
    };
    corners
        .iter()
        .zip(tt.outputs())
        .all(|(&v, want)| asg.levels.lookup(v, asg.tolerance) == Some(want))
}

/// Observable values over the candidate grid, each snapped to its logic
/// level (or `None` when the value is not an admissible level).
struct LevelTable {
    a_vals: Vec<f64>,
    b_vals: Vec<f64>,
    levels: Vec<Option<f64>>,
    tol: f64,
}

impl LevelTable {
    fn build(s: &Scenario, a_grid: &GridSpec, b_grid: &GridSpec, opts: &SynthesisOptions) -> Result<Self> {
        if opts.tolerance.is_nan() || opts.tolerance < 0.0 {
            return Err(Error::Config(format!("tolerance must be non-negative, got {}", opts.tolerance)));
        }
        let surface = observable_grid(s, a_grid, b_grid)?;
        let quarter = s.lambda_b() / 4.0;
        let natural = [-quarter, 0.0, quarter];
        let levels = surface
            .values
            .iter()
            .map(|&v| match opts.policy {
                LevelPolicy::Free => Some(v),
                LevelPolicy::Natural => natural
                    .iter()
                    .copied()
                    .filter(|l| (v - l).abs() <= opts.tolerance)
                    .min_by(|x, y| (v - x).abs().total_cmp(&(v - y).abs())),
            })
            .collect();
        Ok(LevelTable {
            a_vals: surface.rows,
            b_vals: surface.cols,
            levels,
            tol: opts.tolerance,
        })
    }

    #[inline]
    fn level(&self, i: usize, j: usize) -> Option<f64> {
        self.levels[i * self.b_vals.len() + j]
    }

    fn corners(&self, i0: usize, i1: usize, j0: usize, j1: usize) -> Option<[f64; 4]> {
        Some([
            self.level(i0, j0)?,
            self.level(i0, j1)?,
            self.level(i1, j0)?,
            self.level(i1, j1)?,
        ])
    }

    fn same(&self, x: f64, y: f64) -> bool {
        (x - y).abs() <= self.tol
    }

    /// Level map realizing `tt` at these corners, if one exists.
    fn level_map_for(&self, corners: &[f64; 4], tt: TruthTable) -> Option<LevelMap> {
        let outputs = tt.outputs();
        let rep = |want: bool| {
            corners
                .iter()
                .zip(outputs)
                .find(|&(_, o)| o == want)
                .map(|(&v, _)| v)
        };
        let one = rep(true);
        let zero = rep(false);
        let consistent = corners.iter().zip(outputs).all(|(&v, o)| {
            let r = if o { one } else { zero };
            r.is_some_and(|r| self.same(v, r))
        });
        if !consistent {
            return None;
        }
        match (zero, one) {
            (Some(z), Some(o)) => LevelMap::binary(z, o, self.tol).ok(),
            (None, Some(o)) => Some(LevelMap::constant(o, true)),
            (Some(z), None) => Some(LevelMap::constant(z, false)),
            (None, None) => None,
        }
    }

    /// Gates realizable at these corners: both constants for a single level,
    /// a pattern and its complement for two levels, nothing otherwise.
    fn realized_gates(&self, corners: &[f64; 4]) -> Option<[u8; 2]> {
        let first = corners[0];
        let mut pattern = 0u8;
        let mut other: Option<f64> = None;
        for (k, &v) in corners.iter().enumerate() {
            if self.same(v, first) {
                continue;
            }
            match other {
                None => other = Some(v),
                Some(o) if self.same(v, o) => {}
                Some(_) => return None,
            }
            pattern |= 1 << k;
        }
        if other.is_none() {
            Some([TruthTable::F.id(), TruthTable::T.id()])
        } else {
            Some([pattern, !pattern & 0x0f])
        }
    }
}

/// All assignments over `grid` (used for both inputs) realizing `tt` with the
/// default options.
pub fn synthesize(s: &Scenario, tt: TruthTable, grid: &GridSpec) -> Result<Vec<GateAssignment>> {
    synthesize_with(s, tt, grid, grid, &SynthesisOptions::default())
}

/// All assignments over `a_grid × a_grid × b_grid × b_grid`, in lexicographic
/// order of grid indices `(a0, a1, b0, b1)`.
pub fn synthesize_with(
    s: &Scenario,
    tt: TruthTable,
    a_grid: &GridSpec,
    b_grid: &GridSpec,
    opts: &SynthesisOptions,
) -> Result<Vec<GateAssignment>> {
    let table = LevelTable::build(s, a_grid, b_grid, opts)?;
    let na = table.a_vals.len();
    let nb = table.b_vals.len();
    let per_a0: Vec<Vec<GateAssignment>> = (0..na)
        .into_par_iter()
        .map(|i0| {
            let mut found = Vec::new();
            for i1 in 0..na {
                for j0 in 0..nb {
                    for j1 in 0..nb {
                        let Some(corners) = table.corners(i0, i1, j0, j1) else {
                            continue;
                        };
                        if let Some(levels) = table.level_map_for(&corners, tt) {
                            found.push(GateAssignment {
                                a_values: (table.a_vals[i0], table.a_vals[i1]),
                                b_values: (table.b_vals[j0], table.b_vals[j1]),
                                levels,
                                tolerance: opts.tolerance,
                            });
                        }
                    }
                }
            }
            found
        })
        .collect();
    Ok(per_a0.into_iter().flatten().collect())
}

/// Which of the 16 gates (indexed by id) have at least one assignment.
pub fn realizable_gates(
    s: &Scenario,
    a_grid: &GridSpec,
    b_grid: &GridSpec,
    opts: &SynthesisOptions,
) -> Result<[bool; 16]> {
    let table = LevelTable::build(s, a_grid, b_grid, opts)?;
    let na = table.a_vals.len();
    let nb = table.b_vals.len();
    let mask = (0..na)
        .into_par_iter()
        .map(|i0| {
            let mut mask = 0u16;
            for i1 in 0..na {
                for j0 in 0..nb {
                    for j1 in 0..nb {
                        if let Some(gates) = table.corners(i0, i1, j0, j1).and_then(|c| table.realized_gates(&c)) {
                            for g in gates {
                                mask |= 1 << g;
                            }
                        }
                    }
                }
            }
            mask
        })
        .reduce(|| 0, |x, y| x | y);
    Ok(std::array::from_fn(|g| mask & (1 << g) != 0))
}

/// Classes of all gates realizable on `grid` with the default options.
pub fn achievable_classes(s: &Scenario, grid: &GridSpec) -> Result<BTreeSet<GateClass>> {
    achievable_classes_with(s, grid, grid, &SynthesisOptions::default())
}

pub fn achievable_classes_with(
    s: &Scenario,
    a_grid: &GridSpec,
    b_grid: &GridSpec,
    opts: &SynthesisOptions,
) -> Result<BTreeSet<GateClass>> {
    let gates = realizable_gates(s, a_grid, b_grid, opts)?;
    TruthTable::all()
        .filter(|tt| gates[tt.id() as usize])
        .map(gate_class)
        .collect()
}

/// Default candidate grid: multiples of `π/4` over `[−2π, 4π)`, which holds
/// every input value used by the reference gate tables.
pub fn default_grid() -> GridSpec {
    GridSpec::pi_multiples(-8, 16, 4).expect("static grid is valid")
}
