//! The sixteen two-input boolean functions and their canalising structure.
//!
//! A gate is identified by a 4-bit id: bit `2A + B` of the id is the output
//! for inputs `(A, B)`. With this ordering, `AND` is 8, `OR` is 14, `XOR` is
//! 6, the projection `A` is 12 and `B` is 10.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A logic input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Input {
    A,
    B,
}

/// Truth table of a two-input boolean function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthTable(u8);

impl TruthTable {
    pub const F: TruthTable = TruthTable(0);
    pub const NOR: TruthTable = TruthTable(1);
    /// `NOT A AND B`, written `<`.
    pub const LT: TruthTable = TruthTable(2);
    pub const NOT_A: TruthTable = TruthTable(3);
    /// `A AND NOT B`, written `>`.
    pub const GT: TruthTable = TruthTable(4);
    pub const NOT_B: TruthTable = TruthTable(5);
    pub const XOR: TruthTable = TruthTable(6);
    pub const NAND: TruthTable = TruthTable(7);
    pub const AND: TruthTable = TruthTable(8);
    pub const XNOR: TruthTable = TruthTable(9);
    pub const B: TruthTable = TruthTable(10);
    /// `NOT A OR B`, written `≤`.
    pub const LE: TruthTable = TruthTable(11);
    pub const A: TruthTable = TruthTable(12);
    /// `A OR NOT B`, written `≥`.
    pub const GE: TruthTable = TruthTable(13);
    pub const OR: TruthTable = TruthTable(14);
    pub const T: TruthTable = TruthTable(15);

    pub fn from_id(id: u8) -> Result<Self> {
        if id < 16 {
            Ok(TruthTable(id))
        } else {
            Err(Error::Domain(format!("gate id must be in 0..=15, got {id}")))
        }
    }

    /// Build from outputs listed for `(0,0), (0,1), (1,0), (1,1)`.
    pub fn from_outputs(outputs: [bool; 4]) -> Self {
        TruthTable(
            outputs
                .iter()
                .enumerate()
                .fold(0, |id, (k, &o)| id | (u8::from(o) << k)),
        )
    }

    pub fn all() -> impl Iterator<Item = TruthTable> {
        (0..16).map(TruthTable)
    }

    pub fn id(self) -> u8 {
        self.0
    }

    pub fn output(self, a: bool, b: bool) -> bool {
        let k = 2 * u8::from(a) + u8::from(b);
        (self.0 >> k) & 1 == 1
    }

    /// Outputs in the order `(0,0), (0,1), (1,0), (1,1)`.
    pub fn outputs(self) -> [bool; 4] {
        [
            self.output(false, false),
            self.output(false, true),
            self.output(true, false),
            self.output(true, true),
        ]
    }

    pub fn is_constant(self) -> bool {
        self.0 == 0 || self.0 == 15
    }

    /// True iff the output changes with `input` for some value of the other.
    pub fn depends_on(self, input: Input) -> bool {
        [false, true].iter().any(|&other| match input {
            Input::A => self.output(false, other) != self.output(true, other),
            Input::B => self.output(other, false) != self.output(other, true),
        })
    }

    /// `(A, B) ↦ f(B, A)`.
    pub fn swap_inputs(self) -> Self {
        self.transform(|a, b| (b, a))
    }

    pub fn negate_input(self, input: Input) -> Self {
        match input {
            Input::A => self.transform(|a, b| (!a, b)),
            Input::B => self.transform(|a, b| (a, !b)),
        }
    }

    pub fn negate_output(self) -> Self {
        TruthTable(!self.0 & 0x0f)
    }

    fn transform(self, map: impl Fn(bool, bool) -> (bool, bool)) -> Self {
        let mut outputs = [false; 4];
        for (k, slot) in outputs.iter_mut().enumerate() {
            let (a, b) = map(k & 2 != 0, k & 1 != 0);
            *slot = self.output(a, b);
        }
        TruthTable::from_outputs(outputs)
    }

    /// Conventional name, if the gate has one.
    pub fn name(self) -> &'static str {
        GATE_NAMES[self.0 as usize]
    }
}

const GATE_NAMES: [&str; 16] = [
    "F", "NOR", "<", "NOT A", ">", "NOT B", "XOR", "NAND", "AND", "XNOR", "B", "<=", "A", ">=", "OR",
    "T",
];

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TruthTable {
    type Err = Error;

    /// Accepts a numeric id `0..=15` or a case-insensitive gate name.
    fn from_str(s: &str) -> Result<Self> {
        let token = s.trim();
        if let Ok(id) = token.parse::<u8>() {
            return TruthTable::from_id(id);
        }
        let norm: String = token
            .to_ascii_uppercase()
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '_' && *c != '-')
            .collect();
        let gate = match norm.as_str() {
            "T" | "TRUE" => TruthTable::T,
            "F" | "FALSE" => TruthTable::F,
            "A" => TruthTable::A,
            "B" => TruthTable::B,
            "NOTA" | "!A" => TruthTable::NOT_A,
            "NOTB" | "!B" => TruthTable::NOT_B,
            "AND" => TruthTable::AND,
            "NAND" => TruthTable::NAND,
            "OR" => TruthTable::OR,
            "NOR" => TruthTable::NOR,
            "XOR" => TruthTable::XOR,
            "XNOR" => TruthTable::XNOR,
            ">" | "GT" => TruthTable::GT,
            "<" | "LT" => TruthTable::LT,
            "<=" | "≤" | "LE" => TruthTable::LE,
            ">=" | "≥" | "GE" => TruthTable::GE,
            _ => {
                return Err(Error::Domain(format!(
                    "unknown gate '{token}'; valid tokens: {} or an id 0-15",
                    VALID_TOKENS.join(", ")
                )))
            }
        };
        Ok(gate)
    }
}

/// Gate names accepted by [`TruthTable::from_str`].
pub const VALID_TOKENS: [&str; 16] = [
    "T", "F", "A", "B", "NOT A", "NOT B", "AND", "NAND", "OR", "NOR", "XOR", "XNOR", ">", "<", "<=",
    ">=",
];

/// Canalising equivalence class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateClass {
    Class0,
    Class1,
    Class2,
    Class3,
}

impl GateClass {
    pub const ALL: [GateClass; 4] = [
        GateClass::Class0,
        GateClass::Class1,
        GateClass::Class2,
        GateClass::Class3,
    ];

    pub fn index(self) -> u8 {
        match self {
            GateClass::Class0 => 0,
            GateClass::Class1 => 1,
            GateClass::Class2 => 2,
            GateClass::Class3 => 3,
        }
    }
}

impl fmt::Display for GateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "class {}", self.index())
    }
}

/// Number of canalising values when fixing `A` and when fixing `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CanalisingProfile {
    pub count_a: u8,
    pub count_b: u8,
}

/// True iff fixing `variable` to `value` makes the output independent of the
/// other input.
pub fn is_canalising_value(tt: TruthTable, variable: Input, value: bool) -> bool {
    match variable {
        Input::A => tt.output(value, false) == tt.output(value, true),
        Input::B => tt.output(false, value) == tt.output(true, value),
    }
}

pub fn canalising_counts(tt: TruthTable) -> CanalisingProfile {
    let count = |var| {
        [false, true]
            .into_iter()
            .filter(|&v| is_canalising_value(tt, var, v))
            .count() as u8
    };
    CanalisingProfile {
        count_a: count(Input::A),
        count_b: count(Input::B),
    }
}

/// Class from the canalising profile: (2,2) → 0, (2,0)/(0,2) → 1,
/// (1,1) → 2, (0,0) → 3.
pub fn gate_class(tt: TruthTable) -> Result<GateClass> {
    let p = canalising_counts(tt);
    match (p.count_a, p.count_b) {
        (2, 2) => Ok(GateClass::Class0),
        (2, 0) | (0, 2) => Ok(GateClass::Class1),
        (1, 1) => Ok(GateClass::Class2),
        (0, 0) => Ok(GateClass::Class3),
        (a, b) => Err(Error::Consistency(format!(
            "gate {tt} has impossible canalising profile ({a}, {b})"
        ))),
    }
}

/// Closure of `tt` under input swap, independent input negations and output
/// negation.
pub fn orbit(tt: TruthTable) -> BTreeSet<TruthTable> {
    let mut out = BTreeSet::new();
    for swap in [false, true] {
        for neg_a in [false, true] {
            for neg_b in [false, true] {
                for neg_out in [false, true] {
                    let mut g = if swap { tt.swap_inputs() } else { tt };
                    if neg_a {
                        g = g.negate_input(Input::A);
                    }
                    if neg_b {
                        g = g.negate_input(Input::B);
                    }
                    if neg_out {
                        g = g.negate_output();
                    }
                    out.insert(g);
                }
            }
        }
    }
    out
}
