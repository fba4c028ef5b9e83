//! Command-line flags, the key=value config file, and their merge into a
//! [`RunConfig`].

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use spinlogic::synthesis::LevelPolicy;
use spinlogic::{GridSpec, InitialState, ObservableKind, PulseCount, PulseParam, Scenario};

use crate::angle::parse_angle;
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "spinlogic", version, about = "Single-spin NMR pulse experiments as two-input logic gates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample Mx, My and Mxy over a grid of the two input parameters (CSV).
    Grid(ScenarioArgs),
    /// Show the truth table, canalising profile, class and orbit of a gate.
    Classify {
        /// Gate name (XOR, NAND, "NOT A", >=, ...) or id 0-15.
        gate: String,
    },
    /// List every grid assignment of the inputs that realizes a gate.
    Synthesize {
        /// Gate name or id 0-15.
        gate: String,
        #[command(flatten)]
        scenario: ScenarioArgs,
    },
    /// Recompute the reference gate tables and check gate-class capabilities.
    Verify(CommonArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Polarization scale λ_B.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Candidate or sampling grid for both inputs, as start:step:count.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Tolerance for level matching (synthesize) or value checks (verify).
    #[arg(long)]
    pub tol: Option<String>,
    /// Admissible output levels: natural (0, ±λ_B/4) or free.
    #[arg(long)]
    pub levels: Option<String>,
    /// Worker threads for parallel evaluation.
    #[arg(long)]
    pub workers: Option<String>,
    /// Output file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// key=value file with defaults for any of these flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ScenarioArgs {
    /// Initial state: z (thermal equilibrium) or x (transverse superposition).
    #[arg(long)]
    pub initial: Option<String>,
    /// Number of pulses: 1 or 2.
    #[arg(long)]
    pub pulses: Option<String>,
    /// Observable: mx, my or mxy.
    #[arg(long)]
    pub observable: Option<String>,
    /// Parameters bound to inputs A and B, e.g. phi2,phi1.
    #[arg(long)]
    pub inputs: Option<String>,
    /// Fix a parameter, e.g. beta2=pi (repeatable).
    #[arg(long, allow_hyphen_values = true)]
    pub fix: Vec<String>,
    /// Grid for input A only, overriding --grid.
    #[arg(long = "grid-a", allow_hyphen_values = true)]
    pub grid_a: Option<String>,
    /// Grid for input B only, overriding --grid.
    #[arg(long = "grid-b", allow_hyphen_values = true)]
    pub grid_b: Option<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

const KEYS: [&str; 13] = [
    "initial", "pulses", "observable", "inputs", "fix", "lambda", "grid", "grid-a", "grid-b", "tol", "levels",
    "workers", "out",
];

/// Settings merged from the config file and the flags, flags winning.
#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    values: BTreeMap<&'static str, Vec<String>>,
}

impl RunConfig {
    pub fn from_scenario_args(args: &ScenarioArgs) -> Result<Self, CliError> {
        let mut cfg = RunConfig::from_common(&args.common)?;
        for (key, value) in [
            ("initial", &args.initial),
            ("pulses", &args.pulses),
            ("observable", &args.observable),
            ("inputs", &args.inputs),
            ("grid-a", &args.grid_a),
            ("grid-b", &args.grid_b),
        ] {
            cfg.set(key, value.clone());
        }
        if !args.fix.is_empty() {
            cfg.values.insert("fix", args.fix.clone());
        }
        Ok(cfg)
    }

    pub fn from_common(args: &CommonArgs) -> Result<Self, CliError> {
        let mut cfg = match &args.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        for (key, value) in [
            ("lambda", &args.lambda),
            ("grid", &args.grid),
            ("tol", &args.tol),
            ("levels", &args.levels),
            ("workers", &args.workers),
            ("out", &args.out.as_ref().map(|p| p.display().to_string())),
        ] {
            cfg.set(key, value.clone());
        }
        Ok(cfg)
    }

    fn set(&mut self, key: &'static str, value: Option<String>) {
        if let Some(v) = value {
            self.values.insert(key, vec![v]);
        }
    }

    /// Parse `key = value` lines; `#` starts a comment. `fix` may repeat.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = RunConfig::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", n + 1)))?;
            let key = key.trim();
            let key = KEYS
                .into_iter()
                .find(|k| *k == key)
                .ok_or_else(|| CliError::Usage(format!("config line {}: unknown key '{key}'", n + 1)))?;
            let value = value.trim().to_string();
            if key == "fix" {
                cfg.values.entry(key).or_default().push(value);
            } else {
                cfg.values.insert(key, vec![value]);
            }
        }
        Ok(cfg)
    }

    fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        RunConfig::parse(&text)
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).and_then(|v| v.last()).map(String::as_str)
    }

    fn parse_with<T>(&self, key: &str, f: impl Fn(&str) -> Result<T, CliError>) -> Result<Option<T>, CliError> {
        self.get(key).map(f).transpose()
    }

    pub fn out(&self) -> Option<PathBuf> {
        self.get("out").map(PathBuf::from)
    }

    pub fn lambda(&self) -> Result<Option<f64>, CliError> {
        self.parse_with("lambda", |s| parse_real("lambda", s))
    }

    pub fn tol(&self) -> Result<Option<f64>, CliError> {
        self.parse_with("tol", |s| {
            let t = parse_real("tol", s)?;
            if t < 0.0 {
                return Err(CliError::Usage(format!("tolerance must be non-negative, got {s}")));
            }
            Ok(t)
        })
    }

    pub fn levels(&self) -> Result<LevelPolicy, CliError> {
        Ok(self.parse_with("levels", |s| Ok(s.parse::<LevelPolicy>()?))?.unwrap_or_default())
    }

    pub fn workers(&self) -> Result<Option<usize>, CliError> {
        self.parse_with("workers", |s| match s.parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::Usage(format!("workers must be a positive integer, got '{s}'"))),
        })
    }

    pub fn grid(&self) -> Result<Option<GridSpec>, CliError> {
        self.parse_with("grid", parse_grid)
    }

    /// Grids for inputs A and B: per-axis flag, then `grid`, then `fallback`.
    pub fn axes(&self, fallback: (GridSpec, GridSpec)) -> Result<(GridSpec, GridSpec), CliError> {
        let both = self.grid()?;
        let a = self.parse_with("grid-a", parse_grid)?.or(both).unwrap_or(fallback.0);
        let b = self.parse_with("grid-b", parse_grid)?.or(both).unwrap_or(fallback.1);
        Ok((a, b))
    }

    /// The experiment described by these settings. Unbound parameters of a
    /// two-pulse sequence default to `π/2`.
    pub fn scenario(&self) -> Result<Scenario, CliError> {
        let initial: InitialState = self.parse_with("initial", |s| Ok(s.parse()?))?.unwrap_or(InitialState::ThermalZ);
        let observable: ObservableKind = self.parse_with("observable", |s| Ok(s.parse()?))?.unwrap_or(ObservableKind::Mx);
        let pulses = self
            .parse_with("pulses", |s| {
                let n = s
                    .parse::<usize>()
                    .map_err(|_| CliError::Usage(format!("pulses must be 1 or 2, got '{s}'")))?;
                Ok(PulseCount::try_from(n)?)
            })?
            .unwrap_or(PulseCount::One);
        let inputs = match self.get("inputs") {
            Some(s) => {
                let (a, b) = s
                    .split_once(',')
                    .ok_or_else(|| CliError::Usage(format!("inputs must be two parameters p1,p2, got '{s}'")))?;
                (a.parse::<PulseParam>()?, b.parse::<PulseParam>()?)
            }
            None => match pulses {
                PulseCount::One => (PulseParam::Phi1, PulseParam::Beta1),
                PulseCount::Two => (PulseParam::Phi2, PulseParam::Phi1),
            },
        };
        let mut fixed = Vec::new();
        for item in self.values.get("fix").into_iter().flatten() {
            for part in item.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let (p, v) = part
                    .split_once('=')
                    .ok_or_else(|| CliError::Usage(format!("fix must look like param=angle, got '{part}'")))?;
                fixed.push((p.parse::<PulseParam>()?, parse_angle(v)?));
            }
        }
        if pulses == PulseCount::Two {
            for p in PulseParam::ALL {
                if p != inputs.0 && p != inputs.1 && !fixed.iter().any(|(q, _)| *q == p) {
                    fixed.push((p, std::f64::consts::FRAC_PI_2));
                }
            }
        }
        let lambda = self.lambda()?.unwrap_or(1.0);
        Ok(Scenario::new(initial, pulses, observable, inputs, &fixed, lambda)?)
    }
}

fn parse_real(name: &str, s: &str) -> Result<f64, CliError> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(CliError::Usage(format!("{name} must be a finite number, got '{s}'"))),
    }
}

/// `start:step:count`, where start and step are angles.
pub fn parse_grid(s: &str) -> Result<GridSpec, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, step, count] = parts.as_slice() else {
        return Err(CliError::Usage(format!("grid must be start:step:count, got '{s}'")));
    };
    let count = count
        .trim()
        .parse::<usize>()
        .map_err(|_| CliError::Usage(format!("grid count must be a non-negative integer, got '{count}'")))?;
    Ok(GridSpec::new(parse_angle(start)?, parse_angle(step)?, count)?)
}
