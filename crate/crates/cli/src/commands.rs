use spinlogic::synthesis::{default_grid, synthesize_with, SynthesisOptions};
use spinlogic::verify::{verify_all, VerifyConfig};
use spinlogic::{canalising_counts, gate_class, magnetization_grid, orbit, GridSpec, TruthTable};

use crate::angle::format_angle;
use crate::args::RunConfig;
use crate::error::CliError;
use crate::output::{format_number, with_output};

fn describe_grid(g: &GridSpec) -> String {
    format!("{}:{}:{}", format_angle(g.start()), format_angle(g.step()), g.count())
}

pub fn grid(cfg: &RunConfig) -> Result<(), CliError> {
    let s = cfg.scenario()?;
    let (rows, cols) = cfg.axes(s.default_axes())?;
    let surface = magnetization_grid(&s, &rows, &cols)?;
    let (a, b) = s.inputs();
    with_output(cfg.out().as_deref(), |w| {
        writeln!(w, "{},{},Mx,My,Mxy", s.param_label(a), s.param_label(b))?;
        for (x, y, m) in surface.iter() {
            writeln!(
                w,
                "{},{},{},{},{}",
                format_number(x),
                format_number(y),
                format_number(m.mx),
                format_number(m.my),
                format_number(m.mxy)
            )?;
        }
        Ok(())
    })
}

pub fn classify(token: &str) -> Result<(), CliError> {
    let tt: TruthTable = token.parse()?;
    let profile = canalising_counts(tt);
    let class = gate_class(tt)?;
    let members: Vec<String> = orbit(tt).into_iter().map(|g| format!("{g} ({})", g.id())).collect();
    with_output(None, |w| {
        writeln!(w, "gate: {tt} (id {})", tt.id())?;
        writeln!(w, "A B | out")?;
        for (k, out) in tt.outputs().into_iter().enumerate() {
            writeln!(w, "{} {} | {}", k >> 1, k & 1, u8::from(out))?;
        }
        writeln!(w, "canalising values: A {}, B {}", profile.count_a, profile.count_b)?;
        writeln!(w, "{class}")?;
        writeln!(w, "orbit ({}): {}", members.len(), members.join(", "))
    })
}

pub fn synthesize(token: &str, cfg: &RunConfig) -> Result<(), CliError> {
    let tt: TruthTable = token.parse()?;
    let s = cfg.scenario()?;
    let (a_grid, b_grid) = cfg.axes((default_grid(), default_grid()))?;
    let mut opts = SynthesisOptions {
        policy: cfg.levels()?,
        ..SynthesisOptions::default()
    };
    if let Some(t) = cfg.tol()? {
        opts.tolerance = t;
    }
    let found = synthesize_with(&s, tt, &a_grid, &b_grid, &opts)?;
    let (a, b) = s.inputs();
    let (la, lb) = (s.param_label(a), s.param_label(b));
    with_output(cfg.out().as_deref(), |w| {
        writeln!(w, "# {s}")?;
        writeln!(
            w,
            "# grid A={} B={} levels={} tol={}",
            describe_grid(&a_grid),
            describe_grid(&b_grid),
            opts.policy,
            format_number(opts.tolerance)
        )?;
        writeln!(w, "# gate {tt} (id {}), {}", tt.id(), gate_class(tt).map_err(std::io::Error::other)?)?;
        if found.is_empty() {
            return writeln!(w, "# none found");
        }
        writeln!(w, "# {} assignments", found.len())?;
        writeln!(w, "{la}_0,{la}_1,{lb}_0,{lb}_1,level_0,level_1")?;
        for asg in &found {
            let level = |bit: bool| {
                asg.levels
                    .entries()
                    .iter()
                    .find(|(_, o)| *o == bit)
                    .map(|(l, _)| format_number(*l))
                    .unwrap_or_default()
            };
            writeln!(
                w,
                "{},{},{},{},{},{}",
                format_angle(asg.a_values.0),
                format_angle(asg.a_values.1),
                format_angle(asg.b_values.0),
                format_angle(asg.b_values.1),
                level(false),
                level(true)
            )?;
        }
        Ok(())
    })?;
    if found.is_empty() {
        return Err(CliError::NoSolution(format!("none found: {tt} is not realizable on this grid")));
    }
    Ok(())
}

pub fn verify(cfg: &RunConfig) -> Result<(), CliError> {
    let mut vc = VerifyConfig::default();
    if let Some(l) = cfg.lambda()? {
        vc.lambda_b = l;
    }
    if let Some(t) = cfg.tol()? {
        vc.tolerance = t;
    }
    if let Some(g) = cfg.grid()? {
        vc.claims_grid = g;
    }
    vc.synthesis.policy = cfg.levels()?;
    let report = verify_all(&vc)?;
    with_output(cfg.out().as_deref(), |w| {
        writeln!(
            w,
            "# lambda_B={} tol={} capability grid={} levels={}",
            format_number(vc.lambda_b),
            format_number(vc.tolerance),
            describe_grid(&vc.claims_grid),
            vc.synthesis.policy
        )?;
        writeln!(w, "{report}")
    })?;
    if report.all_passed() {
        Ok(())
    } else {
        let ids: Vec<&str> = report.failures().map(|c| c.id.as_str()).collect();
        Err(CliError::Verification(format!("{} checks failed: {}", ids.len(), ids.join(", "))))
    }
}
