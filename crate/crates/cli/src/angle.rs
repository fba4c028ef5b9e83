//! Angles as decimal radians or rational multiples of π.

use std::f64::consts::PI;

use crate::error::CliError;

/// Parse `1.5708`, `pi`, `-pi`, `3/2pi`, `3/2 pi`, `pi/2`, `3pi/2`, `2*pi`
/// or the same with `π`.
pub fn parse_angle(text: &str) -> Result<f64, CliError> {
    let bad = || CliError::Usage(format!("invalid angle '{text}' (use radians or p/q pi, e.g. 3/2pi)"));
    let s: String = text
        .trim()
        .to_ascii_lowercase()
        .replace('π', "pi")
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect();
    let value = match s.split_once("pi") {
        None => s.parse::<f64>().map_err(|_| bad())?,
        Some((pre, post)) => {
            let pre = pre.strip_suffix('*').unwrap_or(pre);
            let coef = match pre {
                "" | "+" => 1.0,
                "-" => -1.0,
                _ => ratio(pre).ok_or_else(bad)?,
            };
            let div = match post {
                "" => 1.0,
                _ => post.strip_prefix('/').and_then(|d| d.parse::<f64>().ok()).ok_or_else(bad)?,
            };
            if div == 0.0 {
                return Err(bad());
            }
            coef * PI / div
        }
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

fn ratio(s: &str) -> Option<f64> {
    match s.split_once('/') {
        Some((p, q)) => {
            let q: f64 = q.parse().ok()?;
            (q != 0.0).then_some(p.parse::<f64>().ok()? / q)
        }
        None => s.parse().ok(),
    }
}

/// `p/qpi` when `value` is a multiple of `π/12`, decimal radians otherwise.
pub fn format_angle(value: f64) -> String {
    let k = (value * 12.0 / PI).round();
    if (value - k * PI / 12.0).abs() > 1e-9 * value.abs().max(1.0) {
        return crate::output::format_number(value);
    }
    let k = k as i64;
    if k == 0 {
        return "0".into();
    }
    let g = gcd(k.unsigned_abs(), 12) as i64;
    let (p, q) = (k / g, 12 / g);
    match (p, q) {
        (1, 1) => "pi".into(),
        (-1, 1) => "-pi".into(),
        (p, 1) => format!("{p}pi"),
        (p, q) => format!("{p}/{q}pi"),
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
