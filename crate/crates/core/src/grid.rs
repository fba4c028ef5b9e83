//! Arithmetic parameter grids and row-major sampled surfaces.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Candidate values `start + i·step` for `i = 0..count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    start: f64,
    step: f64,
    count: usize,
}

impl GridSpec {
    pub fn new(start: f64, step: f64, count: usize) -> Result<Self> {
        if !start.is_finite() || !step.is_finite() {
            return Err(Error::Config(format!(
                "grid start/step must be finite, got {start}:{step}"
            )));
        }
        if step <= 0.0 {
            return Err(Error::Config(format!("grid step must be positive, got {step}")));
        }
        if count < 2 {
            return Err(Error::Config(format!("grid needs at least 2 points, got {count}")));
        }
        Ok(GridSpec { start, step, count })
    }

    /// `count` points covering the half-open interval `[lo, hi)`.
    pub fn half_open(lo: f64, hi: f64, count: usize) -> Result<Self> {
        GridSpec::new(lo, (hi - lo) / count as f64, count)
    }

    /// Multiples of `π/denom`, from `first·π/denom` up to but excluding
    /// `last·π/denom`.
    pub fn pi_multiples(first: i64, last: i64, denom: u32) -> Result<Self> {
        if last <= first {
            return Err(Error::Config(format!("empty pi-multiple range {first}..{last}")));
        }
        let step = PI / denom as f64;
        GridSpec::new(first as f64 * step, step, (last - first) as usize)
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// The `i`-th grid value.
    #[inline]
    pub fn value(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.value(i)).collect()
    }
}

/// Values sampled over the Cartesian product of two axes, row-major with the
/// first axis outermost.
#[derive(Debug, Clone, PartialEq)]
pub struct Surface<T> {
    pub rows: Vec<f64>,
    pub cols: Vec<f64>,
    pub values: Vec<T>,
}

impl<T: Copy> Surface<T> {
    #[inline]
    pub fn at(&self, row: usize, col: usize) -> T {
        self.values[row * self.cols.len() + col]
    }

    pub fn row(&self, row: usize) -> &[T] {
        let n = self.cols.len();
        &self.values[row * n..(row + 1) * n]
    }

    /// Iterate `(row value, col value, sample)` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, T)> + '_ {
        let n = self.cols.len();
        self.values
            .iter()
            .enumerate()
            .map(move |(k, v)| (self.rows[k / n], self.cols[k % n], *v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn rejects_degenerate_grids() {
        assert!(GridSpec::new(0.0, 1.0, 1).is_err());
        assert!(GridSpec::new(0.0, 0.0, 5).is_err());
        assert!(GridSpec::new(0.0, -0.1, 5).is_err());
        assert!(GridSpec::new(f64::NAN, 0.1, 5).is_err());
        assert!(GridSpec::pi_multiples(3, 3, 4).is_err());
    }

    #[test]
    fn quarter_pi_grid() {
        let g = GridSpec::pi_multiples(0, 16, 4).unwrap();
        assert_eq!(g.count(), 16);
        assert_eq!(g.value(0), 0.0);
        assert!((g.value(15) - 15.0 * FRAC_PI_4).abs() < 1e-15);
        let ext = GridSpec::pi_multiples(-8, 16, 4).unwrap();
        assert_eq!(ext.count(), 24);
        assert!((ext.value(0) + 2.0 * PI).abs() < 1e-15);
    }

    #[test]
    fn half_open_excludes_upper_end() {
        let g = GridSpec::half_open(0.0, 4.0 * PI, 101).unwrap();
        assert_eq!(g.values().len(), 101);
        assert!(*g.values().last().unwrap() < 4.0 * PI);
    }

    #[test]
    fn surface_is_row_major() {
        let s = Surface {
            rows: vec![0.0, 1.0],
            cols: vec![10.0, 20.0, 30.0],
            values: vec![1, 2, 3, 4, 5, 6],
        };
        assert_eq!(s.at(1, 0), 4);
        assert_eq!(s.row(0), &[1, 2, 3]);
        let triples: Vec<_> = s.iter().collect();
        assert_eq!(triples[4], (1.0, 20.0, 5));
    }
}
