//! Rectangular evaluation grids over `X = [-1,1]^2`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{NevaiError, Result};
use crate::field::ComplexField;
use crate::metrics::{self, ErrorReport};
use crate::operator::Approximant;
use crate::par;

/// `rows x cols` uniform grid; each axis runs from `-1 + margin` to `1 - margin`.
///
/// `GridSpec::table(N)` uses the margin `1/(2N)`, keeping samples off the
/// boundary where the kernels take their extreme values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub rows: usize,
    pub cols: usize,
    pub margin: f64,
}

impl GridSpec {
    pub fn new(rows: usize, cols: usize, margin: f64) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(NevaiError::InvalidConfig("grid must have at least one row and column".into()));
        }
        if !(0.0..1.0).contains(&margin) {
            return Err(NevaiError::InvalidConfig(format!("grid margin {margin} outside [0, 1)")));
        }
        Ok(Self { rows, cols, margin })
    }

    pub fn table(size: usize) -> Self {
        let size = size.max(1);
        Self { rows: size, cols: size, margin: 1.0 / (2.0 * size as f64) }
    }

    /// Closed square, endpoints included.
    pub fn closed(size: usize) -> Self {
        Self { rows: size.max(1), cols: size.max(1), margin: 0.0 }
    }

    fn axis(count: usize, margin: f64) -> Vec<f64> {
        if count == 1 {
            return vec![0.0];
        }
        let (lo, hi) = (-1.0 + margin, 1.0 - margin);
        let step = (hi - lo) / (count - 1) as f64;
        (0..count).map(|i| if i + 1 == count { hi } else { lo + i as f64 * step }).collect()
    }

    /// Real-part coordinates, one per row.
    pub fn xs(&self) -> Vec<f64> {
        Self::axis(self.rows, self.margin)
    }

    /// Imaginary-part coordinates, one per column.
    pub fn ys(&self) -> Vec<f64> {
        Self::axis(self.cols, self.margin)
    }

    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} uniform, margin={:.6e}", self.rows, self.cols, self.margin)
    }
}

/// Exact and approximated values on a grid, stored row-major.
#[derive(Debug, Clone)]
pub struct EvaluationGrid {
    pub spec: GridSpec,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub exact: Vec<Complex64>,
    pub approx: Vec<Complex64>,
}

impl EvaluationGrid {
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.spec.cols + j
    }

    pub fn abs_err(&self) -> Vec<f64> {
        self.exact.iter().zip(&self.approx).map(|(a, b)| (a - b).norm()).collect()
    }

    pub fn report(&self) -> Result<ErrorReport> {
        metrics::error_report(&self.exact, &self.approx)
    }
}

pub fn sample(f: &ComplexField, xs: &[f64], ys: &[f64]) -> Vec<Complex64> {
    let cols = ys.len();
    par::map_indexed(xs.len() * cols, |p| f.eval(xs[p / cols], ys[p % cols]))
}

pub fn evaluate(op: &dyn Approximant, f: &ComplexField, spec: GridSpec) -> Result<EvaluationGrid> {
    let (xs, ys) = (spec.xs(), spec.ys());
    let exact = sample(f, &xs, &ys);
    let approx = op.eval_grid(&xs, &ys)?;
    Ok(EvaluationGrid { spec, xs, ys, exact, approx })
}
