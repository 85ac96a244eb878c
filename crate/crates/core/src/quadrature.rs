//! Cell integrals over the Kantorovich cells `[k/n, (k+1)/n] x [m/n, (m+1)/n]`,
//! `k, m = -n..n-1`.

use num_complex::Complex64;

use crate::error::{NevaiError, Result};
use crate::field::{BreakLine, ComplexField};
use crate::imaging::StepField;

pub const DEFAULT_POINTS_PER_AXIS: usize = 4;

/// One cell integral `\iint_{cell(k,m)} f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellIntegral {
    pub k: i64,
    pub m: i64,
    pub value: Complex64,
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` (Newton on the Legendre recurrence).
pub fn gauss_legendre(points: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; points];
    let mut weights = vec![0.0; points];
    let nf = points as f64;
    for i in 0..points.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(points, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(points, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[points - 1 - i] = x;
        weights[i] = w;
        weights[points - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A tensor Gauss–Legendre rule reused across many rectangles.
#[derive(Debug, Clone)]
pub struct TensorRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl TensorRule {
    pub fn new(points_per_axis: usize) -> Result<Self> {
        if points_per_axis == 0 {
            return Err(NevaiError::InvalidConfig("points_per_axis must be >= 1".into()));
        }
        let (nodes, weights) = gauss_legendre(points_per_axis);
        Ok(Self { nodes, weights })
    }

    /// Integral of `f` over `[x0, x1] x [y0, y1]`, split at the field's break lines.
    pub fn integrate(&self, f: &ComplexField, x0: f64, x1: f64, y0: f64, y1: f64) -> Complex64 {
        let xs = split_points(x0, x1, f.break_lines(), true);
        let ys = split_points(y0, y1, f.break_lines(), false);
        let mut total = Complex64::new(0.0, 0.0);
        for xw in xs.windows(2) {
            for yw in ys.windows(2) {
                total += self.integrate_plain(f, xw[0], xw[1], yw[0], yw[1]);
            }
        }
        total
    }

    fn integrate_plain(&self, f: &ComplexField, x0: f64, x1: f64, y0: f64, y1: f64) -> Complex64 {
        let (hx, cx) = (0.5 * (x1 - x0), 0.5 * (x1 + x0));
        let (hy, cy) = (0.5 * (y1 - y0), 0.5 * (y1 + y0));
        let mut acc = Complex64::new(0.0, 0.0);
        for (xi, wi) in self.nodes.iter().zip(&self.weights) {
            let x = cx + hx * xi;
            let mut row = Complex64::new(0.0, 0.0);
            for (yj, wj) in self.nodes.iter().zip(&self.weights) {
                row += f.eval(x, cy + hy * yj) * *wj;
            }
            acc += row * *wi;
        }
        acc * (hx * hy)
    }
}

fn split_points(a: f64, b: f64, lines: &[BreakLine], along_re: bool) -> Vec<f64> {
    let mut pts = vec![a];
    let mut inner: Vec<f64> = lines
        .iter()
        .filter_map(|l| match (l, along_re) {
            (BreakLine::Re(c), true) | (BreakLine::Im(c), false) => Some(*c),
            _ => None,
        })
        .filter(|&c| c > a && c < b)
        .collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    pts.extend(inner);
    pts.push(b);
    pts
}

pub(crate) fn check_cell_index(k: i64, m: i64, n: usize) -> Result<()> {
    let n = n as i64;
    if n < 1 || k < -n || k > n - 1 || m < -n || m > n - 1 {
        return Err(NevaiError::InvalidConfig(format!(
            "cell ({k}, {m}) outside -{n}..{}",
            n - 1
        )));
    }
    Ok(())
}

/// Cell `(k, m)` bounds `(x0, x1, y0, y1)` for parameter `n`.
pub fn cell_bounds(k: i64, m: i64, n: usize) -> (f64, f64, f64, f64) {
    let nf = n as f64;
    (k as f64 / nf, (k + 1) as f64 / nf, m as f64 / nf, (m + 1) as f64 / nf)
}

/// Tensor Gauss–Legendre approximation of the cell integral, exact for
/// polynomials of degree `<= 2 points_per_axis - 1` in each variable.
pub fn integrate_cell(f: &ComplexField, k: i64, m: i64, n: usize, points_per_axis: usize) -> Result<Complex64> {
    check_cell_index(k, m, n)?;
    let rule = TensorRule::new(points_per_axis)?;
    integrate_cell_with(&rule, f, k, m, n)
}

pub(crate) fn integrate_cell_with(rule: &TensorRule, f: &ComplexField, k: i64, m: i64, n: usize) -> Result<Complex64> {
    let (x0, x1, y0, y1) = cell_bounds(k, m, n);
    let v = rule.integrate(f, x0, x1, y0, y1);
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(NevaiError::NonFiniteIntegrand { k, m });
    }
    Ok(v)
}

/// Exact integral of a step field over cell `(k, m)`: pixel values weighted by
/// the overlap area between pixel support and cell.
pub fn integrate_cell_step(step: &StepField, k: i64, m: i64, n: usize) -> Result<Complex64> {
    check_cell_index(k, m, n)?;
    let (x0, x1, y0, y1) = cell_bounds(k, m, n);
    let ox = overlaps(step.rows(), x0, x1);
    let oy = overlaps(step.cols(), y0, y1);
    let mut acc = 0.0;
    for &(i, lx) in &ox {
        let mut row = 0.0;
        for &(j, ly) in &oy {
            row += step.value(i, j) * ly;
        }
        acc += row * lx;
    }
    Ok(Complex64::new(acc, 0.0))
}

/// Lengths of the overlap between `[a, b]` and the `count` equal pixel
/// intervals tiling `[-1, 1]`, as `(pixel index, length)` pairs.
pub(crate) fn overlaps(count: usize, a: f64, b: f64) -> Vec<(usize, f64)> {
    let h = 2.0 / count as f64;
    let first = (((a + 1.0) / h).floor().max(0.0) as usize).min(count - 1);
    let mut out = Vec::new();
    for i in first..count {
        let lo = -1.0 + i as f64 * h;
        if lo >= b {
            break;
        }
        let hi = if i + 1 == count { 1.0 } else { -1.0 + (i + 1) as f64 * h };
        let len = hi.min(b) - lo.max(a);
        if len > 0.0 {
            out.push((i, len));
        }
    }
    out
}

/// Gauss–Legendre integral over all of `X` as the sum of the `2n x 2n` cells.
pub fn integrate_over_square(f: &ComplexField, n: usize, points_per_axis: usize) -> Result<Complex64> {
    let rule = TensorRule::new(points_per_axis)?;
    let n_i = n as i64;
    let mut total = Complex64::new(0.0, 0.0);
    for k in -n_i..n_i {
        for m in -n_i..n_i {
            total += integrate_cell_with(&rule, f, k, m, n)?;
        }
    }
    Ok(total)
}
