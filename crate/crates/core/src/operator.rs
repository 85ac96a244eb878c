//! The three complex Nevai operator families on `X = [-1,1] x [-1,1]`.
//!
//! All three are normalized averages with weights
//! `lambda_{k,m} |K_n(z, z_{k,m})|^s`, where the planar kernel is the product
//! `K_n(x, x_k) K_n(y, y_m)`. Because the weights factor into an `x` part and
//! a `y` part, every operator is evaluated as a pair of one-dimensional weight
//! vectors; the numerator and denominator never need the full `n^2` weight
//! matrix.
//!
//! Weights are rescaled by their largest kernel value before the power `s` is
//! applied, which leaves the normalized weights unchanged and keeps large `s`
//! from underflowing.

use num_complex::Complex64;

use crate::chebyshev::{clamp_to_interval, ChebyshevBasis};
use crate::error::{NevaiError, Result};
use crate::field::{BreakLine, ComplexField};
use crate::imaging::StepField;
use crate::par;
use crate::quadrature::{self, TensorRule, DEFAULT_POINTS_PER_AXIS};

/// Largest Taylor degree accepted by the Hermite family.
pub const MAX_HERMITE_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Generalized,
    Kantorovich,
    Hermite,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Generalized => "generalized",
            Family::Kantorovich => "kantorovich",
            Family::Hermite => "hermite",
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = NevaiError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nevai" | "generalized" | "n" => Ok(Family::Generalized),
            "kantorovich" | "k" => Ok(Family::Kantorovich),
            "hermite" | "h" => Ok(Family::Hermite),
            other => Err(NevaiError::InvalidConfig(format!("unknown operator family `{other}`"))),
        }
    }
}

/// Family plus parameters `(n, s, r)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorConfig {
    pub family: Family,
    pub n: usize,
    pub s: f64,
    /// Taylor order, Hermite only.
    pub r: usize,
    /// Gauss–Legendre points per cell axis, Kantorovich only.
    pub cell_subdivision: usize,
}

impl OperatorConfig {
    pub fn generalized(n: usize, s: f64) -> Self {
        Self { family: Family::Generalized, n, s, r: 0, cell_subdivision: DEFAULT_POINTS_PER_AXIS }
    }

    pub fn kantorovich(n: usize, s: f64) -> Self {
        Self { family: Family::Kantorovich, n, s, r: 0, cell_subdivision: DEFAULT_POINTS_PER_AXIS }
    }

    pub fn hermite(n: usize, s: f64, r: usize) -> Self {
        Self { family: Family::Hermite, n, s, r, cell_subdivision: DEFAULT_POINTS_PER_AXIS }
    }

    pub fn with_cell_subdivision(mut self, points: usize) -> Self {
        self.cell_subdivision = points;
        self
    }

    /// Reject invalid parameters. Values outside the ranges covered by the
    /// convergence theorems are accepted with a warning.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(NevaiError::InvalidConfig("n must be >= 1".into()));
        }
        if !(self.s.is_finite() && self.s >= 0.0) {
            return Err(NevaiError::InvalidConfig(format!("s = {} must be finite and >= 0", self.s)));
        }
        match self.family {
            Family::Hermite if self.r == 0 => {
                return Err(NevaiError::InvalidConfig("Hermite family needs r >= 1".into()))
            }
            Family::Hermite if self.r > MAX_HERMITE_ORDER => {
                return Err(NevaiError::InvalidConfig(format!("r = {} exceeds {MAX_HERMITE_ORDER}", self.r)))
            }
            Family::Kantorovich if self.cell_subdivision == 0 => {
                return Err(NevaiError::InvalidConfig("cell_subdivision must be >= 1".into()))
            }
            _ => {}
        }
        if !self.in_theorem_range() {
            log::warn!(
                "s = {} is outside the convergence range of the {} family ({})",
                self.s,
                self.family,
                if self.family == Family::Kantorovich { "s >= 2" } else { "1 < s <= 2" }
            );
        }
        Ok(())
    }

    pub fn in_theorem_range(&self) -> bool {
        match self.family {
            Family::Kantorovich => self.s >= 2.0,
            _ => self.s > 1.0 && self.s <= 2.0,
        }
    }

    fn expect(&self, family: Family) -> Result<()> {
        if self.family != family {
            return Err(NevaiError::InvalidConfig(format!(
                "configuration is for the {} family, not {family}",
                self.family
            )));
        }
        self.validate()
    }
}

fn check_point(z: Complex64) -> Result<(f64, f64)> {
    Ok((clamp_to_interval(z.re)?, clamp_to_interval(z.im)?))
}

/// Normalized weights `lambda_k (|K(t, a_k)| / max_j |K(t, a_j)|)^s` and their sum.
fn axis_weights(
    basis: &ChebyshevBasis,
    scale: f64,
    anchors: &[f64],
    lambdas: &[f64],
    t: f64,
    s: f64,
) -> Option<(Vec<f64>, f64)> {
    let kernel: Vec<f64> = anchors.iter().map(|&a| (scale * basis.cd_kernel(t, a)).abs()).collect();
    let kmax = kernel.iter().cloned().fold(0.0, f64::max);
    if !(kmax > 0.0 && kmax.is_finite()) {
        return None;
    }
    let w: Vec<f64> = kernel.iter().zip(lambdas).map(|(k, l)| l * (k / kmax).powf(s)).collect();
    let sum: f64 = w.iter().sum();
    (sum > 0.0 && sum.is_finite()).then_some((w, sum))
}

/// `sum_k wx_k (sum_m values[k][m] wy_m)`; the inner sum is the unit reused by grid evaluation.
#[inline]
fn inner_sum(row: &[Complex64], wy: &[f64]) -> Complex64 {
    row.iter().zip(wy).fold(Complex64::new(0.0, 0.0), |acc, (v, w)| acc + v * *w)
}

/// The node system `z_{k,m} = x_k + i y_m` with weights `lambda_{k,m} = lambda_k lambda_m`.
#[derive(Debug, Clone)]
pub struct NodeGrid2D {
    basis: ChebyshevBasis,
    weights: Vec<f64>,
    kernel_scale: f64,
}

impl NodeGrid2D {
    pub fn new(n: usize) -> Result<Self> {
        let basis = ChebyshevBasis::new(n)?;
        let c = basis.cotes();
        let weights = c.iter().flat_map(|a| c.iter().map(move |b| a * b)).collect();
        Ok(Self { basis, weights, kernel_scale: 1.0 })
    }

    /// Multiply every kernel value by a fixed positive constant.
    pub fn with_kernel_scale(mut self, scale: f64) -> Self {
        assert!(scale > 0.0 && scale.is_finite(), "kernel scale must be positive");
        self.kernel_scale = scale;
        self
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    pub fn basis(&self) -> &ChebyshevBasis {
        &self.basis
    }

    /// `lambda_{k,m}`, 0-based indices.
    pub fn weight(&self, k: usize, m: usize) -> f64 {
        self.weights[k * self.n() + m]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `z_{k,m}`, 0-based indices.
    pub fn node(&self, k: usize, m: usize) -> Complex64 {
        Complex64::new(self.basis.nodes()[k], self.basis.nodes()[m])
    }

    /// Scaled kernel `c K_n(v, t)`.
    pub fn kernel(&self, v: f64, t: f64) -> f64 {
        self.kernel_scale * self.basis.cd_kernel(v, t)
    }

    fn weights_at(&self, t: f64, s: f64, z: Complex64) -> Result<(Vec<f64>, f64)> {
        axis_weights(&self.basis, self.kernel_scale, self.basis.nodes(), self.basis.cotes(), t, s)
            .ok_or(NevaiError::DegenerateDenominator { z })
    }

    fn axis_sum(&self, t: f64, s: f64) -> f64 {
        self.basis
            .nodes()
            .iter()
            .zip(self.basis.cotes())
            .map(|(&x, l)| l * self.kernel(t, x).abs().powf(s))
            .sum()
    }
}

/// `B_{n,s}(z) = sum_{k,m} lambda_{k,m} |K_n(z, z_{k,m})|^s`, unnormalized.
pub fn denominator(grid: &NodeGrid2D, s: f64, z: Complex64) -> Result<f64> {
    let (x, y) = check_point(z)?;
    Ok(grid.axis_sum(x, s) * grid.axis_sum(y, s))
}

/// A prepared operator, ready to be sampled at many points.
pub trait Approximant: Sync {
    fn eval(&self, z: Complex64) -> Result<Complex64>;

    /// Values on the tensor grid `xs x ys`, row-major with rows indexed by `xs`.
    fn eval_grid(&self, xs: &[f64], ys: &[f64]) -> Result<Vec<Complex64>> {
        let ny = ys.len();
        par::try_map_indexed(xs.len() * ny, |p| self.eval(Complex64::new(xs[p / ny], ys[p % ny])))
    }
}

/// Generalized Nevai operator `N_{n,s}` with the samples `f(z_{k,m})` precomputed.
#[derive(Debug, Clone)]
pub struct GeneralizedOperator {
    grid: NodeGrid2D,
    s: f64,
    samples: Vec<Complex64>,
}

impl GeneralizedOperator {
    pub fn new(grid: NodeGrid2D, s: f64, f: &ComplexField) -> Result<Self> {
        OperatorConfig::generalized(grid.n(), s).validate()?;
        let n = grid.n();
        let samples = (0..n * n).map(|p| f.eval_z(grid.node(p / n, p % n))).collect();
        Ok(Self { grid, s, samples })
    }

    pub fn grid(&self) -> &NodeGrid2D {
        &self.grid
    }

    fn eval_separable(&self, wx: &[f64], sx: f64, wy: &[f64], sy: f64) -> Complex64 {
        let n = self.grid.n();
        let num = wx
            .iter()
            .enumerate()
            .fold(Complex64::new(0.0, 0.0), |acc, (k, w)| acc + inner_sum(&self.samples[k * n..(k + 1) * n], wy) * *w);
        num / (sx * sy)
    }
}

impl Approximant for GeneralizedOperator {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        let (x, y) = check_point(z)?;
        let (wx, sx) = self.grid.weights_at(x, self.s, z)?;
        let (wy, sy) = self.grid.weights_at(y, self.s, z)?;
        Ok(self.eval_separable(&wx, sx, &wy, sy))
    }

    fn eval_grid(&self, xs: &[f64], ys: &[f64]) -> Result<Vec<Complex64>> {
        separable_grid(xs, ys, self.grid.n(), &self.samples, |t, z| self.grid.weights_at(t, self.s, z))
    }
}

/// Grid evaluation for operators of the form `sum_k wx_k sum_m v_{k,m} wy_m / (Sx Sy)`.
/// Arithmetic order matches the pointwise path exactly.
fn separable_grid<W>(xs: &[f64], ys: &[f64], width: usize, values: &[Complex64], weights: W) -> Result<Vec<Complex64>>
where
    W: Fn(f64, Complex64) -> Result<(Vec<f64>, f64)> + Sync,
{
    for &t in xs.iter().chain(ys) {
        clamp_to_interval(t)?;
    }
    let xs: Vec<f64> = xs.iter().map(|t| t.clamp(-1.0, 1.0)).collect();
    let ys: Vec<f64> = ys.iter().map(|t| t.clamp(-1.0, 1.0)).collect();
    let x0 = xs.first().copied().unwrap_or(0.0);
    let y0 = ys.first().copied().unwrap_or(0.0);
    // per column: G_j[k] = sum_m values[k][m] wy_j[m], and S_y
    let cols: Vec<(Vec<Complex64>, f64)> = par::try_map_indexed(ys.len(), |j| {
        let (wy, sy) = weights(ys[j], Complex64::new(x0, ys[j]))?;
        let g = (0..width).map(|k| inner_sum(&values[k * width..(k + 1) * width], &wy)).collect();
        Ok((g, sy))
    })?;
    let rows: Vec<Vec<Complex64>> = par::try_map_indexed(xs.len(), |i| {
        let (wx, sx) = weights(xs[i], Complex64::new(xs[i], y0))?;
        Ok(cols
            .iter()
            .map(|(g, sy)| {
                let num = wx.iter().zip(g).fold(Complex64::new(0.0, 0.0), |acc, (w, gk)| acc + gk * *w);
                num / (sx * sy)
            })
            .collect())
    })?;
    Ok(rows.into_iter().flatten().collect())
}

/// Hermite-type Nevai operator `H^{(r)}_{n,s}`: weighted average of the
/// degree-`r` Taylor polynomials at the nodes.
#[derive(Debug, Clone)]
pub struct HermiteOperator {
    grid: NodeGrid2D,
    s: f64,
    r: usize,
    /// `f^{(j)}(z_{k,m}) / j!`, node-major.
    taylor: Vec<Complex64>,
}

impl HermiteOperator {
    pub fn new(grid: NodeGrid2D, s: f64, r: usize, f: &ComplexField) -> Result<Self> {
        OperatorConfig::hermite(grid.n(), s, r).validate()?;
        if !f.has_derivatives() {
            return Err(NevaiError::MissingDerivatives);
        }
        let n = grid.n();
        let mut taylor = Vec::with_capacity(n * n * (r + 1));
        for p in 0..n * n {
            let node = grid.node(p / n, p % n);
            let mut factorial = 1.0;
            for j in 0..=r {
                if j > 0 {
                    factorial *= j as f64;
                }
                let d = f.derivative(j, node).ok_or(NevaiError::MissingDerivatives)?;
                taylor.push(d / factorial);
            }
        }
        Ok(Self { grid, s, r, taylor })
    }

    /// `sum_j c_j (z - z_{k,m})^j` with powers built by repeated multiplication.
    fn taylor_at(&self, p: usize, z: Complex64) -> Complex64 {
        let n = self.grid.n();
        let h = z - self.grid.node(p / n, p % n);
        let coeffs = &self.taylor[p * (self.r + 1)..(p + 1) * (self.r + 1)];
        let mut power = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in coeffs {
            acc += c * power;
            power *= h;
        }
        acc
    }
}

impl Approximant for HermiteOperator {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        let (x, y) = check_point(z)?;
        let z = Complex64::new(x, y);
        let n = self.grid.n();
        let (wx, sx) = self.grid.weights_at(x, self.s, z)?;
        let (wy, sy) = self.grid.weights_at(y, self.s, z)?;
        let mut num = Complex64::new(0.0, 0.0);
        for (k, wk) in wx.iter().enumerate() {
            let mut row = Complex64::new(0.0, 0.0);
            for (m, wm) in wy.iter().enumerate() {
                row += self.taylor_at(k * n + m, z) * *wm;
            }
            num += row * *wk;
        }
        Ok(num / (sx * sy))
    }
}

/// The Kantorovich cell system: `2n` cells `[k/n, (k+1)/n]` per axis for
/// `k = -n..n-1`, anchored at the cell midpoints `(2k+1)/(2n)` with anchor
/// weight equal to the Christoffel function `1 / K_n(t, t)` there.
#[derive(Debug, Clone)]
pub struct KantorovichGrid {
    basis: ChebyshevBasis,
    anchors: Vec<f64>,
    anchor_weights: Vec<f64>,
    kernel_scale: f64,
}

impl KantorovichGrid {
    pub fn new(n: usize) -> Result<Self> {
        let basis = ChebyshevBasis::new(n)?;
        let ni = n as i64;
        let anchors: Vec<f64> = (-ni..ni).map(|k| (2 * k + 1) as f64 / (2 * n) as f64).collect();
        let anchor_weights = anchors.iter().map(|&t| basis.christoffel(t)).collect();
        Ok(Self { basis, anchors, anchor_weights, kernel_scale: 1.0 })
    }

    /// Multiply every kernel value (including the one behind the anchor weights) by `scale`.
    pub fn with_kernel_scale(mut self, scale: f64) -> Self {
        assert!(scale > 0.0 && scale.is_finite(), "kernel scale must be positive");
        self.anchor_weights = self.anchors.iter().map(|&t| 1.0 / (scale * self.basis.cd_kernel(t, t))).collect();
        self.kernel_scale = scale;
        self
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    /// Number of cells per axis, `2n`.
    pub fn cells_per_axis(&self) -> usize {
        2 * self.n()
    }

    pub fn anchors(&self) -> &[f64] {
        &self.anchors
    }

    pub fn anchor_weights(&self) -> &[f64] {
        &self.anchor_weights
    }

    pub fn kernel_scale(&self) -> f64 {
        self.kernel_scale
    }

    pub fn basis(&self) -> &ChebyshevBasis {
        &self.basis
    }

    fn weights_at(&self, t: f64, s: f64, z: Complex64) -> Result<(Vec<f64>, f64)> {
        axis_weights(&self.basis, self.kernel_scale, &self.anchors, &self.anchor_weights, t, s)
            .ok_or(NevaiError::DegenerateDenominator { z })
    }

    /// Normalized weights `L_{k,m,n}(z)`, row-major over `(k, m)` from `-n`.
    pub fn cell_weights(&self, s: f64, z: Complex64) -> Result<Vec<f64>> {
        let (x, y) = check_point(z)?;
        let (wx, sx) = self.weights_at(x, s, z)?;
        let (wy, sy) = self.weights_at(y, s, z)?;
        Ok(wx.iter().flat_map(|a| wy.iter().map(move |b| a * b / (sx * sy))).collect())
    }

    /// `K_{n,s}(psi_z, z)` for the distance `psi_z(w) = |w - z|_2`, with the
    /// cell integrals split at `Re w = Re z` and `Im w = Im z`.
    pub fn distance_moment(&self, s: f64, z: Complex64, points_per_axis: usize) -> Result<f64> {
        let weights = self.cell_weights(s, z)?;
        let rule = TensorRule::new(points_per_axis)?;
        let (x, y) = (z.re, z.im);
        let psi = ComplexField::new(move |u, v| Complex64::new((u - x).hypot(v - y), 0.0))
            .with_break_lines([BreakLine::Re(x), BreakLine::Im(y)]);
        let n = self.n();
        let ni = n as i64;
        let cells = self.cells_per_axis();
        let mut acc = 0.0;
        for (p, w) in weights.iter().enumerate() {
            let (k, m) = ((p / cells) as i64 - ni, (p % cells) as i64 - ni);
            acc += w * quadrature::integrate_cell_with(&rule, &psi, k, m, n)?.re;
        }
        Ok(acc * (n * n) as f64)
    }
}

/// `max` of [`KantorovichGrid::distance_moment`] over the tensor grid `xs x ys`.
pub fn distance_sup(grid: &KantorovichGrid, s: f64, xs: &[f64], ys: &[f64], points_per_axis: usize) -> Result<f64> {
    let ny = ys.len();
    let values = par::try_map_indexed(xs.len() * ny, |p| {
        grid.distance_moment(s, Complex64::new(xs[p / ny], ys[p % ny]), points_per_axis)
    })?;
    Ok(values.into_iter().fold(0.0, f64::max))
}

/// Cell integrals `\iint_{cell(k,m)} f`, row-major over `(k, m)` starting at `-n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CellTable {
    n: usize,
    values: Vec<Complex64>,
}

impl CellTable {
    /// Tensor Gauss–Legendre integrals, split at the field's break lines.
    pub fn from_field(grid: &KantorovichGrid, f: &ComplexField, points_per_axis: usize) -> Result<Self> {
        let rule = TensorRule::new(points_per_axis)?;
        let n = grid.n();
        let cells = grid.cells_per_axis();
        let ni = n as i64;
        let values = par::try_map_indexed(cells * cells, |p| {
            let (k, m) = ((p / cells) as i64 - ni, (p % cells) as i64 - ni);
            quadrature::integrate_cell_with(&rule, f, k, m, n)
        })?;
        Ok(Self { n, values })
    }

    /// Exact area-weighted pixel sums.
    pub fn from_step(grid: &KantorovichGrid, step: &StepField) -> Self {
        let n = grid.n();
        let cells = grid.cells_per_axis();
        let ni = n as i64;
        let nf = n as f64;
        let ox: Vec<Vec<(usize, f64)>> = (-ni..ni)
            .map(|k| quadrature::overlaps(step.rows(), k as f64 / nf, (k + 1) as f64 / nf))
            .collect();
        let oy: Vec<Vec<(usize, f64)>> = (-ni..ni)
            .map(|m| quadrature::overlaps(step.cols(), m as f64 / nf, (m + 1) as f64 / nf))
            .collect();
        let values = par::map_indexed(cells * cells, |p| {
            let (a, b) = (p / cells, p % cells);
            let mut acc = 0.0;
            for &(i, lx) in &ox[a] {
                let mut row = 0.0;
                for &(j, ly) in &oy[b] {
                    row += step.value(i, j) * ly;
                }
                acc += row * lx;
            }
            Complex64::new(acc, 0.0)
        });
        Self { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Integral over cell `(k, m)`, `-n <= k, m <= n - 1`.
    pub fn get(&self, k: i64, m: i64) -> Complex64 {
        let cells = 2 * self.n as i64;
        let n = self.n as i64;
        self.values[((k + n) * cells + (m + n)) as usize]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// Kantorovich-type operator `K_{n,s}` over a prepared cell table.
#[derive(Debug, Clone)]
pub struct KantorovichOperator {
    grid: KantorovichGrid,
    s: f64,
    /// `n^2` times the cell integrals, i.e. cell means.
    means: Vec<Complex64>,
}

impl KantorovichOperator {
    pub fn new(grid: KantorovichGrid, s: f64, table: CellTable) -> Result<Self> {
        OperatorConfig::kantorovich(grid.n(), s).validate()?;
        if table.n != grid.n() {
            return Err(NevaiError::InvalidConfig(format!(
                "cell table built for n = {}, grid has n = {}",
                table.n,
                grid.n()
            )));
        }
        let n2 = (grid.n() * grid.n()) as f64;
        let means = table.values.iter().map(|v| v * n2).collect();
        Ok(Self { grid, s, means })
    }

    pub fn from_field(grid: KantorovichGrid, s: f64, f: &ComplexField, points_per_axis: usize) -> Result<Self> {
        let table = CellTable::from_field(&grid, f, points_per_axis)?;
        Self::new(grid, s, table)
    }

    pub fn grid(&self) -> &KantorovichGrid {
        &self.grid
    }
}

impl Approximant for KantorovichOperator {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        let (x, y) = check_point(z)?;
        let (wx, sx) = self.grid.weights_at(x, self.s, z)?;
        let (wy, sy) = self.grid.weights_at(y, self.s, z)?;
        let c = self.grid.cells_per_axis();
        let num = wx
            .iter()
            .enumerate()
            .fold(Complex64::new(0.0, 0.0), |acc, (k, w)| acc + inner_sum(&self.means[k * c..(k + 1) * c], &wy) * *w);
        Ok(num / (sx * sy))
    }

    fn eval_grid(&self, xs: &[f64], ys: &[f64]) -> Result<Vec<Complex64>> {
        separable_grid(xs, ys, self.grid.cells_per_axis(), &self.means, |t, z| self.grid.weights_at(t, self.s, z))
    }
}

/// Build the operator described by `cfg` for `f`.
pub fn build(cfg: &OperatorConfig, f: &ComplexField) -> Result<Box<dyn Approximant + Send>> {
    cfg.validate()?;
    Ok(match cfg.family {
        Family::Generalized => Box::new(GeneralizedOperator::new(NodeGrid2D::new(cfg.n)?, cfg.s, f)?),
        Family::Hermite => Box::new(HermiteOperator::new(NodeGrid2D::new(cfg.n)?, cfg.s, cfg.r, f)?),
        Family::Kantorovich => Box::new(KantorovichOperator::from_field(
            KantorovichGrid::new(cfg.n)?,
            cfg.s,
            f,
            cfg.cell_subdivision,
        )?),
    })
}

/// `N_{n,s}(f, z)`.
pub fn nevai_generalized(grid: &NodeGrid2D, cfg: &OperatorConfig, f: &ComplexField, z: Complex64) -> Result<Complex64> {
    cfg.expect(Family::Generalized)?;
    check_n(cfg, grid.n())?;
    GeneralizedOperator::new(grid.clone(), cfg.s, f)?.eval(z)
}

/// `K_{n,s}(f, z)`.
pub fn nevai_kantorovich(grid: &KantorovichGrid, cfg: &OperatorConfig, f: &ComplexField, z: Complex64) -> Result<Complex64> {
    cfg.expect(Family::Kantorovich)?;
    check_n(cfg, grid.n())?;
    KantorovichOperator::from_field(grid.clone(), cfg.s, f, cfg.cell_subdivision)?.eval(z)
}

/// `H^{(r)}_{n,s}(f, z)`.
pub fn nevai_hermite(grid: &NodeGrid2D, cfg: &OperatorConfig, f: &ComplexField, z: Complex64) -> Result<Complex64> {
    cfg.expect(Family::Hermite)?;
    check_n(cfg, grid.n())?;
    HermiteOperator::new(grid.clone(), cfg.s, cfg.r, f)?.eval(z)
}

fn check_n(cfg: &OperatorConfig, n: usize) -> Result<()> {
    if cfg.n != n {
        return Err(NevaiError::InvalidConfig(format!("config n = {} but grid n = {n}", cfg.n)));
    }
    Ok(())
}
