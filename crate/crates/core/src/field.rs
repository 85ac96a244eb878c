//! Complex-valued target functions on `X = [-1,1] x [-1,1]`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

type ValueFn = dyn Fn(f64, f64) -> Complex64 + Send + Sync;
type DerivativeFn = dyn Fn(usize, Complex64) -> Complex64 + Send + Sync;

/// Axis-aligned line across which a field may jump.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BreakLine {
    /// `Re(z) = c`
    Re(f64),
    /// `Im(z) = c`
    Im(f64),
}

/// A complex-valued function of a point of `X`, optionally with complex
/// derivatives `f^(j)(z)`.
///
/// Suppliers are shared behind `Arc` and must be safe to call from several
/// threads at once.
#[derive(Clone)]
pub struct ComplexField {
    value: Arc<ValueFn>,
    derivatives: Option<Arc<DerivativeFn>>,
    integrable_only: bool,
    break_lines: Vec<BreakLine>,
}

impl ComplexField {
    pub fn new<F>(value: F) -> Self
    where
        F: Fn(f64, f64) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            value: Arc::new(value),
            derivatives: None,
            integrable_only: false,
            break_lines: Vec::new(),
        }
    }

    /// Analytic field defined by its derivative supplier; `derivatives(0, z)` is the value.
    pub fn analytic<D>(derivatives: D) -> Self
    where
        D: Fn(usize, Complex64) -> Complex64 + Send + Sync + 'static,
    {
        let d = Arc::new(derivatives);
        let v = Arc::clone(&d);
        Self {
            value: Arc::new(move |x, y| v(0, Complex64::new(x, y))),
            derivatives: Some(d),
            integrable_only: false,
            break_lines: Vec::new(),
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::analytic(move |j, _| if j == 0 { c } else { Complex64::new(0.0, 0.0) })
    }

    pub fn with_derivatives<D>(mut self, derivatives: D) -> Self
    where
        D: Fn(usize, Complex64) -> Complex64 + Send + Sync + 'static,
    {
        self.derivatives = Some(Arc::new(derivatives));
        self
    }

    /// Mark the field as merely integrable (possibly discontinuous).
    pub fn integrable_only(mut self) -> Self {
        self.integrable_only = true;
        self
    }

    pub fn with_break_lines(mut self, lines: impl IntoIterator<Item = BreakLine>) -> Self {
        self.break_lines.extend(lines);
        self
    }

    #[inline]
    pub fn eval(&self, x: f64, y: f64) -> Complex64 {
        (self.value)(x, y)
    }

    #[inline]
    pub fn eval_z(&self, z: Complex64) -> Complex64 {
        (self.value)(z.re, z.im)
    }

    /// `f^(j)(z)` when a derivative supplier is present.
    pub fn derivative(&self, j: usize, z: Complex64) -> Option<Complex64> {
        self.derivatives.as_ref().map(|d| d(j, z))
    }

    pub fn has_derivatives(&self) -> bool {
        self.derivatives.is_some()
    }

    pub fn is_integrable_only(&self) -> bool {
        self.integrable_only
    }

    pub fn break_lines(&self) -> &[BreakLine] {
        &self.break_lines
    }

    /// `a f + b g`. Derivatives are kept only if both operands carry them.
    pub fn linear_combination(a: Complex64, f: &Self, b: Complex64, g: &Self) -> Self {
        let (fv, gv) = (Arc::clone(&f.value), Arc::clone(&g.value));
        let derivatives: Option<Arc<DerivativeFn>> = match (&f.derivatives, &g.derivatives) {
            (Some(fd), Some(gd)) => {
                let (fd, gd) = (Arc::clone(fd), Arc::clone(gd));
                Some(Arc::new(move |j, z| a * fd(j, z) + b * gd(j, z)))
            }
            _ => None,
        };
        let mut break_lines = f.break_lines.clone();
        break_lines.extend_from_slice(&g.break_lines);
        Self {
            value: Arc::new(move |x, y| a * fv(x, y) + b * gv(x, y)),
            derivatives,
            integrable_only: f.integrable_only || g.integrable_only,
            break_lines,
        }
    }
}

impl fmt::Debug for ComplexField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ComplexField")
            .field("derivatives", &self.derivatives.is_some())
            .field("integrable_only", &self.integrable_only)
            .field("break_lines", &self.break_lines)
            .finish()
    }
}
