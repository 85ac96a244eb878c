//! Orthonormal Chebyshev polynomials of the first kind, their zeros,
//! the Christoffel–Darboux kernel and the Christoffel (Cotes) numbers.
//!
//! The orthonormal system is taken with respect to the weight
//! `w(x) = (1 - x^2)^(-1/2)` on `[-1, 1]`:
//!
//! ```text
//! T_0(x) = 1/sqrt(pi),    T_j(x) = sqrt(2/pi) cos(j arccos x),  j >= 1
//! ```

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{NevaiError, Result};

/// Width of the band outside `[-1, 1]` that is clamped back onto the interval.
pub const DOMAIN_TOLERANCE: f64 = 1e-12;

/// Below this separation the kernel switches to its confluent (derivative) form.
pub const CONFLUENCE_THRESHOLD: f64 = 1e-9;

const SQRT_2_OVER_PI: f64 = 0.797_884_560_802_865_4;
const INV_SQRT_PI: f64 = 0.564_189_583_547_756_3;

/// Clamp `x` onto `[-1, 1]`, rejecting values further out than [`DOMAIN_TOLERANCE`].
pub fn clamp_to_interval(x: f64) -> Result<f64> {
    if !x.is_finite() || x.abs() > 1.0 + DOMAIN_TOLERANCE {
        return Err(NevaiError::Domain { x });
    }
    Ok(x.clamp(-1.0, 1.0))
}

/// Value of the orthonormal Chebyshev polynomial `T_j` at `x`.
pub fn orthonormal_t(j: usize, x: f64) -> Result<f64> {
    let x = clamp_to_interval(x)?;
    Ok(t_at_angle(j, x.acos()))
}

/// `T_j(cos theta)`.
#[inline]
fn t_at_angle(j: usize, theta: f64) -> f64 {
    if j == 0 {
        INV_SQRT_PI
    } else {
        SQRT_2_OVER_PI * (j as f64 * theta).cos()
    }
}

/// Derivative `T_j'(x)` for `x` in `[-1, 1]`.
///
/// Uses `sqrt(2/pi) j sin(j theta) / sin(theta)` in the interior and the
/// analytic limit `sqrt(2/pi) j^2 (+-1)^(j+1)` at the endpoints.
pub(crate) fn t_derivative(j: usize, x: f64) -> f64 {
    if j == 0 {
        return 0.0;
    }
    let jf = j as f64;
    let theta = x.acos();
    let sin_theta = theta.sin();
    if sin_theta < 1e-12 {
        let sign = if x > 0.0 || j % 2 == 1 { 1.0 } else { -1.0 };
        return SQRT_2_OVER_PI * jf * jf * sign;
    }
    SQRT_2_OVER_PI * jf * (jf * theta).sin() / sin_theta
}

/// Ratio `k_{n-1} / k_n` of leading coefficients of the orthonormal system.
///
/// Multiplying [`ChebyshevBasis::cd_kernel`] by this constant yields the
/// reproducing kernel `sum_{j<n} T_j(v) T_j(t)`.
pub fn kernel_scale(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => FRAC_1_SQRT_2,
        _ => 0.5,
    }
}

/// Nodes, Cotes numbers and kernel diagonal for a fixed degree `n`.
///
/// Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevBasis {
    n: usize,
    nodes: Vec<f64>,
    cotes: Vec<f64>,
    diag_kernel: Vec<f64>,
}

impl ChebyshevBasis {
    /// Build the basis of degree `n`: the zeros `x_k = cos((2k-1)pi/(2n))`,
    /// `k = 1..n` (strictly decreasing) and their Christoffel numbers.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(NevaiError::InvalidConfig("basis degree n must be >= 1".into()));
        }
        let angles: Vec<f64> = (1..=n)
            .map(|k| (2 * k - 1) as f64 * PI / (2 * n) as f64)
            .collect();
        let nodes: Vec<f64> = angles.iter().map(|a| a.cos()).collect();
        // lambda_k = 1 / sum_{j=0}^{n} T_j(x_k)^2; the j = n term vanishes at a zero.
        let cotes: Vec<f64> = angles
            .iter()
            .map(|&theta| {
                let sum: f64 = (0..=n).map(|j| t_at_angle(j, theta).powi(2)).sum();
                1.0 / sum
            })
            .collect();
        let diag_kernel = cotes.iter().map(|l| 1.0 / l).collect();
        Ok(Self {
            n,
            nodes,
            cotes,
            diag_kernel,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Zeros of `T_n`, `x_1 > x_2 > ... > x_n`.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Cotes numbers `lambda_k = lambda_n(x_k)`.
    pub fn cotes(&self) -> &[f64] {
        &self.cotes
    }

    /// `K_n(x_k, x_k) = 1 / lambda_k`.
    pub fn diag_kernel(&self) -> &[f64] {
        &self.diag_kernel
    }

    /// Christoffel–Darboux quotient
    /// `(T_n(v) T_{n-1}(t) - T_{n-1}(v) T_n(t)) / (v - t)`
    /// in its printed (unnormalized) form, with the confluent limit
    /// `T_n'(v) T_{n-1}(v) - T_{n-1}'(v) T_n(v)` when `|v - t|` is below
    /// [`CONFLUENCE_THRESHOLD`].
    ///
    /// Inputs must already lie in `[-1, 1]`; see [`Self::try_cd_kernel`]
    /// for the checked variant.
    pub fn cd_kernel(&self, v: f64, t: f64) -> f64 {
        let n = self.n;
        if (v - t).abs() < CONFLUENCE_THRESHOLD {
            let c = 0.5 * (v + t);
            let theta = c.acos();
            return t_derivative(n, c) * t_at_angle(n - 1, theta)
                - t_derivative(n - 1, c) * t_at_angle(n, theta);
        }
        let (tv, tt) = (v.acos(), t.acos());
        (t_at_angle(n, tv) * t_at_angle(n - 1, tt) - t_at_angle(n - 1, tv) * t_at_angle(n, tt))
            / (v - t)
    }

    pub fn try_cd_kernel(&self, v: f64, t: f64) -> Result<f64> {
        Ok(self.cd_kernel(clamp_to_interval(v)?, clamp_to_interval(t)?))
    }

    /// Christoffel function `lambda_n(t)` in the normalization of [`Self::cd_kernel`],
    /// i.e. `1 / cd_kernel(t, t)`.
    pub fn christoffel(&self, t: f64) -> f64 {
        1.0 / self.cd_kernel(t, t)
    }
}

/// Free-function form of [`ChebyshevBasis::new`].
pub fn make_basis(n: usize) -> Result<ChebyshevBasis> {
    ChebyshevBasis::new(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    // Three-term recurrence for the classical P_j, rescaled to orthonormal.
    fn t_by_recurrence(j: usize, x: f64) -> f64 {
        let (mut p0, mut p1) = (1.0, x);
        if j == 0 {
            return 1.0 / PI.sqrt();
        }
        for _ in 1..j {
            let p2 = 2.0 * x * p1 - p0;
            p0 = p1;
            p1 = p2;
        }
        (2.0 / PI).sqrt() * p1
    }

    #[test]
    fn orthonormal_values() {
        assert_relative_eq!(orthonormal_t(0, 0.5).unwrap(), 0.564_189_583_5, epsilon = 1e-10);
        assert_relative_eq!(orthonormal_t(3, 1.0).unwrap(), 0.797_884_560_8, epsilon = 1e-10);
        let expected = t_by_recurrence(2, 0.3);
        assert_relative_eq!(expected, SQRT_2_OVER_PI * (2.0 * 0.09 - 1.0), epsilon = 1e-15);
        assert_relative_eq!(orthonormal_t(2, 0.3).unwrap(), expected, epsilon = 1e-14);
    }

    #[test]
    fn domain_band() {
        assert!(orthonormal_t(1, 1.0 + 1e-13).is_ok());
        assert!(matches!(orthonormal_t(1, 1.0 + 1e-9), Err(NevaiError::Domain { .. })));
        assert!(orthonormal_t(1, f64::NAN).is_err());
    }

    #[test]
    fn small_bases() {
        let b = ChebyshevBasis::new(2).unwrap();
        assert_relative_eq!(b.nodes()[0], 0.5f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(b.nodes()[1], -(0.5f64.sqrt()), epsilon = 1e-15);

        let b = ChebyshevBasis::new(1).unwrap();
        assert!(b.nodes()[0].abs() < 1e-15);
        assert_relative_eq!(b.cotes()[0], PI, max_relative = 1e-14);

        assert!(ChebyshevBasis::new(0).is_err());
    }

    #[test]
    fn cotes_match_summation_oracle() {
        for n in [3usize, 10, 17] {
            let b = ChebyshevBasis::new(n).unwrap();
            for (k, &x) in b.nodes().iter().enumerate() {
                let sum: f64 = (0..=n).map(|j| t_by_recurrence(j, x).powi(2)).sum();
                assert_relative_eq!(sum, n as f64 / PI, max_relative = 1e-12);
                assert_relative_eq!(b.cotes()[k], 1.0 / sum, max_relative = 1e-12);
                assert_relative_eq!(b.cotes()[k] * b.diag_kernel()[k], 1.0, max_relative = 1e-12);
            }
            let total: f64 = b.cotes().iter().sum();
            assert!((total - PI).abs() < 1e-10);
        }
    }

    #[test]
    fn nodes_strictly_decreasing() {
        let b = ChebyshevBasis::new(25).unwrap();
        assert!(b.nodes().windows(2).all(|w| w[0] > w[1]));
        assert!(b.nodes().iter().all(|x| x.abs() < 1.0));
    }

    #[test]
    fn kernel_vanishes_between_distinct_zeros() {
        let b = ChebyshevBasis::new(4).unwrap();
        let x = b.nodes();
        assert!(b.cd_kernel(x[0], x[2]).abs() < 1e-14);
        for n in [2usize, 7, 30] {
            let b = ChebyshevBasis::new(n).unwrap();
            for j in 0..n {
                for k in 0..n {
                    if j != k {
                        let ratio = b.cd_kernel(b.nodes()[j], b.nodes()[k]).abs() / b.diag_kernel()[j];
                        assert!(ratio < 1e-10, "n={n} j={j} k={k} ratio={ratio}");
                    }
                }
            }
        }
    }

    #[test]
    fn normalized_diagonal_matches_cotes() {
        // n = 4, x_2: the printed quotient carries the factor 1/kernel_scale.
        let b = ChebyshevBasis::new(4).unwrap();
        let x2 = b.nodes()[1];
        let direct: f64 = (0..4).map(|j| t_by_recurrence(j, x2).powi(2)).sum();
        assert_relative_eq!(kernel_scale(4) * b.cd_kernel(x2, x2), b.diag_kernel()[1], max_relative = 1e-12);
        assert_relative_eq!(direct, b.diag_kernel()[1], max_relative = 1e-12);
    }

    #[test]
    fn endpoint_derivative_limits() {
        for j in 1..8usize {
            let jf = j as f64;
            let expect_plus = SQRT_2_OVER_PI * jf * jf;
            let expect_minus = expect_plus * if j % 2 == 1 { 1.0 } else { -1.0 };
            assert_relative_eq!(t_derivative(j, 1.0), expect_plus, max_relative = 1e-14);
            assert_relative_eq!(t_derivative(j, -1.0), expect_minus, max_relative = 1e-14);
            // interior form approaches the limit
            assert_relative_eq!(t_derivative(j, 1.0 - 1e-10), expect_plus, max_relative = 1e-6);
        }
    }

    #[test]
    fn kernel_finite_at_endpoints() {
        let b = ChebyshevBasis::new(6).unwrap();
        for v in [-1.0, 1.0] {
            assert!(b.cd_kernel(v, v).is_finite());
            assert!(b.cd_kernel(v, -v).is_finite());
        }
        // normalized kernel at (1,1) equals sum_j T_j(1)^2
        let direct: f64 = (0..6).map(|j| t_by_recurrence(j, 1.0).powi(2)).sum();
        assert_relative_eq!(kernel_scale(6) * b.cd_kernel(1.0, 1.0), direct, max_relative = 1e-12);
    }

    #[test]
    fn confluence_continuity() {
        let b = ChebyshevBasis::new(9).unwrap();
        let vs = [-0.93, -0.71, -0.4, -0.12, 0.05, 0.21, 0.38, 0.55, 0.77, 0.96];
        for &v in &vs {
            let diag = b.cd_kernel(v, v);
            let mut prev = f64::INFINITY;
            for h in [1e-6, 1e-8] {
                let gap = (b.cd_kernel(v, v + h) - diag).abs();
                assert!(gap < 1e-4 * diag.abs().max(1.0), "v={v} h={h} gap={gap}");
                assert!(gap <= prev);
                prev = gap;
            }
        }
    }

    proptest! {
        #[test]
        fn kernel_symmetry_and_parity(n in 1usize..40, v in -1.0f64..1.0, t in -1.0f64..1.0) {
            let b = ChebyshevBasis::new(n).unwrap();
            let k = b.cd_kernel(v, t);
            let scale = k.abs().max(1.0);
            prop_assert!((k - b.cd_kernel(t, v)).abs() <= 1e-12 * scale);
            prop_assert!((k - b.cd_kernel(-v, -t)).abs() <= 1e-12 * scale * n as f64);
        }

        #[test]
        fn normalized_kernel_is_reproducing_sum(n in 1usize..20, v in -1.0f64..1.0, t in -1.0f64..1.0) {
            prop_assume!((v - t).abs() > 1e-3);
            let b = ChebyshevBasis::new(n).unwrap();
            let direct: f64 = (0..n).map(|j| t_by_recurrence(j, v) * t_by_recurrence(j, t)).sum();
            let k = kernel_scale(n) * b.cd_kernel(v, t);
            prop_assert!((k - direct).abs() <= 1e-10 * (n as f64));
        }
    }
}
