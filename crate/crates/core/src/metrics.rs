//! Error measures for approximants, image quality measures, modulus of
//! continuity estimation and empirical convergence-rate fits.

use num_complex::Complex64;

use crate::error::{NevaiError, Result};
use crate::field::ComplexField;
use crate::par;

pub const SSIM_K1: f64 = 0.01;
pub const SSIM_K2: f64 = 0.03;

/// Max, mean and root-mean-square of `|Re(exact - approx)|` and `|Im(exact - approx)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub e_max_re: f64,
    pub e_mean_re: f64,
    pub e_ms_re: f64,
    pub e_max_im: f64,
    pub e_mean_im: f64,
    pub e_ms_im: f64,
    pub n_points: usize,
}

impl ErrorReport {
    pub const CSV_HEADER: &'static str = "e_max_re,e_mean_re,e_ms_re,e_max_im,e_mean_im,e_ms_im";

    pub fn values(&self) -> [f64; 6] {
        [self.e_max_re, self.e_mean_re, self.e_ms_re, self.e_max_im, self.e_mean_im, self.e_ms_im]
    }

    /// `e_mean <= e_ms <= e_max` for both parts, up to rounding.
    pub fn is_ordered(&self) -> bool {
        let ok = |mean: f64, ms: f64, max: f64| mean <= ms * (1.0 + 1e-12) && ms <= max * (1.0 + 1e-12);
        ok(self.e_mean_re, self.e_ms_re, self.e_max_re) && ok(self.e_mean_im, self.e_ms_im, self.e_max_im)
    }
}

/// Max, mean and RMS of a sequence of nonnegative errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarErrors {
    pub max: f64,
    pub mean: f64,
    pub ms: f64,
}

impl ScalarErrors {
    pub fn from_errors(errors: impl IntoIterator<Item = f64>) -> Result<Self> {
        let (mut max, mut sum, mut sq, mut count) = (0.0f64, 0.0, 0.0, 0usize);
        for e in errors {
            max = max.max(e);
            sum += e;
            sq += e * e;
            count += 1;
        }
        if count == 0 {
            return Err(NevaiError::DegenerateInput("no error samples".into()));
        }
        let nf = count as f64;
        Ok(Self { max, mean: sum / nf, ms: (sq / nf).sqrt() })
    }
}

pub fn error_report(exact: &[Complex64], approx: &[Complex64]) -> Result<ErrorReport> {
    if exact.len() != approx.len() {
        return Err(NevaiError::ShapeMismatch { left: (exact.len(), 1), right: (approx.len(), 1) });
    }
    let re = ScalarErrors::from_errors(exact.iter().zip(approx).map(|(a, b)| (a.re - b.re).abs()))?;
    let im = ScalarErrors::from_errors(exact.iter().zip(approx).map(|(a, b)| (a.im - b.im).abs()))?;
    Ok(ErrorReport {
        e_max_re: re.max,
        e_mean_re: re.mean,
        e_ms_re: re.ms,
        e_max_im: im.max,
        e_mean_im: im.mean,
        e_ms_im: im.ms,
        n_points: exact.len(),
    })
}

fn same_len(h: &[f64], w: &[f64]) -> Result<()> {
    if h.len() != w.len() {
        return Err(NevaiError::ShapeMismatch { left: (h.len(), 1), right: (w.len(), 1) });
    }
    if h.is_empty() {
        return Err(NevaiError::DegenerateInput("empty image".into()));
    }
    Ok(())
}

fn ssim_from_stats(mu_h: f64, mu_w: f64, var_h: f64, var_w: f64, cov: f64, l: f64) -> f64 {
    let d1 = (SSIM_K1 * l).powi(2);
    let d2 = (SSIM_K2 * l).powi(2);
    ((2.0 * mu_h * mu_w + d1) * (2.0 * cov + d2)) / ((mu_h * mu_h + mu_w * mu_w + d1) * (var_h + var_w + d2))
}

/// Single SSIM over whole-image means, variances and covariance.
pub fn ssim_global(h: &[f64], w: &[f64], l: f64) -> Result<f64> {
    same_len(h, w)?;
    if !(l > 0.0) {
        return Err(NevaiError::InvalidConfig("dynamic range L must be positive".into()));
    }
    if h == w {
        return Ok(1.0);
    }
    let nf = h.len() as f64;
    let mu_h = h.iter().sum::<f64>() / nf;
    let mu_w = w.iter().sum::<f64>() / nf;
    let (mut var_h, mut var_w, mut cov) = (0.0, 0.0, 0.0);
    for (a, b) in h.iter().zip(w) {
        let (da, db) = (a - mu_h, b - mu_w);
        var_h += da * da;
        var_w += db * db;
        cov += da * db;
    }
    Ok(ssim_from_stats(mu_h, mu_w, var_h / nf, var_w / nf, cov / nf, l))
}

/// Mean SSIM over all `window x window` blocks (stride 1, uniform weights).
pub fn ssim_windowed(h: &[f64], w: &[f64], shape: (usize, usize), l: f64, window: usize) -> Result<f64> {
    same_len(h, w)?;
    let (rows, cols) = shape;
    if rows * cols != h.len() {
        return Err(NevaiError::ShapeMismatch { left: shape, right: (h.len(), 1) });
    }
    let win = window.clamp(1, rows.min(cols));
    let mut total = 0.0;
    let mut count = 0usize;
    for r0 in 0..=rows - win {
        for c0 in 0..=cols - win {
            let mut block_h = Vec::with_capacity(win * win);
            let mut block_w = Vec::with_capacity(win * win);
            for r in r0..r0 + win {
                block_h.extend_from_slice(&h[r * cols + c0..r * cols + c0 + win]);
                block_w.extend_from_slice(&w[r * cols + c0..r * cols + c0 + win]);
            }
            total += ssim_global(&block_h, &block_w, l)?;
            count += 1;
        }
    }
    Ok(total / count as f64)
}

fn mse(h: &[f64], w: &[f64]) -> Result<f64> {
    same_len(h, w)?;
    Ok(h.iter().zip(w).map(|(a, b)| (a - b).powi(2)).sum::<f64>() / h.len() as f64)
}

/// `10 log10(MAX^2 / MSE)`; `f64::INFINITY` when the images are identical.
pub fn psnr(h: &[f64], w: &[f64], max_value: f64) -> Result<f64> {
    let e = mse(h, w)?;
    if e == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (max_value * max_value / e).log10())
}

pub fn rmse(h: &[f64], w: &[f64]) -> Result<f64> {
    Ok(mse(h, w)?.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImageQuality {
    pub ssim: f64,
    /// `f64::INFINITY` for identical images.
    pub psnr_db: f64,
    pub rmse: f64,
    pub dynamic_range_l: f64,
    pub k1: f64,
    pub k2: f64,
}

/// SSIM (global), PSNR with `MAX = l` and RMSE.
pub fn image_quality(h: &[f64], w: &[f64], shape: (usize, usize), l: f64) -> Result<ImageQuality> {
    if shape.0 * shape.1 != h.len() {
        return Err(NevaiError::ShapeMismatch { left: shape, right: (h.len(), 1) });
    }
    Ok(ImageQuality {
        ssim: ssim_global(h, w, l)?,
        psnr_db: psnr(h, w, l)?,
        rmse: rmse(h, w)?,
        dynamic_range_l: l,
        k1: SSIM_K1,
        k2: SSIM_K2,
    })
}

/// Lower estimate of `omega(f, delta) = sup_{|p - q|_2 <= delta} |f(p) - f(q)|`
/// over a `samples x samples` lattice covering `X`.
///
/// Only lattice pairs are examined, so the estimate never exceeds the true
/// modulus and is nondecreasing in `delta`.
pub fn estimate_modulus(f: &ComplexField, delta: f64, samples: usize) -> f64 {
    if samples < 2 || !(delta > 0.0) {
        return 0.0;
    }
    let h = 2.0 / (samples - 1) as f64;
    let coord = |i: usize| if i + 1 == samples { 1.0 } else { -1.0 + i as f64 * h };
    let values: Vec<Complex64> = par::map_indexed(samples * samples, |p| f.eval(coord(p / samples), coord(p % samples)));
    // half-plane of lattice offsets within delta (in exact lattice units)
    let reach = (delta / h).floor() as i64;
    let limit = (delta / h).powi(2) * (1.0 + 1e-12);
    let mut offsets = Vec::new();
    for di in 0..=reach {
        for dj in -reach..=reach {
            if (di == 0 && dj <= 0) || ((di * di + dj * dj) as f64) > limit {
                continue;
            }
            offsets.push((di, dj));
        }
    }
    let n = samples as i64;
    let row_max = par::map_indexed(samples, |i| {
        let i = i as i64;
        let mut best = 0.0f64;
        for j in 0..n {
            let v = values[(i * n + j) as usize];
            for &(di, dj) in &offsets {
                let (a, b) = (i + di, j + dj);
                if a < n && b >= 0 && b < n {
                    best = best.max((v - values[(a * n + b) as usize]).norm());
                }
            }
        }
        best
    });
    row_max.into_iter().fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateEstimate {
    /// Least-squares slope of `log error` against `log n`.
    pub exponent: f64,
    /// Dividing the errors by `log n` reduced the fit residual by at least 20%.
    pub log_factor_detected: bool,
}

fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let nf = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let ssr = xs.iter().zip(ys).map(|(x, y)| (y - my - slope * (x - mx)).powi(2)).sum();
    (slope, ssr)
}

pub fn fit_rate(ns: &[usize], errors: &[f64]) -> Result<RateEstimate> {
    if ns.len() != errors.len() {
        return Err(NevaiError::ShapeMismatch { left: (ns.len(), 1), right: (errors.len(), 1) });
    }
    if ns.len() < 4 {
        return Err(NevaiError::DegenerateInput(format!("need at least 4 values of n, got {}", ns.len())));
    }
    if ns.contains(&0) || errors.iter().any(|&e| !(e > 0.0 && e.is_finite())) {
        return Err(NevaiError::DegenerateInput("n and errors must be positive".into()));
    }
    if ns.iter().all(|&n| n == ns[0]) {
        return Err(NevaiError::DegenerateInput("all n are equal".into()));
    }
    let log_n: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let log_e: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let (exponent, ssr_plain) = least_squares(&log_n, &log_e);
    let log_factor_detected = if ns.iter().all(|&n| n > 1) {
        let log_div: Vec<f64> = log_e.iter().zip(&log_n).map(|(e, ln)| e - ln.ln()).collect();
        let (_, ssr_div) = least_squares(&log_n, &log_div);
        ssr_plain > 1e-20 && ssr_div <= 0.8 * ssr_plain
    } else {
        false
    };
    Ok(RateEstimate { exponent, log_factor_detected })
}
